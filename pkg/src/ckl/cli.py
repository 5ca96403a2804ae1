"""The ``ckl`` command line.

Exit status: 0 on success, 1 when the kernel or an oracle rejects something
(bad proof step, non-tautology, countermodel found), 2 for usage and input
problems (unreadable file, syntax error). ``--json`` prints one record::

    {"ok": ..., "conclusion": ..., "stats": {"nodes", "depth", "millis"},
     "error": {"code", "path", "message"} or null, "detail": ...}
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import catalogue, oracle, proofio
from . import puzzles as pz
from .errors import CKLError, MalformedProof, format_path
from .formula import Formula, expand_all_E, parse_formula, parse_group, print_formula
from .kernel import Basis, Theorem, proof_stats
from .meta import HypDerivation, internalize, internalize_full
from .taut import abstract_modal, countervaluation, is_tautology


class InputError(Exception):
    """Bad input: reported with exit status 2."""

    def __init__(self, message, code="input_error"):
        super().__init__(message)
        self.code = code


@dataclass
class Result:
    ok: bool = True
    conclusion: Optional[str] = None
    nodes: Optional[int] = None
    depth: Optional[int] = None
    error: Optional[dict] = None
    detail: Optional[str] = None
    lines: list = field(default_factory=list)

    def theorem(self, th: Theorem):
        self.conclusion = print_formula(th.conclusion)
        stats = proof_stats(th.proof)
        self.nodes, self.depth = stats["nodes"], stats["depth"]
        self.lines.append(self.conclusion)
        return self


def _load(fn, *args):
    """Run an input-reading step; its failures are input errors."""
    try:
        return fn(*args)
    except OSError as exc:
        raise InputError(f"cannot read {exc.filename}: {exc.strerror}") from None
    except MalformedProof:
        raise
    except CKLError as exc:
        raise InputError(str(exc), exc.code) from None


def _formula(text: str, theory=None) -> Formula:
    return _load(parse_formula, text, theory)


def _theory(path):
    return None if path is None else _load(proofio.load_theory, path)


def _emit(th: Theorem, path, res: Result):
    if path:
        try:
            Path(path).write_text(proofio.dump_proof(th))
        except OSError as exc:
            raise InputError(f"cannot write {path}: {exc.strerror}") from None
        res.detail = f"proof written to {path}"


# -- commands -------------------------------------------------------------------

def cmd_check(a) -> Result:
    theory = _theory(a.theory)
    text = _load(lambda p: Path(p).read_text(), a.file)
    embedded, claimed, node = _load(proofio.parse_proof, text)
    return Result().theorem(proofio.check_parts(theory or embedded, claimed, node))


def cmd_derive(a) -> Result:
    basis = Basis(a.basis)
    g = _load(parse_group, a.group)
    args = [_formula(x) for x in a.args.split(",")] if a.args else []
    arity = catalogue.CATALOGUE[a.name].arity
    if len(args) < arity:
        raise InputError(f"{a.name} takes {arity} formula argument(s), got {len(args)}")
    args = args[:arity]
    th = catalogue.derive(a.name, g, args, basis, a.agent)
    res = Result().theorem(th)
    _emit(th, a.emit, res)
    return res


def cmd_internalize(a) -> Result:
    theory = _theory(a.theory)
    text = _load(lambda p: Path(p).read_text(), a.file)
    embedded, _, node = _load(proofio.parse_proof, text)
    t = theory or embedded
    hyps = tuple(h for h in a.hyps.split(",") if h) if a.hyps else ()
    g = _load(parse_group, a.group, t)
    der = HypDerivation(t, hyps, node)
    th = (internalize_full if a.full else internalize)(der, g)
    res = Result().theorem(th)
    _emit(th, a.emit, res)
    return res


def cmd_puzzle(a) -> Result:
    if a.puzzle == "wisemen":
        build = {
            "first": pz.wisemen_first,
            "second": pz.wisemen_second,
            "corollary": pz.wisemen_corollary,
            "externalized": pz.wisemen_externalized,
        }[a.result]
        th = build()
    else:
        if a.final:
            th = pz.muddy_final(a.children, a.variant, a.cap)
        else:
            if a.round is None:
                raise InputError("muddy needs --round P or --final")
            if not 1 <= a.round < a.children:
                raise InputError(f"--round must be between 1 and {a.children - 1}")
            th = pz.progress(a.children - 1, a.round, a.variant, a.cap)
    res = Result().theorem(th)
    _emit(th, a.emit, res)
    return res


def cmd_taut(a) -> Result:
    f = _formula(a.formula, _theory(a.theory))
    res = Result(conclusion=print_formula(f))
    if is_tautology(f):
        res.lines.append("tautology")
        return res
    res.ok = False
    cv = countervaluation(f)
    abs_ = abstract_modal(f)
    res.detail = "; ".join(f"{print_formula(g)}={'T' if v else 'F'}" for g, v in cv.items())
    res.lines.append(f"not a tautology ({len(abs_.mapping)} abstract variables)")
    res.lines.append(f"falsified by: {res.detail}")
    return res


def cmd_refute(a) -> Result:
    f = _formula(a.formula, _theory(a.theory))
    res = Result(conclusion=print_formula(f))
    try:
        verdict = oracle.valid_on_small_models(f, a.worlds, a.agents, a.atoms)
    except oracle.BoundOverflow as exc:
        raise InputError(str(exc), exc.code) from None
    if verdict.valid:
        res.lines.append("valid within bounds")
        return res
    res.ok = False
    res.detail = f"countermodel at world {verdict.world}\n{verdict.model.describe()}"
    res.lines.append(res.detail)
    return res


def cmd_expand(a) -> Result:
    f = expand_all_E(_formula(a.formula, _theory(a.theory)))
    text = print_formula(f, sugar=not a.raw)
    res = Result(conclusion=text)
    res.lines.append(text)
    return res


# -- wiring ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON record")

    p = argparse.ArgumentParser(prog="ckl", description="Proof kernel for common knowledge logic.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="replay a proof file")
    s.add_argument("file")
    s.add_argument("--theory", help="theory file overriding the one embedded in the proof")
    s.set_defaults(run=cmd_check)

    s = sub.add_parser("derive", parents=[common], help="build a named derivation")
    s.add_argument("name", choices=sorted(catalogue.CATALOGUE))
    s.add_argument("--group", default="0,1")
    s.add_argument("--args", default="p", help="comma-separated formulas")
    s.add_argument("--basis", default="ck", choices=[b.value for b in Basis])
    s.add_argument("--agent", type=int)
    s.add_argument("--emit", metavar="FILE")
    s.set_defaults(run=cmd_derive)

    s = sub.add_parser("internalize", parents=[common], help="turn hypotheses into common knowledge")
    s.add_argument("file")
    s.add_argument("--theory")
    s.add_argument("--hyps", default="", help="comma-separated proper axiom names")
    s.add_argument("--group", required=True)
    s.add_argument("--full", action="store_true", help="keep C_g on the conclusion")
    s.add_argument("--emit", metavar="FILE")
    s.set_defaults(run=cmd_internalize)

    s = sub.add_parser("puzzle", parents=[common], help="wise men or muddy children")
    s.add_argument("puzzle", choices=["wisemen", "muddy"])
    s.add_argument("--result", default="first", choices=["first", "second", "corollary", "externalized"])
    s.add_argument("--children", type=int, default=3)
    s.add_argument("--round", type=int)
    s.add_argument("--variant", default="axiom", choices=[v.value for v in pz.Variant])
    s.add_argument("--final", action="store_true")
    s.add_argument("--cap", type=int, default=pz.MAX_CHILDREN)
    s.add_argument("--emit", metavar="FILE")
    s.set_defaults(run=cmd_puzzle)

    for name, fn, text in [
        ("taut", cmd_taut, "is the formula a tautology over its modal abstraction?"),
        ("refute", cmd_refute, "search small reflexive Kripke models for a countermodel"),
        ("expand", cmd_expand, "unfold every E_g into a conjunction of K_i"),
    ]:
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("formula")
        s.add_argument("--theory", help="theory file for agent names")
        s.set_defaults(run=fn)
        if name == "refute":
            s.add_argument("--worlds", type=int, default=oracle.MAX_WORLDS)
            s.add_argument("--agents", type=int, default=oracle.MAX_AGENTS)
            s.add_argument("--atoms", type=int, default=oracle.MAX_ATOMS)
        if name == "expand":
            s.add_argument("--raw", action="store_true", help="print without derived connectives")
    return p


def _record(res: Result, millis: float) -> dict:
    return {
        "ok": res.ok,
        "conclusion": res.conclusion,
        "stats": {"nodes": res.nodes, "depth": res.depth, "millis": round(millis, 3)},
        "error": res.error,
        "detail": res.detail,
    }


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    status = 0
    try:
        res = args.run(args)
        status = 0 if res.ok else 1
    except InputError as exc:
        res = Result(ok=False, error={"code": exc.code, "path": None, "message": str(exc)})
        status = 2
    except CKLError as exc:
        path = None if exc.path is None else format_path(exc.path)
        res = Result(ok=False, error={"code": exc.code, "path": path, "message": exc.message})
        status = 1
    millis = (time.perf_counter() - start) * 1000
    if args.json:
        out.write(json.dumps(_record(res, millis), sort_keys=True) + "\n")
        return status
    for line in res.lines:
        out.write(line + "\n")
    if res.detail and res.ok:
        err.write(res.detail + "\n")
    if res.error:
        where = f" at {res.error['path']}" if res.error["path"] else ""
        err.write(f"error[{res.error['code']}]{where}: {res.error['message']}\n")
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
