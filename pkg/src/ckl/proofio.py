"""Reading and writing theory files (``.ckt``) and proof files (``.cklp``).

Both are s-expressions over the formula grammar. A theory file::

    (theory wisemen
      (basis ck)
      (agents (0 Alice) (1 Bob) (2 Carol))
      (axiom One_hat (and (or (white Alice) (red Alice)) ...)))

A proof file carries its theory, the claimed conclusion and one node per
kernel step::

    (proof
      (theory t (basis ck) (agents 0 1))
      (conclusion (=> (atom p) (atom p)))
      (MP (TAUT "(atom p)") (TAUT (=> (atom p) (atom p)))))

Formulas may be written inline or as a double-quoted string. Groups are
parenthesised agent lists, agents are integers or declared names.

Generated proofs repeat large subformulas, so the writer adds an optional
table ``(formulas (#0 F0) (#1 F1) ...)`` and writes ``#k`` wherever a
shared subformula occurs. Each entry may use the ones before it.
"""

from __future__ import annotations

import re
from collections import Counter
from pathlib import Path
from typing import Optional, Tuple

from .errors import ConclusionMismatch, MalformedProof, ParseError, TheoryError
from .formula import C, E, Formula, Imp, K, formula_from_sexpr, group_from_sexpr, print_formula
from .kernel import ARITY, Basis, ProofNode, Theorem, Theory, _postorder, check_proof
from .sexpr import Symbol, read_all, read_one

# parameter layout per tag: a = agent, g = group, f = formula, n = name
LAYOUT = {
    "TAUT": "f",
    "AX_K": "aff",
    "AX_T": "af",
    "AX_E_DEF": "gf",
    "AX_FB": "gf",
    "AX_A7": "gf",
    "AX_A8": "gf",
    "AX_A9": "gff",
    "AX_A10": "gf",
    "PROPER": "n",
    "MP": "",
    "KG": "a",
    "LFB": "gf",
    "R3": "g",
    "R10": "gf",
}


def _sym_or_str(x, what, pos):
    if isinstance(x, str):
        return str(x)
    if isinstance(x, int):
        return str(x)
    raise ParseError(f"{what} must be a name, found {x!r}", pos)


def _clauses(items, allowed, pos):
    out = {}
    for c in items:
        if not isinstance(c, list) or not c or not isinstance(c[0], Symbol):
            raise ParseError(f"expected a clause like (basis ck), found {c!r}", getattr(c, "pos", pos))
        if c[0] not in allowed:
            raise ParseError(f"unknown clause {c[0]!r}", getattr(c, "pos", pos))
        out.setdefault(str(c[0]), []).append(c)
    return out


# -- theories -----------------------------------------------------------------

def theory_from_sexpr(x) -> Theory:
    pos = getattr(x, "pos", 0)
    if not isinstance(x, list) or len(x) < 2 or x[0] != "theory":
        raise ParseError("expected (theory NAME ...)", pos)
    tid = _sym_or_str(x[1], "theory name", pos)
    cl = _clauses(x[2:], {"basis", "agents", "axiom"}, pos)
    basis = Basis.CK
    if "basis" in cl:
        if len(cl["basis"]) > 1 or len(cl["basis"][0]) != 2:
            raise ParseError("exactly one (basis ck|tec|tecprime) clause allowed", pos)
        try:
            basis = Basis(str(cl["basis"][0][1]).lower())
        except ValueError:
            raise ParseError(f"unknown basis {cl['basis'][0][1]!r}", pos) from None
    domain, names = [], []
    for clause in cl.get("agents", []):
        for entry in clause[1:]:
            if isinstance(entry, int) and not isinstance(entry, bool):
                ident, name = entry, None
            elif isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], int):
                ident, name = entry[0], _sym_or_str(entry[1], "agent name", pos)
            else:
                raise ParseError(f"agent entry must be N or (N Name), found {entry!r}", pos)
            if ident in domain:
                raise TheoryError(f"duplicate agent id {ident}")
            domain.append(ident)
            if name is not None:
                names.append((ident, name))
    # a first pass without axioms so the axiom formulas can use agent names
    scope = Theory(tid, tuple(domain), basis, (), tuple(names))
    axioms = []
    for clause in cl.get("axiom", []):
        if len(clause) != 3:
            raise ParseError("axiom clause is (axiom Name formula)", getattr(clause, "pos", pos))
        name = _sym_or_str(clause[1], "axiom name", pos)
        axioms.append((name, formula_from_sexpr(clause[2], scope, getattr(clause, "pos", pos))))
    return Theory(tid, tuple(domain), basis, tuple(axioms), tuple(names))


def parse_theory(text: str) -> Theory:
    return theory_from_sexpr(read_one(text))


def dump_theory(t: Theory) -> str:
    head = f"(theory {_name(t.id)}\n  (basis {t.basis.value})\n  (agents"
    names = t.agent_names
    for i in t.domain:
        head += f" ({i} {_name(names[i])})" if i in names else f" {i}"
    head += ")"
    lines = [head]
    for name, f in t.axioms:
        lines.append(f"  (axiom {_name(name)} {print_formula(f)})")
    return "\n".join(lines) + ")\n"


def load_theory(path) -> Theory:
    return parse_theory(Path(path).read_text())


# -- proofs ---------------------------------------------------------------------

def _name(s: str) -> str:
    plain = s and all(not c.isspace() and c not in '()";' for c in s) and not s.isdigit()
    if plain:
        return s
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _param_text(kind, v, refs=None) -> str:
    if kind == "a":
        return str(v)
    if kind == "g":
        return "(" + " ".join(map(str, v)) + ")"
    if kind == "f":
        return refs[v] if refs and v in refs else print_formula(v, refs=refs)
    return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _children(f: Formula):
    if isinstance(f, Imp):
        return (f.left, f.right)
    if isinstance(f, (K, E, C)):
        return (f.body,)
    return ()


def shared_formulas(formulas, min_size: int = 8) -> list:
    """Subformulas worth naming: reached at least twice and not tiny.

    Returned children-first, so each one only depends on earlier ones.
    """
    count, size, order, seen = Counter(), {}, [], set()
    stack = [(f, False) for f in formulas]
    for f in formulas:
        count[f] += 1
    while stack:
        f, expanded = stack.pop()
        if expanded:
            size[f] = 1 + sum(size[c] for c in _children(f))
            order.append(f)
            continue
        if f in seen:
            continue
        seen.add(f)
        stack.append((f, True))
        for c in _children(f):
            count[c] += 1
            if c not in seen:
                stack.append((c, False))
    return [f for f in order if count[f] > 1 and size[f] >= min_size]


_REF = re.compile(r"#\d+")


def _param_formulas(proof: ProofNode):
    out = []
    for n in _postorder(proof):
        for kind, v in zip(LAYOUT.get(n.rule, ""), n.params):
            if kind == "f":
                out.append(v)
    return out


def _table(formulas, share: bool):
    """Pick and name the shared subformulas; drop names nobody uses."""
    if not share:
        return {}
    cands = shared_formulas(formulas)
    refs = {f: f"#{k}" for k, f in enumerate(cands)}
    texts = {f: print_formula(f, refs=refs) for f in cands}
    used = set()
    todo = [m for f in set(formulas) for m in _REF.findall(print_formula(f, refs=refs))]
    by_name = {v: k for k, v in refs.items()}
    while todo:
        name = todo.pop()
        if name in used:
            continue
        used.add(name)
        todo.extend(_REF.findall(texts[by_name[name]]))
    kept = [f for f in cands if refs[f] in used]
    return {f: f"#{k}" for k, f in enumerate(kept)}


def node_to_text(node: ProofNode, refs=None) -> str:
    """Render a proof tree; shared subtrees are written out in full."""
    text = {}
    for n in _postorder(node):
        layout = LAYOUT.get(n.rule)
        if layout is None:
            raise MalformedProof(f"cannot serialize unknown rule {n.rule!r}")
        parts = [n.rule]
        parts += [_param_text(k, v, refs) for k, v in zip(layout, n.params)]
        parts += [text[c] for c in n.children]
        text[n] = "(" + " ".join(parts) + ")"
    return text[node]


def node_from_sexpr(x, theory: Optional[Theory] = None, refs=None) -> ProofNode:
    """Build a ProofNode from its s-expression (iteratively, so deep trees are fine)."""
    built = {}
    stack = [(x, False)]
    while stack:
        e, expanded = stack.pop()
        if id(e) in built:
            continue
        pos = getattr(e, "pos", 0)
        if not isinstance(e, list) or not e or not isinstance(e[0], Symbol):
            raise ParseError(f"expected a proof node like (MP ...), found {e!r}", pos)
        tag = str(e[0])
        if tag not in LAYOUT:
            raise MalformedProof(f"unknown rule tag {tag!r} (offset {pos})")
        layout = LAYOUT[tag]
        if len(e) != 1 + len(layout) + ARITY[tag]:
            raise MalformedProof(
                f"{tag} expects {len(layout)} parameter(s) and {ARITY[tag]} premise(s) (offset {pos})"
            )
        kids = e[1 + len(layout):]
        if not expanded:
            stack.append((e, True))
            stack.extend((k, False) for k in kids)
            continue
        params = []
        for kind, v in zip(layout, e[1:1 + len(layout)]):
            if kind == "a":
                if not isinstance(v, int):
                    if isinstance(v, Symbol) and theory is not None and v in theory.agent_ids:
                        v = theory.agent_ids[v]
                    else:
                        raise ParseError(f"{tag}: agent must be an integer, found {v!r}", pos)
                params.append(v)
            elif kind == "g":
                params.append(group_from_sexpr(v, theory, pos))
            elif kind == "f":
                params.append(formula_from_sexpr(v, theory, pos, refs))
            else:
                params.append(_sym_or_str(v, "axiom name", pos))
        built[id(e)] = ProofNode(tag, tuple(params), tuple(built[id(k)] for k in kids))
    return built[id(x)]


def parse_node(text: str, theory: Optional[Theory] = None) -> ProofNode:
    return node_from_sexpr(read_one(text), theory)


def dump_proof(th: Theorem, share: bool = True) -> str:
    return dump_proof_parts(th.theory, th.conclusion, th.proof, share)


def dump_proof_parts(t: Theory, conclusion: Formula, proof: ProofNode, share: bool = True) -> str:
    """Proof file text; ``share=False`` writes every formula out in full."""
    refs = _table(_param_formulas(proof), share)
    lines = ["(proof", "  " + dump_theory(t).rstrip("\n").replace("\n", "\n  ")]
    lines.append(f"  (conclusion {print_formula(conclusion)})")
    if refs:
        lines.append("  (formulas")
        for f, name in refs.items():
            lines.append(f"    ({name} {print_formula(f, refs=refs)})")
        lines[-1] += ")"
    lines.append("  " + node_to_text(proof, refs) + ")")
    return "\n".join(lines) + "\n"


def _read_table(part, theory, pos) -> dict:
    refs = {}
    for entry in part[1:]:
        epos = getattr(entry, "pos", pos)
        if not isinstance(entry, list) or len(entry) != 2 or not isinstance(entry[0], Symbol):
            raise ParseError("formula table entries look like (#k FORMULA)", epos)
        name = entry[0]
        if not _REF.fullmatch(name):
            raise ParseError(f"formula table names look like #k, found {name!r}", epos)
        if name in refs:
            raise ParseError(f"formula table name {name} defined twice", epos)
        refs[name] = formula_from_sexpr(entry[1], theory, epos, refs)
    return refs


def parse_proof(text: str) -> Tuple[Theory, Optional[Formula], ProofNode]:
    """Split a proof file into its embedded theory, claimed conclusion and tree."""
    items = read_all(text)
    if len(items) != 1:
        raise ParseError(f"expected one (proof ...) expression, found {len(items)}", 0)
    x = items[0]
    pos = getattr(x, "pos", 0)
    if not isinstance(x, list) or not x or x[0] != "proof":
        raise ParseError("expected (proof (theory ...) (conclusion ...) NODE)", pos)
    theory, conclusion, node, table = None, None, None, None
    for part in x[1:]:
        head = part[0] if isinstance(part, list) and part else None
        if head == "theory":
            if theory is not None:
                raise ParseError("more than one theory clause", pos)
            theory = theory_from_sexpr(part)
        elif head == "conclusion":
            if len(part) != 2:
                raise ParseError("(conclusion FORMULA) takes one formula", getattr(part, "pos", pos))
            conclusion = part[1]
        elif head == "formulas":
            if table is not None:
                raise ParseError("more than one formula table", pos)
            table = part
        else:
            if node is not None:
                raise ParseError("more than one proof tree", getattr(part, "pos", pos))
            node = part
    if node is None:
        raise ParseError("proof file has no proof tree", pos)
    if theory is None:
        raise ParseError("proof file has no theory clause", pos)
    refs = _read_table(table, theory, pos) if table is not None else None
    concl = formula_from_sexpr(conclusion, theory, pos) if conclusion is not None else None
    return theory, concl, node_from_sexpr(node, theory, refs)


def check_text(text: str, theory: Optional[Theory] = None) -> Theorem:
    """Parse and replay a proof file; ``theory`` overrides the embedded one."""
    embedded, concl, node = parse_proof(text)
    return check_parts(theory or embedded, concl, node)


def check_parts(t: Theory, concl: Optional[Formula], node: ProofNode) -> Theorem:
    """Replay ``node`` in ``t`` and compare with the claimed conclusion, if any."""
    th = check_proof(t, node)
    if concl is not None and th.conclusion != concl:
        raise ConclusionMismatch(
            f"proof concludes {print_formula(th.conclusion)}, file claims {print_formula(concl)}"
        )
    return th


def load_proof(path, theory: Optional[Theory] = None) -> Theorem:
    return check_text(Path(path).read_text(), theory)


def save_proof(th: Theorem, path) -> None:
    Path(path).write_text(dump_proof(th))
