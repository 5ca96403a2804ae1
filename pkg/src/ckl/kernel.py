"""Trusted core: theories, proof objects and the only constructors of Theorem.

Every public rule function checks its side conditions, builds the conclusion
and records a :class:`ProofNode` describing the step. ``check_proof`` replays
a proof tree through the same functions, so a stored proof can always be
audited independently of how it was produced.

Three axiom bases are supported: ``CK`` (fixpoint axiom FB plus the
least-fixpoint rule LFB), ``TEC`` (A7-A10 and R3) and ``TECPRIME`` (A10
replaced by the rule R10). All share Taut, K, T, the E definition, MP and KG.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Tuple

from .errors import (
    BasisViolation,
    CKLError,
    MalformedProof,
    MissingParameter,
    NotATautology,
    ShapeMismatch,
    TheoryError,
    TheoryMismatch,
    UnknownAgent,
    UnknownAxiom,
)
from .formula import (
    C,
    E,
    Formula,
    Imp,
    K,
    modal_agents,
    conj,
    expand_E,
    group,
    iff,
    print_formula,
)
from .taut import is_tautology


class Basis(enum.Enum):
    CK = "ck"
    TEC = "tec"
    TECPRIME = "tecprime"


_COMMON = {"TAUT", "AX_K", "AX_T", "AX_E_DEF", "PROPER", "MP", "KG"}
RULES = {
    Basis.CK: frozenset(_COMMON | {"AX_FB", "LFB"}),
    Basis.TEC: frozenset(_COMMON | {"AX_A7", "AX_A8", "AX_A9", "AX_A10", "R3"}),
    Basis.TECPRIME: frozenset(_COMMON | {"AX_A7", "AX_A8", "AX_A9", "R10", "R3"}),
}

ARITY = {
    "TAUT": 0, "AX_K": 0, "AX_T": 0, "AX_E_DEF": 0, "AX_FB": 0,
    "AX_A7": 0, "AX_A8": 0, "AX_A9": 0, "AX_A10": 0, "PROPER": 0,
    "MP": 2, "KG": 1, "LFB": 1, "R3": 1, "R10": 1,
}


@lru_cache(maxsize=1 << 16)
def _agents(f: Formula) -> frozenset:
    return modal_agents(f)


@dataclass(frozen=True)
class Theory:
    """Agent domain, axiom basis and named proper axioms.

    ``names`` optionally gives display names for agents (``{0: "Alice"}``);
    they are accepted wherever the parser expects an agent.
    """

    id: str
    domain: Tuple[int, ...]
    basis: Basis = Basis.CK
    axioms: Tuple[Tuple[str, Formula], ...] = ()
    names: Tuple[Tuple[int, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "domain", group(self.domain))
        if isinstance(self.axioms, Mapping):
            object.__setattr__(self, "axioms", tuple(self.axioms.items()))
        if isinstance(self.names, Mapping):
            object.__setattr__(self, "names", tuple(sorted(self.names.items())))
        seen = set()
        for name, f in self.axioms:
            if name in seen:
                raise TheoryError(f"duplicate axiom name {name!r}")
            seen.add(name)
            stray = _agents(f) - set(self.domain)
            if stray:
                raise UnknownAgent(f"axiom {name!r} mentions agents {sorted(stray)} outside the domain")
        ids = [i for i, _ in self.names]
        labels = [n for _, n in self.names]
        if len(set(ids)) != len(ids) or len(set(labels)) != len(labels):
            raise TheoryError("duplicate agent id or name")
        if set(ids) - set(self.domain):
            raise TheoryError("named agent outside the domain")

    @property
    def proper_axioms(self) -> Mapping[str, Formula]:
        return MappingProxyType(dict(self.axioms))

    @property
    def agent_ids(self) -> Mapping[str, int]:
        return {n: i for i, n in self.names}

    @property
    def agent_names(self) -> Mapping[int, str]:
        return dict(self.names)

    def without(self, hyps: Iterable[str]) -> "Theory":
        """The sub-theory with the named proper axioms removed."""
        hyps = sorted(set(hyps))
        if not hyps:
            return self
        missing = set(hyps) - set(self.proper_axioms)
        if missing:
            raise UnknownAxiom(f"no proper axiom named {sorted(missing)}")
        kept = tuple((n, f) for n, f in self.axioms if n not in hyps)
        return Theory(f"{self.id}-minus-{'+'.join(hyps)}", self.domain, self.basis, kept, self.names)

    def with_axioms(self, new_id: str, extra: Mapping[str, Formula]) -> "Theory":
        return Theory(new_id, self.domain, self.basis, self.axioms + tuple(extra.items()), self.names)


@dataclass(frozen=True)
class ProofNode:
    rule: str
    params: tuple = ()
    children: Tuple["ProofNode", ...] = ()
    _hash: int = field(init=False, compare=False, repr=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.rule, self.params, self.children)))

    def __hash__(self):
        return self._hash


class Theorem:
    """``|- conclusion`` in ``theory``, certified by the kernel.

    Instances cannot be built directly; use the rule functions of this module.
    """

    __slots__ = ("theory", "conclusion", "proof")

    def __init__(self, *args, **kwargs):
        raise TypeError("Theorem values are only produced by kernel rules")

    def __setattr__(self, key, value):
        raise AttributeError("Theorem is immutable")

    @property
    def theory_id(self) -> str:
        return self.theory.id

    def __repr__(self):
        return f"<Theorem {self.theory.id}: |- {print_formula(self.conclusion)}>"


def _mint(theory: Theory, conclusion: Formula, proof: ProofNode) -> Theorem:
    th = object.__new__(Theorem)
    object.__setattr__(th, "theory", theory)
    object.__setattr__(th, "conclusion", conclusion)
    object.__setattr__(th, "proof", proof)
    return th


# -- side-condition helpers ---------------------------------------------------

def _need(t: Theory, rule: str):
    if rule not in RULES[t.basis]:
        raise BasisViolation(f"{rule} is not available in basis {t.basis.value}")


def _agent_ok(t: Theory, i):
    if not isinstance(i, int) or i not in t.domain:
        raise UnknownAgent(f"agent {i!r} not in domain {list(t.domain)} of theory {t.id!r}")


def _group_ok(t: Theory, g) -> tuple:
    if not isinstance(g, tuple) or group(g) != g:
        raise MalformedProof(f"group {g!r} is not in canonical form")
    for i in g:
        _agent_ok(t, i)
    return g


def _formula_ok(t: Theory, *fs):
    dom = set(t.domain)
    for f in fs:
        if not isinstance(f, Formula):
            raise MalformedProof(f"expected a formula, got {f!r}")
        stray = _agents(f) - dom
        if stray:
            raise UnknownAgent(f"formula mentions agents {sorted(stray)} outside domain of {t.id!r}")


def _same_theory(*ths: Theorem) -> Theory:
    t = ths[0].theory
    for other in ths[1:]:
        if other.theory.id != t.id:
            raise TheoryMismatch(f"cannot combine theorems of {t.id!r} and {other.theory.id!r}")
    return t


def _shape(expected: Formula, found: Formula, what: str):
    if expected != found:
        raise ShapeMismatch(
            f"{what}: expected {print_formula(expected)}, found {print_formula(found)}"
        )


# -- axioms -------------------------------------------------------------------

def ax_taut(t: Theory, f: Formula) -> Theorem:
    _need(t, "TAUT")
    _formula_ok(t, f)
    if not is_tautology(f):
        raise NotATautology(f"not a tautology: {print_formula(f)}")
    return _mint(t, f, ProofNode("TAUT", (f,)))


def ax_K(t: Theory, i: int, phi: Formula, psi: Formula) -> Theorem:
    _need(t, "AX_K")
    _agent_ok(t, i)
    _formula_ok(t, phi, psi)
    concl = Imp(conj(K(i, phi), K(i, Imp(phi, psi))), K(i, psi))
    return _mint(t, concl, ProofNode("AX_K", (i, phi, psi)))


def ax_T(t: Theory, i: int, phi: Formula) -> Theorem:
    _need(t, "AX_T")
    _agent_ok(t, i)
    _formula_ok(t, phi)
    return _mint(t, Imp(K(i, phi), phi), ProofNode("AX_T", (i, phi)))


def ax_E_def(t: Theory, g, phi: Formula) -> Theorem:
    _need(t, "AX_E_DEF")
    g = _group_ok(t, g)
    _formula_ok(t, phi)
    return _mint(t, iff(E(g, phi), expand_E(g, phi)), ProofNode("AX_E_DEF", (g, phi)))


def ax_FB(t: Theory, g, phi: Formula) -> Theorem:
    _need(t, "AX_FB")
    g = _group_ok(t, g)
    _formula_ok(t, phi)
    c = C(g, phi)
    return _mint(t, Imp(c, conj(phi, E(g, c))), ProofNode("AX_FB", (g, phi)))


def ax_tec(t: Theory, which: str, g, phi: Formula, psi: Optional[Formula] = None) -> Theorem:
    """Instances of A7, A8, A9 (needs ``psi``) and A10."""
    which = which.upper()
    if which not in ("A7", "A8", "A9", "A10"):
        raise MalformedProof(f"unknown scheme {which!r}")
    tag = "AX_" + which
    _need(t, tag)
    g = _group_ok(t, g)
    if which == "A9":
        if psi is None:
            raise MissingParameter("A9 needs a second formula")
        _formula_ok(t, phi, psi)
    elif psi is not None:
        raise MissingParameter(f"{which} takes exactly one formula")
    else:
        _formula_ok(t, phi)
    c = C(g, phi)
    if which == "A7":
        concl = Imp(c, phi)
        params = (g, phi)
    elif which == "A8":
        concl = Imp(c, E(g, c))
        params = (g, phi)
    elif which == "A9":
        concl = Imp(conj(c, C(g, Imp(phi, psi))), C(g, psi))
        params = (g, phi, psi)
    else:
        concl = Imp(C(g, Imp(phi, E(g, phi))), Imp(phi, c))
        params = (g, phi)
    return _mint(t, concl, ProofNode(tag, params))


def ax_proper(t: Theory, name: str) -> Theorem:
    _need(t, "PROPER")
    axioms = t.proper_axioms
    if name not in axioms:
        raise UnknownAxiom(f"theory {t.id!r} has no proper axiom {name!r}")
    return _mint(t, axioms[name], ProofNode("PROPER", (name,)))


# -- rules --------------------------------------------------------------------

def rule_MP(minor: Theorem, major: Theorem) -> Theorem:
    """From |- phi and |- phi => psi conclude |- psi."""
    t = _same_theory(minor, major)
    _need(t, "MP")
    f = major.conclusion
    if not isinstance(f, Imp):
        raise ShapeMismatch(f"MP major premise is not an implication: {print_formula(f)}")
    _shape(f.left, minor.conclusion, "MP antecedent")
    return _mint(t, f.right, ProofNode("MP", (), (minor.proof, major.proof)))


def rule_KG(i: int, th: Theorem) -> Theorem:
    t = th.theory
    _need(t, "KG")
    _agent_ok(t, i)
    return _mint(t, K(i, th.conclusion), ProofNode("KG", (i,), (th.proof,)))


def rule_LFB(g, phi: Formula, th: Theorem) -> Theorem:
    """From |- rho => phi & E_g rho conclude |- rho => C_g phi."""
    t = th.theory
    _need(t, "LFB")
    g = _group_ok(t, g)
    _formula_ok(t, phi)
    f = th.conclusion
    if not isinstance(f, Imp):
        raise ShapeMismatch(f"LFB premise is not an implication: {print_formula(f)}")
    rho = f.left
    _shape(Imp(rho, conj(phi, E(g, rho))), f, "LFB premise")
    return _mint(t, Imp(rho, C(g, phi)), ProofNode("LFB", (g, phi), (th.proof,)))


def rule_R3(g, th: Theorem) -> Theorem:
    t = th.theory
    _need(t, "R3")
    g = _group_ok(t, g)
    return _mint(t, C(g, th.conclusion), ProofNode("R3", (g,), (th.proof,)))


def rule_R10(g, phi: Formula, th: Theorem) -> Theorem:
    """From |- C_g(phi => E_g phi) conclude |- phi => C_g phi."""
    t = th.theory
    _need(t, "R10")
    g = _group_ok(t, g)
    _formula_ok(t, phi)
    _shape(C(g, Imp(phi, E(g, phi))), th.conclusion, "R10 premise")
    return _mint(t, Imp(phi, C(g, phi)), ProofNode("R10", (g, phi), (th.proof,)))


# -- replay -------------------------------------------------------------------

def _apply(t: Theory, node: ProofNode, kids: list) -> Theorem:
    rule, p = node.rule, node.params
    if rule not in ARITY:
        raise MalformedProof(f"unknown rule tag {rule!r}")
    if len(node.children) != ARITY[rule]:
        raise MalformedProof(f"{rule} expects {ARITY[rule]} premise(s), got {len(node.children)}")
    try:
        if rule == "TAUT":
            (f,) = p
            return ax_taut(t, f)
        if rule == "AX_K":
            i, a, b = p
            return ax_K(t, i, a, b)
        if rule == "AX_T":
            i, a = p
            return ax_T(t, i, a)
        if rule == "AX_E_DEF":
            g, a = p
            return ax_E_def(t, g, a)
        if rule == "AX_FB":
            g, a = p
            return ax_FB(t, g, a)
        if rule in ("AX_A7", "AX_A8", "AX_A10"):
            g, a = p
            return ax_tec(t, rule[3:], g, a)
        if rule == "AX_A9":
            g, a, b = p
            return ax_tec(t, "A9", g, a, b)
        if rule == "PROPER":
            (name,) = p
            return ax_proper(t, name)
        if rule == "MP":
            () = p
            return rule_MP(kids[0], kids[1])
        if rule == "KG":
            (i,) = p
            return rule_KG(i, kids[0])
        if rule == "LFB":
            g, a = p
            return rule_LFB(g, a, kids[0])
        if rule == "R3":
            (g,) = p
            return rule_R3(g, kids[0])
        if rule == "R10":
            g, a = p
            return rule_R10(g, a, kids[0])
    except (ValueError, TypeError) as exc:
        raise MalformedProof(f"bad parameters for {rule}: {exc}") from None
    raise MalformedProof(f"unknown rule tag {rule!r}")


def replay(t: Theory, proof: ProofNode) -> dict:
    """Replay ``proof`` in ``t``; map every distinct node to its theorem.

    Errors are the ones the failing rule raises, with ``path`` set to the
    child-index path of the offending node.
    """
    if not isinstance(proof, ProofNode):
        raise MalformedProof(f"expected a ProofNode, got {type(proof).__name__}")
    done = {}
    stack = [(proof, (), False)]
    while stack:
        node, path, expanded = stack.pop()
        if node in done:
            continue
        if not isinstance(node, ProofNode):
            raise MalformedProof("proof child is not a ProofNode", path)
        if not expanded:
            stack.append((node, path, True))
            for k, child in enumerate(node.children):
                if child not in done:
                    stack.append((child, path + (k,), False))
            continue
        try:
            done[node] = _apply(t, node, [done[c] for c in node.children])
        except CKLError as exc:
            if exc.path is None:
                exc.path = path
            raise
    return done


def check_proof(t: Theory, proof: ProofNode) -> Theorem:
    """Replay ``proof`` bottom-up in ``t`` and return the resulting theorem."""
    return replay(t, proof)[proof]


def transport(th: Theorem, t: Theory) -> Theorem:
    """Re-check ``th`` inside ``t`` (typically an extension of its theory)."""
    return check_proof(t, th.proof)


# -- proof statistics ---------------------------------------------------------

def _postorder(proof: ProofNode):
    out, seen = [], set()
    stack = [(proof, False)]
    while stack:
        n, expanded = stack.pop()
        if expanded:
            out.append(n)
            continue
        if n in seen:
            continue
        seen.add(n)
        stack.append((n, True))
        stack.extend((c, False) for c in n.children if c not in seen)
    return out


def proof_stats(proof: ProofNode) -> dict:
    """Tree size (with repetition), distinct node count and depth."""
    size, depth = {}, {}
    order = _postorder(proof)
    for n in order:
        size[n] = 1 + sum(size[c] for c in n.children)
        depth[n] = 1 + max((depth[c] for c in n.children), default=0)
    return {"nodes": size[proof], "distinct": len(order), "depth": depth[proof]}


def rule_tags(proof: ProofNode) -> set:
    tags = set()
    stack, seen = [proof], set()
    while stack:
        n = stack.pop()
        if n in seen:
            continue
        seen.add(n)
        tags.add(n.rule)
        stack.extend(n.children)
    return tags


def proper_leaves(proof: ProofNode) -> set:
    names = set()
    stack, seen = [proof], set()
    while stack:
        n = stack.pop()
        if n in seen:
            continue
        seen.add(n)
        if n.rule == "PROPER":
            names.add(n.params[0])
        stack.extend(n.children)
    return names
