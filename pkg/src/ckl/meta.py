"""Turning a derivation from hypotheses into a single object-level theorem.

Given a proof of ``|- psi`` in a theory whose proper axioms include the
hypotheses ``Phi``, :func:`internalize_full` walks the proof tree and maps
each node with conclusion ``a`` to ``|- C_g Phi => C_g a`` in the theory
without those hypotheses. :func:`internalize` then drops the outer ``C_g``
on the right, and :func:`externalize` goes back.

The walk needs every KG agent to be a member of ``g`` and every LFB group to
be a subgroup of ``g``; both are checked up front and reported with the node
path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from . import derived as d
from .errors import (
    AgentOutsideGroup,
    BasisViolation,
    GroupOutsideGroup,
    ShapeMismatch,
    TheoryMismatch,
    UnknownAxiom,
)
from .formula import C, Formula, Imp, conj, group, print_formula
from .kernel import (
    Basis,
    ProofNode,
    Theorem,
    Theory,
    ax_taut,
    check_proof,
    replay,
    rule_MP,
)


@dataclass(frozen=True)
class HypDerivation:
    """A proof in ``theory`` that may use the named proper axioms as hypotheses."""

    theory: Theory
    hypotheses: Tuple[str, ...]
    root: ProofNode

    def __post_init__(self):
        hyps = tuple(sorted(set(self.hypotheses)))
        missing = set(hyps) - set(self.theory.proper_axioms)
        if missing:
            raise UnknownAxiom(f"hypotheses {sorted(missing)} are not proper axioms of {self.theory.id!r}")
        object.__setattr__(self, "hypotheses", hyps)

    @property
    def phi(self) -> Formula:
        """Conjunction of the hypotheses, right-nested in name order."""
        axioms = self.theory.proper_axioms
        return conj(*(axioms[h] for h in self.hypotheses))

    @property
    def conclusion(self) -> Formula:
        return check_proof(self.theory, self.root).conclusion

    @property
    def stripped(self) -> Theory:
        return self.theory.without(self.hypotheses)


def _check_side_conditions(root: ProofNode, g):
    gs = set(g)
    stack = [(root, ())]
    seen = set()
    while stack:
        node, path = stack.pop()
        if node in seen:
            continue
        seen.add(node)
        if node.rule == "KG" and node.params and node.params[0] not in gs:
            raise AgentOutsideGroup(
                f"KG over agent {node.params[0]} which is not in group {list(g)}", path
            )
        if node.rule == "LFB" and node.params and not set(node.params[0]) <= gs:
            raise GroupOutsideGroup(
                f"LFB over group {list(node.params[0])} not contained in {list(g)}", path
            )
        for k, c in enumerate(node.children):
            stack.append((c, path + (k,)))


def _uses_hyps(root: ProofNode, hyps) -> dict:
    """For every node: does its subtree contain a PROPER leaf naming a hypothesis?"""
    out = {}
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if node in out:
            continue
        if not expanded:
            stack.append((node, True))
            stack.extend((c, False) for c in node.children if c not in out)
            continue
        if node.rule == "PROPER":
            out[node] = node.params[0] in hyps
        else:
            out[node] = any(out[c] for c in node.children)
    return out


def internalize_full(der: HypDerivation, g) -> Theorem:
    """|- C_g Phi => C_g psi in the theory without the hypotheses."""
    t = der.theory
    if t.basis is not Basis.CK:
        raise BasisViolation(f"internalization works in the ck basis, not {t.basis.value}")
    g = group(g)
    for i in g:
        if i not in t.domain:
            raise AgentOutsideGroup(f"agent {i} of the target group is outside the domain")
    _check_side_conditions(der.root, g)
    original = replay(t, der.root)
    t2 = der.stripped
    phi = der.phi
    cphi = C(g, phi)
    hyps = set(der.hypotheses)
    dirty = _uses_hyps(der.root, hyps)
    hyp_formulas = t.proper_axioms

    out = {}
    stack = [(der.root, False)]
    while stack:
        node, expanded = stack.pop()
        if node in out:
            continue
        if not expanded:
            stack.append((node, True))
            if dirty[node]:
                stack.extend((c, False) for c in node.children if c not in out)
            continue
        concl = original[node].conclusion
        goal = Imp(cphi, C(g, concl))
        if not dirty[node]:
            # hypothesis-free subtree: already a theorem of the smaller theory
            th = d.kg_C(t2, g, check_proof(t2, node))
            out[node] = d.glue(t2, [th], goal)
        elif node.rule == "PROPER":
            proj = ax_taut(t2, Imp(phi, hyp_formulas[node.params[0]]))
            out[node] = d.c_mono(t2, g, proj)
        elif node.rule == "MP":
            minor, major = node.children
            a = original[minor].conclusion
            kc = d.k_C(t2, g, a, concl)
            out[node] = d.glue(t2, [out[minor], out[major], kc], goal)
        elif node.rule == "KG":
            (i,) = node.params
            (child,) = node.children
            a = original[child].conclusion
            out[node] = d.chain(out[child], d.internal_kg(t2, g, i, a))
        elif node.rule == "LFB":
            h, target = node.params
            (child,) = node.children
            rho = original[child].conclusion.left
            out[node] = d.chain(out[child], d.internal_lfb(t2, g, rho, target, inner=h))
        else:
            raise BasisViolation(f"rule {node.rule} cannot be internalized")
    return out[der.root]


def internalize(der: HypDerivation, g) -> Theorem:
    """|- C_g Phi => psi in the theory without the hypotheses."""
    g = group(g)
    full = internalize_full(der, g)
    psi = full.conclusion.right.body
    return d.weaken(full.theory, g, der.phi, psi, full)


def externalize(proved_phi: Theorem, th: Theorem) -> Theorem:
    """From |- Phi and |- C_g Phi => psi conclude |- psi."""
    if proved_phi.theory.id != th.theory.id:
        raise TheoryMismatch(
            f"cannot combine theorems of {proved_phi.theory.id!r} and {th.theory.id!r}"
        )
    f = th.conclusion
    if not (isinstance(f, Imp) and isinstance(f.left, C)):
        raise ShapeMismatch(f"externalize: expected C_g Phi => psi, found {print_formula(f)}")
    if f.left.body != proved_phi.conclusion:
        raise ShapeMismatch(
            f"externalize: hypothesis {print_formula(f.left.body)} "
            f"does not match {print_formula(proved_phi.conclusion)}"
        )
    return rule_MP(d.kg_C(th.theory, f.left.group, proved_phi), th)
