"""Named derivations, as offered by ``ckl derive``.

A name picks a scheme; the basis picks how it is obtained. ``a10`` is the
primitive axiom under ``tec``, derived from R10 under ``tecprime`` and
derived with LFB under ``ck``. Names that only make sense in one basis
(``four_C``, ``internal_kg``, ...) raise BasisViolation elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence

from . import derived as d
from .errors import BasisViolation, MissingParameter, UnknownAxiom
from .formula import C, E, Formula, Imp, conj, group, modal_agents
from .kernel import (
    Basis,
    Theorem,
    Theory,
    ax_FB,
    ax_taut,
    ax_tec,
    rule_LFB,
    rule_R3,
)


@dataclass(frozen=True)
class Request:
    theory: Theory
    g: tuple
    args: tuple
    agent: Optional[int] = None


@dataclass(frozen=True)
class Entry:
    name: str
    arity: int
    summary: str
    build: Dict[Basis, Callable[[Request], Theorem]]


def _identity(r: Request) -> Theorem:
    """|- phi => phi, the seed theorem for the rule-style entries."""
    return ax_taut(r.theory, Imp(r.args[0], r.args[0]))


def _fb_premise(r: Request) -> Theorem:
    """|- C_g phi => phi & E_g(C_g phi), a ready-made LFB premise."""
    t, g, phi = r.theory, r.g, r.args[0]
    return ax_FB(t, g, phi) if t.basis is Basis.CK else d.fb_in_tec(t, g, phi)


def _need_agent(r: Request) -> int:
    if r.agent is None:
        raise MissingParameter("this derivation needs --agent")
    return r.agent


CK, TEC, TECP = Basis.CK, Basis.TEC, Basis.TECPRIME

ENTRIES = [
    Entry("a7", 1, "C_g phi => phi", {
        CK: lambda r: d.t_C(r.theory, r.g, r.args[0]),
        TEC: lambda r: ax_tec(r.theory, "A7", r.g, r.args[0]),
        TECP: lambda r: ax_tec(r.theory, "A7", r.g, r.args[0]),
    }),
    Entry("a8", 1, "C_g phi => E_g(C_g phi)", {
        CK: lambda r: d.e_from_c(r.theory, r.g, r.args[0]),
        TEC: lambda r: ax_tec(r.theory, "A8", r.g, r.args[0]),
        TECP: lambda r: ax_tec(r.theory, "A8", r.g, r.args[0]),
    }),
    Entry("a9", 2, "C_g phi & C_g(phi => psi) => C_g psi", {
        CK: lambda r: d.k_C(r.theory, r.g, *r.args),
        TEC: lambda r: ax_tec(r.theory, "A9", r.g, *r.args),
        TECP: lambda r: ax_tec(r.theory, "A9", r.g, *r.args),
    }),
    Entry("a10", 1, "C_g(phi => E_g phi) => phi => C_g phi", {
        CK: lambda r: d.a10_in_ck(r.theory, r.g, r.args[0]),
        TEC: lambda r: ax_tec(r.theory, "A10", r.g, r.args[0]),
        TECP: lambda r: d.a10_from_r10(r.theory, r.g, r.args[0]),
    }),
    Entry("r3", 1, "C_g(phi => phi), necessitation for C", {
        CK: lambda r: d.kg_C(r.theory, r.g, _identity(r)),
        TEC: lambda r: rule_R3(r.g, _identity(r)),
        TECP: lambda r: rule_R3(r.g, _identity(r)),
    }),
    Entry("fb", 1, "C_g phi => phi & E_g(C_g phi)", {
        CK: _fb_premise,
        TEC: _fb_premise,
        TECP: _fb_premise,
    }),
    Entry("lfb", 1, "C_g phi => C_g phi, by the least-fixpoint rule on FB", {
        CK: lambda r: rule_LFB(r.g, r.args[0], _fb_premise(r)),
        TEC: lambda r: d.lfb_in_tec(r.theory, r.g, r.args[0], _fb_premise(r)),
    }),
    Entry("t_C", 1, "C_g phi => phi", {CK: lambda r: d.t_C(r.theory, r.g, r.args[0])}),
    Entry("e_from_c", 1, "C_g phi => E_g(C_g phi)", {
        CK: lambda r: d.e_from_c(r.theory, r.g, r.args[0]),
    }),
    Entry("k_C", 2, "C_g phi & C_g(phi => psi) => C_g psi", {
        CK: lambda r: d.k_C(r.theory, r.g, *r.args),
    }),
    Entry("kg_C", 1, "C_g(phi => phi)", {CK: lambda r: d.kg_C(r.theory, r.g, _identity(r))}),
    Entry("four_C", 1, "C_g phi => C_g C_g phi", {
        CK: lambda r: d.four_C(r.theory, r.g, r.args[0]),
    }),
    Entry("c_conj", 2, "C_g(phi & psi) => C_g phi & C_g psi", {
        CK: lambda r: d.c_conj(r.theory, r.g, *r.args)[0],
    }),
    Entry("c_conj_join", 2, "C_g phi & C_g psi => C_g(phi & psi)", {
        CK: lambda r: d.c_conj(r.theory, r.g, *r.args)[1],
    }),
    Entry("internal_mp", 2, "C_g((phi => psi) & phi) => C_g psi", {
        CK: lambda r: d.internal_mp(r.theory, r.g, *r.args),
    }),
    Entry("internal_kg", 1, "C_g phi => C_g K_i phi, i = --agent in g", {
        CK: lambda r: d.internal_kg(r.theory, r.g, _need_agent(r), r.args[0]),
    }),
    Entry("internal_lfb", 2, "C_g(rho => phi & E_g rho) => C_g(rho => C_g phi)", {
        CK: lambda r: d.internal_lfb(r.theory, r.g, *r.args),
    }),
]

CATALOGUE = {e.name: e for e in ENTRIES}


def derivation_theory(basis: Basis, g, args: Sequence[Formula], agent=None) -> Theory:
    """Smallest pure theory covering the group, the formulas and the agent."""
    domain = set(g)
    for f in args:
        domain |= modal_agents(f)
    if agent is not None:
        domain.add(agent)
    return Theory(f"pure-{basis.value}", tuple(sorted(domain)), basis)


def derive(name: str, g, args: Sequence[Formula], basis=Basis.CK, agent=None,
           theory: Optional[Theory] = None) -> Theorem:
    entry = CATALOGUE.get(name)
    if entry is None:
        raise UnknownAxiom(f"no derivation named {name!r}; known: {', '.join(CATALOGUE)}")
    basis = Basis(basis)
    if basis not in entry.build:
        have = "/".join(b.value for b in entry.build)
        raise BasisViolation(f"{name} is available in basis {have}, not {basis.value}")
    args = tuple(args)
    if len(args) != entry.arity:
        raise MissingParameter(f"{name} takes {entry.arity} formula argument(s), got {len(args)}")
    g = group(g)
    t = theory or derivation_theory(basis, g, args, agent)
    return entry.build[basis](Request(t, g, args, agent))


def expected(name: str, g, args: Sequence[Formula]) -> Optional[Formula]:
    """The target formula of the scheme entries, written out independently."""
    g = group(g)
    phi = args[0]
    c = C(g, phi)
    if name in ("a7", "t_C"):
        return Imp(c, phi)
    if name in ("a8", "e_from_c"):
        return Imp(c, E(g, c))
    if name in ("a9", "k_C"):
        return Imp(conj(c, C(g, Imp(phi, args[1]))), C(g, args[1]))
    if name == "a10":
        return Imp(C(g, Imp(phi, E(g, phi))), Imp(phi, c))
    if name in ("r3", "kg_C"):
        return C(g, Imp(phi, phi))
    if name == "fb":
        return Imp(c, conj(phi, E(g, c)))
    if name == "lfb":
        return Imp(c, c)
    if name == "four_C":
        return Imp(c, C(g, c))
    return None
