"""Derived rules and theorems, each built step by step through the kernel.

Nothing here is trusted: every function only calls kernel constructors, so
the returned theorems carry complete proofs that ``check_proof`` re-accepts.

Propositional reasoning is done with :func:`glue`: one Taut instance of the
form ``p1 => ... => pk => goal`` discharged by MP against the premises.
"""

from __future__ import annotations

from typing import Sequence, Tuple

from .errors import AgentNotInGroup, BasisViolation, ShapeMismatch, TheoryMismatch
from .formula import (
    C,
    E,
    Formula,
    Imp,
    K,
    TRUE,
    conj,
    group,
    imps,
    print_formula,
)
from .kernel import (
    Basis,
    Theorem,
    Theory,
    ax_E_def,
    ax_FB,
    ax_K,
    ax_taut,
    ax_tec,
    rule_KG,
    rule_LFB,
    rule_MP,
    rule_R10,
    rule_R3,
)


def _basis(t: Theory, *allowed: Basis):
    if t.basis not in allowed:
        names = "/".join(b.value for b in allowed)
        raise BasisViolation(f"derivation needs basis {names}, theory {t.id!r} is {t.basis.value}")


def _split_imp(f: Formula, what: str) -> Tuple[Formula, Formula]:
    if not isinstance(f, Imp):
        raise ShapeMismatch(f"{what}: expected an implication, found {print_formula(f)}")
    return f.left, f.right


# -- propositional glue -------------------------------------------------------

def glue(t: Theory, premises: Sequence[Theorem], goal: Formula) -> Theorem:
    """|- goal from premises whenever ``p1 => ... => pk => goal`` is a tautology."""
    th = ax_taut(t, imps(*(p.conclusion for p in premises), goal))
    for p in premises:
        th = rule_MP(p, th)
    return th


def chain(ab: Theorem, bc: Theorem) -> Theorem:
    """Transitivity of implication."""
    a, b = _split_imp(ab.conclusion, "chain")
    b2, c = _split_imp(bc.conclusion, "chain")
    if b != b2:
        raise ShapeMismatch(f"chain: {print_formula(b)} vs {print_formula(b2)}")
    return glue(ab.theory, [ab, bc], Imp(a, c))


def both(ab: Theorem, ac: Theorem) -> Theorem:
    """From |- a => b and |- a => c conclude |- a => b & c."""
    a, b = _split_imp(ab.conclusion, "both")
    a2, c = _split_imp(ac.conclusion, "both")
    if a != a2:
        raise ShapeMismatch(f"both: {print_formula(a)} vs {print_formula(a2)}")
    return glue(ab.theory, [ab, ac], Imp(a, conj(b, c)))


def _antecedents(f: Formula, n: int):
    ants = []
    for _ in range(n):
        a, f = _split_imp(f, "curried premise")
        ants.append(a)
    return ants, f


# -- lifting under K_i and E_g ------------------------------------------------

def k_multi(i: int, th: Theorem, n: int = 1) -> Theorem:
    """From |- a1 => ... => an => b conclude |- K_i a1 => ... => K_i an => K_i b."""
    t = th.theory
    ants, _ = _antecedents(th.conclusion, n)
    cur = rule_KG(i, th)
    rest = th.conclusion
    done = []
    for a in ants:
        rest_next = rest.right
        step = ax_K(t, i, a, rest_next)
        done.append(K(i, a))
        cur = glue(t, [cur, step], imps(*done, K(i, rest_next)))
        rest = rest_next
    return cur


def e_multi(g, th: Theorem, n: int = 1) -> Theorem:
    """From |- a1 => ... => an => b conclude |- E_g a1 => ... => E_g an => E_g b."""
    t = th.theory
    g = group(g)
    ants, b = _antecedents(th.conclusion, n)
    defs = [ax_E_def(t, g, f) for f in (*ants, b)]
    lifted = [k_multi(i, th, n) for i in g]
    return glue(t, defs + lifted, imps(*(E(g, a) for a in ants), E(g, b)))


def e_conj(t: Theory, g, a: Formula, b: Formula) -> Theorem:
    """|- E_g a => E_g b => E_g (a & b)."""
    return e_multi(g, ax_taut(t, imps(a, b, conj(a, b))), 2)


def e_sub(t: Theory, g, h, a: Formula) -> Theorem:
    """|- E_g a => E_h a for h a subgroup of g."""
    g, h = group(g), group(h)
    if not set(h) <= set(g):
        raise AgentNotInGroup(f"{list(h)} is not a subgroup of {list(g)}")
    return glue(t, [ax_E_def(t, g, a), ax_E_def(t, h, a)], Imp(E(g, a), E(h, a)))


def e_to_k(t: Theory, g, i: int, a: Formula) -> Theorem:
    """|- E_g a => K_i a for i in g."""
    if i not in group(g):
        raise AgentNotInGroup(f"agent {i} is not in group {list(g)}")
    return glue(t, [ax_E_def(t, g, a)], Imp(E(g, a), K(i, a)))


# -- the T-like behaviour of C in the CK basis ---------------------------------

def t_C(t: Theory, g, phi: Formula) -> Theorem:
    """|- C_g phi => phi, from FB by projection."""
    _basis(t, Basis.CK)
    fb = ax_FB(t, group(g), phi)
    return glue(t, [fb], Imp(C(g, phi), phi))


def e_from_c(t: Theory, g, phi: Formula) -> Theorem:
    """|- C_g phi => E_g(C_g phi), from FB by projection."""
    _basis(t, Basis.CK)
    g = group(g)
    fb = ax_FB(t, g, phi)
    return glue(t, [fb], Imp(C(g, phi), E(g, C(g, phi))))


def lfb2(g, phi: Formula, to_phi: Theorem, to_e: Theorem) -> Theorem:
    """LFB fed with |- rho => phi and |- rho => E_g rho separately."""
    return rule_LFB(group(g), phi, both(to_phi, to_e))


def _c_pair_closed(t: Theory, g, a: Formula, b: Formula) -> Theorem:
    """|- C_g a & C_g b => E_g(C_g a & C_g b)."""
    g = group(g)
    ca, cb = C(g, a), C(g, b)
    ea, eb = e_from_c(t, g, a), e_from_c(t, g, b)
    dist = e_conj(t, g, ca, cb)
    return glue(t, [ea, eb, dist], Imp(conj(ca, cb), E(g, conj(ca, cb))))


def k_C(t: Theory, g, phi: Formula, psi: Formula) -> Theorem:
    """|- (C_g phi & C_g(phi => psi)) => C_g psi, via LFB."""
    _basis(t, Basis.CK)
    g = group(g)
    imp = Imp(phi, psi)
    rho = conj(C(g, phi), C(g, imp))
    to_psi = glue(t, [t_C(t, g, phi), t_C(t, g, imp)], Imp(rho, psi))
    return lfb2(g, psi, to_psi, _c_pair_closed(t, g, phi, imp))


def kg_C(t: Theory, g, th: Theorem) -> Theorem:
    """From |- phi conclude |- C_g phi (LFB with rho = TRUE)."""
    _basis(t, Basis.CK)
    if th.theory.id != t.id:
        raise TheoryMismatch(f"theorem of {th.theory.id!r} used in {t.id!r}")
    g = group(g)
    top = ax_taut(t, TRUE)
    knows_top = [rule_KG(i, top) for i in g]
    premise = glue(t, [th, ax_E_def(t, g, TRUE), *knows_top], Imp(TRUE, conj(th.conclusion, E(g, TRUE))))
    return rule_MP(top, rule_LFB(g, th.conclusion, premise))


def four_C(t: Theory, g, phi: Formula) -> Theorem:
    """|- C_g phi => C_g C_g phi, without any positive-introspection axiom."""
    _basis(t, Basis.CK)
    g = group(g)
    c = C(g, phi)
    fb = ax_FB(t, g, phi)
    premise = glue(t, [fb], Imp(c, conj(c, E(g, c))))
    return rule_LFB(g, c, premise)


def strengthen(t: Theory, g, phi: Formula, psi: Formula, th: Theorem) -> Theorem:
    """From |- C_g phi => psi conclude |- C_g phi => C_g psi."""
    _basis(t, Basis.CK)
    g = group(g)
    expected = Imp(C(g, phi), psi)
    if th.conclusion != expected:
        raise ShapeMismatch(
            f"strengthen: expected {print_formula(expected)}, found {print_formula(th.conclusion)}"
        )
    return lfb2(g, psi, th, e_from_c(t, g, phi))


def weaken(t: Theory, g, phi: Formula, psi: Formula, th: Theorem) -> Theorem:
    """From |- C_g phi => C_g psi conclude |- C_g phi => psi."""
    g = group(g)
    expected = Imp(C(g, phi), C(g, psi))
    if th.conclusion != expected:
        raise ShapeMismatch(
            f"weaken: expected {print_formula(expected)}, found {print_formula(th.conclusion)}"
        )
    return chain(th, t_C(t, g, psi))


def c_mono(t: Theory, g, th: Theorem) -> Theorem:
    """From |- a => b conclude |- C_g a => C_g b."""
    g = group(g)
    a, b = _split_imp(th.conclusion, "c_mono")
    return strengthen(t, g, a, b, chain(t_C(t, g, a), th))


def c_conj(t: Theory, g, phi: Formula, psi: Formula) -> Tuple[Theorem, Theorem]:
    """Both directions of C_g(phi & psi) <=> C_g phi & C_g psi."""
    _basis(t, Basis.CK)
    g = group(g)
    both_ = conj(phi, psi)
    left = c_mono(t, g, ax_taut(t, Imp(both_, phi)))
    right = c_mono(t, g, ax_taut(t, Imp(both_, psi)))
    split = glue(t, [left, right], Imp(C(g, both_), conj(C(g, phi), C(g, psi))))
    rho = conj(C(g, phi), C(g, psi))
    to_both = glue(t, [t_C(t, g, phi), t_C(t, g, psi)], Imp(rho, both_))
    join = lfb2(g, both_, to_both, _c_pair_closed(t, g, phi, psi))
    return split, join


# -- inter-basis derivations -------------------------------------------------

def a10_in_ck(t: Theory, g, phi: Formula) -> Theorem:
    """|- C_g(phi => E_g phi) => phi => C_g phi, proved with LFB."""
    _basis(t, Basis.CK)
    g = group(g)
    a = C(g, Imp(phi, E(g, phi)))
    rho = conj(a, phi)
    a8 = e_from_c(t, g, Imp(phi, E(g, phi)))
    a7 = t_C(t, g, Imp(phi, E(g, phi)))
    rho_e_phi = glue(t, [a7], Imp(rho, E(g, phi)))
    rho_e_a = glue(t, [a8], Imp(rho, E(g, a)))
    rho_both = both(rho_e_a, rho_e_phi)
    dist = e_conj(t, g, a, phi)
    rho_e_rho = glue(t, [rho_both, dist], Imp(rho, E(g, rho)))
    # transitivity step of the figure: rho => phi & E_g rho
    premise = glue(t, [rho_e_rho], Imp(rho, conj(phi, E(g, rho))))
    lfb = rule_LFB(g, phi, premise)
    return glue(t, [lfb], Imp(a, Imp(phi, C(g, phi))))


def fb_in_tec(t: Theory, g, phi: Formula) -> Theorem:
    """FB from A7 and A8."""
    _basis(t, Basis.TEC, Basis.TECPRIME)
    g = group(g)
    a7 = ax_tec(t, "A7", g, phi)
    a8 = ax_tec(t, "A8", g, phi)
    return both(a7, a8)


def lfb_in_tec(t: Theory, g, phi: Formula, th: Theorem) -> Theorem:
    """LFB as a derived rule of TEC: R3, A10 + MP, A9 + MP, transitivity."""
    _basis(t, Basis.TEC)
    g = group(g)
    rho, rest = _split_imp(th.conclusion, "lfb_in_tec")
    if rest != conj(phi, E(g, rho)):
        raise ShapeMismatch(
            f"lfb_in_tec: expected {print_formula(Imp(rho, conj(phi, E(g, rho))))}, "
            f"found {print_formula(th.conclusion)}"
        )
    rho_e = glue(t, [th], Imp(rho, E(g, rho)))
    rho_c = rule_MP(rule_R3(g, rho_e), ax_tec(t, "A10", g, rho))
    rho_phi = glue(t, [th], Imp(rho, phi))
    a9 = ax_tec(t, "A9", g, rho, phi)
    c_rho_c_phi = glue(t, [rule_R3(g, rho_phi), a9], Imp(C(g, rho), C(g, phi)))
    return chain(rho_c, c_rho_c_phi)


def a10_from_r10(t: Theory, g, phi: Formula) -> Theorem:
    """A10 in TECPRIME, directly from R10, R3, A7, A8 and A9."""
    _basis(t, Basis.TECPRIME)
    g = group(g)
    x = Imp(phi, E(g, phi))
    a = C(g, x)
    rho = conj(a, phi)
    a8 = ax_tec(t, "A8", g, x)
    a7 = ax_tec(t, "A7", g, x)
    rho_e_a = glue(t, [a8], Imp(rho, E(g, a)))
    rho_x_phi = glue(t, [a7], Imp(rho, conj(x, phi)))
    mp_inside = ax_taut(t, Imp(conj(x, phi), E(g, phi)))
    rho_e_phi = chain(rho_x_phi, mp_inside)
    dist = e_conj(t, g, a, phi)
    rho_e_rho = glue(t, [rho_e_a, rho_e_phi, dist], Imp(rho, E(g, rho)))
    rho_c_rho = rule_R10(g, rho, rule_R3(g, rho_e_rho))
    proj = ax_taut(t, Imp(rho, phi))
    a9 = ax_tec(t, "A9", g, rho, phi)
    c_rho_c_phi = glue(t, [rule_R3(g, proj), a9], Imp(C(g, rho), C(g, phi)))
    rho_c_phi = chain(rho_c_rho, c_rho_c_phi)
    return glue(t, [rho_c_phi], Imp(a, Imp(phi, C(g, phi))))


# -- internal forms of the CK rules -------------------------------------------

def internal_mp(t: Theory, g, phi: Formula, psi: Formula) -> Theorem:
    """|- C_g((phi => psi) & phi) => C_g psi, via c_conj and k_C."""
    _basis(t, Basis.CK)
    g = group(g)
    split, _ = c_conj(t, g, Imp(phi, psi), phi)
    kc = k_C(t, g, phi, psi)
    return glue(t, [split, kc], Imp(C(g, conj(Imp(phi, psi), phi)), C(g, psi)))


def internal_kg(t: Theory, g, i: int, phi: Formula) -> Theorem:
    """|- C_g phi => C_g K_i phi, for i in g."""
    _basis(t, Basis.CK)
    g = group(g)
    if i not in g:
        raise AgentNotInGroup(f"internal KG needs agent {i} in group {list(g)}")
    c = C(g, phi)
    ec = e_from_c(t, g, phi)
    k_c = chain(ec, e_to_k(t, g, i, c))
    k_phi = chain(k_c, k_multi(i, t_C(t, g, phi)))
    return lfb2(g, K(i, phi), k_phi, ec)


def internal_lfb(t: Theory, g, rho: Formula, phi: Formula, inner=None) -> Theorem:
    """|- C_g(rho => phi & E_h rho) => C_g(rho => C_h phi), h = ``inner`` (default g).

    ``inner`` must be a subgroup of ``g``.
    """
    _basis(t, Basis.CK)
    g = group(g)
    h = g if inner is None else group(inner)
    x = Imp(rho, conj(phi, E(h, rho)))
    cx = C(g, x)
    sigma = conj(cx, rho)
    tx = t_C(t, g, x)
    to_phi = glue(t, [tx], Imp(sigma, phi))
    to_e_rho = glue(t, [tx], Imp(sigma, E(h, rho)))
    to_e_cx = chain(glue(t, [e_from_c(t, g, x)], Imp(sigma, E(g, cx))), e_sub(t, g, h, cx))
    dist = e_conj(t, h, cx, rho)
    to_e_sigma = glue(t, [to_e_cx, to_e_rho, dist], Imp(sigma, E(h, sigma)))
    sigma_c = lfb2(h, phi, to_phi, to_e_sigma)
    curried = glue(t, [sigma_c], Imp(cx, Imp(rho, C(h, phi))))
    return strengthen(t, g, x, Imp(rho, C(h, phi)), curried)
