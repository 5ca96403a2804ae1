"""Proof generators for the three wise men and the muddy children.

Wise men: agents Alice (0), Bob (1) and Carol (2); atoms ``white i`` and
``red i``. Muddy children: children ``0..n-1``, atoms ``muddy i``, and the
counting formulas :func:`at_least` / :func:`exactly` built by subset
enumeration.
"""

from __future__ import annotations

import enum
import itertools
from typing import Dict

from . import derived as d
from .errors import TooLarge
from .formula import (
    C,
    E,
    Formula,
    Imp,
    K,
    atom,
    conj,
    disj,
    forall_agents,
    imps,
    neg,
)
from .kernel import Basis, Theorem, Theory, ax_E_def, ax_proper, ax_T, ax_taut, rule_MP, transport
from .meta import HypDerivation, externalize, internalize

ALICE, BOB, CAROL = 0, 1, 2
WISE = (ALICE, BOB, CAROL)
WISE_NAMES = {ALICE: "Alice", BOB: "Bob", CAROL: "Carol"}
MAX_CHILDREN = 4


def white(i: int) -> Formula:
    return atom("white", i)


def red(i: int) -> Formula:
    return atom("red", i)


def kh(i: int) -> Formula:
    """Agent i knows the colour of their own hat."""
    return disj(K(i, white(i)), K(i, red(i)))


ONE_HAT = forall_agents(WISE, lambda i: disj(white(i), red(i)))
TWO_WHITE_HATS = Imp(conj(white(BOB), white(CAROL)), red(ALICE))
K_ALICE_WHITE_BOB = Imp(white(BOB), K(ALICE, white(BOB)))
K_ALICE_WHITE_CAROL = Imp(white(CAROL), K(ALICE, white(CAROL)))
K_BOB_WHITE_CAROL = Imp(white(CAROL), K(BOB, white(CAROL)))

WISE_AXIOMS: Dict[str, Formula] = {
    "One_hat": ONE_HAT,
    "Two_white_hats": TWO_WHITE_HATS,
    "K_Alice_white_Bob": K_ALICE_WHITE_BOB,
    "K_Alice_white_Carol": K_ALICE_WHITE_CAROL,
    "K_Bob_white_Carol": K_BOB_WHITE_CAROL,
}

# Carol's premise in the first result: Bob knows Alice does not know, and Bob does not know.
CAROL_SEES = conj(K(BOB, neg(kh(ALICE))), neg(kh(BOB)))

# What Bob must know in the second result.
BOB_KNOWS = conj(
    ONE_HAT,
    K_BOB_WHITE_CAROL,
    K_ALICE_WHITE_BOB,
    K_ALICE_WHITE_CAROL,
    K(ALICE, TWO_WHITE_HATS),
    neg(kh(ALICE)),
)

# The hypothesis of the corollary, in the order of its display.
WISE_PHI = conj(TWO_WHITE_HATS, ONE_HAT, K_BOB_WHITE_CAROL, K_ALICE_WHITE_BOB, K_ALICE_WHITE_CAROL)
WISE_PSI = Imp(K(CAROL, CAROL_SEES), kh(CAROL))


def wisemen_theory() -> Theory:
    return Theory("wisemen", WISE, Basis.CK, WISE_AXIOMS, WISE_NAMES)


def wisemen_pure_theory() -> Theory:
    return Theory("wisemen-pure", WISE, Basis.CK, {}, WISE_NAMES)


def wisemen_first() -> Theorem:
    """|- K_Carol(K_Bob(~Kh Alice) & ~Kh Bob) => K_Carol(red Carol), five proper axioms."""
    t = wisemen_theory()
    ax = {name: ax_proper(t, name) for name in WISE_AXIOMS}
    curried = d.glue(t, [ax["Two_white_hats"]], imps(white(BOB), white(CAROL), red(ALICE)))
    alice = d.k_multi(ALICE, curried, 2)
    # Bob's reasoning: if Carol is white and Alice does not know, Bob is red.
    bob_inner = d.glue(
        t,
        [ax["One_hat"], ax["K_Alice_white_Bob"], ax["K_Alice_white_Carol"], alice],
        imps(white(CAROL), neg(kh(ALICE)), red(BOB)),
    )
    bob = d.k_multi(BOB, bob_inner, 2)
    carol_inner = d.glue(
        t, [ax["One_hat"], ax["K_Bob_white_Carol"], bob], Imp(CAROL_SEES, red(CAROL))
    )
    return d.k_multi(CAROL, carol_inner, 1)


def wisemen_second() -> Theorem:
    """All hypotheses inside K_Carol / K_Bob; no proper axioms."""
    t = wisemen_pure_theory()
    alice = d.k_multi(ALICE, ax_taut(t, imps(TWO_WHITE_HATS, white(BOB), white(CAROL), red(ALICE))), 3)
    bob_inner = d.glue(t, [alice], imps(BOB_KNOWS, white(CAROL), red(BOB)))
    bob = d.k_multi(BOB, bob_inner, 2)
    seen = conj(K(BOB, BOB_KNOWS), neg(kh(BOB)))
    carol_inner = d.glue(t, [ax_T(t, BOB, BOB_KNOWS), bob], Imp(seen, red(CAROL)))
    carol = d.k_multi(CAROL, carol_inner, 1)
    return d.glue(t, [carol], Imp(K(CAROL, seen), kh(CAROL)))


def wisemen_first_derivation() -> HypDerivation:
    return HypDerivation(wisemen_theory(), tuple(WISE_AXIOMS), wisemen_first().proof)


def wisemen_corollary() -> Theorem:
    """|- C_{Alice,Bob,Carol}(phi) => psi, by internalizing the first result."""
    der = wisemen_first_derivation()
    inner = internalize(der, WISE)
    t = inner.theory
    reorder = d.c_mono(t, WISE, ax_taut(t, Imp(WISE_PHI, der.phi)))
    first = d.chain(reorder, inner)
    return d.glue(t, [first], Imp(C(WISE, WISE_PHI), WISE_PSI))


def wisemen_phi_theorem() -> Theorem:
    """|- phi in the theory that has the five propositions as axioms."""
    t = wisemen_theory()
    return d.glue(t, [ax_proper(t, n) for n in WISE_AXIOMS], WISE_PHI)


def wisemen_externalized(corollary: Theorem = None) -> Theorem:
    """Back from the corollary to |- psi using |- phi."""
    corollary = corollary or wisemen_corollary()
    t = wisemen_theory()
    return externalize(wisemen_phi_theorem(), transport(corollary, t))


# -- muddy children -----------------------------------------------------------

class Variant(enum.Enum):
    AXIOM = "axiom"
    INTERNAL = "internal"


def muddy(i: int) -> Formula:
    return atom("muddy", i)


def at_least(n: int, p: int) -> Formula:
    """At least ``p`` of children ``0..n-1`` are muddy: disjunction over p-subsets."""
    if p < 0 or p > n + 1:
        raise ValueError(f"at_least needs 0 <= p <= n+1, got n={n}, p={p}")
    return disj(*(conj(*map(muddy, s)) for s in itertools.combinations(range(n), p)))


def exactly(n: int, p: int) -> Formula:
    if p < 0 or p > n:
        raise ValueError(f"exactly needs 0 <= p <= n, got n={n}, p={p}")
    return conj(at_least(n, p), neg(at_least(n, p + 1)))


def children(n: int) -> tuple:
    return tuple(range(n))


def knowledge_diffusion(n: int, p: int) -> Formula:
    """Instance for round p, one conjunct per child i."""
    g = children(n)
    not_exactly = E(g, neg(exactly(n, p)))
    return forall_agents(g, lambda i: imps(E(g, at_least(n, p)), not_exactly, K(i, not_exactly)))


def kd_name(p: int) -> str:
    return f"Knowledge_Diffusion_{p}"


def progress_statement(n: int, p: int) -> Formula:
    g = children(n)
    return Imp(conj(C(g, at_least(n, p)), E(g, neg(exactly(n, p)))), C(g, at_least(n, p + 1)))


def _check_size(n: int, cap: int):
    if n > cap:
        raise TooLarge(f"{n} children exceeds the configured cap of {cap}")


def muddy_axiom_theory(n: int, p: int) -> Theory:
    return Theory(f"muddy{n}-kd{p}", children(n), Basis.CK, {kd_name(p): knowledge_diffusion(n, p)})


def _progress_proof(t: Theory, n: int, p: int) -> Theorem:
    """Progress for ``n`` children in a theory holding the round-p diffusion axiom."""
    g = children(n)
    a, b = at_least(n, p), at_least(n, p + 1)
    x = neg(exactly(n, p))
    ca, ex = C(g, a), E(g, x)
    rho = conj(ca, ex)
    ca_a = d.t_C(t, g, a)
    ex_x = d.chain(d.e_to_k(t, g, g[0], x), ax_T(t, g[0], x))
    to_b = d.glue(t, [ca_a, ex_x], Imp(rho, b))
    ec = d.e_from_c(t, g, a)
    ea = d.chain(ec, d.e_multi(g, ca_a))
    kd = ax_proper(t, kd_name(p))
    diffusion = [d.glue(t, [kd], imps(E(g, a), ex, K(i, ex))) for i in g]
    e_ex = d.glue(t, [ea, *diffusion, ax_E_def(t, g, ex)], Imp(rho, E(g, ex)))
    dist = d.e_conj(t, g, ca, ex)
    to_e = d.glue(t, [ec, e_ex, dist], Imp(rho, E(g, rho)))
    return d.lfb2(g, b, to_b, to_e)


def progress(n: int, p: int, variant: Variant = Variant.AXIOM, cap: int = MAX_CHILDREN) -> Theorem:
    """Progress for ``n + 1`` children at round ``p`` (1 <= p <= n)."""
    variant = Variant(variant)
    if not 1 <= p <= n:
        raise ValueError(f"progress needs 1 <= p <= n, got n={n}, p={p}")
    kids = n + 1
    _check_size(kids, cap)
    t = muddy_axiom_theory(kids, p)
    th = _progress_proof(t, kids, p)
    if variant is Variant.AXIOM:
        return th
    return internalize(HypDerivation(t, (kd_name(p),), th.proof), children(kids))


def progress_externalized(n: int, p: int, cap: int = MAX_CHILDREN) -> Theorem:
    """INTERNAL form moved back into the axiom theory and discharged with |- KD."""
    kids = n + 1
    t = muddy_axiom_theory(kids, p)
    internal = transport(progress(n, p, Variant.INTERNAL, cap), t)
    return externalize(ax_proper(t, kd_name(p)), internal)


def muddy_final_theory(n: int, variant: Variant = Variant.AXIOM) -> Theory:
    variant = Variant(variant)
    g = children(n)
    axioms = {"First_Father_Statement": C(g, at_least(n, 1))}
    for p in range(1, n):
        axioms[f"NoStep_{p}"] = E(g, neg(exactly(n, p)))
        if variant is Variant.AXIOM:
            axioms[kd_name(p)] = knowledge_diffusion(n, p)
        else:
            axioms[f"Common_{kd_name(p)}"] = C(g, knowledge_diffusion(n, p))
    return Theory(f"muddy{n}-final-{variant.value}", g, Basis.CK, axioms)


def muddy_final(n: int, variant: Variant = Variant.AXIOM, cap: int = MAX_CHILDREN) -> Theorem:
    """|- C_[:n:](At_least n n) after n-1 progress rounds."""
    variant = Variant(variant)
    if n < 1:
        raise ValueError("need at least one child")
    _check_size(n, cap)
    t = muddy_final_theory(n, variant)
    g = children(n)
    cur = ax_proper(t, "First_Father_Statement")
    for p in range(1, n):
        if variant is Variant.AXIOM:
            step = _progress_proof(t, n, p)
        else:
            internal = transport(progress(n - 1, p, Variant.INTERNAL, cap), t)
            step = rule_MP(ax_proper(t, f"Common_{kd_name(p)}"), internal)
        premise = d.glue(t, [cur, ax_proper(t, f"NoStep_{p}")], step.conclusion.left)
        cur = rule_MP(premise, step)
    assert cur.conclusion == C(g, at_least(n, n))
    return cur
