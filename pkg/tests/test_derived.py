import pytest
from hypothesis import given, settings

from ckl import derived as d
from ckl.errors import BasisViolation, ShapeMismatch
from ckl.formula import C, E, Imp, K, atom, conj
from ckl.kernel import RULES, Basis, Theory, ax_E_def, ax_taut, check_proof, rule_LFB, rule_tags

from conftest import formulas, groups

p, q = atom("p"), atom("q")
GROUPS = [(), (0,), (0, 1)]


@pytest.mark.parametrize("g", GROUPS)
def test_t_C(ck, g):
    assert d.t_C(ck, g, p).conclusion == Imp(C(g, p), p)


@pytest.mark.parametrize("g", GROUPS)
def test_e_from_c(ck, g):
    assert d.e_from_c(ck, g, p).conclusion == Imp(C(g, p), E(g, C(g, p)))


@pytest.mark.parametrize("g", GROUPS)
def test_k_C(ck, g):
    assert d.k_C(ck, g, p, q).conclusion == Imp(conj(C(g, p), C(g, Imp(p, q))), C(g, q))


@pytest.mark.parametrize("g", GROUPS)
def test_kg_C(ck, g):
    th = d.kg_C(ck, g, ax_taut(ck, Imp(p, p)))
    assert th.conclusion == C(g, Imp(p, p))


@pytest.mark.parametrize("g", GROUPS)
def test_four_C(ck, g):
    th = d.four_C(ck, g, p)
    assert th.conclusion == Imp(C(g, p), C(g, C(g, p)))
    assert rule_tags(th.proof) <= RULES[Basis.CK]


@pytest.mark.parametrize("g", GROUPS)
def test_a10_in_ck(ck, g):
    th = d.a10_in_ck(ck, g, p)
    assert th.conclusion == Imp(C(g, Imp(p, E(g, p))), Imp(p, C(g, p)))
    assert check_proof(ck, th.proof).conclusion == th.conclusion


def test_c_conj(ck):
    g = (0, 1)
    split, join = d.c_conj(ck, g, p, q)
    assert split.conclusion == Imp(C(g, conj(p, q)), conj(C(g, p), C(g, q)))
    assert join.conclusion == Imp(conj(C(g, p), C(g, q)), C(g, conj(p, q)))


def test_internal_rules(ck):
    g = (0, 1)
    assert d.internal_mp(ck, g, p, q).conclusion == Imp(C(g, conj(Imp(p, q), p)), C(g, q))
    assert d.internal_kg(ck, g, 1, p).conclusion == Imp(C(g, p), C(g, K(1, p)))
    rho = q
    assert d.internal_lfb(ck, g, rho, p).conclusion == Imp(
        C(g, Imp(rho, conj(p, E(g, rho)))), C(g, Imp(rho, C(g, p)))
    )


def test_internal_kg_needs_member(ck):
    from ckl.errors import AgentNotInGroup

    with pytest.raises(AgentNotInGroup):
        d.internal_kg(ck, (0,), 1, p)


def test_weaken_strengthen(ck):
    g = (0,)
    full = d.four_C(ck, g, p)  # C p => C C p, read as C phi => C psi with psi = C p
    weak = d.weaken(ck, g, p, C(g, p), full)
    assert weak.conclusion == Imp(C(g, p), C(g, p))
    assert d.strengthen(ck, g, p, C(g, p), weak).conclusion == full.conclusion


def test_glue_rejects_non_consequence(ck):
    from ckl.errors import NotATautology

    with pytest.raises(NotATautology):
        d.glue(ck, [ax_taut(ck, Imp(p, p))], q)


def test_chain_shape(ck):
    with pytest.raises(ShapeMismatch):
        d.chain(ax_taut(ck, Imp(p, p)), ax_taut(ck, Imp(q, q)))


def test_tec_directions(tec, tecprime):
    g = (0, 1)
    fb = d.fb_in_tec(tec, g, p)
    assert fb.conclusion == Imp(C(g, p), conj(p, E(g, C(g, p))))
    lfb = d.lfb_in_tec(tec, g, p, fb)
    assert lfb.conclusion == Imp(C(g, p), C(g, p))
    assert d.a10_from_r10(tecprime, g, p).conclusion == Imp(C(g, Imp(p, E(g, p))), Imp(p, C(g, p)))
    assert d.fb_in_tec(tecprime, g, p).conclusion == fb.conclusion


def test_tec_only_helpers_gated(ck, tec):
    with pytest.raises(BasisViolation):
        d.fb_in_tec(ck, (0,), p)
    with pytest.raises(BasisViolation):
        d.a10_from_r10(tec, (0,), p)
    with pytest.raises(BasisViolation):
        d.a10_in_ck(tec, (0,), p)


def test_k_multi_and_e_multi(ck):
    th = ax_taut(ck, Imp(p, Imp(q, conj(p, q))))
    assert d.k_multi(0, th, 2).conclusion == Imp(K(0, p), Imp(K(0, q), K(0, conj(p, q))))
    assert d.e_multi((0, 1), th, 2).conclusion == Imp(E((0, 1), p), Imp(E((0, 1), q), E((0, 1), conj(p, q))))


def test_e_sub_and_e_to_k(ck):
    assert d.e_sub(ck, (0, 1, 2), (0, 2), p).conclusion == Imp(E((0, 1, 2), p), E((0, 2), p))
    assert d.e_to_k(ck, (0, 1), 1, p).conclusion == Imp(E((0, 1), p), K(1, p))


@settings(max_examples=25, deadline=None)
@given(groups, formulas)
def test_derived_schemes_any_instance(g, phi):
    t = Theory("h", (0, 1, 2))
    assert d.t_C(t, g, phi).conclusion == Imp(C(g, phi), phi)
    assert d.four_C(t, g, phi).conclusion == Imp(C(g, phi), C(g, C(g, phi)))
    assert d.a10_in_ck(t, g, phi).conclusion == Imp(C(g, Imp(phi, E(g, phi))), Imp(phi, C(g, phi)))


def test_empty_group_is_identity(ck):
    # C_() phi and phi are interderivable
    premise = d.glue(ck, [ax_E_def(ck, (), p)], Imp(p, conj(p, E((), p))))
    assert rule_LFB((), p, premise).conclusion == Imp(p, C((), p))
    assert d.t_C(ck, (), p).conclusion == Imp(C((), p), p)
