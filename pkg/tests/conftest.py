import pytest
from hypothesis import strategies as st

from ckl.formula import FALSE, Atom, C, E, Imp, K, conj, disj, iff, neg
from ckl.kernel import Basis, Theory

AGENTS = (0, 1, 2)

atoms = st.builds(
    Atom,
    st.sampled_from(["p", "q", "r", "white", "muddy"]),
    st.lists(st.sampled_from(AGENTS), max_size=2).map(tuple),
)
groups = st.lists(st.sampled_from(AGENTS), max_size=3).map(lambda xs: tuple(sorted(set(xs))))


def _extend(children):
    return st.one_of(
        st.builds(Imp, children, children),
        st.builds(neg, children),
        st.builds(conj, children, children),
        st.builds(disj, children, children),
        st.builds(iff, children, children),
        st.builds(K, st.sampled_from(AGENTS), children),
        st.builds(E, groups, children),
        st.builds(C, groups, children),
    )


formulas = st.recursive(st.one_of(atoms, st.just(FALSE)), _extend, max_leaves=12)


@pytest.fixture
def ck():
    return Theory("t", AGENTS, Basis.CK)


@pytest.fixture
def tec():
    return Theory("t-tec", AGENTS, Basis.TEC)


@pytest.fixture
def tecprime():
    return Theory("t-tecprime", AGENTS, Basis.TECPRIME)


ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(n, ok, detail)``."""
    table = request.config.stash.setdefault(ACCEPTANCE, {})

    def record(n, ok, detail=""):
        table[n] = (ok, detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    table = config.stash.get(ACCEPTANCE, {})
    if not table:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(table):
        ok, detail = table[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
