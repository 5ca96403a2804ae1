"""Brute-force semantics over small reflexive Kripke models.

This is a test oracle, independent of the kernel: it can refute a formula
with a concrete countermodel, or report that it holds on every reflexive
model within the given bounds (a necessary condition for theoremhood, not a
sufficient one).

``evaluate`` is a plain recursive evaluator on one model. The enumerator
``valid_on_small_models`` evaluates a formula on all models of a given size
at once with numpy, one boolean array of shape (models, worlds) per
subformula.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Sequence, Tuple

import numpy as np

from .errors import CKLError, TooLarge, UnknownAgent
from .formula import (
    Atom,
    Bot,
    C,
    E,
    Formula,
    Imp,
    K,
    atoms_of,
    modal_agents,
    rename_agents,
    substitute,
)

MAX_WORLDS = 3
MAX_AGENTS = 2
MAX_ATOMS = 2


class BoundOverflow(TooLarge):
    code = "bound_overflow"


@dataclass(frozen=True)
class KripkeModel:
    """Worlds ``0..worlds-1``; ``relations[a]`` is a set of (w, v) pairs."""

    worlds: int
    relations: Dict[int, FrozenSet[Tuple[int, int]]]
    valuation: Dict[Atom, FrozenSet[int]]

    def __post_init__(self):
        for a, rel in self.relations.items():
            for w in range(self.worlds):
                if (w, w) not in rel:
                    raise ValueError(f"relation of agent {a} is not reflexive at world {w}")

    def successors(self, agent: int, w: int):
        return [v for (u, v) in self.relations[agent] if u == w]

    def describe(self) -> str:
        lines = [f"worlds: {list(range(self.worlds))}"]
        for a in sorted(self.relations):
            pairs = sorted(p for p in self.relations[a] if p[0] != p[1])
            lines.append(f"R{a} (besides reflexive loops): {pairs}")
        for at in sorted(self.valuation, key=str):
            lines.append(f"{at}: true at {sorted(self.valuation[at])}")
        return "\n".join(lines)


def _reachable(m: KripkeModel, g, w: int) -> set:
    """Worlds reachable from w by zero or more steps of members of g."""
    seen = {w}
    frontier = [w]
    while frontier:
        u = frontier.pop()
        for a in g:
            for v in m.successors(a, u):
                if v not in seen:
                    seen.add(v)
                    frontier.append(v)
    return seen


def evaluate(m: KripkeModel, w: int, f: Formula) -> bool:
    """Truth of ``f`` at world ``w`` of ``m``."""
    if isinstance(f, Bot):
        return False
    if isinstance(f, Atom):
        if f not in m.valuation:
            raise CKLError(f"atom {f} has no valuation in this model")
        return w in m.valuation[f]
    if isinstance(f, Imp):
        return (not evaluate(m, w, f.left)) or evaluate(m, w, f.right)
    if isinstance(f, K):
        if f.agent not in m.relations:
            raise UnknownAgent(f"agent {f.agent} has no relation in this model")
        return all(evaluate(m, v, f.body) for v in m.successors(f.agent, w))
    if isinstance(f, E):
        return all(evaluate(m, w, K(a, f.body)) for a in f.group)
    if isinstance(f, C):
        for a in f.group:
            if a not in m.relations:
                raise UnknownAgent(f"agent {a} has no relation in this model")
        return all(evaluate(m, v, f.body) for v in _reachable(m, f.group, w))
    raise TypeError(f"not a formula: {f!r}")


# -- vectorised enumeration ---------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    valid: bool
    model: Optional[KripkeModel] = None
    world: Optional[int] = None

    def __bool__(self):
        return self.valid


class _Space:
    """All reflexive models with ``n`` worlds over the given agents and atoms."""

    def __init__(self, n: int, agents: Sequence[int], atoms: Sequence[Atom]):
        self.n, self.agents, self.atoms = n, list(agents), list(atoms)
        offdiag = [(u, v) for u in range(n) for v in range(n) if u != v]
        self.offdiag = offdiag
        n_rel = 1 << len(offdiag)
        rels = np.zeros((n_rel, n, n), dtype=bool)
        rels[:, range(n), range(n)] = True
        for code in range(n_rel):
            for k, (u, v) in enumerate(offdiag):
                if (code >> k) & 1:
                    rels[code, u, v] = True
        n_val = 1 << (n * len(self.atoms))
        shape = [n_rel] * len(self.agents) + [n_val]
        self.count = int(np.prod(shape))
        grids = np.indices(shape).reshape(len(shape), -1)
        self.rel_codes = grids[:-1]
        self.val_codes = grids[-1]
        self.rel = {a: rels[self.rel_codes[k]] for k, a in enumerate(self.agents)}
        self.val = {}
        for k, at in enumerate(self.atoms):
            bits = np.stack(
                [(self.val_codes >> (k * n + w)) & 1 for w in range(n)], axis=1
            ).astype(bool)
            self.val[at] = bits
        self._closure = {}

    def closure(self, g) -> np.ndarray:
        g = tuple(g)
        hit = self._closure.get(g)
        if hit is not None:
            return hit
        reach = np.broadcast_to(np.eye(self.n, dtype=bool), (self.count, self.n, self.n)).copy()
        for a in g:
            reach |= self.rel[a]
        for _ in range(max(1, self.n.bit_length())):
            reach = reach | (np.matmul(reach.astype(np.uint8), reach.astype(np.uint8)) > 0)
        self._closure[g] = reach
        return reach

    def box(self, rel: np.ndarray, inner: np.ndarray) -> np.ndarray:
        return np.all(~rel | inner[:, None, :], axis=2)

    def eval(self, f: Formula, memo: dict) -> np.ndarray:
        hit = memo.get(f)
        if hit is not None:
            return hit
        if isinstance(f, Bot):
            r = np.zeros((self.count, self.n), dtype=bool)
        elif isinstance(f, Atom):
            r = self.val[f]
        elif isinstance(f, Imp):
            r = ~self.eval(f.left, memo) | self.eval(f.right, memo)
        elif isinstance(f, K):
            r = self.box(self.rel[f.agent], self.eval(f.body, memo))
        elif isinstance(f, E):
            body = self.eval(f.body, memo)
            r = np.ones((self.count, self.n), dtype=bool)
            for a in f.group:
                r &= self.box(self.rel[a], body)
        elif isinstance(f, C):
            r = self.box(self.closure(f.group), self.eval(f.body, memo))
        else:
            raise TypeError(f"not a formula: {f!r}")
        memo[f] = r
        return r

    def model(self, index: int) -> KripkeModel:
        relations = {}
        for k, a in enumerate(self.agents):
            code = int(self.rel_codes[k][index])
            pairs = {(w, w) for w in range(self.n)}
            pairs |= {p for j, p in enumerate(self.offdiag) if (code >> j) & 1}
            relations[a] = frozenset(pairs)
        vcode = int(self.val_codes[index])
        valuation = {
            at: frozenset(w for w in range(self.n) if (vcode >> (k * self.n + w)) & 1)
            for k, at in enumerate(self.atoms)
        }
        return KripkeModel(self.n, relations, valuation)


def valid_on_small_models(
    f: Formula,
    max_worlds: int = MAX_WORLDS,
    agents: int = MAX_AGENTS,
    atoms: int = MAX_ATOMS,
    assumptions: Sequence[Formula] = (),
) -> Verdict:
    """Check ``f`` on every reflexive model within the bounds.

    Agents of ``f`` must be ids below ``agents`` and it may mention at most
    ``atoms`` distinct atoms. ``assumptions`` restrict attention to models
    where each of them holds at every world (global consequence). Models
    are enumerated by world count, then in a fixed code order, so the
    returned countermodel is deterministic.
    """
    if max_worlds > MAX_WORLDS or agents > MAX_AGENTS or atoms > MAX_ATOMS:
        raise BoundOverflow(
            f"bounds ({max_worlds} worlds, {agents} agents, {atoms} atoms) exceed caps "
            f"({MAX_WORLDS}, {MAX_AGENTS}, {MAX_ATOMS})"
        )
    everything = [f, *assumptions]
    used_agents = sorted(set().union(*(modal_agents(x) for x in everything)))
    if any(a >= agents for a in used_agents):
        raise BoundOverflow(f"formula uses agents {used_agents}, bound allows ids below {agents}")
    used_atoms = []
    for x in everything:
        for at in atoms_of(x):
            if at not in used_atoms:
                used_atoms.append(at)
    if len(used_atoms) > atoms:
        raise BoundOverflow(f"formula uses {len(used_atoms)} atoms, bound is {atoms}")
    for n in range(1, max_worlds + 1):
        space = _Space(n, used_agents, used_atoms)
        memo = {}
        ok_models = np.ones(space.count, dtype=bool)
        for a in assumptions:
            ok_models &= space.eval(a, memo).all(axis=1)
        truth = space.eval(f, memo)
        bad = ok_models[:, None] & ~truth
        if bad.any():
            m, w = np.argwhere(bad)[0]
            return Verdict(False, space.model(int(m)), int(w))
    return Verdict(True)


def project(f: Formula, agents: int = MAX_AGENTS, atoms: int = MAX_ATOMS,
            assumptions: Sequence[Formula] = ()):
    """Fold the vocabulary of ``f`` (and assumptions) into the oracle bounds.

    The k-th distinct agent becomes ``k mod agents`` and the k-th distinct
    atom becomes ``p{k mod atoms}``. This is a uniform substitution, so a
    theorem (or global consequence) stays one after projection; checking
    the projected formula is a necessary condition only.
    """
    everything = [f, *assumptions]
    agent_list = sorted(set().union(*(modal_agents(x) for x in everything)))
    amap = {a: k % agents for k, a in enumerate(agent_list)}
    atom_list = []
    for x in everything:
        for at in atoms_of(x):
            if at not in atom_list:
                atom_list.append(at)
    smap = {at: Atom(f"p{k % atoms}") for k, at in enumerate(atom_list)}

    def fold(x):
        # atoms go first so their arguments never meet the agent map
        return rename_agents(substitute(x, smap), lambda a: amap.get(a, a))

    return fold(f), [fold(a) for a in assumptions]


def theorem_is_sound(th, max_worlds: int = MAX_WORLDS) -> Verdict:
    """Necessary semantic check for a kernel theorem.

    The theorem's proper axioms are assumed globally; vocabulary beyond the
    oracle bounds is folded with :func:`project`.
    """
    axioms = list(th.theory.proper_axioms.values())
    f, assumptions = project(th.conclusion, assumptions=axioms)
    return valid_on_small_models(f, max_worlds, assumptions=assumptions)


def all_reflexive_models(n: int, agents: Sequence[int], atoms: Sequence[Atom]):
    """Plain generator over every reflexive model (slow; used for cross-checks)."""
    offdiag = [(u, v) for u in range(n) for v in range(n) if u != v]
    rels = []
    for bits in itertools.product((0, 1), repeat=len(offdiag)):
        pairs = {(w, w) for w in range(n)} | {p for p, b in zip(offdiag, bits) if b}
        rels.append(frozenset(pairs))
    worlds_subsets = [frozenset(s) for r in range(n + 1) for s in itertools.combinations(range(n), r)]
    for rel_choice in itertools.product(rels, repeat=len(agents)):
        for val_choice in itertools.product(worlds_subsets, repeat=len(atoms)):
            yield KripkeModel(n, dict(zip(agents, rel_choice)), dict(zip(atoms, val_choice)))
