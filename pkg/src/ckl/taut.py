"""Classical tautology check behind the Taut axiom scheme.

Maximal subformulas headed by an atom or a modality are treated as opaque
propositional variables; only ``Bot``/``Imp`` structure is interpreted. The
verdict comes from a complete truth table evaluated bit-parallel: each
variable is an integer whose bit ``j`` is its value in row ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict

from .errors import TooLarge
from .formula import Atom, Bot, Formula, Imp, substitute

MAX_VARS = 24


@dataclass(frozen=True)
class Abstraction:
    skeleton: Formula
    mapping: Dict[Atom, Formula]

    @property
    def variables(self):
        return list(self.mapping)

    def concretize(self) -> Formula:
        return substitute(self.skeleton, self.mapping)


def _var(k: int) -> Atom:
    return Atom(f"_v{k}")


def abstract_modal(f: Formula) -> Abstraction:
    """Replace each maximal non-propositional subformula by a fresh variable.

    Variables are numbered by first left-to-right occurrence; syntactically
    equal subformulas share a variable.
    """
    index: Dict[Formula, Atom] = {}

    def walk(g):
        if isinstance(g, Bot):
            return g
        if isinstance(g, Imp):
            return Imp(walk(g.left), walk(g.right))
        v = index.get(g)
        if v is None:
            v = index[g] = _var(len(index))
        return v

    skeleton = walk(f)
    return Abstraction(skeleton, {v: g for g, v in index.items()})


def _column(k: int, n: int) -> int:
    half = 1 << k
    width = half << 1
    x = ((1 << half) - 1) << half
    total = 1 << n
    while width < total:
        x |= x << width
        width <<= 1
    return x


def _table(f: Formula, order: Dict[Formula, int], n: int) -> int:
    full = (1 << (1 << n)) - 1
    cols = {}
    memo = {}

    def ev(g):
        r = memo.get(g)
        if r is not None:
            return r
        if isinstance(g, Bot):
            r = 0
        elif isinstance(g, Imp):
            r = (~ev(g.left) & full) | ev(g.right)
        else:
            k = order[g]
            r = cols.get(k)
            if r is None:
                r = cols[k] = _column(k, n)
        memo[g] = r
        return r

    return ev(f)


def _opaque_order(f: Formula) -> Dict[Formula, int]:
    order: Dict[Formula, int] = {}
    stack = [f]
    seen = set()
    while stack:
        g = stack.pop()
        if isinstance(g, Bot):
            continue
        if isinstance(g, Imp):
            if g in seen:
                continue
            seen.add(g)
            stack.append(g.right)
            stack.append(g.left)
        elif g not in order:
            order[g] = len(order)
    return order


@lru_cache(maxsize=1 << 16)
def is_tautology(f: Formula) -> bool:
    """True iff ``f`` is a classical tautology over its modal abstraction.

    Raises TooLarge beyond ``MAX_VARS`` abstract variables rather than guess.
    """
    order = _opaque_order(f)
    n = len(order)
    if n > MAX_VARS:
        raise TooLarge(f"tautology check over {n} abstract variables exceeds cap {MAX_VARS}")
    full = (1 << (1 << n)) - 1
    return _table(f, order, n) == full


def countervaluation(f: Formula):
    """A falsifying assignment {subformula: bool}, or None for tautologies."""
    order = _opaque_order(f)
    n = len(order)
    if n > MAX_VARS:
        raise TooLarge(f"tautology check over {n} abstract variables exceeds cap {MAX_VARS}")
    full = (1 << (1 << n)) - 1
    table = _table(f, order, n)
    if table == full:
        return None
    missing = ~table & full
    row = (missing & -missing).bit_length() - 1
    return {g: bool((row >> k) & 1) for g, k in order.items()}
