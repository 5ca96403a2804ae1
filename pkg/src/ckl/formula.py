"""Object-language syntax for epistemic logic with common knowledge.

The only propositional primitives are ``Bot`` and ``Imp``; every other
connective is built from them at construction time, so two formulas are
equal exactly when their desugared trees are equal. ``E`` and ``C`` are
primitive modalities indexed by a :data:`Group`.

Agents are small non-negative integers. A group is a sorted tuple of
distinct agent ids; build one with :func:`group`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Tuple

from .errors import ParseError, UnknownAgent
from .sexpr import Symbol, read_one

Agent = int
Group = Tuple[int, ...]


def group(*members: Iterable[int] | int) -> Group:
    """Canonical group: sorted, duplicates removed.

    Accepts either ``group(0, 1)`` or ``group([0, 1])``.
    """
    if len(members) == 1 and not isinstance(members[0], int):
        members = tuple(members[0])
    for m in members:
        if not isinstance(m, int) or isinstance(m, bool) or m < 0:
            raise UnknownAgent(f"invalid agent id {m!r}")
    return tuple(sorted(set(members)))


class Formula:
    __slots__ = ()

    def __str__(self):
        return print_formula(self)


def _frozen(cls):
    cls = dataclass(frozen=True, eq=True, repr=False)(cls)
    return cls


@_frozen
class Atom(Formula):
    name: str
    args: Tuple[int, ...] = ()
    _hash: int = field(init=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("atom", self.name, self.args)))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self.args:
            return f"Atom({self.name!r})"
        return f"Atom({self.name!r}, {self.args!r})"


@_frozen
class Bot(Formula):
    def __hash__(self):
        return 0x5EED

    def __repr__(self):
        return "FALSE"


@_frozen
class Imp(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("=>", self.left, self.right)))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Imp({self.left!r}, {self.right!r})"


@_frozen
class K(Formula):
    agent: int
    body: Formula
    _hash: int = field(init=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("K", self.agent, self.body)))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"K({self.agent}, {self.body!r})"


@_frozen
class E(Formula):
    group: Group
    body: Formula
    _hash: int = field(init=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "group", group(self.group))
        object.__setattr__(self, "_hash", hash(("E", self.group, self.body)))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"E({self.group!r}, {self.body!r})"


@_frozen
class C(Formula):
    group: Group
    body: Formula
    _hash: int = field(init=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "group", group(self.group))
        object.__setattr__(self, "_hash", hash(("C", self.group, self.body)))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"C({self.group!r}, {self.body!r})"


FALSE = Bot()


# -- derived connectives ------------------------------------------------------

def atom(name: str, *args: int) -> Atom:
    return Atom(name, tuple(args))


def neg(f: Formula) -> Formula:
    return Imp(f, FALSE)


TRUE = neg(FALSE)


def conj(*fs: Formula) -> Formula:
    """Right-nested conjunction; ``conj()`` is TRUE."""
    if not fs:
        return TRUE
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = neg(Imp(f, neg(out)))
    return out


def disj(*fs: Formula) -> Formula:
    """Right-nested disjunction; ``disj()`` is FALSE."""
    if not fs:
        return FALSE
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Imp(neg(f), out)
    return out


def iff(a: Formula, b: Formula) -> Formula:
    return conj(Imp(a, b), Imp(b, a))


def imps(*fs: Formula) -> Formula:
    """Right-associated chain ``f1 => f2 => ... => fn``."""
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Imp(f, out)
    return out


# -- destructors for sugared shapes -------------------------------------------

def match_neg(f: Formula) -> Optional[Formula]:
    if isinstance(f, Imp) and f.right == FALSE:
        return f.left
    return None


def match_conj(f: Formula) -> Optional[Tuple[Formula, Formula]]:
    inner = match_neg(f)
    if isinstance(inner, Imp):
        b = match_neg(inner.right)
        if b is not None:
            return inner.left, b
    return None


def match_disj(f: Formula) -> Optional[Tuple[Formula, Formula]]:
    if isinstance(f, Imp):
        a = match_neg(f.left)
        if a is not None:
            return a, f.right
    return None


def match_iff(f: Formula) -> Optional[Tuple[Formula, Formula]]:
    pair = match_conj(f)
    if pair is None:
        return None
    l, r = pair
    if isinstance(l, Imp) and isinstance(r, Imp) and l.left == r.right and l.right == r.left:
        return l.left, l.right
    return None


# -- operations ---------------------------------------------------------------

def expand_E(g: Iterable[int], f: Formula) -> Formula:
    """Right-hand side of the shared-knowledge definition: conjunction of K_i f."""
    return conj(*(K(i, f) for i in group(g)))


def expand_all_E(f: Formula) -> Formula:
    """Replace every E node by its K-conjunction, recursively."""
    if isinstance(f, Imp):
        return Imp(expand_all_E(f.left), expand_all_E(f.right))
    if isinstance(f, K):
        return K(f.agent, expand_all_E(f.body))
    if isinstance(f, E):
        return expand_E(f.group, expand_all_E(f.body))
    if isinstance(f, C):
        return C(f.group, expand_all_E(f.body))
    return f


def forall_agents(domain: Iterable[int], template: Callable[[int], Formula]) -> Formula:
    """Finite-domain universal quantification: conjunction over agents in id order."""
    return conj(*(template(i) for i in sorted(set(domain))))


def agents_of(f: Formula) -> frozenset:
    out = set()
    stack = [f]
    seen = set()
    while stack:
        g = stack.pop()
        if g in seen:
            continue
        seen.add(g)
        if isinstance(g, Atom):
            out.update(g.args)
        elif isinstance(g, Imp):
            stack += (g.left, g.right)
        elif isinstance(g, K):
            out.add(g.agent)
            stack.append(g.body)
        elif isinstance(g, (E, C)):
            out.update(g.group)
            stack.append(g.body)
    return frozenset(out)


def modal_agents(f: Formula) -> frozenset:
    """Agents indexing K, E and C nodes (atom arguments excluded)."""
    out = set()
    stack = [f]
    seen = set()
    while stack:
        g = stack.pop()
        if g in seen:
            continue
        seen.add(g)
        if isinstance(g, Imp):
            stack += (g.left, g.right)
        elif isinstance(g, K):
            out.add(g.agent)
            stack.append(g.body)
        elif isinstance(g, (E, C)):
            out.update(g.group)
            stack.append(g.body)
    return frozenset(out)


def atoms_of(f: Formula) -> list:
    """Distinct atoms in order of first (left-to-right) occurrence."""
    out = {}

    def walk(g):
        if isinstance(g, Atom):
            out.setdefault(g, None)
        elif isinstance(g, Imp):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, (K, E, C)):
            walk(g.body)

    walk(f)
    return list(out)


def subformulas(f: Formula) -> set:
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in out:
            continue
        out.add(g)
        if isinstance(g, Imp):
            stack += (g.left, g.right)
        elif isinstance(g, (K, E, C)):
            stack.append(g.body)
    return out


def size(f: Formula) -> int:
    if isinstance(f, Imp):
        return 1 + size(f.left) + size(f.right)
    if isinstance(f, (K, E, C)):
        return 1 + size(f.body)
    return 1


def rename_agents(f: Formula, mapping: Callable[[int], int]) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.name, tuple(mapping(a) for a in f.args))
    if isinstance(f, Imp):
        return Imp(rename_agents(f.left, mapping), rename_agents(f.right, mapping))
    if isinstance(f, K):
        return K(mapping(f.agent), rename_agents(f.body, mapping))
    if isinstance(f, E):
        return E(group(mapping(a) for a in f.group), rename_agents(f.body, mapping))
    if isinstance(f, C):
        return C(group(mapping(a) for a in f.group), rename_agents(f.body, mapping))
    return f


def substitute(f: Formula, mapping: dict) -> Formula:
    """Replace whole subformulas according to ``mapping`` (outermost first)."""
    if f in mapping:
        return mapping[f]
    if isinstance(f, Imp):
        return Imp(substitute(f.left, mapping), substitute(f.right, mapping))
    if isinstance(f, K):
        return K(f.agent, substitute(f.body, mapping))
    if isinstance(f, E):
        return E(f.group, substitute(f.body, mapping))
    if isinstance(f, C):
        return C(f.group, substitute(f.body, mapping))
    return f


# -- printing -----------------------------------------------------------------

def _to_sexpr(f: Formula, sugar: bool, refs=None, top=True):
    if refs and not top and f in refs:
        return refs[f]
    if isinstance(f, Bot):
        return "false"
    if isinstance(f, Atom):
        return ["atom", f.name, *map(str, f.args)]

    def sub(x):
        return _to_sexpr(x, sugar, refs, False)

    if isinstance(f, K):
        return ["K", str(f.agent), sub(f.body)]
    if isinstance(f, (E, C)):
        head = "E" if isinstance(f, E) else "C"
        return [head, [str(a) for a in f.group], sub(f.body)]
    assert isinstance(f, Imp)
    if sugar:
        if f == TRUE:
            return "true"
        pair = match_iff(f)
        if pair is not None:
            return ["iff", sub(pair[0]), sub(pair[1])]
        pair = match_conj(f)
        if pair is not None:
            return _nary("and", pair, sub)
        inner = match_neg(f)
        if inner is not None:
            return ["not", sub(inner)]
        pair = match_disj(f)
        if pair is not None and match_conj(f.left) is None and f.left != TRUE:
            return _nary("or", pair, sub)
    return ["=>", sub(f.left), sub(f.right)]


def _nary(head, pair, sub):
    right = sub(pair[1])
    if isinstance(right, list) and right and right[0] == head:
        return [head, sub(pair[0]), *right[1:]]
    return [head, sub(pair[0]), right]


def _render(x) -> str:
    if isinstance(x, list):
        return "(" + " ".join(_render(e) for e in x) + ")"
    return x


def print_formula(f: Formula, sugar: bool = True, refs=None) -> str:
    """Deterministic s-expression text; ``parse_formula`` inverts it.

    ``refs`` maps proper subformulas to names written in their place (used
    by proof files to share large subformulas).
    """
    return _render(_to_sexpr(f, sugar, refs))


# -- parsing ------------------------------------------------------------------

_KEYWORDS = {"atom", "=>", "not", "and", "or", "iff", "K", "E", "C", "true", "false"}


def _agent_from_token(tok, theory, pos) -> int:
    if isinstance(tok, int):
        ident = tok
    elif isinstance(tok, str) and theory is not None and tok in theory.agent_ids:
        ident = theory.agent_ids[tok]
    else:
        raise UnknownAgent(f"unknown agent {tok!r} (offset {pos})")
    if theory is not None and ident not in theory.domain:
        raise UnknownAgent(f"agent {ident} not in domain of theory {theory.id!r} (offset {pos})")
    return ident


def formula_from_sexpr(x, theory=None, pos: int = 0, refs=None) -> Formula:
    """Build a Formula from an already-read s-expression.

    ``refs`` maps names to already-built formulas (the inverse of the
    ``refs`` argument of :func:`print_formula`).
    """
    if refs and isinstance(x, Symbol) and x in refs:
        return refs[x]
    if isinstance(x, Symbol):
        if x == "false":
            return FALSE
        if x == "true":
            return TRUE
        if x in _KEYWORDS:
            raise ParseError(f"unexpected keyword {x!r}", pos)
        return Atom(str(x))
    if isinstance(x, str) and not isinstance(x, Symbol):
        return parse_formula(x, theory)
    if not isinstance(x, list):
        raise ParseError(f"expected formula, found {x!r}", pos)
    pos = getattr(x, "pos", pos)
    if not x:
        raise ParseError("empty list is not a formula", pos)
    head, args = x[0], x[1:]

    def sub(e):
        return formula_from_sexpr(e, theory, pos, refs)

    def arity(n, exact=True):
        if (len(args) != n) if exact else (len(args) < n):
            q = "" if exact else "at least "
            raise ParseError(f"{head!r} expects {q}{n} argument(s), got {len(args)}", pos)

    if head == "atom":
        arity(1, exact=False)
        if not isinstance(args[0], Symbol):
            raise ParseError("atom name must be a symbol", pos)
        return Atom(str(args[0]), tuple(_atom_arg(a, theory, pos) for a in args[1:]))
    if head == "=>":
        arity(2)
        return Imp(sub(args[0]), sub(args[1]))
    if head == "not":
        arity(1)
        return neg(sub(args[0]))
    if head == "and":
        arity(2, exact=False)
        return conj(*map(sub, args))
    if head == "or":
        arity(2, exact=False)
        return disj(*map(sub, args))
    if head == "iff":
        arity(2)
        return iff(sub(args[0]), sub(args[1]))
    if head == "K":
        arity(2)
        return K(_agent_from_token(args[0], theory, pos), sub(args[1]))
    if head in ("E", "C"):
        arity(2)
        g = group_from_sexpr(args[0], theory, pos)
        return (E if head == "E" else C)(g, sub(args[1]))
    if isinstance(head, Symbol) and head not in _KEYWORDS:
        # shorthand: (white 0) == (atom white 0)
        return Atom(str(head), tuple(_atom_arg(a, theory, pos) for a in args))
    raise ParseError(f"unknown connective {head!r}", pos)


def _atom_arg(tok, theory, pos) -> int:
    if isinstance(tok, int):
        return tok
    if isinstance(tok, str) and theory is not None and tok in theory.agent_ids:
        return theory.agent_ids[tok]
    raise ParseError(f"atom argument must be an integer or declared agent, got {tok!r}", pos)


def group_from_sexpr(x, theory=None, pos: int = 0) -> Group:
    if not isinstance(x, list):
        raise ParseError(f"malformed group {x!r}: expected a parenthesised agent list", pos)
    return group(_agent_from_token(a, theory, getattr(x, "pos", pos)) for a in x)


def parse_formula(text: str, theory=None) -> Formula:
    """Parse the s-expression formula grammar into a canonical Formula.

    When ``theory`` is given, agent names resolve through its declared names
    and every agent must lie in its domain.
    """
    return formula_from_sexpr(read_one(text), theory)


def parse_group(text: str, theory=None) -> Group:
    """Parse ``0,1,2`` / ``Alice,Bob`` / ``(0 1)`` into a group."""
    text = text.strip()
    if text.startswith("("):
        return group_from_sexpr(read_one(text), theory)
    if not text:
        return ()
    toks = [t.strip() for t in text.split(",")]
    return group(_agent_from_token(int(t) if t.isdigit() else t, theory, 0) for t in toks)


def all_groups(agents: Iterable[int]):
    agents = sorted(set(agents))
    for r in range(len(agents) + 1):
        yield from itertools.combinations(agents, r)
