"""Seeded generators shared by the test suite and the scripts in ``scripts/``.

Each experiment has a small frozen config; the same config always yields
the same formulas, derivations and mutations.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

from . import derived as d
from . import puzzles as pz
from .formula import (
    FALSE,
    Bot,
    C,
    E,
    Formula,
    Imp,
    K,
    atom,
    conj,
    disj,
    iff,
    imps,
    neg,
)
from .kernel import (
    ARITY,
    Basis,
    ProofNode,
    Theorem,
    Theory,
    ax_E_def,
    ax_FB,
    ax_K,
    ax_proper,
    ax_T,
    ax_taut,
    ax_tec,
    check_proof,
    rule_KG,
    rule_LFB,
    rule_MP,
)
from .meta import HypDerivation, internalize, internalize_full

# -- random formulas ------------------------------------------------------------

@dataclass(frozen=True)
class FormulaConfig:
    seed: int = 0
    count: int = 1000
    atoms: Tuple[str, ...] = ("p", "q", "r", "s")
    agents: Tuple[int, ...] = (0, 1)
    max_depth: int = 5
    max_vars: int = 6


def random_formula(rng: random.Random, cfg: FormulaConfig, depth: Optional[int] = None) -> Formula:
    depth = cfg.max_depth if depth is None else depth
    if depth <= 0 or rng.random() < 0.2:
        k = rng.random()
        if k < 0.08:
            return FALSE
        return atom(rng.choice(cfg.atoms))
    kind = rng.choice(["imp", "imp", "neg", "and", "or", "iff", "K", "E", "C"])
    sub = lambda: random_formula(rng, cfg, depth - 1)  # noqa: E731
    if kind == "imp":
        return Imp(sub(), sub())
    if kind == "neg":
        return neg(sub())
    if kind == "and":
        return conj(sub(), sub())
    if kind == "or":
        return disj(sub(), sub())
    if kind == "iff":
        return iff(sub(), sub())
    if kind == "K":
        return K(rng.choice(cfg.agents), sub())
    members = tuple(a for a in cfg.agents if rng.random() < 0.5)
    return (E if kind == "E" else C)(members, sub())


# propositional schemes used to produce tautologies with random instances
_SCHEMES = [
    lambda a, b, c: Imp(a, a),
    lambda a, b, c: Imp(Imp(Imp(a, b), a), a),
    lambda a, b, c: imps(Imp(a, b), Imp(b, c), Imp(a, c)),
    lambda a, b, c: iff(conj(a, b), conj(b, a)),
    lambda a, b, c: disj(a, neg(a)),
    lambda a, b, c: Imp(neg(neg(a)), a),
    lambda a, b, c: iff(neg(conj(a, b)), disj(neg(a), neg(b))),
    lambda a, b, c: Imp(FALSE, a),
    lambda a, b, c: imps(a, b, a),
    lambda a, b, c: iff(Imp(a, Imp(b, c)), Imp(conj(a, b), c)),
]


def opaque_parts(f: Formula) -> set:
    """Maximal non-propositional subformulas (computed without the taut module)."""
    if isinstance(f, Bot):
        return set()
    if isinstance(f, Imp):
        return opaque_parts(f.left) | opaque_parts(f.right)
    return {f}


def formula_suite(cfg: FormulaConfig = FormulaConfig()) -> List[Formula]:
    """Half plain random formulas, half scheme instances; all within ``max_vars``."""
    rng = random.Random(cfg.seed)
    out = []
    small = replace(cfg, max_depth=2)
    while len(out) < cfg.count:
        if len(out) % 2:
            f = random_formula(rng, cfg)
        else:
            scheme = rng.choice(_SCHEMES)
            f = scheme(*(random_formula(rng, small) for _ in range(3)))
            if rng.random() < 0.3:
                f = Imp(random_formula(rng, small), f) if rng.random() < 0.5 else Imp(f, random_formula(rng, small))
        if len(opaque_parts(f)) <= cfg.max_vars:
            out.append(f)
    return out


def brute_force_tautology(f: Formula) -> bool:
    """Enumerate every assignment of the opaque parts; independent of taut.py."""
    parts = sorted(opaque_parts(f), key=repr)

    def value(g, env):
        if isinstance(g, Bot):
            return False
        if isinstance(g, Imp):
            return (not value(g.left, env)) or value(g.right, env)
        return env[g]

    for bits in itertools.product((False, True), repeat=len(parts)):
        if not value(f, dict(zip(parts, bits))):
            return False
    return True


# -- random derivations from hypotheses --------------------------------------------

@dataclass(frozen=True)
class DerivationConfig:
    seed: int = 0
    count: int = 20
    agents: Tuple[int, ...] = (0, 1, 2)
    hypotheses: int = 2
    steps: int = 8


def _small(rng: random.Random, agents) -> Formula:
    cfg = FormulaConfig(atoms=("p", "q", "r"), agents=tuple(agents), max_depth=1)
    return random_formula(rng, cfg)


def random_derivation(rng: random.Random, cfg: DerivationConfig) -> Tuple[HypDerivation, tuple]:
    """A derivation using hypotheses H0.. plus a group containing every KG/LFB agent.

    The theory also holds one extra axiom that is not a hypothesis, so the
    stripped theory keeps a proper axiom of its own.
    """
    g = tuple(sorted(a for a in cfg.agents if rng.random() < 0.6)) or (cfg.agents[0],)
    hyp_names = [f"H{k}" for k in range(cfg.hypotheses)]
    axioms = {n: _small(rng, g) for n in hyp_names}
    axioms["Extra"] = _small(rng, g)
    t = Theory(f"rand{rng.randrange(10**6)}", cfg.agents, Basis.CK, axioms)
    pool = [ax_proper(t, n) for n in axioms]
    for _ in range(cfg.steps):
        move = rng.choice(["kg", "conj", "t", "lfb", "kgc", "k"])
        a = rng.choice(pool)
        if move == "kg":
            pool.append(rule_KG(rng.choice(g), a))
        elif move == "conj":
            b = rng.choice(pool)
            pool.append(d.glue(t, [a, b], conj(a.conclusion, b.conclusion)))
        elif move == "t":
            i = rng.choice(g)
            ka = rule_KG(i, a)
            pool.append(rule_MP(ka, ax_T(t, i, a.conclusion)))
        elif move == "lfb":
            h = tuple(x for x in g if rng.random() < 0.6)
            y = _small(rng, g)
            fb = ax_FB(t, h, y)
            premise = d.glue(t, [a, fb], Imp(C(h, y), conj(a.conclusion, E(h, C(h, y)))))
            pool.append(rule_LFB(h, a.conclusion, premise))
        elif move == "kgc":
            h = tuple(x for x in g if rng.random() < 0.6)
            pool.append(d.kg_C(t, h, a))
        else:
            i = rng.choice(g)
            b = _small(rng, g)
            imp = d.glue(t, [a], Imp(b, a.conclusion))
            pool.append(rule_MP(rule_KG(i, imp), _k_dist(t, i, b, a.conclusion)))
    return HypDerivation(t, tuple(hyp_names), pool[-1].proof), g


def _k_dist(t: Theory, i: int, a: Formula, b: Formula) -> Theorem:
    """|- K_i(a => b) => K_i a => K_i b, distribution in curried form."""
    return d.glue(t, [ax_K(t, i, a, b)], imps(K(i, Imp(a, b)), K(i, a), K(i, b)))


def derivation_suite(cfg: DerivationConfig = DerivationConfig()):
    rng = random.Random(cfg.seed)
    return [random_derivation(rng, cfg) for _ in range(cfg.count)]


# -- the theorem corpus ---------------------------------------------------------------

def derived_corpus() -> Dict[str, Theorem]:
    """Theorems of the derived-rule layer for |G| in {0, 1, 2}."""
    p, q = atom("p"), atom("q")
    out = {}
    for g in [(), (0,), (0, 1)]:
        tag = "".join(map(str, g)) or "empty"
        ck = Theory("pure-ck", (0, 1), Basis.CK)
        tec = Theory("pure-tec", (0, 1), Basis.TEC)
        tecp = Theory("pure-tecprime", (0, 1), Basis.TECPRIME)
        out[f"t_C[{tag}]"] = d.t_C(ck, g, p)
        out[f"e_from_c[{tag}]"] = d.e_from_c(ck, g, p)
        out[f"k_C[{tag}]"] = d.k_C(ck, g, p, q)
        out[f"kg_C[{tag}]"] = d.kg_C(ck, g, ax_taut(ck, Imp(p, p)))
        out[f"four_C[{tag}]"] = d.four_C(ck, g, p)
        out[f"a10_in_ck[{tag}]"] = d.a10_in_ck(ck, g, p)
        split, join = d.c_conj(ck, g, p, q)
        out[f"c_conj_split[{tag}]"] = split
        out[f"c_conj_join[{tag}]"] = join
        out[f"internal_mp[{tag}]"] = d.internal_mp(ck, g, p, q)
        out[f"internal_lfb[{tag}]"] = d.internal_lfb(ck, g, q, p)
        for i in g:
            out[f"internal_kg[{tag},{i}]"] = d.internal_kg(ck, g, i, p)
        fb = d.fb_in_tec(tec, g, p)
        out[f"fb_in_tec[{tag}]"] = fb
        out[f"lfb_in_tec[{tag}]"] = d.lfb_in_tec(tec, g, p, fb)
        out[f"a10_from_r10[{tag}]"] = d.a10_from_r10(tecp, g, p)
        out[f"a10_tec[{tag}]"] = ax_tec(tec, "A10", g, p)
        out[f"e_def[{tag}]"] = ax_E_def(ck, g, p)
    return out


def puzzle_corpus(max_children: int = 3) -> Dict[str, Theorem]:
    """Puzzle theorems: progress(n, p) for 2 <= n <= max_children (so up to
    max_children + 1 children) and muddy_final for 1..max_children children."""
    out = {
        "wisemen_first": pz.wisemen_first(),
        "wisemen_second": pz.wisemen_second(),
    }
    out["wisemen_corollary"] = pz.wisemen_corollary()
    out["wisemen_externalized"] = pz.wisemen_externalized(out["wisemen_corollary"])
    for n in range(2, max_children + 1):
        for p in range(1, n + 1):
            for v in pz.Variant:
                out[f"progress[{n},{p},{v.value}]"] = pz.progress(n, p, v)
    for n in range(1, max_children + 1):
        for v in pz.Variant:
            out[f"muddy_final[{n},{v.value}]"] = pz.muddy_final(n, v)
    return out


def meta_corpus(cfg: DerivationConfig = DerivationConfig()) -> Dict[str, Theorem]:
    out = {}
    for k, (der, g) in enumerate(derivation_suite(cfg)):
        out[f"random[{k}].source"] = check_proof(der.theory, der.root)
        out[f"random[{k}].internal"] = internalize(der, g)
        out[f"random[{k}].full"] = internalize_full(der, g)
    return out


# -- proof mutations ----------------------------------------------------------------

@dataclass(frozen=True)
class MutationConfig:
    seed: int = 0
    count: int = 500


def _positions(root: ProofNode):
    """Every (path, node) occurrence in the tree, shared nodes included."""
    out = []
    stack = [((), root)]
    while stack:
        path, n = stack.pop()
        out.append((path, n))
        for k, c in enumerate(n.children):
            stack.append((path + (k,), c))
    return out


def _replace_at(root: ProofNode, path, new: ProofNode) -> ProofNode:
    if not path:
        return new
    k = path[0]
    kids = list(root.children)
    kids[k] = _replace_at(kids[k], path[1:], new)
    return ProofNode(root.rule, root.params, tuple(kids))


def _tweak_formula(rng: random.Random, f: Formula) -> Formula:
    choice = rng.randrange(5)
    if choice == 0:
        return neg(f)
    if choice == 1 and isinstance(f, Imp):
        return Imp(f.right, f.left)
    if choice == 2 and isinstance(f, (K, E, C, Imp)):
        return f.body if not isinstance(f, Imp) else f.left
    if choice == 3:
        return Imp(atom("p"), f)
    return atom("zz")


def _tweak_group(rng: random.Random, g):
    """Toggle membership of one agent among 0..2."""
    return tuple(sorted(set(g) ^ {rng.randrange(3)}))


def mutate_node(rng: random.Random, n: ProofNode) -> ProofNode:
    """One local change: tag, one parameter, or the premise list."""
    kind = rng.randrange(4)
    if kind == 0:
        same = [t for t, k in ARITY.items() if k == len(n.children) and t != n.rule]
        others = same or [t for t in ARITY if t != n.rule]
        return ProofNode(rng.choice(others), n.params, n.children)
    if kind == 1 and n.params:
        params = list(n.params)
        j = rng.randrange(len(params))
        v = params[j]
        if isinstance(v, Formula):
            params[j] = _tweak_formula(rng, v)
        elif isinstance(v, tuple):
            params[j] = _tweak_group(rng, v)
        elif isinstance(v, int):
            params[j] = (v + 1 + rng.randrange(2)) % 3
        else:
            params[j] = v + "_x" if rng.random() < 0.5 else "Extra"
        return ProofNode(n.rule, tuple(params), n.children)
    if kind == 2 and len(n.children) == 2:
        return ProofNode(n.rule, n.params, (n.children[1], n.children[0]))
    if n.children:
        if rng.random() < 0.5:
            return ProofNode(n.rule, n.params, n.children[:-1])
        return ProofNode(n.rule, n.params, n.children + n.children[:1])
    return ProofNode(n.rule, n.params, (n,))


@dataclass(frozen=True)
class Mutation:
    name: str
    path: tuple
    original: ProofNode
    mutated: ProofNode

    @property
    def noop(self) -> bool:
        return self.original == self.mutated


def mutation_suite(corpus: Dict[str, Theorem], cfg: MutationConfig = MutationConfig()) -> List[Mutation]:
    rng = random.Random(cfg.seed)
    names = sorted(corpus)
    positions = {}
    out = []
    for _ in range(cfg.count):
        name = rng.choice(names)
        root = corpus[name].proof
        if name not in positions:
            positions[name] = _positions(root)
        path, node = rng.choice(positions[name])
        out.append(Mutation(name, path, root, _replace_at(root, path, mutate_node(rng, node))))
    return out
