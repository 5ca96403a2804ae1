"""Mutate single proof nodes across the theorem corpus and tally how the kernel reacts."""

import argparse
from collections import Counter

from ckl.errors import CKLError
from ckl.experiments import (
    DerivationConfig,
    MutationConfig,
    derived_corpus,
    meta_corpus,
    mutation_suite,
    puzzle_corpus,
)
from ckl.kernel import check_proof


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--children", type=int, default=3)
    args = ap.parse_args()

    corpus = {**derived_corpus(), **puzzle_corpus(args.children),
              **meta_corpus(DerivationConfig(seed=args.seed))}
    outcome = Counter()
    fooled = []
    for m in mutation_suite(corpus, MutationConfig(seed=args.seed, count=args.count)):
        if m.noop:
            outcome["no-op"] += 1
            continue
        th = corpus[m.name]
        try:
            got = check_proof(th.theory, m.mutated).conclusion
        except CKLError as exc:
            outcome[f"rejected: {exc.code}"] += 1
            continue
        if got == th.conclusion:
            fooled.append(m)
            outcome["accepted, same conclusion"] += 1
        else:
            outcome["accepted, other conclusion"] += 1
    for k, v in sorted(outcome.items()):
        print(f"{k:32s} {v:5d}")
    for m in fooled:
        print("FOOLED", m.name, "/".join(map(str, m.path)))


if __name__ == "__main__":
    main()
