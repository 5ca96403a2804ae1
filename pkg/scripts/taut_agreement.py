"""Compare the tautology checker against an all-assignments enumerator on seeded random formulas."""

import argparse
import time

from ckl.experiments import FormulaConfig, brute_force_tautology, formula_suite, opaque_parts
from ckl.formula import print_formula
from ckl.taut import is_tautology


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--max-vars", type=int, default=6)
    ap.add_argument("--max-depth", type=int, default=5)
    args = ap.parse_args()

    cfg = FormulaConfig(seed=args.seed, count=args.count, max_vars=args.max_vars, max_depth=args.max_depth)
    suite = formula_suite(cfg)
    t0 = time.perf_counter()
    fast = [is_tautology(f) for f in suite]
    t1 = time.perf_counter()
    slow = [brute_force_tautology(f) for f in suite]
    t2 = time.perf_counter()
    disagree = [f for f, a, b in zip(suite, fast, slow) if a != b]
    widths = [len(opaque_parts(f)) for f in suite]
    print(f"{len(suite)} formulas, {sum(slow)} tautologies, up to {max(widths)} abstract variables")
    print(f"checker {t1 - t0:.3f}s, enumerator {t2 - t1:.3f}s, disagreements {len(disagree)}")
    for f in disagree[:10]:
        print("  ", print_formula(f))


if __name__ == "__main__":
    main()
