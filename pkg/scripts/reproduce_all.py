"""Rebuild every derived scheme and puzzle theorem, replay it, and optionally save the proofs."""

import argparse
import time
from pathlib import Path

from ckl import proofio
from ckl.experiments import derived_corpus, puzzle_corpus
from ckl.formula import print_formula
from ckl.kernel import check_proof, proof_stats


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--children", type=int, default=3, help="largest muddy-children instance")
    ap.add_argument("--out", type=Path, help="directory for .cklp proof files")
    ap.add_argument("--quiet", action="store_true", help="omit conclusions")
    args = ap.parse_args()

    start = time.perf_counter()
    corpus = {**derived_corpus(), **puzzle_corpus(args.children)}
    built = time.perf_counter() - start
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    for name, th in corpus.items():
        again = check_proof(th.theory, th.proof)
        assert again.conclusion == th.conclusion, name
        stats = proof_stats(th.proof)
        print(f"{name:32s} nodes={stats['nodes']:6d} depth={stats['depth']:4d}")
        if not args.quiet:
            print(f"    {print_formula(th.conclusion)}")
        if args.out:
            safe = name.replace("[", "_").replace("]", "").replace(",", "_")
            proofio.save_proof(th, args.out / f"{safe}.cklp")
    print(f"{len(corpus)} theorems built in {built:.2f}s, replayed in {time.perf_counter() - start - built:.2f}s")


if __name__ == "__main__":
    main()
