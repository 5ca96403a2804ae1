"""Proof size table: tree nodes, distinct nodes, depth and file size with and without formula sharing."""

import argparse
import time

from ckl import proofio
from ckl.experiments import DerivationConfig, derived_corpus, meta_corpus, puzzle_corpus
from ckl.kernel import proof_stats


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--children", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--pairs", type=int, default=5, help="random internalization instances")
    ap.add_argument("--filter", default="", help="only names containing this text")
    args = ap.parse_args()

    corpus = {**derived_corpus(), **puzzle_corpus(args.children),
              **meta_corpus(DerivationConfig(seed=args.seed, count=args.pairs))}
    print(f"{'name':34s} {'nodes':>7s} {'distinct':>8s} {'depth':>5s} {'shared KB':>9s} {'plain KB':>9s} {'recheck s':>9s}")
    for name, th in corpus.items():
        if args.filter not in name:
            continue
        s = proof_stats(th.proof)
        shared = proofio.dump_proof(th)
        plain = proofio.dump_proof(th, share=False)
        t0 = time.perf_counter()
        proofio.check_text(shared)
        secs = time.perf_counter() - t0
        print(f"{name:34s} {s['nodes']:7d} {s['distinct']:8d} {s['depth']:5d} "
              f"{len(shared) / 1024:9.1f} {len(plain) / 1024:9.1f} {secs:9.3f}")


if __name__ == "__main__":
    main()
