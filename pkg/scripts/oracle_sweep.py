"""Check every corpus theorem against small reflexive Kripke models; also refute a few non-theorems."""

import argparse
import time

from ckl.experiments import DerivationConfig, derived_corpus, meta_corpus, puzzle_corpus
from ckl.formula import C, Imp, K, atom
from ckl.oracle import theorem_is_sound, valid_on_small_models


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--pairs", type=int, default=20)
    ap.add_argument("--worlds", type=int, default=3)
    args = ap.parse_args()

    corpus = {**derived_corpus(), **puzzle_corpus(),
              **meta_corpus(DerivationConfig(seed=args.seed, count=args.pairs))}
    t0 = time.perf_counter()
    bad = [n for n, th in corpus.items() if not theorem_is_sound(th, args.worlds).valid]
    print(f"{len(corpus)} theorems, {len(bad)} countermodels, {time.perf_counter() - t0:.1f}s")
    for n in bad:
        print("  COUNTERMODEL", n)

    p = atom("p")
    for label, f in [
        ("K_0 p => p", Imp(K(0, p), p)),
        ("p => K_0 p", Imp(p, K(0, p))),
        ("K_0 p => K_0 K_0 p", Imp(K(0, p), K(0, K(0, p)))),
        ("C_() p => C_() K_0 p", Imp(C((), p), C((), K(0, p)))),
    ]:
        v = valid_on_small_models(f, args.worlds)
        print(f"{label:24s} {'valid within bounds' if v.valid else f'refuted with {v.model.worlds} worlds'}")


if __name__ == "__main__":
    main()
