"""Betti numbers of k against Serre's bound, degree by degree."""
import argparse

from cohsupport.fixtures import FIXTURES, fixture
from cohsupport.invariants import poincare_series_truncated, serre_series_truncated


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("fixtures", nargs="*", default=sorted(FIXTURES))
    ap.add_argument("--truncate", type=int, default=6)
    args = ap.parse_args()
    for name in args.fixtures:
        R = fixture(name)
        betti = poincare_series_truncated(R, args.truncate).coefficients
        serre = serre_series_truncated(R, args.truncate).coefficients
        marks = ["=" if b == s else "<" for b, s in zip(betti, serre)]
        print("FIX-%s" % name.upper())
        print("  k     " + " ".join("%6d" % b for b in betti))
        print("  serre " + " ".join("%6d" % s for s in serre))
        print("        " + " ".join("%6s" % m for m in marks))


if __name__ == "__main__":
    main()
