"""Supports of R/(a x + b z) over k[x,y,z]/(xy,yz) for a grid of (a, b)."""
import argparse
import itertools

from cohsupport.fixtures import fixture
from cohsupport.groebner import Ideal
from cohsupport.resolutions import RModule
from cohsupport.support import support_variety


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--range", type=int, default=3, help="use 1..RANGE for a and b")
    args = ap.parse_args()
    R = fixture("D")
    x, _, z = R.Q.gens()
    for a, b in itertools.product(range(1, args.range + 1), repeat=2):
        V = support_variety(RModule.cyclic(R, [x.scale(a) + z.scale(b)]))
        expected = Ideal.of(R.S, "%d*chi1 - %d*chi2" % (b, a))
        print("a=%d b=%d dim=%d matches %d*chi1-%d*chi2: %s" % (a, b, V.dim, b, a, V.equals(expected)))


if __name__ == "__main__":
    main()
