"""Profile, Q-Betti numbers, support of R and Golod verdict for every reference ring."""
import argparse
import json

from cohsupport.algebra import format_poly
from cohsupport.fixtures import FIXTURES, fixture
from cohsupport.invariants import embedding_invariants, golod_test, q_betti
from cohsupport.resolutions import RModule
from cohsupport.support import support_variety


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=101)
    ap.add_argument("--truncate", type=int, default=8)
    ap.add_argument("--json", action="store_true", help="print JSON instead of a table")
    args = ap.parse_args()
    rows = {}
    for name in sorted(FIXTURES):
        R = fixture(name, args.p)
        V = support_variety(RModule.free(R))
        rows[name] = {"profile": embedding_invariants(R).as_dict(), "betti_Q": list(q_betti(R)),
                      "support_R": [format_poly(g) for g in V.ideal.generators], "support_dim": V.dim,
                      "golod": str(golod_test(R, args.truncate))}
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
        return
    for name, r in rows.items():
        p = r["profile"]
        print("FIX-%s e=%d n=%d dim=%d depth=%d cid=%d betti_Q=%s dimV(R)=%d %s" % (
            name, p["e"], p["n"], p["dim"], p["depth"], p["cid"], r["betti_Q"], r["support_dim"], r["golod"]))


if __name__ == "__main__":
    main()
