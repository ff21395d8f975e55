"""Time the compiled and pure-Python link-search kernels on the same queries.

Run with ``python benchmarks/bench_link.py``.  The queries walk the Weyl
orbit of rho towards an unreachable target, so the search is exhaustive and
both kernels visit exactly the same states.
"""
import argparse
import time

from qhverma._kernel import backends
from qhverma.linkage import LinkQuery, link_exists
from qhverma.roots import build_root_system

CASES = [("F", 4), ("B", 6), ("D", 6), ("E", 6)]
LARGE = [("E", 7)]  # about 1.5M states; half a minute in pure Python


def orbit_query(family, rank):
    rs = build_root_system(family, rank)
    # -rho + 2 alpha_1 sits inside the box but has the wrong length to be in the orbit
    return LinkQuery(rs.rho, -rs.rho + rs.simple_roots[0] * 2, rs)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--large", action="store_true", help="also run E7")
    args = ap.parse_args()
    kernels = backends()
    if "cython" not in kernels:
        print("compiled kernel not built; only the Python kernel is available")
    print(f"{'system':8}{'states':>10}" + "".join(f"{name + ' (s)':>16}" for name in kernels)
          + f"{'speedup':>10}")
    for family, rank in CASES + (LARGE if args.large else []):
        q = orbit_query(family, rank)
        times, explored = {}, set()
        for name, fn in kernels.items():
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                cert = link_exists(q, budget=10**8, search=fn)
                best = min(best, time.perf_counter() - t0)
            times[name] = best
            explored.add((cert.outcome, cert.explored))
        assert len(explored) == 1, f"kernels disagree on {q.rs.name}: {explored}"
        assert cert.outcome == "none"
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        states = next(iter(explored))[1]
        print(f"{q.rs.name:8}{states:>10}" + "".join(f"{t:>16.4f}" for t in times.values())
              + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
