"""Time the compiled and numpy kernel backends on the same workloads.

    python benchmarks/bench_kernels.py [--groups psl2:7 psl2:11 example] [--repeat 3]
"""

import argparse
import time

import numpy as np

from h2m import kernels
from h2m.constructors import builtin, paper_example
from h2m.lattice import enumerate_subgroups
from h2m.table import ElementTable


def _group(spec):
    return paper_example(841) if spec == "example" else builtin(spec)


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench(spec, impl, repeat):
    G = _group(spec)
    G.element_array(20000)
    T = ElementTable(G, impl=impl)
    rng = np.random.default_rng(0)
    a = rng.integers(0, T.size, 200_000)
    b = rng.integers(0, T.size, 200_000)
    t_mul, _ = _best(lambda: T.mul(a, b), repeat)

    def lattice():
        G._cache.pop(("lattice", 20000), None)
        return enumerate_subgroups(G, 20000, table=T)

    t_lat, L = _best(lattice, 1 if spec == "example" else repeat)
    return {"mul_200k": t_mul, "lattice": t_lat, "subgroups": len(L)}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--groups", nargs="+", default=["psl2:7", "psl2:11", "affine:7,0,6,1,6", "example"])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    found = kernels.backends()
    print(f"backends: {', '.join(sorted(found))} (active: {kernels.BACKEND})")
    print(f"{'group':<20}{'backend':<9}{'mul 200k (s)':>14}{'lattice (s)':>13}{'subgroups':>11}")
    for spec in args.groups:
        rows = {name: bench(spec, mod, args.repeat) for name, mod in sorted(found.items())}
        counts = {r["subgroups"] for r in rows.values()}
        assert len(counts) == 1, f"backends disagree on {spec}: {counts}"
        for name, r in rows.items():
            print(f"{spec:<20}{name:<9}{r['mul_200k']:>14.4f}{r['lattice']:>13.3f}{r['subgroups']:>11}")


if __name__ == "__main__":
    main()
