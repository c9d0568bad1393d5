"""Side-by-side timing of the pure and compiled search kernels.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each workload runs under every importable backend; outputs are compared
before any number is reported, so a backend that disagrees never gets a
timing line.
"""

import argparse
import time

from ccakit import kernels
from ccakit.bipartite import knn_actors, knn_cayley_form
from ccakit.graphs import ColouredGraph, complete_colour_graph
from ccakit.groups import cyclic, dihedral, direct_product


def complete_single_colour(n: int) -> ColouredGraph:
    return ColouredGraph(n, {(i, j): 0 for i in range(n)
                             for j in range(i + 1, n)})


def workloads():
    out = []

    k8 = complete_single_colour(8)
    out.append(("K8, one colour (8! maps)",
                lambda impl: impl.search(8, k8.colour_matrix())))

    kd6 = complete_colour_graph(dihedral(6)).graph
    out.append(("complete colour graph of D(6), 12 vertices",
                lambda impl: impl.search(12, kd6.colour_matrix())))

    _, cg, _ = knn_cayley_form(knn_actors(3))
    out.append(("line graph of subdivided K_{3,3}, 18 vertices",
                lambda impl: impl.search(18, cg.graph.colour_matrix())))

    big = direct_product(dihedral(6), cyclic(5))
    flat = [x for row in big.table for x in row]
    out.append(("associativity scan, order 60 (60^3 triples)",
                lambda impl: impl.check_assoc(60, flat)))

    return out


def best_of(fn, impl, repeat: int) -> tuple[float, object]:
    result = fn(impl)
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(impl)
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3,
                    help="timed runs per workload; the best one is reported")
    args = ap.parse_args()

    impls = kernels.backends()
    print(f"active backend: {kernels.BACKEND}; "
          f"available: {', '.join(sorted(impls))}")
    width = max(len(name) for name, _ in workloads())

    for name, fn in workloads():
        times = {}
        results = {}
        for label, impl in impls.items():
            times[label], results[label] = best_of(fn, impl, args.repeat)
        assert len(set(map(repr, results.values()))) == 1, \
            f"backends disagree on {name}"
        line = f"{name:<{width}}"
        for label in sorted(times):
            line += f"  {label}: {times[label] * 1000:9.2f} ms"
        if "pure" in times and "compiled" in times and times["compiled"] > 0:
            line += f"  speedup: {times['pure'] / times['compiled']:6.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
