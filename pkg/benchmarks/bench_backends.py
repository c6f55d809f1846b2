"""Compare the compiled and pure-Python arithmetic backends.

Times the raw kernels (rational matmul / Kronecker / row reduction) and
two whole-stack workloads (building a differential matrix; a batch of
coboundary-of-coboundary evaluations) under each backend, and prints a
table with speedups.  Results are asserted identical between backends
before timing.

Usage: python benchmarks/bench_backends.py [--repeat N] [--seed S]
"""

import argparse
import random
import time
from fractions import Fraction

from coaldef import _backend
from coaldef.coalgebra import divided_power, identity_morphism
from coaldef.cohomology import MorphismComplex
from coaldef.exactlinalg import QQ, Matrix


def random_rational_lists(rng, size, span=20, den=15):
    num, den_list = [], []
    for _ in range(size):
        f = Fraction(rng.randint(-span, span), rng.randint(1, den))
        num.append(f.numerator)
        den_list.append(f.denominator)
    return num, den_list


def bench_kernel(kernel, rng):
    results = {}
    an, ad = random_rational_lists(rng, 40 * 40)
    bn, bd = random_rational_lists(rng, 40 * 40)
    t0 = time.perf_counter()
    mm = kernel.q_matmul(an, ad, bn, bd, 40, 40, 40)
    results["q_matmul 40x40"] = (time.perf_counter() - t0, mm)

    kn, kd = random_rational_lists(rng, 12 * 12)
    t0 = time.perf_counter()
    kr = kernel.q_kron(an[:144], ad[:144], 12, 12, kn, kd, 12, 12)
    results["q_kron 12x12 (x) 12x12"] = (time.perf_counter() - t0, kr)

    cn, cd = random_rational_lists(rng, 40 * 60, span=9, den=9)
    t0 = time.perf_counter()
    rr = kernel.q_rref(cn, cd, 40, 60)
    results["q_rref 40x60"] = (time.perf_counter() - t0, rr)
    return results


def bench_stack(rng):
    f = identity_morphism(divided_power(3))
    comp = MorphismComplex(f)
    t0 = time.perf_counter()
    d2 = comp.differential_matrix(2)
    build = time.perf_counter() - t0

    def rmat(r, c):
        return Matrix.from_rows(QQ, [
            [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(c)]
            for _ in range(r)])

    t0 = time.perf_counter()
    for _ in range(20):
        w = comp.element(rmat(27, 3), rmat(27, 3), rmat(9, 3), 3)
        assert comp.differential(comp.differential(w)).is_zero()
    square = time.perf_counter() - t0
    return {"differential matrix (deg 2, dim 3)": (build, d2.shape),
            "20x coboundary-squared (deg 3, dim 3)": (square, None)}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="best-of repetitions per measurement")
    parser.add_argument("--seed", type=int, default=2024)
    args = parser.parse_args()

    backends = _backend.available_backends()
    if "compiled" not in backends:
        print("compiled backend not built; showing pure timings only")

    rows = {}
    checks = {}
    for name in backends:
        _backend.select(name)
        best = {}
        for _ in range(args.repeat):
            rng = random.Random(args.seed)
            for label, (dt, value) in bench_kernel(_backend.kernel(), rng).items():
                if label not in best or dt < best[label][0]:
                    best[label] = (dt, value)
            for label, (dt, value) in bench_stack(random.Random(args.seed)).items():
                if label not in best or dt < best[label][0]:
                    best[label] = (dt, value)
        for label, (dt, value) in best.items():
            rows.setdefault(label, {})[name] = dt
            checks.setdefault(label, []).append(value)
    _backend.select(None)

    for label, values in checks.items():
        first = values[0]
        assert all(v == first for v in values[1:]), \
            f"backend results differ for {label}"

    width = max(len(label) for label in rows)
    header = f"{'workload'.ljust(width)}  " + "".join(
        f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, times in rows.items():
        line = label.ljust(width) + "  " + "".join(
            f"{times[b] * 1000:>10.2f}ms" for b in backends)
        if len(backends) == 2:
            line += f"{times['pure'] / times['compiled']:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
