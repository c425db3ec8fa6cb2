"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernel.py [--repeat N]

Raw ``scan`` workloads isolate the kernel; the end-to-end workloads show how
much of a query's time the kernel accounts for. Models are built outside the
timed region and memo tables are bypassed or rebuilt so both backends do the
same work.
"""

import argparse
import time

from scmexplain import good_counterfactual_explanations, kernel
from scmexplain.lang import load_fixture
from scmexplain.propcheck import GeneratorConfig, check_theorem, random_model

LOAN = load_fixture("loan")
BIG = random_model(GeneratorConfig(seed=4, n_endogenous=6, domain_min=4, domain_max=4))


def loan_scan():
    # X2 <- 45001 forces Y = 1, so every row is visited
    t = LOAN.tables
    fixed = [-1] * t.n
    fixed[LOAN.index["X2"]] = LOAN.value_index("X2", 45001)
    free = [LOAN.index[v] for v in ("U1", "U3", "X1", "X3", "X4")]
    for _ in range(20):
        kernel.scan(t, fixed, free, [LOAN.index["Y"]], None)


def big_scan():
    # every exogenous and input variable free, nothing watched: full odometer
    t = BIG.tables
    free = [i for i, v in enumerate(BIG.variables) if v != BIG.output]
    kernel.scan(t, [-1] * t.n, free, [], None)


def loan_counterfactuals():
    LOAN._memo.clear()
    good_counterfactual_explanations(LOAN, {"U1": 75000, "U3": 2500}, "Y")


def theorem_check():
    check_theorem("thm21", GeneratorConfig(seed=1), trials=60)


def _rows(m):
    n = 1
    for v in m.variables:
        if v != m.output:
            n *= len(m.domains[v])
    return n


WORKLOADS = [(f"scan x20 (loan, {7 * 6 * 7 * 6 * 2} rows)", loan_scan),
             (f"scan (6 vars, {_rows(BIG)} rows)", big_scan),
             ("good counterfactuals (loan)", loan_counterfactuals),
             ("thm21, 60 trials", theorem_check)]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernel.available_backends()
    if "cython" not in backends:
        print("compiled kernel not built; only the Python backend is available")
    start = kernel.BACKEND
    print(f"{'workload':34s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup")
    try:
        for name, fn in WORKLOADS:
            row = {}
            for b in backends:
                kernel.use_backend(b)
                row[b] = best_of(fn, args.repeat)
            line = f"{name:34s}" + "".join(f"{row[b]:11.3f}s" for b in backends)
            if len(backends) == 2:
                line += f"  {row['python'] / row['cython']:9.1f}x"
            print(line)
    finally:
        kernel.use_backend(start)


if __name__ == "__main__":
    main()
