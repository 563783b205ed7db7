"""Compare the C and pure-Python kernel backends (and the tree-walking interpreters).

    python benchmarks/bench_kernel.py [--cases N] [--seed S]
"""

import argparse
import time

from variadic import kernel
from variadic.gen import GeneratorConfig, TermGenerator, case_rng
from variadic.language import std_signature
from variadic.parser import parse_term
from variadic.qelim import classify, verify
from variadic.semantics import Assignment, interp, interp_semantic, interp_syntactic, standard_model


def timed(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cases", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    std = standard_model()
    sig = std_signature()
    cfg = GeneratorConfig(seed=args.seed)
    cases = []
    for i in range(args.cases):
        g = TermGenerator(cfg, sig, case_rng("bench", args.seed, i))
        cases.append((g.term(), g.assignment()))
    wide = parse_term("S(S(*(x, y)(0) ...y *(x, y)(x))(0) ...x S(*(x, y)(0) ...y *(x, y)(x))(300))")
    uqf = [classify(TermGenerator(cfg, sig, case_rng("bench-uqf", args.seed, i)).uqf_formula()) for i in range(200)]

    def batch(f):
        return lambda: [f(t, std, s) for t, s in cases]

    rows = []
    rows.append(("syntactic interpreter", f"{args.cases} terms", timed(batch(interp_syntactic))))
    rows.append(("semantic interpreter", f"{args.cases} terms", timed(batch(interp_semantic))))
    before = kernel.backend()
    for name in kernel.AVAILABLE:
        kernel.set_backend(name)
        rows.append((f"kernel[{name}]", f"{args.cases} terms", timed(batch(interp))))
        rows.append((f"kernel[{name}]", "nested sum, 45k body runs", timed(lambda: interp(wide, std, Assignment()))))
        rows.append((f"kernel[{name}]", "qelim verify, 200 formulas", timed(lambda: [verify(c, 6) for c in uqf], 1)))
    kernel.set_backend(before)
    rows.append(("semantic interpreter", "nested sum, 45k body runs", timed(lambda: interp_semantic(wide, std, Assignment()))))

    width = max(len(r[0]) for r in rows)
    jobw = max(len(r[1]) for r in rows)
    for who, job, secs in rows:
        print(f"{who:<{width}}  {job:<{jobw}}  {secs * 1000:9.1f} ms")


if __name__ == "__main__":
    main()
