"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--samples 2000]

Both backends get identical inputs; the script checks that their outputs
agree before reporting best-of-N times and the speedup.
"""

from __future__ import annotations

import argparse
import random
import sys
import timeit

from catalan_tangent import _kernels_py as pure
from catalan_tangent.compositions import gen_odd_set_compositions
from catalan_tangent.trees import _preorder_template, gen_complete_shapes, random_code

try:
    from catalan_tangent import _kernels as compiled
except ImportError:
    sys.exit("compiled kernels not built; run `pip install -e . --no-build-isolation` first")


def workloads(samples: int, seed: int):
    rng = random.Random(seed)
    short = [tuple(rng.sample(range(1, 10), 9)) for _ in range(samples)]
    long = [tuple(rng.sample(range(1, 34), 33)) for _ in range(samples)]
    codes = [random_code(4, rng) for _ in range(samples)]
    # every unimodal labeling of the one-node shape over three-block compositions of [9]
    template = _preorder_template(gen_complete_shapes(3)[0])
    phis = list(gen_odd_set_compositions(9, 3))[:50]
    return {
        "inv_count, 9 letters": lambda k: [k.inv_count(w) for w in short],
        "inv_count, 33 letters": lambda k: [k.inv_count(w) for w in long],
        "kappa_code, LB_9": lambda k: [k.kappa_code(c) for c in codes],
        "audit_codes, LB_9": lambda k: k.audit_codes(codes),
        "audit_labelings, 50 compositions": lambda k: [k.audit_labelings(template, p) for p in phis],
    }


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    print(f"{'workload':34} {'pure ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for name, job in workloads(args.samples, args.seed).items():
        if job(pure) != job(compiled):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        t_pure = min(timeit.repeat(lambda: job(pure), number=1, repeat=args.repeat))
        t_fast = min(timeit.repeat(lambda: job(compiled), number=1, repeat=args.repeat))
        print(f"{name:34} {t_pure * 1e3:10.2f} {t_fast * 1e3:12.3f} {t_pure / t_fast:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
