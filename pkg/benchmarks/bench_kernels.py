"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--full]

``--full`` adds the Z/6, (2,1) orbit enumeration, which takes several
seconds on the Python backend.
"""

import argparse
import random
import timeit

from regsys import _kernels_py, kernels
from regsys.equivalence import feedback_generators
from regsys.ring import RingContext


def cases(full):
    rng = random.Random(0)

    def rand(mod, r, c):
        return [[rng.randrange(mod) for _ in range(c)] for _ in range(r)]

    a, b = rand(210, 32, 32), rand(210, 32, 32)
    yield "matmul 32x32 mod 210", lambda k: k.matmul(a, b, 210, 32, 32, 32)
    s = rand(7, 24, 24)
    yield "field_smith 24x24 mod 7", lambda k: k.field_smith(s, 7, 24, 24)
    r = rand(101, 40, 60)
    yield "field_rank 40x60 mod 101", lambda k: k.field_rank(r, 101, 40, 60)
    inv = rand(10007, 30, 30)
    yield "field_inverse 30x30 mod 10007", lambda k: k.field_inverse(inv, 10007, 30)
    for mod, n, m in [(6, 1, 2), (2, 2, 2)] + ([(6, 2, 1)] if full else []):
        gens = feedback_generators(RingContext(mod), n, m)
        yield (f"orbit_labels Z/{mod} ({n},{m})",
               lambda k, mod=mod, n=n, m=m, gens=gens: k.orbit_labels(mod, n, m, gens))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--full", action="store_true")
    args = parser.parse_args()
    if kernels.compiled is None:
        parser.exit(1, "compiled kernels are not available; build the extension first\n")

    print(f"{'kernel':34} {'python (s)':>11} {'compiled (s)':>13} {'speedup':>8}")
    for name, fn in cases(args.full):
        assert fn(_kernels_py) == fn(kernels.compiled), name
        slow = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
        fast = min(timeit.repeat(lambda: fn(kernels.compiled), number=1, repeat=args.repeat))
        print(f"{name:34} {slow:11.4f} {fast:13.4f} {slow / fast:7.1f}x")


if __name__ == "__main__":
    main()
