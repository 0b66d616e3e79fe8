"""Compare the pure Python kernel against the compiled one.

Usage: python benchmarks/bench_kernels.py [--k 8] [--muls 20000]

Times elementwise products and inverses on random payloads and a full
group enumeration at a moderate level, for every kernel available in
this build.  Both kernels must produce identical bytes; the benchmark
re-checks that on the fly.
"""

from __future__ import annotations

import argparse
import random
import struct
import time

from veribv._kernel import available_kernels, get_kernel
from veribv.groups import make_generators


def random_payload(rnd: random.Random, k: int) -> bytes:
    return struct.pack(">%dH" % (3 * k), *(rnd.randrange(512) for _ in range(3 * k)))


def bench_elementwise(k: int, count: int) -> None:
    rnd = random.Random(20240915)
    pairs = [(random_payload(rnd, k), random_payload(rnd, k)) for _ in range(count)]
    print("elementwise ops at level %d, %d samples" % (k, count))
    reference = None
    for name in available_kernels():
        kern = get_kernel(name)
        t0 = time.perf_counter()
        products = [kern.mul(a, b) for a, b in pairs]
        t_mul = time.perf_counter() - t0
        t0 = time.perf_counter()
        inverses = [kern.inv(a) for a, _ in pairs]
        t_inv = time.perf_counter() - t0
        digest = hash((tuple(products), tuple(inverses)))
        if reference is None:
            reference = digest
        elif digest != reference:
            raise SystemExit("kernel %r disagrees with the first kernel" % name)
        print(
            "  %-5s mul %8.1f us/op   inv %8.1f us/op"
            % (name, t_mul / count * 1e6, t_inv / count * 1e6)
        )


def bench_closure(k: int) -> None:
    gs = make_generators(k)
    seeds = [bytes(6 * k)]
    mults = []
    for g in (gs.x0, gs.x1, gs.x2):
        mults.append(g.payload)
        mults.append(g.inverse().payload)
    print("group enumeration at level %d" % k)
    reference = None
    for name in available_kernels():
        kern = get_kernel(name)
        t0 = time.perf_counter()
        out = kern.closure_left(seeds, mults, 1 << 22)
        dt = time.perf_counter() - t0
        if reference is None:
            reference = out
        elif out != reference:
            raise SystemExit("kernel %r enumerates a different group" % name)
        print("  %-5s %8d elements in %6.2f s" % (name, len(out), dt))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--k", type=int, default=8, help="level for elementwise ops")
    parser.add_argument("--muls", type=int, default=20000)
    parser.add_argument("--closure-k", type=int, default=5,
                        help="level for the enumeration comparison")
    args = parser.parse_args()
    bench_elementwise(args.k, args.muls)
    bench_closure(args.closure_k)


if __name__ == "__main__":
    main()
