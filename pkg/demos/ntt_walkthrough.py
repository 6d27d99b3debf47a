"""
Polynomial multiplication with the number theoretic transform
==============================================================

A small worked example first, then the fast path checked against schoolbook
multiplication at a realistic size.
"""

import random

from optolink.ntt import (
    ButterflyCounter,
    intt_fast,
    make_context,
    ntt_direct,
    ntt_fast,
    poly_mul_naive,
    poly_mul_ntt,
)

# a size-4 transform over Z_17: omega is the smallest primitive 4th root of unity
ctx = make_context(17, 4)
print(f"q={ctx.q} n={ctx.n} omega={ctx.omega} omega^-1={ctx.omega_inv} n^-1={ctx.n_inv}")

a = [1, 2, 3, 4]
print("direct NTT   ", ntt_direct(ctx, a))
print("fast NTT     ", ntt_fast(ctx, a))
print("round trip   ", intt_fast(ctx, ntt_fast(ctx, a)))

# multiplication is cyclic: x * x^3 wraps around to 1
print("x * x^3      ", poly_mul_ntt(ctx, [0, 1, 0, 0], [0, 0, 0, 1]))

# a realistic size: 1024 coefficients mod 12289
ctx = make_context(12289, 1024)
rng = random.Random(1)
a, b = ctx.random_poly(rng), ctx.random_poly(rng)
counter = ButterflyCounter()
fast = poly_mul_ntt(ctx, a, b, counter)
print("n=1024 product matches schoolbook:", fast == poly_mul_naive(ctx, a, b))
# two forward transforms and one inverse, (n/2) log2 n butterflies each
print("butterflies:", counter.butterflies, "=", 3 * 512 * 10)
