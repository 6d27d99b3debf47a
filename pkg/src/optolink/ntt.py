"""Exact modular arithmetic and number theoretic transforms.

Forward transforms use the iterative Cooley-Tukey butterfly, inverse
transforms the Gentleman-Sande butterfly.  Internally the forward pass maps
natural order to bit-reversed order and the inverse pass maps bit-reversed
order back to natural order, so the NTT -> pointwise -> INTT pipeline used by
:func:`poly_mul_ntt` needs no permutation at all.  The public
:func:`ntt_fast` / :func:`intt_fast` wrap those passes with a bit-reversal so
they agree with the textbook definition computed by :func:`ntt_direct`.

All arithmetic uses Python integers, so moduli up to (and beyond) 62 bits are
exact without any overflow handling.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    CoefficientOutOfRange,
    ContextMismatch,
    IncompatibleModulus,
    LengthMismatch,
    NotPowerOfTwo,
    NotPrime,
)

# Deterministic Miller-Rabin witnesses, sufficient for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    for p in _MR_BASES:
        if q % p == 0:
            return q == p
    d, s = q - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, q)
        if x in (1, q - 1):
            continue
        for _ in range(s - 1):
            x = x * x % q
            if x == q - 1:
                break
        else:
            return False
    return True


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def mod_inverse(a: int, m: int) -> int:
    """Inverse of ``a`` modulo ``m`` by the extended Euclidean algorithm."""
    old_r, r = a % m, m
    old_s, s = 1, 0
    while r:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_s, s = s, old_s - quot * s
    if old_r != 1:
        raise ValueError(f"{a} is not invertible modulo {m}")
    return old_s % m


def bit_reverse(x: int, bits: int) -> int:
    out = 0
    for _ in range(bits):
        out = (out << 1) | (x & 1)
        x >>= 1
    return out


def bit_reverse_permute(values: Sequence[int]) -> list[int]:
    n = len(values)
    bits = n.bit_length() - 1
    return [values[bit_reverse(i, bits)] for i in range(n)]


def _has_order_exactly(omega: int, n: int, q: int) -> bool:
    # n is a power of two, so order n <=> omega^n == 1 and omega^(n/2) != 1
    if pow(omega, n, q) != 1:
        return False
    return n == 1 or pow(omega, n // 2, q) != 1


def _smallest_primitive_root(q: int, n: int) -> int:
    if n == 1:
        return 1
    exponent = (q - 1) // n
    g = 2
    while True:
        root = pow(g, exponent, q)
        if _has_order_exactly(root, n, q):
            break
        g += 1
    # every primitive n-th root is root^k for odd k
    best = root
    step = root * root % q
    cur = root
    for _ in range(n // 2 - 1):
        cur = cur * step % q
        if cur < best:
            best = cur
    return best


def _twiddle_tables(q: int, n: int, omega: int, omega_inv: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # Entry m + i holds the twiddle of block i at the level with m blocks:
    # omega^((n / 2m) * bitrev_log2(m)(i)).
    fwd = [0] * n
    inv = [0] * n
    m = 1
    level = 0
    while m < n:
        stride = n // (2 * m)
        for i in range(m):
            e = stride * bit_reverse(i, level)
            fwd[m + i] = pow(omega, e, q)
            inv[m + i] = pow(omega_inv, e, q)
        m *= 2
        level += 1
    return tuple(fwd), tuple(inv)


@dataclass(frozen=True)
class ModulusContext:
    """Immutable parameter set for transforms of size ``n`` modulo prime ``q``.

    Twiddle tables are built once at construction and shared by every
    transform that uses the context.
    """

    q: int
    n: int
    omega: int
    omega_inv: int
    n_inv: int
    twiddles: tuple[int, ...] = field(default=(), repr=False, compare=False)
    inv_twiddles: tuple[int, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self) -> None:
        q, n = self.q, self.n
        if not is_prime(q):
            raise NotPrime(f"q={q} is not prime")
        if not is_power_of_two(n):
            raise NotPowerOfTwo(f"n={n} is not a power of two")
        if (q - 1) % n:
            raise IncompatibleModulus(f"q={q} is not congruent to 1 mod n={n}")
        if not _has_order_exactly(self.omega, n, q):
            raise IncompatibleModulus(f"omega={self.omega} is not a primitive {n}-th root mod {q}")
        if self.omega * self.omega_inv % q != 1:
            raise IncompatibleModulus("omega_inv is not the inverse of omega")
        if n * self.n_inv % q != 1:
            raise IncompatibleModulus("n_inv is not the inverse of n")
        if not self.twiddles:
            fwd, inv = _twiddle_tables(q, n, self.omega, self.omega_inv)
            object.__setattr__(self, "twiddles", fwd)
            object.__setattr__(self, "inv_twiddles", inv)
        elif len(self.twiddles) != n or len(self.inv_twiddles) != n:
            raise LengthMismatch("twiddle tables must have n entries")

    @property
    def log_n(self) -> int:
        return self.n.bit_length() - 1

    def random_poly(self, rng: random.Random) -> list[int]:
        return [rng.randrange(self.q) for _ in range(self.n)]


def make_context(q: int, n: int) -> ModulusContext:
    """Build a context using the smallest primitive ``n``-th root of unity."""
    if not is_prime(q):
        raise NotPrime(f"q={q} is not prime")
    if not is_power_of_two(n):
        raise NotPowerOfTwo(f"n={n} is not a power of two")
    if (q - 1) % n:
        raise IncompatibleModulus(f"q={q} is not congruent to 1 mod n={n}")
    omega = _smallest_primitive_root(q, n)
    return ModulusContext(q=q, n=n, omega=omega, omega_inv=mod_inverse(omega, q), n_inv=mod_inverse(n, q))


def corrupt_twiddles(ctx: ModulusContext, index: int = 1, delta: int = 1) -> ModulusContext:
    """Return a copy of ``ctx`` whose cached forward twiddle at ``index`` is off by ``delta``.

    Fault-injection hook for self tests; the scalar parameters stay valid.
    """
    tw = list(ctx.twiddles)
    tw[index] = (tw[index] + delta) % ctx.q
    return ModulusContext(ctx.q, ctx.n, ctx.omega, ctx.omega_inv, ctx.n_inv, tuple(tw), ctx.inv_twiddles)


@dataclass(frozen=True)
class Polynomial:
    """Coefficient vector bound to a context; validated on construction."""

    ctx: ModulusContext
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(_checked(self.ctx, self.coeffs)))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __mul__(self, other: Polynomial) -> Polynomial:
        return Polynomial(self.ctx, tuple(poly_mul_ntt(self.ctx, self, other)))


@dataclass
class ButterflyCounter:
    butterflies: int = 0


def butterfly_count(n: int) -> int:
    """Butterflies executed by a radix-2 transform of size ``n``: (n/2)*log2(n)."""
    if not is_power_of_two(n):
        raise NotPowerOfTwo(f"n={n} is not a power of two")
    return (n // 2) * (n.bit_length() - 1)


def butterfly_schedule(n: int) -> list[list[tuple[int, int]]]:
    """Index pairs touched by each Cooley-Tukey stage, in issue order."""
    if not is_power_of_two(n):
        raise NotPowerOfTwo(f"n={n} is not a power of two")
    stages = []
    m, t = 1, n
    while m < n:
        t //= 2
        stage = []
        for i in range(m):
            j1 = 2 * i * t
            stage.extend((j, j + t) for j in range(j1, j1 + t))
        stages.append(stage)
        m *= 2
    return stages


def _checked(ctx: ModulusContext, a: Sequence[int] | Polynomial) -> list[int]:
    if isinstance(a, Polynomial):
        if a.ctx != ctx:
            raise ContextMismatch("polynomial belongs to a different context")
        return list(a.coeffs)
    values = list(a)
    if len(values) != ctx.n:
        raise LengthMismatch(f"expected {ctx.n} coefficients, got {len(values)}")
    for c in values:
        if not 0 <= c < ctx.q:
            raise CoefficientOutOfRange(f"coefficient {c} outside [0, {ctx.q})")
    return values


def _forward_inplace(ctx: ModulusContext, a: list[int], counter: ButterflyCounter | None) -> None:
    # natural order in, bit-reversed order out
    q, n, zetas = ctx.q, ctx.n, ctx.twiddles
    m, t = 1, n
    done = 0
    while m < n:
        t //= 2
        for i in range(m):
            s = zetas[m + i]
            j1 = 2 * i * t
            for j in range(j1, j1 + t):
                u = a[j]
                v = a[j + t] * s % q
                a[j] = (u + v) % q
                a[j + t] = (u - v) % q
        done += n // 2
        m *= 2
    if counter is not None:
        counter.butterflies += done


def _inverse_inplace(ctx: ModulusContext, a: list[int], counter: ButterflyCounter | None) -> None:
    # bit-reversed order in, natural order out, including the n^-1 scaling
    q, n, zetas = ctx.q, ctx.n, ctx.inv_twiddles
    m, t = n, 1
    done = 0
    while m > 1:
        h = m // 2
        j1 = 0
        for i in range(h):
            s = zetas[h + i]
            for j in range(j1, j1 + t):
                u = a[j]
                v = a[j + t]
                a[j] = (u + v) % q
                a[j + t] = (u - v) * s % q
            j1 += 2 * t
        done += n // 2
        t *= 2
        m = h
    n_inv = ctx.n_inv
    for j in range(n):
        a[j] = a[j] * n_inv % q
    if counter is not None:
        counter.butterflies += done


def ntt_direct(ctx: ModulusContext, a: Sequence[int] | Polynomial) -> list[int]:
    """O(n^2) evaluation of the transform definition; the reference oracle."""
    values = _checked(ctx, a)
    q, n = ctx.q, ctx.n
    powers = [pow(ctx.omega, k, q) for k in range(n)]
    out = []
    for i in range(n):
        acc = 0
        for j, c in enumerate(values):
            acc += c * powers[i * j % n]
        out.append(acc % q)
    return out


def ntt_direct_at(ctx: ModulusContext, a: Sequence[int] | Polynomial, indices: Sequence[int]) -> list[int]:
    """Selected outputs of :func:`ntt_direct`, each in O(n)."""
    values = _checked(ctx, a)
    q = ctx.q
    out = []
    for i in indices:
        w = pow(ctx.omega, i, q)
        acc = 0
        for c in reversed(values):
            acc = (acc * w + c) % q
        out.append(acc)
    return out


def intt_direct(ctx: ModulusContext, a_hat: Sequence[int] | Polynomial) -> list[int]:
    values = _checked(ctx, a_hat)
    q, n = ctx.q, ctx.n
    powers = [pow(ctx.omega_inv, k, q) for k in range(n)]
    return [sum(c * powers[i * j % n] for i, c in enumerate(values)) * ctx.n_inv % q for j in range(n)]


def ntt_fast(ctx: ModulusContext, a: Sequence[int] | Polynomial, counter: ButterflyCounter | None = None) -> list[int]:
    """Cooley-Tukey NTT with natural-order input and output.

    Pass a :class:`ButterflyCounter` to accumulate the number of butterflies
    executed; it always grows by exactly ``(n/2) * log2(n)``.
    """
    values = _checked(ctx, a)
    _forward_inplace(ctx, values, counter)
    return bit_reverse_permute(values)


def intt_fast(ctx: ModulusContext, a_hat: Sequence[int] | Polynomial, counter: ButterflyCounter | None = None) -> list[int]:
    """Gentleman-Sande inverse NTT with natural-order input and output."""
    values = bit_reverse_permute(_checked(ctx, a_hat))
    _inverse_inplace(ctx, values, counter)
    return values


def poly_mul_ntt(
    ctx: ModulusContext,
    a: Sequence[int] | Polynomial,
    b: Sequence[int] | Polynomial,
    counter: ButterflyCounter | None = None,
) -> list[int]:
    """Cyclic product of ``a`` and ``b`` modulo (x^n - 1, q) via INTT(NTT(a) * NTT(b))."""
    x, y = _pair(ctx, a, b)
    q = ctx.q
    _forward_inplace(ctx, x, counter)
    _forward_inplace(ctx, y, counter)
    prod = [u * v % q for u, v in zip(x, y)]
    _inverse_inplace(ctx, prod, counter)
    return prod


def poly_mul_naive(ctx: ModulusContext, a: Sequence[int] | Polynomial, b: Sequence[int] | Polynomial) -> list[int]:
    """Schoolbook cyclic convolution modulo (x^n - 1, q)."""
    x, y = _pair(ctx, a, b)
    q, n = ctx.q, ctx.n
    out = [0] * n
    for i, u in enumerate(x):
        if u == 0:
            continue
        for j, v in enumerate(y):
            k = i + j
            if k >= n:
                k -= n
            out[k] += u * v
    return [c % q for c in out]


def _pair(ctx: ModulusContext, a, b) -> tuple[list[int], list[int]]:
    for p in (a, b):
        if isinstance(p, Polynomial) and p.ctx != ctx:
            raise ContextMismatch("polynomials must share the context they are multiplied under")
    if not isinstance(a, Polynomial) and not isinstance(b, Polynomial) and len(a) != len(b):
        raise ContextMismatch(f"operand lengths differ ({len(a)} vs {len(b)})")
    return _checked(ctx, a), _checked(ctx, b)
