"""Exact arithmetic in cyclotomic fields and root-of-unity parameter contexts.

All quantities of the theory (the framing parameter ``a``, the quantum
parameter ``s``, quantum integers, link evaluations) live in Q(zeta_M) for a
single root order M.  Elements are represented by rational coefficient
vectors of length deg(Phi_M), reduced modulo the M-th cyclotomic polynomial.
No floating point is used outside of :meth:`CycScalar.embed`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath


class ScalarError(ValueError):
    """Raised on invalid scalar arithmetic (division by zero, ring mismatch)."""


# ---------------------------------------------------------------------------
# integer polynomial helpers (ascending coefficient lists)
# ---------------------------------------------------------------------------

def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact division of integer polynomials with monic-enough divisor."""
    num = list(num)
    quot = [0] * max(1, len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) < len(den):
            break
        shift = len(num) - len(den)
        lead = num[-1] // den[-1]
        quot[shift] = lead
        for i, c in enumerate(den):
            num[shift + i] -= lead * c
    while num and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the m-th cyclotomic polynomial.

    Computed by dividing x^m - 1 by the cyclotomic polynomials of the proper
    divisors of m; all divisions are exact over the integers.
    """
    if m < 1:
        raise ScalarError("root order must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            if rem:
                raise AssertionError("cyclotomic division must be exact")
    return tuple(poly)


# ---------------------------------------------------------------------------
# the cyclotomic ring context
# ---------------------------------------------------------------------------

class RingContext:
    """Q(zeta_M) together with the rank/level parameters expressed as powers of zeta.

    The context fixes the complex embedding zeta -> exp(2*pi*i/M); every
    derived sign convention (positive square roots of bracket values) refers
    to that embedding.
    """

    def __init__(self, M: int, N: int, K: int, a_exp: int, s_exp: int,
                 theory: str = "su", alpha: int | None = None,
                 beta: int | None = None):
        self.M = M
        self.N = N
        self.K = K
        self.a_exp = a_exp % M
        self.s_exp = s_exp % M
        self.v_exp = (-N * s_exp) % M
        self.theory = theory
        self.alpha = alpha
        self.beta = beta
        self.d = math.gcd(N, K)
        self.n_prime = N // self.d
        self.k_prime = K // self.d
        self.cyclotomic_poly = cyclotomic_polynomial(M)
        self.degree = len(self.cyclotomic_poly) - 1
        # reduction rows: x^k mod Phi_M for k = degree .. 2*degree - 2
        rows = []
        prev = [Fraction(0)] * self.degree
        # x^degree = -(lower coefficients) since Phi_M is monic
        base = [Fraction(-c) for c in self.cyclotomic_poly[:-1]]
        rows.append(tuple(base))
        prev = base
        for _ in range(self.degree - 2):
            shifted = [Fraction(0)] + prev[:-1]
            top = prev[-1]
            if top:
                shifted = [shifted[i] + top * base[i] for i in range(self.degree)]
            rows.append(tuple(shifted))
            prev = list(shifted)
        self._reduction_rows = rows
        self._zeta_pows: dict[int, CycScalar] = {}
        self._zero = CycScalar(self, (Fraction(0),) * self.degree)
        self._one = self.from_rational(1)

    # -- construction -----------------------------------------------------

    def zero(self) -> "CycScalar":
        return self._zero

    def one(self) -> "CycScalar":
        return self._one

    def from_rational(self, q) -> "CycScalar":
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(q)
        return CycScalar(self, tuple(coeffs))

    def from_coeffs(self, coeffs: Iterable) -> "CycScalar":
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > self.degree:
            raise ScalarError("coefficient vector longer than field degree")
        cs += [Fraction(0)] * (self.degree - len(cs))
        return CycScalar(self, tuple(cs))

    def zeta(self, k: int = 1) -> "CycScalar":
        """zeta_M^k as a canonical-form element."""
        k %= self.M
        cached = self._zeta_pows.get(k)
        if cached is not None:
            return cached
        if k < self.degree:
            coeffs = [Fraction(0)] * self.degree
            coeffs[k] = Fraction(1)
            val = CycScalar(self, tuple(coeffs))
        else:
            val = self.zeta(k - 1) * self.zeta(1)
        self._zeta_pows[k] = val
        return val

    # -- named parameters ---------------------------------------------------

    def a(self, power: int = 1) -> "CycScalar":
        return self.zeta(self.a_exp * power)

    def s(self, power: int = 1) -> "CycScalar":
        return self.zeta(self.s_exp * power)

    def v(self, power: int = 1) -> "CycScalar":
        return self.zeta(self.v_exp * power)

    # -- quantum integers ---------------------------------------------------

    def quantum_integer(self, n: int) -> "CycScalar":
        """[n] = (s^n - s^-n)/(s - s^-1), computed as s^(n-1) + s^(n-3) + ... + s^(1-n)."""
        if n < 0:
            return -self.quantum_integer(-n)
        total = self.zero()
        for k in range(n):
            total = total + self.s(n - 1 - 2 * k)
        return total

    def quantum_factorial(self, n: int) -> "CycScalar":
        if n < 0:
            raise ScalarError("factorial of a negative integer")
        total = self.one()
        for j in range(1, n + 1):
            total = total * self.quantum_integer(j)
        return total

    def quantum_integer_invertible(self, n: int) -> bool:
        return not self.quantum_integer(n).is_zero()

    def multiplicative_order(self, x: "CycScalar") -> int:
        """Order of a root of unity given as a ring element."""
        acc = x
        for k in range(1, 4 * self.M + 1):
            if acc == self.one():
                return k
            acc = acc * x
        raise ScalarError("element is not a root of unity of small order")

    def __repr__(self) -> str:  # pragma: no cover
        return (f"RingContext(M={self.M}, N={self.N}, K={self.K}, "
                f"theory={self.theory!r})")


class CycScalar:
    """An element of Q(zeta_M) in canonical reduced form."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: RingContext, coeffs: tuple):
        if len(coeffs) != ring.degree:
            raise ScalarError("coefficient vector has wrong length")
        self.ring = ring
        self.coeffs = coeffs

    # -- ring operations ----------------------------------------------------

    def _check(self, other: "CycScalar") -> None:
        if self.ring is not other.ring and self.ring.M != other.ring.M:
            raise ScalarError("cannot combine scalars from different cyclotomic fields")

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        return CycScalar(self.ring, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        return CycScalar(self.ring, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CycScalar(self.ring, tuple(-x for x in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        deg = self.ring.degree
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j, y in enumerate(other.coeffs):
                if y:
                    prod[i + j] += x * y
        out = prod[:deg]
        rows = self.ring._reduction_rows
        for k in range(deg, 2 * deg - 1):
            c = prod[k]
            if c:
                row = rows[k - deg]
                for i in range(deg):
                    if row[i]:
                        out[i] += c * row[i]
        return CycScalar(self.ring, tuple(out))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _coerce(self, other):
        if isinstance(other, CycScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.from_rational(other)
        return NotImplemented

    def __pow__(self, n: int) -> "CycScalar":
        if n < 0:
            return self.invert() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def invert(self) -> "CycScalar":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_M."""
        if self.is_zero():
            raise ScalarError("division by zero in the cyclotomic field")
        phi = [Fraction(c) for c in self.ring.cyclotomic_poly]
        r0, r1 = phi, list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            q, rem = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 is a nonzero constant gcd (Phi_M is irreducible)
        while r0 and not r0[-1]:
            r0.pop()
        if len(r0) != 1:
            raise ScalarError("element is a zero divisor; input was not canonical")
        inv_lead = 1 / r0[0]
        coeffs = [c * inv_lead for c in s0]
        return self.ring.from_coeffs(coeffs[: self.ring.degree])

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.invert()

    def conjugate(self) -> "CycScalar":
        """Complex conjugation, zeta -> zeta^(M-1)."""
        out = self.ring.zero()
        for k, c in enumerate(self.coeffs):
            if c:
                out = out + c * self.ring.zeta((-k) % self.ring.M)
        return out

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(not c for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ScalarError("scalar is not rational")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.from_rational(other)
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self.ring.M == other.ring.M and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring.M, self.coeffs))

    # -- embedding ------------------------------------------------------------

    def embed(self, precision: int = 15):
        """Numerical value at zeta = exp(2*pi*i/M), as an mpmath complex number."""
        if precision < 15:
            raise ScalarError("precision must be at least 15 digits")
        with mpmath.workdps(precision + 15):
            root = mpmath.exp(2j * mpmath.pi / self.ring.M)
            acc = mpmath.mpc(0)
            power = mpmath.mpc(1)
            for c in self.coeffs:
                if c:
                    acc += mpmath.mpf(c.numerator) / c.denominator * power
                power *= root
            return +acc

    def __repr__(self) -> str:  # pragma: no cover
        terms = [f"{c}*z^{k}" if k else f"{c}"
                 for k, c in enumerate(self.coeffs) if c]
        return "CycScalar(" + (" + ".join(terms) or "0") + f"; M={self.ring.M})"


def _poly_divmod_frac(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    den = list(den)
    while den and not den[-1]:
        den.pop()
    quot = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    while True:
        while num and not num[-1]:
            num.pop()
        if len(num) < len(den):
            break
        shift = len(num) - len(den)
        lead = num[-1] / den[-1]
        quot[shift] += lead
        for i, c in enumerate(den):
            num[shift + i] -= lead * c
    return quot, num


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


# ---------------------------------------------------------------------------
# the formal eta extension
# ---------------------------------------------------------------------------

class ExtScalar:
    """A cyclotomic scalar times a formal power of the normalization constant eta.

    eta^2 is the inverse of the theory's global bracket value, so the power is
    kept in {0, 1} after reduction.  Scalars tagged with different theories
    may only be compared through the complex embedding.
    """

    __slots__ = ("base", "eta_pow", "theory", "omega")

    def __init__(self, base: CycScalar, eta_pow: int, theory: str, omega: CycScalar):
        # normalize the eta power into {0, 1}
        half, rem = divmod(eta_pow, 2)
        if half:
            # eta^2 = omega^(-1)
            base = base * (omega.invert() ** half if half > 0 else omega ** (-half))
        self.base = base
        self.eta_pow = rem
        self.theory = theory
        self.omega = omega

    def _check(self, other: "ExtScalar") -> None:
        if self.theory != other.theory:
            raise ScalarError(
                "cannot combine eta-extended scalars from different theories exactly; "
                "use the complex embedding")

    def __mul__(self, other):
        if isinstance(other, ExtScalar):
            self._check(other)
            return ExtScalar(self.base * other.base, self.eta_pow + other.eta_pow,
                             self.theory, self.omega)
        return ExtScalar(self.base * other, self.eta_pow, self.theory, self.omega)

    __rmul__ = __mul__

    def __add__(self, other: "ExtScalar") -> "ExtScalar":
        self._check(other)
        if self.eta_pow != other.eta_pow:
            if self.base.is_zero():
                return other
            if other.base.is_zero():
                return self
            raise ScalarError("cannot add scalars with different eta parities exactly")
        return ExtScalar(self.base + other.base, self.eta_pow, self.theory, self.omega)

    def __eq__(self, other):
        if not isinstance(other, ExtScalar):
            return NotImplemented
        if self.theory != other.theory:
            raise ScalarError("cross-theory comparison requires the complex embedding")
        if self.base.is_zero() and other.base.is_zero():
            return True
        return self.eta_pow == other.eta_pow and self.base == other.base

    def __hash__(self):
        return hash((self.base, self.eta_pow, self.theory))

    def embed(self, precision: int = 15):
        val = self.base.embed(precision)
        if self.eta_pow:
            with mpmath.workdps(precision + 15):
                om = self.omega.embed(precision)
                eta = 1 / mpmath.sqrt(om.real)
                val = val * eta
        return val

    def __repr__(self) -> str:  # pragma: no cover
        return f"ExtScalar({self.base!r}, eta^{self.eta_pow}, {self.theory})"


# ---------------------------------------------------------------------------
# parameter selection
# ---------------------------------------------------------------------------

def su_parameters(N: int, K: int) -> RingContext:
    """Root-of-unity context with a = zeta_M, M = 2N(N+K), s = a^(-N), v = s^(-N)."""
    if N < 2 or K < 1:
        raise ScalarError("rank must be >= 2 and level >= 1")
    M = 2 * N * (N + K)
    return RingContext(M, N, K, a_exp=1, s_exp=(-N) % M, theory="su")


def reduced_framing_split(N: int, K: int) -> tuple[int, int, bool]:
    """Split d = gcd(N, K) as alpha*beta.

    alpha collects the prime powers of d whose primes do not divide 2K'
    (just K' in the variant used when N + K and N' = N/d are both even);
    returns (alpha, beta, variant_flag).
    """
    d = math.gcd(N, K)
    n_prime, k_prime = N // d, K // d
    variant = (N + K) % 2 == 0 and n_prime % 2 == 0
    excluded = k_prime if variant else 2 * k_prime
    alpha = 1
    rest = d
    p = 2
    while rest > 1:
        if rest % p == 0:
            pk = 1
            while rest % p == 0:
                rest //= p
                pk *= p
            if excluded % p != 0:
                alpha *= pk
        p += 1
    return alpha, d // alpha, variant


def solve_framing_reduced(N: int, K: int, max_multiplier: int = 64) -> tuple[int, int, RingContext]:
    """Reduced-theory context: a root order, s of the prescribed order, and a
    framing parameter a with (a^N s)^alpha = +-1 and (a^K s^-1)^beta = epsilon or 1.

    s is pinned relative to the full theory's s = exp(-i*pi/(N+K)) so that
    the factorization of the full invariant through the abelian one holds in
    the complex embedding: for d even it equals s, for d odd it is -s when
    N + K is odd and -s^-1 (the conjugate of -s) when N + K is even.  The
    root order is enlarged until the two exponent congruences admit a common
    solution; the choice is minimal for the search order but not canonical.
    """
    if N < 2 or K < 1:
        raise ScalarError("rank must be >= 2 and level >= 1")
    d = math.gcd(N, K)
    alpha, beta, variant = reduced_framing_split(N, K)
    eps = (-1) ** (N + K + 1)
    base = 2 * (N + K)
    for mult in range(1, max_multiplier + 1):
        M = base * mult
        if d % 2 == 0:
            s_exp = (-M // base) % M
        elif (N + K) % 2 == 1:
            s_exp = (M // 2 - M // base) % M
        else:
            s_exp = (M // 2 + M // base) % M
        if variant:
            t1, t2 = M // 2, 0
        else:
            t1 = 0
            t2 = M // 2 if eps == -1 else 0
        sols = [e for e in range(M)
                if (alpha * (N * e + s_exp) - t1) % M == 0
                and (beta * (K * e - s_exp) - t2) % M == 0]
        if sols:
            ctx = RingContext(M, N, K, a_exp=sols[0], s_exp=s_exp,
                              theory="reduced", alpha=alpha, beta=beta)
            _verify_reduced_context(ctx, alpha, beta, eps, variant)
            return alpha, beta, ctx
    raise ScalarError(
        f"no framing parameter found for (N,K)=({N},{K}) up to multiplier {max_multiplier}; "
        "this indicates a bug in the congruence search")


def _verify_reduced_context(ctx: RingContext, alpha: int, beta: int,
                            eps: int, variant: bool) -> None:
    one = ctx.one()
    minus_one = ctx.from_rational(-1)
    expected_order = 2 * (ctx.N + ctx.K) if (ctx.N + ctx.K) % 2 == 0 else ctx.N + ctx.K
    if ctx.multiplicative_order(ctx.s()) != expected_order:
        raise ScalarError("reduced context: s has the wrong multiplicative order")
    lhs1 = (ctx.a(ctx.N) * ctx.s()) ** alpha
    lhs2 = (ctx.a(ctx.K) * ctx.s(-1)) ** beta
    if variant:
        ok = lhs1 == minus_one and lhs2 == one
    else:
        ok = lhs1 == one and lhs2 == (minus_one if eps == -1 else one)
    if not ok:
        raise ScalarError("reduced context: framing congruences failed verification")


# ---------------------------------------------------------------------------
# JSON forms
# ---------------------------------------------------------------------------

def scalar_to_json(x: CycScalar | ExtScalar, precision: int = 15) -> dict:
    if isinstance(x, ExtScalar):
        doc = scalar_to_json(x.base, precision)
        doc["eta_pow"] = x.eta_pow
        doc["theory"] = x.theory
        val = x.embed(precision)
        doc["approx"] = _complex_json(val, precision)
        return doc
    doc = {
        "order": x.ring.M,
        "num": [c.numerator for c in x.coeffs],
        "den": [c.denominator for c in x.coeffs],
        "approx": _complex_json(x.embed(precision), precision),
    }
    return doc


def _complex_json(val, precision: int) -> dict:
    with mpmath.workdps(precision):
        return {"re": mpmath.nstr(val.real, precision),
                "im": mpmath.nstr(val.imag, precision)}


def scalar_from_json(doc: dict, ring: RingContext) -> CycScalar:
    if doc["order"] != ring.M:
        raise ScalarError("root order mismatch while parsing a scalar")
    coeffs = [Fraction(n, d) for n, d in zip(doc["num"], doc["den"])]
    return ring.from_coeffs(coeffs)
