"""Special functions shared by every summation route.

Conventions: z^s means exp(s log z) with the principal branch
(-pi < Im log z <= pi), and z^(s) is shorthand for z^s / Gamma(s+1).
e(z) = exp(2*pi*i*z) throughout.

All series are accumulated in double precision with compensated (Kahan)
summation; the acceptance tolerances downstream are sized for 1e-12-class
accuracy of these primitives.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from scipy.special import gamma as _cgamma, rgamma as _crgamma

from .errors import PoleError, RegimeError

TWO_PI_I = 2j * math.pi

# B_2, B_4, ..., B_12; Euler-Maclaurin correction order 12.
_BERNOULLI = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
)
_EM_SHIFT = 20  # default shift count M; raised adaptively with |s|, |alpha|


def e2pi(z: complex) -> complex:
    """e(z) = exp(2 pi i z)."""
    return cmath.exp(TWO_PI_I * z)


def e2pi_frac(x: Fraction | float) -> complex:
    """e(x) for real x, reduced mod 1 before exponentiating.

    Rationals with huge numerators (large Kloosterman arguments) lose
    nothing this way; plain exp would.
    """
    if isinstance(x, Fraction):
        x = float(x - math.floor(x))
    else:
        x = x - math.floor(x)
    return complex(math.cos(2.0 * math.pi * x), math.sin(2.0 * math.pi * x))


def cpow(z: complex, s: complex) -> complex:
    """Principal-branch z^s; 0^s is 0 for Re s > 0, 1 for s = 0."""
    if z == 0:
        if s == 0:
            return 1.0 + 0j
        if (complex(s)).real > 0:
            return 0j
        raise PoleError("0 raised to a power with non-positive real part")
    return cmath.exp(s * cmath.log(z))


def pow_over_gamma(z: complex, s: complex) -> complex:
    """z^(s) = z^s / Gamma(s+1), the normalized power."""
    return cpow(z, s) * complex(_crgamma(complex(s) + 1))


def cgamma(s: complex) -> complex:
    return complex(_cgamma(complex(s)))


class KahanSum:
    """Compensated accumulator for complex series."""

    __slots__ = ("value", "_c")

    def __init__(self) -> None:
        self.value = 0j
        self._c = 0j

    def add(self, term: complex) -> None:
        y = term - self._c
        t = self.value + y
        self._c = (t - self.value) - y
        self.value = t


def partial_exp(z: complex, kmax: int) -> complex:
    """e(z)_{<kmax} = sum_{0 <= k < kmax} (2 pi i z)^(k)."""
    acc = KahanSum()
    term = 1.0 + 0j
    for k in range(max(kmax, 0)):
        acc.add(term)
        term = term * (TWO_PI_I * z) / (k + 1)
    return acc.value


def phi(a: complex, b: complex, z: complex, rel_tol: float = 1e-18,
        max_terms: int = 512) -> complex:
    """Confluent hypergeometric Phi(a,b,z) = 1F1(a;b;2 pi i z) / Gamma(b).

    Series form: sum_k Gamma(k+a)/(Gamma(a) Gamma(k+b)) (2 pi i z)^(k),
    terminated when a term drops below rel_tol * |partial sum|.  Direct
    summation is intended for |2 pi z| <= 30.
    """
    w = TWO_PI_I * z
    term = complex(_crgamma(complex(b)))  # k = 0 value: 1/Gamma(b)
    acc = KahanSum()
    ka, kb = complex(a), complex(b)
    for k in range(max_terms):
        acc.add(term)
        if abs(term) <= rel_tol * max(abs(acc.value), 1e-300) and k > 2:
            return acc.value
        if kb == 0:
            raise PoleError(f"Gamma pole in Phi series at k+b = 0 (k={k})")
        term = term * ka / (kb * (k + 1)) * w
        ka += 1
        kb += 1
    return acc.value


def gen_exp(z: complex, s: complex, rel_tol: float = 1e-18,
            max_terms: int = 512) -> complex:
    """Generalized exponential e(z,s) = sum_k (2 pi i z)^(k+s).

    For integer s <= 0 this is the full exponential e(z); for positive
    integer n it equals e(z) - e(z)_{<n}.
    """
    sc = complex(s)
    if sc.imag == 0 and sc.real == int(sc.real) and sc.real <= 0:
        return e2pi(z)
    if z == 0:
        return pow_over_gamma(0j, sc) if sc != 0 else 1.0 + 0j
    w = TWO_PI_I * z
    term = pow_over_gamma(w, sc)
    acc = KahanSum()
    k = 0
    while k < max_terms:
        acc.add(term)
        if abs(term) <= rel_tol * max(abs(acc.value), 1e-300) and k > 2:
            break
        term = term * w / (sc + k + 1)
        k += 1
    return acc.value


def _em_shift_count(alpha: complex, s: complex) -> int:
    scale = abs(complex(s)) + abs(complex(alpha).imag)
    return max(_EM_SHIFT, int(2.0 * scale) + 8)


def hurwitz_zeta_reg(alpha: complex, s: complex, shift: int | None = None) -> complex:
    """zeta(alpha, s) - 1/(s-1): the Hurwitz zeta with its pole removed.

    Euler-Maclaurin with `shift` initial terms and Bernoulli corrections
    through B_12.  Valid for Re(alpha) > 0 (complex alpha allowed) and all
    s; the subtraction makes the result analytic at s = 1.
    """
    a = complex(alpha)
    sc = complex(s)
    if a.real <= 0:
        raise PoleError(f"Hurwitz zeta needs Re(alpha) > 0, got {alpha}")
    m = shift if shift is not None else _em_shift_count(a, sc)
    acc = KahanSum()
    for n in range(m):
        acc.add(cpow(n + a, -sc))
    top = m + a
    # ((top)^(1-s) - 1)/(s-1), analytic through s = 1.
    l = cmath.log(top)
    w = (1 - sc) * l
    if abs(w) < 1e-8:
        # expm1-style series to keep s ~ 1 accurate
        phi_w = 1 + w / 2 + w * w / 6 + w ** 3 / 24
        acc.add(-l * phi_w)
    else:
        acc.add((cmath.exp(w) - 1) / (sc - 1))
    acc.add(0.5 * cpow(top, -sc))
    rise = sc  # rising factorial s (s+1) ... (s+2j-2)
    invtop2 = 1.0 / (top * top)
    pw = cpow(top, -sc - 1)
    for j, b2j in enumerate(_BERNOULLI, start=1):
        fact = math.factorial(2 * j)
        acc.add(float(b2j) / fact * rise * pw)
        rise *= (sc + 2 * j - 1) * (sc + 2 * j)
        pw *= invtop2
    return acc.value


def hurwitz_zeta(alpha: complex, s: complex, shift: int | None = None) -> complex:
    """Analytically continued zeta(alpha, s) = sum_{n>=0} (n+alpha)^-s."""
    sc = complex(s)
    if sc == 1:
        raise PoleError("Hurwitz zeta has a pole at s = 1")
    return hurwitz_zeta_reg(alpha, sc, shift) + 1.0 / (sc - 1)


def hurwitz_pair_combination(alpha: float, s: complex) -> complex:
    """2i sin(pi s) * zeta(1-alpha, s), analytic through s = 1.

    This is the combination sum*_n [(n+alpha)^-s - e(s/2)(n-alpha)^-s]
    that homogenizes right-coset sums over a double coset; at s = 1 the
    sine zero cancels the zeta pole and the value is -2*pi*i.
    """
    if not 0 <= alpha < 1:
        raise PoleError("alpha must lie in [0, 1)")
    sc = complex(s)
    sin_pi_s = cmath.sin(math.pi * sc)
    reg = hurwitz_zeta_reg(1.0 - alpha + 0j, sc)
    # sin(pi s)/(s-1) stays finite at s = 1: expand around s = 1.
    u = sc - 1
    if abs(u) < 1e-6:
        pole_part = -math.pi * (1 - (math.pi * u) ** 2 / 6)
    else:
        pole_part = sin_pi_s / u
    return 2j * (sin_pi_s * reg + pole_part)


def riemann_zeta(s: complex) -> complex:
    return hurwitz_zeta(1.0 + 0j, s)


def periodic_zeta(alpha: Fraction | float, s: complex, n_max: int = 200_000) -> complex:
    """F(alpha, s) = sum_{n>=1} e(n alpha) n^-s.

    Rational alpha (pass a Fraction): exact finite Hurwitz decomposition
    F(p/q, s) = q^-s sum_{r=1..q} e(rp/q) zeta(r/q, s), valid for all s
    away from poles.  Float alpha: direct summation, Re s > 1 only.
    """
    sc = complex(s)
    if isinstance(alpha, Fraction):
        q = alpha.denominator
        if q == 1 and sc == 1:
            raise PoleError("F(0, s) has a pole at s = 1")
        acc = KahanSum()
        for r in range(1, q + 1):
            acc.add(e2pi_frac(r * alpha) * cpow(q, -sc)
                    * hurwitz_zeta(Fraction(r, q) + 0j, sc))
        return acc.value
    if sc.real <= 1:
        raise RegimeError("direct periodic zeta needs Re(s) > 1; "
                          "pass a Fraction for the continued route")
    acc = KahanSum()
    for n in range(1, n_max + 1):
        acc.add(e2pi_frac(n * float(alpha)) * cpow(n, -sc))
    return acc.value


def hurwitz_relation_residual(alpha: Fraction, s: complex) -> float:
    """|F(a,s) + e(-s/2) F(-a,s) - (-2 pi i)^s / Gamma(s) zeta(1-a, 1-s)|.

    Both F's are evaluated by the decomposition route, the right side via
    the Euler-Maclaurin continuation, so the residual genuinely tests the
    relation rather than restating it.
    """
    sc = complex(s)
    lhs = (periodic_zeta(alpha, sc)
           + e2pi(-sc / 2) * periodic_zeta(1 - alpha, sc))
    rhs = (cpow(-TWO_PI_I, sc) * complex(_crgamma(sc))
           * hurwitz_zeta(1 - alpha + 0j, 1 - sc))
    return abs(lhs - rhs)
