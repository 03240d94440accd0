"""Exact formal Laurent q-series and bivariate (p,q) series.

Everything here is big-integer / rational arithmetic - no floating point -
so the numeric summation routes elsewhere always have a non-circular exact
reference.  Truncation orders are tracked through every operation and
coefficients beyond them are errors, never silent zeros.

The eta-product builder stores eta without its q^{1/24} prefactor;
quotient assembly re-inserts the net fractional power and rejects inputs
whose leading exponent is not integral.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

from .errors import AlgebraError, InvalidInputError, TruncationError, UnsupportedSpecError

Coef = int | Fraction


class LaurentSeries:
    """q-series sum_{n >= lowest} a_n q^n known through q^trunc (inclusive)."""

    __slots__ = ("lowest", "coeffs", "trunc")

    def __init__(self, lowest: int, coeffs: Sequence[Coef], trunc: int | None = None):
        coeffs = list(coeffs)
        if trunc is None:
            trunc = lowest + len(coeffs) - 1
        if lowest + len(coeffs) - 1 > trunc:
            coeffs = coeffs[: trunc - lowest + 1]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            lowest += 1
        self.lowest = lowest
        self.coeffs = coeffs
        self.trunc = trunc

    # -- basic access ------------------------------------------------------

    def coeff(self, n: int) -> Coef:
        if n > self.trunc:
            raise TruncationError(f"coefficient of q^{n} beyond truncation {self.trunc}")
        if n < self.lowest or n - self.lowest >= len(self.coeffs):
            return 0
        return self.coeffs[n - self.lowest]

    def __len__(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self) -> str:
        head = ", ".join(
            f"{c}*q^{self.lowest + i}" for i, c in enumerate(self.coeffs[:5]) if c
        )
        return f"LaurentSeries({head or '0'} ... ; trunc={self.trunc})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        lo = min(self.lowest, other.lowest)
        hi = min(self.trunc, other.trunc)
        return all(self.coeff(n) == other.coeff(n) for n in range(lo, hi + 1))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "LaurentSeries | Coef") -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries(0, [other], trunc=self.trunc)
        lo = min(self.lowest, other.lowest)
        hi = min(self.trunc, other.trunc)
        return LaurentSeries(
            lo, [self.coeff(n) + other.coeff(n) for n in range(lo, hi + 1)], trunc=hi
        )

    def __radd__(self, other: Coef) -> "LaurentSeries":
        return self + other

    def __sub__(self, other: "LaurentSeries | Coef") -> "LaurentSeries":
        return self + (-1) * (other if isinstance(other, LaurentSeries)
                              else LaurentSeries(0, [other], trunc=self.trunc))

    def __neg__(self) -> "LaurentSeries":
        return (-1) * self

    def __rmul__(self, c: Coef) -> "LaurentSeries":
        return LaurentSeries(self.lowest, [c * a for a in self.coeffs], self.trunc)

    def __mul__(self, other: "LaurentSeries | Coef") -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return other * self
        if not self.coeffs or not other.coeffs:
            lo = self.lowest + other.lowest
            hi = min(self.trunc + other.lowest, other.trunc + self.lowest)
            return LaurentSeries(lo, [], trunc=hi)
        lo = self.lowest + other.lowest
        hi = min(self.trunc + other.lowest, other.trunc + self.lowest)
        out = [0] * (hi - lo + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            ei = self.lowest + i
            for j, b in enumerate(other.coeffs):
                e = ei + other.lowest + j
                if e > hi:
                    break
                if b != 0:
                    out[e - lo] += a * b
        return LaurentSeries(lo, out, trunc=hi)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by q^k."""
        return LaurentSeries(self.lowest + k, self.coeffs, self.trunc + k)

    def scale_q(self, k: int) -> "LaurentSeries":
        """Substitute q -> q^k (k >= 1)."""
        if k < 1:
            raise InvalidInputError("scale_q needs k >= 1")
        out = [0] * (len(self.coeffs) * k)
        for i, a in enumerate(self.coeffs):
            out[i * k] = a
        return LaurentSeries(self.lowest * k, out, trunc=self.trunc * k + (k - 1))

    def inverse(self) -> "LaurentSeries":
        """Multiplicative inverse; leading coefficient must be a unit."""
        if not self.coeffs or self.coeffs[0] == 0:
            raise AlgebraError("series has no invertible leading coefficient")
        lead = self.coeffs[0]
        n_out = self.trunc - self.lowest + 1
        inv_lead = Fraction(1, 1) / lead if not (lead == 1 or lead == -1) else (
            1 if lead == 1 else -1)
        out: list[Coef] = [inv_lead]
        for n in range(1, n_out):
            s = 0
            for j in range(1, min(n, len(self.coeffs) - 1) + 1):
                s += self.coeffs[j] * out[n - j]
            out.append(-s * inv_lead if isinstance(inv_lead, int) else -s * inv_lead)
        return LaurentSeries(-self.lowest, out, trunc=self.trunc - 2 * self.lowest)

    def pow(self, m: int) -> "LaurentSeries":
        if m < 0:
            return self.inverse().pow(-m)
        result = LaurentSeries(0, [1], trunc=self.trunc - self.lowest + max(
            self.lowest * m, self.lowest * m))
        # keep full available precision: repeated multiplication
        result = LaurentSeries(0, [1], trunc=self.trunc + self.lowest * (m - 1)
                               if m else self.trunc)
        base = self
        for _ in range(m):
            result = result * base
        if m == 0:
            return LaurentSeries(0, [1], trunc=self.trunc - self.lowest)
        return result

    def truncate(self, hi: int) -> "LaurentSeries":
        if hi > self.trunc:
            raise TruncationError("cannot extend a truncated series")
        return LaurentSeries(self.lowest, self.coeffs[: hi - self.lowest + 1], trunc=hi)

    def map_fractions(self) -> "LaurentSeries":
        """Assert all coefficients are integral and demote Fractions to int."""
        out = []
        for c in self.coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise AlgebraError(f"non-integral coefficient {c}")
                c = c.numerator
            out.append(c)
        return LaurentSeries(self.lowest, out, self.trunc)

    def eval_q(self, q: complex) -> complex:
        """Numerical evaluation at a point (Horner on the regular part)."""
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * q + (float(c) if isinstance(c, Fraction) else c)
        return acc * q ** self.lowest


def one(trunc: int) -> LaurentSeries:
    return LaurentSeries(0, [1], trunc=trunc)


def geometric(trunc: int) -> LaurentSeries:
    """1/(1-q) = sum q^k."""
    return LaurentSeries(0, [1] * (trunc + 1), trunc=trunc)


# -- modular-form oracles ---------------------------------------------------


def eta_part(trunc: int) -> LaurentSeries:
    """Prod_{n>=1} (1 - q^n), without the q^{1/24} prefactor.

    Built by the pentagonal-number recurrence, so every coefficient is in
    {-1, 0, 1} at generalized pentagonal positions.
    """
    coeffs = [0] * (trunc + 1)
    coeffs[0] = 1
    k = 1
    while True:
        p1 = k * (3 * k - 1) // 2
        p2 = k * (3 * k + 1) // 2
        if p1 > trunc and p2 > trunc:
            break
        sign = -1 if k % 2 else 1
        if p1 <= trunc:
            coeffs[p1] += sign
        if p2 <= trunc:
            coeffs[p2] += sign
        k += 1
    return LaurentSeries(0, coeffs, trunc=trunc)


def _divisor_power_sum(n: int, k: int) -> int:
    s = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            s += d ** k
            e = n // d
            if e != d:
                s += e ** k
    return s


def eisenstein(weight: int, trunc: int) -> LaurentSeries:
    """E_4 or E_6 with the classical integral normalizations."""
    if weight == 4:
        scale, k = 240, 3
    elif weight == 6:
        scale, k = -504, 5
    else:
        raise UnsupportedSpecError("only E4 and E6 are provided")
    coeffs: list[Coef] = [1] + [scale * _divisor_power_sum(n, k) for n in range(1, trunc + 1)]
    return LaurentSeries(0, coeffs, trunc=trunc)


def delta_series(trunc: int) -> LaurentSeries:
    """Discriminant form q Prod (1-q^n)^24; coefficients are tau(n)."""
    return eta_part(trunc).pow(24).shift(1)


def tau(n: int, _cache: dict[int, LaurentSeries] = {}) -> int:
    if "d" not in _cache or _cache["d"].trunc < n:
        _cache["d"] = delta_series(max(n, 16))
    return _cache["d"].coeff(n)


def j_series(trunc: int) -> LaurentSeries:
    """Normalized modular invariant q^-1 + 0 + 196884 q + ... (exact)."""
    e4 = eisenstein(4, trunc + 1)
    return (e4.pow(3) * delta_series(trunc + 1).inverse() - 744).map_fractions()


def j_series_alt(trunc: int) -> LaurentSeries:
    """Same invariant via E_6^2/Delta + 984; cross-check route."""
    e6 = eisenstein(6, trunc + 1)
    return (e6.pow(2) * delta_series(trunc + 1).inverse() + 984).map_fractions()


def eta_quotient(pairs: Iterable[tuple[int, int]], constant: Coef = 0,
                 trunc: int = 32) -> LaurentSeries:
    """Prod_d eta(d z)^{r_d} plus a constant, as an integral q-series.

    `pairs` lists (dilation d, exponent r).  The net fractional power
    sum(d*r)/24 must be an integer, otherwise the quotient has no integral
    q-expansion and we refuse.
    """
    pairs = list(pairs)
    net = sum(d * r for d, r in pairs)
    if net % 24:
        raise UnsupportedSpecError("eta quotient has fractional leading exponent")
    shift = net // 24
    # generous working order: dividing by eta-parts costs leading exponents
    work = trunc + abs(shift) + 2
    out = one(work)
    for d, r in pairs:
        base = eta_part(work // d + 1).scale_q(d)
        out = out * (base.pow(r) if r >= 0 else base.pow(-r).inverse())
    out = out.shift(shift)
    if constant:
        out = out + constant
    return out.truncate(trunc).map_fractions()


def hauptmodul_gamma0_2(trunc: int = 32) -> LaurentSeries:
    """Normalized hauptmodul for the level-2 Hecke group: (eta(z)/eta(2z))^24 + 24."""
    return eta_quotient([(1, 24), (2, -24)], constant=24, trunc=trunc)


def hauptmodul_gamma0_2_plus(trunc: int = 32) -> LaurentSeries:
    """Normalized hauptmodul for the Fricke extension at level 2.

    Obtained from the level-2 hauptmodul u by symmetrizing under the
    Fricke involution: u + 4096/u + 24, which starts q^-1 + 0 + 4372 q.
    """
    u = eta_quotient([(1, 24), (2, -24)], trunc=trunc + 2)
    out = u + 4096 * u.inverse() + 24
    return out.truncate(trunc).map_fractions()


def newform_level_11(trunc: int = 32) -> LaurentSeries:
    """eta(z)^2 eta(11z)^2: the weight-2 newform of level 11."""
    return eta_quotient([(1, 2), (11, 2)], trunc=trunc)


# -- Hecke and Faber operators ----------------------------------------------


def hecke_t(n: int, f: LaurentSeries) -> LaurentSeries:
    """Weight-0 Hecke operator T(n) acting on a q-series.

    Coefficient of q^k in n*T(n)f is sum_{d | gcd(n,|k|), d=n allowed at
    k=0} (n/d) a(nk/d^2).  Level obstructions (gcd(n, level) > 1) are the
    caller's responsibility; inputs here are level-one unless stated.
    """
    if n < 1:
        raise InvalidInputError("Hecke index must be positive")
    t_out = f.trunc // n
    lo_out = f.lowest  # lowest exponent can only rise: nk/d^2 >= f.lowest
    out: list[Coef] = []
    lo = min(lo_out, -((-f.lowest) * n))  # allow k down to lowest*n when d=n
    lo = min(f.lowest, f.lowest * n if f.lowest < 0 else f.lowest)
    lo = f.lowest if f.lowest >= 0 else f.lowest * 1
    # exponents k with a contribution satisfy nk/d^2 >= f.lowest for some d|n
    lo = min((f.lowest * d * d) // n for d in _divisors(n))
    for k in range(lo, t_out + 1):
        s = 0
        for d in _divisors(n):
            if k == 0 or k % d == 0:
                idx = n * k // (d * d)
                if idx * d * d == n * k and f.lowest <= idx <= f.trunc:
                    s += (n // d) * f.coeff(idx)
                elif idx * d * d == n * k and idx > f.trunc:
                    raise TruncationError("input series too short for this Hecke index")
        out.append(Fraction(s, n))
    return LaurentSeries(lo, out, trunc=t_out)


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def faber_polynomial(m: int, f: LaurentSeries) -> tuple[list[Coef], LaurentSeries]:
    """Unique monic degree-m polynomial F with F(f) = q^-m + O(q).

    Requires f = q^-1 + 0 + O(q).  Returns (coefficients c_0..c_m with
    c_m = 1, F(f) as a series).
    """
    if m < 1:
        raise InvalidInputError("Faber index must be >= 1")
    if f.lowest != -1 or f.coeff(-1) != 1 or f.coeff(0) != 0:
        raise InvalidInputError("Faber polynomials need a normalized hauptmodul shape")
    powers = [one(f.trunc - (m - 1))]
    for _ in range(m):
        powers.append(powers[-1] * f)
    coeffs: list[Coef] = [0] * (m + 1)
    coeffs[m] = 1
    acc = powers[m]
    for j in range(m - 1, -1, -1):
        c = acc.coeff(-j)
        if c != 0:
            coeffs[j] = -c
            acc = acc - c * powers[j]
    return coeffs, acc


# -- bivariate series --------------------------------------------------------


class BiSeries:
    """Formal series sum_m p^m * (Laurent series in q), m = 0..pmax."""

    __slots__ = ("slices", "pmax")

    def __init__(self, slices: dict[int, LaurentSeries], pmax: int):
        self.slices = {m: s for m, s in slices.items() if 0 <= m <= pmax}
        self.pmax = pmax

    def coeff(self, m: int, n: int) -> Coef:
        if m > self.pmax:
            raise TruncationError(f"p^{m} beyond truncation {self.pmax}")
        if m not in self.slices:
            return 0
        return self.slices[m].coeff(n)

    def __add__(self, other: "BiSeries") -> "BiSeries":
        pmax = min(self.pmax, other.pmax)
        out: dict[int, LaurentSeries] = {}
        for m in range(pmax + 1):
            a, b = self.slices.get(m), other.slices.get(m)
            if a is not None and b is not None:
                out[m] = a + b
            elif a is not None:
                out[m] = a
            elif b is not None:
                out[m] = b
        return BiSeries(out, pmax)

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return self + other.scale(-1)

    def scale(self, c: Coef) -> "BiSeries":
        return BiSeries({m: c * s for m, s in self.slices.items()}, self.pmax)

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        pmax = min(self.pmax, other.pmax)
        out: dict[int, LaurentSeries] = {}
        for m1, s1 in self.slices.items():
            for m2, s2 in other.slices.items():
                m = m1 + m2
                if m > pmax:
                    continue
                prod = s1 * s2
                out[m] = out[m] + prod if m in out else prod
        return BiSeries(out, pmax)

    def p_derivative(self) -> "BiSeries":
        """p d/dp."""
        return BiSeries({m: m * s for m, s in self.slices.items() if m}, self.pmax)

    def inverse(self) -> "BiSeries":
        """Inverse of a series with unit p^0 slice."""
        s0 = self.slices.get(0)
        if s0 is None or s0.lowest != 0 or s0.coeff(0) != 1 or any(
                c != 0 for c in s0.coeffs[1:]):
            raise AlgebraError("BiSeries inverse needs p^0 slice == 1")
        qt = min(s.trunc for s in self.slices.values())
        out: dict[int, LaurentSeries] = {0: one(qt)}
        for m in range(1, self.pmax + 1):
            acc: LaurentSeries | None = None
            for j in range(1, m + 1):
                sj = self.slices.get(j)
                om = out.get(m - j)
                if sj is None or om is None:
                    continue
                term = sj * om
                acc = term if acc is None else acc + term
            out[m] = -1 * acc if acc is not None else LaurentSeries(0, [], trunc=qt)
        return BiSeries(out, self.pmax)

    def exp(self) -> "BiSeries":
        """exp of a series supported on p^1..: terminates at p-order pmax."""
        if 0 in self.slices and not self.slices[0].is_zero():
            raise AlgebraError("BiSeries exp needs vanishing p^0 slice")
        qt = min((s.trunc for s in self.slices.values()), default=0)
        result = BiSeries({0: one(qt)}, self.pmax)
        term = BiSeries({0: one(qt)}, self.pmax)
        for j in range(1, self.pmax + 1):
            term = term * self
            result = result + term.scale(Fraction(1, _factorial(j)))
        return result

    def log(self) -> "BiSeries":
        """log of a series with unit p^0 slice."""
        u = self - BiSeries({0: one(min(s.trunc for s in self.slices.values()))},
                            self.pmax)
        if 0 in u.slices and not u.slices[0].is_zero():
            raise AlgebraError("BiSeries log needs p^0 slice == 1")
        result: BiSeries | None = None
        term = BiSeries({0: one(min(s.trunc for s in self.slices.values()))}, self.pmax)
        for j in range(1, self.pmax + 1):
            term = term * u
            piece = term.scale(Fraction((-1) ** (j + 1), j))
            result = piece if result is None else result + piece
        assert result is not None
        return result

    def map_fractions(self) -> "BiSeries":
        return BiSeries({m: s.map_fractions() for m, s in self.slices.items()},
                        self.pmax)

    def coefficientwise_le(self, other: "BiSeries", q_window: tuple[int, int]) -> bool:
        lo, hi = q_window
        for m in range(1, min(self.pmax, other.pmax) + 1):
            for n in range(lo, hi + 1):
                if self.coeff(m, n) > other.coeff(m, n):
                    return False
        return True


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def serialize(series: LaurentSeries) -> dict:
    """JSON-safe form: decimal-string coefficients plus exponent metadata."""
    return {
        "lowest": series.lowest,
        "trunc": series.trunc,
        "coeffs": [str(c) for c in series.coeffs],
    }


def deserialize(payload: dict) -> LaurentSeries:
    coeffs = [Fraction(c) if "/" in c else int(c) for c in payload["coeffs"]]
    return LaurentSeries(payload["lowest"], coeffs, payload["trunc"])
