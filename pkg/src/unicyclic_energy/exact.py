"""Exact polynomial arithmetic and the quadratic extension Q[x][s]/(s^2 - x^2 - 4).

``Poly`` holds arbitrary-precision coefficients, low degree first.  Integer
coefficients stay ``int``; anything else is a ``Fraction`` kept in lowest
terms, so an integer polynomial and a rational one share one type.

The log-magnitude evaluator on the imaginary axis lives here too; it is the
only place in this module that touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable

import numpy as np


def _norm(c):
    if isinstance(c, bool):
        c = int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"polynomial coefficients must be int or Fraction, got {type(c).__name__}")


class Poly:
    """Dense univariate polynomial with exact coefficients (index k -> x^k)."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [_norm(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple = tuple(cs)
        self._hash = None

    # constructors
    @classmethod
    def x(cls) -> Poly:
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> Poly:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> Poly:
        return cls([0] * k + [c])

    @classmethod
    def from_dict(cls, terms: dict[int, object]) -> Poly:
        if not terms:
            return cls()
        cs = [0] * (max(terms) + 1)
        for k, c in terms.items():
            cs[k] += c
        return cls(cs)

    # basic queries
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    # arithmetic
    @staticmethod
    def _coerce(other) -> Poly:
        if isinstance(other, Poly):
            return other
        return Poly((other,))

    def __add__(self, other) -> Poly:
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> Poly:
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Poly:
        return self._coerce(other) - self

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly((1,)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> Poly:
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return Poly([0] * k + list(self.coeffs))

    def compose_x2(self) -> Poly:
        """p(x^2)."""
        out = [0] * (2 * len(self.coeffs))
        for k, c in enumerate(self.coeffs):
            out[2 * k] = c
        return Poly(out)

    def reflect(self) -> Poly:
        """p(-x)."""
        return Poly(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def denominator_lcm(self) -> int:
        d = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                d = d * c.denominator // math.gcd(d, c.denominator)
        return d

    def float_coeffs(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs], dtype=float)

    # serialization
    def serialize(self) -> str:
        """Comma-separated decimal coefficients, low degree first."""
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    @classmethod
    def parse(cls, text: str) -> Poly:
        return cls(Fraction(t.strip()) for t in text.split(","))

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if k == 0:
                body = str(mag)
            else:
                body = "" if mag == 1 else f"{mag}*"
                body += "x" if k == 1 else f"x^{k}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


# The algebra hidden in the closed forms: s = sqrt(x^2 + 4).
X = Poly.x()
S_SQUARED = Poly((4, 0, 1))


@dataclass(frozen=True)
class SurdElem:
    """u(x) + v(x) * s with s^2 = x^2 + 4, both parts exact."""

    u: Poly = field(default_factory=Poly)
    v: Poly = field(default_factory=Poly)

    @classmethod
    def of(cls, u=0, v=0) -> SurdElem:
        return cls(Poly._coerce(u), Poly._coerce(v))

    @classmethod
    def s(cls) -> SurdElem:
        return cls(Poly(), Poly((1,)))

    def _lift(self, other) -> SurdElem:
        if isinstance(other, SurdElem):
            return other
        if isinstance(other, (Poly, int, Fraction)):
            return SurdElem(Poly._coerce(other), Poly())
        raise TypeError(f"cannot combine SurdElem with {type(other).__name__}")

    def __add__(self, other) -> SurdElem:
        o = self._lift(other)
        return SurdElem(self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __neg__(self) -> SurdElem:
        return SurdElem(-self.u, -self.v)

    def __sub__(self, other) -> SurdElem:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> SurdElem:
        return self._lift(other) - self

    def __mul__(self, other) -> SurdElem:
        if isinstance(other, SurdFrac):
            return NotImplemented
        o = self._lift(other)
        u = self.u * o.u + self.v * o.v * S_SQUARED
        v = self.u * o.v + self.v * o.u
        return SurdElem(u, v)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> SurdElem:
        if k < 0:
            raise ValueError("use SurdFrac for negative powers")
        result, base = SurdElem(Poly((1,)), Poly()), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> SurdElem:
        return SurdElem(self.u, -self.v)

    def norm(self) -> Poly:
        """self * conj(self), which always lies in Q[x]."""
        return self.u * self.u - self.v * self.v * S_SQUARED

    def reflect(self) -> SurdElem:
        """Substitute x -> -x (s is even in x, so it is left alone)."""
        return SurdElem(self.u.reflect(), self.v.reflect())

    def is_rational(self) -> bool:
        return self.v.is_zero()

    def is_zero(self) -> bool:
        return self.u.is_zero() and self.v.is_zero()

    def clear_denominators(self) -> tuple[SurdElem, int]:
        """Return ``(e, d)`` with ``e`` over Z[x] and ``self == e / d``, d > 0."""
        d = self.u.denominator_lcm()
        dv = self.v.denominator_lcm()
        d = d * dv // math.gcd(d, dv)
        return SurdElem(self.u * d, self.v * d), d

    def __call__(self, x: float) -> float:
        return float(self.u(x)) + float(self.v(x)) * math.sqrt(x * x + 4)

    def __str__(self) -> str:
        if self.v.is_zero():
            return str(self.u)
        return f"({self.u}) + ({self.v})*s"


@dataclass(frozen=True)
class SurdFrac:
    """Quotient ``num / den`` with ``num`` a SurdElem and ``den`` a nonzero Q[x] polynomial.

    Division by a SurdElem multiplies through by its conjugate, so the
    denominator always stays rational.  No gcd reduction is attempted;
    equality is decided by cross-multiplication.
    """

    num: SurdElem
    den: Poly = field(default_factory=lambda: Poly((1,)))

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("SurdFrac with zero denominator")

    @classmethod
    def quotient(cls, a, b) -> SurdFrac:
        a = _as_frac(a)
        b = _as_frac(b)
        nb = b.num.norm()
        if nb.is_zero():
            raise ZeroDivisionError("division by a zero-norm surd element")
        return cls(a.num * b.num.conj() * b.den, a.den * nb)

    def __add__(self, other) -> SurdFrac:
        o = _as_frac(other)
        if o.den == self.den:
            return SurdFrac(self.num + o.num, self.den)
        return SurdFrac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> SurdFrac:
        return SurdFrac(-self.num, self.den)

    def __sub__(self, other) -> SurdFrac:
        return self + (-_as_frac(other))

    def __rsub__(self, other) -> SurdFrac:
        return _as_frac(other) - self

    def __mul__(self, other) -> SurdFrac:
        o = _as_frac(other)
        return SurdFrac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> SurdFrac:
        return SurdFrac.quotient(self, other)

    def __pow__(self, k: int) -> SurdFrac:
        if k < 0:
            return SurdFrac.quotient(1, self ** (-k))
        return SurdFrac(self.num ** k, self.den ** k)

    def residual(self, other) -> SurdElem:
        """Numerator of ``self - other`` after cross-multiplication (zero iff equal)."""
        o = _as_frac(other)
        return self.num * o.den - o.num * self.den

    def equals(self, other) -> bool:
        return self.residual(other).is_zero()

    def reflect(self) -> SurdFrac:
        return SurdFrac(self.num.reflect(), self.den.reflect())


def _as_frac(a) -> SurdFrac:
    if isinstance(a, SurdFrac):
        return a
    if isinstance(a, SurdElem):
        return SurdFrac(a)
    if isinstance(a, (Poly, int, Fraction)):
        return SurdFrac(SurdElem(Poly._coerce(a), Poly()))
    raise TypeError(f"cannot treat {type(a).__name__} as a surd fraction")


# -- bipartite coefficient form ----------------------------------------------

class NotBipartiteForm(ValueError):
    pass


class InvariantViolation(ArithmeticError):
    pass


def bipartite_b_coeffs(p: Poly) -> list[int]:
    """Sign-normalised even coefficients b_2k = (-1)^k a_2k of a bipartite charpoly.

    ``a_j`` is the coefficient of x^(n-j).  Raises ``NotBipartiteForm`` if
    any odd-indexed ``a_j`` is nonzero and ``InvariantViolation`` if some
    b_2k comes out negative.
    """
    n = p.degree
    if n < 0:
        raise NotBipartiteForm("zero polynomial")
    for j in range(1, n + 1, 2):
        if p[n - j] != 0:
            raise NotBipartiteForm(f"a_{j} = {p[n - j]} is nonzero")
    b = []
    for k in range(n // 2 + 1):
        val = (-1) ** k * p[n - 2 * k]
        if val < 0:
            raise InvariantViolation(f"b_{2 * k} = {val} < 0")
        b.append(val)
    return b


def is_bipartite_form(p: Poly) -> bool:
    n = p.degree
    return n >= 0 and all(p[n - j] == 0 for j in range(1, n + 1, 2))


# -- log |phi(ix)| -----------------------------------------------------------

def _log_int(c: int) -> float:
    return math.log(c) if c > 0 else -math.inf


class ImagAxisLog:
    """Evaluator for log|p(ix)| at real x, vectorised over numpy arrays.

    For bipartite-form ``p`` (only even a_j nonzero) the value is
    ``log sum_k b_2k |x|^(n-2k)``, accumulated in decreasing exponent order
    with a running maximum, so degrees in the hundreds do not overflow.
    Anything else goes through a scaled complex Horner scheme.

    A zero of |p(ix)| (only possible at x = 0) evaluates to ``-inf``.
    """

    def __init__(self, p: Poly):
        if p.is_zero():
            raise ValueError("log-magnitude of the zero polynomial")
        self.p = p
        self.n = p.degree
        self.bipartite = is_bipartite_form(p) and p.leading > 0
        if self.bipartite:
            try:
                b = bipartite_b_coeffs(p)
            except InvariantViolation:
                self.bipartite = False
        if self.bipartite:
            ks = [k for k, c in enumerate(b) if c != 0]
            self._ks = np.array(ks, dtype=float)
            self._logb = np.array([_log_int(b[k]) for k in ks])
        else:
            n = self.n
            # p(ix) = sum_j c_j i^j x^j
            self._low = np.array(
                [complex(float(p[j])) * 1j ** j for j in range(n + 1)], dtype=complex
            )
            # p(ix) / (ix)^n = sum_m c_{n-m} (1/(ix))^m
            self._high = np.array([complex(float(p[n - m])) for m in range(n + 1)], dtype=complex)

    # streaming log-sum-exp over the b-terms: term_k = logb_k + e_k * lx
    def _lse(self, lx, exps, start=0):
        m = np.full_like(lx, -np.inf)
        acc = np.zeros_like(lx)
        with np.errstate(invalid="ignore"):
            return self._lse_loop(lx, exps, start, m, acc)

    def _lse_loop(self, lx, exps, start, m, acc):
        for idx in range(start, len(self._logb)):
            e = exps[idx]
            t = self._logb[idx] + (e * lx if e != 0 else 0.0)
            t = np.broadcast_to(t, lx.shape)
            new_m = np.maximum(m, t)
            finite = np.isfinite(new_m)
            scale = np.where(finite, np.exp(np.where(finite, m - new_m, 0.0)), 0.0)
            add = np.where(finite, np.exp(np.where(finite, t - new_m, 0.0)), 0.0)
            acc = acc * scale + add
            m = new_m
        with np.errstate(divide="ignore"):
            return np.where(np.isfinite(m), m + np.log(acc), -np.inf)

    def log_abs(self, x):
        """log|p(ix)|."""
        x = np.asarray(x, dtype=float)
        ax = np.abs(x)
        with np.errstate(divide="ignore"):
            lx = np.log(ax)
        if self.bipartite:
            exps = self.n - 2 * self._ks
            return self._lse(np.atleast_1d(lx), exps).reshape(x.shape)
        flat_x = np.atleast_1d(x)
        flat_out = np.empty(flat_x.shape)
        small = np.abs(flat_x) <= 1.0
        if small.any():
            val = np.polyval(self._low[::-1], flat_x[small])
            with np.errstate(divide="ignore"):
                flat_out[small] = np.log(np.abs(val))
        if (~small).any():
            xl = flat_x[~small]
            flat_out[~small] = self.n * np.log(np.abs(xl)) + self._log_abs_one_plus(xl)
        return flat_out.reshape(np.shape(x))

    def _log_abs_one_plus(self, x):
        # log|1 + w|, w = sum_{m>=1} c_{n-m} (1/(ix))^m, for |x| > 1
        w = 1.0 / (1j * x)
        rest = np.polyval(np.concatenate([self._high[:0:-1], [0.0]]), w)
        return 0.5 * np.log1p(2.0 * rest.real + np.abs(rest) ** 2)

    def log_abs_reduced(self, x):
        """log|p(ix)| - n log|x|, accurate as |x| -> infinity."""
        x = np.asarray(x, dtype=float)
        flat = np.atleast_1d(x)
        out = np.empty(flat.shape)
        big = np.abs(flat) >= 1.0
        if big.any():
            xb = flat[big]
            if self.bipartite:
                lx = np.log(np.abs(xb))
                # k = 0 term is the leading 1
                tail = self._lse(lx, -2.0 * self._ks, start=1)
                out[big] = np.logaddexp(0.0, tail)
            else:
                out[big] = self._log_abs_one_plus(xb)
        if (~big).any():
            xs = flat[~big]
            with np.errstate(divide="ignore", invalid="ignore"):
                out[~big] = self.log_abs(xs) - self.n * np.log(np.abs(xs))
        return out.reshape(x.shape)


def eval_log_magnitude_imag_axis(p: Poly, x):
    """log|p(ix)| for real ``x`` (scalar or array); ``-inf`` at a zero."""
    val = ImagAxisLog(p).log_abs(x)
    return float(val) if np.ndim(val) == 0 else val


def log_ratio_imag_axis(ea: ImagAxisLog, eb: ImagAxisLog, x):
    """log|pa(ix) / pb(ix)| for polynomials of equal degree.

    Below |x| = 1 the plain log magnitudes are subtracted; above, the
    x^n factors are divided out first so the result keeps relative accuracy
    as it decays towards zero.
    """
    if ea.n != eb.n:
        raise ValueError("log ratio needs polynomials of equal degree")
    x = np.asarray(x, dtype=float)
    flat = np.atleast_1d(x)
    out = np.empty(flat.shape)
    big = np.abs(flat) >= 1.0
    if big.any():
        out[big] = ea.log_abs_reduced(flat[big]) - eb.log_abs_reduced(flat[big])
    if (~big).any():
        out[~big] = ea.log_abs(flat[~big]) - eb.log_abs(flat[~big])
    return out.reshape(x.shape)

