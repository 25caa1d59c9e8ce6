"""Exact coefficient arithmetic: multivariate rational functions over Q.

A :class:`Scalar` is a quotient of two multivariate polynomials with
rational coefficients in variables ``x1..xn``.  It stands in for both
smooth functions and line-bundle sections of the trivialized model, so
every other module builds on it.  Scalars are kept canonical (numerator
and denominator coprime, denominator monic under graded lexicographic
order), which makes structural equality coincide with mathematical
equality and lets identity checks certify literal zero.

Only field arithmetic, partial differentiation and gcd-based
normalization are provided: no factorization, no floating point, no
transcendental functions.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .errors import DivisionByZero, IndexOutOfRange

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _grlex(mono):
    return (sum(mono), mono)


def monomials_upto(n, max_degree):
    """All exponent tuples in n variables with total degree <= max_degree,
    in ascending graded lexicographic order."""
    out = [
        m
        for m in itertools.product(range(max_degree + 1), repeat=n)
        if sum(m) <= max_degree
    ]
    out.sort(key=_grlex)
    return out


class Polynomial:
    """Sparse multivariate polynomial over Q.

    ``terms`` maps exponent tuples of length ``nvars`` to nonzero
    Fractions.  Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {
            tuple(m): Fraction(c) for m, c in (terms or {}).items() if c
        }

    @classmethod
    def _raw(cls, nvars, terms):
        # Internal constructor trusting that ``terms`` is clean.
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars, value):
        value = Fraction(value)
        if not value:
            return cls.zero(nvars)
        return cls._raw(nvars, {(0,) * nvars: value})

    @classmethod
    def one(cls, nvars):
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars, index):
        """The polynomial x_index, index 1-based."""
        if not 1 <= index <= nvars:
            raise IndexOutOfRange(f"variable index {index} outside 1..{nvars}")
        mono = tuple(1 if i == index - 1 else 0 for i in range(nvars))
        return cls._raw(nvars, {mono: _ONE})

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(m) == 0 for m in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, _ZERO)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def leading(self):
        """(monomial, coefficient) of the graded-lex leading term."""
        mono = max(self.terms, key=_grlex)
        return mono, self.terms[mono]

    def monic(self):
        if not self.terms:
            return self
        _, lc = self.leading()
        if lc == 1:
            return self
        return self.scale(Fraction(1, 1) / lc)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(
            self.nvars, {m: coef * c for m, coef in self.terms.items()}
        )

    def __add__(self, other):
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, _ZERO) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial._raw(self.nvars, terms)

    def __neg__(self):
        return Polynomial._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.terms or not other.terms:
            return Polynomial.zero(self.nvars)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = terms.get(m, _ZERO) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return Polynomial._raw(self.nvars, terms)

    def derivative(self, index):
        """Partial derivative with respect to x_index (1-based)."""
        if not 1 <= index <= self.nvars:
            raise IndexOutOfRange(f"variable index {index} outside 1..{self.nvars}")
        i = index - 1
        terms = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                dm = m[:i] + (e - 1,) + m[i + 1 :]
                terms[dm] = terms.get(dm, _ZERO) + c * e
        return Polynomial._raw(self.nvars, {m: c for m, c in terms.items() if c})

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __str__(self):
        return _render_poly(self)

    def __repr__(self):
        return f"Polynomial({self})"


def _render_poly(p):
    if not p.terms:
        return "0"
    parts = []
    for mono in sorted(p.terms, key=_grlex, reverse=True):
        c = p.terms[mono]
        factors = []
        for i, e in enumerate(mono):
            if e == 1:
                factors.append(f"x{i + 1}")
            elif e > 1:
                factors.append(f"x{i + 1}^{e}")
        if not factors:
            body = str(abs(c))
        elif abs(c) == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(abs(c))] + factors)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# ---------------------------------------------------------------------------
# gcd machinery
#
# Multivariate gcd by recursion on the last variable: write p in Q[x1..xk]
# as a univariate polynomial in xk with coefficients in Q[x1..x(k-1)], take
# contents out, and run a primitive pseudo-remainder sequence.  Inputs here
# stay small (n <= 4, low degree), so the classical algorithm is plenty.
# ---------------------------------------------------------------------------


def divexact(f, d):
    """Exact polynomial division f / d; raises if d does not divide f."""
    if d.is_zero():
        raise DivisionByZero("exact division by the zero polynomial")
    if f.is_zero():
        return f
    dm, dc = d.leading()
    q = {}
    rem = dict(f.terms)
    while rem:
        rm = max(rem, key=_grlex)
        rc = rem[rm]
        qm = tuple(a - b for a, b in zip(rm, dm))
        if any(e < 0 for e in qm):
            raise ArithmeticError("inexact polynomial division")
        qc = rc / dc
        q[qm] = q.get(qm, _ZERO) + qc
        for m, c in d.terms.items():
            mm = tuple(a + b for a, b in zip(qm, m))
            s = rem.get(mm, _ZERO) - qc * c
            if s:
                rem[mm] = s
            else:
                rem.pop(mm, None)
    return Polynomial._raw(f.nvars, {m: c for m, c in q.items() if c})


def _gcd_univariate(f, g):
    # Euclid over Q for nvars == 1.
    a = {m[0]: c for m, c in f.terms.items()}
    b = {m[0]: c for m, c in g.terms.items()}

    def mod(x, y):
        dy = max(y)
        lcy = y[dy]
        x = dict(x)
        while x and max(x) >= dy:
            dx = max(x)
            q = x[dx] / lcy
            for k, c in y.items():
                kk = k + dx - dy
                s = x.get(kk, _ZERO) - q * c
                if s:
                    x[kk] = s
                else:
                    x.pop(kk, None)
        return x

    while b:
        a, b = b, mod(a, b)
    poly = Polynomial._raw(1, {(k,): c for k, c in a.items()})
    return poly.monic()


def _split_last(p):
    """Polynomial in n vars -> dict: degree in xn -> Polynomial in n-1 vars."""
    out = {}
    for m, c in p.terms.items():
        k = m[-1]
        coef = out.setdefault(k, {})
        coef[m[:-1]] = c
    return {
        k: Polynomial._raw(p.nvars - 1, terms) for k, terms in out.items()
    }


def _join_last(coeffs, nvars):
    terms = {}
    for k, poly in coeffs.items():
        for m, c in poly.terms.items():
            terms[m + (k,)] = c
    return Polynomial._raw(nvars, terms)


def _uni_clean(d):
    return {k: p for k, p in d.items() if not p.is_zero()}


def _uni_prem(A, B):
    """Pseudo-remainder of A by B (both dicts degree -> coefficient poly)."""
    dB = max(B)
    lcB = B[dB]
    R = dict(A)
    while R and max(R) >= dB:
        dR = max(R)
        lcR = R[dR]
        newR = {k: c * lcB for k, c in R.items()}
        for k, c in B.items():
            kk = k + dR - dB
            s = newR.get(kk, Polynomial.zero(c.nvars)) - c * lcR
            newR[kk] = s
        R = _uni_clean(newR)
    return R


def _uni_content(A):
    polys = list(A.values())
    g = polys[0]
    for p in polys[1:]:
        g = poly_gcd(g, p)
        if g.is_constant():
            break
    return g.monic()


def _uni_primitive(A):
    if not A:
        return A
    cont = _uni_content(A)
    if cont.is_constant():
        lc = cont.constant_value()
        if lc == 1:
            return A
        return {k: p.scale(1 / lc) for k, p in A.items()}
    return {k: divexact(p, cont) for k, p in A.items()}


def poly_gcd(f, g):
    """Monic gcd of two polynomials under graded lexicographic order."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return Polynomial.one(f.nvars)
    if f.nvars == 1:
        return _gcd_univariate(f, g)
    A = _split_last(f)
    B = _split_last(g)
    cA = _uni_content(A)
    cB = _uni_content(B)
    c = poly_gcd(cA, cB)
    A = _uni_primitive(A)
    B = _uni_primitive(B)
    while B:
        R = _uni_prem(A, B)
        A, B = B, _uni_primitive(R)
    lifted = _join_last(A, f.nvars)
    if not c.is_constant() or c.constant_value() != 1:
        lifted = lifted * _lift(c)
    return lifted.monic()


def _lift(p):
    """Embed a polynomial in n-1 vars into n vars (exponent 0 in xn)."""
    return Polynomial._raw(
        p.nvars + 1, {m + (0,): c for m, c in p.terms.items()}
    )


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------


class Scalar:
    """Exact rational function num/den in canonical form.

    Canonical means: num and den coprime, den monic under graded lex,
    zero represented as 0/1.  Construction normalizes, after which
    ``==`` is plain structural comparison.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Polynomial.one(num.nvars)
        if den.is_zero():
            raise DivisionByZero("scalar with zero denominator")
        num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @classmethod
    def _canonical(cls, num, den):
        s = object.__new__(cls)
        s.num = num
        s.den = den
        return s

    @property
    def nvars(self):
        return self.num.nvars

    @classmethod
    def zero(cls, n):
        return cls._canonical(Polynomial.zero(n), Polynomial.one(n))

    @classmethod
    def one(cls, n):
        return cls._canonical(Polynomial.one(n), Polynomial.one(n))

    @classmethod
    def from_fraction(cls, n, value):
        return cls._canonical(
            Polynomial.constant(n, Fraction(value)), Polynomial.one(n)
        )

    @classmethod
    def variable(cls, n, index):
        """The coordinate function x_index (1-based)."""
        return cls._canonical(
            Polynomial.variable(n, index), Polynomial.one(n)
        )

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num == self.den

    def is_polynomial(self):
        return self.den == Polynomial.one(self.nvars)

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.nvars != self.nvars:
                raise ValueError("scalars over different variable counts")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.from_fraction(self.nvars, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_polynomial() and o.is_polynomial():
            return Scalar._canonical(self.num + o.num, self.den)
        return Scalar(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._canonical(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_polynomial() and o.is_polynomial():
            return Scalar(self.num * o.num)
        return Scalar(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("division by the zero scalar")
        return Scalar(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = Scalar.one(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def derive(self, index):
        """Exact partial derivative with respect to x_index (1-based)."""
        if not 1 <= index <= self.nvars:
            raise IndexOutOfRange(f"variable index {index} outside 1..{self.nvars}")
        if self.is_polynomial():
            return Scalar._canonical(self.num.derivative(index), self.den)
        # quotient rule
        n, d = self.num, self.den
        return Scalar(
            n.derivative(index) * d - n * d.derivative(index), d * d
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.from_fraction(self.nvars, other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"Scalar({self})"


def _normalize(num, den):
    if num.nvars != den.nvars:
        raise ValueError("numerator and denominator over different variable counts")
    n = num.nvars
    if num.is_zero():
        return Polynomial.zero(n), Polynomial.one(n)
    if den.is_constant():
        c = den.constant_value()
        if c == 1:
            return num, den
        return num.scale(1 / c), Polynomial.one(n)
    g = poly_gcd(num, den)
    if not (g.is_constant() and g.constant_value() == 1):
        num = divexact(num, g)
        den = divexact(den, g)
    _, lc = den.leading()
    if lc != 1:
        num = num.scale(1 / lc)
        den = den.scale(1 / lc)
    return num, den


# ---------------------------------------------------------------------------
# free-function forms and random generation
# ---------------------------------------------------------------------------


def derive(a, index):
    """Partial derivative of a scalar with respect to x_index (1-based)."""
    return a.derive(index)


def random_polynomial(n, rng, max_degree, coeff_bound):
    """Random polynomial scalar drawn from an externally seeded RNG."""
    terms = {}
    for mono in monomials_upto(n, max_degree):
        c = rng.randint(-coeff_bound, coeff_bound)
        if c:
            terms[mono] = Fraction(c)
    return Scalar(Polynomial(n, terms))


def random_scalar(n, seed, max_degree, coeff_bound):
    """Deterministic random polynomial: same seed, same scalar."""
    return random_polynomial(n, random.Random(seed), max_degree, coeff_bound)
