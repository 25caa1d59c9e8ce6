"""Derivations of the trivialized line bundle.

A derivation pairs a vector field (its symbol) with a multiplication
part, acting on sections by ``delta(s) = sum a_i d_i s + endo * s``.
With the bundle trivialized, the space of derivations is the free
module of rank n+1 spanned by the coordinate derivations d_1..d_n and
the unit derivation, which acts as the identity on sections and is
central for the commutator.
"""

from __future__ import annotations

from fractions import Fraction

from .scalar import Scalar, random_polynomial


class Derivation:
    """A first-order differential operator on sections: (symbol, endo)."""

    __slots__ = ("n", "symbol_coeffs", "endo")

    def __init__(self, symbol_coeffs, endo):
        self.symbol_coeffs = tuple(symbol_coeffs)
        self.endo = endo
        self.n = endo.nvars
        if len(self.symbol_coeffs) != self.n:
            raise ValueError("symbol coefficient count must equal the variable count")

    @classmethod
    def zero(cls, n):
        z = Scalar.zero(n)
        return cls((z,) * n, z)

    @classmethod
    def unit(cls, n):
        """The unit derivation: zero symbol, identity action on sections."""
        return cls((Scalar.zero(n),) * n, Scalar.one(n))

    @classmethod
    def partial(cls, n, index):
        """The coordinate derivation d/dx_index (1-based)."""
        coeffs = [Scalar.zero(n)] * n
        coeffs[index - 1] = Scalar.one(n)
        return cls(tuple(coeffs), Scalar.zero(n))

    @classmethod
    def basis(cls, n, t):
        """Basis element by flat index: t in 0..n-1 gives d_(t+1), t == n the unit."""
        if t == n:
            return cls.unit(n)
        return cls.partial(n, t + 1)

    def coefficient(self, t):
        """The coefficient along basis direction t (t == n is the unit slot)."""
        if t == self.n:
            return self.endo
        return self.symbol_coeffs[t]

    def apply(self, s):
        """Act on a section: symbol part differentiates, endo part multiplies."""
        out = self.endo * s
        for i, a in enumerate(self.symbol_coeffs):
            if not a.is_zero():
                out = out + a * s.derive(i + 1)
        return out

    __call__ = apply

    def symbol_apply(self, f):
        """Act on a function by the symbol alone (no multiplication part)."""
        out = Scalar.zero(self.n)
        for i, a in enumerate(self.symbol_coeffs):
            if not a.is_zero():
                out = out + a * f.derive(i + 1)
        return out

    def is_zero(self):
        return self.endo.is_zero() and all(a.is_zero() for a in self.symbol_coeffs)

    def __add__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return Derivation(
            tuple(a + b for a, b in zip(self.symbol_coeffs, other.symbol_coeffs)),
            self.endo + other.endo,
        )

    def __sub__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Derivation(
            tuple(-a for a in self.symbol_coeffs), -self.endo
        )

    def scale(self, f):
        """Multiply by a scalar or rational: module structure over sections."""
        if isinstance(f, (int, Fraction)):
            f = Scalar.from_fraction(self.n, f)
        return Derivation(
            tuple(f * a for a in self.symbol_coeffs), f * self.endo
        )

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return (
            self.symbol_coeffs == other.symbol_coeffs and self.endo == other.endo
        )

    def __hash__(self):
        return hash((self.symbol_coeffs, self.endo))

    def __str__(self):
        parts = []
        for i, a in enumerate(self.symbol_coeffs):
            if not a.is_zero():
                parts.append(f"({a})*d{i + 1}")
        if not self.endo.is_zero():
            parts.append(f"({self.endo})*unit")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"Derivation({self})"


def symbol(delta):
    """The vector-field part of a derivation."""
    return delta.symbol_coeffs


def commutator(d1, d2):
    """Commutator of derivations: ([X, Y], X(g) - Y(f)) for (X, f), (Y, g)."""
    n = d1.n
    sym = []
    for i in range(n):
        c = d1.symbol_apply(d2.symbol_coeffs[i]) - d2.symbol_apply(
            d1.symbol_coeffs[i]
        )
        sym.append(c)
    endo = d1.symbol_apply(d2.endo) - d2.symbol_apply(d1.endo)
    return Derivation(tuple(sym), endo)


def random_derivation(n, rng, max_degree, coeff_bound):
    coeffs = tuple(
        random_polynomial(n, rng, max_degree, coeff_bound) for _ in range(n)
    )
    return Derivation(coeffs, random_polynomial(n, rng, max_degree, coeff_bound))
