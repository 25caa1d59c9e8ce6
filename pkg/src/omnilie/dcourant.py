"""Sections of derivations paired with forms, and their bracket calculus.

Order-p sections combine a derivation with a degree-p form.  They carry
a symmetric form-valued pairing, the (non-skew) Dorfman-Jacobi bracket,
its skew-symmetrization, an optional closed 3-form twist at order 1,
gauge transformations by 2-forms, and the connection/curvature calculus
of the exact structures.  The axiom checker certifies the five bracket
axioms on seeded random sections and reports witnesses on failure.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import OrderMismatch, TwistArityError
from .gauge import Derivation, commutator, random_derivation
from .atiyah import (
    AtiyahForm,
    as_form,
    contract,
    differential,
    index_subsets,
    lie_derivative,
    random_form,
)
from .scalar import Scalar, random_polynomial


class DSection:
    """A derivation together with a degree-p form."""

    __slots__ = ("n", "der", "form")

    def __init__(self, der, form):
        if der.n != form.n:
            raise ValueError("derivation and form over different variable counts")
        self.n = der.n
        self.der = der
        self.form = form

    @property
    def p(self):
        return self.form.degree

    @classmethod
    def zero(cls, n, p):
        return cls(Derivation.zero(n), AtiyahForm.zero(n, p))

    def is_zero(self):
        return self.der.is_zero() and self.form.is_zero()

    def __add__(self, other):
        if not isinstance(other, DSection):
            return NotImplemented
        return DSection(self.der + other.der, self.form + other.form)

    def __sub__(self, other):
        if not isinstance(other, DSection):
            return NotImplemented
        return DSection(self.der - other.der, self.form - other.form)

    def __neg__(self):
        return DSection(-self.der, -self.form)

    def scale(self, f):
        return DSection(self.der.scale(f), self.form.scale(f))

    def __eq__(self, other):
        if not isinstance(other, DSection):
            return NotImplemented
        return self.der == other.der and self.form == other.form

    def __hash__(self):
        return hash((self.der, self.form))

    def __str__(self):
        return f"({self.der} ; {self.form})"

    def __repr__(self):
        return f"DSection({self})"


def _check_orders(e1, e2):
    if e1.p != e2.p or e1.n != e2.n:
        raise OrderMismatch(
            f"sections of order {e1.p} and {e2.p} cannot be combined"
        )


def _check_twist(twist, p, n):
    if twist is None:
        return
    if p != 1:
        raise TwistArityError("twists are only defined at order 1")
    if twist.degree != 3 or twist.n != n:
        raise TwistArityError("a twist must be a degree-3 form over the same model")


def pairing(e1, e2):
    """Symmetric pairing: contract each derivation into the other form."""
    _check_orders(e1, e2)
    return contract(e1.der, e2.form) + contract(e2.der, e1.form)


def dorfman(e1, e2, twist=None):
    """The (non-skew) bracket; optionally twisted by a degree-3 form at order 1."""
    _check_orders(e1, e2)
    _check_twist(twist, e1.p, e1.n)
    form = lie_derivative(e1.der, e2.form) - contract(
        e2.der, differential(e1.form)
    )
    if twist is not None:
        form = form - contract(e2.der, contract(e1.der, twist))
    return DSection(commutator(e1.der, e2.der), form)


def courant(e1, e2, twist=None):
    """Skew-symmetrization: the bracket minus half the differential of the pairing."""
    rough = dorfman(e1, e2, twist)
    correction = differential(pairing(e1, e2)).scale(Fraction(1, 2))
    return DSection(rough.der, rough.form - correction)


def script_D(s):
    """The degree map at order 1: a scalar goes to (0, its differential)."""
    return DSection(Derivation.zero(s.nvars), differential(s))


def gauge_auto(b_form, e):
    """Gauge transformation by a 2-form at order 1: shift the form by contraction."""
    if e.p != 1:
        raise OrderMismatch("gauge transformations act on order-1 sections")
    return DSection(e.der, e.form + contract(e.der, b_form))


def random_section(n, p, rng, max_degree, coeff_bound):
    return DSection(
        random_derivation(n, rng, max_degree, coeff_bound),
        random_form(n, p, rng, max_degree, coeff_bound),
    )


class LCourantStructure:
    """A bracket/pairing/anchor bundle on order-1 sections, optionally twisted."""

    __slots__ = ("name", "n", "twist")

    def __init__(self, name, n, twist=None):
        _check_twist(twist, 1, n)
        self.name = name
        self.n = n
        self.twist = twist

    @classmethod
    def omni(cls, n):
        return cls("omni", n)

    @classmethod
    def twisted(cls, twist):
        return cls("twisted", twist.n, twist)

    @property
    def p(self):
        return 1

    def bracket(self, e1, e2):
        return dorfman(e1, e2, self.twist)

    def skew_bracket(self, e1, e2):
        return courant(e1, e2, self.twist)

    def pairing(self, e1, e2):
        return pairing(e1, e2)

    def anchor(self, e):
        return e.der

    def coboundary(self, s):
        return script_D(s)

    def trilinear(self, e1, e2, e3):
        """The scalar one-sixth cyclic pairing of skew brackets."""
        total = Scalar.zero(self.n)
        for a, b, c in ((e1, e2, e3), (e2, e3, e1), (e3, e1, e2)):
            total = total + pairing(self.skew_bracket(a, b), c).scalar()
        return total * Fraction(1, 6)

    def random_section(self, rng, max_degree, coeff_bound):
        return random_section(self.n, 1, rng, max_degree, coeff_bound)

    def __repr__(self):
        return f"LCourantStructure({self.name}, n={self.n})"


def _axiom_residuals(structure, e1, e2, e3, f):
    """The five bracket-axiom residuals on a fixed input tuple."""
    br = structure.bracket
    pair = structure.pairing
    res = {}
    res["LC1"] = br(e1, br(e2, e3)) - br(br(e1, e2), e3) - br(e2, br(e1, e3))
    sym = structure.anchor(e1).symbol_apply(f)
    res["LC2"] = br(e1, e2.scale(f)) - br(e1, e2).scale(f) - e2.scale(sym)
    res["LC3"] = commutator(structure.anchor(e1), structure.anchor(e2)) - (
        structure.anchor(br(e1, e2))
    )
    res["LC4"] = br(e1, e1) - structure.coboundary(
        pair(e1, e1).scalar() * Fraction(1, 2)
    )
    res["LC5"] = (
        as_form(structure.anchor(e1).apply(pair(e2, e3).scalar()))
        - pair(br(e1, e2), e3)
        - pair(e2, br(e1, e3))
    )
    return res


def lcourant_axioms(structure, samples, seed, max_degree=2, coeff_bound=3):
    """Check the five axioms on seeded random triples; returns report entries.

    Each entry is (label, ok, witness) with the witness carrying a
    printable record of the inputs and the first nonzero residual.
    """
    import random as _random

    entries = []
    rng = _random.Random(seed)
    for case in range(samples):
        e1 = structure.random_section(rng, max_degree, coeff_bound)
        e2 = structure.random_section(rng, max_degree, coeff_bound)
        e3 = structure.random_section(rng, max_degree, coeff_bound)
        f = random_polynomial(structure.n, rng, max_degree, coeff_bound)
        residuals = _axiom_residuals(structure, e1, e2, e3, f)
        for label, value in residuals.items():
            ok = value.is_zero()
            witness = None
            if not ok:
                witness = {
                    "axiom": label,
                    "case": case,
                    "inputs": [str(e1), str(e2), str(e3), str(f)],
                    "residual": str(value),
                }
            entries.append((f"{label}[{case}]", ok, witness))
    return entries


class Connection:
    """An isotropic right splitting of an exact structure, encoded by a 2-form."""

    __slots__ = ("beta",)

    def __init__(self, beta):
        if beta.degree != 2:
            raise ValueError("a connection is encoded by a degree-2 form")
        self.beta = beta

    @classmethod
    def zero(cls, n):
        return cls(AtiyahForm.zero(n, 2))

    def apply(self, delta):
        return DSection(delta, contract(delta, self.beta))

    __call__ = apply

    def shifted(self, theta):
        # direction chosen so the curvature moves by +d(theta)
        return Connection(self.beta - theta)


def curvature(connection, structure):
    """The closed 3-form measuring the failure of the splitting to be flat.

    Values on basis triples assemble the coefficient table; the sign is
    normalized so the zero splitting of a twisted structure returns the
    twist itself.
    """
    n = structure.n
    basis = [Derivation.basis(n, t) for t in range(n + 1)]
    lifted = [connection.apply(d) for d in basis]
    coeffs = {}
    for key in index_subsets(n, 3):
        i, j, k = key
        value = -pairing(
            structure.skew_bracket(lifted[i], lifted[j]), lifted[k]
        ).scalar()
        if not value.is_zero():
            coeffs[key] = value
    return AtiyahForm(n, 3, coeffs)
