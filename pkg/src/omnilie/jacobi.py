"""Biderivation brackets on sections, their graphs, twists and gauge moves.

A biderivation is stored as an antisymmetric matrix over the jet dual
basis, which makes antisymmetry and the induced derivation-valued sharp
map structural.  The bracket-level and graph-level characterizations of
the integrability condition are both implemented and cross-checked: the
bracket route decides exactly on the spanning family of monomials of
total degree two, matching the graph involutivity test.
"""

from __future__ import annotations

import itertools

from .errors import NonInvertible, NotClosed
from .gauge import Derivation, commutator
from .atiyah import (
    AtiyahForm,
    contract,
    differential,
    evaluate,
    lie_derivative,
)
from .dcourant import DSection
from .observables import CheckResult, Subbundle, is_involutive
from .scalar import Scalar, monomials_upto, Polynomial
from . import linalg


class JacobiBiderivation:
    """Antisymmetric matrix over the dual basis directions 1..n, unit."""

    __slots__ = ("n", "matrix")

    def __init__(self, n, matrix):
        matrix = tuple(tuple(row) for row in matrix)
        if len(matrix) != n + 1 or any(len(row) != n + 1 for row in matrix):
            raise ValueError("the matrix must be (n+1) x (n+1)")
        for a in range(n + 1):
            for b in range(a, n + 1):
                if not (matrix[a][b] + matrix[b][a]).is_zero():
                    raise ValueError("the matrix must be antisymmetric")
        self.n = n
        self.matrix = matrix

    @classmethod
    def zero(cls, n):
        z = Scalar.zero(n)
        return cls(n, [[z] * (n + 1) for _ in range(n + 1)])

    @classmethod
    def from_entries(cls, n, entries):
        """Build from {(a, b): Scalar} for a < b; antisymmetry is filled in."""
        z = Scalar.zero(n)
        matrix = [[z] * (n + 1) for _ in range(n + 1)]
        for (a, b), value in entries.items():
            matrix[a][b] = value
            matrix[b][a] = -value
        return cls(n, matrix)

    @classmethod
    def from_closed_form(cls, omega):
        """The bracket induced by a closed nondegenerate 2-form.

        Solves the contraction equation for each jet basis direction, so
        the induced bracket on sections contracts the first Hamiltonian
        derivation into the second differential.
        """
        n = omega.n
        if omega.degree != 2:
            raise ValueError("the inducing form must have degree 2")
        if not differential(omega).is_zero():
            raise NotClosed("the inducing form must be closed")
        flat = [
            [
                evaluate(omega, Derivation.basis(n, t), Derivation.basis(n, a))
                for t in range(n + 1)
            ]
            for a in range(n + 1)
        ]
        inv = linalg.inverse(flat)
        if inv is None:
            raise NonInvertible("the inducing form is degenerate")
        matrix = [[-inv[a][b] for b in range(n + 1)] for a in range(n + 1)]
        return cls(n, matrix)

    def pair(self, alpha, beta):
        """Value on two 1-forms."""
        n = self.n
        total = Scalar.zero(n)
        for a in range(n + 1):
            ca = alpha.coefficient((a,))
            if ca.is_zero():
                continue
            for b in range(n + 1):
                cb = beta.coefficient((b,))
                if cb.is_zero() or self.matrix[a][b].is_zero():
                    continue
                total = total + self.matrix[a][b] * ca * cb
        return total

    def __eq__(self, other):
        if not isinstance(other, JacobiBiderivation):
            return NotImplemented
        return self.n == other.n and self.matrix == other.matrix

    def __repr__(self):
        rows = "; ".join(
            "[" + ", ".join(str(v) for v in row) + "]" for row in self.matrix
        )
        return f"JacobiBiderivation({rows})"


def jacobi_bracket(J, s, t):
    """Bracket of two sections through their jet prolongations."""
    return J.pair(differential(s), differential(t))


def sharp(J, alpha):
    """The derivation pairing a 1-form against jet prolongations."""
    n = J.n
    sym = []
    for b in range(n):
        total = Scalar.zero(n)
        for a in range(n + 1):
            ca = alpha.coefficient((a,))
            if not ca.is_zero() and not J.matrix[a][b].is_zero():
                total = total + ca * J.matrix[a][b]
        sym.append(total)
    endo = Scalar.zero(n)
    for a in range(n + 1):
        ca = alpha.coefficient((a,))
        if not ca.is_zero() and not J.matrix[a][n].is_zero():
            endo = endo + ca * J.matrix[a][n]
    return Derivation(tuple(sym), endo)


def section_derivation(J, s):
    """The derivation bracketing a fixed section from the left."""
    return sharp(J, differential(s))


def graph(J):
    """Span of (sharp of a dual direction, that dual direction)."""
    n = J.n
    gens = []
    for a in range(n + 1):
        form = AtiyahForm.basis(n, (a,))
        gens.append(DSection(sharp(J, form), form))
    return Subbundle(gens)


def _monomial_scalars(n, max_degree):
    out = []
    for mono in monomials_upto(n, max_degree):
        out.append(Scalar(Polynomial(n, {mono: 1})))
    return out


def _jacobiator(J, s1, s2, s3):
    total = jacobi_bracket(J, s1, jacobi_bracket(J, s2, s3))
    total = total + jacobi_bracket(J, s2, jacobi_bracket(J, s3, s1))
    total = total + jacobi_bracket(J, s3, jacobi_bracket(J, s1, s2))
    return total


def is_jacobi(J, samples=10, seed=0):
    """Decide the bracket's Jacobi identity, reporting both routes.

    Route a is exact: the Jacobiator is a trilinear differential
    operator of order at most two per slot, so it vanishes identically
    iff it vanishes on all monomial triples of total degree <= 2.
    Route b tests involutivity of the graph.  The verdict is their
    shared answer; a seeded random sample is also reported.
    """
    import random as _random

    from .scalar import random_polynomial

    n = J.n
    family = _monomial_scalars(n, 2)
    bracket_ok = True
    witness = None
    for s1, s2, s3 in itertools.product(family, repeat=3):
        residual = _jacobiator(J, s1, s2, s3)
        if not residual.is_zero():
            bracket_ok = False
            witness = {
                "triple": [str(s1), str(s2), str(s3)],
                "jacobiator": str(residual),
            }
            break
    graph_result = is_involutive(graph(J))
    rng = _random.Random(seed)
    random_ok = True
    for _ in range(samples):
        s1 = random_polynomial(n, rng, 2, 2)
        s2 = random_polynomial(n, rng, 2, 2)
        s3 = random_polynomial(n, rng, 2, 2)
        if not _jacobiator(J, s1, s2, s3).is_zero():
            random_ok = False
            break
    ok = bracket_ok and graph_result.ok
    detail = {
        "bracket_route": bracket_ok,
        "graph_route": graph_result.ok,
        "random_route": random_ok,
    }
    if witness is not None:
        detail["witness"] = witness
    elif not graph_result.ok:
        detail["witness"] = graph_result.witness
    return CheckResult(ok, "jacobi", detail)


def twisted_jacobi_residual(J, omega, s1, s2, s3):
    """Cyclic double bracket minus the twist evaluated on the section derivations."""
    if not differential(omega).is_zero():
        raise NotClosed("the twist must be closed")
    lhs = _jacobiator(J, s1, s2, s3)
    rhs = evaluate(
        omega,
        section_derivation(J, s1),
        section_derivation(J, s2),
        section_derivation(J, s3),
    )
    return lhs - rhs


def is_twisted_jacobi(J, omega):
    """Exact decision of the twisted condition on the monomial spanning family."""
    family = _monomial_scalars(J.n, 2)
    for s1, s2, s3 in itertools.product(family, repeat=3):
        residual = twisted_jacobi_residual(J, omega, s1, s2, s3)
        if not residual.is_zero():
            return CheckResult(
                False,
                "twisted-jacobi",
                {"triple": [str(s1), str(s2), str(s3)], "residual": str(residual)},
            )
    return CheckResult(True, "twisted-jacobi")


def twisted_jet_bracket(J, omega, alpha, beta):
    """Bracket of 1-forms transported through the graph of the sharp map."""
    sa = sharp(J, alpha)
    sb = sharp(J, beta)
    return (
        lie_derivative(sa, beta)
        - contract(sb, differential(alpha))
        - contract(sb, contract(sa, omega))
    )


def jet_algebroid_residuals(J, omega, samples, seed, max_degree=1, coeff_bound=2):
    """Skewness, Jacobi, module Leibniz and anchor morphism of the jet bracket."""
    import random as _random

    from .atiyah import random_form
    from .scalar import random_polynomial

    rng = _random.Random(seed)
    n = J.n
    entries = []

    def bracket(a, b):
        return twisted_jet_bracket(J, omega, a, b)

    for case in range(samples):
        al = random_form(n, 1, rng, max_degree, coeff_bound)
        be = random_form(n, 1, rng, max_degree, coeff_bound)
        ga = random_form(n, 1, rng, max_degree, coeff_bound)
        f = random_polynomial(n, rng, max_degree, coeff_bound)

        def put(kind, value):
            ok = value.is_zero()
            entries.append(
                (
                    f"{kind}[{case}]",
                    ok,
                    None if ok else {"kind": kind, "residual": str(value)},
                )
            )

        put("skew", bracket(al, be) + bracket(be, al))
        put(
            "jacobi",
            bracket(al, bracket(be, ga))
            - bracket(bracket(al, be), ga)
            - bracket(be, bracket(al, ga)),
        )
        put(
            "leibniz",
            bracket(al, be.scale(f))
            - bracket(al, be).scale(f)
            - be.scale(sharp(J, al).symbol_apply(f)),
        )
        anchor_res = commutator(sharp(J, al), sharp(J, be)) - sharp(
            J, bracket(al, be)
        )
        ok = anchor_res.is_zero()
        entries.append(
            (
                f"anchor[{case}]",
                ok,
                None if ok else {"kind": "anchor", "residual": str(anchor_res)},
            )
        )
    return entries


def _sharp_matrix(J):
    """Columns = images of the dual basis in derivation coordinates."""
    n = J.n
    return [[J.matrix[a][b] for a in range(n + 1)] for b in range(n + 1)]


def _tilde_matrix(b_form):
    """Matrix of contraction against a 2-form, derivations to jet coordinates."""
    n = b_form.n
    return [
        [
            evaluate(b_form, Derivation.basis(n, t), Derivation.basis(n, a))
            for t in range(n + 1)
        ]
        for a in range(n + 1)
    ]


def gauge_jacobi(J, b_form):
    """Transformed biderivation whose graph is the gauge shift of the old graph.

    Raises NonInvertible, carrying the vanishing determinant, when the
    defining jet-bundle map cannot be inverted.
    """
    n = J.n
    M = _sharp_matrix(J)
    N = _tilde_matrix(b_form)
    one = Scalar.one(n)
    zero = Scalar.zero(n)
    NM = linalg.matmul(N, M)
    system = [
        [
            (one if a == b else zero) + NM[a][b]
            for b in range(n + 1)
        ]
        for a in range(n + 1)
    ]
    det = linalg.determinant(system)
    if det.is_zero():
        raise NonInvertible(
            "the jet-bundle endomorphism is singular", determinant=str(det)
        )
    inv = linalg.inverse(system)
    new_sharp = linalg.matmul(M, inv)
    matrix = [
        [new_sharp[b][a] for b in range(n + 1)] for a in range(n + 1)
    ]
    return JacobiBiderivation(n, matrix)


def dirac_gauge(xi, b_form):
    """Gauge shift of an order-1 subbundle by a closed 2-form."""
    if xi.p != 1:
        raise ValueError("gauge shifts act on order-1 subbundles")
    if not differential(b_form).is_zero():
        raise NotClosed("the gauge form must be closed")
    return Subbundle(
        [
            DSection(g.der, g.form + contract(g.der, b_form))
            for g in xi.generators
        ]
    )


def span_equal(xi1, xi2):
    """Mutual membership of generators plus equal rank."""
    if xi1.cached_rank != xi2.cached_rank:
        return False
    return all(xi2.contains(g) is not None for g in xi1.generators) and all(
        xi1.contains(g) is not None for g in xi2.generators
    )


def find_noninvertible_pair(n, bound=2):
    """Deterministic search for a gauge move with vanishing determinant.

    Scans biderivations and 2-forms with small constant or degree-one
    coefficients in enumeration order and returns the first singular
    pair; used by the negative-control cases.
    """
    from .atiyah import index_subsets

    one = Scalar.one(n)
    j_candidates = []
    for a in range(n + 1):
        for b in range(a + 1, n + 1):
            j_candidates.append(
                JacobiBiderivation.from_entries(n, {(a, b): one})
            )
    form_keys = index_subsets(n, 2)
    for J in j_candidates:
        for key in form_keys:
            for c in range(1, bound + 1):
                for sign in (1, -1):
                    b_form = AtiyahForm(
                        n, 2, {key: Scalar.from_fraction(n, sign * c)}
                    )
                    try:
                        gauge_jacobi(J, b_form)
                    except NonInvertible:
                        return J, b_form
    return None
