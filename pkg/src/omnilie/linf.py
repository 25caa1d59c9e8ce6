"""Truncated strong homotopy structures, their oracle, and morphisms.

Contents: the unshuffle/Koszul sign combinatorics, a generic residual
oracle for the higher coherence identity, the structure constructors
(two- and three-term brackets from an order-1 structure, the semidirect
product of the homotopy representation, the graded observable algebra
of a subbundle, the differential graded Leibniz bracket), morphism
residual checking, and the rescaling and cohomologous-shift
isomorphisms.

Sign conventions, fixed once here: a permutation is a tuple ``perm``
with ``perm[pos]`` the original index; its signature counts inversions;
the Koszul sign multiplies ``(-1)**(d_a*d_b)`` per inversion; the
coherence identity weights each (i, j = n+1-i) block by
``sgn * koszul * (-1)**(i*(j-1))``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import ArityError, Degenerate, NotClosed, ZeroScale
from .gauge import Derivation, commutator, random_derivation
from .atiyah import (
    AtiyahForm,
    as_form,
    contract,
    differential,
    evaluate,
    lie_derivative,
    random_form,
)
from .dcourant import (
    DSection,
    LCourantStructure,
    pairing,
    random_section,
    script_D,
)
from .observables import (
    HamiltonianForm,
    Subbundle,
    graph_of_form,
    observable_bracket,
    observable_bracket_hamiltonian,
    random_hamiltonian,
    section_coordinates,
)
from .scalar import Scalar, random_polynomial
from . import linalg

HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# graded combinatorics
# ---------------------------------------------------------------------------


def unshuffles(i, n):
    """All (i, n-i) unshuffles as 0-based permutation tuples."""
    if not 1 <= i <= n:
        raise ValueError("the first block size must lie in 1..n")
    out = []
    for first in itertools.combinations(range(n), i):
        chosen = set(first)
        rest = tuple(t for t in range(n) if t not in chosen)
        out.append(first + rest)
    return out


def perm_signature(perm):
    """(-1)**inversions."""
    inv = 0
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                inv += 1
    return -1 if inv % 2 else 1


def koszul_sign(perm, degrees):
    """Sign from commuting graded symbols into permuted order."""
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b] and degrees[perm[a]] % 2 and degrees[perm[b]] % 2:
                sign = -sign
    return sign


def kappa(k):
    """Alternating weight of the higher observable brackets."""
    if k % 2 == 0:
        return (-1) ** (k // 2 + 1)
    return (-1) ** ((k - 1) // 2)


# ---------------------------------------------------------------------------
# graded elements and spaces
# ---------------------------------------------------------------------------


class GradedElement:
    __slots__ = ("degree", "payload")

    def __init__(self, degree, payload):
        self.degree = degree
        self.payload = payload

    def is_zero(self):
        return self.payload.is_zero()

    def __repr__(self):
        return f"GradedElement(deg={self.degree}, {self.payload})"


def _scale_payload(x, c):
    if isinstance(x, Scalar):
        return x * c
    return x.scale(c)


def _plain_form(payload):
    """The underlying form of any graded payload kind."""
    if isinstance(payload, HamiltonianForm):
        return payload.alpha
    return as_form(payload)


def ge_add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    if a.degree != b.degree:
        if a.is_zero():
            return b
        if b.is_zero():
            return a
        raise ValueError("adding graded elements of different degree")
    return GradedElement(a.degree, a.payload + b.payload)


def ge_scale(a, c):
    if a is None:
        return None
    return GradedElement(a.degree, _scale_payload(a.payload, c))


def ge_is_zero(a):
    return a is None or a.is_zero()


class ScalarSpace:
    def __init__(self, n):
        self.n = n

    def zero(self):
        return Scalar.zero(self.n)

    def random(self, rng, max_degree, coeff_bound):
        return random_polynomial(self.n, rng, max_degree, coeff_bound)


class TrivialSpace:
    """The zero subspace of scalars (for instance an everywhere-zero kernel)."""

    def __init__(self, n):
        self.n = n

    def zero(self):
        return Scalar.zero(self.n)

    def random(self, rng, max_degree, coeff_bound):
        return Scalar.zero(self.n)


class FormSpace:
    def __init__(self, n, degree):
        self.n = n
        self.degree = degree

    def zero(self):
        return AtiyahForm.zero(self.n, self.degree)

    def random(self, rng, max_degree, coeff_bound):
        return random_form(self.n, self.degree, rng, max_degree, coeff_bound)


class SectionSpace:
    def __init__(self, n, p):
        self.n = n
        self.p = p

    def zero(self):
        return DSection.zero(self.n, self.p)

    def random(self, rng, max_degree, coeff_bound):
        return random_section(self.n, self.p, rng, max_degree, coeff_bound)


class HamiltonianSpace:
    def __init__(self, xi):
        self.xi = xi
        self.n = xi.n

    def zero(self):
        return HamiltonianForm(
            AtiyahForm.zero(self.n, self.xi.p - 1), Derivation.zero(self.n)
        )

    def random(self, rng, max_degree, coeff_bound):
        return random_hamiltonian(self.xi, rng, max_degree, coeff_bound)


# ---------------------------------------------------------------------------
# structures and the oracle
# ---------------------------------------------------------------------------


class LInfinityStructure:
    """Graded spaces plus the bracket family, with an explicit arity bound."""

    def __init__(self, name, spaces, arity, bracket_fn):
        self.name = name
        self.spaces = tuple(spaces)
        self.arity = arity
        self._bracket = bracket_fn

    @property
    def terms(self):
        return len(self.spaces)

    def space(self, degree):
        return self.spaces[degree]

    def l(self, k, elems):
        """The k-th bracket; None encodes the zero of an out-of-complex degree."""
        elems = tuple(elems)
        if len(elems) != k:
            raise ArityError(f"l_{k} applied to {len(elems)} arguments")
        if k > self.arity:
            return None
        return self._bracket(k, elems)

    def zero_element(self, degree):
        return GradedElement(degree, self.spaces[degree].zero())

    def random_element(self, degree, rng, max_degree, coeff_bound):
        return GradedElement(
            degree, self.spaces[degree].random(rng, max_degree, coeff_bound)
        )

    def random_tuple(self, size, rng, max_degree, coeff_bound, degrees=None):
        if degrees is None:
            degrees = [rng.randrange(self.terms) for _ in range(size)]
        return [
            self.random_element(d, rng, max_degree, coeff_bound) for d in degrees
        ]

    def __repr__(self):
        return f"LInfinityStructure({self.name}, terms={self.terms})"


def drop_bracket(structure, k):
    """A sabotaged copy with the k-th bracket removed."""

    def fn(kk, elems):
        if kk == k:
            return None
        return structure._bracket(kk, elems)

    return LInfinityStructure(
        f"{structure.name}-drop-l{k}", structure.spaces, structure.arity, fn
    )


def jacobi_residual(structure, elems):
    """The signed double sum of the coherence identity; zero for real structures."""
    elems = tuple(elems)
    n = len(elems)
    if n < 1:
        raise ArityError("the oracle needs at least one element")
    if n > structure.arity + 1:
        raise ArityError(
            f"identity at n={n} exceeds the arity bound {structure.arity}"
        )
    degrees = [e.degree for e in elems]
    target = sum(degrees) + n - 3
    acc = None
    for i in range(1, n + 1):
        j = n + 1 - i
        if i > structure.arity or j > structure.arity:
            continue
        for perm in unshuffles(i, n):
            inner = structure.l(i, [elems[t] for t in perm[:i]])
            if inner is None or inner.is_zero():
                continue
            outer = structure.l(j, [inner] + [elems[t] for t in perm[i:]])
            if outer is None or outer.is_zero():
                continue
            sign = (
                perm_signature(perm)
                * koszul_sign(perm, degrees)
                * (-1) ** (i * (j - 1))
            )
            acc = ge_add(acc, ge_scale(outer, sign))
    if acc is None and 0 <= target < structure.terms:
        return structure.zero_element(target)
    return acc


# ---------------------------------------------------------------------------
# constructors from an order-1 bracket structure
# ---------------------------------------------------------------------------


def _pair_with_coboundary(structure, e, s):
    return pairing(e, structure.coboundary(s)).scalar() * HALF


def build_two_term(structure):
    """Sections in degree 0, scalars in degree 1, brackets from the structure."""
    n = structure.n
    spaces = (SectionSpace(n, 1), ScalarSpace(n))

    def bracket(k, elems):
        degs = tuple(e.degree for e in elems)
        if k == 1:
            (a,) = elems
            if a.degree == 1:
                return GradedElement(0, structure.coboundary(a.payload))
            return None
        if k == 2:
            a, b = elems
            if degs == (0, 0):
                return GradedElement(
                    0, structure.skew_bracket(a.payload, b.payload)
                )
            if degs == (0, 1):
                return GradedElement(
                    1, _pair_with_coboundary(structure, a.payload, b.payload)
                )
            if degs == (1, 0):
                return GradedElement(
                    1, -_pair_with_coboundary(structure, b.payload, a.payload)
                )
            return None
        if k == 3:
            if degs == (0, 0, 0):
                return GradedElement(
                    1,
                    -structure.trilinear(
                        elems[0].payload, elems[1].payload, elems[2].payload
                    ),
                )
            return None
        return None

    return LInfinityStructure(f"two-term[{structure.name}]", spaces, 3, bracket)


def build_three_term(structure):
    """The two-term brackets padded by the kernel of the degree map.

    The degree map is injective here (the unit contraction recovers a
    scalar from its differential), so the top space is the zero
    subspace and the brackets agree with the two-term ones.
    """
    base = build_two_term(structure)
    n = structure.n
    spaces = base.spaces + (TrivialSpace(n),)

    def bracket(k, elems):
        degs = tuple(e.degree for e in elems)
        if k == 1 and degs == (2,):
            return GradedElement(1, elems[0].payload)
        if any(d == 2 for d in degs):
            return None
        return base._bracket(k, elems)

    return LInfinityStructure(f"three-term[{structure.name}]", spaces, 4, bracket)


# ---------------------------------------------------------------------------
# the homotopy representation of the derivation Lie algebra
# ---------------------------------------------------------------------------


class RepHomotopyData:
    """Action data (mu0, mu1) plus the correction nu on scalars and 1-forms."""

    def __init__(self, n):
        self.n = n
        self._omni = LCourantStructure.omni(n)

    def mu0(self, delta, alpha):
        """Skew bracket of a bare derivation against a 1-form section."""
        return lie_derivative(delta, alpha) - differential(
            evaluate(alpha, delta)
        ).scale(HALF)

    def mu1(self, delta, s):
        return delta.apply(s) * HALF

    def nu(self, d1, d2, alpha):
        return self._omni.trilinear(
            DSection(d1, AtiyahForm.zero(self.n, 1)),
            DSection(d2, AtiyahForm.zero(self.n, 1)),
            DSection(Derivation.zero(self.n), alpha),
        )

    def _coaction(self, delta, phi_of, alpha):
        """(delta . phi)(alpha) for phi valued in maps 1-forms -> scalars."""
        return self.mu1(delta, phi_of(alpha)) - phi_of(self.mu0(delta, alpha))

    def axiom_residuals(self, samples, seed, max_degree=1, coeff_bound=2):
        """Residuals of the two action axioms and the cocycle condition."""
        import random as _random

        rng = _random.Random(seed)
        entries = []
        n = self.n
        for case in range(samples):
            X = random_derivation(n, rng, max_degree, coeff_bound)
            Y = random_derivation(n, rng, max_degree, coeff_bound)
            Z = random_derivation(n, rng, max_degree, coeff_bound)
            alpha = random_form(n, 1, rng, max_degree, coeff_bound)
            s = random_polynomial(n, rng, max_degree, coeff_bound)

            res1 = (
                self.mu0(commutator(X, Y), alpha)
                - self.mu0(X, self.mu0(Y, alpha))
                + self.mu0(Y, self.mu0(X, alpha))
                - differential(self.nu(X, Y, alpha))
            )
            entries.append(
                (
                    f"action-0[{case}]",
                    res1.is_zero(),
                    None if res1.is_zero() else {"residual": str(res1)},
                )
            )
            res2 = (
                self.mu1(commutator(X, Y), s)
                - self.mu1(X, self.mu1(Y, s))
                + self.mu1(Y, self.mu1(X, s))
                - self.nu(X, Y, differential(s))
            )
            entries.append(
                (
                    f"action-1[{case}]",
                    res2.is_zero(),
                    None if res2.is_zero() else {"residual": str(res2)},
                )
            )
            cocycle = Scalar.zero(n)
            for A, B, C in ((X, Y, Z), (Y, Z, X), (Z, X, Y)):
                cocycle = cocycle + self._coaction(
                    A, lambda beta, B=B, C=C: self.nu(B, C, beta), alpha
                )
                cocycle = cocycle - self.nu(commutator(A, B), C, alpha)
            entries.append(
                (
                    f"cocycle[{case}]",
                    cocycle.is_zero(),
                    None if cocycle.is_zero() else {"residual": str(cocycle)},
                )
            )
        return entries


def rep_homotopy_data(n):
    return RepHomotopyData(n)


def build_semidirect(data):
    """Semidirect two-term structure of the homotopy representation."""
    n = data.n
    spaces = (SectionSpace(n, 1), ScalarSpace(n))

    def bracket(k, elems):
        degs = tuple(e.degree for e in elems)
        if k == 1:
            if degs == (1,):
                return GradedElement(0, script_D(elems[0].payload))
            return None
        if k == 2:
            a, b = elems
            if degs == (0, 0):
                ea, eb = a.payload, b.payload
                return GradedElement(
                    0,
                    DSection(
                        commutator(ea.der, eb.der),
                        data.mu0(ea.der, eb.form) - data.mu0(eb.der, ea.form),
                    ),
                )
            if degs == (0, 1):
                return GradedElement(1, data.mu1(a.payload.der, b.payload))
            if degs == (1, 0):
                return GradedElement(1, -data.mu1(b.payload.der, a.payload))
            return None
        if k == 3:
            if degs == (0, 0, 0):
                ea, eb, ec = (e.payload for e in elems)
                total = data.nu(ea.der, eb.der, ec.form)
                total = total + data.nu(eb.der, ec.der, ea.form)
                total = total + data.nu(ec.der, ea.der, eb.form)
                return GradedElement(1, -total)
            return None
        return None

    return LInfinityStructure("semidirect", spaces, 3, bracket)


# ---------------------------------------------------------------------------
# observable algebra of a subbundle
# ---------------------------------------------------------------------------


def observable_linf(xi):
    """The graded observable structure of an isotropic involutive subbundle."""
    n, p = xi.n, xi.p
    spaces = [HamiltonianSpace(xi)]
    for i in range(1, p - 1):
        spaces.append(FormSpace(n, p - 1 - i))
    if p >= 2:
        spaces.append(ScalarSpace(n))
    spaces = tuple(spaces)
    top = p - 1

    def wrap(degree, form):
        if degree == 0:
            raise AssertionError("degree-0 wrapping needs a derivation")
        if degree == top and p >= 2:
            return GradedElement(degree, form.scalar())
        return GradedElement(degree, form)

    def bracket(k, elems):
        degs = tuple(e.degree for e in elems)
        if k == 1:
            (a,) = elems
            if a.degree == 0:
                return None
            value = differential(as_form(a.payload))
            if a.degree == 1:
                return GradedElement(
                    0, HamiltonianForm(value, Derivation.zero(n))
                )
            return wrap(a.degree - 1, value)
        if 2 <= k <= p + 1 and all(d == 0 for d in degs):
            hams = [e.payload for e in elems]
            if k == 2:
                return GradedElement(
                    0, observable_bracket_hamiltonian(hams[0], hams[1]).scale(kappa(2))
                )
            value = observable_bracket(hams[0], hams[1])
            for h in hams[2:]:
                value = contract(h.ham_der, value)
            value = value.scale(kappa(k))
            return wrap(k - 2, value)
        return None

    return LInfinityStructure(f"observables[p={p}]", spaces, p + 1, bracket)


def build_graph_linf(omega):
    """Observable structure of the graph of a closed form."""
    if not differential(omega).is_zero():
        raise NotClosed("the graph construction needs a closed form")
    return observable_linf(graph_of_form(omega))


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------


class LInfMorphism:
    """Chain maps phi0/phi1 plus the skew corrector phi2 on payloads."""

    def __init__(self, phi0, phi1, phi2):
        self.phi0 = phi0
        self.phi1 = phi1
        self.phi2 = phi2


def _payload(ge, space):
    return space.zero() if ge is None else ge.payload


def morphism_residuals(phi, source, target, samples, seed, max_degree=1, coeff_bound=2):
    """Residuals of the three morphism conditions plus chain and skewness."""
    import random as _random

    rng = _random.Random(seed)
    entries = []

    def record(label, value):
        if value is None or isinstance(value, GradedElement):
            ok = ge_is_zero(value)
            shown = None if value is None else value.payload
        else:
            ok = value.is_zero()
            shown = value
        entries.append(
            (label, ok, None if ok else {"residual": str(shown)})
        )

    def tl(k, *payload_degree_pairs):
        return target.l(
            k, [GradedElement(d, pl) for pl, d in payload_degree_pairs]
        )

    for case in range(samples):
        x = source.random_element(0, rng, max_degree, coeff_bound)
        y = source.random_element(0, rng, max_degree, coeff_bound)
        z = source.random_element(0, rng, max_degree, coeff_bound)
        h = (
            source.random_element(1, rng, max_degree, coeff_bound)
            if source.terms > 1
            else GradedElement(1, target.space(1).zero())
        )

        fx, fy, fz = (phi.phi0(e.payload) for e in (x, y, z))
        fh = phi.phi1(h.payload)

        # chain condition
        l1h = source.l(1, [h]) if source.terms > 1 else None
        chain = ge_add(
            GradedElement(0, phi.phi0(_payload(l1h, source.space(0)))),
            ge_scale(tl(1, (fh, 1)), -1),
        )
        record(f"chain[{case}]", chain)

        # skewness of the corrector
        skew = phi.phi2(x.payload, y.payload) + phi.phi2(y.payload, x.payload)
        record(f"phi2-skew[{case}]", skew)

        # first condition
        c1 = ge_add(
            tl(2, (fx, 0), (fy, 0)),
            ge_scale(
                GradedElement(
                    0,
                    phi.phi0(
                        _payload(source.l(2, [x, y]), source.space(0))
                    ),
                ),
                -1,
            ),
        )
        c1 = ge_add(c1, ge_scale(tl(1, (phi.phi2(x.payload, y.payload), 1)), -1))
        record(f"cond1[{case}]", c1)

        # second condition
        c2 = ge_add(
            tl(2, (fx, 0), (fh, 1)),
            GradedElement(
                1,
                -phi.phi1(
                    _payload(
                        source.l(2, [x, h]) if source.terms > 1 else None,
                        source.space(1) if source.terms > 1 else target.space(1),
                    )
                ),
            ),
        )
        c2 = ge_add(
            c2,
            GradedElement(
                1,
                -phi.phi2(x.payload, _payload(l1h, source.space(0))),
            ),
        )
        record(f"cond2[{case}]", c2)

        # third condition
        c3 = tl(3, (fx, 0), (fy, 0), (fz, 0))
        c3 = ge_add(
            c3,
            GradedElement(
                1,
                -phi.phi1(
                    _payload(source.l(3, [x, y, z]), source.space(1))
                ),
            ),
        )
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            lbc = _payload(source.l(2, [b, c]), source.space(0))
            c3 = ge_add(
                c3, GradedElement(1, -phi.phi2(a.payload, lbc))
            )
            c3 = ge_add(
                c3,
                ge_scale(
                    tl(2, (phi.phi0(a.payload), 0), (phi.phi2(b.payload, c.payload), 1)),
                    -1,
                ),
            )
        record(f"cond3[{case}]", c3)
    return entries


def anchor_extension_algebra(b_form):
    """The Lie algebra of order-0 sections twisted by a 2-form, as a 2-term structure."""
    n = b_form.n
    spaces = (SectionSpace(n, 0), TrivialSpace(n))

    def bracket(k, elems):
        degs = tuple(e.degree for e in elems)
        if k == 2 and degs == (0, 0):
            ea, eb = elems[0].payload, elems[1].payload
            sa, sb = ea.form.scalar(), eb.form.scalar()
            value = (
                ea.der.apply(sb)
                - eb.der.apply(sa)
                + evaluate(b_form, ea.der, eb.der)
            )
            return GradedElement(
                0,
                DSection(
                    commutator(ea.der, eb.der), AtiyahForm.from_scalar(value)
                ),
            )
        return None

    return LInfinityStructure("anchor-extension", spaces, 2, bracket)


def prolongation_morphism(b_form):
    """The canonical morphism from the twisted order-0 algebra into the two-term one."""

    def phi0(e):
        return DSection(e.der, differential(e.form.scalar()))

    def phi1(s):
        return Scalar.zero(b_form.n)

    def phi2(e1, e2):
        value = e1.der.apply(e2.form.scalar()) - e2.der.apply(e1.form.scalar())
        return -(value * HALF) - evaluate(b_form, e1.der, e2.der)

    return LInfMorphism(phi0, phi1, phi2)


def cohomologous_iso(omega, b_form):
    """Strict isomorphism shifting the twist by the differential of a 2-form."""
    if not differential(omega).is_zero():
        raise NotClosed("the twist must be closed")
    n = omega.n

    def phi0(e):
        return DSection(e.der, e.form + contract(e.der, b_form))

    def phi1(s):
        return s

    def phi2(e1, e2):
        return Scalar.zero(n)

    return LInfMorphism(phi0, phi1, phi2)


def injective_graph_morphism(omega):
    """Embedding of the graph observables into the twisted two-term structure."""
    n = omega.n

    def phi0(h):
        return DSection(h.ham_der, -h.alpha)

    def phi1(s):
        return -s

    def phi2(a, b):
        return -HALF * (
            evaluate(b.alpha, a.ham_der) - evaluate(a.alpha, b.ham_der)
        )

    return LInfMorphism(phi0, phi1, phi2)


def section_map_matrix(fn, n, p):
    """Coordinate matrix of a module-linear map on order-p sections."""
    from .atiyah import index_subsets

    basis = []
    for t in range(n + 1):
        basis.append(DSection(Derivation.basis(n, t), AtiyahForm.zero(n, p)))
    for key in index_subsets(n, p):
        basis.append(
            DSection(Derivation.zero(n), AtiyahForm.basis(n, key))
        )
    cols = [section_coordinates(fn(e)) for e in basis]
    return [[col[i] for col in cols] for i in range(len(cols[0]))]


def rescale_iso(lam, xi):
    """Rescaled subbundle plus the degree-wise multiplication isomorphism."""
    lam = Fraction(lam)
    if lam == 0:
        raise ZeroScale("rescaling must be invertible")
    new_xi = Subbundle(
        [DSection(g.der, g.form.scale(lam)) for g in xi.generators]
    )

    def phi0(h):
        return HamiltonianForm(h.alpha.scale(lam), h.ham_der)

    def phi1(payload):
        return _scale_payload(payload, lam)

    def phi2(a, b):
        if xi.p >= 2:
            return Scalar.zero(xi.n)
        return AtiyahForm.zero(xi.n, 0)

    return new_xi, LInfMorphism(phi0, phi1, phi2)


# ---------------------------------------------------------------------------
# dg Leibniz structure
# ---------------------------------------------------------------------------


class DgLeibnizStructure:
    """Differential plus a left-action bracket with the graded Leibniz rule."""

    def __init__(self, omega):
        if not differential(omega).is_zero():
            raise NotClosed("the defining form must be closed")
        xi = graph_of_form(omega)
        if linalg.rank(xi._form_matrix()) != omega.n + 1:
            raise Degenerate("the contraction map must have full rank")
        self.omega = omega
        self.xi = xi
        self.p = omega.degree - 1
        self._linf = observable_linf(xi)
        self.spaces = self._linf.spaces

    @property
    def terms(self):
        return len(self.spaces)

    def random_element(self, degree, rng, max_degree, coeff_bound):
        return self._linf.random_element(degree, rng, max_degree, coeff_bound)

    def zero_element(self, degree):
        return self._linf.zero_element(degree)

    def differential(self, a):
        if a is None:
            return None
        return self._linf.l(1, [a])

    def bracket(self, a, b):
        """Lie derivative along the first Hamiltonian derivation; zero off degree 0."""
        if a is None or b is None:
            return None
        target = a.degree + b.degree
        if a.degree != 0:
            if target >= self.terms:
                return None
            return self.zero_element(target)
        delta = a.payload.ham_der
        value = lie_derivative(delta, _plain_form(b.payload))
        if b.degree == 0:
            return GradedElement(
                0,
                HamiltonianForm(
                    value, commutator(delta, b.payload.ham_der)
                ),
            )
        if b.degree == self.terms - 1 and self.p >= 2:
            return GradedElement(b.degree, value.scalar())
        return GradedElement(b.degree, value)

    def derivation_residual(self, a, b):
        total = self.differential(self.bracket(a, b))
        da = self.differential(a)
        if da is not None:
            total = ge_add(total, ge_scale(self.bracket(da, b), -1))
        db = self.differential(b)
        if db is not None:
            sign = -1 if a.degree % 2 else 1
            total = ge_add(total, ge_scale(self.bracket(a, db), -sign))
        return total

    def leibniz_residual(self, a, b, c):
        total = self.bracket(a, self.bracket(b, c))
        total = ge_add(total, ge_scale(self.bracket(self.bracket(a, b), c), -1))
        sign = -1 if (a.degree * b.degree) % 2 else 1
        total = ge_add(total, ge_scale(self.bracket(b, self.bracket(a, c)), -sign))
        return total


def build_dg_leibniz(omega):
    return DgLeibnizStructure(omega)
