import random
from fractions import Fraction

import pytest

from omnilie.errors import OrderMismatch, TwistArityError
from omnilie.gauge import Derivation, random_derivation
from omnilie.atiyah import AtiyahForm, contract, differential, evaluate, primitive, random_form
from omnilie.dcourant import (
    Connection,
    DSection,
    LCourantStructure,
    courant,
    curvature,
    dorfman,
    gauge_auto,
    lcourant_axioms,
    pairing,
    random_section,
    script_D,
)
from omnilie.scalar import Scalar


def test_pairing_examples():
    e = DSection(Derivation.partial(2, 1), AtiyahForm.basis(2, (1, 2)))
    f = DSection(Derivation.partial(2, 2), AtiyahForm.zero(2, 2))
    assert pairing(e, f) == AtiyahForm.basis(2, (2,))

    x = Scalar.variable(1, 1)
    a = DSection(Derivation.partial(1, 1), AtiyahForm.basis(1, (1,)))
    b = DSection(Derivation.unit(1), AtiyahForm.zero(1, 1))
    assert pairing(a, b).scalar() == Scalar.one(1)

    rng = random.Random(1)
    for _ in range(5):
        omega = random_form(2, 3, rng, 2, 2)
        d = random_derivation(2, rng, 2, 2)
        graph_section = DSection(d, contract(d, omega))
        assert pairing(graph_section, graph_section).is_zero()

    with pytest.raises(OrderMismatch):
        pairing(e, a)


def test_dorfman_examples():
    x = Scalar.variable(1, 1)
    lhs = dorfman(
        DSection(Derivation.partial(1, 1), AtiyahForm.zero(1, 1)),
        DSection(Derivation.zero(1), AtiyahForm(1, 1, {(1,): x})),
    )
    assert lhs.der.is_zero() and lhs.form == AtiyahForm.basis(1, (1,))

    omega = AtiyahForm.basis(2, (0, 1, 2))
    tw = dorfman(
        DSection(Derivation.partial(2, 1), AtiyahForm.zero(2, 1)),
        DSection(Derivation.partial(2, 2), AtiyahForm.zero(2, 1)),
        omega,
    )
    assert tw.der.is_zero() and tw.form == -AtiyahForm.basis(2, (2,))

    rng = random.Random(2)
    a = DSection(Derivation.zero(2), random_form(2, 2, rng, 2, 2))
    b = DSection(Derivation.zero(2), random_form(2, 2, rng, 2, 2))
    assert dorfman(a, b).is_zero()

    with pytest.raises(TwistArityError):
        dorfman(a, b, random_form(2, 3, rng, 1, 1))  # twists only at order 1
    with pytest.raises(TwistArityError):
        e1 = random_section(2, 1, rng, 1, 1)
        dorfman(e1, e1, random_form(2, 2, rng, 1, 1))


def test_dorfman_leibniz_and_jacobi_identities():
    rng = random.Random(3)
    omega = differential(random_form(2, 2, rng, 1, 2))
    for twist in (None, omega):
        for _ in range(4):
            e1 = random_section(2, 1, rng, 1, 2)
            e2 = random_section(2, 1, rng, 1, 2)
            e3 = random_section(2, 1, rng, 1, 2)
            lhs = dorfman(e1, dorfman(e2, e3, twist), twist)
            rhs = dorfman(dorfman(e1, e2, twist), e3, twist) + dorfman(
                e2, dorfman(e1, e3, twist), twist
            )
            assert (lhs - rhs).is_zero()
            from omnilie.scalar import random_polynomial

            f = random_polynomial(2, rng, 1, 2)
            leib = (
                dorfman(e1, e2.scale(f), twist)
                - dorfman(e1, e2, twist).scale(f)
                - e2.scale(e1.der.symbol_apply(f))
            )
            assert leib.is_zero()


def test_higher_order_bracket_identities():
    # the non-skew bracket obeys its Leibniz-Jacobi laws at any order
    rng = random.Random(21)
    for p in (0, 2):
        for _ in range(3):
            e1 = random_section(2, p, rng, 1, 2)
            e2 = random_section(2, p, rng, 1, 2)
            e3 = random_section(2, p, rng, 1, 2)
            lhs = dorfman(e1, dorfman(e2, e3))
            rhs = dorfman(dorfman(e1, e2), e3) + dorfman(e2, dorfman(e1, e3))
            assert (lhs - rhs).is_zero()
            from omnilie.scalar import random_polynomial

            f = random_polynomial(2, rng, 1, 2)
            leib = (
                dorfman(e1, e2.scale(f))
                - dorfman(e1, e2).scale(f)
                - e2.scale(e1.der.symbol_apply(f))
            )
            assert leib.is_zero()
            assert (courant(e1, e2) + courant(e2, e1)).is_zero()


def test_courant_examples_and_skewness():
    x = Scalar.variable(1, 1)
    value = courant(
        DSection(Derivation.partial(1, 1), AtiyahForm.zero(1, 1)),
        DSection(Derivation.zero(1), AtiyahForm(1, 1, {(1,): x})),
    )
    assert value.form == AtiyahForm.basis(1, (1,))

    omega = AtiyahForm.basis(2, (0, 1, 2))
    tw = courant(
        DSection(Derivation.partial(2, 1), AtiyahForm.zero(2, 1)),
        DSection(Derivation.partial(2, 2), AtiyahForm.zero(2, 1)),
        omega,
    )
    assert tw.form == -AtiyahForm.basis(2, (2,))

    rng = random.Random(4)
    for _ in range(6):
        a = random_section(2, 1, rng, 2, 2)
        b = random_section(2, 1, rng, 2, 2)
        assert courant(a, a).is_zero()
        assert (courant(a, b) + courant(b, a)).is_zero()


def test_courant_halves_coboundary_of_pairing():
    rng = random.Random(5)
    for _ in range(5):
        e = random_section(1, 1, rng, 2, 2)
        lhs = dorfman(e, e)
        rhs = script_D(pairing(e, e).scalar() * Fraction(1, 2))
        assert lhs == rhs  # the fourth axiom in bracket form


def test_script_D():
    x = Scalar.variable(1, 1)
    sd = script_D(x**2)
    assert sd.der.is_zero()
    assert sd.form == AtiyahForm(1, 1, {(0,): 2 * x, (1,): x**2})
    assert script_D(Scalar.one(1)).form == AtiyahForm.basis(1, (1,))
    # injectivity through the unit contraction
    rng = random.Random(6)
    from omnilie.scalar import random_polynomial

    for _ in range(5):
        s = random_polynomial(2, rng, 2, 2)
        if script_D(s).is_zero():
            assert s.is_zero()


def test_axiom_checker_passes_shipped_instances():
    omni = LCourantStructure.omni(2)
    entries = lcourant_axioms(omni, 6, seed=42)
    assert all(ok for _, ok, _ in entries)
    twisted = LCourantStructure.twisted(AtiyahForm.basis(2, (0, 1, 2)))
    entries = lcourant_axioms(twisted, 6, seed=43)
    assert all(ok for _, ok, _ in entries)


def test_axiom_checker_catches_nonclosed_twist():
    bad = AtiyahForm(3, 3, {(0, 1, 3): Scalar.variable(3, 3)})
    assert not differential(bad).is_zero()
    entries = lcourant_axioms(LCourantStructure.twisted(bad), 6, seed=44)
    failed = [label for label, ok, _ in entries if not ok]
    assert any(label.startswith("LC1") for label in failed)
    witnesses = [w for label, ok, w in entries if not ok and w]
    assert witnesses and "residual" in witnesses[0]


def test_gauge_auto():
    b_form = AtiyahForm.basis(2, (0, 2))
    e = DSection(Derivation.partial(2, 1), AtiyahForm.zero(2, 1))
    assert gauge_auto(b_form, e).form == AtiyahForm.basis(2, (2,))
    rng = random.Random(7)
    zero = AtiyahForm.zero(2, 2)
    for _ in range(3):
        e = random_section(2, 1, rng, 2, 2)
        assert gauge_auto(zero, e) == e
    closed = differential(random_form(2, 1, rng, 2, 2))
    omni = LCourantStructure.omni(2)
    for _ in range(4):
        e1 = random_section(2, 1, rng, 1, 2)
        e2 = random_section(2, 1, rng, 1, 2)
        assert gauge_auto(closed, omni.bracket(e1, e2)) == omni.bracket(
            gauge_auto(closed, e1), gauge_auto(closed, e2)
        )


def test_curvature_sign_shift_and_closedness():
    omega = AtiyahForm.basis(2, (0, 1, 2))
    structure = LCourantStructure.twisted(omega)
    flat = curvature(Connection.zero(2), structure)
    assert flat == omega
    assert differential(flat).is_zero()
    rng = random.Random(8)
    for _ in range(4):
        theta = random_form(2, 2, rng, 2, 2)
        shifted = curvature(Connection.zero(2).shifted(theta), structure)
        assert shifted == flat + differential(theta)
        assert differential(shifted).is_zero()
        prim = primitive(shifted)
        assert differential(prim) == shifted


def test_connection_splitting_properties():
    rng = random.Random(9)
    beta = random_form(2, 2, rng, 2, 2)
    conn = Connection(beta)
    for _ in range(4):
        d = random_derivation(2, rng, 2, 2)
        e = conn.apply(d)
        assert e.der == d  # right splitting of the anchor
        d2 = random_derivation(2, rng, 2, 2)
        assert pairing(conn.apply(d), conn.apply(d2)).is_zero()


def test_curvature_is_tensorial():
    # values on random non-basis triples agree with the coefficient table
    omega = AtiyahForm.basis(2, (0, 1, 2))
    structure = LCourantStructure.twisted(omega)
    rng = random.Random(10)
    beta = random_form(2, 2, rng, 1, 2)
    conn = Connection(beta)
    table = curvature(conn, structure)
    for _ in range(4):
        ds = [random_derivation(2, rng, 1, 2) for _ in range(3)]
        lifted = [conn.apply(d) for d in ds]
        direct = -pairing(
            structure.skew_bracket(lifted[0], lifted[1]), lifted[2]
        ).scalar()
        assert evaluate(table, *ds) == direct
