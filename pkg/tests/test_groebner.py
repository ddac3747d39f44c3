"""groebner module: strong GB over fields, ZZ, ZZ/p^e; ideal operations."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bsdkit.groebner import (BudgetExceededError, GroebnerError, Ideal,
                             groebner_basis, ideal_contained_in,
                             ideal_membership, ideal_quotient, ideal_sum,
                             ideal_sum_product, normal_form)
from bsdkit.poly import GREVLEX, Polynomial, parse_polynomial
from bsdkit.rings import ZZ, CoefficientRing

from conftest import P, const


def ideals_equal(A: Ideal, B: Ideal) -> bool:
    return ideal_contained_in(A, B) and ideal_contained_in(B, A)


def sect31_I(ring=ZZ):
    return Ideal([P("x + y", ring), const(2, ring)])


def sect31_J(ring=ZZ):
    return Ideal([P("y^2 - x^2 + 2*x + 2", ring)])


def sect31_I2(ring=ZZ):
    I = sect31_I(ring)
    return ideal_sum_product(I, I, sect31_J(ring))


def sect31_I3(ring=ZZ):
    I = sect31_I(ring)
    return ideal_sum_product(sect31_I2(ring), I, sect31_J(ring))


# ---------------------------------------------------------------------------
# groebner_basis

class TestGroebnerBasis:
    def test_i2_paper_generators(self):
        # I2 = I^2 + J equals (x^2+y^2+2, 2x+2, 2y+2, 4) by mutual
        # membership
        listed = Ideal([P("x^2 + y^2 + 2"), P("2*x + 2"), P("2*y + 2"),
                        const(4)])
        assert ideals_equal(sect31_I2(), listed)

    def test_unit_ideal(self):
        gb = groebner_basis(Ideal([P("1"), P("x + y")]))
        assert len(gb) == 1 and gb[0].is_constant()

    def test_strong_gb_mod8(self, z8):
        I = Ideal([P("2*x + 2", z8), P("2*y + 2", z8), const(4, z8)])
        assert ideal_membership(const(4, z8), I)
        assert not ideal_membership(const(2, z8), I)

    def test_zz_needs_g_polynomials(self):
        # classic strong-GB example: (2x, 3x) contains x
        I = Ideal([P("2*x"), P("3*x")])
        assert ideal_membership(P("x"), I)

    def test_budget_error_distinct(self):
        I = Ideal([P("x^3*y - 1"), P("x*y^3 - x - 1"),
                   P("x^2 + y^2 - 3")])
        with pytest.raises(BudgetExceededError):
            I.groebner_basis(max_pairs=1)

    def test_deterministic(self):
        gens = [P("x^2 - y"), P("2*y^2 - x"), P("3*x*y - 2")]
        a = Ideal(gens).groebner_basis()
        b = Ideal(gens).groebner_basis()
        assert a == b


# ---------------------------------------------------------------------------
# normal_form / membership

class TestNormalForm:
    def test_generator_reduces_to_zero(self):
        assert normal_form(P("x + y"), sect31_I()).is_zero()

    def test_two_not_in_i2(self):
        # "Even though 2 does not lie in I2"
        assert normal_form(const(2), sect31_I2()) == const(2)

    def test_zero_ideal(self):
        Z = Ideal.zero_ideal(ZZ, ("x", "y"))
        f = P("x^2 + 3")
        assert normal_form(f, Z) == f

    def test_two_in_I(self):
        assert ideal_membership(const(2), sect31_I())

    def test_i3_quotient_generators_in_I(self):
        Q = ideal_quotient(sect31_I3(), const(2))
        I = sect31_I()
        assert all(ideal_membership(g, I) for g in Q.generators)


# ---------------------------------------------------------------------------
# sum/product

class TestSumProduct:
    def test_i2_construction(self):
        got = sect31_I2()
        by_hand = Ideal([P("x + y") * P("x + y"),
                         P("x + y").scale(2), const(4),
                         P("y^2 - x^2 + 2*x + 2")])
        assert ideals_equal(got, by_hand)

    def test_multiply_by_unit_ideal(self):
        A = sect31_I()
        got = ideal_sum_product(A, Ideal([P("1")]),
                                Ideal.zero_ideal(ZZ, ("x", "y")))
        assert ideals_equal(got, A)

    def test_xy_plus_z(self):
        vs = ("x", "y", "z")
        px = parse_polynomial("x", ZZ, vs, GREVLEX)
        py = parse_polynomial("y", ZZ, vs, GREVLEX)
        pz = parse_polynomial("z", ZZ, vs, GREVLEX)
        got = ideal_sum_product(Ideal([px]), Ideal([py]), Ideal([pz]))
        want = Ideal([px * py, pz])
        assert ideals_equal(got, want)


# ---------------------------------------------------------------------------
# quotient

class TestQuotient:
    def test_paper_i2_quotient(self):
        # (I2 : (2)) = (x+1, y+1, 2)
        Q = ideal_quotient(sect31_I2(), const(2))
        listed = Ideal([P("x + 1"), P("y + 1"), const(2)])
        assert ideals_equal(Q, listed)

    def test_paper_i3_quotient(self):
        Q = ideal_quotient(sect31_I3(), const(2))
        listed = Ideal([P("x^2 + y^2 + 2"), P("x*y + x + y^2 + y"),
                        P("2*x + 2"), P("2*y + 2"), const(4)])
        assert ideals_equal(Q, listed)

    def test_quotient_by_one(self):
        I = sect31_I2()
        assert ideals_equal(ideal_quotient(I, const(1)), I)

    def test_quotient_by_zero_rejected(self):
        with pytest.raises(GroebnerError):
            ideal_quotient(sect31_I(), P("0"))


# ---------------------------------------------------------------------------
# containment

class TestContainment:
    def test_i2_quotient_not_in_I(self):
        Q = ideal_quotient(sect31_I2(), const(2))
        assert not ideal_contained_in(Q, sect31_I())

    def test_i3_quotient_in_I(self):
        Q = ideal_quotient(sect31_I3(), const(2))
        assert ideal_contained_in(Q, sect31_I())

    def test_zero_ideal_contained_everywhere(self):
        Z = Ideal.zero_ideal(ZZ, ("x", "y"))
        assert ideal_contained_in(Z, sect31_I())


# ---------------------------------------------------------------------------
# property tests

SMALL_RINGS = [CoefficientRing.GF(3), CoefficientRing.Zmod(2, 2)]


def small_poly(ring, rng, nvars=2, max_deg=2, max_terms=3):
    items = []
    for _ in range(rng.randint(0, max_terms)):
        e = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        c = ring.coerce(rng.randint(-4, 4))
        items.append((e, c))
    vs = ("x", "y", "z")[:nvars]
    return Polynomial.from_terms(ring, vs, items, GREVLEX)


@pytest.mark.parametrize("ring", SMALL_RINGS,
                         ids=[r.kind for r in SMALL_RINGS])
def test_gb_correctness_random(ring):
    import random
    rng = random.Random(7)
    for _ in range(25):
        gens = [small_poly(ring, rng) for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        I = Ideal(gens)
        gb = I.groebner_basis()
        # every input generator reduces to zero
        for g in gens:
            assert ideal_membership(g, I)
        # normal form idempotence
        f = small_poly(ring, rng)
        nf = normal_form(f, I)
        assert normal_form(nf, I) == nf


def test_quotient_soundness_random():
    import random
    rng = random.Random(11)
    ring = CoefficientRing.Zmod(2, 3)
    for _ in range(15):
        gens = [small_poly(ring, rng) for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        I = Ideal(gens)
        f = small_poly(ring, rng)
        if f.is_zero():
            continue
        Q = ideal_quotient(I, f)
        for g in Q.generators:
            assert ideal_membership(g * f, I)


def test_quotient_completeness_small():
    # brute force {g : g*f in I} subset of (I : f) over GF(3), deg <= 2
    ring = CoefficientRing.GF(3)
    vs = ("x", "y")
    I = Ideal([P("x^2 + y", ring), P("x*y", ring)])
    f = P("x", ring)
    Q = ideal_quotient(I, f)
    exps = [(i, j) for i in range(3) for j in range(3) if i + j <= 2]
    for coeffs in itertools.product(range(3), repeat=len(exps)):
        g = Polynomial.from_terms(ring, vs, list(zip(exps, coeffs)),
                                  GREVLEX)
        if g.is_zero():
            continue
        if ideal_membership(g * f, I):
            assert ideal_membership(g, Q)


def test_homomorphic_consistency():
    # membership over ZZ/p^e agrees with reducing the ZZ answer when the
    # element's order is < e
    ring = CoefficientRing.Zmod(2, 4)
    I_zz = sect31_I2()
    I_mod = Ideal([g.change_ring(ring) for g in I_zz.generators])
    for text in ("x + y", "2*x + 2", "x^2 + y^2 + 2", "4", "x", "2"):
        f = P(text)
        assert ideal_membership(f, I_zz) == \
            ideal_membership(f.change_ring(ring), I_mod)


def test_interreduced_same_ideal():
    I = sect31_I2()
    K = I.interreduced()
    assert ideals_equal(I, K)
    assert list(K.generators) == list(I.groebner_basis())
