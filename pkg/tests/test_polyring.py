import pytest
from hypothesis import given, settings, strategies as st

from rigicount.polyring import EXP_LIMIT, Ring

PRIME = 1073741789


@pytest.fixture(scope="module")
def ring():
    return Ring(["x", "y", "z"], PRIME)


def exponent_vectors(nvars=3, max_exp=6):
    return st.tuples(*[st.integers(0, max_exp)] * nvars)


def grevlex_reference_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


class TestMonomialCodec:
    @given(exponent_vectors())
    def test_roundtrip(self, exps):
        r = Ring(["x", "y", "z"], PRIME)
        assert r.exponents(r.monomial(exps)) == exps

    @given(exponent_vectors(), exponent_vectors())
    def test_order_matches_reference(self, a, b):
        r = Ring(["x", "y", "z"], PRIME)
        ka, kb = r.monomial(a), r.monomial(b)
        ref = grevlex_reference_key(a) < grevlex_reference_key(b)
        assert (ka < kb) == ref

    def test_classic_grevlex_chain(self, ring):
        # x^2 > xy > y^2 > xz > yz > z^2 for x > y > z
        chain = [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
        keys = [ring.monomial(e) for e in chain]
        assert keys == sorted(keys, reverse=True)

    @given(exponent_vectors(), exponent_vectors())
    def test_mul_matches_exponent_addition(self, a, b):
        r = Ring(["x", "y", "z"], PRIME)
        ka, kb = r.monomial(a), r.monomial(b)
        assert r.exponents(r.mul(ka, kb)) == tuple(x + y for x, y in zip(a, b))

    @given(exponent_vectors(), exponent_vectors())
    def test_divides_matches_componentwise(self, a, b):
        r = Ring(["x", "y", "z"], PRIME)
        ka, kb = r.monomial(a), r.monomial(b)
        expected = all(x <= y for x, y in zip(a, b))
        assert r.divides(ka, kb) == expected
        if expected:
            assert r.exponents(r.quotient(kb, ka)) == tuple(y - x for x, y in zip(a, b))

    @given(exponent_vectors(), exponent_vectors())
    def test_lcm_componentwise_max(self, a, b):
        r = Ring(["x", "y", "z"], PRIME)
        lcm = r.lcm(r.monomial(a), r.monomial(b))
        assert r.exponents(lcm) == tuple(max(x, y) for x, y in zip(a, b))

    def test_degree(self, ring):
        assert ring.degree(ring.monomial((2, 1, 3))) == 6
        assert ring.degree(ring.unit) == 0

    def test_exponent_overflow_rejected(self, ring):
        with pytest.raises(OverflowError):
            ring.monomial((EXP_LIMIT, 0, 0))


class TestPolyOps:
    def test_from_terms_merges_and_prunes(self, ring):
        f = ring.poly_from_terms([((1, 0, 0), 5), ((1, 0, 0), -5), ((0, 1, 0), 3)])
        assert f == {ring.monomial((0, 1, 0)): 3}

    def test_add_cancels(self, ring):
        f = ring.poly_from_terms([((1, 0, 0), 2)])
        g = ring.poly_from_terms([((1, 0, 0), PRIME - 2), ((0, 0, 1), 1)])
        assert ring.poly_add(f, g) == {ring.monomial((0, 0, 1)): 1}

    def test_mul_known_product(self, ring):
        # (x + y)(x - y) = x^2 - y^2
        f = ring.poly_from_terms([((1, 0, 0), 1), ((0, 1, 0), 1)])
        g = ring.poly_from_terms([((1, 0, 0), 1), ((0, 1, 0), -1)])
        expected = ring.poly_from_terms([((2, 0, 0), 1), ((0, 2, 0), -1)])
        assert ring.poly_mul(f, g) == expected

    def test_monic(self, ring):
        f = ring.poly_from_terms([((2, 0, 0), 7), ((0, 0, 0), 14)])
        m = ring.poly_monic(f)
        assert m[max(m)] == 1
        assert m[ring.unit] == 2

    @given(
        st.lists(st.tuples(exponent_vectors(), st.integers(1, PRIME - 1)), max_size=6),
        st.lists(st.tuples(exponent_vectors(), st.integers(1, PRIME - 1)), max_size=6),
    )
    @settings(max_examples=50)
    def test_mul_commutes(self, fa, fb):
        r = Ring(["x", "y", "z"], PRIME)
        f = r.poly_from_terms(fa)
        g = r.poly_from_terms(fb)
        assert r.poly_mul(f, g) == r.poly_mul(g, f)

    def test_str(self, ring):
        f = ring.poly_from_terms([((2, 1, 0), 3), ((0, 0, 0), 9)])
        assert ring.poly_str(f) == "3*x^2*y + 9"
