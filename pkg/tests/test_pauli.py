import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boundmagic.errors import DimensionError, DomainError
from boundmagic.pauli import (
    PauliString,
    commutes,
    expectation_product_state,
    mul,
    symplectic,
)

from conftest import dense_state, random_bloch

P = PauliString.from_str


def paulis(n):
    return st.builds(
        lambda letters, k: PauliString.from_letters(letters, k),
        st.text(alphabet="IXYZ", min_size=n, max_size=n),
        st.integers(0, 3),
    )


def same_n_pair(max_n=6):
    return st.integers(1, max_n).flatmap(lambda n: st.tuples(paulis(n), paulis(n)))


def same_n_triple(max_n=5):
    return st.integers(1, max_n).flatmap(lambda n: st.tuples(paulis(n), paulis(n), paulis(n)))


def test_xz_gives_minus_i_y():
    out = mul(P("XI"), P("ZI"))
    assert out.letters == "YI"
    assert out.k == 3  # -i


def test_xx_times_zz_is_minus_yy():
    out = P("XX") * P("ZZ")
    assert str(out) == "-YY"
    np.testing.assert_allclose(out.to_matrix(), P("XX").to_matrix() @ P("ZZ").to_matrix())


@given(paulis(4))
def test_hermitian_involution(p):
    p = p.hermitian()
    assert p * p == PauliString.identity(4)


@given(same_n_pair())
def test_product_matches_dense(pair):
    a, b = pair
    np.testing.assert_allclose((a * b).to_matrix(), a.to_matrix() @ b.to_matrix(), atol=1e-12)


@given(same_n_triple())
def test_associative(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)


@given(paulis(5))
def test_identity_neutral_and_order_divides_4(p):
    e = PauliString.identity(5)
    assert e * p == p == p * e
    assert p * p * p * p == e


@given(same_n_pair())
def test_reversed_product_differs_by_symplectic_sign(pair):
    a, b = pair
    ab, ba = a * b, b * a
    assert ab.same_letters(ba)
    assert (ab.k - ba.k) % 4 == 2 * symplectic(a, b)


@pytest.mark.parametrize(
    "a, b, expected",
    [("XI", "ZI", False), ("XX", "ZZ", True), ("XYZ", "III", True), ("IZ", "XX", False)],
)
def test_commutes(a, b, expected):
    assert commutes(P(a), P(b)) is expected


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        mul(P("X"), P("XX"))
    with pytest.raises(DimensionError):
        commutes(P("X"), P("XX"))


@pytest.mark.parametrize("text", ["-XIZZY", "XX", "iZ", "-iXY", "+IZ"])
def test_text_round_trip(text):
    p = P(text)
    assert P(str(p)) == p


def test_bad_letter():
    with pytest.raises(DomainError):
        P("XQ")


def test_expectation_examples():
    assert expectation_product_state(P("X"), [(1, 0, 0)]) == 1.0
    r = 0.8 * np.ones(3) / np.sqrt(3)
    assert expectation_product_state(P("XY"), [r, r]) == pytest.approx((0.8 / np.sqrt(3)) ** 2)
    assert expectation_product_state(P("-Z"), [(0, 0, 0.5)]) == -0.5


def test_expectation_needs_hermitian():
    with pytest.raises(DomainError):
        expectation_product_state(P("iX"), [(1, 0, 0)])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_expectation_matches_dense_trace(n, seed):
    rng = np.random.default_rng(seed)
    p = PauliString(n, int(rng.integers(0, 1 << n)), int(rng.integers(0, 1 << n)), 2 * int(rng.integers(0, 2)))
    r = random_bloch(rng, n)
    dense = np.trace(dense_state(r) @ p.to_matrix()).real
    assert expectation_product_state(p, r) == pytest.approx(dense, abs=1e-12)
