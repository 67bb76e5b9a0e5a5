import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rieffel.algebra import AlgebraElement, cnorm, cnorm_entries, positivity_defect, star


def random_matrix(seed, k=2):
    r = np.random.default_rng(seed)
    return AlgebraElement(r.normal(size=(k, k)) + 1j * r.normal(size=(k, k)))


def test_star_identity_matrix():
    a = AlgebraElement.identity(2)
    assert np.array_equal(star(a).entries, a.entries)


def test_star_nilpotent():
    a = AlgebraElement(np.array([[0.0, 1.0], [0.0, 0.0]]))
    assert np.array_equal(star(a).entries, np.array([[0.0, 0.0], [1.0, 0.0]]))


def test_star_scalar_conjugation():
    a = AlgebraElement(np.array([[1j]]))
    assert star(a).entries[0, 0] == -1j


def test_cnorm_identity():
    assert cnorm(AlgebraElement.identity(2)) == pytest.approx(1.0)


def test_cnorm_diagonal():
    assert cnorm(AlgebraElement(np.diag([3.0, -4.0]))) == pytest.approx(4.0)


def test_cnorm_nilpotent():
    # a*a = diag(0, 4), largest singular value 2
    assert cnorm(AlgebraElement(np.array([[0.0, 2.0], [0.0, 0.0]]))) == pytest.approx(2.0)


def test_cnorm_zero_iff_zero():
    assert cnorm(AlgebraElement.zero(3)) == 0.0


def test_positivity_defect_psd():
    a = random_matrix(0)
    gram = star(a) @ a
    assert positivity_defect(gram) <= 1e-12 * cnorm(gram)


def test_positivity_defect_negative():
    a = AlgebraElement(np.diag([1.0, -2.0]))
    assert positivity_defect(a) == pytest.approx(2.0)


def test_positivity_defect_nonhermitian():
    a = AlgebraElement(np.array([[0.0, 1.0], [0.0, 0.0]]))
    assert positivity_defect(a) > 0.5


def test_cnorm_entries_batched():
    stack = np.stack([np.eye(2), np.diag([3.0, -4.0]) + 0j])
    assert np.allclose(cnorm_entries(stack), [1.0, 4.0])


def test_cnorm_entries_scalar_fast_path():
    stack = np.array([[[2j]], [[-3.0 + 0j]]])
    assert np.allclose(cnorm_entries(stack), [2.0, 3.0])


@given(st.integers(0, 10_000))
def test_star_involution(seed):
    a = random_matrix(seed)
    assert np.allclose(star(star(a)).entries, a.entries)


@given(st.integers(0, 10_000))
def test_cstar_identity(seed):
    a = random_matrix(seed)
    assert cnorm(star(a) @ a) == pytest.approx(cnorm(a) ** 2, rel=1e-10)


@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_norm_submultiplicative(s1, s2):
    a, b = random_matrix(s1), random_matrix(s2)
    assert cnorm(a @ b) <= cnorm(a) * cnorm(b) * (1 + 1e-12)


@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_star_antimultiplicative(s1, s2):
    a, b = random_matrix(s1), random_matrix(s2)
    assert np.allclose(star(a @ b).entries, (star(b) @ star(a)).entries)


def test_rejects_nonsquare():
    with pytest.raises(ValueError):
        AlgebraElement(np.zeros((2, 3)))
