import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cesaro_lab.fixtures import ENV_VAR, fixture_names, load_fixture
from cesaro_lab.kernels import kernel_values
from cesaro_lab.operators import (
    CesaroTransform,
    NumericalError,
    as_cmatrix,
    cesaro_bounded_probe,
    cesaro_mean,
    cesaro_sum,
    eigenvalues,
    load_matrix,
    matrix_from_dict,
    matrix_power,
    matrix_to_dict,
    operator_norm,
    operator_norms,
    peripheral_spectrum,
    power_growth_probe,
    random_matrix,
    save_matrix,
    spectral_radius,
)

from conftest import ASSANI, JORDAN


def assani_power(n):
    s = (-1) ** n
    return np.array([[s, -s * 2 * n], [0, s]], dtype=complex)


def two_norm_oracle(A):
    """sqrt of the top eigenvalue of the Hermitian A^* A."""
    return float(np.sqrt(np.linalg.eigvalsh(A.conj().T @ A)[-1]))


def recurrence_sums(T, alpha, n_max):
    """S(n) = T S(n-1) + k^alpha(n) I, an independent route to the Cesàro sums."""
    k = kernel_values(alpha, n_max)
    eye = np.eye(T.shape[0], dtype=complex)
    out = [k[0] * eye]
    for n in range(1, n_max + 1):
        out.append(T @ out[-1] + k[n] * eye)
    return np.array(out)


matrices = st.integers(1, 6).flatmap(
    lambda d: st.integers(0, 10_000).map(lambda s: random_matrix(d, seed=s))
)


# construction and I/O -------------------------------------------------------------


@pytest.mark.parametrize("bad", [[[1, 2]], [1, 2], [[np.nan]], np.zeros((0, 0))])
def test_as_cmatrix_rejects(bad):
    with pytest.raises(ValueError):
        as_cmatrix(bad)


def test_json_round_trip(tmp_path):
    T = random_matrix(3, seed=4)
    assert np.array_equal(matrix_from_dict(json.loads(json.dumps(matrix_to_dict(T)))), T)
    save_matrix(T, tmp_path / "m.json")
    assert np.array_equal(load_matrix(tmp_path / "m.json"), T)
    assert set(matrix_to_dict(T)) == {"dim", "re", "im"}


def test_json_dim_mismatch():
    with pytest.raises(ValueError):
        matrix_from_dict({"dim": 3, "re": [[1]], "im": [[0]]})


def test_random_matrix_has_requested_radius():
    for d in (1, 3, 8):
        assert spectral_radius(random_matrix(d, seed=d, radius=0.7)) == pytest.approx(0.7, rel=1e-12)
    assert np.array_equal(random_matrix(4, seed=1), random_matrix(4, seed=1))


# powers, norms, spectra -------------------------------------------------------------


def test_power_examples():
    assert np.array_equal(matrix_power(ASSANI, 3), [[-1, 6], [0, -1]])
    assert np.array_equal(matrix_power(random_matrix(3), 0), np.eye(3))
    assert np.allclose(matrix_power(np.diag([0.5, 2j]), 5), np.diag([0.5**5, (2j) ** 5]))
    with pytest.raises(ValueError):
        matrix_power(ASSANI, -1)


@pytest.mark.parametrize("n", [0, 1, 2, 7, 50, 333])
def test_assani_powers_closed_form(n):
    assert np.array_equal(matrix_power(ASSANI, n), assani_power(n))
    assert operator_norm(assani_power(n)) == pytest.approx(n + np.hypot(n, 1), rel=1e-12)


def test_operator_norm_examples():
    assert operator_norm([[0, 2], [0, 0]]) == pytest.approx(2, rel=1e-15)
    assert operator_norm(np.eye(3)) == pytest.approx(1, rel=1e-15)
    assert operator_norm([[3, 0], [4, 0]]) == pytest.approx(5, rel=1e-15)


@given(T=matrices)
def test_operator_norm_matches_oracle(T):
    assert operator_norm(T) == pytest.approx(two_norm_oracle(T), rel=1e-10)


def test_operator_norms_batched():
    stack = np.array([random_matrix(4, seed=s) for s in range(5)])
    assert np.allclose(operator_norms(stack), [operator_norm(A) for A in stack], rtol=1e-14)


def test_spectral_radius_examples():
    assert spectral_radius(ASSANI) == pytest.approx(1, abs=1e-12)
    assert spectral_radius(np.diag([1, 0.5])) == 1
    assert spectral_radius([[0, 1], [-1, 0]]) == pytest.approx(1, abs=1e-12)


@given(T=matrices)
def test_eigenpair_residuals(T):
    w = eigenvalues(T)
    for lam in w:
        smin = np.linalg.svd(T - lam * np.eye(len(T)), compute_uv=False)[-1]
        assert smin <= 1e-8


def test_eigenvalues_rejects_uncertifiable(monkeypatch):
    def bad_eig(T):
        return np.array([5.0, 7.0]), np.eye(2)

    monkeypatch.setattr(np.linalg, "eig", bad_eig)
    with pytest.raises(NumericalError):
        eigenvalues(np.eye(2))


def test_peripheral_spectrum_examples():
    assert peripheral_spectrum(ASSANI) == [pytest.approx(-1, abs=1e-9)]
    assert peripheral_spectrum(np.diag([1, 0.5])) == [1]
    assert peripheral_spectrum(np.diag([0.2, 0.3])) == []
    assert len(peripheral_spectrum(np.diag([1, 1, 1j]))) == 2
    with pytest.raises(ValueError):
        peripheral_spectrum(ASSANI, tol=0)


# Cesàro sums and means -------------------------------------------------------------


def test_cesaro_sum_examples():
    ct = CesaroTransform(ASSANI, 1, 5)
    assert np.array_equal(cesaro_sum(ct, 1), [[0, 2], [0, 0]])
    assert np.array_equal(cesaro_mean(ct, 1), [[0, 1], [0, 0]])
    T = random_matrix(3, seed=9)
    ct0 = CesaroTransform(T, 0, 12)
    for n in range(13):
        assert np.array_equal(cesaro_sum(ct0, n), ct0.power(n))
        assert np.array_equal(cesaro_mean(ct0, n), ct0.power(n))


@pytest.mark.parametrize("alpha", [0, 0.5, 1, 2.5])
def test_identity_operator(alpha):
    ct = CesaroTransform(np.eye(2), alpha, 40)
    k = kernel_values(alpha + 1, 40)
    for n in range(41):
        assert np.allclose(ct.sum(n), k[n] * np.eye(2), rtol=1e-12, atol=0)
        assert np.allclose(ct.mean(n), np.eye(2), rtol=1e-12, atol=0)


@settings(max_examples=30, deadline=None)
@given(T=matrices, alpha=st.floats(0, 3))
def test_sums_match_recurrence(T, alpha):
    n_max = 60
    direct = CesaroTransform(T, alpha, n_max).sums()
    oracle = recurrence_sums(T, alpha, n_max)
    scale = np.maximum(np.abs(oracle), 1.0)
    assert np.all(np.abs(direct - oracle) <= 1e-10 * scale * (n_max + 1))


@settings(max_examples=30, deadline=None)
@given(T=matrices, a=st.floats(0, 2), b=st.floats(0, 2))
def test_kernel_transfer(T, a, b):
    n_max = 50
    ca = CesaroTransform(T, a, n_max)
    cab = ca.with_order(a + b)
    kb = kernel_values(b, n_max)
    sa = ca.sums()
    for n in (0, 1, 7, 25, 50):
        lhs = cab.sum(n)
        rhs = np.tensordot(kb[n::-1], sa[: n + 1], axes=1)
        assert np.linalg.norm(lhs - rhs) <= 1e-9 * max(1.0, np.linalg.norm(lhs))


def test_with_order_shares_powers():
    ct = CesaroTransform(ASSANI, 1, 30)
    other = ct.with_order(2)
    assert other.n_max == 30 and other.alpha == 2.0
    assert np.array_equal(other.powers(), ct.powers())


def test_prepare_grows_only():
    ct = CesaroTransform(ASSANI, 1, 10)
    before = ct.sums().copy()
    ct.prepare(5)
    assert ct.n_max == 10
    ct.prepare(40)
    assert ct.n_max == 40
    assert np.array_equal(ct.sums(10), before)
    # accessors past the cache extend it
    assert np.array_equal(ct.sum(41), ct.sums()[41])
    assert ct.n_max == 41


def test_rejects_negative_order():
    with pytest.raises(ValueError):
        CesaroTransform(ASSANI, -0.5)


@pytest.mark.parametrize(
    "T", [np.diag([1, -1j]), np.diag(np.exp(1j * np.array([0.3, 1.7, 2.9]))), random_matrix(3, seed=2, radius=0.9)]
)
def test_monotone_boundedness(T):
    n_max = 200
    sups = [cesaro_bounded_probe(T, a, n_max).sup for a in (0, 0.5, 1, 2)]
    assert all(y <= x * (1 + 1e-6) for x, y in zip(sups, sups[1:]))


# probes ------------------------------------------------------------------------------


def test_assani_probe_bounded_at_order_one():
    probe = cesaro_bounded_probe(ASSANI, 1, 10_000)
    assert probe.non_growing
    assert probe.sup < 3
    assert float(probe) == probe.sup


def test_assani_probe_grows_at_order_zero():
    probe = cesaro_bounded_probe(ASSANI, 0, 1000)
    assert not probe.non_growing
    assert probe.values[1000] == pytest.approx(1000 + np.hypot(1000, 1), rel=1e-12)


def test_jordan_probe_grows():
    probe = cesaro_bounded_probe(JORDAN, 1, 1000)
    assert not probe.non_growing
    assert probe.values[1000] == pytest.approx(np.hypot(1, 1000 / 2) + 0.5, rel=1e-2)


def test_power_growth_probe_examples():
    assani = power_growth_probe(ASSANI, 1, 2000)
    assert assani.non_growing and assani.sup <= 2 + 1e-9
    decaying = power_growth_probe(np.diag([0.9, -0.9]), 0.5, 300)
    assert decaying.values[-1] < 1e-12
    jordan = power_growth_probe(JORDAN, 0.5, 2000)
    assert not jordan.non_growing
    with pytest.raises(ValueError):
        power_growth_probe(ASSANI, 0, 10)


def test_probe_accepts_prepared_transform():
    ct = CesaroTransform(ASSANI, 1, 100)
    assert cesaro_bounded_probe(ct, 1, 100).sup == cesaro_bounded_probe(ASSANI, 1, 100).sup


def test_growth_probe_halves():
    probe = cesaro_bounded_probe(np.eye(1) * 1, 1, 4)
    assert probe.lower_max == probe.upper_max == 1
    with pytest.raises(ValueError):
        cesaro_bounded_probe(ASSANI, 1, 0)


@pytest.mark.parametrize("name", ["assani", "rotation", "diag_half", "diag_peripheral", "diag_decay", "random4"])
@pytest.mark.parametrize("alpha", [0.5, 1, 2])
def test_bounded_fixtures_have_radius_at_most_one(name, alpha):
    T = load_fixture(name)
    if cesaro_bounded_probe(T, alpha, 2000).non_growing:
        assert spectral_radius(T) <= 1 + 1e-6


# fixtures ----------------------------------------------------------------------------


def test_shipped_fixtures():
    names = fixture_names()
    for required in ("assani", "jordan1", "diag_peripheral", "rotation", "diag_half"):
        assert required in names
    assert np.array_equal(load_fixture("assani"), ASSANI)
    assert np.array_equal(load_fixture("jordan1"), JORDAN)
    assert np.allclose(np.diag(load_fixture("diag_peripheral")), [1, -0.9, 0.3j])


def test_fixture_resolution(tmp_path, monkeypatch):
    path = tmp_path / "mine.json"
    save_matrix(np.diag([2.0, 3.0]), path)
    assert np.array_equal(load_fixture(str(path)), np.diag([2.0, 3.0]))
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    assert fixture_names() == ["mine"]
    assert np.array_equal(load_fixture("mine"), np.diag([2.0, 3.0]))
    assert load_fixture("random3").shape == (3, 3)
    with pytest.raises(LookupError):
        load_fixture("assani")
    with pytest.raises(LookupError):
        load_fixture("random0")
