"""Shared fixtures and independent oracles for the test suite."""

import numpy as np
import pytest

import momentkit as mk


def double_factorial(k):
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def hermite_moments(order):
    """Standard Gaussian moments: S_k = (k-1)!! for even k, 0 for odd k."""
    return [0.0 if k % 2 else float(double_factorial(k - 1)) for k in range(order + 1)]


def random_psd(rng, d, rank=None):
    rank = d if rank is None else rank
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    return g @ g.conj().T / max(rank, 1)


def random_measure(rng, d, num_nodes, rank=None):
    nodes = np.sort(rng.uniform(-2.0, 2.0, num_nodes))
    nodes = nodes + 1e-2 * np.arange(num_nodes)  # enforce strict increase
    weights = np.stack([random_psd(rng, d, rank) for _ in range(num_nodes)])
    return mk.DiscreteMatrixMeasure(nodes=nodes, weights=weights)


def random_model(rng, d=2, num_nodes=4, order=4, rank=None):
    mu = random_measure(rng, d, num_nodes, rank)
    return mk.build_model(mk.generate_from_measure(mu, order))


def random_unitary(rng, n):
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_contraction(rng, shape, max_norm=0.9):
    if 0 in shape:
        return np.zeros(shape, dtype=complex)
    g = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return (max_norm * rng.uniform(0.1, 1.0)) * g / np.linalg.norm(g, 2)


def random_vector(rng, d):
    return rng.standard_normal(d) + 1j * rng.standard_normal(d)


def random_upper_z(rng, im_min=0.2, im_max=3.0, re_max=2.0):
    while True:
        z = complex(rng.uniform(-re_max, re_max), rng.uniform(im_min, im_max))
        if abs(z - 1j) >= 1e-3:
            return z


def point_mass_model(t0, order=4, weight=1.0):
    mu = mk.DiscreteMatrixMeasure.point_mass(t0, np.atleast_2d(weight))
    return mk.build_model(mk.generate_from_measure(mu, order)), mu


@pytest.fixture(scope="session")
def gaussian_moments():
    return mk.MomentSequence(hermite_moments(6))


@pytest.fixture(scope="session")
def gaussian_model(gaussian_moments):
    return mk.build_model(gaussian_moments)


@pytest.fixture(scope="session")
def delta2_model():
    model, _ = point_mass_model(2.0, order=4)
    return model


@pytest.fixture(scope="session")
def simple_indeterminate_model():
    # S = (1, 0, 1): rank 2, shift domain of dim 1, defect dims (1, 1)
    return mk.build_model(mk.MomentSequence([1.0, 0.0, 1.0]))
