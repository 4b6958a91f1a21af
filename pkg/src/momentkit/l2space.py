"""Discrete model of the weighted L2 space of vector-valued functions.

Functions live on the nodes of a discrete matrix measure; the inner
product is psi(f, g) = sum_j (W_j f(t_j), g(t_j)).  Quotienting by
psi-null functions happens node-wise through the eigendecomposition of
each weight, and multiplication by the variable becomes diagonal there.
The isometry check ties vector polynomials under psi to the quotient
space built from the matching moment sequence.
"""

from dataclasses import dataclass

import numpy as np

from ._linalg import herm, inner, readonly
from .errors import ValidationError
from .gramspace import construct_space, embed
from .measures import DiscreteMatrixMeasure
from .moments import MomentSequence, generate_from_measure

__all__ = [
    "DiscreteMatrixMeasure",
    "L2Element",
    "MultiplicationOperator",
    "psi_inner",
    "mult_operator",
    "w0_isometry_check",
]


@dataclass(frozen=True)
class L2Element:
    """Column j holds the function value at node t_j (a d x J array)."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.atleast_2d(np.asarray(self.values, dtype=complex))
        object.__setattr__(self, "values", readonly(vals))

    @classmethod
    def from_polynomial(cls, coeffs, nodes):
        """Vector polynomial sum_k t^k h_k sampled at the nodes.

        `coeffs` is a (degree+1, d) array of coefficient vectors h_k.
        """
        coeffs = np.atleast_2d(np.asarray(coeffs, dtype=complex))
        nodes = np.asarray(nodes, dtype=float)
        powers = nodes[None, :] ** np.arange(coeffs.shape[0])[:, None]
        return cls(coeffs.T @ powers)


@dataclass(frozen=True)
class MultiplicationOperator:
    """Multiplication by the variable in orthonormal quotient coordinates."""

    matrix: np.ndarray  # (mq, mq), diagonal with node values
    node_maps: tuple  # per-node coordinate maps, shapes (r_j, d)

    def __post_init__(self):
        object.__setattr__(self, "matrix", readonly(self.matrix))

    @property
    def quotient_dim(self):
        return self.matrix.shape[0]

    def coords(self, f: L2Element):
        """Quotient coordinates of [f]."""
        return np.concatenate(
            [qj @ f.values[:, j] for j, qj in enumerate(self.node_maps)]
        )


def _check_shapes(f: L2Element, mu: DiscreteMatrixMeasure):
    if f.values.shape != (mu.dim, mu.num_nodes):
        raise ValidationError(
            f"element shape {f.values.shape} does not match measure "
            f"({mu.dim}, {mu.num_nodes})"
        )


def psi_inner(f: L2Element, g: L2Element, mu: DiscreteMatrixMeasure) -> complex:
    """sum_j (W_j f(t_j), g(t_j)); sesquilinear, psi(f, f) >= 0."""
    _check_shapes(f, mu)
    _check_shapes(g, mu)
    return complex(
        sum(
            np.vdot(g.values[:, j], w @ f.values[:, j])
            for j, w in enumerate(mu.weights)
        )
    )


def mult_operator(mu: DiscreteMatrixMeasure, tol=1e-10) -> MultiplicationOperator:
    """Matrix of [f] -> [t f] on the quotient by psi-null functions.

    Node-wise eigendecomposition W_j = U diag(lam) U* keeps lam > tol *
    ||W_j||; the coordinate map at node j is diag(sqrt(lam_r)) U_r*, and
    multiplication is t_j times the identity on that block.
    """
    node_maps = []
    diag = []
    for t, w in zip(mu.nodes, mu.weights):
        lam, u = np.linalg.eigh(herm(w))
        keep = lam > tol * max(float(lam.max()), 1e-300)
        node_maps.append(np.sqrt(lam[keep])[:, None] * u[:, keep].conj().T)
        diag.extend([t] * int(np.count_nonzero(keep)))
    matrix = np.diag(np.asarray(diag, dtype=complex))
    return MultiplicationOperator(matrix=matrix, node_maps=tuple(node_maps))


def w0_isometry_check(m: MomentSequence, mu: DiscreteMatrixMeasure,
                      n_samples=25, seed=0) -> float:
    """Max residual between psi on vector polynomials and the quotient space.

    For random vector polynomials p, q of degree <= n the value
    psi(p, q) must equal the inner product of the corresponding sums of
    degree-tagged classes.  Residuals are relative to 1 + |value|.
    Requires mu to reproduce the moments of m to 1e-12.
    """
    regen = generate_from_measure(mu, m.order)
    for k in range(m.order + 1):
        diff = float(np.linalg.norm(regen.moment(k) - m.moment(k)))
        if diff > 1e-12 * (1.0 + float(np.linalg.norm(m.moment(k)))):
            raise ValidationError(
                f"measure does not reproduce moment S_{k} (|diff| = {diff:.3e})"
            )
    g = construct_space(m)
    rng = np.random.default_rng(seed)
    worst = 0.0
    deg = m.n
    for _ in range(n_samples):
        hk = rng.standard_normal((deg + 1, m.dim)) + 1j * rng.standard_normal(
            (deg + 1, m.dim)
        )
        gl = rng.standard_normal((deg + 1, m.dim)) + 1j * rng.standard_normal(
            (deg + 1, m.dim)
        )
        psi = psi_inner(
            L2Element.from_polynomial(hk, mu.nodes),
            L2Element.from_polynomial(gl, mu.nodes),
            mu,
        )
        x = sum(embed(g, hk[k], k).coords for k in range(deg + 1))
        y = sum(embed(g, gl[k], k).coords for k in range(deg + 1))
        gram_value = inner(x, y)
        worst = max(worst, abs(psi - gram_value) / (1.0 + abs(gram_value)))
    return worst
