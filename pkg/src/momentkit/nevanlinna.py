"""Evaluation of the linear-fractional transform parametrizing solutions.

For z in the upper half-plane (away from i) and a constant Schur parameter,
the quadratic form of the transform R(z) = integral dF(t)/(t - z) is

    (R(z) h, h) = 2i/(z^2+1)^2 * (K* T_z K h, h)
                  - 1/((z-i)(z^2+1)) * ((S_2 + S_0) h, h)
                  - 1/(z^2+1) * ((z S_0 + S_1) h, h),

where T_z is the top-left block (on M_i) of the inverse of
E - zeta (V + Phi), zeta = (z-i)/(z+i), obtained through the block
(Frobenius/Schur-complement) inversion, and K embeds h as the degree-1
class minus i times the degree-0 class.  `direct_oracle` recomputes the
same value by dense inversion without the block decomposition and exists
purely as a cross-check.
"""

from dataclasses import dataclass

import numpy as np

from ._linalg import COND_THRESHOLD, cond2, quad_form, readonly, solve_checked
from .cayley import (
    CayleyData,
    SchurParameter,
    check_evaluation_point,
    check_parameter,
    parameter_operator,
)
from .errors import ConditioningError
from .gramspace import GramSpace, build_embeddings
from .moments import MomentSequence

# coefficients of the four-term polarization identity:
# (M h, g) = sum_j c_j (M u_j, u_j), u = h+g, h-g, h+ig, h-ig
POLARIZATION = ((0.25, 1.0), (-0.25, -1.0), (0.25j, 1.0j), (-0.25j, -1.0j))


@dataclass(frozen=True)
class BlockSet:
    """Blocks of E - zeta (V + Phi) in the M_i / N_i splitting.

    `A_hat` is the inverse of the M_i block, expressed in the orthonormal
    basis of M_i; `B`, `C`, `D` use the defect bases for N_i legs.
    """

    z: complex
    A_hat: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    H: np.ndarray
    cond_H: float

    def __post_init__(self):
        for name in ("A_hat", "B", "C", "D", "H"):
            object.__setattr__(self, name, readonly(getattr(self, name)))


@dataclass(frozen=True)
class NevanlinnaValue:
    """The d x d transform value at one point of the upper half-plane."""

    z: complex
    R: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "R", readonly(self.R))

    def imag_part(self):
        return (self.R - self.R.conj().T) / 2j


def blocks(c: CayleyData, p: SchurParameter, z) -> BlockSet:
    """Assemble A_hat, B, C, D and the Schur complement H at the point z."""
    z = check_evaluation_point(z)
    check_parameter(c, p)
    zeta = (z - 1j) / (z + 1j)
    w = 1.0 / zeta
    b_mi = c.basis_mi
    k = b_mi.shape[1]
    d_plus = c.defect_dims[0]
    v_mi = b_mi.conj().T @ c.V @ b_mi
    pencil = v_mi - w * np.eye(k)
    # |w| > 1 and ||P V|| <= 1 keep this invertible for z in C+
    a_hat = (-w) * solve_checked(pencil, np.eye(k, dtype=complex), "M_i block")
    b_blk = (-zeta) * (b_mi.conj().T @ c.defect_out_basis) @ p.matrix
    c_blk = (-zeta) * (c.defect_in_basis.conj().T @ (c.V @ b_mi))
    d_blk = np.eye(d_plus, dtype=complex) + (-zeta) * (
        c.defect_in_basis.conj().T @ c.defect_out_basis
    ) @ p.matrix
    h_blk = d_blk - c_blk @ a_hat @ b_blk
    cond_h = cond2(h_blk)
    if not np.isfinite(cond_h) or cond_h > COND_THRESHOLD:
        raise ConditioningError(
            f"Schur complement singular at z={z}; parameter/point rejected", cond_h
        )
    return BlockSet(z=z, A_hat=a_hat, B=b_blk, C=c_blk, D=d_blk, H=h_blk, cond_H=cond_h)


def frobenius_topleft(b: BlockSet):
    """Top-left block of the inverse: A_hat + A_hat B H^{-1} C A_hat."""
    if b.cond_H > COND_THRESHOLD:
        raise ConditioningError("Schur complement too ill-conditioned", b.cond_H)
    correction = b.B @ solve_checked(b.H, b.C @ b.A_hat, "Schur complement")
    return b.A_hat + b.A_hat @ correction


def _scales(z):
    z = complex(z)
    denom = z * z + 1.0
    return 2j / denom**2, 1.0 / ((z - 1j) * denom), 1.0 / denom


def transform_matrix(m: MomentSequence, g: GramSpace, c: CayleyData,
                     p: SchurParameter, z):
    """The d x d matrix G with (G h, h) equal to the transform's quadratic form."""
    top = frobenius_topleft(blocks(c, p, z))
    _, emb_k = build_embeddings(g)
    k_mi = c.basis_mi.conj().T @ emb_k.matrix
    s0, s1, s2 = m.moment(0), m.moment(1), m.moment(2)
    c_top, c_shift, c_lin = _scales(z)
    return (
        c_top * (k_mi.conj().T @ top @ k_mi)
        - c_shift * (s2 + s0)
        - c_lin * (z * s0 + s1)
    )


def evaluate_form(m: MomentSequence, g: GramSpace, c: CayleyData,
                  p: SchurParameter, z, h) -> complex:
    """Quadratic form (R(z) h, h) of the transform at z."""
    h = np.asarray(h, dtype=complex).reshape(-1)
    return quad_form(transform_matrix(m, g, c, p, z), h)


def evaluate_matrix(m: MomentSequence, g: GramSpace, c: CayleyData,
                    p: SchurParameter, z) -> NevanlinnaValue:
    """Full d x d transform value, recovered by polarization.

    Entries come from the four-term polarization identity applied to the
    quadratic form on h, h +- g and h +- ig for basis vectors h, g.
    """
    gz = transform_matrix(m, g, c, p, z)
    d = m.dim
    eye = np.eye(d, dtype=complex)

    def q(u):
        return quad_form(gz, u)

    r = np.zeros((d, d), dtype=complex)
    for a in range(d):
        for b in range(d):
            # R[a, b] = (R e_b, e_a)
            h, v = eye[b], eye[a]
            r[a, b] = sum(coef * q(h + fac * v) for coef, fac in POLARIZATION)
    return NevanlinnaValue(z=complex(z), R=r)


def direct_oracle(c: CayleyData, p: SchurParameter, m: MomentSequence,
                  g: GramSpace, z, h) -> complex:
    """Same value as evaluate_form via dense inversion of E - zeta (V + Phi)."""
    z = check_evaluation_point(z)
    h = np.asarray(h, dtype=complex).reshape(-1)
    zeta = (z - 1j) / (z + 1j)
    full = np.eye(c.space_dim, dtype=complex) - zeta * (c.V + parameter_operator(c, p))
    _, emb_k = build_embeddings(g)
    y = emb_k.matrix @ h
    resolvent_form = complex(np.vdot(y, solve_checked(full, y, "dense transform")))
    s0, s1, s2 = m.moment(0), m.moment(1), m.moment(2)
    c_top, c_shift, c_lin = _scales(z)
    return (
        c_top * resolvent_form
        - c_shift * quad_form(s2 + s0, h)
        - c_lin * quad_form(z * s0 + s1, h)
    )


class TransformEvaluator:
    """Callable z -> R(z) for a fixed model and parameter.

    Points in the lower half-plane are served by reflection,
    R(conj(z)) = R(z)*, extending the formula beyond its native domain.
    Instances are immutable and safe to share across threads.
    """

    def __init__(self, m: MomentSequence, g: GramSpace, c: CayleyData,
                 p: SchurParameter):
        check_parameter(c, p)
        self._m, self._g, self._c, self._p = m, g, c, p

    @property
    def dim(self):
        return self._m.dim

    def value(self, z) -> NevanlinnaValue:
        return evaluate_matrix(self._m, self._g, self._c, self._p, complex(z))

    def form(self, z, h) -> complex:
        return evaluate_form(self._m, self._g, self._c, self._p, complex(z), h)

    def __call__(self, z):
        z = complex(z)
        if z.imag < 0:
            return self.value(z.conjugate()).R.conj().T
        return self.value(z).R
