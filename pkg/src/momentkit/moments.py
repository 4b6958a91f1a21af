"""Truncated Hermitian matrix moment sequences and their block Hankel matrices.

Solvability of the moment problem at truncation order 2n is decided by
positive semidefiniteness of the block Hankel matrix whose (j, k) block is
S_{j+k}.
"""

from dataclasses import InitVar, dataclass

import numpy as np

from ._linalg import herm, herm_defect, readonly
from .errors import ValidationError
from .measures import DiscreteMatrixMeasure

TOL_HERM = 1e-10
TOL_PSD = 1e-10
TOL_RANK = 1e-10


@dataclass(frozen=True)
class MomentSequence:
    """Moments S_0..S_{2n} on C^d, Hermitian within tol_herm and symmetrized.

    `moments` accepts a (2n+1, d, d) array, a list of d x d matrices, or a
    flat list of scalars for d = 1.
    """

    moments: np.ndarray
    tol_herm: InitVar[float] = TOL_HERM

    def __post_init__(self, tol_herm):
        try:
            mats = np.asarray(self.moments, dtype=complex)
        except (ValueError, TypeError) as exc:
            raise ValidationError(f"moments are not a homogeneous array: {exc}") from exc
        if mats.ndim == 1:
            mats = mats.reshape(-1, 1, 1)
        if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
            raise ValidationError("moments must be a list of square matrices")
        if mats.shape[0] < 3 or mats.shape[0] % 2 == 0:
            raise ValidationError(
                "need an even truncation order 2n >= 2, i.e. 2n+1 >= 3 moments"
            )
        for k, s in enumerate(mats):
            if herm_defect(s) > tol_herm * (1.0 + float(np.linalg.norm(s))):
                raise ValidationError(f"moment S_{k} is not Hermitian within tolerance")
        mats = np.stack([herm(s) for s in mats])
        s0_min = float(np.linalg.eigvalsh(mats[0]).min())
        if s0_min < -TOL_PSD * max(1.0, float(np.linalg.norm(mats[0], 2))):
            raise ValidationError("S_0 is not positive semidefinite")
        object.__setattr__(self, "moments", readonly(mats))

    @property
    def dim(self):
        return self.moments.shape[1]

    @property
    def order(self):
        return self.moments.shape[0] - 1

    @property
    def n(self):
        return self.order // 2

    def moment(self, k):
        return self.moments[k]


@dataclass(frozen=True)
class BlockHankel:
    """The d(n+1) x d(n+1) matrix with (j, k) block S_{j+k}."""

    n: int
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", readonly(np.asarray(self.matrix, complex)))

    @property
    def dim(self):
        return self.matrix.shape[0] // (self.n + 1)

    def block(self, j, k):
        d = self.dim
        return self.matrix[j * d : (j + 1) * d, k * d : (k + 1) * d]


@dataclass(frozen=True)
class SolvabilityReport:
    solvable: bool
    min_eigenvalue: float
    rank: int
    tolerance_used: float


def build_hankel(m: MomentSequence) -> BlockHankel:
    """Assemble the block Hankel matrix of S_0..S_{2n}."""
    d, n = m.dim, m.n
    gram = np.zeros((d * (n + 1), d * (n + 1)), dtype=complex)
    for j in range(n + 1):
        for k in range(n + 1):
            gram[j * d : (j + 1) * d, k * d : (k + 1) * d] = m.moment(j + k)
    return BlockHankel(n=n, matrix=gram)


def check_solvability(m: MomentSequence, tol_psd=TOL_PSD, tol_rank=TOL_RANK):
    """Eigenvalue-based PSD decision on the block Hankel matrix.

    solvable iff min eigenvalue >= -tol_psd * ||Gamma||_2; rank counts
    eigenvalues above tol_rank * ||Gamma||_2.
    """
    gamma = build_hankel(m).matrix
    eigs = np.linalg.eigvalsh(gamma)
    scale = float(np.abs(eigs).max()) if eigs.size else 0.0
    min_eig = float(eigs.min()) if eigs.size else 0.0
    return SolvabilityReport(
        solvable=bool(min_eig >= -tol_psd * scale),
        min_eigenvalue=min_eig,
        rank=int(np.count_nonzero(eigs > tol_rank * scale)),
        tolerance_used=float(tol_psd),
    )


def generate_from_measure(mu: DiscreteMatrixMeasure, order: int) -> MomentSequence:
    """Moments S_k = sum_j t_j^k W_j of a discrete measure, k = 0..order."""
    if order < 2 or order % 2:
        raise ValidationError("order must be an even integer >= 2")
    return MomentSequence(np.stack([mu.moment(k) for k in range(order + 1)]))
