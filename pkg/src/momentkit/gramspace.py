"""Finite-dimensional quotient Hilbert space built from a block Hankel matrix.

Ambient coefficient vectors u = (h_0; ...; h_n) stand for formal sums of
degree-tagged vectors; their classes carry the inner product
<[u], [v]> = v* Gamma_n u.  Working coordinates are orthonormal: the thin
eigendecomposition Gamma_n = U diag(lam) U* gives the coordinate map
Q = diag(sqrt(lam_r)) U_r* on eigenvalues above the rank cut, so that
(Qu) . conj(Qv) reproduces the quotient inner product.  The shift operator
maps degree j to degree j+1 on the span of degrees <= n-1.
"""

from dataclasses import dataclass

import numpy as np

from ._linalg import inner, norm2, readonly
from .errors import (
    ConsistencyError,
    ShiftConsistencyError,
    SolvabilityError,
    ValidationError,
)
from .moments import TOL_RANK, BlockHankel, MomentSequence, build_hankel

SHIFT_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class GramSpace:
    """Orthonormal-coordinate model of the quotient space of a moment sequence."""

    hankel: BlockHankel
    coord_map: np.ndarray  # (m, d(n+1)): ambient coefficients -> coordinates
    gram_scale: float  # ||Gamma_n||_2
    tol_rank: float

    def __post_init__(self):
        object.__setattr__(self, "coord_map", readonly(self.coord_map))

    @property
    def rank(self):
        return self.coord_map.shape[0]

    @property
    def dim(self):
        return self.hankel.dim

    @property
    def n(self):
        return self.hankel.n

    @property
    def dim_ambient(self):
        return self.coord_map.shape[1]

    @property
    def gram(self):
        return self.hankel.matrix


@dataclass(frozen=True)
class GramVector:
    """A vector of the quotient space in orthonormal coordinates."""

    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "coords", readonly(np.asarray(self.coords, complex).reshape(-1))
        )

    @property
    def norm(self):
        return float(np.linalg.norm(self.coords))

    def inner(self, other):
        """<self, other>, linear in self."""
        return inner(self.coords, other.coords)

    def __add__(self, other):
        return GramVector(self.coords + other.coords)

    def __sub__(self, other):
        return GramVector(self.coords - other.coords)

    def __mul__(self, scalar):
        return GramVector(self.coords * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True)
class ShiftOperator:
    """The degree shift as an m x m matrix, zero outside its domain.

    `domain_proj` projects onto the span of classes of degrees <= n-1;
    `action` realizes degree j -> degree j+1 there.
    """

    action: np.ndarray
    domain_proj: np.ndarray
    domain_dim: int

    def __post_init__(self):
        object.__setattr__(self, "action", readonly(self.action))
        object.__setattr__(self, "domain_proj", readonly(self.domain_proj))


@dataclass(frozen=True)
class EmbeddingI:
    """h -> class of h at degree 0 (an m x d matrix)."""

    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", readonly(self.matrix))


@dataclass(frozen=True)
class EmbeddingK:
    """h -> class of h at degree 1 minus i times degree 0 (an m x d matrix)."""

    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", readonly(self.matrix))


def construct_space(m: MomentSequence, tol_rank=TOL_RANK) -> GramSpace:
    """Build the quotient space from the thin eigendecomposition of Gamma_n."""
    hankel = build_hankel(m)
    eigs, vecs = np.linalg.eigh(hankel.matrix)
    scale = float(np.abs(eigs).max()) if eigs.size else 0.0
    if eigs.size and float(eigs.min()) < -tol_rank * scale:
        raise SolvabilityError(
            f"block Hankel matrix is indefinite: min eigenvalue {eigs.min():.3e} "
            f"with tolerance {tol_rank:.1e} * {scale:.3e}"
        )
    keep = eigs > tol_rank * scale
    coord_map = np.sqrt(eigs[keep])[:, None] * vecs[:, keep].conj().T
    return GramSpace(
        hankel=hankel, coord_map=coord_map, gram_scale=scale, tol_rank=tol_rank
    )


def embed(g: GramSpace, h, j: int) -> GramVector:
    """Coordinates of the class of vector h placed at degree j (0 <= j <= n)."""
    if not 0 <= j <= g.n:
        raise ValidationError(f"degree j={j} out of range 0..{g.n}")
    h = np.asarray(h, dtype=complex).reshape(-1)
    if h.size != g.dim:
        raise ValidationError(f"vector has dim {h.size}, space has dim {g.dim}")
    d = g.dim
    return GramVector(g.coord_map[:, j * d : (j + 1) * d] @ h)


def build_shift(g: GramSpace, residual_tol=SHIFT_RESIDUAL_TOL) -> ShiftOperator:
    """Construct the shift operator on the span of degrees <= n-1.

    Well-definedness on the quotient requires the ambient shift to map
    kernel vectors of Gamma_n supported on degrees <= n-1 into the kernel;
    the residual of that map (relative to ||Gamma_n||_2^(1/2)) must stay
    below `residual_tol`, otherwise the truncated sequence is rejected as
    not shift-consistent.
    """
    if g.n < 1:
        raise ValidationError("shift needs truncation order >= 2")
    d = g.dim
    q_low = g.coord_map[:, : d * g.n]
    q_up = g.coord_map[:, d:]
    sqrt_scale = np.sqrt(max(g.gram_scale, np.finfo(float).tiny))
    # one SVD of Q_low yields the domain basis, the pseudo-inverse, and the
    # ambient kernel directions at the same singular-value cut as the rank
    # decision on Gamma_n
    u, s, vh = np.linalg.svd(q_low, full_matrices=True)
    cut = np.sqrt(g.tol_rank) * sqrt_scale
    keep = s > cut
    k = int(np.count_nonzero(keep))
    null_mask = np.concatenate([~keep, np.ones(vh.shape[0] - s.size, dtype=bool)])
    kernel = vh.conj().T[:, null_mask]
    if kernel.shape[1]:
        residual = norm2(q_up @ kernel) / sqrt_scale
        if residual > residual_tol:
            raise ShiftConsistencyError(residual)
    basis = u[:, : s.size][:, keep]
    pinv_low = vh.conj().T[:, : s.size][:, keep] @ ((1.0 / s[keep])[:, None] * basis.conj().T)
    action = q_up @ pinv_low
    domain_proj = basis @ basis.conj().T
    compressed = domain_proj @ action @ domain_proj
    sym_defect = norm2(compressed - compressed.conj().T)
    if sym_defect > 1e-8 * max(1.0, norm2(action)):
        raise ConsistencyError(
            f"shift operator not symmetric on its domain (defect {sym_defect:.3e})"
        )
    return ShiftOperator(action=action, domain_proj=domain_proj, domain_dim=k)


def build_embeddings(g: GramSpace):
    """The degree-0 embedding and its shifted companion mapping into M_i."""
    if g.n < 1:
        raise ValidationError("embeddings need truncation order >= 2")
    d = g.dim
    i_mat = g.coord_map[:, :d]
    k_mat = g.coord_map[:, d : 2 * d] - 1j * i_mat
    return EmbeddingI(matrix=i_mat), EmbeddingK(matrix=k_mat)
