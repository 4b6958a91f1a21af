"""From transform values back to measures and moments.

Rebuilds solutions numerically: Herglotz validation of evaluated
transforms, moment recovery from the large-|z| expansion, interval masses
by Stieltjes-Perron inversion with an epsilon schedule, and exact spectral
recovery when the truncation is determinate.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from ._linalg import COND_THRESHOLD, herm, imag_part, norm2, readonly
from .cayley import CayleyData, inverse_cayley
from .errors import (
    ConditioningError,
    DomainError,
    IndeterminateError,
    ValidationError,
)
from .gramspace import EmbeddingI, GramSpace
from .measures import DiscreteMatrixMeasure

HERGLOTZ_TOL = 1e-8
DEFAULT_EPS_SCHEDULE = (1e-2, 5e-3, 2.5e-3, 1.25e-3)
DEFAULT_QUAD_DENSITY = 2001  # sample points per unit length, composite Simpson
MIN_EPS = 1e-4
NODE_CLUSTER_TOL = 1e-8


@dataclass(frozen=True)
class HerglotzReport:
    passed: bool
    min_imag_eigenvalue: float
    worst_z: complex
    threshold: float


@dataclass(frozen=True)
class MomentFit:
    """Least-squares estimates of S_0..S_k from values on the imaginary axis."""

    estimates: np.ndarray  # (k_max+1, d, d)
    residual: float
    cond: float

    def __post_init__(self):
        object.__setattr__(self, "estimates", readonly(self.estimates))


@dataclass(frozen=True)
class IntervalMass:
    """Extrapolated increment over [a, b] plus the per-epsilon table."""

    a: float
    b: float
    increment: np.ndarray
    per_eps: tuple  # ((eps, d x d matrix), ...)
    converged: bool

    def __post_init__(self):
        object.__setattr__(self, "increment", readonly(self.increment))


@dataclass(frozen=True)
class ReconstructedDistribution:
    """Increments of F over consecutive cells of a cutpoint grid."""

    grid: np.ndarray  # (M+1,) increasing cutpoints
    increments: np.ndarray  # (M, d, d)
    epsilon_schedule: tuple
    converged: tuple

    def __post_init__(self):
        object.__setattr__(self, "grid", readonly(np.asarray(self.grid, float)))
        object.__setattr__(self, "increments", readonly(self.increments))

    def total_mass(self):
        return self.increments.sum(axis=0)


def herglotz_check(values, threshold=HERGLOTZ_TOL) -> HerglotzReport:
    """Smallest eigenvalue of Im R(z) over the supplied values.

    Passes iff the minimum stays above -threshold; all z must lie in C+.
    """
    worst = np.inf
    worst_z = None
    for val in values:
        if val.z.imag <= 0:
            raise DomainError(f"Herglotz check needs z in C+, got {val.z}")
        low = float(np.linalg.eigvalsh(imag_part(val.R)).min())
        if low < worst:
            worst, worst_z = low, val.z
    if worst_z is None:
        raise ValidationError("no transform values supplied")
    return HerglotzReport(
        passed=bool(worst >= -threshold),
        min_imag_eigenvalue=worst,
        worst_z=worst_z,
        threshold=float(threshold),
    )


def asymptotic_moments(evaluator, k_max: int, y_grid) -> MomentFit:
    """Fit R(iy) ~= -sum_k S_k (iy)^{-k-1} on y_grid by least squares.

    `evaluator` is any callable z -> d x d array.  Columns of the design
    matrix are normalized before solving; the fit is rejected when its
    condition number passes 1e12.  Estimates are symmetrized.
    """
    y_grid = np.asarray(y_grid, dtype=float).reshape(-1)
    if k_max < 0 or k_max > 4:
        raise ValidationError("k_max must be between 0 and 4 (conditioning)")
    if y_grid.size < k_max + 2:
        raise ValidationError("need at least k_max + 2 sample heights")
    if y_grid.min() < 1e2 or y_grid.max() > 1e5:
        raise ValidationError("y_grid must lie within [1e2, 1e5]")
    samples = np.stack([np.asarray(evaluator(1j * y), dtype=complex) for y in y_grid])
    d = samples.shape[1]
    design = np.stack(
        [-((1j * y_grid) ** (-k - 1)) for k in range(k_max + 1)], axis=1
    )
    col_scale = np.linalg.norm(design, axis=0)
    scaled = design / col_scale
    cond = float(np.linalg.cond(scaled))
    if not np.isfinite(cond) or cond > COND_THRESHOLD:
        raise ConditioningError("asymptotic moment fit is ill-conditioned", cond)
    rhs = samples.reshape(y_grid.size, d * d)
    coeff, _, _, _ = np.linalg.lstsq(scaled, rhs, rcond=None)
    coeff = coeff / col_scale[:, None]
    residual = float(np.linalg.norm(design @ coeff - rhs)) / max(
        1.0, float(np.linalg.norm(rhs))
    )
    estimates = np.stack([herm(coeff[k].reshape(d, d)) for k in range(k_max + 1)])
    return MomentFit(estimates=estimates, residual=residual, cond=cond)


def _simpson_points(a, b, n_quad):
    count = max(int(np.ceil((b - a) * n_quad)), 3)
    if count % 2 == 0:
        count += 1
    return np.linspace(a, b, count)


def stieltjes_perron(evaluator, a: float, b: float, eps=DEFAULT_EPS_SCHEDULE,
                     n_quad=DEFAULT_QUAD_DENSITY) -> IntervalMass:
    """Increment F(b) - F(a) from (1/pi) integral of Im R(x + i eps).

    Composite Simpson with `n_quad` sample points per unit length is
    applied for each epsilon of the decreasing schedule; the returned
    increment extrapolates the last two values linearly in epsilon
    (two-point Richardson).  Convergence compares successive Richardson
    extrapolants (raw values for schedules shorter than three): a gap
    above 1e-3 flags the result as non-converged; the value is still
    returned.
    """
    if not a < b:
        raise ValidationError("need a < b")
    eps = tuple(float(e) for e in eps)
    if not eps:
        raise ValidationError("epsilon schedule is empty")
    if any(e2 >= e1 for e1, e2 in zip(eps, eps[1:])):
        raise ValidationError("epsilon schedule must be strictly decreasing")
    if eps[-1] < MIN_EPS:
        raise ValidationError(f"epsilon must stay >= {MIN_EPS:g}")
    xs = _simpson_points(a, b, n_quad)
    table = []
    for e in eps:
        vals = np.stack(
            [imag_part(np.asarray(evaluator(x + 1j * e), complex)) for x in xs]
        )
        table.append((e, herm(simpson(vals, x=xs, axis=0) / np.pi)))
    def richardson(pair_lo, pair_hi):
        (e_prev, v_prev), (e_last, v_last) = pair_lo, pair_hi
        return v_last + (v_last - v_prev) * (e_last / (e_prev - e_last))

    if len(table) >= 2:
        increment = richardson(table[-2], table[-1])
        if len(table) >= 3:
            previous = richardson(table[-3], table[-2])
            converged = norm2(increment - previous) <= 1e-3
        else:
            converged = norm2(table[-1][1] - table[-2][1]) <= 1e-3
    else:
        increment = table[0][1]
        converged = True
    return IntervalMass(
        a=float(a),
        b=float(b),
        increment=herm(increment),
        per_eps=tuple(table),
        converged=bool(converged),
    )


def reconstruct_distribution(evaluator, cutpoints, eps=DEFAULT_EPS_SCHEDULE,
                             n_quad=DEFAULT_QUAD_DENSITY) -> ReconstructedDistribution:
    """Increments over consecutive cells of an increasing cutpoint grid."""
    cutpoints = np.asarray(cutpoints, dtype=float).reshape(-1)
    if cutpoints.size < 2 or np.any(np.diff(cutpoints) <= 0):
        raise ValidationError("cutpoints must be at least two increasing reals")
    cells = [
        stieltjes_perron(evaluator, lo, hi, eps=eps, n_quad=n_quad)
        for lo, hi in zip(cutpoints, cutpoints[1:])
    ]
    return ReconstructedDistribution(
        grid=cutpoints,
        increments=np.stack([c.increment for c in cells]),
        epsilon_schedule=tuple(float(e) for e in eps),
        converged=tuple(c.converged for c in cells),
    )


def recover_discrete(g: GramSpace, c: CayleyData, emb: EmbeddingI) -> DiscreteMatrixMeasure:
    """Exact discrete solution in the determinate case.

    With defect dims (0, 0) the shift extends to a unique self-adjoint
    operator; its eigenprojections P_j give nodes t_j and weights
    W_j = I* P_j I.  Nearby eigenvalues (within 1e-8 * ||A||) are merged
    before weights are formed.
    """
    if not c.determinate:
        raise IndeterminateError(
            f"defect dims {c.defect_dims} != (0, 0): indeterminate at this "
            "truncation; evaluate the transform or invert it instead"
        )
    a_full = herm(inverse_cayley(c.V))
    eigs, vecs = np.linalg.eigh(a_full)
    gap = NODE_CLUSTER_TOL * max(1.0, norm2(a_full))
    nodes, weights = [], []
    start = 0
    for stop in range(1, eigs.size + 1):
        if stop == eigs.size or eigs[stop] - eigs[stop - 1] > gap:
            group = vecs[:, start:stop]
            coeff = group.conj().T @ emb.matrix
            weight = coeff.conj().T @ coeff
            if float(np.trace(weight).real) > 1e-12 * max(
                1.0, float(np.trace(g.hankel.block(0, 0)).real)
            ):
                nodes.append(float(eigs[start:stop].mean()))
                weights.append(weight)
            start = stop
    if not nodes:
        raise ValidationError("recovered measure is empty (zero moment sequence?)")
    return DiscreteMatrixMeasure(nodes=np.array(nodes), weights=np.stack(weights))
