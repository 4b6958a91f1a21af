"""Cayley transform of the shift operator and its defect machinery.

For the symmetric shift A with domain D, the transform V = (A+i)(A-i)^{-1}
is an isometry from M_i = (A-i)D onto M_{-i} = (A+i)D, stored as a full
m x m matrix that vanishes on N_i = H - M_i.  The defect subspaces N_i and
N_{-i} carry canonical orthonormal bases in which constant Schur parameters
(contractions N_i -> N_{-i}) are expressed.
"""

from dataclasses import InitVar, dataclass

import numpy as np

from ._linalg import (
    COND_THRESHOLD,
    cond2,
    norm2,
    orth_columns,
    projector_range,
    readonly,
    solve_checked,
)
from .errors import ConditioningError, ConsistencyError, DomainError, ParameterError
from .gramspace import GramSpace, ShiftOperator

EXCLUSION_BAND = 1e-6
CONTRACTION_TOL = 1e-12
UNITARY_TOL = 1e-8


@dataclass(frozen=True)
class CayleyData:
    """The isometry V with projectors and defect bases.

    `basis_mi` spans M_i; `defect_in_basis` spans N_i = H - D(V) and
    `defect_out_basis` spans N_{-i} = H - R(V).
    """

    V: np.ndarray
    P_Mi: np.ndarray
    P_Ni: np.ndarray
    P_Mmi: np.ndarray
    P_Nmi: np.ndarray
    defect_in_basis: np.ndarray
    defect_out_basis: np.ndarray
    defect_dims: tuple
    basis_mi: np.ndarray

    def __post_init__(self):
        for name in (
            "V",
            "P_Mi",
            "P_Ni",
            "P_Mmi",
            "P_Nmi",
            "defect_in_basis",
            "defect_out_basis",
            "basis_mi",
        ):
            object.__setattr__(self, name, readonly(getattr(self, name)))

    @property
    def space_dim(self):
        return self.V.shape[0]

    @property
    def determinate(self):
        return self.defect_dims == (0, 0)


@dataclass(frozen=True)
class SchurParameter:
    """A constant contraction from N_i to N_{-i} in the defect bases.

    `matrix` has shape (d_minus, d_plus) and spectral norm <= 1.
    """

    matrix: np.ndarray
    tol: InitVar[float] = CONTRACTION_TOL

    def __post_init__(self, tol):
        mat = np.atleast_2d(np.asarray(self.matrix, dtype=complex))
        if norm2(mat) > 1.0 + tol:
            raise ParameterError(
                f"Schur parameter has norm {norm2(mat):.12f} > 1"
            )
        object.__setattr__(self, "matrix", readonly(mat))

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def is_unitary(self):
        mat = self.matrix
        if mat.shape[0] != mat.shape[1]:
            return False
        if mat.shape[0] == 0:
            return True
        gram = mat.conj().T @ mat
        return norm2(gram - np.eye(mat.shape[1])) <= UNITARY_TOL

    @classmethod
    def zero(cls, defect_dims):
        d_plus, d_minus = defect_dims
        return cls(np.zeros((d_minus, d_plus), dtype=complex))

    @classmethod
    def scalar_unitary(cls, theta, defect_dims):
        """exp(i theta) times the identity; defect dims must be equal."""
        d_plus, d_minus = defect_dims
        if d_plus != d_minus:
            raise ParameterError("scalar unitary parameter needs equal defect dims")
        return cls(np.exp(1j * float(theta)) * np.eye(d_plus, dtype=complex))


def check_evaluation_point(z, band=EXCLUSION_BAND):
    z = complex(z)
    if z.imag <= 0:
        raise DomainError(f"z={z} is not in the open upper half-plane")
    if abs(z - 1j) < band:
        raise DomainError(f"z={z} is inside the excluded band |z-i| < {band:g}")
    return z


def check_parameter(c: CayleyData, p: SchurParameter) -> SchurParameter:
    d_plus, d_minus = c.defect_dims
    if p.shape != (d_minus, d_plus):
        raise ParameterError(
            f"Schur parameter shape {p.shape} does not match defect dims "
            f"({d_plus}, {d_minus})"
        )
    return p


def cayley_transform(a: ShiftOperator, g: GramSpace) -> CayleyData:
    """Compute V = (A+i)(A-i)^{-1} on M_i together with defect data."""
    m = g.rank
    dom = projector_range(a.domain_proj)
    eye = np.eye(m, dtype=complex)
    w_minus = (a.action - 1j * eye) @ dom
    w_plus = (a.action + 1j * eye) @ dom
    if dom.shape[1]:
        smin = float(np.linalg.svd(w_minus, compute_uv=False).min())
        # symmetry makes ||(A-i)u||^2 = ||Au||^2 + ||u||^2 >= ||u||^2
        if smin < 0.5:
            raise ConsistencyError(
                f"(A - i) nearly singular on the domain (sigma_min {smin:.3e}); "
                "shift symmetry violated"
            )
    v_mat = w_plus @ np.linalg.pinv(w_minus)
    basis_mi = orth_columns(w_minus)
    basis_mmi = orth_columns(w_plus)
    p_mi = basis_mi @ basis_mi.conj().T
    p_mmi = basis_mmi @ basis_mmi.conj().T
    p_ni = eye - p_mi
    p_nmi = eye - p_mmi
    defect_in = projector_range(p_ni)
    defect_out = projector_range(p_nmi)
    dims = (defect_in.shape[1], defect_out.shape[1])
    if dims[0] != dims[1] or basis_mi.shape[1] != dom.shape[1]:
        raise ConsistencyError(
            f"unequal defect numbers {dims} (domain dim {dom.shape[1]}, "
            f"M_i dim {basis_mi.shape[1]}, space dim {m})"
        )
    gram_v = (v_mat @ basis_mi).conj().T @ (v_mat @ basis_mi)
    if norm2(gram_v - np.eye(basis_mi.shape[1])) > 1e-8:
        raise ConsistencyError("Cayley transform is not isometric on M_i")
    if norm2(v_mat @ w_minus - w_plus) > 1e-8 * max(1.0, norm2(w_plus)):
        raise ConsistencyError("V(A - i) != (A + i) on the domain")
    return CayleyData(
        V=v_mat,
        P_Mi=p_mi,
        P_Ni=p_ni,
        P_Mmi=p_mmi,
        P_Nmi=p_nmi,
        defect_in_basis=defect_in,
        defect_out_basis=defect_out,
        defect_dims=dims,
        basis_mi=basis_mi,
    )


def parameter_operator(c: CayleyData, p: SchurParameter):
    """The Schur parameter as an m x m operator, zero outside N_i."""
    check_parameter(c, p)
    return c.defect_out_basis @ p.matrix @ c.defect_in_basis.conj().T


def unitary_extension(c: CayleyData, p: SchurParameter):
    """V extended by a unitary parameter across the defect subspaces."""
    check_parameter(c, p)
    if not p.is_unitary:
        raise ParameterError("Schur parameter must be unitary for an extension in H")
    u = c.V + parameter_operator(c, p)
    m = c.space_dim
    if norm2(u.conj().T @ u - np.eye(m)) > 1e-8:
        raise ConsistencyError("extension of V is not unitary")
    return u


def inverse_cayley(u, cond_threshold=COND_THRESHOLD):
    """Self-adjoint operator with Cayley transform `u`: i(U+1)(U-1)^{-1}.

    Fails with a conditioning error when 1 is (numerically) an eigenvalue
    of `u`; such extensions have no inverse transform inside the space.
    """
    m = u.shape[0]
    eye = np.eye(m, dtype=complex)
    shifted = u - eye
    cond = cond2(shifted)
    if not np.isfinite(cond) or cond > cond_threshold:
        raise ConditioningError(
            "U - 1 is numerically singular; no in-space self-adjoint transform", cond
        )
    return 1j * np.linalg.solve(shifted.T, (u + eye).T).T


def resolvent_link_check(c: CayleyData, p: SchurParameter, z) -> float:
    """Residual of the resolvent identity linking U and its inverse Cayley.

    With zeta = (z-i)/(z+i) and A~ the inverse Cayley transform of the
    unitary extension U, returns
    || (1-zeta)(E - zeta U)^{-1} - E - (z-i)(A~ - z)^{-1} ||_2.
    """
    z = check_evaluation_point(z)
    u = unitary_extension(c, p)
    a_tilde = inverse_cayley(u)
    m = c.space_dim
    eye = np.eye(m, dtype=complex)
    zeta = (z - 1j) / (z + 1j)
    lhs = (1.0 - zeta) * solve_checked(eye - zeta * u, eye, "resolvent link")
    rhs = eye + (z - 1j) * solve_checked(a_tilde - z * eye, eye, "resolvent link")
    return norm2(lhs - rhs)
