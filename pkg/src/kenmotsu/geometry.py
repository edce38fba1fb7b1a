"""Levi-Civita connection, curvature and derivative operators on a frame-homogeneous manifold.

All component functions are constant in the frame, so every term of the form
X(f) vanishes and the formulas below are purely algebraic.  That is a property
of the model class, not an approximation.

Index conventions (0-based arrays):

* ``gamma[i, j, k]``   k-th component of nabla_{e_i} e_j
* ``riemann[i, j, k, l]``  l-th component of R(e_i, e_j) e_k
* ``nabla_T[i, j, k]``  (nabla_{e_i} T)(e_j, e_k) for a (0,2) tensor T
* ``nabla_phi[i, j, k]``  k-th component of (nabla_{e_i} phi) e_j
* ``nabla_xi[i, k]``   k-th component of nabla_{e_i} xi
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .exact import freeze, is_zero, outer
from .manifold import FrameManifoldSpec


class InvariantViolation(AssertionError):
    """An identity that must hold for every input failed: an engine bug."""


@dataclass(frozen=True)
class ConnectionCoefficients:
    gamma: np.ndarray

    def covariant(self, i: int, v) -> np.ndarray:
        """nabla_{e_i} v for a constant-coefficient vector field v."""
        return np.einsum("j,jk->k", np.asarray(v, dtype=object), self.gamma[i])


@dataclass(frozen=True)
class CurvaturePackage:
    riemann: np.ndarray
    ricci: np.ndarray
    scalar: Fraction


@dataclass(frozen=True)
class DerivativePackage:
    nabla_S: np.ndarray
    nabla_eta: np.ndarray
    nabla_phi: np.ndarray
    nabla_xi: np.ndarray
    lie_xi_g: np.ndarray
    d_eta: np.ndarray


def koszul_connection(spec: FrameManifoldSpec) -> ConnectionCoefficients:
    G, c = spec.metric, spec.c
    # B[a,b,c] = g(e_a, [e_b, e_c])
    B = np.einsum("am,bcm->abc", G, c)
    # 2 g(nabla_i e_j, e_k) = -g(e_i,[e_j,e_k]) - g(e_j,[e_i,e_k]) + g(e_k,[e_i,e_j])
    lowered = (-B + (-B.transpose(1, 0, 2)) + B.transpose(1, 2, 0)) / 2
    gamma = freeze(np.einsum("ijk,kl->ijl", lowered, spec.metric_inverse))

    n = spec.dimension
    for i, j, k in product(range(n), repeat=3):
        if gamma[i, j, k] - gamma[j, i, k] != c[i, j, k]:
            raise InvariantViolation(f"connection has torsion at ({i + 1},{j + 1},{k + 1})")
    compat = np.einsum("ikl,lj->ijk", gamma, G) + np.einsum("ijl,lk->ijk", gamma, G)
    if not is_zero(compat):
        raise InvariantViolation("connection is not metric compatible")
    return ConnectionCoefficients(gamma)


def riemann_tensor(spec: FrameManifoldSpec, conn: ConnectionCoefficients) -> np.ndarray:
    """R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z on frame vectors."""
    g, c = conn.gamma, spec.c
    R = (
        np.einsum("jkm,iml->ijkl", g, g)
        - np.einsum("ikm,jml->ijkl", g, g)
        - np.einsum("ijm,mkl->ijkl", c, g)
    )
    R = freeze(R)
    if not is_zero(R + R.transpose(1, 0, 2, 3)):
        raise InvariantViolation("Riemann tensor not antisymmetric in its first pair")
    return R


def lower_riemann(spec: FrameManifoldSpec, R) -> np.ndarray:
    """g(R(e_i,e_j)e_k, e_l)."""
    return np.einsum("ijkm,ml->ijkl", R, spec.metric)


def check_curvature_symmetries(spec: FrameManifoldSpec, R) -> None:
    """Raise InvariantViolation unless the algebraic curvature identities all hold."""
    low = lower_riemann(spec, R)
    if not is_zero(R + R.transpose(1, 0, 2, 3)):
        raise InvariantViolation("R(X,Y) != -R(Y,X)")
    if not is_zero(low + low.transpose(0, 1, 3, 2)):
        raise InvariantViolation("g(R(X,Y)Z,W) not antisymmetric in (Z,W)")
    if not is_zero(low - low.transpose(2, 3, 0, 1)):
        raise InvariantViolation("pair symmetry of the lowered curvature fails")
    bianchi = R + R.transpose(1, 2, 0, 3) + R.transpose(2, 0, 1, 3)
    if not is_zero(bianchi):
        raise InvariantViolation("first Bianchi identity fails")


def ricci_and_scalar(spec: FrameManifoldSpec, R) -> tuple[np.ndarray, Fraction]:
    # S(Y,Z) = sum_ab G^ab g(R(e_a,Y)Z, e_b) = trace of X -> R(X,Y)Z
    S = freeze(np.einsum("ajka->jk", R))
    if not is_zero(S - S.T):
        raise InvariantViolation("Ricci tensor is not symmetric")
    r = Fraction(np.einsum("ab,ab->", spec.metric_inverse, S))
    return S, r


def curvature(spec: FrameManifoldSpec, conn: ConnectionCoefficients) -> CurvaturePackage:
    R = riemann_tensor(spec, conn)
    check_curvature_symmetries(spec, R)
    S, r = ricci_and_scalar(spec, R)
    return CurvaturePackage(R, S, r)


def covariant_derivative_bilinear(conn: ConnectionCoefficients, T) -> np.ndarray:
    """(nabla_X T)(Y,Z) = X(T(Y,Z)) - T(nabla_X Y, Z) - T(Y, nabla_X Z) with constant T."""
    g = conn.gamma
    T = np.asarray(T, dtype=object)
    return freeze(-(np.einsum("ijm,mk->ijk", g, T) + np.einsum("ikm,jm->ijk", g, T)))


def covariant_derivative_oneform(conn: ConnectionCoefficients, omega) -> np.ndarray:
    """(nabla_{e_i} omega)(e_j) = -omega(nabla_{e_i} e_j)."""
    return freeze(-np.einsum("ijm,m->ij", conn.gamma, np.asarray(omega, dtype=object)))


def covariant_derivative_phi(conn: ConnectionCoefficients, phi) -> np.ndarray:
    """(nabla_X phi)Y = nabla_X(phi Y) - phi(nabla_X Y)."""
    g = conn.gamma
    phi = np.asarray(phi, dtype=object)
    return freeze(np.einsum("imk,mj->ijk", g, phi) - np.einsum("ijm,km->ijk", g, phi))


def covariant_derivative_vector(conn: ConnectionCoefficients, v) -> np.ndarray:
    return freeze(np.einsum("j,ijk->ik", np.asarray(v, dtype=object), conn.gamma))


def lie_derivative_metric(spec: FrameManifoldSpec, conn: ConnectionCoefficients, scale=1) -> np.ndarray:
    """Lie derivative of g along ``scale * xi`` (``scale`` a constant).

    (L_V g)(X,Y) = g(nabla_X V, Y) + g(X, nabla_Y V).
    """
    nv = covariant_derivative_vector(conn, spec.xi) * Fraction(scale)
    first = np.einsum("ik,kj->ij", nv, spec.metric)
    return freeze(first + first.T)


def exterior_derivative_eta(nabla_eta) -> np.ndarray:
    """d eta(X,Y) = ((nabla_X eta)Y - (nabla_Y eta)X) / 2."""
    nabla_eta = np.asarray(nabla_eta, dtype=object)
    return freeze((nabla_eta - nabla_eta.T) / 2)


def derivatives(spec: FrameManifoldSpec, conn: ConnectionCoefficients, curv: CurvaturePackage) -> DerivativePackage:
    nabla_eta = covariant_derivative_oneform(conn, spec.eta)
    return DerivativePackage(
        nabla_S=covariant_derivative_bilinear(conn, curv.ricci),
        nabla_eta=nabla_eta,
        nabla_phi=covariant_derivative_phi(conn, spec.phi),
        nabla_xi=covariant_derivative_vector(conn, spec.xi),
        lie_xi_g=lie_derivative_metric(spec, conn),
        d_eta=exterior_derivative_eta(nabla_eta),
    )


@dataclass(frozen=True)
class Geometry:
    """Everything computed from a spec, once.  Reports read from this only."""

    spec: FrameManifoldSpec
    connection: ConnectionCoefficients
    curvature: CurvaturePackage
    derivatives: DerivativePackage

    @property
    def eta_eta(self) -> np.ndarray:
        return outer(self.spec.eta, self.spec.eta)


def compute_geometry(spec: FrameManifoldSpec) -> Geometry:
    conn = koszul_connection(spec)
    curv = curvature(spec, conn)
    return Geometry(spec, conn, curv, derivatives(spec, conn, curv))
