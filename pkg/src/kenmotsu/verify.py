"""Kenmotsu axioms and the identities every Kenmotsu manifold satisfies.

Each identity is compared componentwise on frame vectors, exactly.  The
array layouts of ``left``/``right`` in each record follow the geometry
module's conventions; e.g. for R(X,Y)xi the array is ``[X, Y, component]``.
"""

from __future__ import annotations

import numpy as np

from . import checks
from .checks import VerificationReport
from .exact import identity, outer
from .geometry import ConnectionCoefficients, CurvaturePackage, DerivativePackage, Geometry, covariant_derivative_phi, covariant_derivative_vector
from .manifold import FrameManifoldSpec, verify_almost_contact

KENMOTSU_IDS = ("kenmotsu-nabla-phi", "kenmotsu-nabla-xi")
DERIVED_IDS = ("eta-of-curvature", "curvature-xi", "curvature-x-xi", "ricci-xi", "ricci-phi", "nabla-eta", "lie-xi-metric")


class NotKenmotsuError(ValueError):
    """Derived identities were requested on a spec that is not Kenmotsu."""


def verify_kenmotsu(spec: FrameManifoldSpec, conn: ConnectionCoefficients) -> VerificationReport:
    G, phi, xi, eta = spec.metric, spec.phi, spec.xi, spec.eta
    n = spec.dimension
    nabla_phi = covariant_derivative_phi(conn, phi)
    # -g(X, phi Y) xi - eta(Y) phi X, array [X, Y, component]
    g_x_phiy = G.dot(phi)
    rhs_25 = -np.einsum("ij,k->ijk", g_x_phiy, xi) - np.einsum("j,ki->ijk", eta, phi)
    nabla_xi = covariant_derivative_vector(conn, xi)
    rhs_26 = identity(n) - outer(eta, xi)
    return VerificationReport(
        (
            checks.compare("kenmotsu-nabla-phi", [("(nabla_X phi)Y = -g(X,phiY)xi - eta(Y)phiX", nabla_phi, rhs_25)]),
            checks.compare("kenmotsu-nabla-xi", [("nabla_X xi = X - eta(X)xi", nabla_xi, rhs_26)]),
        )
    )


def is_kenmotsu(spec: FrameManifoldSpec, conn: ConnectionCoefficients) -> bool:
    return verify_almost_contact(spec).passed and verify_kenmotsu(spec, conn).passed


def verify_derived_identities(
    spec: FrameManifoldSpec,
    conn: ConnectionCoefficients,
    curv: CurvaturePackage,
    derivs: DerivativePackage,
    force: bool = False,
) -> VerificationReport:
    """Check the consequences of the Kenmotsu axioms.

    These are theorems only under the Kenmotsu hypothesis, so by default a
    non-Kenmotsu spec is refused with :class:`NotKenmotsuError`; ``force``
    evaluates them anyway (useful as a negative control).
    """
    if not force and not is_kenmotsu(spec, conn):
        raise NotKenmotsuError(f"{spec.name} is not Kenmotsu; pass force=True to evaluate anyway")

    G, phi, xi, eta = spec.metric, spec.phi, spec.xi, spec.eta
    R, S = curv.riemann, curv.ricci
    two_n = spec.dimension - 1
    n = spec.dimension
    delta = identity(n)
    eta_eta = outer(eta, eta)

    eta_R = np.einsum("ijkl,l->ijk", R, eta)
    rhs_27 = np.einsum("ik,j->ijk", G, eta) - np.einsum("jk,i->ijk", G, eta)

    R_xi = np.einsum("ijkl,k->ijl", R, xi)
    rhs_28 = np.einsum("i,jl->ijl", eta, delta) - np.einsum("j,il->ijl", eta, delta)

    R_x_xi = np.einsum("ijkl,j->ikl", R, xi)
    rhs_29 = np.einsum("ik,l->ikl", G, xi) - np.einsum("k,il->ikl", eta, delta)

    records = (
        checks.compare("eta-of-curvature", [("eta(R(X,Y)Z) = g(X,Z)eta(Y) - g(Y,Z)eta(X)", eta_R, rhs_27)]),
        checks.compare("curvature-xi", [("R(X,Y)xi = eta(X)Y - eta(Y)X", R_xi, rhs_28)]),
        checks.compare("curvature-x-xi", [("R(X,xi)Y = g(X,Y)xi - eta(Y)X", R_x_xi, rhs_29)]),
        checks.compare("ricci-xi", [("S(X,xi) = -2n eta(X)", S.dot(xi), -two_n * eta)]),
        checks.compare("ricci-phi", [("S(phiX,phiY) = S(X,Y) + 2n eta(X)eta(Y)", phi.T.dot(S).dot(phi), S + two_n * eta_eta)]),
        checks.compare("nabla-eta", [("(nabla_X eta)Y = g(X,Y) - eta(X)eta(Y)", derivs.nabla_eta, G - eta_eta)]),
        checks.compare("lie-xi-metric", [("(L_xi g)(X,Y) = 2[g(X,Y) - eta(X)eta(Y)]", derivs.lie_xi_g, 2 * (G - eta_eta))]),
    )
    return VerificationReport(records)


def verify_structure(geometry: Geometry, force: bool = False) -> VerificationReport:
    """Full conformance report: almost contact axioms, Kenmotsu axioms, derived identities.

    Derived identities on a non-Kenmotsu spec are recorded as skipped unless
    ``force`` is set.
    """
    spec, conn = geometry.spec, geometry.connection
    report = verify_almost_contact(spec) + verify_kenmotsu(spec, conn)
    if force or report.passed:
        return report + verify_derived_identities(spec, conn, geometry.curvature, geometry.derivatives, force=True)
    skipped = tuple(checks.skipped(i, "not evaluated: the spec is not Kenmotsu") for i in DERIVED_IDS)
    return report + VerificationReport(skipped)
