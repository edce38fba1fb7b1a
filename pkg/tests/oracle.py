"""Independent brute-force evaluator for connection, curvature and Ricci derivatives.

Deliberately shares no code with the package.  Works in sympy with exact
Rationals and uses different characterisations than the engine:

* the connection is the unique solution of the torsion-free and
  metric-compatibility conditions, solved as one linear system;
* curvature comes from composing the nabla_{e_i} operators as matrices;
* Ricci is the G^{-1}-contraction of the lowered curvature.
"""

from itertools import product

import sympy as sp


def _m(x):
    return sp.Matrix(x).applyfunc(sp.Rational)


def connection(G, c):
    """Gamma[i][j][k] = k-th component of nabla_{e_i} e_j.

    ``c[i][j][k]`` is the e_k component of [e_i, e_j].
    """
    n = len(G)
    G = _m(G)
    sym = {idx: sp.Symbol("g_%d_%d_%d" % idx) for idx in product(range(n), repeat=3)}
    eqs = []
    for i, j, k in product(range(n), repeat=3):
        if i < j:
            eqs.append(sym[i, j, k] - sym[j, i, k] - sp.Rational(c[i][j][k]))
    for i, j, k in product(range(n), repeat=3):
        if j <= k:
            # X g(Y,Z) = g(nabla_X Y, Z) + g(Y, nabla_X Z), with constant g
            eqs.append(sum(sym[i, j, l] * G[l, k] + sym[i, k, l] * G[l, j] for l in range(n)))
    unknowns = list(sym.values())
    A, b = sp.linear_eq_to_matrix(eqs, unknowns)
    sol, params = A.gauss_jordan_solve(b)
    assert params.shape[0] == 0, "connection not unique"
    values = dict(zip(unknowns, sol))
    return [[[values[sym[i, j, k]] for k in range(n)] for j in range(n)] for i in range(n)]


def _operators(gamma):
    n = len(gamma)
    # M_i[k, j] = k-th component of nabla_{e_i} e_j
    return [sp.Matrix(n, n, lambda k, j: gamma[i][j][k]) for i in range(n)]


def riemann(gamma, c):
    """R[i][j][k][l] = l-th component of R(e_i, e_j) e_k."""
    n = len(gamma)
    M = _operators(gamma)
    out = [[[[0] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i, j in product(range(n), repeat=2):
        bracket_op = sp.zeros(n, n)
        for m in range(n):
            bracket_op += sp.Rational(c[i][j][m]) * M[m]
        op = M[i] * M[j] - M[j] * M[i] - bracket_op
        for k, l in product(range(n), repeat=2):
            out[i][j][k][l] = op[l, k]
    return out


def ricci(G, R):
    """S(Y,Z) = sum_ab G^ab g(R(e_a,Y)Z, e_b)."""
    n = len(G)
    Gm = _m(G)
    Ginv = Gm.inv()
    S = sp.zeros(n, n)
    for y, z in product(range(n), repeat=2):
        total = 0
        for a, b in product(range(n), repeat=2):
            lowered = sum(R[a][y][z][l] * Gm[l, b] for l in range(n))
            total += Ginv[a, b] * lowered
        S[y, z] = total
    return S


def scalar(G, S):
    Ginv = _m(G).inv()
    return sum(Ginv[a, b] * S[a, b] for a, b in product(range(len(G)), repeat=2))


def nabla_bilinear(gamma, T):
    """(nabla_{e_i} T)(e_j, e_k) = -T(nabla_i e_j, e_k) - T(e_j, nabla_i e_k)."""
    n = len(gamma)
    T = sp.Matrix(T)
    out = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i, M in enumerate(_operators(gamma)):
        D = -(M.T * T + T * M)
        for j, k in product(range(n), repeat=2):
            out[i][j][k] = D[j, k]
    return out
