"""Random frame-homogeneous specs for property tests.

Bracket tables come from known Lie algebras pushed through a random rational
change of frame, so the Jacobi identity holds by construction.  Metrics are
random rational SPD matrices rescaled so that g(e_n, e_n) = 1, with xi = e_n.
"""

from fractions import Fraction
from itertools import product
import random

import numpy as np
from hypothesis import strategies as st

from kenmotsu.exact import determinant, freeze, inverse, zeros
from kenmotsu.manifold import FrameManifoldSpec, StructureConstants, change_frame, example_spec


def _table(n, brackets):
    c = zeros(n, n, n)
    for (i, j), vec in brackets.items():
        for k, v in enumerate(vec):
            c[i, j, k] = Fraction(v)
            c[j, i, k] = -Fraction(v)
    return c


def base_algebras_3(m=None):
    """A handful of 3-dimensional Lie algebras; ``m`` parametrises R^2 x| R."""
    m = m if m is not None else [[1, 0], [0, 1]]
    return [
        _table(3, {}),
        _table(3, {(0, 1): (0, 0, 1)}),  # Heisenberg
        _table(3, {(0, 1): (0, 0, 1), (1, 2): (1, 0, 0), (2, 0): (0, 1, 0)}),  # so(3)
        _table(3, {(0, 1): (0, 2, 0), (0, 2): (0, 0, -2), (1, 2): (1, 0, 0)}),  # sl(2)
        _table(3, {(0, 2): (m[0][0], m[1][0], 0), (1, 2): (m[0][1], m[1][1], 0)}),  # R^2 x| R
    ]


def kenmotsu_model(n):
    """Hyperbolic-type Kenmotsu manifold: [e_i, e_n] = e_i, xi = e_n, identity metric."""
    c = _table(n, {(i, n - 1): tuple(int(k == i) for k in range(n)) for i in range(n - 1)})
    phi = zeros(n, n)
    for a in range(0, n - 1, 2):
        # phi e_a = -e_{a+1}, phi e_{a+1} = e_a
        phi[a + 1, a] = Fraction(-1)
        phi[a, a + 1] = Fraction(1)
    xi = [Fraction(int(k == n - 1)) for k in range(n)]
    G = np.identity(n, dtype=object)
    return FrameManifoldSpec(f"kenmotsu{n}", G, StructureConstants.from_table(c), phi, xi)


def _frac(rng, lo=-3, hi=3, dens=(1, 1, 2, 3)):
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def random_spd(rng, n):
    L = zeros(n, n)
    for i in range(n):
        for j in range(i):
            L[i, j] = _frac(rng)
        L[i, i] = Fraction(rng.randint(1, 3), rng.choice((1, 2)))
    G = L.dot(L.T)
    return G / G[n - 1, n - 1]


def random_invertible(rng, n):
    while True:
        P = np.array([[_frac(rng, -2, 2) for _ in range(n)] for _ in range(n)], dtype=object)
        if determinant(P) != 0:
            return P


def reframe_table(c, P):
    Q = inverse(P)
    c = np.einsum("ijk,ia->ajk", c, P)
    c = np.einsum("ijk,jb->ibk", c, P)
    return freeze(np.einsum("ijk,ck->ijc", c, Q))


def random_spec(rng, n=3):
    """A valid spec (phi = 0, so not almost contact) with a random Lie algebra and metric."""
    if n == 3:
        m = [[_frac(rng), _frac(rng)], [_frac(rng), _frac(rng)]]
        c = rng.choice(base_algebras_3(m))
    else:
        c = kenmotsu_model(n).c
        if rng.random() < 0.5:
            c = _table(n, {(0, 1): tuple(int(k == n - 1) for k in range(n))})  # Heisenberg-type
    c = reframe_table(c, random_invertible(rng, n))
    G = random_spd(rng, n)
    xi = [Fraction(int(k == n - 1)) for k in range(n)]
    return FrameManifoldSpec("random", G, StructureConstants.from_table(c), zeros(n, n), xi)


def random_kenmotsu(rng, n=3):
    """A Kenmotsu model seen through a random rational frame change."""
    base = example_spec("kenmotsu3") if n == 3 else kenmotsu_model(n)
    return change_frame(base, random_invertible(rng, n), name=f"kenmotsu{n}-random")


@st.composite
def specs(draw, n=3):
    return random_spec(random.Random(draw(st.integers(0, 2**32 - 1))), n)


@st.composite
def kenmotsu_specs(draw, n=3):
    return random_kenmotsu(random.Random(draw(st.integers(0, 2**32 - 1))), n)


def jacobi_brute(c):
    """Cyclic Jacobi sums by explicit nested brackets (no tensor contraction)."""
    n = c.shape[0]

    def br(u, v):
        return [sum(u[i] * v[j] * c[i, j, k] for i in range(n) for j in range(n)) for k in range(n)]

    e = [[Fraction(int(a == b)) for a in range(n)] for b in range(n)]
    bad = []
    for i, j, l in product(range(n), repeat=3):
        total = [x + y + z for x, y, z in zip(br(br(e[i], e[j]), e[l]), br(br(e[j], e[l]), e[i]), br(br(e[l], e[i]), e[j]))]
        for k, v in enumerate(total):
            if v != 0:
                bad.append(((i + 1, j + 1, l + 1, k + 1), v))
    return bad

