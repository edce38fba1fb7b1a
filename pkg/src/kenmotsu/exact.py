"""Exact rational scalars, dense frame tensors, and small exact linear algebra.

Every scalar is a :class:`fractions.Fraction`.  Tensors are numpy arrays of
``dtype=object`` holding Fractions; index conventions are documented on the
functions that build them.  Nothing here ever rounds.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class ExactArithmeticError(ZeroDivisionError):
    """Raised when an exact operation has no defined result."""


def to_scalar(value) -> Fraction:
    """Coerce an int, Fraction or ``"a/b"`` string to a Fraction.

    Floats and booleans are refused: they are never exact input.
    """
    if isinstance(value, bool):
        raise TypeError(f"boolean is not a rational value: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise ValueError(f"not a rational literal: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar: {value!r}")


def format_scalar(value) -> str:
    """Canonical text form: ``"a/b"`` in lowest terms, or ``"a"`` when b == 1."""
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def exact_add(a, b) -> Fraction:
    return Fraction(a) + Fraction(b)


def exact_mul(a, b) -> Fraction:
    return Fraction(a) * Fraction(b)


def exact_div(a, b) -> Fraction:
    b = Fraction(b)
    if b == 0:
        raise ExactArithmeticError(f"division of {format_scalar(a)} by zero")
    return Fraction(a) / b


# ---------------------------------------------------------------------------
# tensor containers


def tensor(data) -> np.ndarray:
    """Build a read-only object array of Fractions from nested sequences."""
    arr = np.array(data, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(arr.shape):
        out[idx] = to_scalar(arr[idx])
    out.flags.writeable = False
    return out


def freeze(arr: np.ndarray) -> np.ndarray:
    """Normalise every entry to Fraction and mark the array read-only."""
    out = np.empty(np.shape(arr), dtype=object)
    src = np.asarray(arr, dtype=object)
    for idx in np.ndindex(out.shape):
        out[idx] = Fraction(src[idx])
    out.flags.writeable = False
    return out


def zeros(*shape: int) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def is_zero(arr) -> bool:
    return all(x == 0 for x in np.asarray(arr, dtype=object).flat)


def first_difference(left, right):
    """Return the first index (row-major) where two arrays differ, else None."""
    left = np.asarray(left, dtype=object)
    right = np.asarray(right, dtype=object)
    if left.shape != right.shape:
        raise ValueError(f"shape mismatch {left.shape} vs {right.shape}")
    for idx in np.ndindex(left.shape):
        if left[idx] != right[idx]:
            return idx
    return None


def to_strings(arr):
    """Nested lists of canonical rational strings (for reports)."""
    arr = np.asarray(arr, dtype=object)
    if arr.ndim == 0:
        return format_scalar(arr[()])
    return [to_strings(sub) for sub in arr]


# ---------------------------------------------------------------------------
# linear algebra


@dataclass(frozen=True)
class LinearSolution:
    """Outcome of :func:`solve_linear_exact`.

    ``status`` is one of ``"unique"``, ``"underdetermined"`` or
    ``"infeasible"``.  For an infeasible system ``solution`` is None and
    ``inconsistent_row`` is the index (into the caller's rows) of the first
    equation found inconsistent.  An underdetermined system carries one
    particular solution with the free unknowns set to zero.
    """

    status: str
    solution: tuple[Fraction, ...] | None
    inconsistent_row: int | None = None
    rank: int = 0

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        scale = math.lcm(*(Fraction(x).denominator for x in row)) if row else 1
        out.append([int(Fraction(x) * scale) for x in row])
    return out


def solve_linear_exact(A, b) -> LinearSolution:
    """Solve ``A x = b`` exactly by fraction-free (Bareiss) elimination.

    ``A`` is m x k, ``b`` has length m.  Rows are first scaled to integers,
    so every intermediate value is an integer minor of the augmented system.
    """
    A = [[to_scalar(x) for x in row] for row in A]
    b = [to_scalar(x) for x in b]
    m = len(A)
    if m == 0 or len(b) != m:
        raise ValueError("system needs m >= 1 rows and a matching right-hand side")
    k = len(A[0])
    if k == 0 or any(len(row) != k for row in A):
        raise ValueError("coefficient matrix must be rectangular with k >= 1")

    M = _integer_rows([row + [rhs] for row, rhs in zip(A, b)])
    order = list(range(m))
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(k):
        if r == m:
            break
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
            order[r], order[p] = order[p], order[r]
        piv = M[r][c]
        for i in range(r + 1, m):
            lead = M[i][c]
            row_i, row_r = M[i], M[r]
            for j in range(k + 1):
                num = piv * row_i[j] - lead * row_r[j]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss step lost exactness"
                row_i[j] = q
        prev = piv
        pivots.append(c)
        r += 1

    rank = len(pivots)
    bad = [order[i] for i in range(rank, m) if M[i][k] != 0]
    if bad:
        return LinearSolution("infeasible", None, min(bad), rank)

    x = [Fraction(0)] * k
    for i in range(rank - 1, -1, -1):
        c = pivots[i]
        acc = Fraction(M[i][k])
        for j in range(c + 1, k):
            if M[i][j]:
                acc -= M[i][j] * x[j]
        x[c] = acc / M[i][c]
    status = "unique" if rank == k else "underdetermined"
    return LinearSolution(status, tuple(x), None, rank)


def determinant(G) -> Fraction:
    """Exact determinant of a square matrix (Bareiss)."""
    rows = [[Fraction(x) for x in row] for row in np.asarray(G, dtype=object)]
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    ints = []
    for row in rows:
        s = math.lcm(*(x.denominator for x in row))
        scale *= s
        ints.append([int(x * s) for x in row])
    sign = 1
    prev = 1
    for c in range(n - 1):
        p = next((i for i in range(c, n) if ints[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            ints[c], ints[p] = ints[p], ints[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                ints[i][j] = (ints[c][c] * ints[i][j] - ints[i][c] * ints[c][j]) // prev
            ints[i][c] = 0
        prev = ints[c][c]
    return Fraction(sign * ints[n - 1][n - 1]) / scale


def inverse(G) -> np.ndarray:
    """Exact inverse of a nonsingular square matrix."""
    G = np.asarray(G, dtype=object)
    n = G.shape[0]
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        sol = solve_linear_exact(G.tolist(), e)
        if sol.status != "unique":
            raise ExactArithmeticError("matrix is singular")
        cols.append(sol.solution)
    out = zeros(n, n)
    for j, col in enumerate(cols):
        for i in range(n):
            out[i, j] = col[i]
    return freeze(out)


@dataclass(frozen=True)
class SPDCheck:
    """Result of :func:`spd_check`.  ``witness`` explains a failure."""

    ok: bool
    minors: tuple[Fraction, ...] = ()
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def spd_check(G) -> SPDCheck:
    """Symmetry plus Sylvester's criterion, evaluated exactly."""
    G = np.asarray(G, dtype=object)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise ValueError(f"metric must be square, got shape {G.shape}")
    n = G.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            if G[i, j] != G[j, i]:
                return SPDCheck(False, (), f"asymmetric entry ({i + 1},{j + 1})")
    minors = []
    for k in range(1, n + 1):
        d = determinant(G[:k, :k])
        minors.append(d)
        if d <= 0:
            return SPDCheck(False, tuple(minors), f"leading minor {k} is {format_scalar(d)} <= 0")
    return SPDCheck(True, tuple(minors))


def outer(u: Iterable, v: Iterable) -> np.ndarray:
    u = np.asarray(list(u), dtype=object)
    v = np.asarray(list(v), dtype=object)
    return np.multiply.outer(u, v)
