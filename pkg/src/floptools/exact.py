"""Small exact linear algebra over the rationals.

Everything here works on tuples of Fraction (or int) and is sized for
desk-scale problems: ranks up to a handful, row counts in the dozens.
No pivoting heuristics, no sparsity, just Gauss elimination done exactly.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = tuple  # tuple of Fraction or int
Matrix = tuple  # tuple of row tuples


def frac_vector(v: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(c) for c in v)


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"rank mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), start=Fraction(0))


def vec_add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Sequence) -> tuple:
    return tuple(c * a for a in v)


def matvec(rows: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in rows)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def is_zero_vector(v: Sequence) -> bool:
    return all(c == 0 for c in v)


def primitive_vector(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to coprime integers, keeping direction."""
    fv = frac_vector(v)
    if is_zero_vector(fv):
        raise ValueError("zero vector has no primitive representative")
    denom_lcm = 1
    for c in fv:
        denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in fv]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    return tuple(c // g for c in ints)


def sign_canonical(v: Sequence[int]) -> tuple[int, ...]:
    """Flip sign so the first nonzero coordinate is positive (for lines/normals)."""
    for c in v:
        if c != 0:
            return tuple(v) if c > 0 else tuple(-x for x in v)
    raise ValueError("zero vector")


def rref(rows: Iterable[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (reduced nonzero rows, pivot columns)."""
    work = [list(frac_vector(r)) for r in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        lead = work[r][col]
        work[r] = [c / lead for c in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col] != 0:
                factor = work[i][col]
                work[i] = [a - factor * b for a, b in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def matrix_rank(rows: Iterable[Sequence]) -> int:
    return len(rref(rows)[0])


def row_space_basis(rows: Iterable[Sequence]) -> list[tuple[int, ...]]:
    """Canonical primitive integer basis of the row space (from RREF rows)."""
    reduced, _ = rref(rows)
    return [primitive_vector(r) for r in reduced]


def kernel_basis(rows: Iterable[Sequence], ncols: int | None = None) -> list[tuple[int, ...]]:
    """Canonical primitive integer basis of {x : row . x = 0 for all rows}.

    Basis vectors come from the RREF free columns, are made primitive,
    sign-normalized, and sorted, so the output is deterministic.
    """
    rows = [tuple(r) for r in rows]
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for empty row list")
        return [tuple(1 if j == i else 0 for j in range(ncols)) for i in range(ncols)]
    n = len(rows[0])
    reduced, pivots = rref(rows)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for j in free:
        vec = [Fraction(0)] * n
        vec[j] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -reduced[i][j]
        basis.append(sign_canonical(primitive_vector(vec)))
    return sorted(basis)


def det(rows: Sequence[Sequence]) -> Fraction:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    work = [list(frac_vector(r)) for r in rows]
    result = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if work[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            result = -result
        result *= work[col][col]
        inv = 1 / work[col][col]
        for i in range(col + 1, n):
            if work[i][col] != 0:
                factor = work[i][col] * inv
                work[i] = [a - factor * b for a, b in zip(work[i], work[col])]
    return result


def solve(rows: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...]:
    """Solve a square nonsingular system exactly."""
    n = len(rows)
    aug = [list(frac_vector(r)) + [Fraction(rhs[i])] for i, r in enumerate(rows)]
    reduced, pivots = rref(aug)
    if len(reduced) != n or pivots != list(range(n)):
        raise ValueError("singular system")
    return tuple(row[-1] for row in reduced)


def inverse(rows: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(rows)
    aug = [list(frac_vector(r)) + [Fraction(1 if j == i else 0) for j in range(n)]
           for i, r in enumerate(rows)]
    reduced, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix not invertible")
    return tuple(tuple(row[n:]) for row in reduced)
