"""Matrices and spectra of superpower graphs.

Every supported matrix has the form ``c_deg * D + c_adj * A`` for rational
coefficients, which covers adjacency, ``A_alpha = alpha D + (1 - alpha) A``,
the Laplacian ``D - A`` and the signless Laplacian ``D + A``.

Two routes to a spectrum are provided.  :func:`dense_spectrum` diagonalises
the full matrix and serves as the oracle.  :func:`structural_spectrum` uses
the order-class partition, which is equitable: a zero-sum vector supported
on one clique class is an eigenvector, and the remaining eigenvalues are
those of the small quotient matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from numbers import Rational, Real
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import CapExceeded, NotSymmetric
from .supergraph import DEFAULT_DENSE_CAP, DenseGraph, OrderClassGraph

Value = Union[Fraction, float]

DEFAULT_MERGE_TOL = 1e-6
SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class MatrixKind:
    tag: str
    alpha: Fraction | None = None

    TAGS = ("adjacency", "aalpha", "laplacian", "signless")

    def __post_init__(self):
        if self.tag not in self.TAGS:
            raise ValueError(f"unknown matrix kind {self.tag!r}")
        if self.tag == "aalpha":
            if self.alpha is None:
                raise ValueError("aalpha needs an alpha")
            alpha = Fraction(self.alpha)
            if not 0 <= alpha <= 1:
                raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
            object.__setattr__(self, "alpha", alpha)
        elif self.alpha is not None:
            raise ValueError(f"{self.tag} takes no alpha")

    @classmethod
    def aalpha(cls, alpha) -> "MatrixKind":
        return cls("aalpha", Fraction(alpha))

    @property
    def coefficients(self) -> tuple[Fraction, Fraction]:
        """``(c_deg, c_adj)`` such that the matrix is ``c_deg*D + c_adj*A``."""
        if self.tag == "adjacency":
            return Fraction(0), Fraction(1)
        if self.tag == "aalpha":
            return self.alpha, 1 - self.alpha
        if self.tag == "laplacian":
            return Fraction(1), Fraction(-1)
        return Fraction(1), Fraction(1)

    def __str__(self):
        return f"aalpha({self.alpha})" if self.tag == "aalpha" else self.tag


ADJACENCY = MatrixKind("adjacency")
LAPLACIAN = MatrixKind("laplacian")
SIGNLESS = MatrixKind("signless")


def _as_float(v) -> float:
    return float(v)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with multiplicities, sorted by value descending.

    Values are :class:`~fractions.Fraction` when known exactly, else float.
    """

    entries: tuple[tuple[Value, int], ...]

    def __post_init__(self):
        entries = tuple((v, int(m)) for v, m in self.entries)
        for (v, m) in entries:
            if m < 1:
                raise ValueError(f"multiplicity must be positive, got {m}")
        for (a, _), (b, _) in zip(entries, entries[1:]):
            if not a > b:
                raise ValueError("spectrum values must be strictly decreasing")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_counts(cls, pairs: Iterable[tuple[Value, int]]) -> "Spectrum":
        """Exact grouping: identical values are combined, nothing else."""
        acc: dict = {}
        for v, m in pairs:
            acc[v] = acc.get(v, 0) + m
        return cls(tuple(sorted(acc.items(), key=lambda e: e[0], reverse=True)))

    @property
    def dimension(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, Rational) for v, _ in self.entries)

    def values(self) -> list[float]:
        """All eigenvalues as floats, ascending, repeated by multiplicity."""
        out = []
        for v, m in reversed(self.entries):
            out.extend([float(v)] * m)
        return out

    def scaled(self, factor) -> "Spectrum":
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return Spectrum(tuple((v * factor, m) for v, m in self.entries))

    def as_dict(self) -> dict:
        return dict(self.entries)


@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("rational matrix must be square")
        object.__setattr__(self, "rows", rows)

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def to_array(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.rows], dtype=float).reshape(self.size, self.size)

    def permuted(self, order: Sequence[int]) -> "RationalMatrix":
        """Simultaneous row/column permutation: new[i][j] = old[order[i]][order[j]]."""
        return RationalMatrix(tuple(tuple(self.rows[a][b] for b in order) for a in order))

    def scaled(self, c) -> "RationalMatrix":
        c = Fraction(c)
        return RationalMatrix(tuple(tuple(c * x for x in r) for r in self.rows))

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class RationalPoly:
    """Polynomial with exact rational coefficients, lowest degree first."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        c = [Fraction(x) for x in self.coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def monic(self) -> bool:
        return self.coeffs[-1] == 1

    def descending(self) -> list[Fraction]:
        return list(reversed(self.coeffs))

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, Rational) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def deflate(self, root: Fraction) -> tuple["RationalPoly", Fraction]:
        """Synthetic division by ``(x - root)``: quotient and remainder."""
        out = []
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        rem = out.pop()
        return RationalPoly(tuple(reversed(out)) or (Fraction(0),)), rem

    def __str__(self):
        return format_poly(self)


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"({c})"


def format_poly(poly: RationalPoly, var: str = "λ") -> str:
    terms = []
    for power in range(poly.degree, -1, -1):
        c = poly.coeffs[power]
        if c == 0 and not (power == 0 and not terms):
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if power == 0 else (var if power == 1 else f"{var}^{power}")
        body = _fmt_coeff(a) if (a != 1 or power == 0) else ""
        text = body + mono
        if not terms:
            terms.append(("-" if sign == "-" else "") + text)
        else:
            terms.append(f" {sign} {text}")
    return "".join(terms)


# --- builders ---------------------------------------------------------------


def build_matrix(g: DenseGraph, kind: MatrixKind, cap: int = DEFAULT_DENSE_CAP) -> np.ndarray:
    if g.n > cap:
        raise CapExceeded(g.n, cap, what="graph")
    c_deg, c_adj = (float(c) for c in kind.coefficients)
    adj = g.adjacency().astype(float)
    m = c_adj * adj
    m[np.diag_indices(g.n)] += c_deg * adj.sum(axis=1)
    return m


def build_matrix_exact(g: DenseGraph, kind: MatrixKind, cap: int = 2000) -> list[list[Fraction]]:
    """Same as :func:`build_matrix` but with exact rational entries."""
    if g.n > cap:
        raise CapExceeded(g.n, cap, what="graph")
    c_deg, c_adj = kind.coefficients
    adj = g.adjacency()
    zero = Fraction(0)
    rows = []
    for i in range(g.n):
        row = [c_adj if a else zero for a in adj[i]]
        row[i] = c_deg * int(adj[i].sum())
        rows.append(row)
    return rows


def dense_spectrum(m: np.ndarray) -> np.ndarray:
    """All eigenvalues of a real symmetric matrix, ascending (LAPACK syevd)."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {m.shape}")
    if m.size and np.max(np.abs(m - m.T)) > SYMMETRY_TOL:
        raise NotSymmetric("matrix is not symmetric within 1e-12")
    if m.shape[0] == 0:
        return np.zeros(0)
    return np.linalg.eigvalsh(m)


# --- structural route -------------------------------------------------------


def quotient_matrix(cg: OrderClassGraph, kind: MatrixKind) -> RationalMatrix:
    c_deg, c_adj = kind.coefficients
    b = cg.class_neighbor_counts()
    deg = cg.class_degrees()
    t = cg.num_classes
    return RationalMatrix(tuple(
        tuple(c_adj * b[i][j] + (c_deg * deg[i] if i == j else 0) for j in range(t))
        for i in range(t)
    ))


def clique_part(cg: OrderClassGraph, kind: MatrixKind) -> list[tuple[Fraction, int]]:
    """Eigenvalues carried by zero-sum vectors on a single class.

    One entry per class of size at least two, in class order, unmerged.
    """
    c_deg, c_adj = kind.coefficients
    return [
        (c_deg * d - c_adj, n - 1)
        for d, n in zip(cg.class_degrees(), cg.sizes)
        if n >= 2
    ]


def _symmetrised_quotient(cg: OrderClassGraph, kind: MatrixKind) -> np.ndarray:
    # diag(sqrt n) Q diag(1/sqrt n) is symmetric because n_i B_ij = n_j B_ji
    q = quotient_matrix(cg, kind).to_array()
    s = np.sqrt(np.asarray(cg.sizes, dtype=float))
    return (s[:, None] * q) / s[None, :]


def rational_roots(poly: RationalPoly, approx: Iterable[float]) -> dict[Fraction, int]:
    """Exact rational roots of ``poly`` near the given approximations.

    Any rational root of ``poly`` has a denominator dividing the lcm ``L``
    of the coefficient denominators, so rounding ``x*L`` to an integer gives
    the only candidate; it is accepted only if it evaluates to exactly zero.
    """
    scale = 1
    for c in poly.coeffs:
        scale = lcm(scale, c.denominator)
    found: dict[Fraction, int] = {}
    for x in approx:
        if not np.isfinite(x):
            continue
        cand = Fraction(round(x * scale), scale)
        if cand in found or poly(cand) != 0:
            continue
        mult, rest = 0, poly
        while rest.degree >= 1:
            q, r = rest.deflate(cand)
            if r != 0:
                break
            mult, rest = mult + 1, q
        found[cand] = mult
    return found


def quotient_eigenvalues(cg: OrderClassGraph, kind: MatrixKind) -> list[Value]:
    """Eigenvalues of the quotient matrix, ascending.

    Rational roots of the exact characteristic polynomial are returned as
    Fractions, replacing the nearest numerical values; the rest are floats.
    """
    approx = sorted(np.linalg.eigvalsh(_symmetrised_quotient(cg, kind)).tolist())
    exact = rational_roots(charpoly_exact(quotient_matrix(cg, kind)), approx)
    out: list[Value] = list(approx)
    taken = [False] * len(out)
    for root, mult in exact.items():
        near = sorted(
            (i for i in range(len(out)) if not taken[i]),
            key=lambda i: abs(approx[i] - float(root)),
        )[:mult]
        for i in near:
            out[i] = root
            taken[i] = True
    return sorted(out, key=float)


def structural_spectrum(cg: OrderClassGraph, kind: MatrixKind, tol: float | None = None) -> Spectrum:
    values: list[Value] = []
    for v, m in clique_part(cg, kind):
        values.extend([v] * m)
    values.extend(quotient_eigenvalues(cg, kind))
    if tol is None:
        radius = max((abs(float(v)) for v in values), default=0.0)
        tol = DEFAULT_MERGE_TOL * max(1.0, radius)
    return group_eigenvalues(values, tol)


def group_eigenvalues(values: Iterable[Real], tol: float = DEFAULT_MERGE_TOL) -> Spectrum:
    """Merge values whose consecutive gaps are at most ``tol``.

    A merged group takes its multiplicity-weighted mean, except that when it
    contains exact rationals that all agree, that exact value wins.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    vals = sorted(values, key=float)
    groups: list[list] = []
    for v in vals:
        if not np.isfinite(float(v)):
            raise ValueError(f"non-finite eigenvalue {v!r}")
        if groups and float(v) - float(groups[-1][-1]) <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    entries = []
    for grp in reversed(groups):
        exact = {v for v in grp if isinstance(v, Rational)}
        if len(exact) == 1:
            value = exact.pop()
        elif all(isinstance(v, Rational) for v in grp):
            value = sum(grp, Fraction(0)) / len(grp)
        else:
            value = sum(float(v) for v in grp) / len(grp)
        entries.append((value, len(grp)))
    return Spectrum(tuple(entries))


# --- exact algebra ----------------------------------------------------------


def det_exact(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def _matmul(a, b):
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]


def charpoly_exact(m: RationalMatrix) -> RationalPoly:
    """Monic ``det(xI - m)`` via Faddeev-LeVerrier over the rationals.

    The result is checked against direct determinants at two integer points.
    """
    a = [list(r) for r in m.rows]
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I ;  c_{n-k} = -tr(A M_k) / k
        mk = _matmul(a, mk)
        for i in range(n):
            mk[i][i] += coeffs[n - k + 1]
        am = _matmul(a, mk)
        coeffs[n - k] = -sum((am[i][i] for i in range(n)), Fraction(0)) / k
    poly = RationalPoly(tuple(coeffs))
    for x in (0, 1):
        shifted = [[(x if i == j else 0) - a[i][j] for j in range(n)] for i in range(n)]
        if poly(Fraction(x)) != det_exact(shifted):
            raise ArithmeticError("characteristic polynomial failed determinant check")
    return poly


def partition_quotient(g: DenseGraph, cells: Sequence[Sequence[int]], kind: MatrixKind) -> RationalMatrix:
    """Quotient of ``kind``'s matrix over an arbitrary vertex partition.

    Neighbour counts are read off the explicit adjacency, so this is
    independent of the class-graph formulas.  Raises ``ValueError`` if the
    partition is not equitable.
    """
    c_deg, c_adj = kind.coefficients
    adj = g.adjacency()
    deg = adj.sum(axis=1)
    cells = [np.asarray(c, dtype=np.int64) for c in cells]
    if sorted(np.concatenate(cells).tolist()) != list(range(g.n)):
        raise ValueError("cells must partition the vertex set")
    rows = []
    for ci, a in enumerate(cells):
        if len(set(deg[a].tolist())) != 1:
            raise ValueError(f"cell {ci} is not degree-regular")
        row = []
        for cj, b in enumerate(cells):
            counts = adj[np.ix_(a, b)].sum(axis=1)
            if len(set(counts.tolist())) != 1:
                raise ValueError(f"partition not equitable between cells {ci} and {cj}")
            entry = c_adj * int(counts[0])
            if ci == cj:
                entry += c_deg * int(deg[a[0]])
            row.append(entry)
        rows.append(row)
    return RationalMatrix(tuple(tuple(r) for r in rows))
