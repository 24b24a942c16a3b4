"""Exact sparse linear algebra over Q or GF(p).

Vectors are dicts ``{coordinate: nonzero scalar}``.  Subspaces are stored in a
canonical reduced echelon form whose pivot in each basis vector is its
*largest* coordinate, normalised to 1.  Coordinates of graded pieces are
ordered by deglex, so a pivot is the leading word of the corresponding
polynomial, matching the orientation of rewrite rules.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class LinalgError(ValueError):
    pass


def _coerce(v):
    return Fraction(v) if isinstance(v, int) else v


def _axpy(row: dict, f, piv: dict):
    """row -= f * piv, in place."""
    for k, v in piv.items():
        nv = row.get(k, 0) - f * v
        if nv:
            row[k] = nv
        else:
            del row[k]


def _echelon(rows: Iterable[dict], lead=max) -> dict:
    """Echelon form keyed by pivot; each stored row has pivot coefficient 1.

    Rows are fed sparsest first, a cheap stand-in for Markowitz ordering that
    keeps fill-in low on the incidence-like matrices built here.
    """
    pivots = {}
    for r in sorted((r for r in rows if r), key=len):
        row = dict(r)
        while row:
            c = lead(row)
            piv = pivots.get(c)
            if piv is None:
                inv = 1 / _coerce(row[c])
                if inv != 1:
                    row = {k: v * inv for k, v in row.items()}
                pivots[c] = row
                break
            _axpy(row, row[c], piv)
    return pivots


def _reduce_fully(pivots: dict, lead=max) -> dict:
    """Back-substitute so no stored row has a nonzero entry at another pivot."""
    order = sorted(pivots) if lead is max else sorted(pivots, reverse=True)
    done = {}
    for p in order:
        row = pivots[p]
        hits = [c for c in row if c != p and c in done]
        if hits:
            row = dict(row)
            for c in hits:
                f = row.get(c)
                if f:
                    _axpy(row, f, done[c])
        done[p] = row
    return done


def _reduce_against(vec: dict, pivots: dict) -> dict:
    row = dict(vec)
    while row:
        c = max(row)
        piv = pivots.get(c)
        if piv is None:
            return row
        _axpy(row, row[c], piv)
    return row


class ScalarMatrix:
    """Sparse matrix stored by rows."""

    def __init__(self, nrows: int, ncols: int, rows: Sequence[dict] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise LinalgError("row count mismatch")
        clean = []
        for r in rows:
            cr = {}
            for c, v in r.items():
                if not 0 <= c < ncols:
                    raise LinalgError(f"column index {c} out of range")
                if v:
                    cr[c] = _coerce(v)
            clean.append(cr)
        self.rows = clean

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "ScalarMatrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        return cls(nrows, ncols, [{j: v for j, v in enumerate(row) if v} for row in data])

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[dict]) -> "ScalarMatrix":
        rows = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows[i][j] = v
        return cls(nrows, len(columns), rows)

    def to_dense(self) -> list:
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self.rows]

    def transpose(self) -> "ScalarMatrix":
        cols = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return ScalarMatrix(self.ncols, self.nrows, cols)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def apply(self, vec: dict) -> dict:
        out = {}
        for i, r in enumerate(self.rows):
            s = 0
            for j, v in vec.items():
                a = r.get(j)
                if a:
                    s = s + a * v
            if s:
                out[i] = s
        return out

    def to_coo_text(self) -> str:
        lines = [f"{i} {j} {v}" for i, r in enumerate(self.rows) for j, v in sorted(r.items())]
        return "\n".join(lines) + ("\n" if lines else "")

    def __repr__(self):
        return f"ScalarMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def rank(m: ScalarMatrix) -> int:
    return len(_echelon(m.rows))


def determinant(data: Sequence[Sequence]):
    n = len(data)
    a = [[_coerce(v) for v in row] for row in data]
    if any(len(row) != n for row in a):
        raise LinalgError("determinant of a non-square matrix")
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return 0 * det
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det = det * a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                for k in range(c, n):
                    a[r][k] = a[r][k] - f * a[c][k]
    return det


class Subspace:
    """A subspace of k^ambient with a canonical reduced echelon basis."""

    __slots__ = ("ambient", "basis", "_pivots")

    def __init__(self, ambient: int, pivots: dict):
        self.ambient = ambient
        self._pivots = pivots
        self.basis = tuple(pivots[p] for p in sorted(pivots))

    @classmethod
    def span(cls, vectors: Iterable[dict], ambient: int) -> "Subspace":
        vectors = list(vectors)
        for v in vectors:
            for c in v:
                if not 0 <= c < ambient:
                    raise LinalgError(f"coordinate {c} outside ambient dimension {ambient}")
        rows = ({c: _coerce(x) for c, x in v.items() if x} for v in vectors)
        return cls(ambient, _reduce_fully(_echelon(rows)))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, {})

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, {i: {i: Fraction(1)} for i in range(ambient)})

    @property
    def dim(self) -> int:
        return len(self._pivots)

    @property
    def pivots(self) -> list:
        return sorted(self._pivots)

    def contains(self, vec: dict) -> bool:
        return not _reduce_against({c: v for c, v in vec.items() if v}, self._pivots)

    def coordinates(self, vec: dict) -> dict:
        """Coefficients of ``vec`` on the canonical basis, keyed by basis position."""
        pos = {p: k for k, p in enumerate(sorted(self._pivots))}
        coords = {pos[p]: vec[p] for p in self._pivots if vec.get(p)}
        if not self.contains(vec):
            raise LinalgError("vector is not in the subspace")
        return coords

    def is_subspace_of(self, other: "Subspace") -> bool:
        return self.ambient == other.ambient and all(other.contains(b) for b in self.basis)

    def annihilator(self) -> list:
        """Canonical basis of linear functionals vanishing on this subspace."""
        m = ScalarMatrix(self.dim, self.ambient, list(self.basis))
        return list(kernel_basis(m).basis)

    def to_dense(self) -> list:
        return [[b.get(j, 0) for j in range(self.ambient)] for b in self.basis]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, tuple(frozenset(b.items()) for b in self.basis)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def kernel_basis(m: ScalarMatrix) -> Subspace:
    """Right kernel ``{v : m v = 0}`` in canonical form.

    Eliminating with smallest-index pivots makes each free-column kernel vector
    end at its free column, so the natural kernel basis is already canonical.
    """
    piv = _reduce_fully(_echelon(m.rows, lead=min), lead=min)
    contrib = {}
    for p, row in piv.items():
        for c, v in row.items():
            if c != p:
                contrib.setdefault(c, []).append((p, v))
    one = Fraction(1)
    out = {}
    for f in range(m.ncols):
        if f in piv:
            continue
        vec = {f: one}
        for p, v in contrib.get(f, ()):
            vec[p] = -v
        out[f] = vec
    return Subspace(m.ncols, out)


def intersect_with_equations(a: Subspace, equations: Sequence[dict]) -> Subspace:
    """Vectors of ``a`` annihilated by every functional in ``equations``."""
    if a.dim == 0:
        return a
    by_coord = {}
    for e, eq in enumerate(equations):
        for c, v in eq.items():
            by_coord.setdefault(c, []).append((e, v))
    cols = []
    for b in a.basis:
        col = {}
        for c, x in b.items():
            for e, v in by_coord.get(c, ()):
                s = col.get(e, 0) + v * x
                if s:
                    col[e] = s
                else:
                    col.pop(e, None)
        cols.append(col)
    used = sorted({e for col in cols for e in col})
    renum = {e: i for i, e in enumerate(used)}
    m = ScalarMatrix.from_columns(len(used), [{renum[e]: v for e, v in col.items()} for col in cols])
    lam = kernel_basis(m)
    vectors = []
    for coeffs in lam.basis:
        vec = {}
        for k, cf in coeffs.items():
            for c, x in a.basis[k].items():
                s = vec.get(c, 0) + cf * x
                if s:
                    vec[c] = s
                else:
                    vec.pop(c, None)
        vectors.append(vec)
    return Subspace.span(vectors, a.ambient)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient != b.ambient:
        raise LinalgError(f"ambient mismatch: {a.ambient} vs {b.ambient}")
    if a.dim > b.dim:
        a, b = b, a
    return intersect_with_equations(a, b.annihilator())


def sum_of(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient != b.ambient:
        raise LinalgError(f"ambient mismatch: {a.ambient} vs {b.ambient}")
    return Subspace.span(list(a.basis) + list(b.basis), a.ambient)


def complement_in(sub: Subspace, within: Subspace) -> Subspace:
    """A complement of ``sub`` inside ``within``: greedy over ``within``'s basis."""
    if sub.ambient != within.ambient:
        raise LinalgError(f"ambient mismatch: {sub.ambient} vs {within.ambient}")
    if not sub.is_subspace_of(within):
        raise LinalgError("complement_in: sub is not contained in within")
    pivots = dict(sub._pivots)
    chosen = []
    for b in within.basis:
        if len(pivots) == within.dim:
            break
        rem = _reduce_against(b, pivots)
        if rem:
            c = max(rem)
            inv = 1 / rem[c]
            pivots[c] = {k: v * inv for k, v in rem.items()}
            chosen.append(b)
    return Subspace.span(chosen, within.ambient)
