"""Exact linear algebra over the integers and the rationals.

Everything here works with Python ints and :class:`fractions.Fraction`;
there is no floating point anywhere.  Dense matrices are small value types,
while the workhorse for large sparse problems is :class:`RowSpace`, an
incrementally maintained reduced row echelon basis whose rows are stored as
dicts keyed by arbitrary sortable column labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Hashable, Iterable, Mapping, Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        # Fraction is always stored reduced with a positive denominator
        object.__setattr__(self, "entries", tuple(Fraction(x) for x in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [tuple(Fraction(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def to_rows(self) -> list[list[Fraction]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def column(self, j: int) -> list[Fraction]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        rows = self.to_rows()
        return RationalMatrix.from_rows(
            [[rows[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows
        )


@dataclass(frozen=True)
class SNFResult:
    """Nonzero invariant factors ``d_1 | d_2 | ... | d_r`` of an integer matrix."""

    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)


MatrixLike = IntMatrix | RationalMatrix | Sequence[Sequence]


def _as_rows(m: MatrixLike) -> list[list]:
    if isinstance(m, (IntMatrix, RationalMatrix)):
        return m.to_rows()
    return [list(r) for r in m]


def _sparse(row: Iterable) -> dict[int, Fraction]:
    return {j: Fraction(x) for j, x in enumerate(row) if x}


class RowSpace:
    """A subspace of Q^(labels) kept in fully reduced row echelon form.

    Rows are dicts ``label -> Fraction`` with no zero values.  Each basis row
    has a pivot label at which it is 1 and at which every other basis row is
    0, so the coordinates of a vector of the subspace in this basis are just
    its values at the pivots.

    With ``track=True`` every basis row also remembers which combination of
    the inserted vectors produced it, which is what :meth:`solve` needs.
    """

    def __init__(self, track: bool = False):
        self._rows: dict[Hashable, dict] = {}
        self._combos: dict[Hashable, dict] | None = {} if track else None
        self._inserted = 0

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list:
        return sorted(self._rows)

    def basis(self) -> list[tuple[Hashable, dict]]:
        """(pivot, row) pairs sorted by pivot."""
        return [(p, self._rows[p]) for p in sorted(self._rows)]

    def _reduce(self, vec: dict, combo: dict | None) -> None:
        # valid in a single pass because basis rows vanish at the other pivots
        for p in [k for k in vec if k in self._rows]:
            c = vec.get(p)
            if not c:
                continue
            _axpy(vec, -c, self._rows[p])
            if combo is not None:
                _axpy(combo, -c, self._combos[p])

    def reduce(self, vec: Mapping) -> dict:
        """Residue of ``vec`` modulo the subspace (zero dict iff contained)."""
        out = {k: Fraction(v) for k, v in vec.items() if v}
        self._reduce(out, None)
        return out

    def __contains__(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; return True if it enlarged the subspace."""
        idx = self._inserted
        self._inserted += 1
        row = {k: Fraction(v) for k, v in vec.items() if v}
        combo = {idx: Fraction(1)} if self._combos is not None else None
        self._reduce(row, combo)
        if not row:
            return False
        p = min(row)
        inv = 1 / row[p]
        row = {k: v * inv for k, v in row.items()}
        if combo is not None:
            combo = {k: v * inv for k, v in combo.items()}
        for q, other in self._rows.items():
            c = other.get(p)
            if c:
                _axpy(other, -c, row)
                if combo is not None:
                    _axpy(self._combos[q], -c, combo)
        self._rows[p] = row
        if combo is not None:
            self._combos[p] = combo
        return True

    def extend(self, vecs: Iterable[Mapping]) -> int:
        return sum(self.add(v) for v in vecs)

    def coordinates(self, vec: Mapping) -> dict | None:
        """Coordinates of ``vec`` in the echelon basis, or None if outside."""
        if vec not in self:
            return None
        return {p: Fraction(vec[p]) for p in self._rows if vec.get(p)}

    def solve(self, vec: Mapping) -> dict[int, Fraction] | None:
        """Coefficients over the inserted vectors (by insertion index)."""
        if self._combos is None:
            raise RuntimeError("RowSpace was built without track=True")
        residue = {k: Fraction(v) for k, v in vec.items() if v}
        out: dict[int, Fraction] = {}
        for p in [k for k in residue if k in self._rows]:
            c = residue.get(p)
            if not c:
                continue
            _axpy(residue, -c, self._rows[p])
            _axpy(out, c, self._combos[p])
        if residue:
            return None
        return out


def _axpy(y: dict, a, x: Mapping) -> None:
    """y += a * x, in place, dropping zeros."""
    for k, v in x.items():
        nv = y.get(k, 0) + a * v
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)


def rank_rational(m: MatrixLike) -> int:
    space = RowSpace()
    for r in _as_rows(m):
        space.add(_sparse(r))
    return space.rank


def rref(m: MatrixLike) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    rows = _as_rows(m)
    cols = len(rows[0]) if rows else (m.cols if hasattr(m, "cols") else 0)
    space = RowSpace()
    for r in rows:
        space.add(_sparse(r))
    dense = [[row.get(j, Fraction(0)) for j in range(cols)] for _, row in space.basis()]
    return dense, space.pivots


def nullspace(m: MatrixLike) -> list[list[Fraction]]:
    """Basis of {x : m x = 0} (right kernel)."""
    rows = _as_rows(m)
    cols = len(rows[0]) if rows else (m.cols if hasattr(m, "cols") else 0)
    red, pivots = rref(rows) if rows else ([], [])
    free = [j for j in range(cols) if j not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * cols
        x[f] = Fraction(1)
        for r, p in zip(red, pivots):
            x[p] = -r[f]
        basis.append(x)
    return basis


def solve_in_span(basis: MatrixLike, target: Sequence) -> list[Fraction] | None:
    """Coefficients ``c`` with ``c . basis == target``, or None if not in the row span.

    When the basis rows are dependent one particular solution is returned.
    """
    rows = _as_rows(basis)
    width = len(rows[0]) if rows else (basis.cols if hasattr(basis, "cols") else len(target))
    if len(target) != width:
        raise ValueError(f"target has length {len(target)}, basis rows have {width}")
    space = RowSpace(track=True)
    for r in rows:
        if len(r) != width:
            raise ValueError("ragged basis")
        space.add(_sparse(r))
    sol = space.solve(_sparse(target))
    if sol is None:
        return None
    return [sol.get(i, Fraction(0)) for i in range(len(rows))]


# --- Smith normal form -----------------------------------------------------

def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def integer_echelon(rows: Iterable[Mapping[int, int]]) -> dict[int, dict[int, int]]:
    """Echelon basis of the Z-lattice spanned by sparse integer rows.

    Rows are combined only by unimodular 2x2 operations, so the result spans
    exactly the same lattice.  Keys of the result are pivot columns.
    """
    basis: dict[int, dict[int, int]] = {}
    for r in rows:
        v = {k: int(x) for k, x in r.items() if x}
        while v:
            p = min(v)
            if p not in basis:
                if v[p] < 0:
                    v = {k: -x for k, x in v.items()}
                basis[p] = v
                _reduce_above(basis, p)
                break
            u = basis[p]
            a, b = u[p], v[p]
            if b % a == 0:
                q = b // a
                _iaxpy(v, -q, u)
                continue
            g, s, t = _xgcd(a, b)
            # [u; v] -> [s u + t v; (a/g) v - (b/g) u], determinant 1
            new_u = dict(u)
            for k in new_u:
                new_u[k] *= s
            _iaxpy(new_u, t, v)
            w = {k: x * (a // g) for k, x in v.items()}
            _iaxpy(w, -(b // g), u)
            if new_u[p] < 0:
                new_u = {k: -x for k, x in new_u.items()}
            basis[p] = new_u
            _reduce_above(basis, p)
            v = w
    return basis


def _reduce_above(basis: dict[int, dict[int, int]], p: int) -> None:
    # Hermite step: bring other rows' entries in pivot column p into [0, pivot)
    u = basis[p]
    a = u[p]
    for q, row in basis.items():
        if q != p:
            x = row.get(p)
            if x and not 0 <= x < a:
                _iaxpy(row, -(x // a), u)


def _iaxpy(y: dict, a: int, x: Mapping) -> None:
    for k, v in x.items():
        nv = y.get(k, 0) + a * v
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)


def _snf_dense(a: list[list[int]]) -> list[int]:
    """Diagonal of a Smith-equivalent matrix (not yet divisibility-sorted)."""
    a = [r[:] for r in a if any(r)]
    diag = []
    while a:
        m, n = len(a), len(a[0])
        best = None
        for i in range(m):
            for j in range(n):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        a[0], a[i] = a[i], a[0]
        for r in a:
            r[0], r[j] = r[j], r[0]
        while True:
            piv = a[0][0]
            dirty = False
            for i in range(1, len(a)):
                x = a[i][0]
                if x:
                    q = x // piv
                    ri, r0 = a[i], a[0]
                    for k in range(n):
                        ri[k] -= q * r0[k]
                    if ri[0]:
                        dirty = True
            for j in range(1, n):
                x = a[0][j]
                if x:
                    q = x // piv
                    for r in a:
                        r[j] -= q * r[0]
                    if a[0][j]:
                        dirty = True
            if not dirty:
                break
            # move the smallest leftover in the pivot row/column to the corner
            cand = [(abs(a[i][0]), i, 0) for i in range(1, len(a)) if a[i][0]]
            cand += [(abs(a[0][j]), 0, j) for j in range(1, n) if a[0][j]]
            _, i, j = min(cand)
            if i:
                a[0], a[i] = a[i], a[0]
            else:
                for r in a:
                    r[0], r[j] = r[j], r[0]
        diag.append(abs(a[0][0]))
        a = [r[1:] for r in a[1:] if any(r[1:])]
        if a and not a[0]:
            break
    return diag


def _divisibility_chain(diag: list[int]) -> tuple[int, ...]:
    d = sorted(x for x in diag if x)
    # diag(a, b) is equivalent to diag(gcd, lcm); repeat until the chain holds
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return tuple(d)


def smith_normal_form(m: MatrixLike) -> SNFResult:
    rows = _as_rows(m)
    sparse = [{j: int(x) for j, x in enumerate(r) if x} for r in rows]
    return smith_normal_form_sparse(sparse)


def smith_normal_form_sparse(rows: Iterable[Mapping[int, int]]) -> SNFResult:
    """Invariant factors of the lattice spanned by sparse integer rows."""
    ech = integer_echelon(rows)
    if all(r[p] == 1 for p, r in ech.items()):
        # unit pivots: the echelon rows extend to a unimodular basis
        return SNFResult((1,) * len(ech))
    cols = sorted({k for r in ech.values() for k in r})
    pos = {c: j for j, c in enumerate(cols)}
    dense = []
    for r in ech.values():
        row = [0] * len(cols)
        for k, x in r.items():
            row[pos[k]] = x
        dense.append(row)
    return SNFResult(_divisibility_chain(_snf_dense(dense)))
