"""Exact sparse linear algebra over the rationals.

Scalars are :class:`fractions.Fraction` (plain ``int`` is accepted wherever a
rational is expected).  Matrices are stored as a list of sparse rows, each a
``dict`` mapping column index to a nonzero value.

Elimination is fraction-free: rows are scaled to primitive integer vectors,
reduced against each other with integer combinations, and divided through
only once the echelon form is complete.  Before elimination the columns are
split into connected components (two columns are linked when some row
touches both); each component is reduced on its own, which is what keeps
the Lie-theoretic constraint systems tractable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

SparseRow = Dict[int, object]

__all__ = [
    "Fraction",
    "RationalMatrix",
    "SolutionSpace",
    "LinearSolver",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "echelon_basis",
    "assemble_rows",
    "format_rational",
    "parse_rational",
]


def format_rational(x) -> str:
    """Render a rational as ``p/q`` (or ``p`` when the denominator is 1)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def _canon(v):
    # ints stay ints; Fractions with denominator 1 collapse to int
    if isinstance(v, int):
        return v
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else v


class RationalMatrix:
    """Sparse matrix with exact rational entries.

    No stored entry is zero and every stored index lies inside the shape.
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Optional[Iterable[SparseRow]] = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix shape must be nonnegative")
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            self.rows: List[SparseRow] = [{} for _ in range(nrows)]
        else:
            self.rows = []
            for r in rows:
                clean = {}
                for c, v in r.items():
                    if not 0 <= c < ncols:
                        raise IndexError(f"column {c} outside 0..{ncols - 1}")
                    if v != 0:
                        clean[c] = _canon(v)
                self.rows.append(clean)
            if len(self.rows) != nrows:
                raise ValueError(f"expected {nrows} rows, got {len(self.rows)}")

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], ncols: Optional[int] = None) -> "RationalMatrix":
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged dense matrix")
        return cls(len(data), ncols, ({j: v for j, v in enumerate(r) if v != 0} for r in data))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, ({i: 1} for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls(nrows, ncols)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def __getitem__(self, idx: Tuple[int, int]) -> Fraction:
        i, j = idx
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(idx)
        return Fraction(self.rows[i].get(j, 0))

    def entries(self):
        """Yield ``(row, col, value)`` in row-major order."""
        for i, r in enumerate(self.rows):
            for j in sorted(r):
                yield i, j, Fraction(r[j])

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.entries():
            out[i][j] = v
        return out

    def matvec(self, v: Sequence) -> List[Fraction]:
        if len(v) != self.ncols:
            raise ValueError(f"vector length {len(v)} != {self.ncols} columns")
        return [Fraction(sum((val * v[c] for c, val in r.items()), 0)) for r in self.rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            {c: Fraction(v) for c, v in a.items()} == {c: Fraction(v) for c, v in b.items()}
            for a, b in zip(self.rows, other.rows)
        )

    def __repr__(self) -> str:
        return f"RationalMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"

    # -- text exchange format -------------------------------------------------

    def to_text(self) -> str:
        """Serialize as ``rows cols nnz`` followed by ``row col p/q`` lines."""
        lines = [f"{self.nrows} {self.ncols} {self.nnz}"]
        lines.extend(f"{i} {j} {format_rational(v)}" for i, j, v in self.entries())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RationalMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        nrows, ncols, nnz = (int(t) for t in lines[0].split())
        if len(lines) - 1 != nnz:
            raise ValueError(f"header promises {nnz} entries, found {len(lines) - 1}")
        rows: List[SparseRow] = [{} for _ in range(nrows)]
        for ln in lines[1:]:
            i, j, v = ln.split()
            i, j = int(i), int(j)
            if not (0 <= i < nrows):
                raise IndexError(f"row {i} outside 0..{nrows - 1}")
            if j in rows[i]:
                raise ValueError(f"duplicate entry ({i}, {j})")
            rows[i][j] = parse_rational(v)
        return cls(nrows, ncols, rows)


@dataclass(frozen=True)
class SolutionSpace:
    """Exact basis of a nullspace together with the size of the system it solves.

    Basis vectors are in canonical echelonized form: every vector owns a
    coordinate equal to 1 at which all other basis vectors vanish.
    """

    ambient_dim: int
    basis: Tuple[Tuple[Fraction, ...], ...]
    constraint_rows: int
    constraint_rank: int
    free_columns: Tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.ambient_dim != self.constraint_rank + len(self.basis):
            raise ValueError("rank-nullity violated")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def to_dict(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "constraint_rows": self.constraint_rows,
            "constraint_rank": self.constraint_rank,
            "basis": [
                [[i, format_rational(x)] for i, x in enumerate(v) if x] for v in self.basis
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SolutionSpace":
        n = d["ambient_dim"]
        basis = []
        for sparse in d["basis"]:
            v = [Fraction(0)] * n
            for i, s in sparse:
                v[i] = parse_rational(s)
            basis.append(tuple(v))
        return cls(n, tuple(basis), d["constraint_rows"], d["constraint_rank"])


def assemble_rows(rows: Iterable[SparseRow], ncols: int) -> RationalMatrix:
    """Constraint matrix from raw rows, dropping zero rows and exact duplicates.

    Two rows count as duplicates when they are rational multiples of each
    other, so the row space (and the nullspace) is unchanged.
    """
    seen = set()
    kept: List[Dict[int, int]] = []
    for r in rows:
        r = {c: v for c, v in r.items() if v}
        if not r:
            continue
        prim = _primitive(r)
        key = tuple(sorted(prim.items()))
        if key not in seen:
            seen.add(key)
            kept.append(prim)
    m = RationalMatrix(0, ncols)
    m.rows = kept
    m.nrows = len(kept)
    return m


# -- elimination core ----------------------------------------------------------


def _primitive(row: SparseRow) -> Dict[int, int]:
    """Scale a rational row to a primitive integer row with positive leading entry."""
    den = 1
    for v in row.values():
        if not isinstance(v, int):
            den = lcm(den, Fraction(v).denominator)
    if den == 1:
        ints = {c: int(v) for c, v in row.items()}
    else:
        ints = {c: int(Fraction(v) * den) for c, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = ints[min(ints)]
    if lead < 0:
        g = -g
    if g != 1:
        ints = {c: v // g for c, v in ints.items()}
    return ints


class _Echelon:
    """Incrementally maintained row-echelon form with primitive integer rows."""

    def __init__(self):
        self.pivots: Dict[int, Dict[int, int]] = {}
        self.sources: Dict[int, int] = {}

    def add(self, row: Dict[int, int], source: int = -1) -> bool:
        """Reduce ``row`` against the current pivots; keep it if anything survives."""
        pivots = self.pivots
        row = dict(row)
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                self.pivots[c] = _primitive(row)
                self.sources[c] = source
                return True
            a, b = prow[c], row[c]
            g = gcd(a, b)
            a //= g
            b //= g
            # row <- a*row - b*prow, which cancels column c
            new = {k: a * v for k, v in row.items()} if a != 1 else row
            for k, v in prow.items():
                nv = new.get(k, 0) - b * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            row = _primitive(new) if new else new
        return False

    def reduced(self) -> Dict[int, Dict[int, Fraction]]:
        """Back-substitute to reduced row-echelon form with unit pivots."""
        out: Dict[int, Dict[int, Fraction]] = {}
        for c in sorted(self.pivots, reverse=True):
            row = {k: Fraction(v) for k, v in self.pivots[c].items()}
            for k in sorted(k for k in row if k != c and k in out):
                coef = row.get(k)
                if not coef:
                    continue
                for kk, vv in out[k].items():
                    nv = row.get(kk, 0) - coef * vv
                    if nv:
                        row[kk] = nv
                    else:
                        row.pop(kk, None)
            lead = row[c]
            if lead != 1:
                row = {k: v / lead for k, v in row.items()}
            out[c] = row
        return out


def _components(rows: Sequence[SparseRow], ncols: int) -> List[List[int]]:
    """Group row indices by connected component of the column-sharing graph."""
    parent = list(range(ncols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r in rows:
        it = iter(r)
        first = next(it, None)
        if first is None:
            continue
        root = find(first)
        for c in it:
            rc = find(c)
            if rc != root:
                parent[rc] = root
    groups: Dict[int, List[int]] = {}
    for i, r in enumerate(rows):
        if r:
            groups.setdefault(find(next(iter(r))), []).append(i)
    return list(groups.values())


def _reduce(m: RationalMatrix) -> Tuple[Dict[int, Dict[int, Fraction]], Dict[int, int]]:
    """Reduced echelon rows of ``m`` keyed by pivot column, plus pivot source rows."""
    rows = m.rows
    rref_rows: Dict[int, Dict[int, Fraction]] = {}
    sources: Dict[int, int] = {}
    for group in _components(rows, m.ncols):
        ncols_block = len({c for i in group for c in rows[i]})
        ech = _Echelon()
        for i in group:
            ech.add(_primitive(rows[i]), i)
            if len(ech.pivots) == ncols_block:
                break
        rref_rows.update(ech.reduced())
        sources.update(ech.sources)
    return rref_rows, sources


def rref(m: RationalMatrix) -> Tuple[RationalMatrix, List[int]]:
    """Reduced row-echelon form of ``m`` and its strictly increasing pivot columns.

    Zero rows are moved to the bottom; the shape is preserved.
    """
    reduced, _ = _reduce(m)
    pivots = sorted(reduced)
    rows = [reduced[c] for c in pivots]
    rows.extend({} for _ in range(m.nrows - len(rows)))
    return RationalMatrix(m.nrows, m.ncols, rows), pivots


def rank(m: RationalMatrix) -> int:
    return len(_reduce(m)[0])


def _nullspace_from_rref(reduced: Dict[int, Dict[int, Fraction]], ncols: int) -> List[Tuple[Fraction, ...]]:
    free = [c for c in range(ncols) if c not in reduced]
    # column view of the non-pivot entries: free col -> [(pivot col, value)]
    by_free: Dict[int, List[Tuple[int, Fraction]]] = {}
    for p, row in reduced.items():
        for c, v in row.items():
            if c != p:
                by_free.setdefault(c, []).append((p, v))
    zero = Fraction(0)
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = Fraction(1)
        for p, val in by_free.get(f, ()):
            v[p] = -val
        basis.append(tuple(v))
    return basis


def nullspace(m: RationalMatrix) -> SolutionSpace:
    """Canonical exact basis of ``{v : m v = 0}``.

    One basis vector per free column ``f`` of the reduced echelon form,
    with ``v[f] = 1`` and zeros on every other free column.
    """
    reduced, _ = _reduce(m)
    basis = _nullspace_from_rref(reduced, m.ncols)
    free = tuple(c for c in range(m.ncols) if c not in reduced)
    return SolutionSpace(m.ncols, tuple(basis), m.nrows, len(reduced), free)


def echelon_basis(vectors: Sequence[Sequence], ambient_dim: int) -> List[Tuple[Fraction, ...]]:
    """Canonical basis (reduced row-echelon rows) of the span of ``vectors``."""
    m = RationalMatrix(len(vectors), ambient_dim, ({i: x for i, x in enumerate(v) if x} for v in vectors))
    reduced, _ = _reduce(m)
    zero = Fraction(0)
    out = []
    for p in sorted(reduced):
        v = [zero] * ambient_dim
        for c, x in reduced[p].items():
            v[c] = x
        out.append(tuple(v))
    return out


class LinearSolver:
    """Factor ``m`` once, then solve ``m x = b`` for many right-hand sides.

    Returned solutions have zeros in every free coordinate.
    """

    def __init__(self, m: RationalMatrix):
        self.matrix = m
        reduced, sources = _reduce(m)
        self.pivots = sorted(reduced)
        self._rows = [sources[p] for p in self.pivots]
        r = len(self.pivots)
        # invert the square block (independent rows) x (pivot columns)
        col_pos = {c: k for k, c in enumerate(self.pivots)}
        aug = []
        for k, src in enumerate(self._rows):
            row = {col_pos[c]: v for c, v in m.rows[src].items() if c in col_pos}
            row[r + k] = 1
            aug.append(row)
        inv_rows, _ = _reduce(RationalMatrix(r, 2 * r, aug))
        self._inverse = [
            {c - r: v for c, v in inv_rows[k].items() if c >= r} for k in range(r)
        ]

    def solve(self, b: Sequence) -> Optional[List[Fraction]]:
        m = self.matrix
        if len(b) != m.nrows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {m.nrows}")
        rhs = [Fraction(b[src]) for src in self._rows]
        x = [Fraction(0)] * m.ncols
        for k, p in enumerate(self.pivots):
            x[p] = sum((v * rhs[j] for j, v in self._inverse[k].items()), Fraction(0))
        for row, target in zip(m.rows, b):
            if sum((v * x[c] for c, v in row.items()), 0) != target:
                return None
        return x


def solve(m: RationalMatrix, b: Sequence) -> Optional[List[Fraction]]:
    """Some ``x`` with ``m x = b`` (free coordinates zero), or ``None`` if inconsistent."""
    if len(b) != m.nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m.nrows}")
    return LinearSolver(m).solve(b)
