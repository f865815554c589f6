"""Derivations of a Lie algebra and the inner-derivation test."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .algebra import Element, LieAlgebra
from .linalg import LinearSolver, RationalMatrix, SolutionSpace, assemble_rows, nullspace


class NotADerivationError(ValueError):
    pass


class LinearMap:
    """Linear endomorphism of ``algebra``; ``columns[j]`` is the image of ``e_j``.

    Vectorized coordinates put coordinate ``k`` of the image of ``e_j`` at
    position ``j * dim + k``.
    """

    __slots__ = ("algebra", "columns")

    def __init__(self, algebra: LieAlgebra, columns: Sequence[Dict[int, object]]):
        if len(columns) != algebra.dim:
            raise ValueError(f"expected {algebra.dim} columns, got {len(columns)}")
        self.algebra = algebra
        self.columns = [{k: Fraction(v) for k, v in col.items() if v} for col in columns]

    @classmethod
    def from_vector(cls, L: LieAlgebra, v: Sequence) -> "LinearMap":
        n = L.dim
        if len(v) != n * n:
            raise ValueError(f"expected a vector of length {n * n}")
        return cls(L, [{k: v[j * n + k] for k in range(n) if v[j * n + k]} for j in range(n)])

    @classmethod
    def scalar(cls, L: LieAlgebra, c) -> "LinearMap":
        return cls(L, [{j: c} for j in range(L.dim)])

    def to_vector(self) -> List[Fraction]:
        n = self.algebra.dim
        v = [Fraction(0)] * (n * n)
        for j, col in enumerate(self.columns):
            for k, x in col.items():
                v[j * n + k] = x
        return v

    def apply_sparse(self, x: Dict[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for j, a in x.items():
            for k, c in self.columns[j].items():
                out[k] = out.get(k, 0) + a * c
        return {k: v for k, v in out.items() if v}

    def __call__(self, x: Element) -> Element:
        if x.algebra is not self.algebra:
            raise ValueError("element does not belong to this algebra")
        return Element(self.algebra, self.apply_sparse(x.coeffs))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.algebra is other.algebra and self.columns == other.columns

    def __add__(self, other: "LinearMap") -> "LinearMap":
        cols = []
        for a, b in zip(self.columns, other.columns):
            c = dict(a)
            for k, v in b.items():
                c[k] = c.get(k, 0) + v
            cols.append(c)
        return LinearMap(self.algebra, cols)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "LinearMap":
        s = Fraction(scalar)
        return LinearMap(self.algebra, [{k: s * v for k, v in col.items()} for col in self.columns])

    def compose(self, other: "LinearMap") -> "LinearMap":
        """``self`` after ``other``."""
        return LinearMap(self.algebra, [self.apply_sparse(col) for col in other.columns])

    def is_zero(self) -> bool:
        return not any(self.columns)

    def __repr__(self) -> str:
        return f"LinearMap({self.algebra}, nnz={sum(len(c) for c in self.columns)})"


@dataclass(frozen=True)
class DerivationSpace:
    algebra: LieAlgebra
    space: SolutionSpace

    @property
    def dim(self) -> int:
        return self.space.dim

    def maps(self) -> List[LinearMap]:
        return [LinearMap.from_vector(self.algebra, v) for v in self.space.basis]


def derivation_constraints(L: LieAlgebra) -> RationalMatrix:
    """Rows of ``D([e_i,e_j]) - [D e_i, e_j] - [e_i, D e_j] = 0`` for ``i < j``."""
    n = L.dim
    table, _ = L.integer_table()

    def rows():
        for i in range(n):
            for j in range(i + 1, n):
                acc: Dict[int, Dict[int, int]] = {}

                def put(d, col, v):
                    r = acc.setdefault(d, {})
                    r[col] = r.get(col, 0) + v

                for m, c in table[i][j]:
                    for d in range(n):
                        put(d, m * n + d, c)
                for m in range(n):
                    for d, c in table[m][j]:
                        put(d, i * n + m, -c)
                    for d, c in table[i][m]:
                        put(d, j * n + m, -c)
                yield from acc.values()

    return assemble_rows(rows(), n * n)


def derivation_space(L: LieAlgebra) -> DerivationSpace:
    return DerivationSpace(L, nullspace(derivation_constraints(L)))


def is_derivation(L: LieAlgebra, D: LinearMap) -> bool:
    """Check the derivation identity directly on every basis pair."""
    n = L.dim
    for i in range(n):
        ei = {i: Fraction(1)}
        Di = D.columns[i]
        for j in range(i + 1, n):
            ej = {j: Fraction(1)}
            lhs = D.apply_sparse(L.bracket_sparse(ei, ej))
            rhs = L.bracket_sparse(Di, ej)
            for k, v in L.bracket_sparse(ei, D.columns[j]).items():
                rhs[k] = rhs.get(k, 0) + v
            if lhs != {k: v for k, v in rhs.items() if v}:
                return False
    return True


def ad(L: LieAlgebra, x: Element) -> LinearMap:
    """Matrix of ``y -> [x, y]``."""
    if x.algebra is not L:
        raise ValueError("element does not belong to this algebra")
    return LinearMap(L, [L.bracket_sparse(x.coeffs, {j: Fraction(1)}) for j in range(L.dim)])


def ad_solver(L: LieAlgebra) -> LinearSolver:
    """Solver for ``ad(x) = D`` in the unknown ``x``; right-hand sides are vectorized maps."""
    cache = L.__dict__.setdefault("_ad_solver", [])
    if not cache:
        n = L.dim
        rows: List[Dict[int, Fraction]] = [{} for _ in range(n * n)]
        for m in range(n):
            for j in range(n):
                for k, c in L.table[m][j]:
                    rows[j * n + k][m] = c
        cache.append(LinearSolver(RationalMatrix(n * n, n, rows)))
    return cache[0]


def is_inner(L: LieAlgebra, D: LinearMap) -> Optional[Element]:
    """Some ``x`` with ``ad(x) = D`` (free coordinates zero), or ``None``."""
    if D.algebra is not L:
        raise ValueError("map does not belong to this algebra")
    if not is_derivation(L, D):
        raise NotADerivationError("map fails the derivation identity")
    x = ad_solver(L).solve(D.to_vector())
    return None if x is None else L.element(x)


def verify_inner_lemma(L: LieAlgebra, space: Optional[DerivationSpace] = None) -> bool:
    """Derivation space has dimension ``dim L`` and every basis derivation is inner."""
    if L.kind.name != "simple":
        raise TypeError("inner-derivation lemma applies to simple algebras")
    space = space or derivation_space(L)
    if space.dim != L.dim:
        return False
    return all(is_inner(L, D) is not None for D in space.maps())
