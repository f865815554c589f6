"""Biderivations: bilinear maps that are derivations in each argument.

A bilinear ``f`` is a biderivation when, for all ``x, y, z``::

    f([x, y], z) = [x, f(y, z)] + [f(x, z), y]
    f(x, [y, z]) = [f(x, y), z] + [y, f(x, z)]

The space of such maps is computed as the exact nullspace of these
conditions imposed on every ordered triple of basis vectors.  Nothing about
skew-symmetry is assumed anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .algebra import Element, LieAlgebra
from .derivations import LinearMap, ad_solver
from .linalg import (
    RationalMatrix,
    SolutionSpace,
    assemble_rows,
    echelon_basis,
    format_rational,
    nullspace,
    parse_rational,
)

DEFAULT_CAP = 52
SAMPLE_SIZE = 1000
EXHAUSTIVE_LIMIT = 8

Sparse = Dict[int, Fraction]
Quadruple = Tuple[Sparse, Sparse, Sparse, Sparse]


class CapExceeded(RuntimeError):
    """Algebra too large for biderivation solving under the configured cap."""


class NotABiderivationError(ValueError):
    pass


class BilinearMap:
    """Bilinear map ``L x L -> L`` stored as ``entries[(i, j)] = f(e_i, e_j)``.

    Vectorized coordinates put coordinate ``k`` of ``f(e_i, e_j)`` at
    position ``(i * dim + j) * dim + k``.
    """

    __slots__ = ("algebra", "entries")

    def __init__(self, algebra: LieAlgebra, entries: Dict[Tuple[int, int], Dict[int, object]]):
        self.algebra = algebra
        clean = {}
        for key, vec in entries.items():
            vec = {k: Fraction(v) for k, v in vec.items() if v}
            if vec:
                clean[key] = vec
        self.entries: Dict[Tuple[int, int], Sparse] = clean

    @classmethod
    def from_vector(cls, L: LieAlgebra, v: Sequence) -> "BilinearMap":
        n = L.dim
        if len(v) != n ** 3:
            raise ValueError(f"expected a vector of length {n ** 3}")
        entries: Dict[Tuple[int, int], Sparse] = {}
        for idx, x in enumerate(v):
            if x:
                ij, k = divmod(idx, n)
                entries.setdefault(divmod(ij, n), {})[k] = x
        return cls(L, entries)

    def to_vector(self) -> List[Fraction]:
        n = self.algebra.dim
        v = [Fraction(0)] * n ** 3
        for (i, j), vec in self.entries.items():
            for k, x in vec.items():
                v[(i * n + j) * n + k] = x
        return v

    def at(self, i: int, j: int) -> Sparse:
        return self.entries.get((i, j), {})

    def apply_sparse(self, x: Sparse, y: Sparse) -> Sparse:
        out: Dict[int, Fraction] = {}
        entries = self.entries
        if len(x) * len(y) <= len(entries):
            for i, a in x.items():
                for j, b in y.items():
                    vec = entries.get((i, j))
                    if vec:
                        ab = a * b
                        for k, c in vec.items():
                            out[k] = out.get(k, 0) + ab * c
        else:
            for (i, j), vec in entries.items():
                a, b = x.get(i), y.get(j)
                if a and b:
                    ab = a * b
                    for k, c in vec.items():
                        out[k] = out.get(k, 0) + ab * c
        return {k: v for k, v in out.items() if v}

    def __call__(self, x: Element, y: Element) -> Element:
        if x.algebra is not self.algebra or y.algebra is not self.algebra:
            raise ValueError("elements do not belong to this algebra")
        return Element(self.algebra, self.apply_sparse(x.coeffs, y.coeffs))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BilinearMap):
            return NotImplemented
        return self.algebra is other.algebra and self.entries == other.entries

    def __add__(self, other: "BilinearMap") -> "BilinearMap":
        entries = {key: dict(vec) for key, vec in self.entries.items()}
        for key, vec in other.entries.items():
            cell = entries.setdefault(key, {})
            for k, v in vec.items():
                cell[k] = cell.get(k, 0) + v
        return BilinearMap(self.algebra, entries)

    def __sub__(self, other: "BilinearMap") -> "BilinearMap":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "BilinearMap":
        s = Fraction(scalar)
        return BilinearMap(
            self.algebra, {key: {k: s * v for k, v in vec.items()} for key, vec in self.entries.items()}
        )

    def transpose(self) -> "BilinearMap":
        """``(x, y) -> f(y, x)``."""
        return BilinearMap(self.algebra, {(j, i): vec for (i, j), vec in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def to_list(self) -> List[list]:
        """Sparse ``[i, j, k, "p/q"]`` entries in index order."""
        return [
            [i, j, k, format_rational(v)]
            for (i, j) in sorted(self.entries)
            for k, v in sorted(self.entries[(i, j)].items())
        ]

    @classmethod
    def from_list(cls, L: LieAlgebra, items: Iterable) -> "BilinearMap":
        entries: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for i, j, k, v in items:
            cell = entries.setdefault((i, j), {})
            if k in cell:
                raise ValueError(f"duplicate entry ({i}, {j}, {k})")
            cell[k] = parse_rational(str(v))
        return cls(L, entries)

    def __repr__(self) -> str:
        return f"BilinearMap({self.algebra}, nnz={sum(len(v) for v in self.entries.values())})"


@dataclass(frozen=True)
class BiderivationSpace:
    algebra: LieAlgebra
    space: SolutionSpace

    @property
    def dim(self) -> int:
        return self.space.dim

    def maps(self) -> List[BilinearMap]:
        return [BilinearMap.from_vector(self.algebra, v) for v in self.space.basis]


@dataclass(frozen=True)
class PhiPsiPair:
    """Linear maps with ``f(x, y) = [phi(x), y] = [x, psi(y)]``."""

    phi: LinearMap
    psi: LinearMap


# -- constraint assembly ------------------------------------------------------------


def check_cap(L: LieAlgebra, cap: Optional[int]):
    if cap is not None and L.dim > cap:
        raise CapExceeded(f"dim {L.dim} of {L} exceeds the biderivation cap {cap}")


def _constraint_rows(L: LieAlgebra) -> Iterator[Dict[int, int]]:
    n = L.dim
    table, _ = L.integer_table()
    nn = n * n

    def col(i, j, k):
        return i * nn + j * n + k

    for a in range(n):
        ta = table[a]
        for b in range(n):
            tab = ta[b]
            tb = table[b]
            for c in range(n):
                # f([a,b],c) - [a, f(b,c)] - [f(a,c), b]
                acc: Dict[int, Dict[int, int]] = {}
                for m, coef in tab:
                    base = col(m, c, 0)
                    for d in range(n):
                        r = acc.setdefault(d, {})
                        r[base + d] = r.get(base + d, 0) + coef
                bc = col(b, c, 0)
                ac = col(a, c, 0)
                for m in range(n):
                    for d, coef in ta[m]:
                        r = acc.setdefault(d, {})
                        r[bc + m] = r.get(bc + m, 0) - coef
                    for d, coef in table[m][b]:
                        r = acc.setdefault(d, {})
                        r[ac + m] = r.get(ac + m, 0) - coef
                yield from acc.values()
                # f(a,[b,c]) - [f(a,b), c] - [b, f(a,c)]
                acc = {}
                for m, coef in tb[c]:
                    base = col(a, m, 0)
                    for d in range(n):
                        r = acc.setdefault(d, {})
                        r[base + d] = r.get(base + d, 0) + coef
                ab = col(a, b, 0)
                for m in range(n):
                    for d, coef in table[m][c]:
                        r = acc.setdefault(d, {})
                        r[ab + m] = r.get(ab + m, 0) - coef
                    for d, coef in tb[m]:
                        r = acc.setdefault(d, {})
                        r[ac + m] = r.get(ac + m, 0) - coef
                yield from acc.values()


def assemble_constraints(L: LieAlgebra, cap: Optional[int] = DEFAULT_CAP) -> RationalMatrix:
    """Constraint matrix whose nullspace is the space of biderivations of ``L``.

    One row per ordered basis triple, output coordinate and identity, with
    zero rows dropped and proportional duplicates merged; ``dim**3`` columns.
    """
    check_cap(L, cap)
    return assemble_rows(_constraint_rows(L), L.dim ** 3)


def biderivation_space(L: LieAlgebra, cap: Optional[int] = DEFAULT_CAP) -> BiderivationSpace:
    return BiderivationSpace(L, nullspace(assemble_constraints(L, cap)))


def is_biderivation(L: LieAlgebra, f: BilinearMap) -> bool:
    """Evaluate both defining identities on every basis triple."""
    if f.algebra is not L:
        raise ValueError("map does not belong to this algebra")
    n = L.dim
    one = Fraction(1)
    basis = [{i: one} for i in range(n)]
    br = L.bracket_sparse

    def plus(u, v):
        out = dict(u)
        for k, x in v.items():
            out[k] = out.get(k, 0) + x
        return {k: x for k, x in out.items() if x}

    for a in range(n):
        for b in range(n):
            ab = br(basis[a], basis[b])
            fab = f.at(a, b)
            for c in range(n):
                fac = f.at(a, c)
                lhs1 = f.apply_sparse(ab, basis[c])
                rhs1 = plus(br(basis[a], f.at(b, c)), br(fac, basis[b]))
                if lhs1 != rhs1:
                    return False
                lhs2 = f.apply_sparse(basis[a], br(basis[b], basis[c]))
                rhs2 = plus(br(fab, basis[c]), br(basis[b], fac))
                if lhs2 != rhs2:
                    return False
    return True


def _require_biderivation(L: LieAlgebra, f: BilinearMap):
    if not is_biderivation(L, f):
        raise NotABiderivationError("map fails the biderivation identities")


def inner_biderivation(L: LieAlgebra, lam) -> BilinearMap:
    """``(x, y) -> lam [x, y]``."""
    lam = Fraction(lam)
    return BilinearMap(
        L, {(i, j): {k: lam * c for k, c in L.table[i][j]} for i in range(L.dim) for j in range(L.dim)}
    )


def trace_biderivation(L: LieAlgebra) -> BilinearMap:
    """``(x, y) -> tr(x) tr(y) I`` on ``gl_n``."""
    if L.kind.name != "gl":
        raise TypeError("trace biderivation requires gl_n")
    n = L.kind.n
    diag = [i * n + i for i in range(n)]
    ident = {d: Fraction(1) for d in diag}
    return BilinearMap(L, {(a, b): dict(ident) for a in diag for b in diag})


# -- decompositions --------------------------------------------------------------------


def _first_nonzero_bracket(L: LieAlgebra) -> Optional[Tuple[int, int, int, Fraction]]:
    for (i, j) in sorted(L.structure):
        k, c = min(L.structure[(i, j)].items())
        return i, j, k, c
    return None


def decompose_inner(L: LieAlgebra, f: BilinearMap) -> Optional[Fraction]:
    """The ``lam`` with ``f = lam [., .]``, or ``None`` when ``f`` is not inner."""
    _require_biderivation(L, f)
    probe = _first_nonzero_bracket(L)
    if probe is None:
        return Fraction(0) if f.is_zero() else None
    i, j, k, c = probe
    lam = f.at(i, j).get(k, Fraction(0)) / c
    return lam if f == inner_biderivation(L, lam) else None


def decompose_gl(f: BilinearMap) -> Optional[Tuple[Fraction, Fraction]]:
    """``(mu, lam)`` with ``f(x, y) = mu tr(x) tr(y) I + lam [x, y]`` on ``gl_n``, or ``None``."""
    L = f.algebra
    if L.kind.name != "gl":
        raise TypeError("decompose_gl requires a map on gl_n")
    _require_biderivation(L, f)
    n = L.kind.n
    # f(I, I) = n^2 mu I
    ident = L.identity_element().coeffs
    mu = f.apply_sparse(ident, ident).get(0, Fraction(0)) / (n * n)
    # f(E_12, E_21) = lam (E_11 - E_22), traces vanish
    lam = f.at(1, n).get(0, Fraction(0))
    if f == mu * trace_biderivation(L) + inner_biderivation(L, lam):
        return mu, lam
    return None


def extract_phi_psi(L: LieAlgebra, f: BilinearMap) -> Optional[PhiPsiPair]:
    """Linear ``phi, psi`` with ``f(x, y) = [phi(x), y] = [x, psi(y)]``, or ``None``.

    Each image is the solution with free coordinates zeroed, so on an
    algebra with a centre the maps are canonical representatives only.
    """
    _require_biderivation(L, f)
    n = L.dim
    solver = ad_solver(L)
    phi_cols, psi_cols = [], []
    for i in range(n):
        # ad(phi(e_i)) = f(e_i, .)
        rhs = [Fraction(0)] * (n * n)
        for j in range(n):
            for k, v in f.at(i, j).items():
                rhs[j * n + k] = v
        x = solver.solve(rhs)
        if x is None:
            return None
        phi_cols.append({k: v for k, v in enumerate(x) if v})
    for j in range(n):
        # [x, psi(e_j)] = f(x, e_j)  <=>  ad(psi(e_j)) = -f(., e_j)
        rhs = [Fraction(0)] * (n * n)
        for i in range(n):
            for k, v in f.at(i, j).items():
                rhs[i * n + k] = -v
        x = solver.solve(rhs)
        if x is None:
            return None
        psi_cols.append({k: v for k, v in enumerate(x) if v})
    return PhiPsiPair(LinearMap(L, phi_cols), LinearMap(L, psi_cols))


def cartan_stability(L: LieAlgebra, pair: PhiPsiPair) -> bool:
    """Whether ``phi`` and ``psi`` map the Cartan part into itself."""
    cartan = set(L.cartan_indices)
    return all(
        set(m.columns[h]) <= cartan for m in (pair.phi, pair.psi) for h in L.cartan_indices
    )


# -- identity checks ------------------------------------------------------------------


def _random_element(rng: random.Random, n: int) -> Sparse:
    out = {}
    for i in range(n):
        p = rng.randint(-9, 9)
        if p:
            out[i] = Fraction(p, rng.randint(1, 9))
    return out


def default_quadruples(L: LieAlgebra, seed: int = 0, size: int = SAMPLE_SIZE) -> List[Quadruple]:
    """All basis quadruples when ``dim <= 8``; otherwise ``size`` seeded random ones.

    Random coordinates are ``p/q`` with ``|p| <= 9`` and ``1 <= q <= 9``.
    """
    n = L.dim
    one = Fraction(1)
    if n <= EXHAUSTIVE_LIMIT:
        basis = [{i: one} for i in range(n)]
        return [
            (basis[x], basis[y], basis[u], basis[v])
            for x in range(n) for y in range(n) for u in range(n) for v in range(n)
        ]
    rng = random.Random(seed)
    return [tuple(_random_element(rng, n) for _ in range(4)) for _ in range(size)]


def _scaled(v: Dict[int, object]) -> Dict[int, int]:
    """Positive integer multiple of a rational vector."""
    den = 1
    for x in v.values():
        den = lcm(den, Fraction(x).denominator)
    return {k: int(x * den) for k, x in v.items() if x}


class _IntegerOps:
    """Bracket and ``f`` evaluation on integer vectors.

    Both identities are multilinear in ``x, y, u, v`` and ``f`` and every
    term uses the same number of brackets, so rescaling arguments, ``f``
    and the structure constants by positive integers preserves them.
    """

    def __init__(self, L: LieAlgebra, f: BilinearMap):
        self.table, _ = L.integer_table()
        den = 1
        for vec in f.entries.values():
            for c in vec.values():
                den = lcm(den, c.denominator)
        self.f = {key: tuple((k, int(c * den)) for k, c in vec.items()) for key, vec in f.entries.items()}

    def br(self, u: Dict[int, int], v: Dict[int, int]) -> Dict[int, int]:
        out: Dict[int, int] = {}
        table = self.table
        for i, a in u.items():
            row = table[i]
            for j, b in v.items():
                ab = a * b
                for k, c in row[j]:
                    out[k] = out.get(k, 0) + ab * c
        return {k: x for k, x in out.items() if x}

    def F(self, x: Dict[int, int], y: Dict[int, int]) -> Dict[int, int]:
        out: Dict[int, int] = {}
        f = self.f
        if len(x) * len(y) <= len(f):
            for i, a in x.items():
                for j, b in y.items():
                    vec = f.get((i, j))
                    if vec:
                        ab = a * b
                        for k, c in vec:
                            out[k] = out.get(k, 0) + ab * c
        else:
            for (i, j), vec in f.items():
                a, b = x.get(i), y.get(j)
                if a and b:
                    ab = a * b
                    for k, c in vec:
                        out[k] = out.get(k, 0) + ab * c
        return {k: v for k, v in out.items() if v}


def _difference_vanishes(p: Dict[int, int], q: Dict[int, int], r: Dict[int, int], s: Dict[int, int]) -> bool:
    """Whether ``p + q - r - s`` is zero."""
    out: Dict[int, int] = {}
    for sign, vec in ((1, p), (1, q), (-1, r), (-1, s)):
        for k, x in vec.items():
            out[k] = out.get(k, 0) + sign * x
    return not any(out.values())


def _integer_quadruples(quadruples):
    for quad in quadruples:
        yield tuple(_scaled(v) for v in quad)


def check_identity_four(
    L: LieAlgebra, f: BilinearMap, quadruples: Optional[Sequence[Quadruple]] = None, seed: int = 0
) -> bool:
    """``[f(x,y), [u,v]] = [[x,y], f(u,v)]`` on every quadruple."""
    ops = _IntegerOps(L, f)
    br, F = ops.br, ops.F
    quads = quadruples if quadruples is not None else default_quadruples(L, seed)
    for x, y, u, v in _integer_quadruples(quads):
        if br(F(x, y), br(u, v)) != br(br(x, y), F(u, v)):
            return False
    return True


def check_identity_eight(
    L: LieAlgebra, f: BilinearMap, quadruples: Optional[Sequence[Quadruple]] = None, seed: int = 0
) -> bool:
    """``[f(x,y),[u,v]] + [[x,v],f(u,y)] = [[x,y],f(u,v)] + [f(x,v),[u,y]]`` on every quadruple.

    This identity follows from the biderivation axioms, so ``f`` must be one.
    """
    _require_biderivation(L, f)
    ops = _IntegerOps(L, f)
    br, F = ops.br, ops.F
    quads = quadruples if quadruples is not None else default_quadruples(L, seed)
    for x, y, u, v in _integer_quadruples(quads):
        if not _difference_vanishes(
            br(F(x, y), br(u, v)), br(br(x, v), F(u, y)), br(br(x, y), F(u, v)), br(F(x, v), br(u, y))
        ):
            return False
    return True


def is_skew(f: BilinearMap) -> bool:
    return (f + f.transpose()).is_zero()


def is_symmetric(f: BilinearMap) -> bool:
    return f == f.transpose()


def skew_subspace(space: BiderivationSpace) -> SolutionSpace:
    """Skew-symmetric biderivations inside ``space``, in canonical echelon form."""
    L = space.algebra
    n = L.dim
    maps = space.maps()
    if not maps:
        return SolutionSpace(space.space.ambient_dim, (), space.space.constraint_rows,
                             space.space.ambient_dim)
    # condition f(e_i,e_j) + f(e_j,e_i) = 0, linear in the coefficients of the basis
    sym = [f + f.transpose() for f in maps]
    keys = sorted({(key, k) for g in sym for key, vec in g.entries.items() for k in vec})
    rows = [{t: g.entries.get(key, {}).get(k, 0) for t, g in enumerate(sym)} for key, k in keys]
    coeffs = nullspace(RationalMatrix(len(rows), len(maps), rows))
    vectors = []
    for c in coeffs.basis:
        total = [Fraction(0)] * n ** 3
        for t, w in enumerate(c):
            if w:
                for idx, x in enumerate(space.space.basis[t]):
                    if x:
                        total[idx] += w * x
        vectors.append(total)
    basis = tuple(echelon_basis(vectors, n ** 3)) if vectors else ()
    return SolutionSpace(
        space.space.ambient_dim,
        basis,
        space.space.constraint_rows + len(rows),
        space.space.ambient_dim - len(basis),
    )
