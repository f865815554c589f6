"""Root systems of the simple Lie algebras in orthonormal coordinates.

Coordinates are taken with respect to an orthonormal basis
``beta_1, ..., beta_m``: ``A_l`` lives in dimension ``l+1``, ``G_2`` in
dimension 3, all three ``E`` types in dimension 8, and the rest in
dimension ``l``.

A base is chosen by fixing a regular linear functional: roots on which it is
positive are the positive roots, and the simple roots are the positive roots
that are not sums of two positive ones.  For ``A``--``D`` the functionals are
picked so that the standard bases (``beta_i - beta_{i+1}`` plus the last
short/long root) come out.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import LinearSolver, RationalMatrix, format_rational, parse_rational

Vector = Tuple[Fraction, ...]

RANK_BOUNDS = {
    "A": lambda l: l >= 1,
    "B": lambda l: l >= 2,
    "C": lambda l: l >= 3,
    "D": lambda l: l >= 4,
    "E": lambda l: l in (6, 7, 8),
    "F": lambda l: l == 4,
    "G": lambda l: l == 2,
}

_BOUND_TEXT = {
    "A": "l >= 1", "B": "l >= 2", "C": "l >= 3", "D": "l >= 4",
    "E": "l in {6, 7, 8}", "F": "l = 4", "G": "l = 2",
}


class RankError(ValueError):
    """Family/rank combination outside the tabulated range."""


@dataclass(frozen=True, order=True)
class RootSystemType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in RANK_BOUNDS:
            raise RankError(f"unknown family {self.family!r}; expected one of A-G")
        if not isinstance(self.rank, int) or not RANK_BOUNDS[self.family](self.rank):
            raise RankError(
                f"{self.family}_{self.rank} out of range: {self.family} requires {_BOUND_TEXT[self.family]}"
            )

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _vec(m: int, entries: Dict[int, object]) -> Vector:
    v = [Fraction(0)] * m
    for i, x in entries.items():
        v[i] = Fraction(x)
    return tuple(v)


def _pm_pairs(m: int, k: int) -> List[Vector]:
    """All ``+-beta_i +- beta_j`` with ``i != j < k`` in ambient dimension ``m``."""
    out = []
    for i, j in itertools.combinations(range(k), 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            out.append(_vec(m, {i: si, j: sj}))
    return out


def _half_spin(m: int, cond) -> List[Vector]:
    half = Fraction(1, 2)
    out = []
    for eps in itertools.product((1, -1), repeat=m):
        prod = 1
        for e in eps:
            prod *= e
        if prod == 1 and cond(eps):
            out.append(tuple(half * e for e in eps))
    return out


def _root_set(t: RootSystemType) -> Tuple[int, List[Vector]]:
    f, l = t.family, t.rank
    if f == "A":
        m = l + 1
        roots = [_vec(m, {i: 1, j: -1}) for i in range(m) for j in range(m) if i != j]
    elif f == "B":
        m = l
        roots = _pm_pairs(m, m) + [_vec(m, {i: s}) for i in range(m) for s in (1, -1)]
    elif f == "C":
        m = l
        roots = _pm_pairs(m, m) + [_vec(m, {i: 2 * s}) for i in range(m) for s in (1, -1)]
    elif f == "D":
        m = l
        roots = _pm_pairs(m, m)
    elif f == "E":
        m = 8
        if l == 6:
            roots = _pm_pairs(m, 5) + _half_spin(m, lambda e: e[5] == e[6] == e[7])
        elif l == 7:
            roots = (
                _pm_pairs(m, 6)
                + [_vec(m, {6: 1, 7: 1}), _vec(m, {6: -1, 7: -1})]
                + _half_spin(m, lambda e: e[6] == e[7])
            )
        else:
            roots = _pm_pairs(m, 8) + _half_spin(m, lambda e: True)
    elif f == "F":
        m = 4
        roots = (
            _pm_pairs(m, 4)
            + [_vec(m, {i: s}) for i in range(m) for s in (1, -1)]
            + [tuple(Fraction(e, 2) for e in eps) for eps in itertools.product((1, -1), repeat=4)]
        )
    else:  # G2
        m = 3
        roots = []
        for i in range(3):
            j, k = (x for x in range(3) if x != i)
            long_root = _vec(m, {i: -2, j: 1, k: 1})
            roots += [long_root, tuple(-x for x in long_root)]
        roots += [_vec(m, {i: 1, j: -1}) for i in range(3) for j in range(3) if i != j]
    return m, sorted(set(roots))


def _functional(t: RootSystemType, m: int) -> Vector:
    f, l = t.family, t.rank
    if f == "A":
        return tuple(Fraction(m - i) for i in range(m))
    if f in "BCD":
        return tuple(Fraction(l - i) for i in range(l))
    if f == "G":
        return (Fraction(-1), Fraction(-2), Fraction(4))
    if f == "F":
        return (Fraction(8), Fraction(3), Fraction(2), Fraction(1))
    return tuple(Fraction(2 ** i) for i in range(7)) + (Fraction(256),)


@dataclass(frozen=True)
class RootSystem:
    """A root system with a fixed base.

    ``roots`` lists the positive roots first (by height, then by
    lexicographically decreasing coordinates) followed by their negatives in
    the same order.  ``simples`` and ``positives`` are index lists into
    ``roots``; ``coefficients[k]`` expresses root ``k`` in the simple roots.
    """

    rstype: RootSystemType
    ambient_dim: int
    roots: Tuple[Vector, ...]
    simples: Tuple[int, ...]
    positives: Tuple[int, ...]
    coefficients: Tuple[Tuple[int, ...], ...]
    _index: Dict[Vector, int] = field(default_factory=dict, repr=False, compare=False)
    # coordinates doubled to integers (all roots lie in the half-integer lattice)
    _twice: Tuple[Tuple[int, ...], ...] = field(default=(), repr=False, compare=False)
    _twice_index: Dict[Tuple[int, ...], int] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._index.update({r: k for k, r in enumerate(self.roots)})
        twice = tuple(tuple(int(2 * x) for x in r) for r in self.roots)
        object.__setattr__(self, "_twice", twice)
        self._twice_index.update({r: k for k, r in enumerate(twice)})

    @property
    def rank(self) -> int:
        return len(self.simples)

    @property
    def simple_roots(self) -> List[Vector]:
        return [self.roots[k] for k in self.simples]

    @property
    def positive_roots(self) -> List[Vector]:
        return [self.roots[k] for k in self.positives]

    def index(self, v: Sequence) -> Optional[int]:
        return self._index.get(tuple(Fraction(x) for x in v))

    def height(self, k: int) -> int:
        return sum(self.coefficients[k])

    def negative(self, k: int) -> int:
        return self._index[tuple(-x for x in self.roots[k])]

    def __len__(self) -> int:
        return len(self.roots)

    def __str__(self) -> str:
        return str(self.rstype)

    def to_json(self) -> str:
        doc = {
            "family": self.rstype.family,
            "rank": self.rstype.rank,
            "ambient_dim": self.ambient_dim,
            "roots": [[format_rational(x) for x in r] for r in self.roots],
            "simples": list(self.simples),
            "positives": list(self.positives),
        }
        return json.dumps(doc, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "RootSystem":
        doc = json.loads(text)
        t = RootSystemType(doc["family"], doc["rank"])
        roots = tuple(tuple(parse_rational(x) for x in r) for r in doc["roots"])
        simples = tuple(doc["simples"])
        return cls(t, doc["ambient_dim"], roots, simples, tuple(doc["positives"]),
                   _coefficients(roots, simples))


def _coefficients(roots: Sequence[Vector], simples: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    """Integer coordinates of every root with respect to the simple roots."""
    m = len(roots[0])
    basis = [roots[k] for k in simples]
    solver = LinearSolver(RationalMatrix.from_dense([[b[i] for b in basis] for i in range(m)]))
    out = []
    for r in roots:
        c = solver.solve(r)
        if c is None or any(x.denominator != 1 for x in c):
            raise ValueError(f"{r} is not an integer combination of the base")
        c = tuple(int(x) for x in c)
        if not (all(x >= 0 for x in c) or all(x <= 0 for x in c)):
            raise ValueError(f"{r} has mixed-sign coefficients; base is not a base")
        out.append(c)
    return tuple(out)


def generate(t: RootSystemType) -> RootSystem:
    """Build the root system of type ``t`` with its standard base and ordering."""
    if not isinstance(t, RootSystemType):
        t = RootSystemType(*t)
    m, roots = _root_set(t)
    f = _functional(t, m)
    values = {r: dot(f, r) for r in roots}
    if any(v == 0 for v in values.values()):
        raise AssertionError(f"functional is not regular for {t}")
    pos = [r for r in roots if values[r] > 0]
    pos_set = set(pos)
    sums = {tuple(a + b for a, b in zip(u, v)) for u, v in itertools.combinations(pos, 2)}
    simple = [r for r in pos if r not in sums]
    if len(simple) != t.rank:
        raise AssertionError(f"found {len(simple)} simple roots for {t}")
    # heights from coefficients, computed on a provisional ordering
    provisional = pos + [tuple(-x for x in r) for r in pos]
    prov_coeffs = _coefficients(provisional, [provisional.index(s) for s in sorted(simple, reverse=True)])
    height = {provisional[k]: sum(prov_coeffs[k]) for k in range(len(pos))}
    ordered_pos = sorted(pos_set, key=lambda r: (height[r], tuple(-x for x in r)))
    ordered = ordered_pos + [tuple(-x for x in r) for r in ordered_pos]
    npos = len(ordered_pos)
    simples = tuple(range(t.rank))
    return RootSystem(t, m, tuple(ordered), simples, tuple(range(npos)), _coefficients(ordered, simples))


def cartan_matrix(rs: RootSystem) -> RationalMatrix:
    """Entry ``(i, j)`` is ``2 (a_i, a_j) / (a_j, a_j)`` over the simple roots."""
    s = rs.simple_roots
    return RationalMatrix.from_dense([[2 * dot(a, b) / dot(b, b) for b in s] for a in s])


def is_root(rs: RootSystem, v: Sequence) -> bool:
    if len(v) != rs.ambient_dim:
        raise ValueError(f"vector has dimension {len(v)}, root system lives in {rs.ambient_dim}")
    return rs.index(v) is not None


def _check_root(rs: RootSystem, v: Sequence) -> int:
    if len(v) != rs.ambient_dim:
        raise ValueError(f"vector has dimension {len(v)}, root system lives in {rs.ambient_dim}")
    k = rs.index(v)
    if k is None:
        raise ValueError(f"{tuple(format_rational(x) for x in v)} is not a root of {rs}")
    return k


def _adjacency(rs: RootSystem) -> List[List[int]]:
    """Neighbours in the sum graph: ``d ~ e`` when ``d + e`` is a root or zero."""
    n = len(rs.roots)
    adj: List[List[int]] = [[] for _ in range(n)]
    twice, index = rs._twice, rs._twice_index
    for a in range(n):
        ra = twice[a]
        for b in range(a, n):
            s = tuple(x + y for x, y in zip(ra, twice[b]))
            if not any(s) or s in index:
                adj[a].append(b)
                if b != a:
                    adj[b].append(a)
    return adj


def connected(rs: RootSystem, a: Sequence, b: Sequence) -> Optional[List[Vector]]:
    """Shortest chain ``g_1..g_k`` with ``a+g_1, g_1+g_2, ..., g_k+b`` in roots or zero.

    An empty list means ``a + b`` is itself a root or zero.  Returns ``None``
    when the roots are not connected.
    """
    ia, ib = _check_root(rs, a), _check_root(rs, b)
    adj = _adjacency(rs)
    # BFS over walks of at least one edge; first-layer vertices point at -1
    prev: Dict[int, int] = {}
    queue = deque()
    for nb in adj[ia]:
        if nb not in prev:
            prev[nb] = -1
            queue.append(nb)
    while queue:
        u = queue.popleft()
        if u == ib:
            chain = []
            while prev[u] != -1:
                u = prev[u]
                chain.append(u)
            chain.reverse()
            return [rs.roots[k] for k in chain]
        for nb in adj[u]:
            if nb not in prev:
                prev[nb] = u
                queue.append(nb)
    return None


def verify_all_connected(rs: RootSystem) -> Tuple[bool, List[Tuple[Vector, Vector]]]:
    """Whether every pair of roots is connected; failing pairs are component representatives."""
    n = len(rs.roots)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, nbrs in enumerate(_adjacency(rs)):
        for b in nbrs:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
    reps = sorted({find(k) for k in range(n)})
    failures = [(rs.roots[reps[0]], rs.roots[r]) for r in reps[1:]]
    # every vertex has an edge to its negative, so a single component suffices
    return (len(reps) == 1, failures)


def root_string(rs: RootSystem, a: Sequence, b: Sequence) -> Tuple[int, int]:
    """``(p, q)`` for the ``a``-string through ``b``: ``b - p a, ..., b + q a``."""
    ia, ib = _check_root(rs, a), _check_root(rs, b)
    if ib == ia or ib == rs.negative(ia):
        raise ValueError("root string requires b not in {a, -a}")
    va, vb = rs.roots[ia], rs.roots[ib]

    def scan(sign):
        k = 0
        while rs.index(tuple(y + sign * (k + 1) * x for x, y in zip(va, vb))) is not None:
            k += 1
        return k

    return scan(-1), scan(1)
