"""Finite-dimensional Lie algebras over Q given by structure constants.

Three constructions are provided: the Chevalley basis of a simple algebra
from its root system, and the matrix-unit realizations of ``gl_n`` and
``sl_n``.  Any other algebra can be loaded from the JSON exchange format.

Structure constants are stored for index pairs ``i < j`` only; the bracket
``[e_j, e_i]`` is read off by antisymmetry.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import format_rational, parse_rational
from .roots import RootSystem, RootSystemType, dot, generate, root_string

Sparse = Dict[int, Fraction]


@dataclass(frozen=True)
class BasisLabel:
    """Name of a basis vector.

    ``kind`` is one of ``cartan`` (``h`` of the ``index``-th simple root),
    ``root`` (``x_beta``, ``root`` holds the coordinates), ``unit`` (matrix
    unit ``E_ij``), ``diag`` (``E_ii - E_{i+1,i+1}``) or ``custom``.
    """

    kind: str
    index: Tuple[int, ...] = ()
    root: Tuple[Fraction, ...] = ()
    name: str = ""

    def __str__(self) -> str:
        if self.kind == "cartan":
            return f"h{self.index[0] + 1}"
        if self.kind == "root":
            return "x[" + ",".join(format_rational(c) for c in self.root) + "]"
        if self.kind == "unit":
            return f"E{self.index[0] + 1}{self.index[1] + 1}"
        if self.kind == "diag":
            i = self.index[0]
            return f"E{i + 1}{i + 1}-E{i + 2}{i + 2}"
        return self.name or f"e{self.index[0]}"


@dataclass(frozen=True)
class AlgebraKind:
    name: str  # "simple", "gl", "sl" or "custom"
    rstype: Optional[RootSystemType] = None
    n: int = 0

    def __str__(self) -> str:
        if self.name == "simple":
            return str(self.rstype)
        if self.name in ("gl", "sl"):
            return f"{self.name}_{self.n}"
        return "custom"


class LieAlgebra:
    """A Lie algebra with basis ``e_0 .. e_{dim-1}``.

    ``structure[(i, j)]`` for ``i < j`` is the sparse coordinate vector of
    ``[e_i, e_j]``.  ``cartan_indices`` marks the Cartan part and
    ``root_of`` maps root-vector indices to their root coordinates.
    """

    def __init__(
        self,
        kind: AlgebraKind,
        labels: Sequence[BasisLabel],
        structure: Dict[Tuple[int, int], Sparse],
        cartan_indices: Sequence[int] = (),
        root_of: Optional[Dict[int, Tuple[Fraction, ...]]] = None,
        rootsystem: Optional[RootSystem] = None,
    ):
        self.kind = kind
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        n = self.dim
        clean: Dict[Tuple[int, int], Sparse] = {}
        for (i, j), vec in structure.items():
            if not (0 <= i < n and 0 <= j < n):
                raise IndexError(f"structure index ({i}, {j}) outside dimension {n}")
            vec = {k: Fraction(v) for k, v in vec.items() if v != 0}
            if any(not 0 <= k < n for k in vec):
                raise IndexError(f"structure output index outside dimension {n}")
            if i == j:
                if vec:
                    raise ValueError(f"[e_{i}, e_{i}] must vanish")
                continue
            if i > j:
                i, j = j, i
                vec = {k: -v for k, v in vec.items()}
            if (i, j) in clean and clean[(i, j)] != vec:
                raise ValueError(f"inconsistent structure constants for ({i}, {j})")
            if vec:
                clean[(i, j)] = vec
        self.structure = clean
        self.cartan_indices = tuple(cartan_indices)
        self.root_of = dict(root_of or {})
        self.rootsystem = rootsystem
        # full lookup table, both orders, as tuples of (k, coef)
        table: List[List[Tuple[Tuple[int, Fraction], ...]]] = [[()] * n for _ in range(n)]
        for (i, j), vec in clean.items():
            items = tuple(sorted(vec.items()))
            table[i][j] = items
            table[j][i] = tuple((k, -v) for k, v in items)
        self.table = table

    def __repr__(self) -> str:
        return f"LieAlgebra({self.kind}, dim={self.dim})"

    def __str__(self) -> str:
        return str(self.kind)

    # -- elements -----------------------------------------------------------

    def basis(self, i: int) -> "Element":
        return Element(self, {i: Fraction(1)})

    def element(self, coeffs) -> "Element":
        if isinstance(coeffs, dict):
            return Element(self, coeffs)
        if len(coeffs) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coeffs)}")
        return Element(self, {i: c for i, c in enumerate(coeffs)})

    def zero(self) -> "Element":
        return Element(self, {})

    def bracket_basis(self, i: int, j: int) -> Sparse:
        return dict(self.table[i][j])

    def bracket_sparse(self, u: Sparse, v: Sparse) -> Sparse:
        out: Dict[int, Fraction] = {}
        table = self.table
        for i, a in u.items():
            row = table[i]
            for j, b in v.items():
                ab = a * b
                for k, c in row[j]:
                    out[k] = out.get(k, 0) + ab * c
        return {k: x for k, x in out.items() if x}

    def integer_table(self) -> Tuple[List[List[Tuple[Tuple[int, int], ...]]], int]:
        """Structure table scaled to integers, and the common denominator used."""
        cached = self.__dict__.get("_integer_table")
        if cached is None:
            cached = self.__dict__["_integer_table"] = self._integer_table()
        return cached

    def _integer_table(self):
        from math import lcm

        den = 1
        for vec in self.structure.values():
            for v in vec.values():
                den = lcm(den, v.denominator)
        table = [
            [tuple((k, int(c * den)) for k, c in cell) for cell in row] for row in self.table
        ]
        return table, den

    # -- gl_n helpers ---------------------------------------------------------

    def identity_element(self) -> "Element":
        if self.kind.name != "gl":
            raise TypeError("identity matrix exists only in gl_n")
        n = self.kind.n
        return Element(self, {i * n + i: Fraction(1) for i in range(n)})

    def trace(self, x: "Element") -> Fraction:
        if self.kind.name not in ("gl", "sl"):
            raise TypeError("trace is defined only for matrix realizations")
        if self.kind.name == "sl":
            return Fraction(0)
        n = self.kind.n
        return sum((x.coeffs.get(i * n + i, Fraction(0)) for i in range(n)), Fraction(0))

    def trace_covector(self) -> List[Fraction]:
        return [self.trace(self.basis(i)) for i in range(self.dim)]

    # -- JSON exchange ------------------------------------------------------------

    def to_dict(self) -> dict:
        kind = {"name": self.kind.name}
        if self.kind.rstype is not None:
            kind.update(family=self.kind.rstype.family, rank=self.kind.rstype.rank)
        if self.kind.n:
            kind["n"] = self.kind.n
        entries = [
            [i, j, k, format_rational(v)]
            for (i, j) in sorted(self.structure)
            for k, v in sorted(self.structure[(i, j)].items())
        ]
        return {
            "kind": kind,
            "dim": self.dim,
            "labels": [str(lb) for lb in self.labels],
            "cartan_indices": list(self.cartan_indices),
            "root_of": [
                [i, [format_rational(c) for c in r]] for i, r in sorted(self.root_of.items())
            ],
            "structure": entries,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, doc: dict) -> "LieAlgebra":
        kd = doc.get("kind", {"name": "custom"})
        if isinstance(kd, str):
            kd = {"name": kd}
        rstype = None
        rs = None
        if kd.get("name") == "simple":
            rstype = RootSystemType(kd["family"], kd["rank"])
            rs = generate(rstype)
        kind = AlgebraKind(kd.get("name", "custom"), rstype, kd.get("n", 0))
        n = doc["dim"]
        names = doc.get("labels") or [f"e{i}" for i in range(n)]
        if len(names) != n:
            raise ValueError("label count does not match dim")
        labels = [BasisLabel("custom", (i,), name=str(nm)) for i, nm in enumerate(names)]
        structure: Dict[Tuple[int, int], Sparse] = {}
        for i, j, k, v in doc.get("structure", []):
            if i == j:
                raise ValueError(f"[e_{i}, e_{i}] must vanish")
            val = parse_rational(str(v))
            if i > j:
                i, j, val = j, i, -val
            cell = structure.setdefault((i, j), {})
            if k in cell:
                raise ValueError(f"duplicate structure entry ({i}, {j}, {k})")
            cell[k] = val
        root_of = {int(i): tuple(parse_rational(c) for c in r) for i, r in doc.get("root_of", [])}
        return cls(kind, labels, structure, doc.get("cartan_indices", []), root_of, rs)

    @classmethod
    def from_json(cls, text: str) -> "LieAlgebra":
        return cls.from_dict(json.loads(text))


class Element:
    """A vector of a :class:`LieAlgebra`, stored sparsely."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: LieAlgebra, coeffs: Dict[int, object]):
        self.algebra = algebra
        clean = {}
        for i, c in coeffs.items():
            if not 0 <= i < algebra.dim:
                raise IndexError(f"coordinate {i} outside dimension {algebra.dim}")
            if c != 0:
                clean[i] = Fraction(c)
        self.coeffs: Sparse = clean

    def to_list(self) -> List[Fraction]:
        v = [Fraction(0)] * self.algebra.dim
        for i, c in self.coeffs.items():
            v[i] = c
        return v

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs.get(i, Fraction(0))

    def _check(self, other: "Element"):
        if not isinstance(other, Element) or other.algebra is not self.algebra:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, 0) + c
        return Element(self.algebra, out)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-1) * other

    def __neg__(self) -> "Element":
        return (-1) * self

    def __rmul__(self, scalar) -> "Element":
        s = Fraction(scalar)
        return Element(self.algebra, {i: s * c for i, c in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        labels = self.algebra.labels
        return " + ".join(f"{format_rational(c)}*{labels[i]}" for i, c in sorted(self.coeffs.items()))


def bracket(L: LieAlgebra, u: Element, v: Element) -> Element:
    """Bilinear extension of the structure constants."""
    if u.algebra is not L or v.algebra is not L:
        raise ValueError("elements do not belong to this algebra")
    return Element(L, L.bracket_sparse(u.coeffs, v.coeffs))


# -- Chevalley basis ---------------------------------------------------------------


class ConstructionError(RuntimeError):
    """Internal inconsistency while deriving Chevalley structure constants."""


def _structure_constants(rs: RootSystem) -> Dict[Tuple[int, int], int]:
    """Chevalley constants ``N[(a, b)]`` for all root indices with ``a + b`` a root.

    Signs are fixed by ``N = +(p+1)`` on extraspecial pairs, using the root
    ordering of ``rs`` (positive roots by height) as the total order.  The
    remaining constants follow from the standard relations between
    structure constants of a Chevalley basis.
    """
    roots = rs.roots
    npos = len(rs.positives)
    twice = rs._twice
    tindex = rs._twice_index
    norm = [dot(r, r) for r in roots]

    def add(a, b):
        return tindex.get(tuple(x + y for x, y in zip(twice[a], twice[b])))

    neg = [rs.negative(k) for k in range(len(roots))]
    pos_n: Dict[Tuple[int, int], Fraction] = {}

    def N(a, b):
        c = add(a, b)
        if c is None:
            return Fraction(0)
        a_pos, b_pos = a < npos, b < npos
        if a_pos and b_pos:
            return pos_n[(a, b)]
        if not a_pos and not b_pos:
            return -pos_n[(neg[a], neg[b])]
        if not a_pos:
            return -N(b, a)
        if c < npos:
            return -norm[c] / norm[a] * pos_n[(neg[b], c)]
        return norm[c] / norm[b] * pos_n[(neg[c], a)]

    by_sum: Dict[int, List[Tuple[int, int]]] = {}
    for r in range(npos):
        for s in range(r + 1, npos):
            c = add(r, s)
            if c is not None:
                by_sum.setdefault(c, []).append((r, s))
    for xi in sorted(by_sum, key=lambda k: (rs.height(k), k)):
        pairs = sorted(by_sum[xi])
        alpha, beta = pairs[0]
        p, _ = root_string(rs, roots[alpha], roots[beta])
        n_ab = Fraction(p + 1)
        pos_n[(alpha, beta)] = n_ab
        pos_n[(beta, alpha)] = -n_ab
        for r, s in pairs[1:]:
            total = Fraction(0)
            s_a = add(s, neg[alpha])
            if s_a is not None:
                total += N(s, neg[alpha]) * N(r, neg[beta]) / norm[s_a]
            r_a = add(r, neg[alpha])
            if r_a is not None:
                total += N(neg[alpha], r) * N(s, neg[beta]) / norm[r_a]
            val = norm[xi] / n_ab * total
            p_rs, _ = root_string(rs, roots[r], roots[s])
            if abs(val) != p_rs + 1:
                raise ConstructionError(f"|N| = {val} for pair ({r}, {s}), expected {p_rs + 1}")
            pos_n[(r, s)] = val
            pos_n[(s, r)] = -val
    out = {}
    for a in range(len(roots)):
        for b in range(len(roots)):
            if add(a, b) is not None:
                v = N(a, b)
                if v.denominator != 1:
                    raise ConstructionError(f"non-integral structure constant {v}")
                out[(a, b)] = int(v)
    return out


def coroot_coefficients(rs: RootSystem, k: int) -> Tuple[Fraction, ...]:
    """Coordinates of ``h_beta`` (the coroot of root ``k``) in the simple coroots."""
    r = rs.roots[k]
    nr = dot(r, r)
    return tuple(
        c * dot(s, s) / nr for c, s in zip(rs.coefficients[k], rs.simple_roots)
    )


def build_simple(rs: RootSystem) -> LieAlgebra:
    """Chevalley basis ``h_1..h_l, x_beta (beta in roots)`` of the simple algebra of ``rs``."""
    if not isinstance(rs, RootSystem):
        rs = generate(rs)
    l = rs.rank
    roots = rs.roots
    nroots = len(roots)
    simple = rs.simple_roots
    labels = [BasisLabel("cartan", (i,)) for i in range(l)]
    labels += [BasisLabel("root", (k,), root=roots[k]) for k in range(nroots)]
    structure: Dict[Tuple[int, int], Sparse] = {}
    # [h_i, x_beta] = <beta, alpha_i^vee> x_beta
    for i, a in enumerate(simple):
        na = dot(a, a)
        for k, r in enumerate(roots):
            c = 2 * dot(r, a) / na
            if c:
                structure[(i, l + k)] = {l + k: c}
    # [x_beta, x_-beta] = h_beta
    for k in rs.positives:
        h = {i: c for i, c in enumerate(coroot_coefficients(rs, k)) if c}
        structure[(l + k, l + rs.negative(k))] = h
    n_table = _structure_constants(rs)
    for (a, b), v in n_table.items():
        if a < b:
            c = rs.index(tuple(x + y for x, y in zip(roots[a], roots[b])))
            structure[(l + a, l + b)] = {l + c: Fraction(v)}
    root_of = {l + k: roots[k] for k in range(nroots)}
    return LieAlgebra(AlgebraKind("simple", rs.rstype), labels, structure, range(l), root_of, rs)


# -- matrix realizations -----------------------------------------------------------


def _matrix_algebra(kind: AlgebraKind, labels, mats, cartan, root_of, decompose) -> LieAlgebra:
    def mul(x, y):
        out: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), a in x.items():
            for (k, m), b in y.items():
                if j == k:
                    out[(i, m)] = out.get((i, m), 0) + a * b
        return out

    structure = {}
    for p in range(len(mats)):
        for q in range(p + 1, len(mats)):
            xy, yx = mul(mats[p], mats[q]), mul(mats[q], mats[p])
            comm = {key: xy.get(key, 0) - yx.get(key, 0) for key in set(xy) | set(yx)}
            comm = {key: v for key, v in comm.items() if v}
            if comm:
                structure[(p, q)] = decompose(comm)
    return LieAlgebra(kind, labels, structure, cartan, root_of)


def _unit_root(n: int, i: int, j: int) -> Tuple[Fraction, ...]:
    v = [Fraction(0)] * n
    v[i] += 1
    v[j] -= 1
    return tuple(v)


def build_gl(n: int) -> LieAlgebra:
    """``gl_n`` with basis the matrix units ``E_ij`` in row-major order."""
    if not isinstance(n, int) or n < 2:
        raise ValueError("gl_n requires n >= 2")
    labels = [BasisLabel("unit", (i, j)) for i in range(n) for j in range(n)]
    mats = [{(i, j): Fraction(1)} for i in range(n) for j in range(n)]
    cartan = [i * n + i for i in range(n)]
    root_of = {i * n + j: _unit_root(n, i, j) for i in range(n) for j in range(n) if i != j}

    def decompose(m):
        return {i * n + j: v for (i, j), v in m.items()}

    return _matrix_algebra(AlgebraKind("gl", n=n), labels, mats, cartan, root_of, decompose)


def build_sl(n: int) -> LieAlgebra:
    """``sl_n`` with basis ``E_ii - E_{i+1,i+1}`` followed by off-diagonal units."""
    if not isinstance(n, int) or n < 2:
        raise ValueError("sl_n requires n >= 2")
    labels = [BasisLabel("diag", (i,)) for i in range(n - 1)]
    mats = [{(i, i): Fraction(1), (i + 1, i + 1): Fraction(-1)} for i in range(n - 1)]
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    labels += [BasisLabel("unit", ij) for ij in offdiag]
    mats += [{ij: Fraction(1)} for ij in offdiag]
    pos = {ij: n - 1 + k for k, ij in enumerate(offdiag)}
    root_of = {n - 1 + k: _unit_root(n, i, j) for k, (i, j) in enumerate(offdiag)}

    def decompose(m):
        out = {}
        running = Fraction(0)
        for i in range(n - 1):
            running += m.get((i, i), 0)
            if running:
                out[i] = running
        for ij, v in m.items():
            if ij[0] != ij[1]:
                out[pos[ij]] = v
        return out

    return _matrix_algebra(AlgebraKind("sl", n=n), labels, mats, range(n - 1), root_of, decompose)


def trace_decompose(L: LieAlgebra, x: Element) -> Tuple[Fraction, Element]:
    """Split ``x`` in ``gl_n`` as ``scalar * I + traceless``."""
    if L.kind.name != "gl":
        raise TypeError("trace decomposition requires a gl_n algebra")
    if x.algebra is not L:
        raise ValueError("element does not belong to this algebra")
    scalar = L.trace(x) / L.kind.n
    return scalar, x - scalar * L.identity_element()


# -- structural validation ------------------------------------------------------------


@dataclass
class StructureReport:
    antisym_ok: bool
    jacobi_ok: bool
    serre_ok: Optional[bool]
    grading_ok: Optional[bool]
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v is not False for v in (self.antisym_ok, self.jacobi_ok, self.serre_ok, self.grading_ok))

    def to_dict(self) -> dict:
        return {
            "antisym_ok": self.antisym_ok,
            "jacobi_ok": self.jacobi_ok,
            "serre_ok": self.serre_ok,
            "grading_ok": self.grading_ok,
            "failures": list(self.failures),
        }


def verify_structure(L: LieAlgebra, max_failures: int = 20) -> StructureReport:
    """Exhaustively check antisymmetry and Jacobi; Serre triples and grading for simple kind."""
    n = L.dim
    failures: List[str] = []

    def fail(msg):
        if len(failures) < max_failures:
            failures.append(msg)

    def br(i, j):
        return dict(L.table[i][j])

    antisym = True
    for i in range(n):
        if br(i, i):
            antisym = False
            fail(f"[e{i}, e{i}] != 0")
        for j in range(i + 1, n):
            a, b = br(i, j), br(j, i)
            if any(a.get(k, 0) + b.get(k, 0) for k in set(a) | set(b)):
                antisym = False
                fail(f"[e{i}, e{j}] != -[e{j}, e{i}]")

    jacobi = True
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                total: Dict[int, Fraction] = {}
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = br(b, c)
                    for m, v in L.bracket_sparse({a: Fraction(1)}, inner).items():
                        total[m] = total.get(m, 0) + v
                if any(total.values()):
                    jacobi = False
                    fail(f"Jacobi fails on ({i}, {j}, {k})")

    serre = grading = None
    if L.kind.name == "simple" and L.rootsystem is not None:
        rs = L.rootsystem
        serre = grading = True
        cartan = set(L.cartan_indices)
        index_of_root = {r: i for i, r in L.root_of.items()}
        for a in L.cartan_indices:
            for b in L.cartan_indices:
                if br(a, b):
                    grading = False
                    fail(f"[h{a}, h{b}] != 0")
        simple = rs.simple_roots
        for x, beta in L.root_of.items():
            for pos, h in enumerate(L.cartan_indices):
                a = simple[pos]
                expected = 2 * dot(beta, a) / dot(a, a)
                got = br(h, x)
                if {k: v for k, v in got.items() if v} != ({x: expected} if expected else {}):
                    grading = False
                    fail(f"[h{pos + 1}, {L.labels[x]}] != beta(h) x")
            y = index_of_root.get(tuple(-c for c in beta))
            if y is None:
                serre = False
                fail(f"no root vector for -{L.labels[x]}")
                continue
            hb = br(x, y)
            if not set(hb) <= cartan:
                serre = False
                fail(f"[{L.labels[x]}, x_-beta] not in the Cartan part")
                continue
            if L.bracket_sparse(hb, {x: Fraction(1)}) != {x: Fraction(2)}:
                serre = False
                fail(f"[h_beta, {L.labels[x]}] != 2 x_beta")
            if L.bracket_sparse(hb, {y: Fraction(1)}) != {y: Fraction(-2)}:
                serre = False
                fail(f"[h_beta, x_-beta] != -2 x_-beta for beta = {L.labels[x]}")
    return StructureReport(antisym, jacobi, serre, grading, failures)
