"""Linear commuting maps: ``phi`` with ``[phi(x), x] = 0`` for every ``x``.

Over a field of characteristic zero this quadratic condition is equivalent
to its polarization ``[phi(x), y] + [phi(y), x] = 0``, which is linear in
``phi`` and is what the solver imposes on basis pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import LieAlgebra
from .derivations import LinearMap
from .linalg import RationalMatrix, SolutionSpace, assemble_rows, nullspace


class NotCommutingError(ValueError):
    pass


@dataclass(frozen=True)
class CommutingSpace:
    algebra: LieAlgebra
    space: SolutionSpace

    @property
    def dim(self) -> int:
        return self.space.dim

    def maps(self) -> List[LinearMap]:
        return [LinearMap.from_vector(self.algebra, v) for v in self.space.basis]


def commuting_constraints(L: LieAlgebra) -> RationalMatrix:
    """Rows of ``[phi(e_i), e_j] + [phi(e_j), e_i] = 0`` for ``i <= j``."""
    n = L.dim
    table, _ = L.integer_table()

    def rows():
        for i in range(n):
            for j in range(i, n):
                acc: Dict[int, Dict[int, int]] = {}
                for m in range(n):
                    for d, c in table[m][j]:
                        r = acc.setdefault(d, {})
                        r[i * n + m] = r.get(i * n + m, 0) + c
                    for d, c in table[m][i]:
                        r = acc.setdefault(d, {})
                        r[j * n + m] = r.get(j * n + m, 0) + c
                yield from acc.values()

    return assemble_rows(rows(), n * n)


def commuting_space(L: LieAlgebra) -> CommutingSpace:
    return CommutingSpace(L, nullspace(commuting_constraints(L)))


def is_commuting(L: LieAlgebra, phi: LinearMap) -> bool:
    """Polarized condition checked directly on every basis pair ``i <= j``."""
    n = L.dim
    one = Fraction(1)
    for i in range(n):
        for j in range(i, n):
            a = L.bracket_sparse(phi.columns[i], {j: one})
            b = L.bracket_sparse(phi.columns[j], {i: one})
            for k in set(a) | set(b):
                if a.get(k, 0) + b.get(k, 0):
                    return False
    return True


def random_elements(L: LieAlgebra, count: int = 1000, seed: int = 0) -> List[Dict[int, Fraction]]:
    """Seeded rational vectors with coordinates ``p/q``, ``|p| <= 9``, ``1 <= q <= 9``."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        x = {}
        for i in range(L.dim):
            p = rng.randint(-9, 9)
            if p:
                x[i] = Fraction(p, rng.randint(1, 9))
        out.append(x)
    return out


def commutes_on(L: LieAlgebra, phi: LinearMap, samples: Sequence[Dict[int, Fraction]]) -> bool:
    """The original condition ``[phi(x), x] = 0`` on each sample ``x``."""
    return all(not L.bracket_sparse(phi.apply_sparse(x), x) for x in samples)


def _require_commuting(L: LieAlgebra, phi: LinearMap):
    if phi.algebra is not L:
        raise ValueError("map does not belong to this algebra")
    if not is_commuting(L, phi):
        raise NotCommutingError("map is not commuting")


def decompose_simple(L: LieAlgebra, phi: LinearMap) -> Optional[Fraction]:
    """The ``lam`` with ``phi = lam * id``, or ``None``."""
    _require_commuting(L, phi)
    lam = phi.columns[0].get(0, Fraction(0)) if L.dim else Fraction(0)
    return lam if phi == LinearMap.scalar(L, lam) else None


def decompose_gl(phi: LinearMap) -> Optional[Tuple[List[Fraction], Fraction]]:
    """``(sigma, lam)`` with ``phi(x) = sigma(x) I + lam x`` on ``gl_n``, or ``None``.

    ``sigma`` is a covector on the matrix-unit basis.
    """
    L = phi.algebra
    if L.kind.name != "gl":
        raise TypeError("decompose_gl requires a map on gl_n")
    _require_commuting(L, phi)
    n = L.kind.n
    # E_12 is off the diagonal, so sigma(E_12) I contributes nothing at E_12
    lam = phi.columns[1].get(1, Fraction(0))
    sigma = [phi.columns[j].get(0, Fraction(0)) - (lam if j == 0 else 0) for j in range(L.dim)]
    return (sigma, lam) if phi == reconstruct_gl(L, sigma, lam) else None


def reconstruct_gl(L: LieAlgebra, sigma: Sequence, lam) -> LinearMap:
    """The map ``x -> sigma(x) I + lam x``."""
    n = L.kind.n
    diag = [i * n + i for i in range(n)]
    cols = []
    for j in range(L.dim):
        col = {d: Fraction(sigma[j]) for d in diag}
        col[j] = col.get(j, 0) + Fraction(lam)
        cols.append(col)
    return LinearMap(L, cols)


def sigma_as_trace(L: LieAlgebra, sigma: Sequence) -> Tuple[Fraction, List[Fraction]]:
    """Write ``sigma = c * tr + rest`` with ``rest`` vanishing at ``E_11``."""
    tr = L.trace_covector()
    c = Fraction(sigma[0])
    return c, [Fraction(s) - c * t for s, t in zip(sigma, tr)]
