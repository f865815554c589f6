"""Biderivations of simple algebras: the solution space is one-dimensional and inner."""

import time

from exactlie import biderivations as bd
from exactlie.algebra import build_simple
from exactlie.derivations import LinearMap
from exactlie.roots import RootSystemType, generate

for family, rank in [("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3)]:
    L = build_simple(generate(RootSystemType(family, rank)))
    start = time.perf_counter()
    space = bd.biderivation_space(L)
    elapsed = time.perf_counter() - start
    (f,) = space.maps()
    lam = bd.decompose_inner(L, f)
    pair = bd.extract_phi_psi(L, f)
    scalar = pair.phi == pair.psi == LinearMap.scalar(L, lam)
    print(
        f"{L}: {space.space.ambient_dim} unknowns, {space.space.constraint_rows} distinct equations, "
        f"dim = {space.dim}, f = {lam} [.,.], phi = psi = lambda id: {scalar}, "
        f"Cartan-stable: {bd.cartan_stability(L, pair)} ({elapsed:.2f} s)"
    )
