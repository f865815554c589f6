"""Chevalley bases: exact structure constants and their validation."""

from collections import Counter

from exactlie.algebra import LieAlgebra, bracket, build_gl, build_simple, verify_structure
from exactlie.roots import RootSystemType, generate

L = build_simple(generate(RootSystemType("A", 1)))
h, x, y = (L.basis(i) for i in range(3))
print("A1 basis:", [str(lb) for lb in L.labels])
print("[h, x] =", bracket(L, h, x), " [h, y] =", bracket(L, h, y), " [x, y] =", bracket(L, x, y))

# In G2 the root strings have length up to 4, so constants +-1, +-2, +-3 appear.
G = build_simple(generate(RootSystemType("G", 2)))
sizes = Counter(
    int(abs(c))
    for (i, j), vec in G.structure.items()
    if i in G.root_of and j in G.root_of
    for c in vec.values()
    if len(vec) == 1 and i not in G.cartan_indices
)
print("\nG2: dimension", G.dim, "| sizes of root-root constants:", dict(sorted(sizes.items())))
print("G2 structure check:", verify_structure(G).to_dict())

gl3 = build_gl(3)
print("\ngl_3 check:", {k: v for k, v in verify_structure(gl3).to_dict().items() if k != "failures"})

# The JSON exchange format round-trips exactly; flipping one sign breaks Jacobi.
doc = build_simple(generate(RootSystemType("A", 2))).to_dict()
doc["structure"][-1][3] = str(-int(doc["structure"][-1][3]))
broken = verify_structure(LieAlgebra.from_dict(doc))
print("\ncorrupted A2: jacobi_ok =", broken.jacobi_ok, "| first failures:", broken.failures[:3])
