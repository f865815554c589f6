"""Root systems: coordinates, simple roots, Cartan matrices and connectedness."""

import time

from exactlie.linalg import format_rational
from exactlie.roots import RootSystemType, cartan_matrix, connected, generate, root_string, verify_all_connected


def show(v):
    return "(" + ", ".join(format_rational(x) for x in v) + ")"


# Every type is generated from its coordinate description.  The base is
# picked by a regular linear functional; simple roots are the positive roots
# that are not sums of two positive roots.
for family, rank in [("A", 2), ("B", 2), ("G", 2), ("F", 4)]:
    rs = generate(RootSystemType(family, rank))
    print(f"{rs}: {len(rs)} roots in dimension {rs.ambient_dim}")
    print("  simple roots:", ", ".join(show(r) for r in rs.simple_roots))
    print("  Cartan matrix:", [[int(x) for x in row] for row in cartan_matrix(rs).to_dense()])

# Connectedness: a chain of roots joining a to b, each consecutive sum being a root or zero.
d4 = generate(RootSystemType("D", 4))
a, b = (1, -1, 0, 0), (0, 0, 1, -1)
print("\nD4 chain from", show(a), "to", show(b), "via", [show(g) for g in connected(d4, a, b)])

a2 = generate(RootSystemType("A", 2))
print("A2 root string of (1,-1,0) through (1,0,-1):", root_string(a2, (1, -1, 0), (1, 0, -1)))

for family, rank in [("E", 6), ("E", 7), ("E", 8)]:
    start = time.perf_counter()
    rs = generate(RootSystemType(family, rank))
    ok, _ = verify_all_connected(rs)
    print(f"{rs}: {len(rs)} roots, all pairs connected: {ok} ({time.perf_counter() - start:.2f} s)")
