"""Linear commuting maps: scalars on simple algebras, sigma(x) I + lambda x on gl_n."""

from exactlie.algebra import build_gl, build_simple
from exactlie.commuting import commutes_on, commuting_space, decompose_gl, decompose_simple, random_elements, sigma_as_trace
from exactlie.linalg import format_rational
from exactlie.roots import RootSystemType, generate

for family, rank in [("A", 2), ("B", 2), ("G", 2)]:
    L = build_simple(generate(RootSystemType(family, rank)))
    space = commuting_space(L)
    print(f"{L}: dim = {space.dim}, scalars: {[decompose_simple(L, p) for p in space.maps()]}")

L = build_gl(2)
space = commuting_space(L)
samples = random_elements(L, 200, seed=0)
print(f"\ngl_2: dim = {space.dim}")
for phi in space.maps():
    sigma, lam = decompose_gl(phi)
    c, rest = sigma_as_trace(L, sigma)
    print(
        f"  sigma = {[format_rational(s) for s in sigma]} = {c} tr + {[format_rational(r) for r in rest]}, "
        f"lambda = {lam}, [phi(x), x] = 0 on samples: {commutes_on(L, phi, samples)}"
    )
