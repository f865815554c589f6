"""Derivation algebras: every derivation of a simple algebra is inner; gl_n has one more."""

from exactlie.algebra import build_gl, build_simple
from exactlie.derivations import LinearMap, derivation_space, is_inner, verify_inner_lemma
from exactlie.roots import RootSystemType, generate

for family, rank in [("A", 1), ("A", 2), ("B", 2), ("G", 2), ("D", 4)]:
    L = build_simple(generate(RootSystemType(family, rank)))
    space = derivation_space(L)
    print(f"{L}: dim L = {L.dim}, dim Der = {space.dim}, all inner: {verify_inner_lemma(L, space)}")

for n in (2, 3):
    L = build_gl(n)
    maps = derivation_space(L).maps()
    outer = [D for D in maps if is_inner(L, D) is None]
    print(f"gl_{n}: dim Der = {len(maps)}, basis derivations that are not ad(x): {len(outer)}")

# The outer one is x -> tr(x) I.
L = build_gl(2)
tr = L.trace_covector()
D = LinearMap(L, [{k: tr[j] * v for k, v in L.identity_element().coeffs.items()} for j in range(L.dim)])
print("x -> tr(x) I on gl_2 is inner:", is_inner(L, D) is not None)
