"""Biderivations of gl_n: a trace term on top of the inner ones."""

from exactlie import biderivations as bd
from exactlie.algebra import build_gl

for n in (2, 3):
    L = build_gl(n)
    space = bd.biderivation_space(L)
    print(f"gl_{n}: dim = {space.dim}")
    for f in space.maps():
        mu, lam = bd.decompose_gl(f)
        kind = "skew" if bd.is_skew(f) else "symmetric" if bd.is_symmetric(f) else "neither"
        print(f"  f = {mu} tr(x)tr(y) I + {lam} [x, y]  ({kind})")
    skew = bd.skew_subspace(space)
    print(f"  skew-symmetric part: dimension {skew.dim}")

# The symmetric one has no phi with f(x, y) = [phi(x), y]: brackets with I vanish, f(I, I) does not.
L = build_gl(2)
t = bd.trace_biderivation(L)
print("\nphi/psi for tr(x)tr(y) I:", bd.extract_phi_psi(L, t))
print("both identities hold for it:", bd.check_identity_four(L, t), bd.check_identity_eight(L, t))
