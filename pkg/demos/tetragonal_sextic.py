"""Tetragonal curves of genus 7 and 6: which surface carries them, and every g^1_4 it produces."""
from gonalis.curvein import canonical_ideal
from gonalis.fixtures import bielliptic_genus6, load_curve
from gonalis.tetragonal import tetragonal_report

sextic = load_curve("sextic3nodes")
print("plane sextic with nodes at", [":".join(str(c) for c in s.point) for s in sextic.singularities])

C = canonical_ideal(sextic)
cls, pencils = tetragonal_report(C, seed=3)
print("class:", cls.variant, " beta_2,4 =", cls.beta24)
print("surface Betti row:", cls.surface_betti)
for gm in pencils:
    print(f"  degree {gm.gonality} pencil {gm.num} / {gm.den}")
print(len(pencils), "pencils, one per node")

# A bielliptic curve lies on a cone over an elliptic curve instead of a del Pezzo surface.
B = bielliptic_genus6(0)
cls, pencils = tetragonal_report(B, seed=3)
print("bielliptic genus 6:", cls.to_json())
for gm in pencils:
    print("  pencil certificate:", gm.certificate)
