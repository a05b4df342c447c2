"""A genus-10 curve with a 5-fold point: its Betti table, the gonal map read off a syzygy,
and the same scroll seen through its Lie algebra of symmetries."""
import time

from gonalis.curvein import map_degree
from gonalis.fixtures import load_curve
from gonalis.lie import lie_report
from gonalis.scrollar import goneric_pipeline, strand_data

C = load_curve("genus10_canonical")
print(f"canonical curve of genus {C.genus} cut by {len(C.ideal)} quadrics in P^{C.genus - 1}")

t0 = time.time()
data = strand_data(C)
print(f"linear strand computed in {time.time() - t0:.0f}s")
print(data.betti_table().pretty())
print("linear colength:", data.colength)

# One scrollar syzygy gives a rational normal curve of them; any point on it yields the scroll.
gm = goneric_pipeline(C, seed=1, data=data)
print("gonality:", gm.gonality, " certificate:", gm.certificate)
print("pencil:", gm.num, "/", gm.den)
print("degree of the pencil, recomputed:", map_degree(C.ideal, gm.num, gm.den, 2 * C.genus - 2))

phi = gm.scroll.phi
print(f"scroll matrix is 2 x {phi.ncols}, scroll degree {gm.scroll.degree}")

report = lie_report(gm.scroll.minor_ideal, phi.ring, seed=1)
print("symmetry algebra dimension:", report["lie_dim"])
print("sl2 module dimensions:", report["module_dims"])
print("structure map from weights:", report["map"])
