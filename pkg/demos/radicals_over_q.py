"""Inverting a degree-4 pencil of lines by radicals, then checking the formulas numerically."""
import json

from gonalis.fixtures import load_curve
from gonalis.radical import radparam

P = load_curve("sextic3nodes")
out = radparam(P, seed=0, samples=12, precision=80)

print("pencil:", out["map"], " through", out["center"])
print("gonality bounds from the plane model:", out["gonality_bounds"])
print("radical tower, innermost first:")
for step in out["tower"]:
    print("  ", json.dumps(step)[:110])
print("validation:", out["validation"])

hyper = load_curve("hyperelliptic_g3")
out = radparam(hyper, seed=0)
print("hyperelliptic genus 3: y =", json.dumps(out["y"])[:110])
print("validated:", out["validation"])
