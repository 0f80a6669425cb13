"""KL-optimal M-type quantization.

Any distribution generated from m fair bits through a deterministic map
is 2^m-type: every probability is k/2^m.  The quantizer finds the type
vector closest to a target in informational divergence, one unit at a
time, and the enumeration oracle confirms optimality on small inputs.
"""

import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from rescode import brute_force_quantize, kl_divergence, quantize

q = [0.64, 0.16, 0.2]
for m_units in (4, 8, 16, 64):
    t = quantize(q, m_units)
    print(
        f"M={m_units:3d}: counts {[int(c) for c in t.counts]}  "
        f"D = {kl_divergence(t, q):.6f} bits"
    )
print()

t = quantize(q, 8)
oracle = brute_force_quantize(q, 8)
print(f"greedy M=8: {[int(c) for c in t.counts]}, enumeration oracle: {[int(c) for c in oracle.counts]}")
print()

# the allocation always respects counts/M <= q + 1/M, even where the
# unconstrained optimum would not
lop = np.array([0.93, 0.0175, 0.0175, 0.0175, 0.0175])
capped = quantize(lop, 16)
free = brute_force_quantize(lop, 16)
print("lopsided target", [float(x) for x in lop])
print(f"  constrained:   {[int(c) for c in capped.counts]} (respects the +1/M bound)")
print(f"  unconstrained: {[int(c) for c in free.counts]} (puts everything on the mode)")
print()

# with one unit, the best type vector collapses onto the mode
t1 = quantize([0.9, 0.1], 2)
print(f"(0.9, 0.1) at M=2 -> {[int(c) for c in t1.counts]}: D = {kl_divergence(t1, [0.9, 0.1]):.5f} bits")
