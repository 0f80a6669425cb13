"""Distributions and divergence functionals.

Walks through the basic objects: probability vectors, exact M-type
distributions, entropy, informational divergence, variational distance,
and the TV-to-KL bound.
"""

import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from rescode import (
    Pmf,
    TypedPmf,
    entropy,
    kl_divergence,
    kl_tv_bound,
    min_type_order,
    variational_distance,
)

p = Pmf([0.211, 0.789])
print(f"target distribution: {[float(x) for x in p.probs]}")
print(f"entropy:             {entropy(p):.6f} bits")
print(f"smallest atom mu:    {p.mu()}")
print()

# An M-type distribution stores integer counts; probabilities are exact.
t = TypedPmf(8, [5, 1, 2])
print(f"8-type counts {[int(c) for c in t.counts]} -> probs {[float(x) for x in t.probs()]}")
print(f"minimal type order: {min_type_order(t)}  (counts (4,4)/8 would reduce to 2)")
print()

q = [0.64, 0.16, 0.2]
print(f"divergence D(counts/8 || {q}) = {kl_divergence(t, q):.6f} bits")
print(f"variational distance          = {variational_distance(t.probs(), q):.6f}")
print()

# When supp(p) stays inside supp(q) and TV < 1, a small variational
# distance forces a small divergence; the bound is in nats.
bound = kl_tv_bound(t.probs(), q)
kl_nats = kl_divergence(t, q) * math.log(2)
print(f"TV->KL bound: {bound:.6f} nats >= measured {kl_nats:.6f} nats")
