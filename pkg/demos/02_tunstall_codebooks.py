"""Tunstall codebooks and the balance guarantee.

Growing the tree by always splitting the heaviest leaf keeps the leaf
probabilities within a factor 1/mu of each other, where mu is the
smallest branch probability.  That balance is what lets a uniform input
be matched to the leaves with a small divergence later on.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from rescode import Pmf, build_tunstall, check_balance

p = Pmf([0.8, 0.2])

print("growing a codebook for p = (0.8, 0.2):")
for n in (3, 4, 5):
    ld = build_tunstall(p, n)
    paths = ["".join(map(str, x)) for x in ld.codebook.leaves]
    print(f"  N={n}: leaves {paths}, probs {[round(float(v), 4) for v in ld.leaf_probs]}")
print()

ld = build_tunstall(p, 5)
rep = check_balance(ld, p.mu())
print(f"balance at N=5: max/min = {rep.ratio:.3f} <= 1/mu = {1 / p.mu():.3f} -> ok={rep.ok}")
print(f"  min leaf {rep.min_prob:.4f} >= mu/N = {p.mu() / 5:.4f}")
print(f"  max leaf {rep.max_prob:.4f} <= 1/(N mu) = {1 / (5 * p.mu()):.4f}")
print()

# the experiment-scale codebook: 3072 codewords for a skewed binary source
target = Pmf([0.211, 0.789])
big = build_tunstall(target, 3072)
rep = check_balance(big, target.mu())
print(f"N=3072 for p=(0.211, 0.789):")
print(f"  expected codeword length {big.expected_len:.3f} symbols")
print(f"  depth range {min(len(x) for x in big.codebook.leaves)}..{big.codebook.max_len()}")
print(f"  balance ratio {rep.ratio:.3f} (bound {1 / target.mu():.3f}), ok={rep.ok}")
