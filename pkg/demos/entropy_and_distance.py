"""
Entropy, mutual information, and the NVI distance
=================================================

The building blocks everything else sits on: plug-in entropy from a
contingency table, and the normalized variation of information
d(u, v) = 1 - I(u, v) / H(u, v), a metric on discrete columns.
"""

import numpy as np

from divsel.info import entropy, joint_entropy, mutual_information, normalized_mi, nvi_distance

a = np.array([0, 0, 1, 1])
b = np.array([0, 0, 0, 1])

print("H(a)      =", entropy(a))
print("H(b)      =", entropy(b))
print("H(a,b)    =", joint_entropy(a, b))
print("I(a;b)    =", mutual_information(a, b))
print("NMI(a,b)  =", normalized_mi(a, b))
print("d(a,b)    =", nvi_distance(a, b))

# the distance only sees the partition a column induces, so any relabeling
# (here: the complement) is at distance exactly zero
print("d(a, 1-a) =", nvi_distance(a, 1 - a))

# symmetry is exact, not merely within floating-point noise
rng = np.random.default_rng(0)
u = rng.integers(0, 3, size=50)
v = rng.integers(0, 4, size=50)
print("d(u,v) == d(v,u):", nvi_distance(u, v) == nvi_distance(v, u))
