"""
Scoring multi-label predictions
===============================

Five set-based measures over binary indicator matrices: exact-match
subset accuracy, per-instance Jaccard and Dice, and two F flavors (per
label averaged, and pooled over all label decisions).
"""

import numpy as np

from divsel.metrics import multilabel_metrics

# truth rows {a},{a,b}; predictions {a,b},{b}
truth = np.array([[1, 0], [1, 1]])
pred = np.array([[1, 1], [0, 1]])

for name, val in multilabel_metrics(truth, pred).items():
    print(f"{name:18s} {val:.4f}")

# degrading a perfect prediction one bit at a time
rng = np.random.default_rng(5)
t = rng.integers(0, 2, size=(30, 6))
p = t.copy()
print("\nflips  subset  example_f  pooled_f")
for flips in (0, 5, 20, 60):
    q = p.copy()
    idx = rng.choice(q.size, size=flips, replace=False)
    q.flat[idx] = 1 - q.flat[idx]
    m = multilabel_metrics(t, q)
    print(f"{flips:5d}  {m['subset_accuracy']:.4f}  {m['example_f']:9.4f}  {m['pooled_f']:8.4f}")
