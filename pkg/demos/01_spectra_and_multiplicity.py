"""Spectra as crude multiplicity functions.

Walks through the Cmf container, the Hausdorff distance of supports and
the Lévy-Prokhorov distance, and shows where multiplicity matters.
Run with ``python demos/01_spectra_and_multiplicity.py``.
"""

import numpy as np

from opdist.cmf import Cmf, cmf_from_hermitian, embedded_cmf, supports
from opdist.cmf_distances import acute_delta, hausdorff, lp_delta, pointwise_radius
from opdist.op_distances import d_uni_cmf, d_uni_hermitian

# Two Hermitian matrices with the same eigenvalue set but different multiplicities
A = np.diag([0.0, 0.0, 1.0])
B = np.diag([0.0, 1.0, 1.0])
a, b = cmf_from_hermitian(A), cmf_from_hermitian(B)
print("Cmf of A:", a.to_dict())
print("Cmf of B:", b.to_dict())

# The supports coincide, so the Hausdorff distance cannot tell them apart
print("Hausdorff distance of spectra:", hausdorff(supports(a)[2], supports(b)[2]))

# The Lévy-Prokhorov distance has to move one unit of mass from 0 to 1
print("Lévy-Prokhorov distance:", lp_delta(a, b))
print("unitary distance (sorted eigenvalues):", d_uni_hermitian(A, B))

# Essential parts: multiplication operators on [1, 2] and [-2, 1]
e1 = Cmf.make(essential=[(1, 2)])
e2 = Cmf.make(essential=[(-2, 1)])
print("\nessential [1,2] vs [-2,1]")
print("  one-sided quantities:", acute_delta(e1, e2), acute_delta(e2, e1))
print("  d_uni:", d_uni_cmf(e1, e2))

# Embedding into a bigger space adjoins 0 to the essential spectrum
e3 = Cmf.make(essential=[(0, 0), (1, 2)])
print("\n[1,2] vs {0} u [1,2]: d_uni =", d_uni_cmf(e1, e3))
print("after an infinite co-dimension embedding:", d_uni_cmf(embedded_cmf(e1, float("inf")), e3))

# Pointwise comparison is weaker than comparing intervals
p1 = Cmf.make({2: 2, 4: 2})
p2 = Cmf.make({1: 1, 3: 1, 5: 1, 6: 1})
print("\npointwise radius:", pointwise_radius(p1, p2))
print("interval-based quantity:", acute_delta(p1, p2))
