"""Weidmann and quasi-unitary convergence of discretised resolvents.

The Dirichlet Laplacian on (0, 1) is discretised by finite differences
on a fine grid (the "limit") and on coarser grids. Piecewise-constant
interpolation, normalised to be isometric, identifies each coarse
space with the fine one. Both defect sequences are printed; their ratio
stays within the constant 3.
Run with ``python demos/03_resolvent_convergence.py``.
"""

import numpy as np

from opdist.convergence import OperatorSequence, equivalence_check


def resolvent(k, z0=-1.0):
    """(-Δ_h - z0)^(-1) for k interior points, orthonormal coordinates."""
    h = 1.0 / (k + 1)
    L = (2 * np.eye(k) - np.eye(k, k=1) - np.eye(k, k=-1)) / h ** 2
    return np.linalg.inv(L - z0 * np.eye(k))


def interpolation(k, m):
    """Isometric piecewise-constant injection C^k -> C^m (k divides m)."""
    r = m // k
    return np.kron(np.eye(k), np.ones((r, 1)) / np.sqrt(r))


m = 240
ks = [4, 8, 12, 16, 24, 30, 40, 48, 60, 80, 120]
seq = OperatorSequence([resolvent(k) for k in ks], resolvent(m),
                       [interpolation(k, m) for k in ks])
rep = equivalence_check(seq)

print(f"{'k':>4} {'weidmann':>10} {'que':>10} {'ratio':>7}")
for k, w, q in zip(ks, rep.weidmann_defects, rep.que_defects):
    print(f"{k:4d} {w:10.3e} {q:10.3e} {w / q:7.3f}")
print("\nverdicts:")
for name, v in rep.verdicts.items():
    print(" ", name, v)
