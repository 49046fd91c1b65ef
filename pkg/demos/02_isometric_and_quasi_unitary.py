"""Isometric and quasi-unitary distances between different spaces.

Searches embeddings and identification operators numerically and
compares them with the closed forms available for multiples of the
identity. Run with ``python demos/02_isometric_and_quasi_unitary.py``.
"""

import math

import numpy as np

from opdist.embeddings import EmbeddingPair, difference_operator, nagy_embedding, zero_extension
from opdist.linalg_core import operator_norm
from opdist.op_distances import (
    SearchConfig,
    d_iso_scalar,
    d_iso_upper,
    d_que_scalar,
    d_que_upper,
    delta_J,
    inequality_report,
)

# --- multiples of the identity -------------------------------------------
print(f"{'r1':>5} {'r2':>5} {'d_iso':>8} {'closed':>8} {'d_que':>8} {'closed':>8}")
for r1, r2 in [(1, -1), (1, 0), (3, 1), (11, -10), (0.5, 0.5)]:
    iso = d_iso_upper([[r1]], [[r2]]).value
    que = d_que_upper([[r1]], [[r2]]).value
    print(f"{r1:5} {r2:5} {iso:8.5f} {d_iso_scalar(r1, r2):8.5f} "
          f"{que:8.5f} {d_que_scalar(r1, r2):8.5f}")

ratio = d_iso_scalar(1, 0) / d_que_scalar(1, 0)
print(f"\nratio d_iso/d_que at (1, 0): {ratio:.15f}  (sqrt2 = {math.sqrt(2):.15f})")

# --- different dimensions ------------------------------------------------
R1 = np.diag([-1.0, -2.0])
R2 = np.diag([-1.0, -2.0, 100.0])
pair = EmbeddingPair(zero_extension(2, 3), np.eye(3))
print("\n|D| of the zero extension:", operator_norm(difference_operator(pair, R1, R2)))
rep = inequality_report(R1, R2, SearchConfig(restarts=2))
print("spectral Hausdorff distance:", rep.d_haus_spec)
print("d_iso in", (rep.d_iso_lower, rep.d_iso_upper))
print("d_que in", (rep.d_que_lower, rep.d_que_upper))
for v in rep.chain_verdicts:
    print(f"  {v.status:>15}  {v.name}")

# --- a contraction and its dilation --------------------------------------
rng = np.random.default_rng(7)
J = 0.9 * np.linalg.qr(rng.normal(size=(3, 2)))[0]
A = np.diag([1.0, 2.0])
B = J @ A @ J.T + 0.05 * np.eye(3)
d = delta_J(A, B, J)
D = operator_norm(difference_operator(nagy_embedding(J), A, B))
print(f"\ndelta_J = {d:.4f}, |D(nagy J)| = {D:.4f}, sqrt3 delta_J = {math.sqrt(3) * d:.4f}")
