"""Verify the bundled 3x4 state and probe the negative-eigenvalue cap.

The bundled fixture is a 12 x 12 density matrix (entries are integers
over 34) whose partial transpose has six negative eigenvalues, the
maximum possible at (m, n) = (3, 4).  Random states never exceed the
(m-1)(n-1) cap, and generic ones land well below it.
"""

from collections import Counter

import numpy as np

from nptsub import (
    count_negative_eigenvalues,
    partial_transpose,
    random_density_matrix,
)
from nptsub.cli import load_matrix, paper_fixture_path, verify_matrix

# ---------------------------------------------------------------------
# The bundled fixture
# ---------------------------------------------------------------------
mat, dims, meta = load_matrix(paper_fixture_path())
print(f"fixture: {dims.m} x {dims.n}, checksum {meta['checksum_sha256'][:16]}...")

report = verify_matrix(mat, dims)
print(f"hermitian = {report.is_hermitian}, psd = {report.is_psd}, "
      f"trace = {report.trace:.12f}")
print(f"partial-transpose negatives: {report.negative_count} "
      f"(cap {dims.npt_dim})")
print("they come in pairs:", np.round(report.negative_eigenvalues, 6))

# ---------------------------------------------------------------------
# Random states: the cap holds, but is rarely saturated by chance
# ---------------------------------------------------------------------
counts = Counter()
trials = 500
for seed in range(trials):
    rho = random_density_matrix(dims, rank=dims.total, seed=seed)
    count, _ = count_negative_eigenvalues(partial_transpose(rho.mat, dims))
    counts[count] += 1

print(f"\nnegative counts over {trials} random full-rank states at (3, 4):")
for count in sorted(counts):
    bar = "#" * (60 * counts[count] // trials)
    print(f"  {count}: {counts[count]:4d} {bar}")
print(f"cap (m-1)(n-1) = {dims.npt_dim} never exceeded; "
      "saturating it takes the dedicated constructions")

# low-rank states push the count higher than generic full-rank ones
print("\nsame experiment at rank 3:")
counts = Counter()
for seed in range(trials):
    rho = random_density_matrix(dims, rank=3, seed=seed)
    count, _ = count_negative_eigenvalues(partial_transpose(rho.mat, dims))
    counts[count] += 1
for count in sorted(counts):
    print(f"  {count}: {counts[count]:4d}")
