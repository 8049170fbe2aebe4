"""Construct states whose partial transpose has the maximal number of
negative eigenvalues, by two independent routes.

Direct route: maximize d subject to rho^G <= I - d P over density
matrices; any feasible point with d > 1 forces (m-1)(n-1) negative
partial-transpose eigenvalues.

Dual-cone route: compute c = max Tr(P sigma) over PPT states sigma, form
X = I - (1/c) P (which lies in the dual cone of the PPT states), split it
as X1 + X2^G with both parts positive semidefinite, and normalize X2.
"""

import numpy as np

from nptsub import (
    BipartiteDims,
    build_subspace,
    construct_via_dual_cone,
    count_negative_eigenvalues,
    partial_transpose,
    solve_construction_sdp,
    subspace_projector,
)

for m, n in [(2, 2), (3, 3), (3, 4)]:
    dims = BipartiteDims(m, n)
    P = subspace_projector(build_subspace(dims))
    target = dims.npt_dim
    print(f"=== ({m}, {n}): target count {target} ===")

    sol = solve_construction_sdp(dims, P)
    count, negs = count_negative_eigenvalues(partial_transpose(sol.rho.mat, dims))
    print(f"direct    : d = {sol.d:.6f} "
          f"(certified gap {sol.upper_bound - sol.lower_bound:.1e}), "
          f"negatives = {count}")
    print(f"            {np.round(negs, 5)}")

    dec = construct_via_dual_cone(dims, P)
    count, negs = count_negative_eigenvalues(partial_transpose(dec.rho.mat, dims))
    print(f"dual cone : c = {dec.c:.6f}, split residual = {dec.residual:.1e}, "
          f"negatives = {count}")
    print(f"            {np.round(negs, 5)}")

    # the dual-cone output is itself feasible for the direct program at
    # d = 1 + (1/c - 1)/Tr(X2), so the direct optimum must dominate it
    bound = 1.0 + (1.0 / dec.c - 1.0) / np.trace(dec.X2).real
    print(f"cross-check: optimal d = {sol.d:.6f} >= dual-cone bound {bound:.6f}\n")

# At (2, 2) everything is known in closed form: the optimum of the direct
# program is d = 3/2 at the maximally entangled state, and c = 1/2.
dims = BipartiteDims(2, 2)
sol = solve_construction_sdp(dims, subspace_projector(build_subspace(dims)))
phi = np.zeros(4, dtype=complex)
phi[0] = phi[3] = 1 / np.sqrt(2)
overlap = float((phi.conj() @ sol.rho.mat @ phi).real)
print(f"(2, 2) closed form: d = {sol.d:.6f} (= 3/2), "
      f"overlap with maximally entangled = {overlap:.6f}")
