import numpy as np
import pytest

from nptsub import (
    BipartiteDims,
    DensityMatrix,
    Ensemble,
    antidiag_sums,
    build_subspace,
    contains,
    ensemble_from_density,
    errors,
    locate_witness,
    partial_transpose,
    range_in_subspace,
    realign,
    sample_mixture_in_subspace,
    subspace_projector,
)

D22 = BipartiteDims(2, 2)
D33 = BipartiteDims(3, 3)
D34 = BipartiteDims(3, 4)


def unit(v):
    return v / np.linalg.norm(v)


def singlet_ensemble():
    v = unit(np.array([0, 1, -1, 0], dtype=complex))
    return Ensemble(D22, np.array([1.0]), v[:, None])


class TestBuildSubspace:
    def test_2x2_generator(self):
        basis = build_subspace(D22)
        assert basis.dim == 1
        assert np.array_equal(basis.generators[:, 0], [0, 1, -1, 0])

    def test_3x4_dimension(self):
        assert build_subspace(D34).dim == 6

    def test_degenerate(self):
        assert build_subspace(BipartiteDims(4, 1)).dim == 0
        assert build_subspace(BipartiteDims(1, 1)).dim == 0

    def test_generator_formula(self):
        m, n = 3, 3
        basis = build_subspace(D33)
        col = 0
        for j in range(m - 1):
            for k in range(n - 1):
                expected = np.zeros(9, dtype=complex)
                expected[j * n + k + 1] = 1.0
                expected[(j + 1) * n + k] = -1.0
                assert np.array_equal(basis.generators[:, col], expected)
                col += 1

    def test_orthonormal_gram(self):
        Q = build_subspace(D34).orthonormal
        assert np.linalg.norm(Q.conj().T @ Q - np.eye(6)) <= 1e-12

    def test_span_reconstruction(self):
        basis = build_subspace(D34)
        Q = basis.orthonormal
        for col in basis.generators.T:
            resid = col - Q @ (Q.conj().T @ col)
            assert np.linalg.norm(resid) <= 1e-10

    def test_generator_rank(self):
        gens = build_subspace(D34).generators
        gram = gens.conj().T @ gens
        assert np.sum(np.linalg.eigvalsh(gram) > 1e-9) == 6


class TestProjector:
    def test_2x2_exact(self):
        P = subspace_projector(build_subspace(D22)).P
        expected = np.zeros((4, 4), dtype=complex)
        expected[1, 1] = expected[2, 2] = 0.5
        expected[1, 2] = expected[2, 1] = -0.5
        assert np.allclose(P, expected, atol=1e-14)

    def test_trace(self):
        P = subspace_projector(build_subspace(D34)).P
        assert np.trace(P).real == pytest.approx(6.0, abs=1e-9)

    def test_idempotent_hermitian(self):
        P = subspace_projector(build_subspace(D34)).P
        assert np.linalg.norm(P @ P - P) <= 1e-10
        assert np.abs(P - P.conj().T).max() <= 1e-12

    def test_fixes_generators(self):
        basis = build_subspace(D34)
        P = subspace_projector(basis).P
        for g in basis.generators.T:
            assert np.linalg.norm(P @ g - g) <= 1e-10


class TestContains:
    def test_generators_contained(self):
        basis = build_subspace(D34)
        for g in basis.generators.T:
            assert contains(basis, g)

    def test_product_state_not_contained(self):
        # realigning |00> gives a single 1 on an anti-diagonal, so it
        # cannot be in S; (I - P)|00> is nonzero
        basis = build_subspace(D22)
        e00 = np.array([1, 0, 0, 0], dtype=complex)
        Q = basis.orthonormal
        assert np.linalg.norm(e00 - Q @ (Q.conj().T @ e00)) > 0.9
        assert not contains(basis, e00)

    def test_mixture_range_contained(self):
        basis = build_subspace(D34)
        rng = np.random.Generator(np.random.PCG64(12))
        ens = sample_mixture_in_subspace(basis, rank=3, rng=rng)
        assert range_in_subspace(basis, ens.to_density_matrix())

    def test_range_not_contained(self):
        basis = build_subspace(D22)
        rho = DensityMatrix(D22, np.eye(4, dtype=complex) / 4)
        assert not range_in_subspace(basis, rho)


class TestAntidiagSums:
    def test_generator_image(self):
        assert np.array_equal(
            antidiag_sums(np.array([[0, -1], [1, 0]])), np.zeros(3)
        )

    def test_identity(self):
        assert np.array_equal(antidiag_sums(np.eye(2)), [1.0, 0.0, 1.0])

    def test_realigned_members_sum_to_zero(self):
        dims = BipartiteDims(4, 5)
        basis = build_subspace(dims)
        rng = np.random.Generator(np.random.PCG64(3))
        for _ in range(100):
            coeff = rng.standard_normal(basis.dim) + 1j * rng.standard_normal(basis.dim)
            v = basis.orthonormal @ coeff
            sums = antidiag_sums(realign(v, dims))
            assert sums.shape == (8,)
            assert np.abs(sums).max() <= 1e-10

    def test_no_single_entry_antidiagonal(self):
        # anti-diagonals of realigned members have 0 or >= 2 nonzero entries
        dims = BipartiteDims(3, 4)
        basis = build_subspace(dims)
        rng = np.random.Generator(np.random.PCG64(4))
        for _ in range(100):
            v = unit(basis.orthonormal @ (rng.standard_normal(6) + 1j * rng.standard_normal(6)))
            M = realign(v, dims)
            for t in range(M.shape[0] + M.shape[1] - 1):
                entries = [
                    abs(M[r, t - r])
                    for r in range(max(0, t - M.shape[1] + 1), min(M.shape[0], t + 1))
                ]
                big = sum(e > 1e-8 for e in entries)
                small = sum(e < 1e-12 for e in entries)
                assert not (big == 1 and small == len(entries) - 1)


class TestWitness:
    def test_singlet_certificate(self):
        cert = locate_witness(singlet_ensemble())
        assert cert.alpha == (0, 0)
        assert cert.beta == (1, 1)
        assert cert.flat_indices(D22) == (0, 3)
        assert cert.antidiag_index == 1
        expected = np.array([[0, -0.5], [-0.5, 0]], dtype=complex)
        assert np.allclose(cert.submatrix, expected, atol=1e-14)
        assert cert.determinant == pytest.approx(-0.25, abs=1e-12)
        assert cert.mixture_sum == pytest.approx(-0.5, abs=1e-12)

    def test_generator_embedded_in_larger_space(self):
        # the 2x2 pattern recurs for the first generator of any (m, n)
        for dims in (D33, D34, BipartiteDims(4, 5)):
            basis = build_subspace(dims)
            v = unit(basis.generators[:, 0])
            ens = Ensemble(dims, np.array([1.0]), v[:, None])
            cert = locate_witness(ens, basis)
            assert cert.alpha == (0, 0)
            assert cert.beta == (1, 1)
            assert cert.determinant == pytest.approx(-0.25, abs=1e-12)

    def test_cancelling_pair_skips_to_next_position(self):
        # engineered so the first candidate pairing on anti-diagonal t*=2
        # washes out and the search must take the next entry:
        # v1 has coefficients 1, -1, 0 down that anti-diagonal, v2 has
        # 1, 1, -2 (over sqrt 6); with p = (1/4, 3/4) the pairing with the
        # middle entry sums to -1/8 + 1/8 = 0, the pairing with the last
        # gives -1/4
        v1 = np.zeros(9, dtype=complex)
        v1[2 * 3 + 0] = 1.0
        v1[1 * 3 + 1] = -1.0
        v1 /= np.sqrt(2)
        v2 = np.zeros(9, dtype=complex)
        v2[2 * 3 + 0] = 1.0
        v2[1 * 3 + 1] = 1.0
        v2[0 * 3 + 2] = -2.0
        v2 /= np.sqrt(6)
        ens = Ensemble(D33, np.array([0.25, 0.75]), np.stack([v1, v2], axis=1))
        cert = locate_witness(ens)
        assert cert.antidiag_index == 2
        assert cert.alpha == (0, 0)
        assert cert.beta == (2, 2)  # skipped the cancelled (1, 1) pairing
        assert cert.mixture_sum == pytest.approx(-0.25, abs=1e-12)
        assert cert.determinant == pytest.approx(-1.0 / 16.0, abs=1e-12)
        # the certificate agrees with the directly computed partial transpose
        rho_pt = partial_transpose(ens.to_density_matrix().mat, D33)
        ai, bi = cert.flat_indices(D33)
        assert ai == 0 and bi == 8
        direct = rho_pt[np.ix_([ai, bi], [ai, bi])]
        assert np.allclose(direct, cert.submatrix, atol=1e-14)

    def test_two_component_mixture_hand_computed(self):
        # p = (1/2, 1/2) over the (0,0) and (1,1) generators of (3,3):
        # first nonzero anti-diagonal is t*=1 with entries from v1 only,
        # giving alpha=|0,0>, beta=|1,1>, mixture sum -1/4, det -1/16
        basis = build_subspace(D33)
        v1 = unit(basis.generators[:, 0])
        v2 = unit(basis.generators[:, 3])
        ens = Ensemble(D33, np.array([0.5, 0.5]), np.stack([v1, v2], axis=1))
        cert = locate_witness(ens, basis)
        assert cert.alpha == (0, 0)
        assert cert.beta == (1, 1)
        assert cert.flat_indices(D33) == (0, 4)
        assert cert.mixture_sum == pytest.approx(-0.25, abs=1e-12)
        assert cert.determinant == pytest.approx(-1.0 / 16.0, abs=1e-12)

    def test_from_density_matrix(self):
        rho = singlet_ensemble().to_density_matrix()
        cert = locate_witness(rho)
        assert cert.flat_indices(D22) == (0, 3)
        assert cert.determinant == pytest.approx(-0.25, abs=1e-12)

    def test_determinant_identity_random_mixtures(self):
        basis = build_subspace(D34)
        for i in range(200):
            rng = np.random.Generator(np.random.PCG64(100 + i))
            ens = sample_mixture_in_subspace(basis, rank=3, rng=rng)
            cert = locate_witness(ens, basis)
            assert cert.determinant < 0
            assert abs(cert.determinant + abs(cert.mixture_sum) ** 2) <= 1e-10
            # cross-check the submatrix against the directly computed PT
            rho_pt = partial_transpose(ens.to_density_matrix().mat, D34)
            ai, bi = cert.flat_indices(D34)
            direct = rho_pt[np.ix_([ai, bi], [ai, bi])]
            assert np.allclose(direct, cert.submatrix, atol=1e-14)

    def test_interlacing(self):
        basis = build_subspace(D34)
        rng = np.random.Generator(np.random.PCG64(77))
        ens = sample_mixture_in_subspace(basis, rank=4, rng=rng)
        cert = locate_witness(ens, basis)
        low = np.linalg.eigvalsh(cert.submatrix)[0]
        pt_min = np.linalg.eigvalsh(partial_transpose(ens.to_density_matrix().mat, D34))[0]
        assert low < 0
        assert pt_min <= low + 1e-10

    def test_rejects_outside_subspace(self):
        e00 = np.zeros((4, 1), dtype=complex)
        e00[0, 0] = 1.0
        ens = Ensemble(D22, np.array([1.0]), e00)
        with pytest.raises(errors.NotInSubspace):
            locate_witness(ens)

    def test_rejects_density_outside_subspace(self):
        rho = DensityMatrix(D22, np.diag([1.0, 0, 0, 0]).astype(complex))
        with pytest.raises(errors.NotInSubspace):
            locate_witness(rho)

    def test_zero_dimensional_subspace(self):
        dims = BipartiteDims(1, 4)
        basis = build_subspace(dims)
        v = np.zeros((4, 1), dtype=complex)
        v[0, 0] = 1.0
        with pytest.raises(errors.NotInSubspace):
            locate_witness(Ensemble(dims, np.array([1.0]), v), basis)

    def test_deterministic(self):
        basis = build_subspace(D34)
        rng = np.random.Generator(np.random.PCG64(5))
        ens = sample_mixture_in_subspace(basis, rank=3, rng=rng)
        c1 = locate_witness(ens, basis)
        c2 = locate_witness(ens, basis)
        assert c1.alpha == c2.alpha and c1.beta == c2.beta
        assert c1.determinant == c2.determinant


class TestEnsembleFromDensity:
    def test_spectral_weights(self):
        basis = build_subspace(D34)
        rng = np.random.Generator(np.random.PCG64(9))
        rho = sample_mixture_in_subspace(basis, rank=3, rng=rng).to_density_matrix()
        ens = ensemble_from_density(rho)
        assert ens.probs.sum() == pytest.approx(1.0, abs=1e-12)
        rebuilt = ens.to_density_matrix()
        assert np.linalg.norm(rebuilt.mat - rho.mat) <= 1e-10


class TestSampling:
    def test_npt_property(self):
        # every mixture supported on S is NPT
        for dims in (D22, D33, D34):
            basis = build_subspace(dims)
            for i in range(50):
                rng = np.random.Generator(np.random.PCG64(1000 + i))
                ens = sample_mixture_in_subspace(basis, rank=min(3, basis.dim), rng=rng)
                rho = ens.to_density_matrix()
                w = np.linalg.eigvalsh(partial_transpose(rho.mat, dims))
                assert w[0] < -1e-12 * w[-1]

    def test_single_dimension_sample(self):
        basis = build_subspace(D22)
        rng = np.random.Generator(np.random.PCG64(0))
        ens = sample_mixture_in_subspace(basis, rank=1, rng=rng)
        # the only unit vectors in the 1-d subspace are phases of the
        # normalized generator, so the state is the generator projector
        g = unit(basis.generators[:, 0])
        assert np.allclose(
            ens.to_density_matrix().mat, np.outer(g, g.conj()), atol=1e-12
        )
