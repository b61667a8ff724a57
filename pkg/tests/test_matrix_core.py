import unittest
import numpy as np
from hvks.matrix_core import (realFunction, jacobi_eigh, eigendecompose,
                              apply_function, pushforward_check, commutes,
                              common_generator, tensor, random_hermitian,
                              max_norm, is_hermitian)
from hvks.exceptions import (NotHermitian, NoConvergence, DomainError,
                             DimMismatch, NotCommuting)
from hvks.quantum_state import SIGMA_X, SIGMA_Y, SIGMA_Z, IDENTITY_2


class testMatrixCore(unittest.TestCase):

    @classmethod
    def setUpClass(cls):

        # 200 inputs across dims 2-8, half of them with degenerate integer
        # spectra
        rng = np.random.RandomState(42)
        cls.corpus = []
        for k in range(200):
            dim = 2 + k % 7
            if k % 2 == 0:
                cls.corpus.append(random_hermitian(dim, rng))
            else:
                spectrum = rng.randint(-2, 3, size=dim)
                cls.corpus.append(random_hermitian(dim, rng,
                                                   spectrum=spectrum))

        cls.square = realFunction.polynomial([0., 0., 1.])
        cls.shift = realFunction.polynomial([1., 1.])
        cls.cube = realFunction.from_callable(lambda x: x**3, name='cube')

    def test_jacobi_matches_numpy(self):

        for a in self.corpus:
            lams, vecs = jacobi_eigh(a)
            np.testing.assert_allclose(np.sort(lams), np.linalg.eigvalsh(a),
                                       atol=1e-9)
            np.testing.assert_allclose(np.dot(vecs.conj().T, vecs),
                                       np.eye(len(a)), atol=1e-10)
            np.testing.assert_allclose(np.dot(vecs * lams, vecs.conj().T),
                                       a, atol=1e-9)

    def test_jacobi_sweep_budget(self):

        a = random_hermitian(4, np.random.RandomState(7))
        with self.assertRaises(NoConvergence):
            jacobi_eigh(a, max_sweeps=0)

    def test_spectral_measure_properties(self):

        for a in self.corpus:
            e = eigendecompose(a)
            self.assertEqual(e.validate(source=a), [])
            self.assertTrue(np.all(np.diff(e.eigenvalues) > 1e-8))
            np.testing.assert_allclose(e.reconstruct(), a, atol=1e-10)

    def test_examples(self):

        e = eigendecompose(SIGMA_Z)
        np.testing.assert_array_almost_equal(e.eigenvalues, [-1., 1.])
        np.testing.assert_allclose(e.projector(-1.), np.diag([0., 1.]),
                                   atol=1e-12)
        np.testing.assert_allclose(e.projector(1.), np.diag([1., 0.]),
                                   atol=1e-12)

        e = eigendecompose(np.diag([1., 1., 2.]))
        self.assertEqual(len(e), 2)
        np.testing.assert_allclose(e.projector(1.), np.diag([1., 1., 0.]),
                                   atol=1e-12)

        with self.assertRaises(NotHermitian):
            eigendecompose(np.array([[0., 1.], [0., 0.]]))
        with self.assertRaises(DimMismatch):
            eigendecompose(np.ones((2, 3)))
        with self.assertRaises(DomainError):
            e.projector(3.)

    def test_functional_calculus_homomorphism(self):

        for a in self.corpus[:100]:
            e = eigendecompose(a)
            sq = apply_function(e, self.square)
            sh = apply_function(e, self.shift)
            np.testing.assert_allclose(apply_function(e,
                                                      self.square*self.shift),
                                       np.dot(sq, sh), atol=1e-8)
            np.testing.assert_allclose(apply_function(e,
                                                      self.square+self.shift),
                                       sq + sh, atol=1e-8)
            np.testing.assert_allclose(sq, np.dot(a, a), atol=1e-8)
            np.testing.assert_allclose(
                apply_function(e, realFunction.identity()), a, atol=1e-9)

    def test_pushforward_check(self):

        for a in self.corpus:
            e = eigendecompose(a)
            for u in (self.square, self.shift, self.cube):
                self.assertTrue(pushforward_check(e, u))

        # a constant function collapses the whole spectrum
        e = eigendecompose(self.corpus[1])
        self.assertTrue(pushforward_check(e, realFunction.polynomial([2.])))

    def test_spectral_mapping(self):

        for a in self.corpus[:100]:
            e = eigendecompose(a)
            for u in (self.square, self.shift, self.cube):
                images = np.sort(u.map(e.eigenvalues))
                merged = [images[0]]
                for mu in images[1:]:
                    if mu - merged[-1] > 1e-8:
                        merged.append(mu)
                spectrum = eigendecompose(apply_function(e, u)).eigenvalues
                np.testing.assert_allclose(spectrum, merged, atol=1e-7)

        # square folds -1 and 1 together
        e = eigendecompose(np.diag([-1., 0., 1.]))
        np.testing.assert_allclose(
            eigendecompose(apply_function(e, self.square)).eigenvalues,
            [0., 1.], atol=1e-12)

    def test_table_function(self):

        e = eigendecompose(np.diag([0., 1., 2.]))
        u = realFunction.from_table([0., 1., 2.], [5., 5., 7.])
        np.testing.assert_allclose(apply_function(e, u),
                                   np.diag([5., 5., 7.]), atol=1e-12)
        self.assertTrue(pushforward_check(e, u))

        short = realFunction.from_table([0., 1.], [0., 1.])
        with self.assertRaises(DomainError):
            apply_function(e, short)
        with self.assertRaises(ValueError):
            realFunction.from_table([0., 1.], [0.])

    def test_tensor(self):

        xz = tensor(SIGMA_X, SIGMA_Z)
        expected = np.array([[0, 0, 1, 0],
                             [0, 0, 0, -1],
                             [1, 0, 0, 0],
                             [0, -1, 0, 0]], dtype=complex)
        np.testing.assert_array_equal(xz, expected)
        self.assertTrue(is_hermitian(tensor(SIGMA_Y, SIGMA_Y)))

    def test_commutes(self):

        self.assertTrue(commutes(SIGMA_Z, IDENTITY_2))
        self.assertFalse(commutes(SIGMA_X, SIGMA_Z))
        self.assertTrue(commutes(tensor(SIGMA_X, SIGMA_X),
                                 tensor(SIGMA_Z, SIGMA_Z)))
        with self.assertRaises(DimMismatch):
            commutes(SIGMA_X, np.eye(4))

    def test_common_generator(self):

        z1 = tensor(SIGMA_Z, IDENTITY_2)
        z2 = tensor(IDENTITY_2, SIGMA_Z)
        ops = [z1, z2, np.dot(z1, z2)]
        a, us = common_generator(ops)

        e = eigendecompose(a)
        self.assertEqual(len(e), 4)
        for op, u in zip(ops, us):
            self.assertLess(max_norm(apply_function(e, u) - op), 1e-10)

        # a commuting family with a degenerate joint eigenspace
        xx = tensor(SIGMA_X, SIGMA_X)
        zz = tensor(SIGMA_Z, SIGMA_Z)
        a, us = common_generator([xx, zz])
        e = eigendecompose(a)
        for op, u in zip([xx, zz], us):
            self.assertLess(max_norm(apply_function(e, u) - op), 1e-10)

        # factors of A1 B2 B3 on three sites
        ops = [tensor(tensor(SIGMA_X, IDENTITY_2), IDENTITY_2),
               tensor(tensor(IDENTITY_2, SIGMA_Y), IDENTITY_2),
               tensor(tensor(IDENTITY_2, IDENTITY_2), SIGMA_Y)]
        a, us = common_generator(ops)
        e = eigendecompose(a)
        self.assertEqual(len(e), 8)
        for p in e.projectors:
            self.assertAlmostEqual(np.trace(p).real, 1., places=10)
        for op, u in zip(ops, us):
            self.assertLess(max_norm(apply_function(e, u) - op), 1e-10)

        with self.assertRaises(NotCommuting):
            common_generator([SIGMA_X, SIGMA_Z])
        with self.assertRaises(NotHermitian):
            common_generator([np.array([[0., 1.], [0., 0.]])])

    def test_random_hermitian_spectrum(self):

        rng = np.random.RandomState(3)
        a = random_hermitian(5, rng, spectrum=[0, 0, 1, 1, 1])
        np.testing.assert_allclose(np.linalg.eigvalsh(a), [0, 0, 1, 1, 1],
                                   atol=1e-12)


if __name__ == '__main__':
    unittest.main()
