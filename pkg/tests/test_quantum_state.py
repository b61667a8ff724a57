import unittest
import numpy as np
from functools import reduce
from hvks.matrix_core import (eigendecompose, apply_function, realFunction,
                              random_hermitian, max_norm)
from hvks.quantum_state import (SIGMA_X, SIGMA_Y, SIGMA_Z, CHI_UP, CHI_DOWN,
                                pureState, bornDistribution, ghzSystem,
                                site_operator, random_state,
                                born_distribution, expectation, build_ghz,
                                verify_operator_identity)
from hvks.exceptions import (NotNormalized, DimMismatch, NotHermitian,
                             SiteOutOfRange)


class testQuantumState(unittest.TestCase):

    @classmethod
    def setUpClass(cls):

        cls.up = pureState(CHI_UP, name='up')
        cls.plus = pureState.normalized(CHI_UP + CHI_DOWN, name='plus')
        cls.ghz = build_ghz()

    def test_born_examples(self):

        w = born_distribution(self.up, eigendecompose(SIGMA_Z))
        self.assertAlmostEqual(w.probability(1.), 1., places=12)
        self.assertAlmostEqual(w.probability(-1.), 0., places=12)
        self.assertAlmostEqual(w.mean(), 1., places=12)

        w = born_distribution(self.up, eigendecompose(SIGMA_X))
        np.testing.assert_allclose(w.probabilities, [0.5, 0.5], atol=1e-12)

        w = born_distribution(self.plus, eigendecompose(SIGMA_X))
        self.assertAlmostEqual(w.probability(1.), 1., places=12)

    def test_born_rejects_mismatch(self):

        with self.assertRaises(DimMismatch):
            born_distribution(self.up, eigendecompose(np.eye(4)))

    def test_pushforward_of_born(self):

        # Born distribution of u(A) is the push-forward of that of A
        rng = np.random.RandomState(42)
        polys = [realFunction.polynomial([0., 0., 1.]),
                 realFunction.polynomial([1., -2.]),
                 realFunction.polynomial([0., 1., 0., -1.]),
                 realFunction.polynomial([3.])]
        count = 0
        for dim in (2, 3, 4, 8):
            for k in range(13 if dim != 8 else 11):
                spectrum = rng.randint(-2, 3, size=dim)
                a = random_hermitian(dim, rng, spectrum=spectrum)
                psi = random_state(dim, rng)
                u = polys[k % len(polys)]
                e = eigendecompose(a)
                direct = born_distribution(psi,
                                           eigendecompose(apply_function(e,
                                                                         u)))
                pushed = born_distribution(psi, e).pushforward(u)
                self.assertTrue(direct.allclose(pushed, tol=1e-10))
                count += 1
        self.assertEqual(count, 50)

    def test_expectation(self):

        self.assertAlmostEqual(expectation(self.up, SIGMA_Z), 1., places=12)
        self.assertAlmostEqual(expectation(self.plus, SIGMA_Z), 0.,
                               places=12)
        with self.assertRaises(NotHermitian):
            expectation(self.up, np.array([[0., 1.], [0., 0.]]))
        with self.assertRaises(DimMismatch):
            expectation(self.up, np.eye(3))

    def test_states(self):

        with self.assertRaises(NotNormalized):
            pureState([1., 1.])
        with self.assertRaises(NotNormalized):
            pureState.normalized([0., 0.])

        phased = pureState(np.exp(0.3j)*self.plus.amplitudes)
        self.assertTrue(phased.same_ray(self.plus))
        self.assertFalse(self.up.same_ray(self.plus))
        self.assertEqual(random_state(5, np.random.RandomState(1)).dim, 5)

    def test_born_distribution_invariants(self):

        with self.assertRaises(ValueError):
            bornDistribution([(0., 0.5), (1., 0.4)])
        with self.assertRaises(ValueError):
            bornDistribution([(0., 1.1), (1., -0.1)])
        w = bornDistribution([(1., 0.25), (-1., 0.75)])
        np.testing.assert_array_equal(w.eigenvalues, [-1., 1.])
        merged = w.pushforward(realFunction.polynomial([0., 0., 1.]))
        self.assertEqual(len(merged.atoms), 1)
        self.assertAlmostEqual(merged.probability(1.), 1.)

    def test_site_operator(self):

        a2 = site_operator(SIGMA_X, 2, 3)
        expected = reduce(np.kron, [np.eye(2), SIGMA_X, np.eye(2)])
        np.testing.assert_array_equal(a2, expected)
        with self.assertRaises(SiteOutOfRange):
            site_operator(SIGMA_X, 4, 3)
        with self.assertRaises(SiteOutOfRange):
            site_operator(SIGMA_X, 0, 3)

    def test_ghz_strict_correlations(self):

        for q in self.ghz.Q:
            self.assertLessEqual(abs(expectation(self.ghz.psi, q) - 1.),
                                 1e-12)
        self.assertEqual(self.ghz.check_invariants(), [])

    def test_ghz_operator_identity(self):

        # all entries lie in {0, +-1, +-i} so the identity is exact
        self.assertEqual(max_norm(self.ghz.q_product() +
                                  self.ghz.a_product()), 0.)
        self.assertTrue(verify_operator_identity(self.ghz, tol=0.))
        self.assertLessEqual(abs(expectation(self.ghz.psi,
                                             self.ghz.a_product()) + 1.),
                             1e-12)

    def test_ghz_q1_matches_factors(self):

        q1 = reduce(np.dot, [site_operator(SIGMA_X, 1, 3),
                             site_operator(SIGMA_Y, 2, 3),
                             site_operator(SIGMA_Y, 3, 3)])
        np.testing.assert_array_equal(self.ghz.Q[0], q1)

    def test_ghz_invariant_failures(self):

        q = [m.copy() for m in self.ghz.Q]
        q[2][0, 7] += 0.1
        broken = ghzSystem(self.ghz.A, self.ghz.B, q, self.ghz.psi)
        failures = broken.check_invariants()
        self.assertIn("Q3 is not Hermitian", failures)

        up3 = pureState(reduce(np.kron, [CHI_UP]*3))
        wrong_state = ghzSystem(self.ghz.A, self.ghz.B, self.ghz.Q, up3)
        self.assertIn("Q1 psi != psi", wrong_state.check_invariants())


if __name__ == '__main__':
    unittest.main()
