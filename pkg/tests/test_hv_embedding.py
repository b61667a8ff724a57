import os
import unittest
import shutil
import numpy as np
from hvks.matrix_core import realFunction, tensor, common_generator
from hvks.quantum_state import (SIGMA_X, SIGMA_Y, SIGMA_Z, IDENTITY_2,
                                CHI_UP, random_state, pureState, build_ghz)
from hvks.hv_embedding import (finiteHVModel, observableRegistry,
                               trivial_embedding, generator_embedding,
                               ks1_deviation, check_ks1, ks2_violations,
                               check_ks2, product_rule_violations,
                               check_product_rule, check_sum_rule,
                               classical_expectation)
from hvks.exceptions import (ModelError, SizeError, UnknownId,
                             UndeclaredRelation, RelationError, NotCommuting,
                             DimMismatch)


class testHVEmbedding(unittest.TestCase):

    @classmethod
    def setUpClass(cls):

        cls.scratch_dir = 'scratch'
        if os.path.exists(cls.scratch_dir):
            shutil.rmtree(cls.scratch_dir)
        os.mkdir(cls.scratch_dir)

        rng = np.random.RandomState(42)

        cls.qubit = observableRegistry()
        cls.qubit.add('Z', SIGMA_Z).add('X', SIGMA_X).add('Y', SIGMA_Y)
        cls.qubit_states = dict(('psi%i' % k, random_state(2, rng))
                                for k in range(10))

        z1 = tensor(SIGMA_Z, IDENTITY_2)
        z2 = tensor(IDENTITY_2, SIGMA_Z)
        cls.pair = observableRegistry()
        cls.pair.add('Z1', z1).add('Z2', z2).add('ZZ', np.dot(z1, z2))
        cls.pair.add('Zsum', z1 + z2)
        cls.pair_states = dict(('psi%i' % k, random_state(4, rng))
                               for k in range(10))

        cls.square = realFunction.polynomial([0., 0., 1.], name='square')
        cls.ladder = observableRegistry()
        cls.ladder.add('D', np.diag([0., 1., 2.]))
        cls.ladder.add('D2', np.diag([0., 1., 4.]))
        cls.ladder.declare_relation('D', cls.square, 'D2')
        cls.uniform = pureState(np.ones(3)/np.sqrt(3.))

    @classmethod
    def tearDownClass(cls):

        if os.path.exists(cls.scratch_dir):
            shutil.rmtree(cls.scratch_dir)

    def test_trivial_embedding_ks1(self):

        for registry, states in ((self.qubit, self.qubit_states),
                                 (self.pair, self.pair_states)):
            model = trivial_embedding(registry, states)
            for obs_id in registry.ids:
                for state_id, psi in states.items():
                    self.assertLessEqual(
                        ks1_deviation(model, registry, obs_id, state_id,
                                      psi), 1e-10)
                    self.assertTrue(check_ks1(model, registry, obs_id,
                                              state_id, psi))

    def test_trivial_embedding_shape(self):

        model = trivial_embedding(self.pair, self.pair_states)
        # spectra sizes 2, 2, 2, 3
        self.assertEqual(len(model), 24)
        self.assertEqual(len(model.points[0]), 4)
        with self.assertRaises(SizeError):
            trivial_embedding(self.pair, self.pair_states, max_points=10)
        with self.assertRaises(ValueError):
            trivial_embedding(observableRegistry(), self.pair_states)

    def test_ks2_witness(self):

        model = trivial_embedding(self.ladder, {'u': self.uniform})
        self.assertFalse(check_ks2(model, self.ladder, 'D', 'D2'))
        bad = ks2_violations(model, self.ladder, 'D', 'D2')
        self.assertGreater(len(bad), 0)
        f_d = model.value_map('D')[bad[0]]
        f_d2 = model.value_map('D2')[bad[0]]
        self.assertNotAlmostEqual(f_d2, f_d**2)
        self.assertGreater(model.weights('u')[bad[0]], 0.)

        # KS1 still holds for both observables
        for obs_id in ('D', 'D2'):
            self.assertTrue(check_ks1(model, self.ladder, obs_id, 'u',
                                      self.uniform))

    def test_relations(self):

        with self.assertRaises(UndeclaredRelation):
            self.ladder.relation('D2', 'D')
        with self.assertRaises(RelationError):
            self.ladder.declare_relation('D', realFunction.polynomial([0.,
                                                                       2.]),
                                         'D2')
        # an equivalent function on the spectrum resolves to the declaration
        u = realFunction.from_table([0., 1., 2.], [0., 1., 4.])
        self.assertIs(self.ladder.relation('D', 'D2', u), self.square)
        with self.assertRaises(UnknownId):
            self.ladder.matrix('E')
        with self.assertRaises(DimMismatch):
            self.ladder.add('X', SIGMA_X)

    def test_product_rule(self):

        model = trivial_embedding(self.pair, self.pair_states)
        self.assertFalse(check_product_rule(model, self.pair, 'Z1', 'Z2',
                                            'ZZ'))
        bad = product_rule_violations(model, self.pair, 'Z1', 'Z2', 'ZZ')
        self.assertTrue(np.all(model.support()[bad]))
        self.assertFalse(check_sum_rule(model, self.pair, 'Z1', 'Z2',
                                        'Zsum'))

        ids = ['Z1', 'Z2', 'ZZ', 'Zsum']
        gen_model = generator_embedding(self.pair, ids, self.pair_states)
        self.assertTrue(check_product_rule(gen_model, self.pair, 'Z1', 'Z2',
                                           'ZZ'))
        self.assertTrue(check_sum_rule(gen_model, self.pair, 'Z1', 'Z2',
                                       'Zsum'))
        for obs_id in ids:
            for state_id, psi in self.pair_states.items():
                self.assertTrue(check_ks1(gen_model, self.pair, obs_id,
                                          state_id, psi))

        with self.assertRaises(NotCommuting):
            check_product_rule(model, self.qubit, 'Z', 'X', 'Y')

    def test_perturbed_model_fails_ks1(self):

        psi = self.qubit_states['psi0']
        model = trivial_embedding(self.qubit, {'psi0': psi})
        weights = model.weights('psi0').copy()
        f_z = model.value_map('Z')
        src = int(np.argmax(weights*(f_z > 0)))
        dst = int(np.argmax(f_z < 0))
        shift = min(0.1, weights[src])
        weights[src] -= shift
        weights[dst] += shift
        perturbed = finiteHVModel(model.points, model.values,
                                  {'psi0': weights})
        self.assertFalse(check_ks1(perturbed, self.qubit, 'Z', 'psi0', psi))

    def test_model_invariants(self):

        with self.assertRaises(ModelError):
            finiteHVModel([0, 1], {'A': [1., -1.]}, {'s': [0.5, 0.4]})
        with self.assertRaises(ModelError):
            finiteHVModel([0, 1], {'A': [1.]}, {'s': [0.5, 0.5]})
        with self.assertRaises(ModelError):
            finiteHVModel([0, 1], {'A': [1., -1.]}, {'s': [1.5, -0.5]})

        model = finiteHVModel([0, 1], {'A': [1., -1.]}, {'s': [0.25, 0.75]})
        self.assertAlmostEqual(classical_expectation(model, 'A', 's'), -0.5)
        with self.assertRaises(UnknownId):
            model.value_map('B')

    def test_classical_expectation_examples(self):

        up = pureState(CHI_UP)
        z_only = observableRegistry().add('Z', SIGMA_Z)
        model = trivial_embedding(z_only, {'up': up})
        self.assertEqual(len(model), 2)
        self.assertAlmostEqual(classical_expectation(model, 'Z', 'up'), 1.,
                               places=12)

        x_only = observableRegistry().add('X', SIGMA_X)
        model = trivial_embedding(x_only, {'up': up})
        self.assertAlmostEqual(classical_expectation(model, 'X', 'up'), 0.,
                               places=12)

        ghz = build_ghz()
        q1 = observableRegistry().add('Q1', ghz.Q[0])
        model = trivial_embedding(q1, {'GHZ': ghz.psi})
        self.assertAlmostEqual(classical_expectation(model, 'Q1', 'GHZ'), 1.,
                               places=10)
        self.assertTrue(check_ks1(model, q1, 'Q1', 'GHZ', ghz.psi))
        f_q1 = model.value_map('Q1')
        np.testing.assert_allclose(model.weights('GHZ')[f_q1 > 0], [1.],
                                   atol=1e-10)
        np.testing.assert_allclose(model.weights('GHZ')[f_q1 < 0], [0.],
                                   atol=1e-10)

    def test_product_measure_weights(self):

        registry = observableRegistry().add('Z', SIGMA_Z).add('X', SIGMA_X)
        model = trivial_embedding(registry, {'up': pureState(CHI_UP)})
        self.assertEqual(len(model), 4)
        for point, weight in zip(model.points, model.weights('up')):
            z, x = point
            self.assertIn(round(x), (-1, 1))
            self.assertAlmostEqual(weight, 0.5 if z > 0 else 0., places=12)

    def test_ks2_implies_product_rule(self):

        z1, z2, zz = (self.pair.matrix(obs_id) for obs_id in
                      ('Z1', 'Z2', 'ZZ'))
        generator, us = common_generator([z1, z2, zz])
        registry = observableRegistry()
        registry.add('Z1', z1).add('Z2', z2).add('ZZ', zz)
        registry.add('G', generator)
        for obs_id, u in zip(('Z1', 'Z2', 'ZZ'), us):
            registry.declare_relation('G', u, obs_id)

        ids = ['G', 'Z1', 'Z2', 'ZZ']
        model = generator_embedding(registry, ids, self.pair_states)
        for obs_id in ('Z1', 'Z2', 'ZZ'):
            self.assertTrue(check_ks2(model, registry, 'G', obs_id))
        self.assertTrue(check_product_rule(model, registry, 'Z1', 'Z2',
                                           'ZZ'))
        for state_id, psi in self.pair_states.items():
            self.assertTrue(check_ks1(model, registry, 'G', state_id, psi))

        # the product measure keeps KS1 but loses both
        trivial = trivial_embedding(registry, self.pair_states)
        self.assertFalse(all(check_ks2(trivial, registry, 'G', obs_id)
                             for obs_id in ('Z1', 'Z2', 'ZZ')))
        self.assertFalse(check_product_rule(trivial, registry, 'Z1', 'Z2',
                                            'ZZ'))

    def test_json_round_trip(self):

        model = trivial_embedding(self.ladder, {'u': self.uniform})
        out_path = os.path.join(self.scratch_dir, 'ladder.json')
        model.write_json(out_path)
        loaded = finiteHVModel.load_json(out_path)
        self.assertEqual(loaded.points, model.points)
        np.testing.assert_array_equal(loaded.value_map('D2'),
                                      model.value_map('D2'))
        np.testing.assert_allclose(loaded.weights('u'), model.weights('u'))


if __name__ == '__main__':
    unittest.main()
