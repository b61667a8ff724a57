import unittest
import numpy as np
from hvks.operator_expr import (PauliAtom, Identity, ScalarMul, Product, Sum,
                                parse, evaluate, pretty_print,
                                build_operator)
from hvks.quantum_state import SIGMA_X, SIGMA_Y, SIGMA_Z, build_ghz
from hvks.exceptions import ExpressionSyntaxError, SiteOutOfRange


def _random_factor(rng, depth):

    kind = rng.randint(0, 4 if depth > 0 else 3)
    if kind == 0:
        return '%g' % rng.uniform(0., 5.)
    elif kind == 1:
        return 'I'
    elif kind == 2:
        return 's%s(%i)' % ('xyz'[rng.randint(0, 3)], rng.randint(1, 4))
    return '(%s)' % _random_expr(rng, depth - 1)


def _random_expr(rng, depth=2):

    out = '-' if rng.uniform() < 0.3 else ''
    for k in range(rng.randint(1, 4)):
        if k > 0:
            out += ' + ' if rng.uniform() < 0.5 else ' - '
        out += '*'.join(_random_factor(rng, depth)
                        for _ in range(rng.randint(1, 4)))
    return out


class testOperatorExpr(unittest.TestCase):

    @classmethod
    def setUpClass(cls):

        cls.ghz = build_ghz()

        rng = np.random.RandomState(42)
        handmade = ['sx(1)*sy(2)*sy(3)', 'I', '2*sz(1) - sz(2)',
                    '-sx(1)', '-(sx(1) + sy(2))', 'sx(1) - (-sz(3))',
                    '(sx(1)*sy(2))*sz(3)', '0.5*(I + sz(1))',
                    '1e-3*sx(2) + 2.5', 'sx(1) + (sy(1) + sz(1))',
                    '-I', '-1', '(2)*(sx(3))', 'sz(1)*(-sz(2))*sx(3)']
        cls.corpus = handmade + [_random_expr(rng)
                                 for k in range(50 - len(handmade))]

    def test_ghz_observables(self):

        q1 = parse('sx(1)*sy(2)*sy(3)', 3)
        self.assertEqual(q1, Product((PauliAtom('x', 1), PauliAtom('y', 2),
                                      PauliAtom('y', 3))))
        np.testing.assert_array_equal(evaluate(q1, 3), self.ghz.Q[0])
        np.testing.assert_array_equal(evaluate(parse('sx(1)', 3), 3),
                                      self.ghz.A[0])
        np.testing.assert_array_equal(build_operator('sy(1)*sx(2)*sy(3)', 3),
                                      self.ghz.Q[1])
        np.testing.assert_array_equal(build_operator('sy(1)*sy(2)*sx(3)', 3),
                                      self.ghz.Q[2])
        for j in (1, 2, 3):
            np.testing.assert_array_equal(
                build_operator('sy(%i)' % j, 3), self.ghz.B[j - 1])

    def test_identity(self):

        self.assertEqual(parse('I', 2), Identity())
        np.testing.assert_array_equal(evaluate(Identity(), 2), np.eye(4))

    def test_products_on_one_site(self):

        np.testing.assert_array_equal(build_operator('sx(1)*sx(1)', 1),
                                      np.eye(2))
        np.testing.assert_array_equal(build_operator('sx(1)*sy(1)', 1),
                                      1j*SIGMA_Z)

    def test_sums_and_scalars(self):

        expr = parse('2*sz(1) - sz(2)', 2)
        self.assertEqual(expr, Sum((Product((ScalarMul(2., Identity()),
                                             PauliAtom('z', 1))),
                                    ScalarMul(-1., PauliAtom('z', 2)))))
        expected = 2.*np.kron(SIGMA_Z, np.eye(2)) - np.kron(np.eye(2),
                                                            SIGMA_Z)
        np.testing.assert_allclose(evaluate(expr, 2), expected)
        np.testing.assert_allclose(build_operator('0.5*(I + sz(1))', 1),
                                   np.diag([1., 0.]))
        np.testing.assert_allclose(build_operator(' sx ( 1 ) + sy(1) ', 1),
                                   SIGMA_X + SIGMA_Y)

    def test_site_range(self):

        with self.assertRaises(SiteOutOfRange):
            parse('sx(4)', 3)
        with self.assertRaises(SiteOutOfRange):
            parse('sx(1) + sz(0)', 3)
        with self.assertRaises(ValueError):
            parse('I', 0)

    def test_syntax_errors(self):

        with self.assertRaises(ExpressionSyntaxError) as ctx:
            parse('sx(1) $ sy(2)', 3)
        self.assertEqual(ctx.exception.line, 1)
        self.assertEqual(ctx.exception.column, 7)

        with self.assertRaises(ExpressionSyntaxError) as ctx:
            parse('sx(1) +', 3)
        self.assertEqual(ctx.exception.line, 1)
        self.assertGreaterEqual(ctx.exception.column, 1)

        with self.assertRaises(ExpressionSyntaxError) as ctx:
            parse('sx(1)\n* sw(2)', 3)
        self.assertEqual(ctx.exception.line, 2)

        for bad in ['', 'sx()', 'sx(1.5)', 'sx(1) sy(2)', '(sx(1)', '+I']:
            with self.assertRaises(ExpressionSyntaxError):
                parse(bad, 3)

    def test_round_trip(self):

        self.assertEqual(len(self.corpus), 50)
        for source in self.corpus:
            expr = parse(source, 3)
            text = pretty_print(expr)
            self.assertEqual(parse(text, 3), expr, msg=text)
            np.testing.assert_allclose(evaluate(parse(text, 3), 3),
                                       evaluate(expr, 3))

    def test_pretty_print_examples(self):

        self.assertEqual(pretty_print(parse('sx(1)*sy(2)*sy(3)', 3)),
                         'sx(1)*sy(2)*sy(3)')
        self.assertEqual(pretty_print(parse('-sx(1)+2*sz(2)', 3)),
                         '-sx(1) + 2.0*sz(2)')
        self.assertEqual(pretty_print(parse('-(sx(1) - sy(2))', 3)),
                         '-(sx(1) - sy(2))')


if __name__ == '__main__':
    unittest.main()
