"""
Command line surface.

    hvks ghz-verify [--tol T] [--json]
    hvks trivial-embed --spec FILE [--state-index K] [--json] [--out FILE]
    hvks sphere-verify [--pairs N] [--method quadrature|montecarlo]
                       [--n NODES] [--seed S] [--json]
    hvks search --constraints FILE [--json] [--expect-satisfying K]

Exit codes: 0 success, 1 verification outcome contrary to expectation,
2 usage or input error. Reports go to stdout, diagnostics to stderr.
"""
import argparse
import logging
import sys
import numpy as np
from scipy.spatial.transform import Rotation
from .num_params import numParams
from .exceptions import hvksError, PremiseFailure
from .matrix_core import (eigendecompose, random_hermitian, realFunction,
                          apply_function)
from .quantum_state import random_state, born_distribution, expectation
from .hv_embedding import (trivial_embedding, ks1_deviation,
                           ks2_violations as model_ks2_violations,
                           product_rule_violations, sum_rule_violations)
from .ghz_contradiction import run_ks_theorem, exhaustive_search
from .sphere_model import (sphere_observable_from_matrix, density_from_state,
                           sphereObservable, sphereDensity, ks1_probability,
                           sphere_expectation, density_normalization,
                           ks2_violations, random_sphere_points,
                           equator_points)
from .registry_file import load_registry_spec, load_constraint_spec
from .report import verificationReport

__all__ = ["main", "build_parser", "ghz_verify", "trivial_embed",
           "sphere_verify", "search"]

logger = logging.getLogger(__name__)
_params = numParams()

EXIT_OK = 0
EXIT_CONTRARY = 1
EXIT_USAGE = 2


def _emit(report, as_json):

    if as_json:
        print(report.to_json())
    else:
        print(report.render())

    return


def ghz_verify(args):
    """Run the GHZ argument; succeed iff every premise holds and no
    assignment survives."""
    report = verificationReport('GHZ contradiction')
    try:
        result = run_ks_theorem(args.tol)
    except PremiseFailure as err:
        logger.error(str(err))
        report.add_check(err.premise, True, False, args.tol, False)
        _emit(report, args.json)
        return EXIT_CONTRARY

    report.add_records(result.premises)
    report.add_check('searched assignments', 64,
                     result.assignments_searched, 0,
                     result.assignments_searched == 64)
    report.add_check('satisfying assignments', 0,
                     result.satisfying_assignments, 0, result.contradiction)
    report.extra = result.to_dict()

    if args.json:
        print(report.to_json())
    else:
        print(result.render())
        print(report.render(max_lines=5))

    return EXIT_OK if report.passed else EXIT_CONTRARY


def _finding(name, bad, model):

    witness = None
    if len(bad) > 0:
        witness = model.points[bad[0]]
        if isinstance(witness, tuple):
            witness = list(witness)
    return {"name": name, "holds": len(bad) == 0, "violations": len(bad),
            "witness": witness}


def trivial_embed(args):
    """
    Build the product-measure embedding of a registry spec file. KS1 must
    hold for every (observable, state) pair; functional relations and the
    product and sum rules are reported as findings.
    """
    spec = load_registry_spec(args.spec, args.tol)
    states = spec.states
    if args.state_index is not None:
        if not 0 <= args.state_index < len(states):
            raise IndexError("State index %i is outside 0..%i." %
                             (args.state_index, len(states) - 1))
        states = [states[args.state_index]]
    if not states:
        raise hvksError("The registry file declares no states.")
    registry = spec.registry

    model = trivial_embedding(registry, dict(states))
    if args.out is not None:
        model.write_json(args.out)
        logger.info("Wrote model to %s", args.out)

    report = verificationReport('Trivial embedding of %s' % args.spec)
    for obs_id in registry.ids:
        for state_id, psi in states:
            dev = ks1_deviation(model, registry, obs_id, state_id, psi)
            report.add_check('KS1 %s in %s' % (obs_id, state_id), 0., dev,
                             args.tol, dev <= args.tol)

    findings = []
    for source, u, target in registry.relations:
        bad = model_ks2_violations(model, registry, source, target, u)
        findings.append(_finding('KS2 %s = %r(%s)' % (target, u, source),
                                 bad, model))
    for id1, id2, out in spec.products:
        bad = product_rule_violations(model, registry, id1, id2, out,
                                      args.tol)
        findings.append(_finding('product rule %s = %s %s' %
                                 (out, id1, id2), bad, model))
    for id1, id2, out in spec.sums:
        bad = sum_rule_violations(model, registry, id1, id2, out, args.tol)
        findings.append(_finding('sum rule %s = %s + %s' % (out, id1, id2),
                                 bad, model))

    report.extra = {"points": len(model), "findings": findings}
    for f in findings:
        report.add_note("%s: %s" % (f["name"], 'holds' if f["holds"] else
                                    'fails at %i points, e.g. %s' %
                                    (f["violations"], f["witness"])))
    _emit(report, args.json)

    return EXIT_OK if report.passed else EXIT_CONTRARY


def _rotate(obs, dens, rot):

    axis = rot.apply(obs.axis)
    bloch = rot.apply(dens.bloch)
    return (sphereObservable(obs.lambda1, obs.lambda2,
                             axis/np.linalg.norm(axis)),
            sphereDensity(bloch/np.linalg.norm(bloch)))


def sphere_verify(args):
    """
    Verify the sphere model on random (observable, state) pairs: KS1 and
    expectation values against the Born rule, density normalization,
    rotational covariance and pointwise KS2 including equator points.
    """
    seed = args.seed
    if seed is None:
        seed = int(np.random.randint(0, 2**31 - 1))
    rng = np.random.RandomState(seed)
    n = args.n
    report = verificationReport('Sphere model (%s)' % args.method, seed=seed)
    ks1_tol = 1.e-6

    pairs = []
    for k in range(args.pairs):
        a = random_hermitian(2, rng)
        psi = random_state(2, rng)
        pairs.append((a, psi))

    mc_within = 0
    for k, (a, psi) in enumerate(pairs):
        obs = sphere_observable_from_matrix(a, args.tol)
        dens = density_from_state(psi)
        born = born_distribution(psi, eigendecompose(a, args.tol))
        target = born.probability(obs.lambda1)
        p, err = ks1_probability(obs, dens, args.method, n,
                                 seed=int(rng.randint(0, 2**31 - 1)))
        if args.method == 'quadrature':
            report.add_check('KS1 pair %i' % k, target, p, ks1_tol,
                             abs(p - target) <= ks1_tol)
        elif abs(p - target) <= 3.*err:
            mc_within += 1

        quantum = expectation(psi, a, args.tol)
        classical = sphere_expectation(obs, dens)
        scale = max(1., abs(obs.lambda1), abs(obs.lambda2))
        report.add_check('expectation pair %i' % k, quantum, classical,
                         ks1_tol*scale,
                         abs(quantum - classical) <= ks1_tol*scale)

    if args.method == 'montecarlo' and pairs:
        frac = mc_within/float(len(pairs))
        report.add_check('KS1 within 3 standard errors', 0.95, frac, 0.,
                         frac >= 0.95)

    # --n counts samples under montecarlo, not quadrature nodes
    n_quad = n if args.method == 'quadrature' else None
    for k, (a, psi) in enumerate(pairs[:20]):
        dens = density_from_state(psi)
        norm = density_normalization(dens)
        report.add_check('normalization state %i' % k, 1., norm, 1.e-9,
                         abs(norm - 1.) <= 1.e-9)

        obs = sphere_observable_from_matrix(a, args.tol)
        rot = Rotation.random(None, rng)
        p, _ = ks1_probability(obs, dens, 'quadrature', n_quad)
        p_rot, _ = ks1_probability(*_rotate(obs, dens, rot),
                                   method='quadrature', n=n_quad)
        report.add_check('rotational covariance pair %i' % k, p, p_rot,
                         1.e-9, abs(p - p_rot) <= 1.e-9)

    points = random_sphere_points(10**4, rng)
    for k, (a, _) in enumerate(pairs[:20]):
        obs = sphere_observable_from_matrix(a, args.tol)
        slope = rng.uniform(0.5, 2.)*rng.choice([-1., 1.])
        u = realFunction.polynomial([rng.normal(), slope])
        sample = np.vstack([points, equator_points(obs.axis, 100, rng)])
        bad = ks2_violations(a, u, sample, args.tol)
        report.add_check('KS2 injective pair %i' % k, 0, len(bad), 0,
                         len(bad) == 0)

    for k, (a, _) in enumerate(pairs[:5]):
        e = eigendecompose(a, args.tol)
        lam1, lam2 = e.eigenvalues
        # both eigenvalues map to the same image
        u = realFunction.polynomial([0., -(lam1 + lam2), 1.])
        ua = apply_function(e, u)
        obs = sphere_observable_from_matrix(a, args.tol)
        sample = np.vstack([points, equator_points(obs.axis, 100, rng)])
        bad = ks2_violations(a, u, sample, args.tol)
        report.add_check('KS2 degenerate image pair %i' % k, 0, len(bad), 0,
                         len(bad) == 0 and
                         sphere_observable_from_matrix(ua).degenerate)

    _emit(report, args.json)

    return EXIT_OK if report.passed else EXIT_CONTRARY


def search(args):
    """Exhaustive +-1 search over a constraint spec file."""
    constraints, variables = load_constraint_spec(args.constraints)
    satisfying, searched = exhaustive_search(constraints, variables)

    report = verificationReport('Sign constraint search')
    report.add_check('satisfying assignments', args.expect_satisfying,
                     len(satisfying), 0,
                     len(satisfying) == args.expect_satisfying)
    report.extra = {"constraints": [c.to_dict() for c in constraints],
                    "searched": searched, "satisfying": len(satisfying),
                    "assignments": satisfying}
    for c in constraints:
        report.add_note("constraint %s" % c)
    report.add_note("searched %i assignments, %i satisfy all constraints" %
                    (searched, len(satisfying)))
    _emit(report, args.json)

    return EXIT_OK if report.passed else EXIT_CONTRARY


def build_parser():

    parser = argparse.ArgumentParser(
        prog='hvks', description='Verify hidden-variable embeddings and ' +
        'the Kochen-Specker contradiction.')
    parser.add_argument('-v', '--verbose', action='store_true',
                        help='log debug output to stderr')
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    tol = _params.default_tol

    p = sub.add_parser('ghz-verify', help='run the GHZ argument')
    p.add_argument('--tol', type=float, default=tol)
    p.add_argument('--json', action='store_true')
    p.set_defaults(func=ghz_verify)

    p = sub.add_parser('trivial-embed',
                       help='product-measure embedding of a registry file')
    p.add_argument('--spec', required=True, help='registry TOML file')
    p.add_argument('--state-index', type=int, default=None)
    p.add_argument('--tol', type=float, default=tol)
    p.add_argument('--out', default=None, help='write the model as JSON')
    p.add_argument('--json', action='store_true')
    p.set_defaults(func=trivial_embed)

    p = sub.add_parser('sphere-verify', help='verify the sphere model')
    p.add_argument('--pairs', type=int, default=100)
    p.add_argument('--method', choices=['quadrature', 'montecarlo'],
                   default='quadrature')
    p.add_argument('--n', type=int, default=None,
                   help='quadrature nodes or Monte Carlo samples')
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--tol', type=float, default=tol)
    p.add_argument('--json', action='store_true')
    p.set_defaults(func=sphere_verify)

    p = sub.add_parser('search', help='exhaustive sign-constraint search')
    p.add_argument('--constraints', required=True,
                   help='constraint TOML file')
    p.add_argument('--expect-satisfying', type=int, default=0)
    p.add_argument('--json', action='store_true')
    p.set_defaults(func=search)

    return parser


def main(argv=None):

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code if err.code is not None else EXIT_OK

    logging.basicConfig(stream=sys.stderr,
                        level=logging.DEBUG if args.verbose
                        else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')

    if getattr(args, 'n', None) is not None and args.n < 1:
        logger.error("--n must be at least 1")
        return EXIT_USAGE
    if getattr(args, 'pairs', None) is not None and args.pairs < 0:
        logger.error("--pairs must be nonnegative")
        return EXIT_USAGE

    try:
        return args.func(args)
    except (hvksError, ValueError, IndexError, IOError) as err:
        logger.error(str(err))
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
