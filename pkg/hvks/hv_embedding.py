"""
Finite hidden-variable models and the checkers for the distribution
condition (KS1), functional consistency (KS2) and the product and sum rules
for commuting observables.

A model's sample space is enumerated explicitly. "Almost everywhere" means
"at every point of strictly positive weight in some state".
"""
from builtins import object
import itertools
import json
import logging
import numpy as np
from .num_params import numParams
from .exceptions import (UnknownId, UndeclaredRelation, RelationError,
                         ModelError, SizeError, NotCommuting, DimMismatch)
from .matrix_core import (eigendecompose, apply_function, commutes,
                          common_generator, max_norm, realFunction)
from .quantum_state import born_distribution, expectation

__all__ = ["finiteHVModel", "observableRegistry", "trivial_embedding",
           "generator_embedding", "ks1_deviation", "check_ks1",
           "ks2_violations", "check_ks2", "product_rule_violations",
           "check_product_rule", "sum_rule_violations", "check_sum_rule",
           "classical_expectation"]

logger = logging.getLogger(__name__)
_params = numParams()


class finiteHVModel(object):
    """
    A hidden-variable model on a finite sample space.

    Parameters
    ----------
    points: list
    Sample-space labels (hashable, otherwise opaque).

    values: dict
    Observable id -> array of values f_A(point), one per point.

    states: dict
    State id -> array of probability weights, one per point, each array
    summing to 1 within numParams().default_tol.
    """

    def __init__(self, points, values, states):

        self.points = list(points)
        n_points = len(self.points)
        self.values = {}
        self.states = {}

        for obs_id, vals in values.items():
            vals = np.asarray(vals, dtype=float)
            if vals.shape != (n_points,):
                raise ModelError("Value map of %s has %i entries for %i " %
                                 (obs_id, vals.size, n_points) + "points.")
            self.values[obs_id] = vals

        for state_id, weights in states.items():
            weights = np.asarray(weights, dtype=float)
            if weights.shape != (n_points,):
                raise ModelError("Weights of %s have %i entries for %i " %
                                 (state_id, weights.size, n_points) +
                                 "points.")
            if np.any(weights < 0.) or \
                    np.any(weights > 1. + _params.default_tol):
                raise ModelError("Weights of %s leave [0, 1]." % state_id)
            if abs(weights.sum() - 1.) > _params.default_tol:
                raise ModelError("Weights of %s sum to %.15g." %
                                 (state_id, weights.sum()))
            self.states[state_id] = weights

        return

    def __len__(self):
        return len(self.points)

    def value_map(self, obs_id):

        try:
            return self.values[obs_id]
        except KeyError:
            raise UnknownId("Observable %r is not in the model." % obs_id)

    def weights(self, state_id):

        try:
            return self.states[state_id]
        except KeyError:
            raise UnknownId("State %r is not in the model." % state_id)

    def support(self):
        """Boolean mask of points with positive weight in some state."""
        mask = np.zeros(len(self.points), dtype=bool)
        for weights in self.states.values():
            mask |= weights > 0.
        return mask

    def to_dict(self):

        return {"points": [_json_label(p) for p in self.points],
                "values": dict((k, v.tolist())
                               for k, v in self.values.items()),
                "states": dict((k, w.tolist())
                               for k, w in self.states.items())}

    def write_json(self, out_path):
        """
        Write the model to a JSON document with fields "points", "values"
        and "states".
        """
        with open(out_path, 'w') as f:
            json.dump(self.to_dict(), f, indent=1)

        return

    @classmethod
    def load_json(cls, path):
        """Load a model written by write_json."""
        with open(path, 'r') as f:
            doc = json.load(f)
        for key in ("points", "values", "states"):
            if key not in doc:
                raise ModelError("Model document lacks field %r." % key)
        points = [tuple(p) if isinstance(p, list) else p
                  for p in doc["points"]]
        return cls(points, doc["values"], doc["states"])


def _json_label(label):

    if isinstance(label, tuple):
        return list(label)
    return label


class observableRegistry(object):
    """
    The observables of an embedding problem with their spectral measures
    and the declared function relations between them.

    Parameters
    ----------
    tol: float, optional
    Tolerance for Hermiticity and the spectral measures.
    """

    def __init__(self, tol=None):

        if tol is None:
            tol = _params.default_tol
        self.tol = tol
        self.entries = {}
        self.order = []
        self.relations = []

        return

    def add(self, obs_id, matrix):
        """Register a Hermitian matrix under obs_id."""
        if obs_id in self.entries:
            raise ValueError("Observable %r is already registered." % obs_id)
        matrix = np.asarray(matrix, dtype=complex)
        if self.order and matrix.shape != self.matrix(self.order[0]).shape:
            raise DimMismatch("Observable %r has shape %s, registry uses %s." %
                              (obs_id, str(matrix.shape),
                               str(self.matrix(self.order[0]).shape)))
        self.entries[obs_id] = (matrix, eigendecompose(matrix, self.tol))
        self.order.append(obs_id)

        return self

    @property
    def ids(self):
        return list(self.order)

    @property
    def dim(self):
        if not self.order:
            return 0
        return self.matrix(self.order[0]).shape[0]

    def __contains__(self, obs_id):
        return obs_id in self.entries

    def __len__(self):
        return len(self.order)

    def _entry(self, obs_id):

        try:
            return self.entries[obs_id]
        except KeyError:
            raise UnknownId("Observable %r is not registered." % obs_id)

    def matrix(self, obs_id):
        return self._entry(obs_id)[0]

    def spectral(self, obs_id):
        return self._entry(obs_id)[1]

    def declare_relation(self, source, u, target):
        """
        Declare target = u(source); the relation must hold within
        numParams().value_tol.
        """
        e = self.spectral(source)
        err = max_norm(apply_function(e, u) - self.matrix(target))
        if err > _params.value_tol:
            raise RelationError("%s != %r(%s): residual %.3g." %
                                (target, u, source, err))
        self.relations.append((source, u, target))

        return self

    def relation(self, source, target, u=None):
        """
        Find the declared function for (source, target). When u is given it
        must agree with the declared function on the spectrum of source.
        """
        for src, func, tgt in self.relations:
            if src != source or tgt != target:
                continue
            if u is None or u is func:
                return func
            lams = self.spectral(source).eigenvalues
            if all(abs(u(lam) - func(lam)) <= _params.value_tol
                   for lam in lams):
                return func
        raise UndeclaredRelation("No relation %s = u(%s) is declared." %
                                 (target, source))


def trivial_embedding(registry, states, max_points=None):
    """
    Product-measure embedding: the sample space is the Cartesian product
    of the spectra, f_A is the A-coordinate and each state's measure is the
    product of its Born distributions.

    Parameters
    ----------
    registry: observableRegistry
    Nonempty.

    states: dict or list
    State id -> pureState. A list is keyed by position.

    max_points: int, optional
    Cap on the product space size, numParams().max_points by default.

    Returns
    -------
    model: finiteHVModel
    Points are tuples of coordinate values in registry order.
    """
    if max_points is None:
        max_points = _params.max_points
    if len(registry) == 0:
        raise ValueError("The registry is empty.")
    states = _state_dict(states)

    ids = registry.ids
    spectra = [registry.spectral(obs_id).eigenvalues for obs_id in ids]
    n_points = int(np.prod([len(s) for s in spectra], dtype=float))
    if n_points > max_points:
        raise SizeError("Product space has %i points, cap is %i." %
                        (n_points, max_points))

    index = np.array(list(itertools.product(*[range(len(s))
                                              for s in spectra])),
                     dtype=int).reshape(n_points, len(ids))
    values = dict((obs_id, spectra[k][index[:, k]])
                  for k, obs_id in enumerate(ids))
    points = [tuple(float(values[obs_id][i]) for obs_id in ids)
              for i in range(n_points)]

    weights = {}
    for state_id, psi in states.items():
        w = np.ones(n_points)
        for k, obs_id in enumerate(ids):
            born = born_distribution(psi, registry.spectral(obs_id))
            w *= born.probabilities[index[:, k]]
        weights[state_id] = w

    logger.info("Built trivial embedding with %i points for %i observables",
                n_points, len(ids))

    return finiteHVModel(points, values, weights)


def generator_embedding(registry, ids, states):
    """
    Embedding of a commuting family through a common generator.

    The sample space is the index set k = 0, 1, ... of the joint
    eigenspaces of the family, f_A for the generator A is k itself, and
    each member's value map is u_j(k). State weights are the Born
    distribution of the generator, so the model satisfies KS1 and the
    value maps obey KS2 with respect to the generator.

    Parameters
    ----------
    registry: observableRegistry
    ids: list of str
    Pairwise commuting registered observables.
    states: dict or list
    State id -> pureState.

    Returns
    -------
    model: finiteHVModel
    """
    states = _state_dict(states)
    generator, us = common_generator([registry.matrix(obs_id)
                                      for obs_id in ids], registry.tol)
    e = eigendecompose(generator, registry.tol)
    ks = e.eigenvalues

    values = dict((obs_id, u.map(ks)) for obs_id, u in zip(ids, us))
    weights = dict((state_id, born_distribution(psi, e).probabilities)
                   for state_id, psi in states.items())

    logger.info("Built generator embedding with %i points for %i " +
                "observables", len(ks), len(ids))

    return finiteHVModel([int(round(k)) for k in ks], values, weights)


def _state_dict(states):

    if isinstance(states, dict):
        return states
    return dict((i, psi) for i, psi in enumerate(states))


def classical_expectation(model, obs_id, state_id):
    """Sum over points of f_A times the state's weight."""
    return float(np.dot(model.value_map(obs_id), model.weights(state_id)))


def ks1_deviation(model, registry, obs_id, state_id, psi):
    """
    Largest deviation between the model's pulled back distribution of
    f_A and the Born distribution of A in psi, over the spectrum of A.

    Points whose value matches no eigenvalue count as a deviation of their
    total weight.
    """
    f = model.value_map(obs_id)
    rho = model.weights(state_id)
    born = born_distribution(psi, registry.spectral(obs_id))

    matched = np.zeros(len(f), dtype=bool)
    worst = 0.
    for lam, p in born.atoms:
        mask = np.abs(f - lam) <= _params.value_tol
        matched |= mask
        worst = max(worst, abs(rho[mask].sum() - p))

    return max(worst, float(rho[~matched].sum()))


def check_ks1(model, registry, obs_id, state_id, psi, tol=None):
    """
    Check that the model reproduces the Born distribution of obs_id in
    psi, and as a corollary its expectation value.
    """
    if tol is None:
        tol = _params.default_tol
    if obs_id not in registry:
        raise UnknownId("Observable %r is not registered." % obs_id)

    dev = ks1_deviation(model, registry, obs_id, state_id, psi)
    if dev > tol:
        logger.debug("KS1 fails for (%s, %s): deviation %.3g", obs_id,
                     state_id, dev)
        return False

    lams = registry.spectral(obs_id).eigenvalues
    scale = max(1., float(np.max(np.abs(lams))))
    quantum = expectation(psi, registry.matrix(obs_id), registry.tol)
    classical = classical_expectation(model, obs_id, state_id)
    return abs(quantum - classical) <= tol*scale*len(lams)


def ks2_violations(model, registry, source, target, u=None):
    """
    Indices of points where f_target != u(f_source) within value_tol.

    The relation must be declared in the registry; u defaults to the
    declared function.
    """
    u = registry.relation(source, target, u)
    f_src = model.value_map(source)
    f_tgt = model.value_map(target)
    image = u.map(f_src) if isinstance(u, realFunction) else \
        np.array([u(x) for x in f_src])
    return np.flatnonzero(np.abs(f_tgt - image) > _params.value_tol)


def check_ks2(model, registry, source, target, u=None):
    """
    Pointwise functional consistency f_{u(A)} = u(f_A) at every point.
    """
    bad = ks2_violations(model, registry, source, target, u)
    if len(bad) > 0:
        logger.debug("KS2 fails for %s -> %s at point %r", source, target,
                     model.points[bad[0]])
    return len(bad) == 0


def _combination_violations(model, registry, id1, id2, id_out, combine,
                            matrix_combine, tol):

    if tol is None:
        tol = _params.default_tol
    a1 = registry.matrix(id1)
    a2 = registry.matrix(id2)
    out = registry.matrix(id_out)
    if not commutes(a1, a2, tol):
        raise NotCommuting("%s and %s do not commute." % (id1, id2))
    err = max_norm(matrix_combine(a1, a2) - out)
    if err > max(tol, _params.value_tol):
        raise RelationError("%s is not the combination of %s and %s " %
                            (id_out, id1, id2) + "(residual %.3g)." % err)

    f1 = model.value_map(id1)
    f2 = model.value_map(id2)
    f_out = model.value_map(id_out)
    bad = (np.abs(f_out - combine(f1, f2)) > _params.value_tol) & \
        model.support()
    return np.flatnonzero(bad)


def product_rule_violations(model, registry, id1, id2, id_product,
                            tol=None):
    """
    Indices of positive-weight points where
    f_{A1 A2} != f_{A1} f_{A2}.
    """
    return _combination_violations(model, registry, id1, id2, id_product,
                                   np.multiply, np.dot, tol)


def check_product_rule(model, registry, id1, id2, id_product, tol=None):
    """
    Product rule f_{A1 A2} = f_{A1} f_{A2} almost everywhere, for
    commuting A1, A2.
    """
    bad = product_rule_violations(model, registry, id1, id2, id_product, tol)
    if len(bad) > 0:
        logger.debug("Product rule %s*%s=%s fails at point %r", id1, id2,
                     id_product, model.points[bad[0]])
    return len(bad) == 0


def sum_rule_violations(model, registry, id1, id2, id_sum, tol=None):
    """
    Indices of positive-weight points where f_{A1+A2} != f_{A1} + f_{A2}.
    """
    return _combination_violations(model, registry, id1, id2, id_sum,
                                   np.add, np.add, tol)


def check_sum_rule(model, registry, id1, id2, id_sum, tol=None):
    """Sum rule companion of check_product_rule."""
    return len(sum_rule_violations(model, registry, id1, id2, id_sum,
                                   tol)) == 0
