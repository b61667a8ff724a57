"""
The GHZ proof engine: turn the quantum facts about the GHZ system into sign
constraints on the values a_j = f(A_j), b_j = f(B_j), and show by exhaustive
search that no +-1 assignment satisfies them.

Every constraint is emitted only after the quantum premises it rests on
have been verified numerically.
"""
from builtins import object
import itertools
import json
import logging
import numpy as np
from functools import reduce
from .num_params import numParams
from .exceptions import PremiseFailure, TooManyVariables, ConstraintError
from .matrix_core import max_norm, is_hermitian, commutes
from .quantum_state import build_ghz, expectation

__all__ = ["VARIABLES", "signConstraint", "contradictionReport",
           "ghz_premises", "derive_constraints", "exhaustive_search",
           "reduce_constraints", "run_ks_theorem"]

logger = logging.getLogger(__name__)
_params = numParams()

VARIABLES = ('a1', 'a2', 'a3', 'b1', 'b2', 'b3')

INFERENCES = [
    "Q_j^2 = 1 and the product rule give q_j = +-1 at every point.",
    "<Q_j> = 1 and KS1 give a mean of 1 for q_j; a +-1 random variable "
    "with unit mean equals 1 almost everywhere.",
    "The factors of each Q_j commute, so the product rule gives "
    "q_1 = a1 b2 b3, q_2 = b1 a2 b3, q_3 = b1 b2 a3.",
    "A_j^2 = B_j^2 = 1 gives a_j, b_j = +-1, so b_j^2 = 1.",
    "Q1 Q2 Q3 = -A1 A2 A3 gives <A1 A2 A3> = -1; its factors commute, so "
    "a1 a2 a3 = -1 almost everywhere.",
]


class signConstraint(object):
    """
    A requirement that the product of some +-1 variables is +1 or -1.

    Parameters
    ----------
    variables: list of str
    Nonempty, no repeats.

    required_product: int
    +1 or -1.

    provenance: str
    The quantum fact the constraint was derived from.
    """

    def __init__(self, variables, required_product, provenance=''):

        variables = tuple(variables)
        if len(variables) == 0:
            raise ConstraintError("A constraint needs at least one variable.")
        if len(set(variables)) != len(variables):
            raise ConstraintError("Repeated variable in %r." %
                                  (variables,))
        if required_product not in (1, -1):
            raise ConstraintError("Required product must be +1 or -1, " +
                                  "got %r." % (required_product,))
        self.variables = variables
        self.required_product = int(required_product)
        self.provenance = provenance

        return

    def satisfied_by(self, assignment):
        """True iff the product of the assigned values is as required."""
        prod = 1
        for var in self.variables:
            prod *= assignment[var]
        return prod == self.required_product

    def to_dict(self):
        return {"variables": list(self.variables),
                "product": self.required_product,
                "provenance": self.provenance}

    @classmethod
    def from_dict(cls, doc):
        try:
            return cls(doc["variables"], int(doc["product"]),
                       doc.get("provenance", ''))
        except KeyError as err:
            raise ConstraintError("Constraint lacks field %s." % err)

    def __eq__(self, other):
        if not isinstance(other, signConstraint):
            return NotImplemented
        return sorted(self.variables) == sorted(other.variables) and \
            self.required_product == other.required_product

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((tuple(sorted(self.variables)), self.required_product))

    def __str__(self):
        return '%s = %+d' % (''.join(self.variables), self.required_product)

    def __repr__(self):
        return 'signConstraint(%s)' % str(self)


class contradictionReport(object):
    """
    Outcome of the GHZ argument.

    Attributes
    ----------
    quantum_expectations: dict
    'Q1', 'Q2', 'Q3', 'A1A2A3' -> expectation value in the GHZ state.

    constraints: list of signConstraint

    assignments_searched: int
    2 to the number of variables.

    satisfying_assignments: int
    Reported as found; the argument predicts 0.

    reduced_argument: str
    The b-cancellation set against the operator identity.

    premises: list of dict
    Verified premise records (name, expected, observed, tolerance, pass).

    inferences: list of str
    The inference steps from premises to constraints.
    """

    def __init__(self, quantum_expectations, constraints, assignments_searched,
                 satisfying_assignments, reduced_argument, premises=None,
                 inferences=None, tol=None):

        self.quantum_expectations = quantum_expectations
        self.constraints = constraints
        self.assignments_searched = assignments_searched
        self.satisfying_assignments = satisfying_assignments
        self.reduced_argument = reduced_argument
        self.premises = premises if premises is not None else []
        self.inferences = inferences if inferences is not None else []
        self.tol = tol

        return

    @property
    def contradiction(self):
        return self.satisfying_assignments == 0

    def to_dict(self):

        return {"expectations": dict(self.quantum_expectations),
                "constraints": [c.to_dict() for c in self.constraints],
                "searched": self.assignments_searched,
                "satisfying": self.satisfying_assignments,
                "reduction": self.reduced_argument}

    def to_json(self, indent=1):
        return json.dumps(self.to_dict(), indent=indent)

    def render(self):
        """Human readable text rendering."""
        lines = ["GHZ expectation values:"]
        for key, val in self.quantum_expectations.items():
            lines.append("  <%s> = %+.12f" % (key, val))
        lines.append("Inferences:")
        lines.extend("  - %s" % step for step in self.inferences)
        lines.append("Constraints:")
        for c in self.constraints:
            lines.append("  %s   [%s]" % (c, c.provenance))
        lines.append("Reduction: %s" % self.reduced_argument)
        lines.append("Searched %i assignments, %i satisfy all constraints." %
                     (self.assignments_searched,
                      self.satisfying_assignments))
        if self.contradiction:
            lines.append("No value assignment exists: contradiction.")
        return '\n'.join(lines)


def _record(name, expected, observed, tol):

    if observed is None:
        passed = False
    elif isinstance(observed, bool):
        passed = observed == expected
    else:
        passed = abs(observed - expected) <= tol
    return {"name": name, "expected": expected, "observed": observed,
            "tolerance": tol, "pass": bool(passed)}


def ghz_premises(sys, tol=None):
    """
    Evaluate every quantum premise of the GHZ argument.

    Returns
    -------
    records: list of dict
    One record per premise with fields name, expected, observed,
    tolerance and pass.
    """
    if tol is None:
        tol = _params.default_tol
    records = []
    eye = np.eye(8)
    amps = sys.psi.amplitudes

    for label, mats in (('A', sys.A), ('B', sys.B), ('Q', sys.Q)):
        for j, m in enumerate(mats):
            name = '%s%i' % (label, j + 1)
            records.append(_record('%s hermitian' % name, True,
                                   bool(is_hermitian(m, tol)), tol))
            records.append(_record('%s^2 = 1' % name, 0.,
                                   max_norm(np.dot(m, m) - eye), tol))

    factors = [(sys.A[0], sys.B[1], sys.B[2]),
               (sys.B[0], sys.A[1], sys.B[2]),
               (sys.B[0], sys.B[1], sys.A[2])]
    for j, (q, facs) in enumerate(zip(sys.Q, factors)):
        name = 'Q%i' % (j + 1)
        commuting = all(commutes(facs[k], facs[l], tol)
                        for k in range(3) for l in range(k + 1, 3))
        records.append(_record('%s factors commute' % name, True,
                               bool(commuting), tol))
        records.append(_record('%s = product of its factors' % name, 0.,
                               max_norm(reduce(np.dot, facs) - q), tol))
        records.append(_record('%s psi = psi' % name, 0.,
                               float(np.linalg.norm(np.dot(q, amps) - amps)),
                               tol))
        records.append(_record('<%s> = 1' % name, 1.,
                               _safe_expectation(sys.psi, q, tol), tol))

    a_commuting = all(commutes(sys.A[k], sys.A[l], tol)
                      for k in range(3) for l in range(k + 1, 3))
    records.append(_record('A factors commute', True, bool(a_commuting), tol))
    records.append(_record('Q1 Q2 Q3 + A1 A2 A3 = 0', 0.,
                           max_norm(sys.q_product() + sys.a_product()), tol))
    records.append(_record('<A1 A2 A3> = -1', -1.,
                           _safe_expectation(sys.psi, sys.a_product(), tol),
                           tol))

    return records


def _safe_expectation(psi, a, tol):

    # None for non-Hermitian input, flagged by its own record
    if not is_hermitian(a, tol):
        return None
    return expectation(psi, a, tol)


def _require(records, names):

    by_name = dict((r["name"], r) for r in records)
    for name in names:
        rec = by_name[name]
        if not rec["pass"]:
            raise PremiseFailure(name, "observed %r" % (rec["observed"],))


def derive_constraints(sys, tol=None):
    """
    Derive the four GHZ sign constraints, each after verifying its
    premises.

    Parameters
    ----------
    sys: ghzSystem
    tol: float, optional

    Returns
    -------
    constraints: list of signConstraint
    a1 b2 b3 = +1, b1 a2 b3 = +1, b1 b2 a3 = +1 and a1 a2 a3 = -1.
    """
    if tol is None:
        tol = _params.default_tol
    records = ghz_premises(sys, tol)
    squares = ['%s%i^2 = 1' % (label, j) for label in 'AB'
               for j in (1, 2, 3)]
    _require(records, ['%s%i hermitian' % (label, j) for label in 'AB'
                       for j in (1, 2, 3)] + squares)

    constraints = []
    patterns = [('a1', 'b2', 'b3'), ('b1', 'a2', 'b3'), ('b1', 'b2', 'a3')]
    for j, variables in enumerate(patterns):
        name = 'Q%i' % (j + 1)
        _require(records, ['%s hermitian' % name, '%s^2 = 1' % name,
                           '%s factors commute' % name,
                           '%s = product of its factors' % name,
                           '<%s> = 1' % name])
        constraints.append(signConstraint(
            variables, 1, 'strict correlation <%s> = 1' % name))
        logger.debug("Derived %s from <%s> = 1", constraints[-1], name)

    _require(records, ['A factors commute', 'Q1 Q2 Q3 + A1 A2 A3 = 0',
                       '<A1 A2 A3> = -1'])
    constraints.append(signConstraint(
        ('a1', 'a2', 'a3'), -1,
        'operator identity Q1 Q2 Q3 = -A1 A2 A3, <A1 A2 A3> = -1'))

    return constraints


def _variables_of(constraints):

    present = set(v for c in constraints for v in c.variables)
    ordered = [v for v in VARIABLES if v in present]
    ordered += sorted(present - set(VARIABLES))
    return ordered


def exhaustive_search(constraints, variables=None, max_variables=None):
    """
    Enumerate every +-1 assignment and keep those meeting all constraints.

    Assignments run lexicographically over the variable order with +1
    before -1. The default order is a1, a2, a3, b1, b2, b3 followed by any
    other variables alphabetically.

    Returns
    -------
    satisfying: list of dict
    Variable -> +1/-1 for each satisfying assignment, in search order.

    searched: int
    Number of assignments examined.
    """
    if max_variables is None:
        max_variables = _params.max_search_variables
    if variables is None:
        variables = _variables_of(constraints)
    variables = list(variables)
    if len(set(variables)) != len(variables):
        repeated = sorted(set(v for v in variables if variables.count(v) > 1))
        raise ConstraintError("Variables %s are listed more than once." %
                              ', '.join(repeated))
    missing = set(v for c in constraints for v in c.variables) - \
        set(variables)
    if missing:
        raise ConstraintError("Variables %s are not searched." %
                              ', '.join(sorted(missing)))
    if len(variables) > max_variables:
        raise TooManyVariables("%i variables exceed the limit of %i." %
                               (len(variables), max_variables))

    satisfying = []
    searched = 0
    for values in itertools.product((1, -1), repeat=len(variables)):
        searched += 1
        assignment = dict(zip(variables, values))
        if all(c.satisfied_by(assignment) for c in constraints):
            satisfying.append(assignment)

    logger.info("Searched %i assignments, %i satisfying", searched,
                len(satisfying))

    return satisfying, searched


def reduce_constraints(constraints):
    """
    Multiply sign constraints, cancelling variables that appear an even
    number of times (v^2 = 1 for v = +-1).

    Returns
    -------
    product: signConstraint or None
    None when every variable cancels.
    """
    counts = {}
    sign = 1
    for c in constraints:
        sign *= c.required_product
        for v in c.variables:
            counts[v] = counts.get(v, 0) + 1
    remaining = [v for v in _variables_of(constraints) if counts[v] % 2 == 1]
    if not remaining:
        if sign != 1:
            logger.info("Constraints multiply to 1 = -1")
        return None
    cancelled = [v for v in _variables_of(constraints) if counts[v] % 2 == 0]
    provenance = 'product of %s' % ', '.join(str(c) for c in constraints)
    if cancelled:
        provenance += '; %s appear quadratically' % ', '.join(cancelled)
    return signConstraint(remaining, sign, provenance)


def run_ks_theorem(tol=None):
    """
    Build the GHZ system, verify every premise, derive the constraints,
    search all assignments and return the report.

    Raises PremiseFailure if any premise fails within tol.
    """
    if tol is None:
        tol = _params.default_tol
    sys = build_ghz()
    records = ghz_premises(sys, tol)
    _require(records, [r["name"] for r in records])

    constraints = derive_constraints(sys, tol)
    satisfying, searched = exhaustive_search(constraints)

    reduced = reduce_constraints(constraints[:3])
    reduced_argument = '%s (b-factors cancel) vs %s (operator identity)' % \
        (reduced, constraints[3])

    expectations = {}
    for j, q in enumerate(sys.Q):
        expectations['Q%i' % (j + 1)] = expectation(sys.psi, q, tol)
    expectations['A1A2A3'] = expectation(sys.psi, sys.a_product(), tol)

    report = contradictionReport(expectations, constraints, searched,
                                 len(satisfying), reduced_argument,
                                 premises=records, inferences=INFERENCES,
                                 tol=tol)
    logger.info("GHZ argument: %i of %i assignments satisfy the " +
                "constraints", len(satisfying), searched)

    return report
