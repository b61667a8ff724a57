"""
Registry and constraint spec files.

A registry spec is a TOML document:

    sites = 3

    [observables]
    A1 = "sx(1)"                       # operator expression
    D = { diag = [0, 1, 2] }           # diagonal matrix
    M = { re = [[0, 1], [1, 0]], im = [[0, 0], [0, 0]] }

    [[relations]]                      # target = u(source)
    source = "D"
    target = "D2"
    polynomial = [0, 0, 1]             # or domain = [...], values = [...]

    [[products]]                       # product = factors[0] factors[1]
    factors = ["A1", "B23"]
    product = "Q1"

    [[sums]]                           # sum = terms[0] + terms[1]
    terms = ["Z1", "Z2"]
    sum = "Z12"

    [[states]]                         # computational basis amplitudes
    name = "GHZ"
    re = [0.7071067811865476, 0, 0, 0, 0, 0, 0, -0.7071067811865476]
    im = [0, 0, 0, 0, 0, 0, 0, 0]

A constraint spec lists [[constraints]] tables with "variables",
"product" and an optional "provenance", and an optional top-level
"variables" array fixing the search order.
"""
from builtins import object
import logging
import numpy as np
try:
    import tomllib
except ImportError:
    import tomli as tomllib
from .exceptions import SpecFileError
from .matrix_core import realFunction
from .quantum_state import pureState
from .hv_embedding import observableRegistry
from .operator_expr import build_operator
from .ghz_contradiction import signConstraint

__all__ = ["registrySpec", "load_registry_spec", "parse_registry_spec",
           "load_constraint_spec", "parse_constraint_spec"]

logger = logging.getLogger(__name__)


class registrySpec(object):
    """
    The contents of a registry spec file.

    Attributes
    ----------
    registry: observableRegistry
    Observables with their declared relations.

    states: list of (str, pureState)
    In file order.

    products: list of (str, str, str)
    (factor 1, factor 2, product) triples for the product rule.

    sums: list of (str, str, str)
    (term 1, term 2, sum) triples for the sum rule.

    sites: int or None
    """

    def __init__(self, registry, states, products=None, sums=None,
                 sites=None):

        self.registry = registry
        self.states = states
        self.products = products if products is not None else []
        self.sums = sums if sums is not None else []
        self.sites = sites

        return


def _read_toml(path):

    try:
        with open(path, 'rb') as f:
            return tomllib.load(f)
    except IOError as err:
        raise SpecFileError("Cannot read %s: %s" % (path, err))
    except tomllib.TOMLDecodeError as err:
        raise SpecFileError("%s is not valid TOML: %s" % (path, err))


def _observable_matrix(obs_id, entry, sites):

    if isinstance(entry, str):
        if sites is None:
            raise SpecFileError("Observable %s is an expression but the " %
                                obs_id + "file does not set 'sites'.")
        return build_operator(entry, sites)
    if not isinstance(entry, dict):
        raise SpecFileError("Observable %s must be an expression or a " %
                            obs_id + "table.")
    if 'diag' in entry:
        return np.diag(np.asarray(entry['diag'], dtype=float)).astype(complex)
    if 're' in entry:
        re = np.asarray(entry['re'], dtype=float)
        im = np.asarray(entry.get('im', np.zeros_like(re)), dtype=float)
        if re.shape != im.shape:
            raise SpecFileError("Real and imaginary parts of %s differ " %
                                obs_id + "in shape.")
        return re + 1j*im
    raise SpecFileError("Observable %s needs 'diag' or 're'." % obs_id)


def _relation_function(rel):

    name = rel.get('name')
    if 'polynomial' in rel:
        return realFunction.polynomial(rel['polynomial'], name=name)
    if 'domain' in rel and 'values' in rel:
        return realFunction.from_table(rel['domain'], rel['values'],
                                       name=name)
    raise SpecFileError("Relation %s -> %s needs 'polynomial' or " %
                        (rel.get('source'), rel.get('target')) +
                        "'domain' and 'values'.")


def _pair(table, key, out_key, kind):

    try:
        pair = table[key]
        out = table[out_key]
    except KeyError as err:
        raise SpecFileError("A %s entry lacks %s." % (kind, err))
    if len(pair) != 2:
        raise SpecFileError("A %s entry needs exactly two %s, got %i." %
                            (kind, key, len(pair)))
    return pair[0], pair[1], out


def parse_registry_spec(doc, tol=None):
    """
    Build a registrySpec from a decoded TOML document.

    Raises SpecFileError for structural problems; expression errors
    (ExpressionSyntaxError, SiteOutOfRange) and numerical ones
    (NotHermitian, RelationError, NotNormalized) propagate.
    """
    sites = doc.get('sites')
    if sites is not None and (not isinstance(sites, int) or sites < 1):
        raise SpecFileError("'sites' must be a positive integer.")

    observables = doc.get('observables', {})
    if not observables:
        raise SpecFileError("The registry file declares no observables.")

    registry = observableRegistry(tol)
    for obs_id, entry in observables.items():
        registry.add(obs_id, _observable_matrix(obs_id, entry, sites))

    for rel in doc.get('relations', []):
        try:
            source, target = rel['source'], rel['target']
        except KeyError as err:
            raise SpecFileError("A relation lacks %s." % err)
        registry.declare_relation(source, _relation_function(rel), target)

    products = [_pair(p, 'factors', 'product', 'product')
                for p in doc.get('products', [])]
    sums = [_pair(s, 'terms', 'sum', 'sum') for s in doc.get('sums', [])]
    for triple in products + sums:
        for obs_id in triple:
            if obs_id not in registry:
                raise SpecFileError("%s is not a declared observable." %
                                    obs_id)

    states = []
    for k, st in enumerate(doc.get('states', [])):
        if 're' not in st:
            raise SpecFileError("State %i lacks 're'." % k)
        re = np.asarray(st['re'], dtype=float)
        im = np.asarray(st.get('im', np.zeros_like(re)), dtype=float)
        if re.shape != im.shape:
            raise SpecFileError("Real and imaginary parts of state %i " % k +
                                "differ in length.")
        name = st.get('name', 'state%i' % k)
        if name in [s[0] for s in states]:
            raise SpecFileError("State name %r is declared twice." % name)
        states.append((name, pureState(re + 1j*im, name=name)))

    logger.info("Loaded %i observables, %i relations and %i states",
                len(registry), len(registry.relations), len(states))

    return registrySpec(registry, states, products, sums, sites)


def load_registry_spec(path, tol=None):
    """Read and build a registry spec file."""
    return parse_registry_spec(_read_toml(path), tol)


def parse_constraint_spec(doc):
    """
    Returns
    -------
    constraints: list of signConstraint
    variables: list of str or None
    The declared search order, if any.
    """
    entries = doc.get('constraints')
    if not entries:
        raise SpecFileError("The file declares no constraints.")
    constraints = [signConstraint.from_dict(c) for c in entries]
    variables = doc.get('variables')
    return constraints, variables


def load_constraint_spec(path):
    return parse_constraint_spec(_read_toml(path))
