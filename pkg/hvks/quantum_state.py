"""
Pure states, Born distributions and the three-qubit GHZ construction.

Conventions: sigma_x = [[0, 1], [1, 0]], sigma_y = [[0, -i], [i, 0]],
sigma_z = [[1, 0], [0, -1]], chi_up = (1, 0), chi_down = (0, 1). Site 1 is
the leftmost tensor factor, so the basis index of (i1, i2, i3) is
4*i1 + 2*i2 + i3.
"""
from builtins import object
import logging
import numpy as np
from functools import reduce
from .num_params import numParams
from .exceptions import NotNormalized, DimMismatch, NotHermitian, \
    SiteOutOfRange
from .matrix_core import tensor, max_norm, is_hermitian, commutes

__all__ = ["SIGMA_X", "SIGMA_Y", "SIGMA_Z", "IDENTITY_2", "PAULI",
           "CHI_UP", "CHI_DOWN", "pureState", "bornDistribution",
           "ghzSystem", "site_operator", "random_state", "born_distribution",
           "expectation", "build_ghz", "verify_operator_identity"]

logger = logging.getLogger(__name__)
_params = numParams()

SIGMA_X = np.array([[0., 1.], [1., 0.]], dtype=complex)
SIGMA_Y = np.array([[0., -1j], [1j, 0.]], dtype=complex)
SIGMA_Z = np.array([[1., 0.], [0., -1.]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)
PAULI = {'x': SIGMA_X, 'y': SIGMA_Y, 'z': SIGMA_Z}

CHI_UP = np.array([1., 0.], dtype=complex)
CHI_DOWN = np.array([0., 1.], dtype=complex)


def site_operator(single, site, n):
    """
    Embed a 2x2 matrix at a site of an n-qubit register.

    Parameters
    ----------
    single: numpy array, [2, 2]
    The single-site operator.

    site: int
    1-based site index, site 1 being the leftmost tensor factor.

    n: int
    Number of sites.

    Returns
    -------
    op: numpy array, [2**n, 2**n]
    """
    if site < 1 or site > n:
        raise SiteOutOfRange("Site %i is outside 1..%i." % (site, n))
    factors = [IDENTITY_2]*n
    factors[site - 1] = np.asarray(single, dtype=complex)
    return reduce(tensor, factors)


class pureState(object):
    """
    A unit vector in C^d.

    Parameters
    ----------
    amplitudes: array-like, [d]
    Complex amplitudes, normalized within numParams().norm_tol.

    name: str, optional
    """

    def __init__(self, amplitudes, name=None, tol=None):

        if tol is None:
            tol = _params.norm_tol
        amps = np.asarray(amplitudes, dtype=complex).ravel()
        if amps.size == 0:
            raise DimMismatch("A state needs at least one amplitude.")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.) > tol:
            raise NotNormalized("State has norm %.15g, expected 1." % norm)
        self.amplitudes = amps
        self.name = name

        return

    @classmethod
    def normalized(cls, amplitudes, name=None):
        """Build a state after dividing by the 2-norm."""
        amps = np.asarray(amplitudes, dtype=complex).ravel()
        norm = np.linalg.norm(amps)
        if norm == 0.:
            raise NotNormalized("Cannot normalize the zero vector.")
        return cls(amps/norm, name=name)

    @property
    def dim(self):
        return len(self.amplitudes)

    def overlap(self, other):
        """Inner product (self, other), antilinear in self."""
        return complex(np.vdot(self.amplitudes, _amplitudes(other)))

    def same_ray(self, other, tol=None):
        """True iff the two states agree up to a global phase."""
        if tol is None:
            tol = _params.default_tol
        return abs(abs(self.overlap(other)) - 1.) <= tol

    def __repr__(self):
        label = self.name if self.name is not None else 'psi'
        return 'pureState(%s, dim=%i)' % (label, self.dim)


def _amplitudes(psi):

    if isinstance(psi, pureState):
        return psi.amplitudes
    return np.asarray(psi, dtype=complex).ravel()


def random_state(dim, rng=None, name=None):
    """Haar random pure state in C^dim."""
    if rng is None:
        rng = np.random.RandomState()
    amps = rng.normal(size=dim) + 1j*rng.normal(size=dim)
    return pureState.normalized(amps, name=name)


class bornDistribution(object):
    """
    Finite probability distribution on the spectrum of an observable.

    Attributes
    ----------
    eigenvalues: numpy array
    Distinct atoms in ascending order.

    probabilities: numpy array
    Probability of each atom, summing to 1 within numParams().default_tol.
    """

    def __init__(self, atoms):

        atoms = sorted((float(lam), float(p)) for lam, p in atoms)
        lams = np.array([lam for lam, _ in atoms])
        probs = np.array([p for _, p in atoms])

        if len(lams) > 1 and np.any(np.diff(lams) <= _params.value_tol):
            raise ValueError("Distribution atoms are not distinct.")
        if np.any(probs < -_params.prob_clamp):
            raise ValueError("Negative probability %.3g." % probs.min())
        probs = np.clip(probs, 0., None)
        if abs(probs.sum() - 1.) > _params.default_tol:
            raise ValueError("Probabilities sum to %.15g, not 1." %
                             probs.sum())

        self.eigenvalues = lams
        self.probabilities = probs

        return

    @property
    def atoms(self):
        return list(zip(self.eigenvalues, self.probabilities))

    def probability(self, lam):
        """Probability of the atom within value_tol of lam, else 0."""
        match = np.abs(self.eigenvalues - lam) <= _params.value_tol
        return float(self.probabilities[match].sum())

    def mean(self):
        return float(np.dot(self.eigenvalues, self.probabilities))

    def pushforward(self, u):
        """
        Image distribution u_* w, merging atoms whose images collide
        within value_tol.
        """
        merged = []
        for lam, p in self.atoms:
            mu = u(lam)
            for k, (nu, q) in enumerate(merged):
                if abs(nu - mu) <= _params.value_tol:
                    merged[k] = (nu, q + p)
                    break
            else:
                merged.append((mu, p))
        return bornDistribution(merged)

    def allclose(self, other, tol=None):
        """Atomwise comparison within tol."""
        if tol is None:
            tol = _params.default_tol
        if len(self.eigenvalues) != len(other.eigenvalues):
            return False
        if np.any(np.abs(self.eigenvalues - other.eigenvalues) >
                  _params.value_tol):
            return False
        return bool(np.all(np.abs(self.probabilities - other.probabilities)
                           <= tol))

    def __repr__(self):
        return 'bornDistribution(%s)' % ', '.join(
            '%g: %.6g' % (lam, p) for lam, p in self.atoms)


def born_distribution(psi, e):
    """
    Born distribution of the observable with spectral measure e in psi.

    Parameters
    ----------
    psi: pureState
    e: spectralMeasure

    Returns
    -------
    w: bornDistribution
    One atom per branch of e with probability (psi, P_i psi).
    """
    amps = _amplitudes(psi)
    if len(amps) != e.dim:
        raise DimMismatch("State has dimension %i, observable %i." %
                          (len(amps), e.dim))
    atoms = []
    for lam, proj in e.branches:
        val = np.vdot(amps, np.dot(proj, amps))
        if abs(val.imag) > _params.norm_tol:
            logger.warning("Born probability has imaginary part %.3g",
                           val.imag)
        p = val.real
        if -_params.prob_clamp <= p < 0.:
            p = 0.
        atoms.append((lam, p))
    return bornDistribution(atoms)


def expectation(psi, a, tol=None):
    """
    Expectation value (psi, a psi) of a Hermitian matrix.
    """
    if tol is None:
        tol = _params.default_tol
    amps = _amplitudes(psi)
    a = np.asarray(a, dtype=complex)
    if a.shape != (len(amps), len(amps)):
        raise DimMismatch("State has dimension %i, operator shape %s." %
                          (len(amps), str(a.shape)))
    if not is_hermitian(a, tol):
        raise NotHermitian("Expectation of a non-Hermitian operator.")
    return float(np.vdot(amps, np.dot(a, amps)).real)


class ghzSystem(object):
    """
    Three spin-1/2 particles with the observables
    A_j = sigma_x at site j, B_j = sigma_y at site j, the products
    Q_1 = A_1 B_2 B_3, Q_2 = B_1 A_2 B_3, Q_3 = B_1 B_2 A_3, and the GHZ
    state (up up up - down down down)/sqrt(2).

    Attributes
    ----------
    A, B, Q: lists of three numpy arrays, [8, 8]
    psi: pureState
    """

    def __init__(self, A, B, Q, psi):

        self.A = [np.asarray(m, dtype=complex) for m in A]
        self.B = [np.asarray(m, dtype=complex) for m in B]
        self.Q = [np.asarray(m, dtype=complex) for m in Q]
        self.psi = psi

        return

    def a_product(self):
        """A_1 A_2 A_3."""
        return reduce(np.dot, self.A)

    def q_product(self):
        """Q_1 Q_2 Q_3."""
        return reduce(np.dot, self.Q)

    def check_invariants(self, tol=None):
        """
        List the invariants that fail: Hermiticity, unit squares and the
        eigenstate property Q_j psi = psi.
        """
        if tol is None:
            tol = _params.default_tol
        failures = []
        eye = np.eye(8)
        for label, mats in (('A', self.A), ('B', self.B), ('Q', self.Q)):
            for j, m in enumerate(mats):
                if m.shape != (8, 8):
                    failures.append("%s%i is not 8x8" % (label, j + 1))
                    continue
                if not is_hermitian(m, tol):
                    failures.append("%s%i is not Hermitian" % (label, j + 1))
                if max_norm(np.dot(m, m) - eye) > tol:
                    failures.append("%s%i squared is not 1" % (label, j + 1))
        amps = self.psi.amplitudes
        for j, q in enumerate(self.Q):
            if q.shape == (8, 8) and \
                    np.linalg.norm(np.dot(q, amps) - amps) > tol:
                failures.append("Q%i psi != psi" % (j + 1))
        return failures


def build_ghz():
    """Build the GHZ observables and state."""
    A = [site_operator(SIGMA_X, j, 3) for j in (1, 2, 3)]
    B = [site_operator(SIGMA_Y, j, 3) for j in (1, 2, 3)]
    Q = [reduce(np.dot, [A[0], B[1], B[2]]),
         reduce(np.dot, [B[0], A[1], B[2]]),
         reduce(np.dot, [B[0], B[1], A[2]])]

    up = reduce(np.kron, [CHI_UP]*3)
    down = reduce(np.kron, [CHI_DOWN]*3)
    psi = pureState((up - down)/np.sqrt(2.), name='GHZ')

    system = ghzSystem(A, B, Q, psi)
    for i in range(3):
        for j in range(i + 1, 3):
            if not commutes(Q[i], Q[j]):
                raise RuntimeError("Q%i and Q%i do not commute." %
                                   (i + 1, j + 1))
    failures = system.check_invariants()
    if failures:
        raise RuntimeError("GHZ invariants fail: %s" % '; '.join(failures))

    return system


def verify_operator_identity(sys, tol=None):
    """True iff |Q_1 Q_2 Q_3 + A_1 A_2 A_3|_max <= tol."""
    if tol is None:
        tol = _params.default_tol
    err = max_norm(sys.q_product() + sys.a_product())
    logger.debug("Operator identity residual %.3g", err)
    return err <= tol

