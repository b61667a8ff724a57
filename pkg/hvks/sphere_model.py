"""
Classical model for a single spin-1/2 on the sphere S^2.

An observable A with eigenvalues lambda_1 != lambda_2 is mapped to the spin
matrix sigma(A) = (2A - (lambda_1 + lambda_2))/(lambda_1 - lambda_2)
= axis . (sigma_x, sigma_y, sigma_z) and takes the value lambda_1 on the
open hemisphere around axis, lambda_2 elsewhere. A state with Bloch vector
n has density m(p) = max(0, n.p)/pi.

The displayed density of the construction reads cos(theta)/pi on
0 <= theta <= pi, which is negative on the lower half; the hemisphere
supported reading is used here, presuming the range is a typo for
0 <= theta <= pi/2.

Points are numpy arrays of shape (3,) or (n, 3).
"""
from builtins import object
import logging
import numpy as np
from scipy.special import roots_legendre
from .num_params import numParams
from .exceptions import (NotHermitian, NotNormalized, DimMismatch,
                         RelationError)
from .matrix_core import (eigendecompose, apply_function, is_hermitian,
                          max_norm)
from .quantum_state import SIGMA_X, SIGMA_Y, SIGMA_Z, IDENTITY_2, pureState

__all__ = ["sphereObservable", "sphereDensity", "sphereEstimateBase",
           "quadratureEstimate", "monteCarloEstimate", "sphere_point",
           "random_sphere_points", "equator_points",
           "sphere_observable_from_matrix", "image_observable",
           "value_function", "density_from_state", "ks1_probability",
           "density_normalization", "sphere_expectation", "ks2_violations",
           "ks2_pointwise_check"]

logger = logging.getLogger(__name__)
_params = numParams()

_PAULI_VEC = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def sphere_point(theta, phi):
    """Unit vector with polar angle theta and azimuth phi."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    return np.stack([np.sin(theta)*np.cos(phi),
                     np.sin(theta)*np.sin(phi),
                     np.cos(theta)], axis=-1)


def random_sphere_points(n, rng=None):
    """n points uniformly distributed on S^2."""
    if rng is None:
        rng = np.random.RandomState()
    g = rng.normal(size=(n, 3))
    return g/np.linalg.norm(g, axis=1)[:, None]


def _frame(n):
    """
    Orthonormal frame (e1, e2, n) as the columns of a rotation matrix that
    maps the north pole to n.
    """
    n = np.asarray(n, dtype=float)
    n = n/np.linalg.norm(n)
    helper = np.array([1., 0., 0.]) if abs(n[0]) < 0.9 else \
        np.array([0., 1., 0.])
    e1 = np.cross(helper, n)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    return np.column_stack([e1, e2, n])


def equator_points(axis, n, rng=None):
    """n random points on the great circle orthogonal to axis."""
    if rng is None:
        rng = np.random.RandomState()
    phi = rng.uniform(0., 2.*np.pi, size=n)
    local = np.column_stack([np.cos(phi), np.sin(phi), np.zeros(n)])
    return np.dot(local, _frame(axis).T)


def _canonical_axis(axis):
    """
    Flip axis so its first component (in z, y, x order) beyond
    boundary_tol is positive.
    """
    for k in (2, 1, 0):
        if abs(axis[k]) > _params.boundary_tol:
            return axis[k] > 0.
    return True


class sphereObservable(object):
    """
    Hemisphere value function data of a 2x2 Hermitian matrix.

    Attributes
    ----------
    lambda1, lambda2: float
    Eigenvalues; lambda1 belongs to the eigenvector whose Bloch vector is
    axis.

    axis: numpy array, [3] or None
    Unit vector, None when degenerate.

    degenerate: bool
    """

    def __init__(self, lambda1, lambda2, axis=None, degenerate=False):

        self.lambda1 = float(lambda1)
        self.lambda2 = float(lambda2)
        self.degenerate = bool(degenerate)
        if self.degenerate:
            if abs(self.lambda1 - self.lambda2) > _params.cluster_tol:
                raise ValueError("A degenerate observable needs equal " +
                                 "eigenvalues.")
            self.axis = None
        else:
            axis = np.asarray(axis, dtype=float)
            if abs(np.linalg.norm(axis) - 1.) > _params.norm_tol:
                raise NotNormalized("Axis has norm %.15g." %
                                    np.linalg.norm(axis))
            self.axis = axis

        return

    def spin_matrix(self):
        """sigma(A) = axis . (sigma_x, sigma_y, sigma_z)."""
        if self.degenerate:
            raise ValueError("A degenerate observable has no spin matrix.")
        return sum(x*s for x, s in zip(self.axis, _PAULI_VEC))

    def matrix(self):
        """Rebuild A from lambda1, lambda2 and the spin matrix."""
        if self.degenerate:
            return self.lambda1*IDENTITY_2
        mean = 0.5*(self.lambda1 + self.lambda2)
        half_gap = 0.5*(self.lambda1 - self.lambda2)
        return mean*IDENTITY_2 + half_gap*self.spin_matrix()

    def __repr__(self):
        if self.degenerate:
            return 'sphereObservable(%g)' % self.lambda1
        return 'sphereObservable(%g, %g, axis=%s)' % (
            self.lambda1, self.lambda2, np.array2string(self.axis))


def sphere_observable_from_matrix(a, tol=None):
    """
    Spin-matrix decomposition of a 2x2 Hermitian matrix.

    lambda1 is anchored to an eigenvector, not to the larger eigenvalue:
    of the two antipodal Bloch vectors of the eigenbasis the canonically
    oriented one is taken as axis. A function u(A) that is injective on the
    spectrum has the same eigenvectors and hence the same axis, with
    lambda1 replaced by u(lambda1).
    """
    if tol is None:
        tol = _params.default_tol
    a = np.asarray(a, dtype=complex)
    if a.shape != (2, 2):
        raise DimMismatch("Expected a 2x2 matrix, got %s." % str(a.shape))
    if not is_hermitian(a, tol):
        raise NotHermitian("Matrix is not Hermitian.")

    e = eigendecompose(a, tol)
    if len(e) == 1:
        lam = e.eigenvalues[0]
        return sphereObservable(lam, lam, degenerate=True)

    lam_a, lam_b = e.eigenvalues
    spin = (2.*a - (lam_a + lam_b)*IDENTITY_2)/(lam_a - lam_b)
    axis = np.array([0.5*np.trace(np.dot(spin, s)).real
                     for s in _PAULI_VEC])
    axis /= np.linalg.norm(axis)
    if not _canonical_axis(axis):
        axis = -axis
        lam_a, lam_b = lam_b, lam_a

    return sphereObservable(lam_a, lam_b, axis)


def image_observable(obs, u):
    """
    The sphere observable of u(A), labelled through the eigenvectors of A.

    u(A) shares the eigenvectors of A, so it keeps obs.axis with lambda1
    and lambda2 replaced by their images. Equal images give the
    degenerate observable.
    """
    if obs.degenerate:
        val = u(obs.lambda1)
        return sphereObservable(val, val, degenerate=True)
    mu1, mu2 = u(obs.lambda1), u(obs.lambda2)
    if abs(mu1 - mu2) <= _params.cluster_tol:
        return sphereObservable(mu1, mu1, degenerate=True)
    return sphereObservable(mu1, mu2, obs.axis)


def value_function(obs, p):
    """
    f_A(p): lambda1 where axis . p > boundary_tol, lambda2 otherwise.

    The lambda2 side is the closed hemisphere axis . p <= 0 widened by a
    band of numParams().boundary_tol, so points generated on the equator
    land on it despite round-off. Accepts a single point or an (n, 3)
    array of points.
    """
    p = np.asarray(p, dtype=float)
    if obs.degenerate:
        return np.full(p.shape[:-1], obs.lambda1) if p.ndim > 1 \
            else obs.lambda1
    upper = np.dot(p, obs.axis) > _params.boundary_tol
    vals = np.where(upper, obs.lambda1, obs.lambda2)
    return vals if p.ndim > 1 else float(vals)


class sphereDensity(object):
    """
    Rotationally covariant density m(p) = max(0, bloch . p)/pi.

    Parameters
    ----------
    bloch: array-like, [3]
    Unit Bloch vector of the state.
    """

    def __init__(self, bloch):

        bloch = np.asarray(bloch, dtype=float)
        if abs(np.linalg.norm(bloch) - 1.) > _params.default_tol:
            raise NotNormalized("Bloch vector has norm %.15g." %
                                np.linalg.norm(bloch))
        self.bloch = bloch/np.linalg.norm(bloch)

        return

    def __call__(self, p):
        return np.maximum(0., np.dot(np.asarray(p, dtype=float),
                                     self.bloch))/np.pi

    def frame(self):
        """Rotation taking the north pole to the Bloch vector."""
        return _frame(self.bloch)


def density_from_state(psi):
    """
    Density of a qubit state, bloch = <psi, (sigma_x, sigma_y, sigma_z) psi>.
    """
    amps = psi.amplitudes if isinstance(psi, pureState) else \
        np.asarray(psi, dtype=complex).ravel()
    if amps.shape != (2,):
        raise DimMismatch("Expected a qubit state.")
    norm = np.linalg.norm(amps)
    if abs(norm - 1.) > _params.default_tol:
        raise NotNormalized("State has norm %.15g." % norm)
    bloch = np.array([np.vdot(amps, np.dot(s, amps)).real
                      for s in _PAULI_VEC])
    return sphereDensity(bloch)


class sphereEstimateBase(object):

    """
    Base class for estimators of the probability that f_A = lambda1 under
    a sphere density.

    Parameters
    ----------
    obs: sphereObservable
    dens: sphereDensity
    """

    def __init__(self, obs, dens):

        self.obs = obs
        self.dens = dens

        return

    def _trivial(self):
        # degenerate observables take lambda1 everywhere
        if self.obs.degenerate:
            return 1., 0.
        return None


class quadratureEstimate(sphereEstimateBase):

    """
    Gauss-Legendre estimate in the frame aligned with the Bloch vector.

    There the density is t/pi with t = cos(theta') on [0, 1]. At fixed t the
    azimuthal fraction of the observable's hemisphere is exact, and the
    t integral is split at the kink t* = sin(alpha) (alpha the angle
    between axis and Bloch vector). On [t*, 1] the fraction is constant;
    on [0, t*] the substitution t = t*(1 - w^2) leaves a smooth integrand
    for Gauss-Legendre in w.
    """

    def _integrate(self, n):

        local = np.dot(self.dens.frame().T, self.obs.axis)
        s = float(np.hypot(local[0], local[1]))
        k = float(local[2])

        # constant part above the kink
        total = k**2 if k > _params.boundary_tol else 0.
        if s <= _params.boundary_tol:
            return total if k > 0. else 0.

        nodes, weights = roots_legendre(n)
        w = 0.5*(nodes + 1.)
        wts = 0.5*weights
        t = s*(1. - w**2)
        dt = 2.*s*w
        ratio = -k*t/(s*np.sqrt(1. - t**2))
        frac = np.arccos(np.clip(ratio, -1., 1.))/np.pi

        return total + float(np.sum(wts*2.*t*frac*dt))

    def ks1_probability(self, n=None):
        """
        Parameters
        ----------
        n: int, optional
        Number of Gauss-Legendre nodes, numParams().quadrature_nodes by
        default.

        Returns
        -------
        p_lambda1: float
        error_estimate: float
        Difference to the 2n-node result.
        """
        if n is None:
            n = _params.quadrature_nodes
        if n < 1:
            raise ValueError("Need at least one node.")
        trivial = self._trivial()
        if trivial is not None:
            return trivial

        p_n = self._integrate(n)
        p_2n = self._integrate(2*n)
        return p_n, abs(p_2n - p_n)


class monteCarloEstimate(sphereEstimateBase):

    """
    Monte Carlo estimate from density-weighted samples.

    In the Bloch frame theta' = arcsin(sqrt(u)) has density
    2 cos(theta') sin(theta') on [0, pi/2] and phi is uniform.
    """

    def sample(self, n, rng):
        """Draw n points from the density."""
        u = rng.uniform(size=n)
        theta = np.arcsin(np.sqrt(u))
        phi = rng.uniform(0., 2.*np.pi, size=n)
        return np.dot(sphere_point(theta, phi), self.dens.frame().T)

    def ks1_probability(self, n=None, seed=None):
        """
        Parameters
        ----------
        n: int, optional
        Number of samples, numParams().montecarlo_samples by default.

        seed: int, optional
        Seed of the numpy RandomState.

        Returns
        -------
        p_lambda1: float
        error_estimate: float
        Binomial standard error.
        """
        if n is None:
            n = _params.montecarlo_samples
        if n < 1:
            raise ValueError("Need at least one sample.")
        trivial = self._trivial()
        if trivial is not None:
            return trivial

        rng = np.random.RandomState(seed)
        points = self.sample(n, rng)
        hits = np.dot(points, self.obs.axis) > _params.boundary_tol
        p = float(np.mean(hits))
        return p, float(np.sqrt(p*(1. - p)/n))


def ks1_probability(obs, dens, method='quadrature', n=None, seed=None):
    """
    Estimate the probability that f_A = lambda1 under the density.

    Parameters
    ----------
    obs: sphereObservable
    dens: sphereDensity
    method: str
    'quadrature' or 'montecarlo'.
    n: int, optional
    Nodes per axis or number of samples.
    seed: int, optional
    Monte Carlo seed.

    Returns
    -------
    p_lambda1: float
    error_estimate: float
    """
    if method == 'quadrature':
        return quadratureEstimate(obs, dens).ks1_probability(n)
    elif method == 'montecarlo':
        return monteCarloEstimate(obs, dens).ks1_probability(n, seed)
    else:
        raise ValueError("Only currently accept 'quadrature' or " +
                         "'montecarlo' as methods.")


def density_normalization(dens, n=None):
    """
    Integral of the density over S^2 by product Gauss-Legendre in
    cos(theta') times the uniform rule in phi, split at the support
    boundary t = 0, with the density evaluated at the rotated points.
    """
    if n is None:
        n = _params.quadrature_nodes
    nodes, weights = roots_legendre(n)
    phi = 2.*np.pi*np.arange(n)/n
    rot = dens.frame()

    total = 0.
    for lo, hi in ((-1., 0.), (0., 1.)):
        t = lo + 0.5*(hi - lo)*(nodes + 1.)
        wt = 0.5*(hi - lo)*weights
        tt, pp = np.meshgrid(t, phi, indexing='ij')
        local = np.stack([np.sqrt(1. - tt**2)*np.cos(pp),
                          np.sqrt(1. - tt**2)*np.sin(pp), tt], axis=-1)
        vals = dens(np.dot(local, rot.T))
        total += float(np.sum(wt[:, None]*vals)*2.*np.pi/n)

    return total


def sphere_expectation(obs, dens, n=None):
    """
    Classical expectation of f_A under the density, by quadrature.
    """
    if obs.degenerate:
        return obs.lambda1
    p, _ = quadratureEstimate(obs, dens).ks1_probability(n)
    return obs.lambda1*p + obs.lambda2*(1. - p)


def ks2_violations(a, u, points, tol=None):
    """
    Indices of points where f_{u(A)}(p) != u(f_A(p)) within value_tol.

    f_{u(A)} comes from image_observable. It must rebuild the u(A) of the
    spectral calculus, or RelationError is raised.
    """
    if tol is None:
        tol = _params.default_tol
    points = np.atleast_2d(np.asarray(points, dtype=float))
    obs = sphere_observable_from_matrix(a, tol)
    obs_u = image_observable(obs, u)

    ua = apply_function(eigendecompose(a, tol), u)
    scale = max(1., abs(obs_u.lambda1), abs(obs_u.lambda2))
    err = max_norm(obs_u.matrix() - ua)
    if err > _params.value_tol*scale:
        raise RelationError("u(A) from the spectral calculus differs from " +
                            "the hemisphere image by %.3g." % err)

    lhs = value_function(obs_u, points)
    f_a = value_function(obs, points)
    rhs = np.array([u(x) for x in f_a])
    return np.flatnonzero(np.abs(lhs - rhs) > _params.value_tol)


def ks2_pointwise_check(a, u, points, tol=None):
    """True iff f_{u(A)} = u(f_A) at every given point."""
    bad = ks2_violations(a, u, points, tol)
    if len(bad) > 0:
        logger.debug("Sphere KS2 fails at %i of %i points", len(bad),
                     len(np.atleast_2d(points)))
    return len(bad) == 0
