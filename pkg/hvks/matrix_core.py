"""
Dense complex linear algebra and the spectral calculus.

Matrices are plain complex numpy arrays of shape (d, d). Only the
finite-dimensional case is realised: spectral integrals over a
self-adjoint operator reduce to finite sums over its distinct eigenvalues.
"""
from builtins import object
import logging
import numpy as np
from .num_params import numParams
from .exceptions import (NotHermitian, NoConvergence, DomainError,
                         DimMismatch, NotCommuting)

__all__ = ["realFunction", "spectralMeasure", "tensor", "max_norm",
           "is_hermitian", "hermitian_part", "jacobi_eigh", "eigendecompose",
           "apply_function", "pushforward_check", "commutes",
           "common_generator", "random_hermitian"]

logger = logging.getLogger(__name__)
_params = numParams()


def _as_matrix(a):

    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimMismatch("Expected a square matrix, got shape %s." %
                          str(a.shape))
    return a


def max_norm(a):
    """Max absolute entry of an array."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.
    return float(np.max(np.abs(a)))


def is_hermitian(a, tol=None):

    if tol is None:
        tol = _params.default_tol
    a = _as_matrix(a)
    return max_norm(a - a.conj().T) <= tol


def hermitian_part(a):
    """Return (a + a^dagger)/2."""
    a = _as_matrix(a)
    return 0.5*(a + a.conj().T)


def tensor(a, b):
    """
    Kronecker product of two square matrices.

    Entry ((i*db + k), (j*db + l)) of the result is a[i, j]*b[k, l].
    """
    return np.kron(_as_matrix(a), _as_matrix(b))


def random_hermitian(dim, rng=None, spectrum=None):
    """
    Draw a random Hermitian matrix.

    Parameters
    ----------
    dim: int
    Matrix dimension.

    rng: numpy RandomState, optional
    Source of randomness. A fresh unseeded RandomState if None.

    spectrum: array-like, optional
    If given, the eigenvalues (with multiplicity) of the result, rotated
    by a random unitary. Otherwise entries are complex Gaussian.

    Returns
    -------
    a: numpy array, [dim, dim]
    """
    if rng is None:
        rng = np.random.RandomState()

    g = rng.normal(size=(dim, dim)) + 1j*rng.normal(size=(dim, dim))
    if spectrum is None:
        return hermitian_part(g)

    q, r = np.linalg.qr(g)
    # fix column phases so q is Haar distributed
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    lam = np.asarray(spectrum, dtype=float)
    return hermitian_part(np.dot(q * lam, q.conj().T))


class realFunction(object):
    """
    A real function of a real variable, either closed form or a finite
    table over a declared domain.

    Table lookups match an argument to a domain point within
    numParams().value_tol; a miss raises DomainError.

    Parameters
    ----------
    func: callable, optional
    Closed-form evaluator.

    domain: array-like, optional
    Domain points of a table-backed function.

    values: array-like, optional
    Table values, one per domain point.

    name: str, optional
    Label used in reports and reprs.
    """

    def __init__(self, func=None, domain=None, values=None, name=None):

        if (func is None) == (domain is None):
            raise ValueError("Give either a callable or a table " +
                             "(domain and values).")
        self.func = func
        self.name = name
        if domain is not None:
            self.domain = np.asarray(domain, dtype=float)
            self.values = np.asarray(values, dtype=float)
            if self.domain.shape != self.values.shape:
                raise ValueError("Table domain and values differ in length.")
        else:
            self.domain = None
            self.values = None

        return

    @classmethod
    def from_callable(cls, func, name=None):
        return cls(func=func, name=name)

    @classmethod
    def from_table(cls, domain, values, name=None):
        return cls(domain=domain, values=values, name=name)

    @classmethod
    def identity(cls):
        return cls(func=lambda x: x, name='identity')

    @classmethod
    def polynomial(cls, coeffs, name=None):
        """
        Polynomial with coefficients in ascending order of degree.
        """
        coeffs = [float(c) for c in coeffs]
        poly = np.polynomial.Polynomial(coeffs)
        if name is None:
            name = 'poly%s' % str(coeffs)
        return cls(func=lambda x: float(poly(x)), name=name)

    @property
    def is_table(self):
        return self.domain is not None

    def __call__(self, x):

        x = float(x)
        if self.func is not None:
            return float(self.func(x))

        dist = np.abs(self.domain - x)
        idx = int(np.argmin(dist)) if len(dist) > 0 else -1
        if idx < 0 or dist[idx] > _params.value_tol:
            raise DomainError("Value %r is not in the table domain of %s." %
                              (x, self))
        return float(self.values[idx])

    def map(self, xs):
        """Apply the function elementwise to an array."""
        xs = np.asarray(xs, dtype=float)
        return np.array([self(x) for x in xs.ravel()]).reshape(xs.shape)

    def __mul__(self, other):
        return realFunction(func=lambda x: self(x)*other(x),
                            name='(%s*%s)' % (self, other))

    def __add__(self, other):
        return realFunction(func=lambda x: self(x) + other(x),
                            name='(%s+%s)' % (self, other))

    def __repr__(self):
        if self.name is not None:
            return self.name
        if self.is_table:
            return 'table(%i points)' % len(self.domain)
        return 'realFunction'


class spectralMeasure(object):
    """
    Projection-valued measure of a Hermitian matrix on its finite spectrum.

    Attributes
    ----------
    branches: list of (float, numpy array) tuples
    Distinct eigenvalues in ascending order with their orthogonal
    projectors.

    dim: int
    Dimension of the underlying space.

    tol: float
    Tolerance used when the measure was built.
    """

    def __init__(self, branches, dim, tol, eigenvectors=None):

        self.branches = [(float(lam), np.asarray(proj, dtype=complex))
                         for lam, proj in branches]
        self.dim = int(dim)
        self.tol = float(tol)
        # orthonormal column basis for each branch, when known
        self.eigenvectors = eigenvectors

        return

    @property
    def eigenvalues(self):
        return np.array([lam for lam, _ in self.branches])

    @property
    def projectors(self):
        return [proj for _, proj in self.branches]

    def __len__(self):
        return len(self.branches)

    def projector(self, lam):
        """
        Projector for the eigenvalue within cluster_tol of lam.
        """
        for mu, proj in self.branches:
            if abs(mu - lam) <= _params.cluster_tol:
                return proj
        raise DomainError("%r is not in the spectrum." % lam)

    def reconstruct(self):
        """Return the sum of eigenvalue times projector."""
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for lam, proj in self.branches:
            out += lam*proj
        return out

    def validate(self, source=None, tol=None):
        """
        Check the projector invariants, and the reconstruction of source
        if given.

        Returns
        -------
        failures: list of str
        Human readable descriptions of the invariants that fail. Empty
        when the measure is valid.
        """
        if tol is None:
            tol = self.tol
        failures = []
        eye = np.eye(self.dim)
        lams = self.eigenvalues

        if np.any(np.diff(lams) <= _params.cluster_tol):
            failures.append("eigenvalues not distinct and ascending")

        total = np.zeros((self.dim, self.dim), dtype=complex)
        for i, (lam, proj) in enumerate(self.branches):
            if max_norm(np.dot(proj, proj) - proj) > tol:
                failures.append("projector %i not idempotent" % i)
            if max_norm(proj - proj.conj().T) > tol:
                failures.append("projector %i not Hermitian" % i)
            for j in range(i + 1, len(self.branches)):
                if max_norm(np.dot(proj, self.branches[j][1])) > tol:
                    failures.append("projectors %i, %i not orthogonal" %
                                    (i, j))
            total += proj
        if max_norm(total - eye) > tol:
            failures.append("projectors do not sum to identity")
        if source is not None and \
                max_norm(self.reconstruct() - _as_matrix(source)) > tol:
            failures.append("reconstruction does not match source")

        return failures


def jacobi_eigh(a, max_sweeps=None, threshold=None):
    """
    Cyclic Jacobi eigensolver for a Hermitian matrix.

    Each rotation first removes the phase of the pivot a[p, q] with a
    diagonal unitary and then applies the real symmetric Jacobi rotation.

    Parameters
    ----------
    a: numpy array, [d, d]
    Hermitian input. Not modified.

    max_sweeps: int, optional
    Sweep budget. Defaults to numParams().jacobi_sweeps.

    threshold: float, optional
    Convergence threshold on the largest off-diagonal modulus, relative to
    max(1, |a|_max). Defaults to numParams().jacobi_threshold.

    Returns
    -------
    eigenvalues: numpy array, [d]
    Unsorted real eigenvalues.

    eigenvectors: numpy array, [d, d]
    Unitary matrix whose columns are the matching eigenvectors.
    """
    if max_sweeps is None:
        max_sweeps = _params.jacobi_sweeps
    if threshold is None:
        threshold = _params.jacobi_threshold

    a = np.array(_as_matrix(a), copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    limit = threshold*max(1., max_norm(a))

    for sweep in range(max_sweeps + 1):
        off = a - np.diag(np.diag(a))
        if max_norm(off) <= limit:
            logger.debug("Jacobi converged after %i sweeps (d=%i)", sweep, n)
            return np.real(np.diag(a)).copy(), v
        if sweep == max_sweeps:
            break

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.:
                    continue
                phase = apq/mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app)/(2.*mag)
                if theta >= 0.:
                    t = 1./(theta + np.sqrt(theta**2 + 1.))
                else:
                    t = -1./(-theta + np.sqrt(theta**2 + 1.))
                c = 1./np.sqrt(t**2 + 1.)
                s = t*c
                g = np.array([[c, s],
                              [-s*np.conj(phase), c*np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = np.dot(a[:, idx], g)
                a[idx, :] = np.dot(g.conj().T, a[idx, :])
                a[p, q] = 0.
                a[q, p] = 0.
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = np.dot(v[:, idx], g)

    raise NoConvergence("Jacobi eigensolver did not converge in %i sweeps." %
                        max_sweeps)


def _cluster(eigenvalues, eigenvectors):
    """
    Sort and merge eigenvalues closer than cluster_tol.

    Returns a list of (mean eigenvalue, column basis) pairs.
    """
    order = np.argsort(eigenvalues, kind='mergesort')
    lams = eigenvalues[order]
    vecs = eigenvectors[:, order]

    clusters = []
    start = 0
    for i in range(1, len(lams) + 1):
        if i == len(lams) or lams[i] - lams[i-1] > _params.cluster_tol:
            clusters.append((float(np.mean(lams[start:i])), vecs[:, start:i]))
            start = i
    return clusters


def eigendecompose(a, tol=None):
    """
    Spectral measure of a Hermitian matrix.

    Parameters
    ----------
    a: numpy array, [d, d]
    Hermitian within tol in the max-entry norm.

    tol: float, optional
    Tolerance for the Hermiticity precondition and the measure's
    invariants. Defaults to numParams().default_tol.

    Returns
    -------
    measure: spectralMeasure
    Degenerate eigenvalues (gaps within numParams().cluster_tol) share one
    branch whose projector spans the joint eigenspace.
    """
    if tol is None:
        tol = _params.default_tol
    a = _as_matrix(a)
    herm_err = max_norm(a - a.conj().T)
    if herm_err > tol:
        raise NotHermitian("Matrix is not Hermitian: |A - A^dagger|_max = " +
                           "%.3g > %.3g." % (herm_err, tol))

    lams, vecs = jacobi_eigh(hermitian_part(a))
    clusters = _cluster(lams, vecs)

    branches = [(lam, np.dot(basis, basis.conj().T))
                for lam, basis in clusters]
    return spectralMeasure(branches, a.shape[0], tol,
                           eigenvectors=[basis for _, basis in clusters])


def apply_function(e, u):
    """
    Compute u(A) as the sum of u(lambda_i) P_i over the branches of E^A.

    Raises DomainError if a table-backed u misses an eigenvalue.
    """
    out = np.zeros((e.dim, e.dim), dtype=complex)
    for lam, proj in e.branches:
        out += u(lam)*proj
    return hermitian_part(out)


def pushforward_check(e, u, tol=None):
    """
    Verify E^{u(A)}(mu) = E^A(u^{-1}(mu)) on every spectral atom of u(A).

    Parameters
    ----------
    e: spectralMeasure
    Spectral measure of A.

    u: realFunction or callable
    Defined on the spectrum of e.

    tol: float, optional
    Max-entry tolerance on projector differences.

    Returns
    -------
    ok: bool
    """
    if tol is None:
        tol = _params.default_tol
    images = np.array([u(lam) for lam in e.eigenvalues])
    e_u = eigendecompose(apply_function(e, u), max(tol, e.tol))

    covered = np.zeros(len(images), dtype=bool)
    for mu, proj in e_u.branches:
        match = np.abs(images - mu) <= _params.value_tol
        if not np.any(match):
            logger.debug("Eigenvalue %r of u(A) has no preimage", mu)
            return False
        covered |= match
        expected = sum(p for p, m in zip(e.projectors, match) if m)
        if max_norm(proj - expected) > tol:
            logger.debug("Projector of %r differs from the pulled back " +
                         "projector by %.3g", mu, max_norm(proj - expected))
            return False

    return bool(np.all(covered))


def commutes(a, b, tol=None):
    """True iff |ab - ba|_max <= tol."""
    if tol is None:
        tol = _params.default_tol
    a = _as_matrix(a)
    b = _as_matrix(b)
    if a.shape != b.shape:
        raise DimMismatch("Cannot compare %s and %s matrices." %
                          (str(a.shape), str(b.shape)))
    return max_norm(np.dot(a, b) - np.dot(b, a)) <= tol


def common_generator(ops, tol=None):
    """
    Represent pairwise commuting Hermitian matrices as functions of one.

    The joint eigenbasis is built by recursive splitting: diagonalize the
    first operator, then within each eigenspace diagonalize the compression
    of the next one, and so on. The generator is A = sum_k k Pi_k over the
    joint eigenspaces Pi_k, k = 0, 1, 2, ...

    Parameters
    ----------
    ops: list of numpy arrays, [d, d]
    Hermitian and pairwise commuting within tol.

    tol: float, optional
    Tolerance for the commutation test and the reconstructions.

    Returns
    -------
    a: numpy array, [d, d]
    The generator, with one distinct eigenvalue per joint eigenspace.

    us: list of realFunction
    Table-backed functions on {0, 1, ...} with u_j(a) = ops[j].
    """
    if tol is None:
        tol = _params.default_tol
    ops = [_as_matrix(op) for op in ops]
    if len(ops) == 0:
        raise ValueError("Need at least one operator.")
    dim = ops[0].shape[0]

    for i, op in enumerate(ops):
        if op.shape != (dim, dim):
            raise DimMismatch("Operator %i has shape %s, expected %s." %
                              (i, str(op.shape), str((dim, dim))))
        if not is_hermitian(op, tol):
            raise NotHermitian("Operator %i is not Hermitian." % i)
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if not commutes(ops[i], ops[j], tol):
                raise NotCommuting("Operators %i and %i do not commute." %
                                   (i, j))

    # each subspace carries its basis and the eigenvalues seen so far
    subspaces = [(np.eye(dim, dtype=complex), [])]
    for op in ops:
        refined = []
        for basis, labels in subspaces:
            compressed = hermitian_part(np.dot(basis.conj().T,
                                               np.dot(op, basis)))
            lams, vecs = jacobi_eigh(compressed)
            for lam, sub in _cluster(lams, vecs):
                refined.append((np.dot(basis, sub), labels + [lam]))
        subspaces = refined

    generator = np.zeros((dim, dim), dtype=complex)
    for k, (basis, _) in enumerate(subspaces):
        generator += k*np.dot(basis, basis.conj().T)

    domain = np.arange(len(subspaces), dtype=float)
    us = [realFunction.from_table(domain,
                                  [labels[j] for _, labels in subspaces],
                                  name='u%i' % (j + 1))
          for j in range(len(ops))]

    e = eigendecompose(generator, tol)
    for j, (op, u) in enumerate(zip(ops, us)):
        err = max_norm(apply_function(e, u) - op)
        if err > max(tol, _params.value_tol):
            raise NoConvergence("Reconstruction of operator %i failed " % j +
                                "(error %.3g)." % err)

    logger.info("Common generator for %i operators has %i joint " +
                "eigenspaces", len(ops), len(subspaces))

    return hermitian_part(generator), us
