from builtins import object

__all__ = ["numParams"]


class numParams(object):
    """
    A class to store the numerical tolerances and caps used throughout
    the hvks code.

    All spectra in scope are subsets of small integers, so the clustering
    thresholds sit well above solver noise and well below unit gaps.
    """

    def __init__(self):
        # max-entry norm tolerances
        self._default_tol = 1.0e-10
        self._cluster_tol = 1.0e-8
        self._value_tol = 1.0e-8
        self._norm_tol = 1.0e-12
        self._prob_clamp = 1.0e-12
        self._boundary_tol = 1.0e-12

        # cyclic Jacobi solver
        self._jacobi_sweeps = 100
        self._jacobi_threshold = 1.0e-12

        # size caps
        self._max_points = 10**6
        self._max_search_variables = 20

        # sphere model defaults
        self._quadrature_nodes = 64
        self._montecarlo_samples = 100000

    @property
    def default_tol(self):
        """
        default tolerance for matrix identities and distribution checks
        """
        return self._default_tol

    @default_tol.setter
    def default_tol(self, value):
        raise RuntimeError('Cannot change the value of default_tol')

    @property
    def cluster_tol(self):
        """
        eigenvalues closer than this are merged into one spectral branch
        """
        return self._cluster_tol

    @cluster_tol.setter
    def cluster_tol(self, value):
        raise RuntimeError('Cannot change the value of cluster_tol')

    @property
    def value_tol(self):
        """
        tolerance for matching value-map entries against eigenvalues
        and against each other
        """
        return self._value_tol

    @value_tol.setter
    def value_tol(self, value):
        raise RuntimeError('Cannot change the value of value_tol')

    @property
    def norm_tol(self):
        """
        tolerance on the 2-norm of pure states and unit vectors
        """
        return self._norm_tol

    @norm_tol.setter
    def norm_tol(self, value):
        raise RuntimeError('Cannot change the value of norm_tol')

    @property
    def prob_clamp(self):
        """
        Born probabilities in [-prob_clamp, 0) are clamped to zero
        """
        return self._prob_clamp

    @prob_clamp.setter
    def prob_clamp(self, value):
        raise RuntimeError('Cannot change the value of prob_clamp')

    @property
    def boundary_tol(self):
        """
        half-width of the equator band assigned to the second eigenvalue
        on the sphere
        """
        return self._boundary_tol

    @boundary_tol.setter
    def boundary_tol(self, value):
        raise RuntimeError('Cannot change the value of boundary_tol')

    @property
    def jacobi_sweeps(self):
        """
        maximum number of cyclic Jacobi sweeps
        """
        return self._jacobi_sweeps

    @jacobi_sweeps.setter
    def jacobi_sweeps(self, value):
        raise RuntimeError('Cannot change the value of jacobi_sweeps')

    @property
    def jacobi_threshold(self):
        """
        off-diagonal convergence threshold, relative to max(1, |A|_max)
        """
        return self._jacobi_threshold

    @jacobi_threshold.setter
    def jacobi_threshold(self, value):
        raise RuntimeError('Cannot change the value of jacobi_threshold')

    @property
    def max_points(self):
        """
        largest product sample space the trivial embedding will enumerate
        """
        return self._max_points

    @max_points.setter
    def max_points(self, value):
        raise RuntimeError('Cannot change the value of max_points')

    @property
    def max_search_variables(self):
        """
        largest number of sign variables the exhaustive search accepts
        """
        return self._max_search_variables

    @max_search_variables.setter
    def max_search_variables(self, value):
        raise RuntimeError('Cannot change the value of ' +
                           'max_search_variables')

    @property
    def quadrature_nodes(self):
        """
        default Gauss-Legendre node count on the sphere
        """
        return self._quadrature_nodes

    @quadrature_nodes.setter
    def quadrature_nodes(self, value):
        raise RuntimeError('Cannot change the value of quadrature_nodes')

    @property
    def montecarlo_samples(self):
        """
        default Monte Carlo sample count on the sphere
        """
        return self._montecarlo_samples

    @montecarlo_samples.setter
    def montecarlo_samples(self, value):
        raise RuntimeError('Cannot change the value of montecarlo_samples')
