"""Energy landscape of phase configurations on a graph.

Everything here is a pure function of an immutable (Graph, PhaseState) pair:
the coupling energy sum_{i,j} a_ij cos(theta_i - theta_j), its gradient-flow
right-hand side, the Hessian and its quadratic form, the complex order
parameter, and the per-configuration diagnostics used by the synchronization
certificate (empirical alpha, good vertices, cone decomposition).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi


class DimensionMismatchError(ValueError):
    """Phase vector length does not match the graph's vertex count."""


class CompleteGraphError(ValueError):
    """Diagnostic undefined: the graph has no non-edges (mu = 1)."""


class UndefinedOrientationError(ValueError):
    """Order parameter is (numerically) zero, so no reference phase exists."""


def wrap_angles(theta: np.ndarray) -> np.ndarray:
    """Reduce angles to [0, 2*pi)."""
    return np.mod(theta, TWO_PI)


@dataclass(frozen=True)
class PhaseState:
    """Vector of n oscillator phases, stored reduced to [0, 2*pi)."""

    theta: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.theta, dtype=float)
        if t.ndim != 1 or t.size < 1:
            raise ValueError("theta must be a nonempty 1-D array")
        if not np.all(np.isfinite(t)):
            raise ValueError("theta contains non-finite entries")
        t = wrap_angles(t)
        t.setflags(write=False)
        object.__setattr__(self, "theta", t)

    @property
    def n(self) -> int:
        return self.theta.size

    @staticmethod
    def constant(n: int, value: float = 0.0) -> "PhaseState":
        return PhaseState(np.full(n, value))

    @staticmethod
    def twisted(n: int, q: int = 1) -> "PhaseState":
        """Twisted state theta_j = 2*pi*q*j/n (winding number q)."""
        return PhaseState(TWO_PI * q * np.arange(n) / n)

    @staticmethod
    def random(n: int, rng: np.random.Generator) -> "PhaseState":
        return PhaseState(rng.uniform(0.0, TWO_PI, size=n))


@dataclass(frozen=True)
class OrderParameter:
    """Complex sum r = sum_j exp(i*theta_j), with magnitude and phase."""

    re: float
    im: float
    magnitude: float
    phase: float
    phase_defined: bool


@dataclass(frozen=True)
class ConeDecomposition:
    """Vertices split into two antipodal cones of half-angle phi plus outliers.

    gamma1 and gamma2 are the left/right cone occupation fractions after the
    reflection convention gamma2 >= gamma1.  ``side`` records the per-vertex
    label after reflection: +1 right cone, -1 left cone, 0 outlier.
    """

    phi: float
    right_count: int
    left_count: int
    outlier_count: int
    gamma1: float
    gamma2: float
    reference_phase: float
    reflected: bool
    side: np.ndarray


def _check_dims(g, s: PhaseState) -> None:
    if s.n != g.n:
        raise DimensionMismatchError(f"state has {s.n} phases but graph has {g.n} vertices")


def _diff_matrix(s: PhaseState) -> np.ndarray:
    """Pairwise differences theta_i - theta_j."""
    return s.theta[:, None] - s.theta[None, :]


def energy(g, s: PhaseState) -> float:
    """Coupling energy sum_{i,j} a_ij cos(theta_i - theta_j) (ordered pairs)."""
    _check_dims(g, s)
    return float(np.sum(np.cos(_diff_matrix(s)), where=g.adjacency))


def gradient_flow_rhs(g, s: PhaseState) -> np.ndarray:
    """d theta_i / dt = -sum_j a_ij sin(theta_i - theta_j).

    Equals half the gradient of the energy, so the flow ascends it.
    """
    _check_dims(g, s)
    return _rhs_raw(g.adjacency, s.theta)


def _rhs_raw(adjacency: np.ndarray, theta: np.ndarray) -> np.ndarray:
    d = theta[:, None] - theta[None, :]
    return -np.sum(np.sin(d), axis=1, where=adjacency)


def order_parameter(s: PhaseState) -> OrderParameter:
    z = np.exp(1j * s.theta).sum()
    mag = abs(z)
    defined = mag >= 1e-12 * s.n
    phase = float(wrap_angles(np.angle(z))) if defined else 0.0
    return OrderParameter(float(z.real), float(z.imag), float(mag), phase, defined)


def hessian_matrix(g, s: PhaseState) -> np.ndarray:
    """Hessian of the energy: H_ij = 2 a_ij cos(theta_i - theta_j) off the
    diagonal, H_ii = -2 sum_j a_ij cos(theta_i - theta_j).

    Every row sums to zero identically (global rotation symmetry), so H
    always has the eigenvector of all ones with eigenvalue 0.
    """
    _check_dims(g, s)
    c = np.where(g.adjacency, np.cos(_diff_matrix(s)), 0.0)
    h = 2.0 * c
    np.fill_diagonal(h, -2.0 * c.sum(axis=1))
    return h


def hessian_quadratic_form(g, s: PhaseState, w: np.ndarray) -> float:
    """Q(w) = sum_{i,j} a_ij cos(theta_i - theta_j) (w_i - w_j)^2 = -w^T H w.

    Q(w) >= 0 for all w is the second-order necessary condition for a local
    maximum of the energy.
    """
    _check_dims(g, s)
    w = np.asarray(w, dtype=float)
    if w.shape != (g.n,):
        raise DimensionMismatchError(f"probe vector has shape {w.shape}, expected ({g.n},)")
    c = np.cos(_diff_matrix(s))
    dw = w[:, None] - w[None, :]
    return float(np.sum(c * dw * dw, where=g.adjacency))


def _nonedge_cos_terms(g, s: PhaseState) -> np.ndarray:
    """|cos(theta_i - theta_j) - cos^2(theta_i - theta_j)| on non-edges, else 0."""
    c = np.cos(_diff_matrix(s))
    terms = np.abs(c - c * c)
    mask = ~g.adjacency
    np.fill_diagonal(mask, False)
    return np.where(mask, terms, 0.0)


def empirical_alpha(g, s: PhaseState) -> float:
    """Scalar alpha defined by equating the non-edge |cos - cos^2| sum to
    (2 - alpha)(1 - mu)(n - 1)n, with mu the graph's min-degree fraction.

    Always <= 2; can be negative for arbitrary states (reported raw).
    """
    from .graphs import min_degree_fraction

    _check_dims(g, s)
    mu = min_degree_fraction(g)
    if mu >= 1.0:
        raise CompleteGraphError("alpha undefined on a complete graph (no non-edges)")
    total = float(_nonedge_cos_terms(g, s).sum())
    return 2.0 - total / ((1.0 - mu) * (g.n - 1) * g.n)


def good_vertices(g, s: PhaseState, epsilon: float) -> np.ndarray:
    """Indices i whose non-neighbor sum of |cos - cos^2| terms is at least
    (2 - epsilon)(1 - mu)(n - 1)."""
    from .graphs import min_degree_fraction

    _check_dims(g, s)
    if not 0.0 < epsilon <= 2.0:
        raise ValueError(f"epsilon must be in (0, 2], got {epsilon}")
    mu = min_degree_fraction(g)
    if mu >= 1.0:
        raise CompleteGraphError("good vertices undefined on a complete graph")
    per_vertex = _nonedge_cos_terms(g, s).sum(axis=1)
    threshold = (2.0 - epsilon) * (1.0 - mu) * (g.n - 1)
    return np.nonzero(per_vertex >= threshold)[0]


def cone_decomposition(
    s: PhaseState, phi: float, reference_phase: float | None = None
) -> ConeDecomposition:
    """Classify each vertex against two antipodal cones of half-angle phi
    around the reference phase (the order-parameter phase by default).

    A vertex is in a cone iff |sin(theta_i - ref)| <= sin(phi) (boundary
    inclusive); the sign of cos(theta_i - ref) picks the side.  If the left
    cone ends up fuller than the right one, the picture is reflected so that
    gamma2 >= gamma1.
    """
    if not 0.0 < phi < np.pi / 4:
        raise ValueError(f"phi must be in (0, pi/4), got {phi}")
    if reference_phase is None:
        op = order_parameter(s)
        if not op.phase_defined:
            raise UndefinedOrientationError(
                "order parameter vanishes; supply an explicit reference phase"
            )
        reference_phase = op.phase
    d = s.theta - reference_phase
    in_cone = np.abs(np.sin(d)) <= np.sin(phi)
    cos_d = np.cos(d)
    right = in_cone & (cos_d > 0)
    left = in_cone & (cos_d < 0)
    side = np.where(right, 1, np.where(left, -1, 0))
    reflected = left.sum() > right.sum()
    if reflected:
        side = -side
    right_count = int((side == 1).sum())
    left_count = int((side == -1).sum())
    n = s.n
    return ConeDecomposition(
        phi=float(phi),
        right_count=right_count,
        left_count=left_count,
        outlier_count=n - right_count - left_count,
        gamma1=left_count / n,
        gamma2=right_count / n,
        reference_phase=float(reference_phase),
        reflected=bool(reflected),
        side=side,
    )
