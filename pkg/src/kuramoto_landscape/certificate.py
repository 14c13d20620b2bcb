"""Closed-form synchronization certificate for dense graphs.

The certificate excludes non-synchronized local maxima of the coupling energy
on graphs whose minimum degree fraction mu is large enough.  It reduces to
three scalar inequalities in (mu, alpha, epsilon, delta): a cone-angle bound
(condition 1), a sign condition on the Hessian probe coefficient (condition
2), and a comparison of two lower bounds for the right-cone occupation
(condition 3).  Verifying them over the whole (alpha, mu) rectangle
[0, 0.0537] x [0.788897, 0.794] with epsilon = 0.5, delta = 0.88 certifies
the 0.7889 synchronization threshold.

Two verification modes are provided: a vectorized floating-point grid sweep,
and a hardened mode that re-checks each grid cell with outward-rounded
interval arithmetic, subdividing until every cell verdict is conclusive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .intervals import Interval, IntervalDomainError

ALPHA_BRANCH_LIMIT = 0.0537
DEFAULT_ALPHA_RANGE = (0.0, ALPHA_BRANCH_LIMIT)
DEFAULT_MU_RANGE = (0.788897, 0.794)
DEFAULT_EPSILON = 0.5
DEFAULT_DELTA = 0.88

#: Reference worst-case margins the three conditions are known to satisfy
#: over the default parameter rectangle: cond1 < 0.46, cond2 < -0.05,
#: cond3 margin > 0.004.
REFERENCE_MARGINS = (0.46, -0.05, 0.004)

#: A strict inequality only counts as satisfied in floating-point mode if
#: the margin exceeds this slack.
STRICT_TOL = 1e-9


class RegimeViolationError(ValueError):
    """The certificate's standing assumptions fail at these parameters
    (typically the denominator 1/2 - (2 - alpha)(1 - mu) is not positive)."""


class InfeasibleError(RuntimeError):
    """No (epsilon, delta) pair satisfies all three conditions."""


def s_delta(delta: float) -> float:
    """Sine envelope for near-extremal non-edge pairs.

    If |cos(x) - cos^2(x)| >= 2 - delta then |sin(x)| <= s_delta, with
    s_delta = sqrt(sqrt(9 - 4*delta) - 3 + 2*delta) / sqrt(2).  Monotone
    increasing on [0, 1]; valid for 0 <= delta < 7/4.
    """
    if not 0.0 <= delta < 1.75:
        raise ValueError(f"delta must be in [0, 7/4), got {delta}")
    return math.sqrt(math.sqrt(9.0 - 4.0 * delta) - 3.0 + 2.0 * delta) / math.sqrt(2.0)


def lxb_r_lower_bound(mu: float, n: int) -> float:
    """Finite-n lower bound on |r|^2: (2*mu - 3/2)n^2 + 2(1 - mu)n.

    May be negative for small mu; callers must check positivity.
    """
    if not 0.0 < mu <= 1.0:
        raise ValueError(f"mu must be in (0, 1], got {mu}")
    return (2.0 * mu - 1.5) * n * n + 2.0 * (1.0 - mu) * n


def lxb_threshold() -> float:
    """Asymptotic density threshold 1 - (sqrt(2) - 1)/2 ~= 0.7929 from the
    order-parameter argument alone (root of 2x^2 + 2x - 1/2, x = 1 - mu)."""
    return 1.0 - (math.sqrt(2.0) - 1.0) / 2.0


def alpha_branch_threshold(alpha: float) -> float:
    """Density threshold when the non-edge sum deficit is alpha.

    Positive root of 2x^2 + (2 - alpha)x - 1/2 = 0 with x = 1 - mu; the
    order-parameter bound tightens to |r|^2 >= (1/2 - (2-alpha)(1-mu))n^2.
    At alpha = 0 this coincides with lxb_threshold().
    """
    if not 0.0 <= alpha <= 2.0:
        raise ValueError(f"alpha must be in [0, 2], got {alpha}")
    b = 2.0 - alpha
    x = (-b + math.sqrt(b * b + 4.0)) / 4.0
    return 1.0 - x


@dataclass(frozen=True)
class CertificateParams:
    """Scalar knobs of the certificate, ordered alpha < epsilon < delta < 1."""

    mu: float
    alpha: float
    epsilon: float
    delta: float

    def __post_init__(self):
        if not 0.0 < self.mu <= 1.0:
            raise ValueError(f"mu must be in (0, 1], got {self.mu}")
        if not 0.0 <= self.alpha <= 2.0:
            raise ValueError(f"alpha must be in [0, 2], got {self.alpha}")
        if not self.alpha < self.epsilon < self.delta < 1.0:
            raise ValueError(
                f"need alpha < epsilon < delta < 1, got "
                f"({self.alpha}, {self.epsilon}, {self.delta})"
            )


@dataclass(frozen=True)
class CertificateEvaluation:
    """All intermediate quantities and verdicts of one certificate check."""

    params: CertificateParams
    s_delta: float
    sin2_phi: float
    phi: float
    cond1_value: float
    cond2_value: float
    cond3_lhs: float
    cond3_rhs: float
    cond3_margin: float
    gamma2_lower_bound: float
    cond1_ok: bool
    cond2_ok: bool
    cond3_ok: bool

    @property
    def passed(self) -> bool:
        return self.cond1_ok and self.cond2_ok and self.cond3_ok


def _cone_gain(epsilon: float, delta: float) -> float:
    """(s_delta + (epsilon/delta)(1 - s_delta))^2, the squared sine budget
    per unit (1 - mu)."""
    sd = s_delta(delta)
    return (sd + (epsilon / delta) * (1.0 - sd)) ** 2


def evaluate_certificate(p: CertificateParams) -> CertificateEvaluation:
    """Evaluate the three certificate conditions at a single parameter point.

    Condition 1: sin^2(phi) = gain * (1-mu)^2 / (1/2 - (2-alpha)(1-mu)) < 1/2,
    so the cone half-angle phi stays below 45 degrees.
    Condition 2: cos(pi - 2*phi) + alpha/(epsilon - alpha) < 0.
    Condition 3: the occupation lower bound for the right cone exceeds the
    level that contradicts Hessian positivity.
    """
    denom = 0.5 - (2.0 - p.alpha) * (1.0 - p.mu)
    if denom <= 0.0:
        raise RegimeViolationError(
            f"denominator 1/2 - (2 - alpha)(1 - mu) = {denom:.6g} is not positive; "
            f"the certificate does not apply at mu={p.mu}, alpha={p.alpha}"
        )
    sd = s_delta(p.delta)
    sin2 = _cone_gain(p.epsilon, p.delta) * (1.0 - p.mu) ** 2 / denom
    phi = math.asin(math.sqrt(sin2)) if sin2 < 1.0 else math.nan
    cos_pi_2phi = 2.0 * sin2 - 1.0
    cos_phi = math.sqrt(1.0 - sin2) if sin2 < 1.0 else math.nan
    ratio = p.alpha / (p.epsilon - p.alpha)
    cond2 = cos_pi_2phi + ratio
    sqrt_denom = math.sqrt(denom)
    lhs = 1.0 - p.alpha / p.epsilon - (1.0 - sqrt_denom) / (1.0 + cos_phi)
    rhs = (1.0 - p.mu) * cos_pi_2phi / cond2 if cond2 != 0.0 else math.inf
    gamma2_lb = (cos_phi + sqrt_denom) / (1.0 + cos_phi) - p.alpha / p.epsilon
    margin = lhs - rhs
    return CertificateEvaluation(
        params=p,
        s_delta=sd,
        sin2_phi=sin2,
        phi=phi,
        cond1_value=sin2,
        cond2_value=cond2,
        cond3_lhs=lhs,
        cond3_rhs=rhs,
        cond3_margin=margin,
        gamma2_lower_bound=gamma2_lb,
        cond1_ok=bool(0.5 - sin2 > STRICT_TOL),
        cond2_ok=bool(-cond2 > STRICT_TOL),
        cond3_ok=bool(math.isfinite(margin) and margin > STRICT_TOL),
    )


def gamma1_zero_branch(mu: float, alpha: float, epsilon: float) -> float:
    """Sine bound when the left cone is empty:
    sqrt(2)(1 - mu) / (1 - (1 + sqrt(2)) * alpha/epsilon).

    A value below 1/sqrt(2) forces full synchronization in this branch.
    """
    denom = 1.0 - (1.0 + math.sqrt(2.0)) * alpha / epsilon
    if denom <= 0.0:
        raise RegimeViolationError(
            f"gamma1-zero branch needs (1+sqrt(2))*alpha/epsilon < 1, "
            f"got alpha={alpha}, epsilon={epsilon}"
        )
    return math.sqrt(2.0) * (1.0 - mu) / denom


def contradiction_condition(
    gamma1: float,
    gamma2: float,
    mu: float,
    alpha: float,
    epsilon: float,
    sin2_phi: float,
) -> float:
    """Value of gamma1*(gamma2 - (1-mu))*cos(pi - 2*phi)
    + gamma1*gamma2*alpha/(epsilon - alpha).

    A negative value means the cone probe vector makes the Hessian quadratic
    form negative, so no local maximum can have this cone profile.
    """
    if epsilon <= alpha:
        raise ValueError("need epsilon > alpha")
    cos_pi_2phi = 2.0 * sin2_phi - 1.0
    return gamma1 * (gamma2 - (1.0 - mu)) * cos_pi_2phi + gamma1 * gamma2 * alpha / (
        epsilon - alpha
    )


# ---------------------------------------------------------------------------
# Grid sweep (floating point, vectorized)
# ---------------------------------------------------------------------------


@dataclass
class SweepReport:
    """Worst-case condition values over an (alpha, mu) grid."""

    alpha_values: np.ndarray
    mu_values: np.ndarray
    epsilon: float
    delta: float
    cond1: np.ndarray  # shape (n_alpha, n_mu)
    cond2: np.ndarray
    cond3_margin: np.ndarray
    regime_ok: np.ndarray
    pass_mask: np.ndarray
    all_pass: bool
    worst: dict = field(default_factory=dict)
    reference_margins: tuple = REFERENCE_MARGINS
    margins_ok: dict = field(default_factory=dict)
    margin_violations: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "delta": self.delta,
            "grid_shape": list(self.cond1.shape),
            "alpha_range": [float(self.alpha_values[0]), float(self.alpha_values[-1])],
            "mu_range": [float(self.mu_values[0]), float(self.mu_values[-1])],
            "all_pass": bool(self.all_pass),
            "regime_violations": int((~self.regime_ok).sum()),
            "worst": self.worst,
            "reference_margins": {
                "cond1_max_allowed": self.reference_margins[0],
                "cond2_max_allowed": self.reference_margins[1],
                "cond3_margin_min_allowed": self.reference_margins[2],
            },
            "margins_ok": self.margins_ok,
            "margin_violation_count": len(self.margin_violations),
        }

    def write_csv(self, path) -> None:
        """Full grid as CSV: alpha, mu, cond1, cond2, cond3_margin."""
        with open(path, "w") as fh:
            fh.write("alpha,mu,cond1,cond2,cond3_margin\n")
            for i, a in enumerate(self.alpha_values):
                for j, m in enumerate(self.mu_values):
                    fh.write(
                        f"{a!r},{m!r},{self.cond1[i, j]!r},"
                        f"{self.cond2[i, j]!r},{self.cond3_margin[i, j]!r}\n"
                    )


def _grid_conditions(alphas, mus, epsilon, delta):
    """Vectorized condition values on the alpha x mu grid (nan off-regime)."""
    aa, mm = np.meshgrid(alphas, mus, indexing="ij")
    one_minus_mu = 1.0 - mm
    denom = 0.5 - (2.0 - aa) * one_minus_mu
    regime_ok = denom > 0.0
    gain = _cone_gain(epsilon, delta)
    with np.errstate(divide="ignore", invalid="ignore"):
        c1 = np.where(regime_ok, gain * one_minus_mu**2 / denom, np.nan)
        cos_phi = np.sqrt(np.where(c1 < 1.0, 1.0 - c1, np.nan))
        cos_pi_2phi = 2.0 * c1 - 1.0
        c2 = cos_pi_2phi + aa / (epsilon - aa)
        lhs = 1.0 - aa / epsilon - (1.0 - np.sqrt(np.where(regime_ok, denom, np.nan))) / (
            1.0 + cos_phi
        )
        rhs = one_minus_mu * cos_pi_2phi / c2
        margin = lhs - rhs
    return regime_ok, c1, c2, margin


def sweep_certificate(
    mu_range: tuple[float, float] = DEFAULT_MU_RANGE,
    alpha_range: tuple[float, float] = DEFAULT_ALPHA_RANGE,
    epsilon: float = DEFAULT_EPSILON,
    delta: float = DEFAULT_DELTA,
    grid_steps: tuple[int, int] | int = (500, 500),
    reference_margins: tuple = REFERENCE_MARGINS,
) -> SweepReport:
    """Evaluate the three conditions on a full (alpha, mu) grid.

    Reports per-condition worst cases with their grid locations, the overall
    pass verdict, and whether the reference margins hold everywhere.  Regime
    violations at grid points are recorded, not fatal.
    """
    if isinstance(grid_steps, int):
        grid_steps = (grid_steps, grid_steps)
    na, nm = grid_steps
    if na < 2 or nm < 2:
        raise ValueError("need at least 2 grid steps per axis")
    alphas = np.linspace(alpha_range[0], alpha_range[1], na)
    mus = np.linspace(mu_range[0], mu_range[1], nm)
    regime_ok, c1, c2, margin = _grid_conditions(alphas, mus, epsilon, delta)

    finite = regime_ok & np.isfinite(c1) & np.isfinite(c2) & np.isfinite(margin)
    pass_mask = (
        finite
        & (0.5 - c1 > STRICT_TOL)
        & (-c2 > STRICT_TOL)
        & (margin > STRICT_TOL)
    )
    all_pass = bool(pass_mask.all())

    def argworst(arr, minimize):
        masked = np.where(finite, arr, -np.inf if not minimize else np.inf)
        idx = np.unravel_index(masked.argmin() if minimize else masked.argmax(), arr.shape)
        return {
            "value": float(arr[idx]),
            "alpha": float(alphas[idx[0]]),
            "mu": float(mus[idx[1]]),
        }

    worst = {}
    margins_ok = {}
    violations = []
    if finite.any():
        worst = {
            "cond1_max": argworst(c1, minimize=False),
            "cond2_max": argworst(c2, minimize=False),
            "cond3_margin_min": argworst(margin, minimize=True),
        }
        m1, m2, m3 = reference_margins
        margins_ok = {
            "cond1": bool(worst["cond1_max"]["value"] < m1),
            "cond2": bool(worst["cond2_max"]["value"] < m2),
            "cond3_margin": bool(worst["cond3_margin_min"]["value"] > m3),
        }
        bad = finite & ((c1 >= m1) | (c2 >= m2) | (margin <= m3))
        for i, j in zip(*np.nonzero(bad)):
            violations.append({"alpha": float(alphas[i]), "mu": float(mus[j])})
    else:
        all_pass = False

    return SweepReport(
        alpha_values=alphas,
        mu_values=mus,
        epsilon=epsilon,
        delta=delta,
        cond1=c1,
        cond2=c2,
        cond3_margin=margin,
        regime_ok=regime_ok,
        pass_mask=pass_mask,
        all_pass=all_pass,
        worst=worst,
        reference_margins=reference_margins,
        margins_ok=margins_ok,
        margin_violations=violations,
    )


# ---------------------------------------------------------------------------
# Hardened mode (interval arithmetic with subdivision)
# ---------------------------------------------------------------------------


@dataclass
class HardenedReport:
    """Outcome of interval re-verification over a cell grid."""

    grid_shape: tuple[int, int]
    epsilon: float
    delta: float
    reference_margins: tuple
    cells_pass: int
    cells_fail: int
    cells_inconclusive: int
    boxes_examined: int
    max_depth_reached: int

    @property
    def conclusive_pass(self) -> bool:
        return self.cells_fail == 0 and self.cells_inconclusive == 0

    def to_json_dict(self) -> dict:
        return {
            "grid_shape": list(self.grid_shape),
            "epsilon": self.epsilon,
            "delta": self.delta,
            "reference_margins": list(self.reference_margins),
            "cells_pass": self.cells_pass,
            "cells_fail": self.cells_fail,
            "cells_inconclusive": self.cells_inconclusive,
            "boxes_examined": self.boxes_examined,
            "max_depth_reached": self.max_depth_reached,
            "conclusive_pass": self.conclusive_pass,
        }


def _interval_conditions(a: Interval, m: Interval, eps: float, gain: Interval):
    """Interval enclosures of (cond1, cond2, cond3_margin) on a box, or None
    per entry when the enclosure is undefined on the box."""
    one_minus_mu = 1.0 - m
    denom = 0.5 - (2.0 - a) * one_minus_mu
    if denom.lo <= 0.0:
        return None, None, None
    c1 = gain * one_minus_mu.square() / denom
    if c1.hi >= 1.0:
        return c1, None, None
    cos_phi = (1.0 - c1).sqrt()
    cos_pi_2phi = 2.0 * c1 - 1.0
    try:
        c2 = cos_pi_2phi + a / (eps - a)
    except IntervalDomainError:
        return c1, None, None
    if c2.hi >= 0.0:
        return c1, c2, None
    lhs = 1.0 - a / eps - (1.0 - denom.sqrt()) / (1.0 + cos_phi)
    margin = lhs - one_minus_mu * cos_pi_2phi / c2
    return c1, c2, margin


def _verify_box(a, m, eps, gain, margins, depth, max_depth, stats):
    stats["boxes"] += 1
    stats["depth"] = max(stats["depth"], depth)
    c1, c2, margin = _interval_conditions(a, m, eps, gain)
    m1, m2, m3 = margins
    if c1 is not None and c1.lo >= m1:
        return "fail"
    if c2 is not None and c2.lo >= m2:
        return "fail"
    if margin is not None and margin.hi <= m3:
        return "fail"
    if (
        c1 is not None
        and c2 is not None
        and margin is not None
        and c1.hi < m1
        and c2.hi < m2
        and margin.lo > m3
    ):
        return "pass"
    if depth >= max_depth:
        return "inconclusive"
    # Split the relatively wider axis.
    if a.width * stats["m_scale"] >= m.width * stats["a_scale"]:
        parts = [(half, m) for half in a.split()]
    else:
        parts = [(a, half) for half in m.split()]
    results = [
        _verify_box(aa, mm, eps, gain, margins, depth + 1, max_depth, stats)
        for aa, mm in parts
    ]
    if any(r == "fail" for r in results):
        return "fail"
    if any(r == "inconclusive" for r in results):
        return "inconclusive"
    return "pass"


def verify_certificate_hardened(
    mu_range: tuple[float, float] = DEFAULT_MU_RANGE,
    alpha_range: tuple[float, float] = DEFAULT_ALPHA_RANGE,
    epsilon: float = DEFAULT_EPSILON,
    delta: float = DEFAULT_DELTA,
    grid_steps: tuple[int, int] | int = (50, 50),
    reference_margins: tuple = REFERENCE_MARGINS,
    max_depth: int = 16,
) -> HardenedReport:
    """Re-verify the sweep with directed-rounding interval arithmetic.

    The (alpha, mu) rectangle is covered by a cell grid; each cell is
    evaluated as an interval box and subdivided until the verdict against
    the reference margins is conclusive (or max_depth is hit).  Because the
    cells tile the whole rectangle, a conclusive pass covers every real
    parameter point in range, not just grid nodes.
    """
    if isinstance(grid_steps, int):
        grid_steps = (grid_steps, grid_steps)
    na, nm = grid_steps
    d = Interval.point(delta)
    sd = ((9.0 - 4.0 * d).sqrt() - 3.0 + 2.0 * d).sqrt() / Interval.point(2.0).sqrt()
    gain = (sd + (Interval.point(epsilon) / d) * (1.0 - sd)).square()
    a_edges = np.linspace(alpha_range[0], alpha_range[1], na + 1)
    m_edges = np.linspace(mu_range[0], mu_range[1], nm + 1)
    stats = {
        "boxes": 0,
        "depth": 0,
        "a_scale": max(a_edges[1] - a_edges[0], 1e-300),
        "m_scale": max(m_edges[1] - m_edges[0], 1e-300),
    }
    counts = {"pass": 0, "fail": 0, "inconclusive": 0}
    for i in range(na):
        for j in range(nm):
            verdict = _verify_box(
                Interval(a_edges[i], a_edges[i + 1]),
                Interval(m_edges[j], m_edges[j + 1]),
                epsilon,
                gain,
                reference_margins,
                0,
                max_depth,
                stats,
            )
            counts[verdict] += 1
    return HardenedReport(
        grid_shape=(na, nm),
        epsilon=epsilon,
        delta=delta,
        reference_margins=reference_margins,
        cells_pass=counts["pass"],
        cells_fail=counts["fail"],
        cells_inconclusive=counts["inconclusive"],
        boxes_examined=stats["boxes"],
        max_depth_reached=stats["depth"],
    )


# ---------------------------------------------------------------------------
# Parameter optimization
# ---------------------------------------------------------------------------


@dataclass
class OptimizationResult:
    """Best (epsilon, delta) found for a density mu and alpha budget."""

    mu: float
    alpha_max: float
    best_epsilon: float
    best_delta: float
    best_objective: float
    worst_cond1: float
    worst_cond2: float
    worst_cond3_margin: float
    reference_point_objective: float | None
    reference_point_feasible: bool
    reference_point_near_local_optimum: bool
    min_feasible_mu: float

    def to_json_dict(self) -> dict:
        return {
            "mu": self.mu,
            "alpha_max": self.alpha_max,
            "best_epsilon": self.best_epsilon,
            "best_delta": self.best_delta,
            "best_objective": self.best_objective,
            "worst_cond1": self.worst_cond1,
            "worst_cond2": self.worst_cond2,
            "worst_cond3_margin": self.worst_cond3_margin,
            "reference_point_objective": self.reference_point_objective,
            "reference_point_feasible": self.reference_point_feasible,
            "reference_point_near_local_optimum": self.reference_point_near_local_optimum,
            "min_feasible_mu": self.min_feasible_mu,
        }


def _objective(mu: float, alpha_max: float, epsilon: float, delta: float, n_alpha: int = 65):
    """Worst-case min(1/2 - cond1, -cond2, cond3_margin) over alpha in
    [0, alpha_max], or None when infeasible somewhere on the range."""
    if not (alpha_max < epsilon < delta < 1.0):
        return None
    alphas = np.linspace(0.0, alpha_max, n_alpha)
    regime_ok, c1, c2, margin = _grid_conditions(alphas, np.array([mu]), epsilon, delta)
    if not regime_ok.all():
        return None
    c1, c2, margin = c1[:, 0], c2[:, 0], margin[:, 0]
    if not (np.isfinite(c1).all() and np.isfinite(c2).all() and np.isfinite(margin).all()):
        return None
    return (
        float(np.min(np.minimum(np.minimum(0.5 - c1, -c2), margin))),
        float(c1.max()),
        float(c2.max()),
        float(margin.min()),
    )


def _best_pair(mu, alpha_max, eps_lo, eps_hi, del_lo, del_hi, steps=21):
    best = None
    for eps in np.linspace(eps_lo, eps_hi, steps):
        for dlt in np.linspace(del_lo, del_hi, steps):
            res = _objective(mu, alpha_max, float(eps), float(dlt))
            if res is not None and (best is None or res[0] > best[2][0]):
                best = (float(eps), float(dlt), res)
    return best


def _feasible(mu: float, alpha_max: float) -> bool:
    best = _best_pair(mu, alpha_max, alpha_max + 1e-4, 0.99, alpha_max + 2e-4, 0.999, steps=9)
    return best is not None and best[2][0] > STRICT_TOL


def optimize_parameters(mu: float, alpha_max: float) -> OptimizationResult:
    """Coordinate-refined grid search for the (epsilon, delta) pair that
    maximizes the smallest of the three condition margins over the alpha
    budget, plus a bisection for the smallest feasible mu."""
    if not 0.0 < alpha_max < 2.0:
        raise ValueError(f"alpha_max must be in (0, 2), got {alpha_max}")
    best = _best_pair(mu, alpha_max, alpha_max + 1e-4, 0.99, alpha_max + 2e-4, 0.999, steps=25)
    if best is None or best[2][0] <= STRICT_TOL:
        raise InfeasibleError(f"no feasible (epsilon, delta) at mu={mu}, alpha_max={alpha_max}")
    for _ in range(3):
        eps0, dlt0, _res = best
        span_e = 0.05
        span_d = 0.05
        refined = _best_pair(
            mu,
            alpha_max,
            max(alpha_max + 1e-4, eps0 - span_e),
            min(0.999, eps0 + span_e),
            max(alpha_max + 2e-4, dlt0 - span_d),
            min(0.9999, dlt0 + span_d),
            steps=21,
        )
        if refined is not None and refined[2][0] > best[2][0]:
            best = refined
        else:
            break

    ref_obj = None
    ref_feasible = False
    ref_near_opt = False
    if alpha_max < DEFAULT_EPSILON:
        res = _objective(mu, alpha_max, DEFAULT_EPSILON, DEFAULT_DELTA)
        if res is not None:
            ref_obj = res[0]
            ref_feasible = res[0] > STRICT_TOL
            h = 1e-2
            neighbors = []
            for de in (-h, 0.0, h):
                for dd in (-h, 0.0, h):
                    if de == 0.0 and dd == 0.0:
                        continue
                    r = _objective(mu, alpha_max, DEFAULT_EPSILON + de, DEFAULT_DELTA + dd)
                    if r is not None:
                        neighbors.append(r[0])
            ref_near_opt = bool(neighbors) and ref_obj + 1e-6 >= max(neighbors)

    lo, hi = 0.75, mu
    if _feasible(mu, alpha_max):
        for _ in range(18):
            mid = 0.5 * (lo + hi)
            if _feasible(mid, alpha_max):
                hi = mid
            else:
                lo = mid
    min_feasible_mu = hi

    eps_b, dlt_b, (obj, w1, w2, w3) = best
    return OptimizationResult(
        mu=mu,
        alpha_max=alpha_max,
        best_epsilon=eps_b,
        best_delta=dlt_b,
        best_objective=obj,
        worst_cond1=w1,
        worst_cond2=w2,
        worst_cond3_margin=w3,
        reference_point_objective=ref_obj,
        reference_point_feasible=ref_feasible,
        reference_point_near_local_optimum=ref_near_opt,
        min_feasible_mu=min_feasible_mu,
    )
