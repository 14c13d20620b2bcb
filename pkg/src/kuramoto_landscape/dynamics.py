"""Gradient-flow integration, equilibrium refinement, and classification.

The flow d theta/dt = -sum_j a_ij sin(theta_i - theta_j) ascends the coupling
energy; its stable fixed points are the energy's local maxima.  This module
integrates trajectories with fixed-step RK4, polishes candidate equilibria
with a gauge-fixed damped Newton iteration, classifies them by the Hessian
spectrum, and runs seeded multistart censuses of a graph's landscape.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, field

import numpy as np

from .landscape import (
    ConeDecomposition,
    PhaseState,
    _rhs_raw,
    energy,
    gradient_flow_rhs,
    hessian_matrix,
    order_parameter,
    wrap_angles,
)

GLOBAL_MAX = "global-max"
SPURIOUS_LOCAL_MAX = "spurious-local-max"
SADDLE_OR_UNSTABLE = "saddle-or-unstable"
INCONCLUSIVE = "inconclusive"

SYNC_SPREAD_TOL = 1e-6
DEDUP_TOL = 1e-4


class NumericalBlowupError(RuntimeError):
    """Non-finite state encountered during integration."""


class RefinementFailedError(RuntimeError):
    """Newton polish diverged or hit a singular reduced Hessian."""


class NotAnEquilibriumError(ValueError):
    """Classification requested at a state with too large a gradient residual."""


@dataclass
class TrajectoryMeta:
    """Bookkeeping for one integrated trajectory."""

    converged: bool
    steps: int
    t_final: float
    residual: float
    dt: float
    times: list[float] = field(default_factory=list)
    energies: list[float] = field(default_factory=list)
    order_mags: list[float] = field(default_factory=list)
    phase_sums: list[float] = field(default_factory=list)


@dataclass
class EquilibriumReport:
    """Classified critical point of the energy landscape."""

    state: PhaseState
    gradient_residual: float
    energy: float
    hessian_eigenvalues: np.ndarray
    classification: str
    order_magnitude: float
    cone: ConeDecomposition | None = None
    hit_count: int = 1


def stability_dt_cap(g) -> float:
    """Largest RK4 step that keeps the stiffest linear mode stable.

    The flow's Jacobian eigenvalues are bounded by twice the maximum degree
    (Gershgorin); RK4's real-axis stability interval is about 2.78/|lambda|.
    """
    return 2.5 / (2.0 * float(g.degrees.max()))


def integrate(
    g,
    s0: PhaseState,
    dt: float = 0.05,
    t_max: float = 200.0,
    residual_tol: float = 1e-10,
    record_every: int = 0,
) -> tuple[PhaseState, TrajectoryMeta]:
    """Fixed-step RK4 until the max-norm of the RHS drops below residual_tol
    or t_max is reached.

    Phases are kept unwrapped during integration so the conserved phase sum
    is observable; the returned state is normalized.  ``record_every`` > 0
    samples (t, energy, |r|/n, sum theta) every that many steps.
    """
    if dt <= 0 or t_max <= 0:
        raise ValueError("dt and t_max must be positive")
    _ = gradient_flow_rhs(g, s0)  # dimension check
    a = g.adjacency
    y = s0.theta.copy()
    t = 0.0
    steps = 0
    meta = TrajectoryMeta(False, 0, 0.0, np.inf, dt)

    def record(tt, yy):
        st = PhaseState(yy)
        meta.times.append(tt)
        meta.energies.append(energy(g, st))
        meta.order_mags.append(order_parameter(st).magnitude / g.n)
        meta.phase_sums.append(float(yy.sum()))

    if record_every:
        record(0.0, y)
    max_steps = int(np.ceil(t_max / dt))
    while steps < max_steps:
        k1 = _rhs_raw(a, y)
        residual = float(np.max(np.abs(k1)))
        if not np.isfinite(residual):
            raise NumericalBlowupError(f"non-finite state at t={t:.6g}")
        if residual < residual_tol:
            meta.converged = True
            break
        k2 = _rhs_raw(a, y + 0.5 * dt * k1)
        k3 = _rhs_raw(a, y + 0.5 * dt * k2)
        k4 = _rhs_raw(a, y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += dt
        steps += 1
        if record_every and steps % record_every == 0:
            record(t, y)
    final = PhaseState(y)
    meta.steps = steps
    meta.t_final = t
    meta.residual = float(np.max(np.abs(gradient_flow_rhs(g, final))))
    meta.converged = meta.converged or meta.residual < residual_tol
    return final, meta


def refine_equilibrium(g, s: PhaseState, tol: float = 1e-12, max_iter: int = 50) -> PhaseState:
    """Damped Newton polish of a near-equilibrium state.

    The rotation gauge is fixed by pinning theta_1, reducing to an
    (n-1)-dimensional square system whose Jacobian is nonsingular at
    nondegenerate equilibria.  Raises RefinementFailedError outside the
    Newton basin, on divergence, or on a singular reduced Jacobian.
    """
    rhs = gradient_flow_rhs(g, s)
    residual = float(np.max(np.abs(rhs)))
    if residual < tol:
        return s
    if residual >= 1e-2 * g.n:
        raise RefinementFailedError(f"residual {residual:.3g} too large for Newton basin")
    theta = s.theta.copy()
    for _ in range(max_iter):
        state = PhaseState(theta)
        rhs = gradient_flow_rhs(g, state)
        residual = float(np.max(np.abs(rhs)))
        if residual < tol:
            return state
        jac = 0.5 * hessian_matrix(g, state)
        try:
            step = np.linalg.solve(jac[1:, 1:], -rhs[1:])
        except np.linalg.LinAlgError as exc:
            raise RefinementFailedError("singular reduced Jacobian") from exc
        if not np.all(np.isfinite(step)):
            raise RefinementFailedError("non-finite Newton step")
        lam = 1.0
        for _ in range(8):
            trial = theta.copy()
            trial[1:] += lam * step
            trial_res = float(np.max(np.abs(_rhs_raw(g.adjacency, trial))))
            if trial_res < residual:
                theta = trial
                break
            lam *= 0.5
        else:
            raise RefinementFailedError(f"no descent; stuck at residual {residual:.3g}")
    raise RefinementFailedError(f"did not reach tol={tol:.3g} in {max_iter} iterations")


def _angular_spread(s: PhaseState) -> float:
    """Max angular deviation from the order-parameter phase."""
    op = order_parameter(s)
    if not op.phase_defined:
        return np.pi
    d = np.angle(np.exp(1j * (s.theta - op.phase)))
    return float(np.max(np.abs(d)))


def classify(
    g,
    s: PhaseState,
    zero_tol: float | None = None,
    equilibrium_tol: float = 1e-8,
    cone_phi: float | None = None,
) -> EquilibriumReport:
    """Classify an equilibrium by its Hessian spectrum.

    Eigenvalues within zero_tol of 0 are treated as symmetry modes (exactly
    one is expected, from the global rotation).  All remaining negative means
    a local maximum: the synchronized state if the angular spread is below
    1e-6, otherwise a spurious local maximum.  Any remaining positive means
    saddle-or-unstable; extra near-zero eigenvalues are inconclusive.
    """
    rhs = gradient_flow_rhs(g, s)
    residual = float(np.max(np.abs(rhs)))
    if residual >= equilibrium_tol:
        raise NotAnEquilibriumError(
            f"gradient residual {residual:.3g} >= equilibrium tolerance {equilibrium_tol:.3g}"
        )
    h = hessian_matrix(g, s)
    eigs = np.linalg.eigvalsh(h)
    if zero_tol is None:
        zero_tol = 1e-7 * max(float(np.max(np.abs(eigs))), 1.0)
    near_zero = int(np.sum(np.abs(eigs) <= zero_tol))
    if near_zero > 1:
        label = INCONCLUSIVE
    elif np.any(eigs > zero_tol):
        label = SADDLE_OR_UNSTABLE
    elif _angular_spread(s) < SYNC_SPREAD_TOL:
        label = GLOBAL_MAX
    else:
        label = SPURIOUS_LOCAL_MAX
    cone = None
    if cone_phi is not None:
        op = order_parameter(s)
        if op.phase_defined:
            from .landscape import cone_decomposition

            cone = cone_decomposition(s, cone_phi)
    return EquilibriumReport(
        state=s,
        gradient_residual=residual,
        energy=energy(g, s),
        hessian_eigenvalues=eigs,
        classification=label,
        order_magnitude=order_parameter(s).magnitude / g.n,
        cone=cone,
    )


def cone_probe_vector(decomp: ConeDecomposition, assignment: np.ndarray) -> np.ndarray:
    """Probe direction for the Hessian quadratic form: +1 on the left cone,
    -1 on the right cone, and v = (gamma1 - gamma2)/(gamma1 + gamma2) on the
    outliers (the value minimizing the worst-case outlier contribution)."""
    if decomp.gamma1 + decomp.gamma2 <= 0:
        raise ValueError("probe undefined: both cones are empty")
    assignment = np.asarray(assignment)
    v = (decomp.gamma1 - decomp.gamma2) / (decomp.gamma1 + decomp.gamma2)
    return np.where(assignment == -1, 1.0, np.where(assignment == 1, -1.0, v))


def _canonical(s: PhaseState) -> np.ndarray:
    """Rotation-pinned representative: subtract theta_1 and wrap."""
    return wrap_angles(s.theta - s.theta[0])


def _rotation_distance(c1: np.ndarray, c2: np.ndarray) -> float:
    d = np.abs(c1 - c2)
    return float(np.max(np.minimum(d, 2.0 * np.pi - d)))


def multistart_search(
    g,
    trials: int,
    seed: int,
    dt: float = 0.05,
    t_max: float = 200.0,
    tol: float = 1e-10,
    threads: int = 1,
) -> list[EquilibriumReport]:
    """Landscape census from uniform-random initial states.

    Each trial integrates to a coarse residual, Newton-polishes to ``tol``,
    and classifies; failed refinements become inconclusive entries.  Reports
    are deduplicated by rotation-aligned angular distance after pinning
    theta_1 = 0 and sorted by (energy, canonical state), so the output is
    deterministic for a given seed regardless of thread scheduling.

    The step size is capped by the RK4 stability bound for the graph's
    maximum degree; the nominal dt=0.05 is unstable for dense graphs beyond
    roughly 55 vertices.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    initials = [PhaseState.random(g.n, rng) for _ in range(trials)]
    dt_eff = min(dt, stability_dt_cap(g))
    coarse_tol = max(tol, min(1e-3, 1e-3 * g.n))

    def run_trial(s0: PhaseState) -> EquilibriumReport:
        s1, _ = integrate(g, s0, dt=dt_eff, t_max=t_max, residual_tol=coarse_tol)
        try:
            s2 = refine_equilibrium(g, s1, tol=tol)
        except RefinementFailedError:
            return EquilibriumReport(
                state=s1,
                gradient_residual=float(np.max(np.abs(gradient_flow_rhs(g, s1)))),
                energy=energy(g, s1),
                hessian_eigenvalues=np.linalg.eigvalsh(hessian_matrix(g, s1)),
                classification=INCONCLUSIVE,
                order_magnitude=order_parameter(s1).magnitude / g.n,
            )
        return classify(g, s2, equilibrium_tol=max(10.0 * tol, 1e-8))

    if threads > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(run_trial, initials))
    else:
        reports = [run_trial(s0) for s0 in initials]

    merged: list[tuple[np.ndarray, EquilibriumReport]] = []
    for rep in reports:
        canon = _canonical(rep.state)
        for idx, (prev_canon, prev) in enumerate(merged):
            if _rotation_distance(canon, prev_canon) < DEDUP_TOL:
                if rep.gradient_residual < prev.gradient_residual:
                    rep.hit_count = prev.hit_count + 1
                    merged[idx] = (canon, rep)
                else:
                    prev.hit_count += 1
                break
        else:
            merged.append((canon, rep))
    merged.sort(key=lambda pair: (pair[1].energy, pair[0].tolist()))
    return [rep for _, rep in merged]
