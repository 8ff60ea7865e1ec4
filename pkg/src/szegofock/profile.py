"""Kernels for weights depending on Re z, and their bounds and asymptotics.

For a profile weight p the Bergman kernel is the quadrature formula

    K_tau(z, w) = (tau / 2 pi) int_R exp(tau eta (z + conj w)) / I(eta, tau) deta,
    I(eta, tau) = int_R exp(2 tau (r eta - p(r))) dr,

and integrating K_tau e^{-tau(p(z)+p(w))} e^{-i tau (s-t)} over tau gives
the boundary kernel as a triple integral.  The inner integral I is the
exponential of twice tau times a smoothed conjugate of p; its growth is
squeezed between scaled copies of the Young conjugate p*, which is what
`sandwich_bounds_check` verifies on a grid, and for large tau it follows
the classical Laplace-method asymptotic

    I(eta, tau) ~ (pi / (tau p''(mu(eta))))^{1/2} exp(2 tau p*(eta)),

exact for the Gaussian profile (`laplace_asymptotic` also reports the
ratio against the reciprocal prefactor orientation (tau p''/2 pi)^{1/2}
that circulates in print, which fails the Gaussian check).

For the Gaussian profile everything has closed forms, and the inverse
direction (recovering K_tau from the boundary kernel by a Plancherel-type
double integral) is realized with Gaussian dampers e^{-eps s^2} e^{-eps t^2}
plus an epsilon extrapolation; see `bergman_from_szego_gaussian`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .boundary import BoundaryPoint
from .errors import ConvergenceError, DomainError, NearSingular, SingularPoint, TruncationError
from .numerics import (
    DEFAULT_CONFIG,
    EvalResult,
    QuadConfig,
    integrate_interval,
    integrate_real_line,
)
from .weights import (
    WeightSpec,
    conjugate_spec,
    eval_weight,
    inverse_derivative,
    weight_derivatives,
    young_conjugate_closed,
    _require_profile,
)

TWO_PI = 2.0 * math.pi

# decay (in the shifted exponent) required before a quadrature window is cut
_EXP_CUTOFF = 45.0


def _check_tau(tau):
    tau = float(tau)
    if tau <= 0.0:
        raise DomainError("tau must be positive")
    return tau


def _profile_values(spec: WeightSpec, r):
    """Vectorised p on the real profile variable."""
    a = spec.alpha
    return np.abs(r) ** a / a


def _profile_slope(spec: WeightSpec, x: float) -> float:
    """p'(x) without the p'' singularity guard (sign-carrying)."""
    a = spec.alpha
    if x == 0.0:
        return 0.0
    return math.copysign(abs(x) ** (a - 1.0), x)


@lru_cache(maxsize=16)
def _leggauss(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _log_inner_batch(spec: WeightSpec, tau: float, etas, rtol=1e-11):
    """log I(eta, tau) for an array of eta, on one shared Gauss rule.

    The exponent 2 tau (r eta - p(r)) is concave in r with peak value
    2 tau p*(eta) at r = sign(eta) mu(eta), so a per-eta affine window
    [c - L, c + L] with the shifted integrand bounded by 1 captures the
    integral once the endpoint exponents drop below -45; the rule order
    is doubled until two levels agree to rtol.
    """
    etas = np.asarray(etas, dtype=float).ravel()
    a = spec.alpha
    ap = a / (a - 1.0)
    mu = np.abs(etas) ** (1.0 / (a - 1.0))
    c = np.sign(etas) * mu
    peak = 2.0 * tau * np.abs(etas) ** ap / ap

    def shifted_exponent(r):
        return 2.0 * tau * (r * etas - _profile_values(spec, r)) - peak

    # covering overestimate: peak location plus the eta = 0 decay length,
    # then expand where the endpoints have not decayed and contract where
    # the half-window already has (the exponent is concave, so endpoint
    # decay bounds the discarded tails)
    decay_len = (_EXP_CUTOFF * a / (2.0 * tau)) ** (1.0 / a)
    L = np.full_like(etas, mu.max(initial=0.0) + decay_len + 1.0)
    for _ in range(200):
        bad = (shifted_exponent(c + L) > -_EXP_CUTOFF) | (shifted_exponent(c - L) > -_EXP_CUTOFF)
        if not bad.any():
            break
        L = np.where(bad, 1.4 * L, L)
    else:
        raise ConvergenceError("inner-integral window failed to close")
    floor = 1e-4 * (1.0 + mu)
    for _ in range(80):
        half = 0.5 * L
        wide = ((shifted_exponent(c + half) <= -_EXP_CUTOFF)
                & (shifted_exponent(c - half) <= -_EXP_CUTOFF)
                & (L > floor))
        if not wide.any():
            break
        L = np.where(wide, half, L)

    # split each window at r = 0: |r|^alpha has limited smoothness there
    # for non-even alpha, and a kink inside a Gauss panel stalls convergence
    lo = c - L
    hi = c + L
    mid = np.clip(0.0, lo, hi)

    n_evals = 0
    prev = None
    for n in (64, 96, 144, 216, 324, 486, 729):
        x, wq = _leggauss(n)
        vals = np.zeros_like(etas)
        for lft, rgt in ((lo, mid), (mid, hi)):
            half = 0.5 * (rgt - lft)
            R = 0.5 * (lft + rgt)[:, None] + half[:, None] * x[None, :]
            expo = 2.0 * tau * (R * etas[:, None] - _profile_values(spec, R)) - peak[:, None]
            vals = vals + (np.exp(expo) @ wq) * half
            n_evals += R.size
        logI = peak + np.log(vals)
        if prev is not None and np.max(np.abs(logI - prev)) <= rtol:
            return logI, n_evals
        prev = logI
    raise ConvergenceError("inner-integral rule did not stabilise")


def _inner_shifted(spec, tau, eta, cfg):
    mu = inverse_derivative(spec, eta)
    center = math.copysign(mu, eta) if eta else 0.0
    shift = 2.0 * tau * young_conjugate_closed(spec, eta)

    def f(r):
        return np.exp(2.0 * tau * (r * eta - _profile_values(spec, r)) - shift)

    res = integrate_real_line(f, cfg, center=center, initial_halfwidth=max(1.0, 2.0 * mu))
    return shift, res


def inner_integral(spec: WeightSpec, tau, eta, cfg: QuadConfig = DEFAULT_CONFIG) -> EvalResult:
    """I(eta, tau) = int_R exp(2 tau (r eta - p(r))) dr > 0."""
    _require_profile(spec)
    tau = _check_tau(tau)
    shift, res = _inner_shifted(spec, tau, float(eta), cfg)
    try:
        scale = math.exp(shift)
    except OverflowError:
        scale = math.inf
    return EvalResult(scale * res.value.real, scale * res.abs_err_estimate,
                      res.method, res.n_evals)


def effective_conjugate(spec: WeightSpec, tau, eta, cfg: QuadConfig = DEFAULT_CONFIG) -> float:
    """The tau-smoothed conjugate: log I(eta, tau) / (2 tau).

    Squeezed between p*(eta/lam) and p*(lam eta) up to constants for any
    lam > 1, and converging to p*(eta) as tau grows.
    """
    _require_profile(spec)
    tau = _check_tau(tau)
    shift, res = _inner_shifted(spec, tau, float(eta), cfg)
    return (shift + math.log(res.value.real)) / (2.0 * tau)


def bergman_profile(spec: WeightSpec, tau, z, w, cfg: QuadConfig = DEFAULT_CONFIG) -> EvalResult:
    """Bergman kernel by nested quadrature; depends on (z, w) through z + conj w.

    The outer integrand exp(tau eta u) / I(eta, tau) is evaluated against
    the batched inner rule; its magnitude is normalised so the peak (at
    eta* = p'(Re u / 2)) sits at 1, making the window search safe.
    """
    _require_profile(spec)
    tau = _check_tau(tau)
    u = complex(z) + complex(w).conjugate()
    ux = u.real
    eta_star = _profile_slope(spec, ux / 2.0)
    inner_rtol = max(1e-13, 0.05 * cfg.rel_tol)

    log_star, n0 = _log_inner_batch(spec, tau, [eta_star], inner_rtol)
    shift = tau * eta_star * ux - float(log_star[0])
    counter = {"n": n0}

    def outer(etas):
        logI, ne = _log_inner_batch(spec, tau, etas, inner_rtol)
        counter["n"] += ne
        return np.exp(tau * np.asarray(etas) * u - logI - shift)

    try:
        res = integrate_real_line(outer, cfg, center=eta_star,
                                  initial_halfwidth=max(1.0, 2.0 * abs(eta_star)))
    except TruncationError as exc:
        raise ConvergenceError(
            "outer integrand failed to decay; parameters outside the "
            "kernel's domain (%s)" % exc)
    scale = (tau / TWO_PI) * math.exp(shift)
    err = scale * (res.abs_err_estimate + inner_rtol * abs(res.value))
    return EvalResult(scale * res.value, err, "profile-quadrature",
                      counter["n"] + res.n_evals)


def bergman_gaussian_closed(tau, z, w) -> complex:
    """(tau / 2 pi) exp((tau/4)(z + conj w)^2), the Gaussian-profile kernel."""
    tau = _check_tau(tau)
    u = complex(z) + complex(w).conjugate()
    return (tau / TWO_PI) * np.exp(0.25 * tau * u * u)


def _gaussian_boundary_expression(p1: BoundaryPoint, p2: BoundaryPoint) -> complex:
    z, w = p1.z, p2.z
    return (0.25 * (z + w.conjugate()) ** 2
            - 0.125 * (z + z.conjugate()) ** 2
            - 0.125 * (w + w.conjugate()) ** 2
            - 1j * (p2.t - p1.t))


def szego_gaussian_closed(p1: BoundaryPoint, p2: BoundaryPoint) -> complex:
    """Closed Gaussian boundary kernel (1/2 pi) E^{-2}; SingularPoint if E = 0."""
    expr = _gaussian_boundary_expression(p1, p2)
    scale = 1.0 + abs(p1.z) ** 2 + abs(p2.z) ** 2 + abs(p2.t - p1.t)
    if abs(expr) < 1e-12 * scale:
        raise SingularPoint("boundary diagonal: defining expression vanishes")
    return (1.0 / TWO_PI) * expr ** -2


def _extrapolate_to_zero(xs, ys, powers):
    A = np.array([[x ** p for p in powers] for x in xs], dtype=float)
    coef = np.linalg.solve(A, np.asarray(ys, dtype=complex))
    return coef[0]


def szego_profile(spec: WeightSpec, p1: BoundaryPoint, p2: BoundaryPoint,
                  cfg: QuadConfig = DEFAULT_CONFIG) -> EvalResult:
    """Boundary kernel as the tau-outermost triple integral.

    The tau integrand is K_tau(z, w) e^{-tau(p(z)+p(w))} e^{-i tau (s-t)}
    with K_tau from `bergman_profile`.  Its decay rate is probed adaptively:
    if the magnitude decays, the integral is truncated a priori and summed
    directly; if it does not decay but the phase rotates (off the boundary
    diagonal with matching times), an Abel-damped evaluation e^{-eps tau}
    is extrapolated to eps = 0; with neither damping nor rotation the
    configuration is the boundary diagonal and NearSingular is raised.
    """
    _require_profile(spec)
    z, w = p1.z, p2.z
    s_minus_t = p2.t - p1.t
    pz = eval_weight(spec, z)
    pw = eval_weight(spec, w)
    eta_star = _profile_slope(spec, (z.real + w.real) / 2.0)
    osc = s_minus_t - eta_star * (z.imag - w.imag)

    inner_cfg = QuadConfig(
        abs_tol=1e-30,
        rel_tol=max(min(cfg.rel_tol * 0.1, 1e-6), 1e-12),
        max_subdivisions=cfg.max_subdivisions,
        truncation_decay_threshold=cfg.truncation_decay_threshold,
    )
    counter = {"n": 0}

    def f_scalar(tau):
        kern = bergman_profile(spec, tau, z, w, inner_cfg)
        counter["n"] += kern.n_evals
        phase = -tau * (pz + pw) - 1j * tau * s_minus_t
        return kern.value * np.exp(phase)

    def f_vec(taus):
        return np.array([f_scalar(float(t)) for t in np.atleast_1d(taus)])

    probes = (2.0, 4.0, 8.0, 16.0)
    mags = [abs(f_scalar(t)) for t in probes]
    if mags[-1] == 0.0:
        slope = -math.inf
    elif mags[-2] > 0.0:
        slope = (math.log(mags[-1]) - math.log(mags[-2])) / (probes[-1] - probes[-2])
    else:
        slope = 0.0

    if slope < -1e-3:
        floor = max(cfg.abs_tol * 1e-2, 1e-300)
        reach = (math.log(max(mags[-1], floor)) - math.log(floor)) / -slope
        tau_max = probes[-1] + min(reach * 1.3, 400.0 / -slope) + 5.0
        seeds = max(8, min(400, int(abs(osc) * tau_max / 3.0) + 8))
        res = integrate_interval(f_vec, 0.0, tau_max, cfg,
                                 breakpoints=np.linspace(0.0, tau_max, seeds + 1)[1:-1])
        err = res.abs_err_estimate + inner_cfg.rel_tol * abs(res.value)
        return EvalResult(res.value, err, "triple-quadrature",
                          counter["n"] + res.n_evals)

    if abs(osc) < 1e-8:
        raise NearSingular("undamped, non-rotating tau integrand: boundary "
                           "diagonal configuration")

    # Abel regularisation: damp with e^{-eps tau}, extrapolate eps -> 0.
    # All three integrals share one window and one memoised set of kernel
    # evaluations; only the damper differs.
    abel_cfg = QuadConfig(
        abs_tol=max(cfg.abs_tol, 1e-8),
        rel_tol=max(cfg.rel_tol, 1e-6),
        max_subdivisions=max(cfg.max_subdivisions, 4000),
        truncation_decay_threshold=cfg.truncation_decay_threshold,
    )
    eps_seq = (0.2, 0.1, 0.05)
    tau_max = 20.0 / eps_seq[-1]
    for _ in range(3):
        tau_max = (math.log(1.0 / abel_cfg.abs_tol) + math.log(1.0 + tau_max)) / eps_seq[-1]
    seeds = max(16, min(800, int(abs(osc) * tau_max / 3.0) + 16))
    cache = {}

    def f_cached(t):
        if t not in cache:
            cache[t] = f_scalar(t)
        return cache[t]

    vals = []
    errs = []
    for eps in eps_seq:
        def damped(taus, _e=eps):
            ts = np.atleast_1d(taus)
            return np.array([f_cached(float(t)) * math.exp(-_e * float(t))
                             for t in ts])

        res = integrate_interval(damped, 0.0, tau_max, abel_cfg,
                                 breakpoints=np.linspace(0.0, tau_max, seeds + 1)[1:-1])
        vals.append(res.value)
        errs.append(res.abs_err_estimate)
        counter["n"] += res.n_evals
    extrapolated = _extrapolate_to_zero(eps_seq, vals, (0.0, 1.0, 2.0))
    tail_pair = _extrapolate_to_zero(eps_seq[1:], vals[1:], (0.0, 1.0))
    err = abs(extrapolated - tail_pair) + 4.0 * max(errs)
    return EvalResult(extrapolated, err, "triple-abel", counter["n"])


@dataclass(frozen=True)
class BoundsReport:
    """Grid evidence for the conjugate sandwich around log I.

    upper_log_gap = log I(eta) - 2 tau p*(lam eta) must stay bounded above,
    lower_log_gap = log I(eta) - 2 tau p*(eta/lam) bounded below, for
    lam > 1.  Boundedness is judged by the end-decile trend of each gap:
    no end may drift upward (upper) or downward (lower).  The dual gaps
    run the same test with p and p* exchanged.
    """

    lam: float
    tau: float
    eta_grid: np.ndarray
    upper_log_gap: np.ndarray
    lower_log_gap: np.ndarray
    upper_bounded: bool
    lower_bounded: bool
    dual_upper_log_gap: np.ndarray
    dual_lower_log_gap: np.ndarray


_SLOPE_TOL = 1e-3


def _end_slopes(xs, gap):
    """Gap trend d(gap)/d|x| at each tail end of the grid."""
    order = np.argsort(xs)
    xs = xs[order]
    gap = gap[order]
    n10 = max(3, len(xs) // 10)
    slopes = []
    if abs(xs[-1]) >= 0.5 * np.max(np.abs(xs)):
        slopes.append(np.polyfit(xs[-n10:], gap[-n10:], 1)[0])
    if abs(xs[0]) >= 0.5 * np.max(np.abs(xs)):
        slopes.append(-np.polyfit(xs[:n10], gap[:n10], 1)[0])
    return slopes


def _gap_flags(xs, upper_gap, lower_gap):
    up_ok = all(s <= _SLOPE_TOL for s in _end_slopes(xs, upper_gap))
    lo_ok = all(s >= -_SLOPE_TOL for s in _end_slopes(xs, lower_gap))
    return up_ok, lo_ok


def sandwich_bounds_check(spec: WeightSpec, tau, lam, eta_grid,
                          cfg: QuadConfig = DEFAULT_CONFIG) -> BoundsReport:
    """Check the two-sided conjugate squeeze of log I on a grid.

    Also runs the dual check with p and p* exchanged (the conjugate weight
    family), and requires both to pass; lam > 1 is the regime in which the
    bounds hold -- passing lam < 1 is the designed failure probe.
    """
    _require_profile(spec)
    tau = _check_tau(tau)
    lam = float(lam)
    if lam <= 0.0:
        raise DomainError("lam must be positive")
    etas = np.asarray(eta_grid, dtype=float)
    rtol = max(1e-8, 0.01 * cfg.rel_tol)  # gap slopes are judged at 1e-3

    def gaps(s: WeightSpec):
        logI, _ = _log_inner_batch(s, tau, etas, rtol)
        d = conjugate_spec(s)
        up = logI - 2.0 * tau * _profile_values(d, lam * etas)
        lo = logI - 2.0 * tau * _profile_values(d, etas / lam)
        return up, lo

    up, lo = gaps(spec)
    d_up, d_lo = gaps(conjugate_spec(spec))
    up_ok, lo_ok = _gap_flags(etas, up, lo)
    dup_ok, dlo_ok = _gap_flags(etas, d_up, d_lo)
    return BoundsReport(lam, tau, etas, up, lo,
                        up_ok and dup_ok, lo_ok and dlo_ok, d_up, d_lo)


@dataclass(frozen=True)
class AsymptoticsReport:
    """Ratios of I(eta, tau) to its large-tau Laplace prediction."""

    tau_grid: np.ndarray
    ratios: np.ndarray
    converged: bool
    printed_prefactor_ratios: np.ndarray
    final_tol: float


def laplace_asymptotic(spec: WeightSpec, eta, tau_grid,
                       cfg: QuadConfig = DEFAULT_CONFIG,
                       final_tol: float = 0.02) -> AsymptoticsReport:
    """Ratio of I(eta, tau) to (pi/(tau p''(mu)))^{1/2} exp(2 tau p*(eta)).

    Exact for the Gaussian profile; ratios approach 1 like 1/tau otherwise.
    The reciprocal prefactor orientation (tau p''/2 pi)^{1/2}, which also
    circulates, is evaluated alongside for reference -- it grows like tau
    against the true value and is reported, not asserted.
    """
    _require_profile(spec)
    eta = float(eta)
    mu = inverse_derivative(spec, eta)
    _, p2d = weight_derivatives(spec, mu)
    if p2d <= 0.0:
        raise DomainError("degenerate maximizer: p'' vanishes at mu(eta)")
    pstar = young_conjugate_closed(spec, eta)
    taus = np.asarray(tau_grid, dtype=float)
    rtol = max(1e-9, 0.01 * cfg.rel_tol)
    ratios = []
    printed = []
    for tau in taus:
        tau = _check_tau(tau)
        logI = float(_log_inner_batch(spec, tau, [eta], rtol)[0][0])
        log_pred = 0.5 * (math.log(math.pi) - math.log(tau) - math.log(p2d)) \
            + 2.0 * tau * pstar
        ratios.append(math.exp(logI - log_pred))
        log_printed = 0.5 * (math.log(tau) + math.log(p2d) - math.log(TWO_PI)) \
            + 2.0 * tau * pstar
        printed.append(math.exp(logI - log_printed))
    ratios = np.array(ratios)
    dev = np.abs(ratios - 1.0)
    monotone = bool(np.all(dev[1:] <= dev[:-1] * 1.05 + 1e-12))
    converged = monotone and bool(dev[-1] <= final_tol)
    return AsymptoticsReport(taus, ratios, converged, np.array(printed), final_tol)


# Plancherel-type inverse: fixed interior/causal regularisation scales.
# The interior shift keeps the boundary kernel's double pole off the
# integration plane; the causal shift keeps 1/(p(w) - i s) off the contour
# when p(w) = 0.  Both are far below every tolerance in use.
_INTERIOR_SHIFT = 1e-6
_CAUSAL_SHIFT = 1e-6
_PLANCHEREL_NORM = 2.0 * math.pi ** 2


def _causal_deficit_slope(tau, a, base):
    """Leading sqrt(eps) coefficient of the damped double integral.

    Damping 1/(a - i s) with e^{-eps s^2} against the kernel pole at
    v* = -i(base) leaves a relative deficit c1 sqrt(eps) + O(eps) with
    c1 = -(2 sqrt 2/sqrt pi)(a - 1/(2 tau) - base/2); dividing it out
    leaves a plain {eps, eps^{3/2}} series for the extrapolation.
    """
    return -(2.0 * math.sqrt(2.0) / math.sqrt(math.pi)) * (a - 0.5 / tau - 0.5 * base)


def _gk_composite(edges):
    """GK15 nodes and weights for a fixed composite rule over given edges."""
    from .numerics import _WK, _XK  # shared tables

    edges = np.asarray(edges, dtype=float)
    mids = 0.5 * (edges[1:] + edges[:-1])
    halfs = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mids[:, None] + halfs[:, None] * _XK[None, :]).ravel()
    weights = (halfs[:, None] * _WK[None, :]).ravel()
    return nodes, weights


def _difference_rule_edges(delta, inner_stop, V, coarse):
    """Panel edges on [-V, V]: geometric refinement toward 0 at pole scale
    delta, uniform panels of width `coarse` elsewhere."""
    geo = []
    h = max(delta / 4.0, 1e-12)
    while h < inner_stop:
        geo.append(h)
        h *= 3.0
    pos = sorted(set(geo) | set(np.arange(inner_stop, V, coarse)) | {V})
    return [-p for p in reversed(pos)] + [0.0] + list(pos)


def bergman_from_szego_gaussian(tau, z, w, epsilon,
                                cfg: QuadConfig = DEFAULT_CONFIG) -> EvalResult:
    """One damped evaluation of the inverse double integral (Gaussian only).

    Computes e^{tau(p(z)+p(w))} iint S((z,t),(w,s)) e^{i tau(s-t)}
    / (p(w) - i s) ds dt with the integrand damped by e^{-eps s^2} e^{-eps t^2},
    the boundary kernel pushed an interior shift inside the domain, and the
    causal factor shifted off the contour.  In the difference variable
    v = s - t the kernel factor is s-independent, so the t-direction uses
    one fixed composite rule (validated by global refinement) and the
    s-direction is adaptive.  The result is normalised by the Plancherel
    constant 2 pi^2 and by the analytically known leading damping deficit,
    so values extrapolate to the closed kernel along eps -> 0 (see
    `bergman_roundtrip_extrapolated`).
    """
    tau = _check_tau(tau)
    eps = float(epsilon)
    if eps <= 0.0:
        raise DomainError("epsilon must be positive")
    z = complex(z)
    w = complex(w)
    pz = z.real ** 2 / 2.0
    pw = w.real ** 2 / 2.0
    base = _gaussian_boundary_expression(BoundaryPoint(z, 0.0), BoundaryPoint(w, 0.0))
    delta = _INTERIOR_SHIFT
    a = pw + _CAUSAL_SHIFT
    L = math.sqrt(_EXP_CUTOFF / eps)
    V = 2.0 * L + 2.0

    def kernel_profile(v):
        return (base - delta - 1j * v) ** -2 * np.exp(1j * tau * v)

    def build(coarse):
        edges = _difference_rule_edges(delta, 2.0, V, coarse)
        nodes, wts = _gk_composite(edges)
        return nodes, kernel_profile(nodes) * wts

    def inner_batch(svec, rule):
        nodes, pw_ = rule
        damp = np.exp(-eps * (np.asarray(svec)[:, None] - nodes[None, :]) ** 2)
        return damp @ pw_

    rule = build(0.5)
    check = build(0.25)
    probe = np.array([0.0, 0.3 * L, -0.7 * L])
    coarse_vals = inner_batch(probe, rule)
    fine_vals = inner_batch(probe, check)
    rule_err = float(np.max(np.abs(coarse_vals - fine_vals)))
    n_evals = probe.size * (rule[0].size + check[0].size)
    rule = check  # keep the finer rule

    def outer(svec):
        svec = np.atleast_1d(np.asarray(svec, dtype=float))
        inner_vals = inner_batch(svec, rule)
        return inner_vals * np.exp(-eps * svec * svec) / (a - 1j * svec)

    scale0 = max(a, delta)
    obp = sorted({sgn * scale0 * 10.0 ** j for sgn in (-1.0, 1.0) for j in range(8)}
                 | {0.0, -1.0, 1.0})
    outer_cfg = QuadConfig(abs_tol=1e-9, rel_tol=1e-9,
                           max_subdivisions=max(cfg.max_subdivisions, 4000),
                           truncation_decay_threshold=cfg.truncation_decay_threshold)
    res = integrate_interval(outer, -L, L, outer_cfg,
                             breakpoints=[p for p in obp if -L < p < L])
    n_evals += res.n_evals * rule[0].size

    pref = math.exp(tau * (pz + pw)) / TWO_PI / _PLANCHEREL_NORM
    c1 = _causal_deficit_slope(tau, a, base - delta)
    correction = 1.0 + c1 * math.sqrt(eps)
    value = pref * res.value / correction
    err = pref * (res.abs_err_estimate + math.pi * rule_err) / abs(correction)
    return EvalResult(value, err, "plancherel-damped", n_evals)


def bergman_roundtrip_extrapolated(tau, z, w, cfg: QuadConfig = DEFAULT_CONFIG,
                                   eps_sequence=(0.1, 0.05, 0.025)) -> EvalResult:
    """Extrapolate the damped inverse evaluations to eps = 0.

    After the deficit normalisation in `bergman_from_szego_gaussian`, the
    eps expansion is {1, eps, eps^{3/2}}; three evaluations pin the limit.
    The error estimate combines the last extrapolation correction with the
    propagated quadrature errors.
    """
    eps = tuple(float(e) for e in eps_sequence)
    if len(eps) < 3:
        raise DomainError("need at least three epsilon values")
    results = [bergman_from_szego_gaussian(tau, z, w, e, cfg) for e in eps]
    vals = [r.value for r in results]
    limit = _extrapolate_to_zero(eps[-3:], vals[-3:], (0.0, 1.0, 1.5))
    pair = _extrapolate_to_zero(eps[-2:], vals[-2:], (0.0, 1.0))
    err = 0.5 * abs(limit - pair) + 8.0 * max(r.abs_err_estimate for r in results)
    n = sum(r.n_evals for r in results)
    return EvalResult(limit, err, "plancherel-extrapolated", n)


def duality_finiteness_criterion(tau, tau0, tau1) -> bool:
    """Negative-definiteness of (tau/2)(x+u)^2 - tau1 x^2 - tau0 u^2.

    Decides finiteness of the (x, u)-marginal of the squared-kernel double
    integral with weights e^{-2 tau1 p(z) - 2 tau0 p(w)} in the Gaussian
    case: true iff tau1 > tau/2 and (tau1 - tau/2)(tau0 - tau/2) > (tau/2)^2.
    """
    tau = float(tau)
    tau0 = float(tau0)
    tau1 = float(tau1)
    if not (0.0 < tau0 < tau < tau1):
        raise DomainError("require 0 < tau0 < tau < tau1")
    h = 0.5 * tau
    return tau1 > h and (tau1 - h) * (tau0 - h) > h * h


def duality_marginal_integral(tau, tau0, tau1,
                              cfg: QuadConfig = DEFAULT_CONFIG) -> EvalResult:
    """Numeric (x, u)-marginal (tau/2 pi)^2 iint e^{Q(x,u)} dx du.

    Q(x, u) = (tau/2)(x+u)^2 - tau1 x^2 - tau0 u^2.  When the quadratic
    form fails to be negative definite the outer window doubling finds no
    decay and TruncationError propagates; that divergence is the point of
    the probe.
    """
    tau = float(tau)
    tau0 = float(tau0)
    tau1 = float(tau1)
    if not (0.0 < tau0 < tau < tau1):
        raise DomainError("require 0 < tau0 < tau < tau1")
    counter = {"n": 0}

    def h(uvec):
        out = np.empty(np.shape(uvec), dtype=float)
        flat = np.atleast_1d(uvec).ravel()
        res_flat = np.empty(flat.shape, dtype=float)
        for i, u in enumerate(flat):
            x_star = tau * u / (2.0 * (tau1 - 0.5 * tau))
            qmax = (0.5 * tau * (x_star + u) ** 2 - tau1 * x_star ** 2
                    - tau0 * u * u)

            def f(x, _u=u, _q=qmax):
                return np.exp(0.5 * tau * (x + _u) ** 2 - tau1 * x * x
                              - tau0 * _u * _u - _q)

            r = integrate_real_line(f, cfg, center=x_star,
                                    initial_halfwidth=max(1.0, 2.0 * abs(x_star)))
            counter["n"] += r.n_evals
            try:
                res_flat[i] = math.exp(qmax) * r.value.real
            except OverflowError:
                res_flat[i] = math.inf
        out.flat = res_flat
        return out

    res = integrate_real_line(h, cfg)
    scale = (tau / TWO_PI) ** 2
    return EvalResult(scale * res.value, scale * res.abs_err_estimate,
                      "marginal-nested", counter["n"] + res.n_evals)


def shifted_maximizer_gap(spec: WeightSpec, tau, lam, eta) -> float:
    """2 tau [eta (mu(eta)+1) - p(mu(eta)+1) - p*(lam eta)] for 0 < lam < 1.

    Bounded below in eta >= 0; the grid minimum stabilises as the grid is
    extended, which is what the lower-bound test asserts.
    """
    _require_profile(spec)
    tau = _check_tau(tau)
    eta = float(eta)
    mu = inverse_derivative(spec, eta)
    x = mu + 1.0
    return 2.0 * tau * (eta * x - float(_profile_values(spec, x))
                        - young_conjugate_closed(spec, lam * eta))
