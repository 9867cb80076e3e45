"""Norm computation with rigorous tail/error bounds, certified sup norms,
inequality checkers, and the convergence experiments."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .approximation import TrigApproximant, fourier_coefficients
from .functions import DecayEnvelope, TestFunction, sinc_ratio, INF
from .kernels import dirichlet, kernel_gap, n_terms, sinc_kernel
from .quadrature import QuadratureSpec, integrate

# Hard cap on the quadrature window for real-line norms; beyond it the
# analytic envelope tail is folded into the error bound instead.
_X_MAX = 1.0e4
# Cap for the sup-norm search window on the real line.
_SUP_X_MAX = 1.0e6
_SUP_ENVELOPE_FLOOR = 1e-6


@dataclass(frozen=True)
class NormEstimate:
    value: float
    error_bound: float
    p: float
    domain: str
    tail_bound: float = 0.0


@dataclass(frozen=True)
class SupNormCertificate:
    """Grid maximum upgraded to a sup-norm upper bound.

    Any point is within h/2 of a grid node, so by the Bernstein modulus
    bound |F(x)| <= grid_max + 2 sin(sigma h / 4) ||F||_inf, giving
    ||F||_inf <= grid_max / (1 - contraction).
    """

    grid_max: float
    spacing: float
    contraction: float
    certified_bound: float


@dataclass(frozen=True)
class ConvergenceRecord:
    tau: float
    p: float
    interior_error: NormEstimate
    tail_error: NormEstimate
    total_error: float
    sup_error: Optional[SupNormCertificate] = None


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    function_id: str
    params: dict
    lhs: float
    rhs: float
    margin: float
    error_bound: float

    @property
    def holds(self) -> bool:
        return self.margin >= -self.error_bound


@dataclass(frozen=True)
class DecompositionValues:
    f1: complex
    f2: complex
    f3: complex
    error_bound: float


def _root_error(integral: float, err: float, p: float) -> float:
    """First-order propagation of an integral error into the p-th root,
    guarded near zero where the derivative blows up."""
    if integral <= err:
        return err ** (1.0 / p)
    value = integral ** (1.0 / p)
    return err / (p * value ** (p - 1.0))


def lp_norm_interval(g: Callable, p: float, a: float, b: float,
                     quad: Optional[QuadratureSpec] = None, *,
                     max_panel_width: Optional[float] = None) -> NormEstimate:
    """(integral_a^b |g|^p dx)^{1/p} by adaptive quadrature."""
    if not 1 <= p < INF:
        raise ValueError("p must satisfy 1 <= p < inf")
    if not a < b:
        raise ValueError("interval requires a < b")
    quad = quad or QuadratureSpec()
    if max_panel_width is None:
        max_panel_width = (b - a) / 64.0

    def integrand(x):
        return np.abs(np.asarray(g(x))) ** p

    integral, err = integrate(integrand, a, b, quad,
                              max_panel_width=max_panel_width)
    integral = float(integral)
    err = float(err)
    return NormEstimate(value=integral ** (1.0 / p),
                        error_bound=_root_error(integral, err, p),
                        p=p, domain=f"[{a:g},{b:g}]", tail_bound=0.0)


def _lp_norm_envelope(g: Callable, env: DecayEnvelope, p: float,
                      quad: QuadratureSpec, osc_width: float) -> NormEstimate:
    """Real-line L^p norm of g with the tail beyond the quadrature window
    bounded analytically from the decay envelope."""
    if env.alpha * p <= 1:
        raise ValueError("non-integrable tail envelope")
    cutoff = env.cutoff_for_tail(quad.abs_tol ** p, p)
    cutoff = max(50.0, min(_X_MAX, cutoff))
    tail_integral = env.tail_lp(cutoff, p)
    inner = lp_norm_interval(g, p, -cutoff, cutoff, quad,
                             max_panel_width=osc_width)
    tail = tail_integral ** (1.0 / p)
    return NormEstimate(value=inner.value,
                        error_bound=inner.error_bound + tail,
                        p=p, domain="real-line", tail_bound=tail)


def lp_norm_line(f: TestFunction, p: float,
                 quad: Optional[QuadratureSpec] = None) -> NormEstimate:
    """Real-line L^p norm of a catalog member."""
    if p == INF:
        raise ValueError("use sup_norm_certified for p = inf")
    if not f.p_membership.contains(p):
        raise ValueError(f"{f.id} is not a member of B^{p:g}")
    quad = quad or QuadratureSpec()
    width = min(1.0, math.pi / (2.0 * max(f.sigma, 1.0)))
    return _lp_norm_envelope(f.eval_real, f.decay, p, quad, width)


def sup_norm_certified(F: Callable, sigma_eff: float, a: float, b: float,
                       target_contraction: float = 0.25) -> SupNormCertificate:
    """Certified upper bound on sup |F| over [a, b] for F of exponential
    type <= sigma_eff, bounded on the real line."""
    if sigma_eff <= 0:
        raise ValueError("sigma_eff must be positive")
    if not 0 < target_contraction <= 0.5:
        raise ValueError("target_contraction must lie in (0, 0.5]")
    if not a < b:
        raise ValueError("interval requires a < b")
    h_max = (4.0 / sigma_eff) * math.asin(0.5 * target_contraction)
    n = max(2, math.ceil((b - a) / h_max) + 1)
    grid = np.linspace(a, b, n)
    h = float(grid[1] - grid[0])
    contraction = 2.0 * math.sin(0.25 * sigma_eff * h)
    vals = np.abs(np.asarray(F(grid)))
    grid_max = float(vals.max())
    return SupNormCertificate(grid_max=grid_max, spacing=h,
                              contraction=contraction,
                              certified_bound=grid_max / (1.0 - contraction))


def _sup_norm_line(f: TestFunction,
                   target_contraction: float = 0.1) -> tuple[float, SupNormCertificate]:
    """Upper bound for sup |f| over the whole real line: a certificate on
    [-X, X] plus the decay envelope beyond X."""
    env = f.decay
    if env.alpha <= 0:
        raise ValueError("decay envelope too weak for a real-line sup bound")
    cutoff = (env.C / _SUP_ENVELOPE_FLOOR) ** (1.0 / env.alpha) - 1.0
    cutoff = max(50.0, min(_SUP_X_MAX, cutoff))
    cert = sup_norm_certified(f.eval_real, f.sigma, -cutoff, cutoff,
                              target_contraction)
    return max(cert.certified_bound, float(env.bound(cutoff))), cert


def check_plancherel_polya(f: TestFunction, y: float, p: float,
                           quad: Optional[QuadratureSpec] = None) -> InequalityCheck:
    """||f(. + iy)||_p <= ||f||_p * e^{sigma |y|}."""
    if f.eval_complex is None:
        raise ValueError(f"{f.id} does not support complex evaluation")
    if p == INF or not f.p_membership.contains(p):
        raise ValueError(f"need finite p with {f.id} in B^p")
    quad = quad or QuadratureSpec()

    def along_line(x):
        return f.eval_complex(np.asarray(x, dtype=float) + 1j * y)

    # |sin w| <= e^{|Im w|} style growth: the envelope constant scales by
    # e^{sigma |y|} along the horizontal line (valid in the tail region
    # |x| >= 1, which is all the envelope is used for here).
    env_line = DecayEnvelope(C=f.decay.C * math.exp(f.sigma * abs(y)),
                             alpha=f.decay.alpha)
    width = min(1.0, math.pi / (2.0 * max(f.sigma, 1.0)))
    lhs = _lp_norm_envelope(along_line, env_line, p, quad, width)

    if p in f.known_norms:
        base, base_err = f.known_norms[p], 0.0
    else:
        est = lp_norm_line(f, p, quad)
        base, base_err = est.value, est.error_bound
    growth = math.exp(f.sigma * abs(y))
    rhs = base * growth
    return InequalityCheck(
        name="plancherel_polya", function_id=f.id, params={"y": y, "p": p},
        lhs=lhs.value, rhs=rhs, margin=rhs - lhs.value,
        error_bound=lhs.error_bound + base_err * growth)


def check_nikolskii(f: TestFunction, r1: float, r2: float,
                    quad: Optional[QuadratureSpec] = None) -> InequalityCheck:
    """||f||_{r2} <= 2 sigma^{1/r1 - 1/r2} ||f||_{r1}."""
    if not 1 <= r1 <= r2:
        raise ValueError("need 1 <= r1 <= r2")
    if not f.p_membership.contains(r1):
        raise ValueError(f"{f.id} is not a member of B^{r1:g}")
    quad = quad or QuadratureSpec()

    def norm(p):
        if p in f.known_norms:
            return f.known_norms[p], 0.0
        est = lp_norm_line(f, p, quad)
        return est.value, est.error_bound

    base, base_err = norm(r1)
    if r2 == INF:
        if INF in f.known_norms:
            lhs, lhs_err = f.known_norms[INF], 0.0
        else:
            lhs, _cert = _sup_norm_line(f)
            lhs_err = 0.0  # certified upper bound, already conservative
    else:
        lhs, lhs_err = norm(r2)

    inv1 = 0.0 if r1 == INF else 1.0 / r1
    inv2 = 0.0 if r2 == INF else 1.0 / r2
    factor = 2.0 * f.sigma ** (inv1 - inv2)
    rhs = factor * base
    return InequalityCheck(
        name="nikolskii", function_id=f.id, params={"r1": r1, "r2": r2},
        lhs=lhs, rhs=rhs, margin=rhs - lhs,
        error_bound=lhs_err + factor * base_err)


def check_poly_nikolskii(a: TrigApproximant, p: float,
                         quad: Optional[QuadratureSpec] = None) -> InequalityCheck:
    """||Q||_inf <= 2 N^{1/p} ||Q||_p on the torus, for the degree-N
    polynomial u(t) = f_tau(tau t / pi)."""
    if not 1 <= p < INF:
        raise ValueError("p must satisfy 1 <= p < inf")
    if a.N < 1:
        raise ValueError("need N >= 1")
    quad = quad or QuadratureSpec()
    N = a.N

    def u(t):
        return a.evaluate(a.tau * np.asarray(t, dtype=float) / math.pi)

    cert = sup_norm_certified(u, float(N), -math.pi, math.pi, 0.1)
    norm = lp_norm_interval(u, p, -math.pi, math.pi, quad,
                            max_panel_width=math.pi / (2.0 * N))
    rhs = 2.0 * N ** (1.0 / p) * norm.value
    return InequalityCheck(
        name="poly_nikolskii", function_id=f"approximant:tau={a.tau:g}",
        params={"p": p, "N": N},
        lhs=cert.certified_bound, rhs=rhs,
        margin=rhs - cert.certified_bound,
        error_bound=2.0 * N ** (1.0 / p) * norm.error_bound)


def decomposition_F123(f: TestFunction, tau: float, delta: float, x: float,
                       quad: Optional[QuadratureSpec] = None) -> DecompositionValues:
    """The three diagnostic integrals whose combination F1 + F2 - F3
    reproduces f - f_tau pointwise."""
    if not f.p_membership.contains(1.0):
        raise ValueError(f"{f.id} is not a member of B^1")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    if abs(x) > tau:
        raise ValueError("|x| must not exceed tau")
    quad = quad or QuadratureSpec()
    sigma = f.sigma
    N = n_terms(sigma, tau)
    width = min(1.0, math.pi / (2.0 * (sigma + math.pi * N / tau + 1.0)))
    dt = delta * tau

    def inner_sinc(t):
        return np.asarray(f.eval_real(t)) * np.asarray(sinc_kernel(sigma, x - t))

    def inner_gap(t):
        return np.asarray(f.eval_real(t)) * np.asarray(kernel_gap(sigma, tau, x - t))

    def inner_dirichlet(t):
        return (np.asarray(f.eval_real(t))
                * np.asarray(dirichlet(N, math.pi * (x - t) / tau))
                / (2.0 * tau))

    i1, e1 = integrate(inner_sinc, -dt, dt, quad, max_panel_width=width)
    f1 = complex(np.asarray(f.eval_real(x))[()]) - complex(i1)
    i2, e2 = integrate(inner_gap, -dt, dt, quad, max_panel_width=width)
    i3r, e3r = integrate(inner_dirichlet, dt, tau, quad, max_panel_width=width)
    i3l, e3l = integrate(inner_dirichlet, -tau, -dt, quad, max_panel_width=width)
    return DecompositionValues(f1=f1, f2=complex(i2),
                               f3=complex(i3r) + complex(i3l),
                               error_bound=float(e1 + e2 + e3r + e3l))


def convergence_study(f: TestFunction, p: float, tau_list: Sequence[float],
                      quad: Optional[QuadratureSpec] = None, *,
                      with_sup: bool = True,
                      target_contraction: float = 0.25) -> list[ConvergenceRecord]:
    """Per-tau error decomposition of f - phi_{f,tau}: interior L^p error
    on [-tau, tau], analytic envelope tail on |x| > tau, and optionally a
    certified sup bound of f - f_tau on [-tau, tau]."""
    if not 1 < p < INF:
        raise ValueError("p must satisfy 1 < p < inf")
    if not f.p_membership.contains(p):
        raise ValueError(f"{f.id} is not a member of B^{p:g}")
    if f.decay.alpha * p <= 1:
        raise ValueError("non-integrable tail envelope")
    if list(tau_list) != sorted(tau_list) or len(set(tau_list)) != len(tau_list):
        raise ValueError("tau_list must be strictly increasing")
    quad = quad or QuadratureSpec()

    records = []
    for tau in tau_list:
        a = fourier_coefficients(f, tau, quad)

        def diff(x, _a=a):
            return np.asarray(f.eval_real(x)) - np.asarray(_a.evaluate(x))

        width = min(1.0, math.pi / (2.0 * max(f.sigma, 1.0)))
        interior = lp_norm_interval(diff, p, -tau, tau, quad,
                                    max_panel_width=width)
        tail_integral = f.decay.tail_lp(tau, p)
        tail_value = tail_integral ** (1.0 / p)
        tail = NormEstimate(value=tail_value, error_bound=tail_value,
                            p=p, domain=f"|x|>{tau:g}", tail_bound=tail_value)
        total = (interior.value ** p + tail_integral) ** (1.0 / p)
        sup_cert = None
        if with_sup:
            sigma_eff = max(f.sigma, math.pi * a.N / tau)
            sup_cert = sup_norm_certified(diff, sigma_eff, -tau, tau,
                                          target_contraction)
        records.append(ConvergenceRecord(tau=float(tau), p=float(p),
                                         interior_error=interior,
                                         tail_error=tail,
                                         total_error=total,
                                         sup_error=sup_cert))
    return records


def exp_coefficients(tau: float, omega: float = 1.0) -> TrigApproximant:
    """Closed-form coefficients of e^{i omega x}:
    c_k = sinc(omega tau - pi k) = (-1)^k sin(omega tau) / (omega tau - pi k)."""
    if tau <= 0:
        raise ValueError("tau must be positive")
    sigma = abs(omega)
    N = n_terms(sigma, tau)
    k = np.arange(-N, N + 1)
    coeffs = np.asarray(sinc_ratio(omega * tau - math.pi * k), dtype=complex)
    return TrigApproximant(tau=float(tau), sigma=sigma, N=N,
                           coefficients=coeffs, coeff_error=0.0)


def counterexample_run(m_list: Sequence[int]) -> list[tuple[float, float]]:
    """Im(f - f_{tau_m})(tau_m) for f = e^{ix}, tau_m = pi/2 + 2 pi m.

    The identity forces the value 1 for every m, witnessing the failure of
    sup-norm convergence for p = inf.
    """
    out = []
    for m in m_list:
        if int(m) != m or m < 1:
            raise ValueError("m_list must contain positive integers")
        tau = 0.5 * math.pi + 2.0 * math.pi * int(m)
        a = exp_coefficients(tau)
        gap = (cmath.exp(1j * tau) - complex(a.evaluate(tau))).imag
        out.append((tau, float(gap)))
    return out
