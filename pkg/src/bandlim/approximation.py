"""Trigonometric approximant f_tau: coefficients, evaluation, truncation,
and the Lewitan periodization sum."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .functions import TestFunction, sinc_ratio, _maybe_scalar
from .kernels import dirichlet, n_terms
from .quadrature import (QuadratureNonConvergence, QuadratureSpec, integrate)

_LEWITAN_TAIL_TARGET = 1e-8
_LEWITAN_MAX_AUTO_K = 10 ** 7


@dataclass(frozen=True)
class TrigApproximant:
    """Coefficient vector c_{-N}..c_N of the 2*tau-periodic sum
    sum_k c_k e^{i pi k x / tau} with N = floor(sigma tau / pi)."""

    tau: float
    sigma: float
    N: int
    coefficients: np.ndarray
    coeff_error: float

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=complex)
        if coeffs.shape != (2 * self.N + 1,):
            raise ValueError("coefficient vector must have length 2N+1")
        object.__setattr__(self, "coefficients", coeffs)

    def coefficient(self, k: int) -> complex:
        if abs(k) > self.N:
            raise IndexError(f"|k| must not exceed N={self.N}")
        return complex(self.coefficients[k + self.N])

    def evaluate(self, x):
        """Evaluate the sum, grouping the k and -k terms pairwise so
        conjugate symmetry of the coefficients is preserved numerically."""
        theta = np.asarray(x, dtype=float) * (math.pi / self.tau)
        flat = np.atleast_1d(theta).ravel()
        out = np.full(flat.shape, self.coefficients[self.N], dtype=complex)
        if self.N > 0:
            k = np.arange(1, self.N + 1)
            phase = np.exp(1j * flat[:, None] * k)
            cpos = self.coefficients[self.N + 1:]
            cneg = self.coefficients[self.N - 1::-1]
            out = out + (phase * cpos + np.conj(phase) * cneg).sum(axis=1)
        out = out.reshape(np.shape(x))
        return _maybe_scalar(out, x)

    def truncated(self, x):
        """f_tau * indicator of the closed interval [-tau, tau]."""
        inside = np.abs(np.asarray(x, dtype=float)) <= self.tau
        vals = np.where(inside, np.asarray(self.evaluate(x)), 0.0 + 0.0j)
        return _maybe_scalar(vals, x)

    def to_json_dict(self) -> dict:
        return {
            "tau": self.tau,
            "sigma": self.sigma,
            "N": self.N,
            "coefficients": [[float(c.real), float(c.imag)]
                             for c in self.coefficients],
            "coeff_error": self.coeff_error,
        }

    @staticmethod
    def from_json_dict(doc: dict) -> "TrigApproximant":
        coeffs = np.array([complex(re, im) for re, im in doc["coefficients"]])
        return TrigApproximant(tau=float(doc["tau"]), sigma=float(doc["sigma"]),
                               N=int(doc["N"]), coefficients=coeffs,
                               coeff_error=float(doc["coeff_error"]))

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(self.to_json_dict(), fh, indent=2)
            fh.write("\n")

    @staticmethod
    def load(path) -> "TrigApproximant":
        with open(path, encoding="utf-8") as fh:
            return TrigApproximant.from_json_dict(json.load(fh))


def fourier_coefficients(f: TestFunction, tau: float,
                         quad: Optional[QuadratureSpec] = None) -> TrigApproximant:
    """c_k = (1/2 tau) * integral_{-tau}^{tau} f(t) e^{-i pi k t / tau} dt
    for |k| <= N, each to absolute accuracy quad.abs_tol.

    All coefficients are computed in one vector-valued adaptive pass; the
    initial panel width resolves the fastest integrand oscillation.
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    quad = quad or QuadratureSpec()
    N = n_terms(f.sigma, tau)
    k = np.arange(-N, N + 1)
    freq = math.pi * k / tau
    width = min(1.0, tau / (2.0 * (N + 1)))

    def integrand(t):
        ft = np.asarray(f.eval_real(t))
        return ft[:, None] * np.exp(-1j * t[:, None] * freq) / (2.0 * tau)

    # Refinement must be driven by the absolute per-coefficient tolerance.
    spec_abs = replace(quad, rel_tol=1e-14)
    try:
        coeffs, _err = integrate(integrand, -tau, tau, spec_abs,
                                 max_panel_width=width)
    except QuadratureNonConvergence as exc:
        offending = "" if exc.component is None else f" for k={k[exc.component]}"
        raise QuadratureNonConvergence(
            f"coefficient quadrature failed{offending}: {exc}",
            midpoint=exc.midpoint, component=exc.component) from exc

    return TrigApproximant(tau=float(tau), sigma=f.sigma, N=N,
                           coefficients=coeffs,
                           coeff_error=(2 * N + 1) * quad.abs_tol)


def evaluate_sum(a: TrigApproximant, x):
    """Module-level alias for TrigApproximant.evaluate."""
    return a.evaluate(x)


def truncated(a: TrigApproximant, x):
    """Module-level alias for TrigApproximant.truncated."""
    return a.truncated(x)


def evaluate_convolution(f: TestFunction, tau: float, x: float,
                         quad: Optional[QuadratureSpec] = None):
    """(1/2 tau) * integral_{-tau}^{tau} f(t) D_N(pi (x - t)/tau) dt.

    Independent cross-check path for evaluate_sum.  Returns
    ``(value, err_bound)``.
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    quad = quad or QuadratureSpec()
    N = n_terms(f.sigma, tau)
    width = min(1.0, tau / (2.0 * (N + 1)))

    def integrand(t):
        return (np.asarray(f.eval_real(t))
                * np.asarray(dirichlet(N, math.pi * (x - t) / tau))
                / (2.0 * tau))

    value, err = integrate(integrand, -tau, tau, quad, max_panel_width=width)
    return complex(value), float(err)


def lewitan_weights(u, K: int, normalization: str = "verbatim"):
    """Weights of the periodization sum at offsets u + k, |k| <= K."""
    scale = _weight_scale(normalization)
    k = np.arange(-K, K + 1)
    return sinc_ratio(scale * (np.asarray(u, dtype=float)[..., None] + k)) ** 2


def _weight_scale(normalization: str) -> float:
    if normalization == "verbatim":
        return 1.0
    if normalization == "classical":
        return math.pi
    raise ValueError("normalization must be 'verbatim' or 'classical'")


def lewitan(f: TestFunction, tau: float, x: float, K: int = 0,
            normalization: str = "verbatim"):
    """Symmetric partial sum of sum_k f(x + k tau) * w(x/tau + k).

    In 'verbatim' mode the weight is sin^2(u)/u^2; 'classical' uses the
    partition-of-unity weight sin^2(pi u)/(pi u)^2.  ``K = 0`` picks the
    cutoff from the decay envelope so the returned tail bound is below
    1e-8.  Returns ``(value, tail_bound)``.
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    if K < 0:
        raise ValueError("K must be nonnegative (0 = auto)")
    scale = _weight_scale(normalization)
    beta = abs(x) / tau
    env = f.decay

    if K == 0:
        K = _auto_cutoff(env, tau, beta, scale)
    if K <= beta + 1:
        K = math.ceil(beta) + 2

    k = np.arange(-K, K + 1)
    u = x / tau + k
    weights = sinc_ratio(scale * u) ** 2
    samples = np.asarray(f.eval_real(x + k * tau))
    value = np.sum(samples * weights)
    tail = _tail_bound(env, tau, beta, scale, K)
    if np.iscomplexobj(value):
        return complex(value), tail
    return float(value), tail


def _tail_bound(env, tau: float, beta: float, scale: float, K: int) -> float:
    """Bound on the discarded |k| > K terms via the decay envelope and the
    1/u^2 weight decay; requires K > beta."""
    gap = K - beta
    if gap <= 0:
        return math.inf
    if env.alpha == 0:
        return 2.0 * env.C / (scale ** 2 * gap)
    return (2.0 * env.C
            / (scale ** 2 * tau ** env.alpha * (env.alpha + 1.0)
               * gap ** (env.alpha + 1.0)))


def _auto_cutoff(env, tau: float, beta: float, scale: float) -> int:
    target = _LEWITAN_TAIL_TARGET
    if env.alpha == 0:
        K = math.ceil(beta + 2.0 * env.C / (scale ** 2 * target))
    else:
        gap = (2.0 * env.C
               / (scale ** 2 * tau ** env.alpha * (env.alpha + 1.0)
                  * target)) ** (1.0 / (env.alpha + 1.0))
        K = math.ceil(beta + gap)
    if K > _LEWITAN_MAX_AUTO_K:
        raise ValueError(
            "decay envelope too weak for the automatic Lewitan cutoff; "
            "pass K explicitly")
    return max(K, math.ceil(beta) + 2)
