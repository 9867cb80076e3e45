"""Catalog of concrete bandlimited test functions with exact metadata.

Every catalog member carries its exponential type, a conservative decay
envelope |f(x)| <= C / (1 + |x|)^alpha used for analytic tail bounds, the
set of p for which it lies in the corresponding L^p Bernstein space, and
any exactly known norms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

import numpy as np

INF = math.inf

_SERIES_CUTOFF = 1e-4


def sinc_ratio(u):
    """sin(u)/u with a degree-6 Taylor switchover near the singularity.

    Below |u| = 1e-4 the truncation error of the Taylor polynomial is
    under 1e-24, far below the cancellation noise of the direct ratio.
    Accepts real or complex scalars and arrays.
    """
    u = np.asarray(u)
    small = np.abs(u) < _SERIES_CUTOFF
    safe = np.where(small, 1.0, u)
    u2 = u * u
    series = 1.0 - u2 / 6.0 + u2 * u2 / 120.0 - u2 * u2 * u2 / 5040.0
    return np.where(small, series, np.sin(safe) / safe)


def _maybe_scalar(res, x):
    if np.ndim(x) == 0:
        return np.asarray(res)[()]
    return res


@dataclass(frozen=True)
class DecayEnvelope:
    """Bound |f(x)| <= C / (1 + |x|)^alpha valid for all real x."""

    C: float
    alpha: float

    def bound(self, x):
        return self.C / (1.0 + np.abs(x)) ** self.alpha

    def tail_lp(self, cutoff: float, p: float) -> float:
        """Integral of bound(x)^p over |x| > cutoff (requires alpha*p > 1)."""
        ap = self.alpha * p
        if ap <= 1:
            raise ValueError("non-integrable tail envelope")
        return 2.0 * self.C ** p * (1.0 + cutoff) ** (1.0 - ap) / (ap - 1.0)

    def cutoff_for_tail(self, budget: float, p: float) -> float:
        """Smallest X with tail_lp(X, p) <= budget."""
        ap = self.alpha * p
        if ap <= 1:
            raise ValueError("non-integrable tail envelope")
        base = 2.0 * self.C ** p / ((ap - 1.0) * budget)
        if base <= 1.0:
            return 0.0
        return base ** (1.0 / (ap - 1.0)) - 1.0


@dataclass(frozen=True)
class PMembership:
    """Up-set of [1, inf] describing Bernstein-space membership in p.

    Membership is monotone: p in the set and r >= p implies r in the set,
    so a lower endpoint plus an inclusivity flag characterizes it.
    """

    p_min: float
    min_inclusive: bool = True

    def contains(self, p: float) -> bool:
        if p < 1:
            return False
        if p == INF:
            return self.p_min < INF or self.min_inclusive
        if p > self.p_min:
            return True
        return self.min_inclusive and p == self.p_min


@dataclass(frozen=True)
class TestFunction:
    id: str
    sigma: float
    eval_real: Callable
    eval_complex: Optional[Callable]
    decay: DecayEnvelope
    p_membership: PMembership
    known_norms: Mapping[float, float] = field(default_factory=dict)
    # Exponential type actually computed for derived members (may differ
    # from the nominal sigma claimed by construction).
    computed_type: Optional[float] = None

    def __call__(self, x):
        return self.eval_real(x)

    @property
    def supports_complex(self) -> bool:
        return self.eval_complex is not None


def make_sinc(sigma: float) -> TestFunction:
    """f(x) = sin(sigma x) / (pi x), type sigma, peak sigma/pi at 0."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    s = float(sigma)

    def ev(x):
        x = np.asarray(x, dtype=float)
        return _maybe_scalar(s / math.pi * sinc_ratio(s * x), x)

    def evc(z):
        z = np.asarray(z, dtype=complex)
        return _maybe_scalar(s / math.pi * sinc_ratio(s * z), z)

    return TestFunction(
        id=f"sinc:sigma={s:g}",
        sigma=s,
        eval_real=ev,
        eval_complex=evc,
        decay=DecayEnvelope(C=2.0 * max(1.0, s) / math.pi, alpha=1.0),
        p_membership=PMembership(1.0, min_inclusive=False),
        known_norms={2.0: math.sqrt(s / math.pi), INF: s / math.pi},
    )


def make_complex_exponential(omega: float) -> TestFunction:
    """f(x) = e^{i omega x}; bounded, no decay, member of B^inf only."""
    if omega == 0:
        raise ValueError("omega must be nonzero (constants are out of catalog)")
    w = float(omega)

    def ev(x):
        x = np.asarray(x, dtype=float)
        return _maybe_scalar(np.exp(1j * w * x), x)

    def evc(z):
        z = np.asarray(z, dtype=complex)
        return _maybe_scalar(np.exp(1j * w * z), z)

    return TestFunction(
        id=f"expi:omega={w:g}",
        sigma=abs(w),
        eval_real=ev,
        eval_complex=evc,
        decay=DecayEnvelope(C=1.0, alpha=0.0),
        p_membership=PMembership(INF, min_inclusive=True),
        known_norms={INF: 1.0},
    )


def make_fejer_square(sigma: float) -> TestFunction:
    """f(x) = (sin(sigma x / 2) / (sigma x / 2))^2, type sigma, f(0) = 1."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    s = float(sigma)

    def ev(x):
        x = np.asarray(x, dtype=float)
        return _maybe_scalar(sinc_ratio(0.5 * s * x) ** 2, x)

    def evc(z):
        z = np.asarray(z, dtype=complex)
        return _maybe_scalar(sinc_ratio(0.5 * s * z) ** 2, z)

    return TestFunction(
        id=f"fejer_square:sigma={s:g}",
        sigma=s,
        eval_real=ev,
        eval_complex=evc,
        # Conservative constant: 4/sigma^2 alone fails near |x| = 1.
        decay=DecayEnvelope(C=max(4.0, 16.0 / (s * s)), alpha=2.0),
        p_membership=PMembership(1.0, min_inclusive=True),
        known_norms={
            1.0: 2.0 * math.pi / s,
            2.0: math.sqrt(4.0 * math.pi / (3.0 * s)),
            INF: 1.0,
        },
    )


def mollify(f: TestFunction, rho: float) -> TestFunction:
    """f_rho(x) = (sin(rho x)/(rho x))^2 * f((1 - rho^2) x).

    The weight has type 2*rho and the dilated factor type
    (1 - rho^2)*sigma, so the product has type 2*rho + (1 - rho^2)*sigma.
    That value is stored as both sigma and computed_type: it can exceed
    the original sigma, and undershooting the type would break the
    bandwidth-dependent machinery built on top (coefficient counts,
    certificate spacings).
    """
    if not 0 < rho < 1:
        raise ValueError("rho must lie in (0, 1)")
    r = float(rho)
    shrink = 1.0 - r * r

    def ev(x):
        x = np.asarray(x, dtype=float)
        w = sinc_ratio(r * x) ** 2
        return _maybe_scalar(w * np.asarray(f.eval_real(shrink * x)), x)

    evc = None
    if f.eval_complex is not None:
        def evc(z):
            z = np.asarray(z, dtype=complex)
            w = sinc_ratio(r * z) ** 2
            return _maybe_scalar(w * np.asarray(f.eval_complex(shrink * z)), z)

    ctype = 2.0 * r + shrink * f.sigma
    env = f.decay
    new_c = 4.0 * env.C / (r * r * shrink ** env.alpha)
    base_id = f.id
    return TestFunction(
        id=f"mollify:base={base_id.replace(':', ',', 1)},rho={r:g}",
        sigma=ctype,
        eval_real=ev,
        eval_complex=evc,
        decay=DecayEnvelope(C=new_c, alpha=env.alpha + 2.0),
        p_membership=PMembership(1.0, min_inclusive=True),
        known_norms={},
        computed_type=ctype,
    )


class UnknownFunctionError(ValueError):
    """Raised for malformed or unrecognized catalog id strings."""


def _parse_params(text: str) -> dict:
    params = {}
    if text:
        for item in text.split(","):
            key, sep, val = item.partition("=")
            if not sep or not key or not val:
                raise UnknownFunctionError(
                    f"malformed parameter {item!r} (expected key=value)")
            params[key] = val
    return params


def _pop_float(params: dict, key: str, fn_name: str) -> float:
    if key not in params:
        raise UnknownFunctionError(f"{fn_name} requires parameter {key!r}")
    raw = params.pop(key)
    try:
        return float(raw)
    except ValueError as exc:
        raise UnknownFunctionError(
            f"parameter {key}={raw!r} is not a number") from exc


def from_id(text: str) -> TestFunction:
    """Build a catalog member from an id like ``sinc:sigma=1``.

    Supported ids:
      sinc:sigma=S
      expi:omega=W
      fejer_square:sigma=S
      mollify:base=NAME,<base params>,rho=R
    """
    name, _, rest = text.partition(":")
    params = _parse_params(rest)
    try:
        if name == "sinc":
            f = make_sinc(_pop_float(params, "sigma", name))
        elif name == "expi":
            f = make_complex_exponential(_pop_float(params, "omega", name))
        elif name == "fejer_square":
            f = make_fejer_square(_pop_float(params, "sigma", name))
        elif name == "mollify":
            if "base" not in params:
                raise UnknownFunctionError("mollify requires parameter 'base'")
            base_name = params.pop("base")
            if base_name == "mollify":
                raise UnknownFunctionError("nested mollify is not supported")
            rho = _pop_float(params, "rho", name)
            base_id = base_name
            if params:
                base_id += ":" + ",".join(f"{k}={v}" for k, v in params.items())
                params = {}
            f = mollify(from_id(base_id), rho)
        else:
            raise UnknownFunctionError(f"unknown catalog function {name!r}")
    except ValueError as exc:
        if isinstance(exc, UnknownFunctionError):
            raise
        raise UnknownFunctionError(f"invalid parameters for {name}: {exc}") from exc
    if params:
        raise UnknownFunctionError(
            f"unexpected parameters for {name}: {sorted(params)}")
    return f
