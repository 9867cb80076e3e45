#!/usr/bin/env python3
"""Regenerate the frozen oracle fixtures under tests/fixtures/.

The oracle computations here are deliberately independent of the library's
adaptive quadrature: composite Simpson rules, direct long partial sums,
high-precision mpmath evaluation, and closed-form identities.  Run from the
repository root:

    python3 scripts/generate_fixtures.py
"""

import json
import math
import pathlib
import sys

import mpmath
import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

import bandlim as bl  # noqa: E402

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "tests" / "fixtures"


def simpson(values: np.ndarray, h: float) -> float:
    """Composite Simpson on an odd-length uniform grid."""
    n = len(values)
    assert n % 2 == 1
    return h / 3.0 * (values[0] + values[-1]
                      + 4.0 * values[1:-1:2].sum() + 2.0 * values[2:-2:2].sum())


def simpson_complex(values: np.ndarray, h: float) -> complex:
    return complex(simpson(values.real, h) + 1j * simpson(values.imag, h))


def fejer_l1_norm() -> dict:
    """||fejer_square(2)||_1 by 10^6-panel Simpson on [-1e4, 1e4] plus the
    analytic tail of (sin u / u)^2; exact value is pi."""
    big = 1.0e4
    n = 2_000_001
    x = np.linspace(-big, big, n)
    u = np.where(x == 0.0, 1.0, x)  # f(0) = 1 exactly
    f = np.where(x == 0.0, 1.0, (np.sin(u) / u) ** 2)
    core = simpson(f, x[1] - x[0])
    tail_hi = 2.0 / big          # integral of 1/x^2 beyond the window
    return {"value": core, "tail_upper_bound": tail_hi, "exact": math.pi}


def sinc_c3_tau10() -> dict:
    """c_3 of sinc(1) at tau = 10 by 10^6-point Simpson."""
    tau = 10.0
    n = 1_000_001
    t = np.linspace(-tau, tau, n)
    tt = np.where(t == 0.0, 1.0, t)
    f = np.where(t == 0.0, 1.0 / math.pi, np.sin(tt) / (math.pi * tt))
    integrand = f * np.exp(-1j * 3.0 * math.pi * t / tau) / (2.0 * tau)
    c3 = simpson_complex(integrand, t[1] - t[0])
    return {"re": c3.real, "im": c3.imag}


def kernel_gap_highprec() -> dict:
    """kernel_gap(1, 10, 3.7) via 50-digit mpmath."""
    mpmath.mp.dps = 50
    sigma, tau, v = mpmath.mpf(1), mpmath.mpf(10), mpmath.mpf("3.7")
    N = int(mpmath.floor(sigma * tau / mpmath.pi))
    xi = mpmath.pi * v / tau
    d = mpmath.sin((N + mpmath.mpf("0.5")) * xi) / mpmath.sin(xi / 2)
    gap = mpmath.sin(sigma * v) / (mpmath.pi * v) - d / (2 * tau)
    return {"sigma": 1.0, "tau": 10.0, "v": 3.7, "N": N, "value": float(gap)}


def lewitan_long_sum() -> dict:
    """Verbatim Lewitan sum for sinc(1), tau = 20, x = 0.37, K = 10^6."""
    tau, x, K = 20.0, 0.37, 1_000_000
    k = np.arange(-K, K + 1, dtype=float)
    u = x / tau + k
    uu = np.where(u == 0.0, 1.0, u)
    w = np.where(u == 0.0, 1.0, (np.sin(uu) / uu) ** 2)
    s = x + k * tau
    ss = np.where(s == 0.0, 1.0, s)
    f = np.where(s == 0.0, 1.0 / math.pi, np.sin(ss) / (math.pi * ss))
    return {"tau": tau, "x": x, "K": K, "value": float(np.sum(f * w))}


def mollify_distance(rho: float) -> float:
    """||f - f_rho||_2 for f = sinc(1) by Simpson on [-2e3, 2e3]."""
    big = 2.0e3
    n = 4_000_001
    x = np.linspace(-big, big, n)
    xx = np.where(x == 0.0, 1.0, x)
    f = np.where(x == 0.0, 1.0 / math.pi, np.sin(xx) / (math.pi * xx))
    shrink = 1.0 - rho * rho
    y = shrink * x
    yy = np.where(y == 0.0, 1.0, y)
    fs = np.where(y == 0.0, 1.0 / math.pi, np.sin(yy) / (math.pi * yy))
    u = rho * x
    uu = np.where(u == 0.0, 1.0, u)
    w = np.where(u == 0.0, 1.0, (np.sin(uu) / uu) ** 2)
    return float(math.sqrt(simpson((f - w * fs) ** 2, x[1] - x[0])))


def plancherel_exact() -> dict:
    """Exact ||sinc(1)(. + iy)||_2 = sqrt(sinh(2y) / (2 pi y)) from the
    line-shifted transform e^{-y xi} on [-1, 1]."""
    return {f"{y:g}": math.sqrt(math.sinh(2.0 * y) / (2.0 * math.pi * y))
            for y in (0.5, 1.0, 2.0)}


def convergence_thresholds() -> dict:
    """Pre-build oracle run of the decay experiments.

    Records observed total-error ratios (tau=80 vs tau=10) and sup-norm
    behavior; the acceptance suite asserts against these with a 1.25x
    safety factor, floored at the nominal 1/4.
    """
    taus = [10.0, 20.0, 40.0, 80.0]
    quad = bl.QuadratureSpec()
    out = {"tau_ladder": taus, "lp_decay": {}, "sup_decay": {}}
    fns = {
        "sinc:sigma=1": bl.make_sinc(1.0),
        "fejer_square:sigma=2": bl.make_fejer_square(2.0),
        "mollify:base=sinc,sigma=1,rho=0.1": bl.mollify(bl.make_sinc(1.0), 0.1),
    }
    for fid, f in fns.items():
        for p in (1.5, 2.0, 4.0):
            recs = bl.convergence_study(f, p, taus, quad)
            totals = [r.total_error for r in recs]
            ratio = totals[-1] / totals[0]
            out["lp_decay"][f"{fid}|p={p:g}"] = {
                "totals": totals,
                "observed_ratio": ratio,
                "ratio_limit": max(0.25, 1.25 * ratio),
            }
        recs = bl.convergence_study(f, 2.0, taus, quad)
        grid = [r.sup_error.grid_max for r in recs]
        cert = [r.sup_error.certified_bound for r in recs]
        gratio = grid[-1] / grid[0]
        out["sup_decay"][fid] = {
            "grid_max": grid,
            "certified": cert,
            "observed_grid_ratio": gratio,
            "grid_ratio_limit": max(0.25, 1.25 * gratio),
            "cert_monotone": all(cert[i + 1] < cert[i]
                                 for i in range(len(cert) - 1)),
        }
    return out


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    oracle = {
        "fejer_square_sigma2_l1": fejer_l1_norm(),
        "sinc1_tau10_c3": sinc_c3_tau10(),
        "kernel_gap_1_10_3.7": kernel_gap_highprec(),
        "lewitan_sinc1_tau20": lewitan_long_sum(),
        "mollify_sinc1_l2_distance": {f"{r:g}": mollify_distance(r)
                                      for r in (0.2, 0.1, 0.05)},
        "plancherel_sinc1_p2_lhs": plancherel_exact(),
    }
    with open(FIXTURES / "oracle_values.json", "w", encoding="utf-8") as fh:
        json.dump(oracle, fh, indent=2)
        fh.write("\n")
    with open(FIXTURES / "convergence_thresholds.json", "w",
              encoding="utf-8") as fh:
        json.dump(convergence_thresholds(), fh, indent=2)
        fh.write("\n")
    print(f"wrote fixtures to {FIXTURES}")


if __name__ == "__main__":
    main()
