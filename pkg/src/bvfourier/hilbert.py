"""Conjugation operators on the line and on the circle.

Four routes are provided:

* :func:`hilbert_pv` -- principal-value quadrature of the symmetric
  difference form (1/pi) int_0^inf {f(x-u) - f(x+u)} du/u, with u-nodes
  at half-spacing offsets so the singularity is never sampled,
* :func:`hilbert_multiplier` -- frequency-domain route through the sign
  multiplier, with periodization debias and a guarded algebraic tail
  extension for slowly decaying inputs,
* :func:`modified_hilbert` -- the augmented kernel 1/(x-t) + t/(1+t^2),
  well defined for bounded inputs,
* :func:`periodic_conjugate` -- the cotangent-kernel conjugate function
  on a one-period grid.

The two line routes are deliberately independent discretizations and are
cross-checked against each other in the verification suites.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

from .grids import DecayClass, SampledFunction

__all__ = [
    "PvConfig",
    "MULTIPLIER_SIGN",
    "hilbert_pv",
    "hilbert_multiplier",
    "modified_hilbert",
    "periodic_conjugate",
    "kernel_difference",
]

# Sign of the frequency multiplier: transform of the conjugate equals
# MULTIPLIER_SIGN * 1j * sign(freq) * transform of the input, under the
# e^{-i t x} transform convention.  Pinned empirically by the
# Poisson / conjugate-Poisson pair (see tests); flipping it maps the
# Poisson kernel to minus its conjugate.
MULTIPLIER_SIGN = -1.0

_LINE_DECAYS = (DecayClass.COMPACT_SUPPORT, DecayClass.VANISHING_AT_INFINITY)


@dataclass(frozen=True)
class PvConfig:
    """Quadrature controls for the principal-value routes.

    ``delta_min`` is the smallest exclusion radius around the
    singularity; the default half spacing places the first u-node at
    h/2, the smallest offset the midpoint scheme supports.  Larger
    values (up to one spacing) drop leading u-nodes, which is useful
    for bias studies.
    """

    delta_min: float | None = None
    pairing: str = "symmetric_difference"

    def __post_init__(self):
        if self.pairing != "symmetric_difference":
            raise ValueError(f"unsupported pairing {self.pairing!r}")
        if self.delta_min is not None and not self.delta_min > 0.0:
            raise ValueError("delta_min must be positive")

    def start_index(self, h: float) -> int:
        if self.delta_min is None:
            return 0
        if self.delta_min > h * (1.0 + 1e-12):
            raise ValueError(f"delta_min={self.delta_min} exceeds the grid spacing {h}")
        return 0 if self.delta_min <= 0.5 * h * (1.0 + 1e-12) else 1


def _require_line_input(f: SampledFunction, op: str, allow_bounded: bool = False) -> None:
    if not f.is_real():
        raise ValueError(f"{op} expects real-valued samples")
    if f.decay_class is DecayClass.PERIODIC:
        raise ValueError(f"{op} rejects periodic input; use periodic_conjugate")
    if f.decay_class is DecayClass.BOUNDED and not allow_bounded:
        raise ValueError(f"{op} rejects bounded non-vanishing input; use modified_hilbert")


def _pair_sums(gbar: np.ndarray, weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """A_i = sum_j w_j gbar[i-1-j], B_i = sum_j w_j gbar[i+j], zero padded."""
    n = gbar.size + 1
    conv = fftconvolve(weights, gbar)
    A = np.concatenate(([0.0], conv[: n - 1]))
    corr = fftconvolve(weights[::-1], gbar)
    B = np.concatenate((corr[gbar.size - 1 :], [0.0]))
    return A, B


def _pv_values(f: SampledFunction, cfg: PvConfig) -> np.ndarray:
    h = f.h
    j0 = cfg.start_index(h)
    gbar = 0.5 * (f.values[1:] + f.values[:-1])  # midpoint samples
    weights = 1.0 / (np.arange(f.n - 1) + 0.5)
    if j0:
        weights[:j0] = 0.0
    A, B = _pair_sums(gbar, weights)
    return (A - B) / np.pi


def hilbert_pv(f: SampledFunction, cfg: PvConfig | None = None) -> SampledFunction:
    """Principal-value Hilbert transform on the line.

    Quadrature nodes sit at u = (j + 1/2) h, so symmetric cancellation
    keeps the integrand bounded near u = 0; integrals over the real line
    are truncated at the grid boundary (zero extension for the declared
    decaying classes).  Output decay is vanishing_at_infinity: the
    transform of an integrable function decays like 1/x.
    """
    _require_line_input(f, "hilbert_pv")
    cfg = cfg or PvConfig()
    return f.with_values(_pv_values(f, cfg), DecayClass.VANISHING_AT_INFINITY)


def modified_hilbert(f: SampledFunction, cfg: PvConfig | None = None) -> SampledFunction:
    """Hilbert transform with the augmented kernel 1/(x-t) + t/(1+t^2).

    The added term makes the integral well defined near infinity for
    bounded inputs; the combined kernel decays like 1/t^2, so window
    truncation costs only O(1/R).  For compactly supported input the
    result differs from :func:`hilbert_pv` by the constant
    (1/pi) int f(t) t/(1+t^2) dt, exactly, because the quadrature is
    additive over the kernel split.
    """
    _require_line_input(f, "modified_hilbert", allow_bounded=True)
    cfg = cfg or PvConfig()
    xm = 0.5 * (f.x[1:] + f.x[:-1])
    gbar = 0.5 * (f.values[1:] + f.values[:-1])
    offset = (f.h / np.pi) * float(np.sum(gbar * xm / (1.0 + xm * xm)))
    out = _pv_values(f, cfg) + offset
    decay = DecayClass.BOUNDED if f.decay_class is DecayClass.BOUNDED else DecayClass.VANISHING_AT_INFINITY
    return f.with_values(out, decay)


def _inverse_power_transforms(x: np.ndarray, R: float, kmax: int) -> np.ndarray:
    """J_k(x) = int_R^inf dt / (t^k (x - t)) for k = 1..kmax, |x| < R.

    Stable two-regime evaluation: a power series in x/R near the
    origin, the log/recursion closed form elsewhere.
    """
    x = np.asarray(x, dtype=float)
    J = np.zeros((kmax + 1, x.size))
    small = np.abs(x) < 0.3 * R
    r = x[small] / R
    for k in range(1, kmax + 1):
        s = np.zeros_like(r)
        term = np.ones_like(r)
        for m in range(120):
            s += term / (k + m)
            term *= r
        J[k, small] = -s / R**k
    xl = x[~small]
    J[1, ~small] = (1.0 / xl) * np.log(np.abs(R - xl) / R)
    for k in range(2, kmax + 1):
        J[k, ~small] = (1.0 / xl) * (R ** (1 - k) / (k - 1) + J[k - 1, ~small])
    return J


def _tail_correction(f: SampledFunction) -> np.ndarray:
    """Hilbert contribution of fitted inverse-power tails outside the window.

    Each side's outer 5% of samples is fitted with sum_k c_k (Rm/|t|)^k,
    k = 1..5, and the transform of the modelled tail beyond
    Rm = boundary + h/2 is added in closed form.  Sides whose samples
    are negligible, or not consistent with algebraic decay (relative
    fit residual above 1e-3), are skipped; the correction then degrades
    gracefully to plain truncation.
    """
    n, h, x = f.n, f.h, f.x
    m = max(32, n // 20)
    kmax = 5
    scale = float(np.max(np.abs(f.values)))
    corr = np.zeros(n)
    if scale == 0.0:
        return corr
    for side in (1, -1):
        if side > 0:
            xs, fs, boundary = x[-m:], f.values[-m:], f.grid.b
        else:
            xs, fs, boundary = -x[:m][::-1], f.values[:m][::-1], -f.grid.a
        if np.max(np.abs(fs)) < 1e-12 * scale:
            continue
        Rm = boundary + 0.5 * h
        basis = np.stack([(Rm / xs) ** k for k in range(1, kmax + 1)], axis=1)
        coef, *_ = np.linalg.lstsq(basis, fs, rcond=None)
        resid = float(np.sqrt(np.mean((basis @ coef - fs) ** 2)))
        if resid > 1e-3 * float(np.sqrt(np.mean(fs**2))):
            continue
        J = _inverse_power_transforms(side * x, Rm, kmax)
        contrib = np.zeros(n)
        for k in range(1, kmax + 1):
            contrib += coef[k - 1] * Rm**k * J[k]
        # left tail: int_{-inf}^{-Rm} model/(x-t) dt = -sum c_k Rm^k J_k(-x)
        corr += contrib / np.pi if side > 0 else -contrib / np.pi
    return corr


def hilbert_multiplier(f: SampledFunction, pad_factor: int = 16) -> SampledFunction:
    """Hilbert transform through the frequency-domain sign multiplier.

    The samples are zero padded ``pad_factor``-fold, transformed,
    multiplied by MULTIPLIER_SIGN * i * sign(freq) and transformed back.
    Two exact corrections restore line semantics from the circular
    transform: (i) the periodization kernel difference
    (pi/P) cot(pi u / P) - 1/u is removed through its cubic moment
    expansion, and (ii) for vanishing_at_infinity input the tails
    outside the window are extended by a fitted inverse-power model
    (skipped for compactly supported or non-algebraic data).  The
    imaginary residue is checked against 1e-8 relative and discarded.
    """
    _require_line_input(f, "hilbert_multiplier")
    if pad_factor < 1:
        raise ValueError("pad_factor must be >= 1")
    n, h, x = f.n, f.h, f.x
    N = pad_factor * n
    padded = np.zeros(N)
    padded[:n] = f.values
    freq = np.fft.fftfreq(N, d=h)
    mult = MULTIPLIER_SIGN * 1j * np.sign(freq)
    if N % 2 == 0:
        mult[N // 2] = 0.0  # Nyquist bin has no well defined sign
    spec = np.fft.fft(padded) * mult
    out_c = np.fft.ifft(spec)
    real_scale = float(np.max(np.abs(out_c.real)))
    residue = float(np.max(np.abs(out_c.imag))) / (real_scale + 1e-300)
    if real_scale > 0.0 and residue > 1e-8:
        raise ValueError(f"imaginary residue {residue:.2e} exceeds 1e-8 relative")
    out = out_c.real[:n]

    # periodization debias: the circular transform realizes the
    # cotangent kernel with period P = N h; its difference from the
    # Cauchy kernel is smooth and is removed via the moment expansion
    # Delta(u) = -pi^2 u / (3 P^2) - pi^4 u^3 / (45 P^4) + O(P^-6).
    P = N * h
    w = np.full(n, h)
    w[0] = w[-1] = 0.5 * h
    mom = [float(np.sum(w * f.values * x**k)) for k in range(4)]
    delta = -(np.pi / (3.0 * P * P)) * (x * mom[0] - mom[1]) - (np.pi**3 / (45.0 * P**4)) * (
        x**3 * mom[0] - 3.0 * x**2 * mom[1] + 3.0 * x * mom[2] - mom[3]
    )
    out -= delta

    if f.decay_class is DecayClass.VANISHING_AT_INFINITY:
        out += _tail_correction(f)
    return f.with_values(out, DecayClass.VANISHING_AT_INFINITY)


def periodic_conjugate(f: SampledFunction) -> SampledFunction:
    """Conjugate function (1/2pi) PV int f(t) cot((x-t)/2) dt on (-pi, pi].

    The period is folded so the quadrature runs over u in (0, 2pi) with
    half-offset midpoint nodes; on a full period the midpoint rule is
    spectrally accurate, and on band-limited input the scheme reproduces
    the -i sign(k) coefficient multiplier to machine precision (the two
    routes are compared in fourier diagnostics).
    """
    if f.decay_class is not DecayClass.PERIODIC:
        raise ValueError("periodic_conjugate expects periodic input")
    if not f.is_real():
        raise ValueError("periodic_conjugate expects real-valued samples")
    if abs(f.grid.width - 2.0 * math.pi) > 1e-9:
        raise ValueError("periodic grid must span exactly (-pi, pi]")
    N = f.n - 1  # duplicated closure sample dropped
    v = f.values[:N]
    h = f.grid.width / N
    spec = np.fft.rfft(v)
    k = np.arange(spec.size)
    shift = np.exp(1j * np.pi * k / N)
    if N % 2 == 0:
        shift[-1] = math.cos(np.pi * (N // 2) / N)
    gbar = np.fft.irfft(spec * shift, N)  # trig interpolant at half offsets
    u = (np.arange(N) + 0.5) * h
    weights = 1.0 / np.tan(0.5 * u)
    FG = np.fft.fft(gbar)
    FW = np.fft.fft(weights)
    conv = np.fft.ifft(FG * FW).real
    corr = np.fft.ifft(FG * np.conj(FW)).real
    A = conv[(np.arange(N) - 1) % N]
    vals = (h / (4.0 * np.pi)) * (A - corr)
    return f.with_values(np.concatenate((vals, [vals[0]])), DecayClass.PERIODIC)


_POLE_WARN_TOL = 1e-3


def kernel_difference(t: float, terms: int) -> tuple[float, float]:
    """Cotangent/Cauchy kernel difference (1/2) cot(t/2) - 1/t.

    Returns the symmetric partial sum of sum_{k != 0} t/(2 k pi (t - 2 k pi))
    over 1 <= |k| <= terms, paired as sum_{k>=1} 2 t / (t^2 - 4 k^2 pi^2),
    together with the closed form.  The difference is O(1/terms).  At
    t = 0 both values are the removable-singularity limit 0; the closed
    form is odd in t exactly.
    """
    t = float(t)
    if not (-2.0 * math.pi < t < 2.0 * math.pi):
        raise ValueError("t must lie in (-2*pi, 2*pi)")
    if terms < 1:
        raise ValueError("terms must be a positive integer")
    if abs(abs(t) - 2.0 * math.pi) < _POLE_WARN_TOL:
        warnings.warn(
            f"t={t} is within {_POLE_WARN_TOL} of the kernel pole at ±2*pi",
            RuntimeWarning,
            stacklevel=2,
        )
    if t == 0.0:
        return 0.0, 0.0
    partial = 0.0
    chunk = 1_000_000
    for start in range(1, terms + 1, chunk):
        k = np.arange(start, min(start + chunk, terms + 1), dtype=float)
        partial += float(np.sum(2.0 * t / (t * t - 4.0 * k * k * np.pi**2)))
    if abs(t) < 1e-3:
        closed = -t / 12.0 - t**3 / 720.0  # Laurent tail, avoids cancellation
    else:
        closed = 0.5 / math.tan(0.5 * t) - 1.0 / t
    return partial, closed
