"""Pure-numpy kernels: stationary coefficients and clock times over arrays of k1.

This is the fallback for the compiled ``_kernels`` extension and mirrors it
expression for expression.  Everything is written in real arithmetic, one
branch per regime of the barrier region:

* propagating (k2 real), trigonometric form multiplied through by cos^2;
* evanescent (k2 = i q2), hyperbolic form divided through by cosh^2, which
  keeps every quantity bounded for arbitrarily opaque barriers.

Both branches are written in terms of ``sinc``-like ratios so that the band
edge k2 -> 0 is regular.  Regime codes: 0 propagating, 1 evanescent,
2 below the right asymptotic level (total reflection).
"""
import numpy as np

PROPAGATING = 0
EVANESCENT = 1
BELOW_RIGHT_LEVEL = 2

SMALL_U = 0.5
SYMMETRY_EPS = 1e-300

# (1 - sinc(2u)) / u^2 = sum_{n>=1} (-1)^(n+1) 4^n w^(n-1) / (2n+1)!,  w = u^2
_H_COEFFS = []
_fact = 1.0
for _n in range(1, 12):
    _fact = 1.0
    for _j in range(2, 2 * _n + 2):
        _fact *= _j
    _H_COEFFS.append((-1.0) ** (_n + 1) * 4.0**_n / _fact)
H_COEFFS = np.array(_H_COEFFS)
del _n, _j, _fact, _H_COEFFS


def _h_series(w):
    out = np.zeros_like(w)
    for c in H_COEFFS[::-1]:
        out = out * w + c
    return out


def _sech2(x):
    e = np.exp(-2.0 * x)
    return 4.0 * e / (1.0 + e) ** 2


def _propagating(k1, kap, k2sq, a):
    """(Num, Den) of the cos^2-normalised time formula for k3 -> kap."""
    k2 = np.sqrt(k2sq)
    u = k2 * a
    w = u * u
    small = u < SMALL_U
    with np.errstate(divide="ignore", invalid="ignore"):
        h = np.where(small, _h_series(w), (1.0 - np.sin(2.0 * u) / (2.0 * u)) / w)
        sn = np.where(u < 1e-4, 1.0 - w / 6.0 + w * w / 120.0, np.sin(u) / u)
    s2 = 1.0 - w * h
    c = np.cos(u)
    s = k1 + kap
    p = k2sq + k1 * kap
    den = s * s * c * c + p * p * a * a * sn * sn
    num = 1.0 + s2 + k1 * kap * a * a * h
    return num, den


def _evanescent(k1, kap, k2sq, a):
    """(Num, Den) of the cosh^2-normalised time formula for k3 -> kap."""
    q = np.sqrt(-k2sq)
    x = q * a
    se2 = _sech2(x)
    small = x < SMALL_U
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        tx = np.where(x < 1e-4, 1.0 - x * x / 3.0, np.tanh(x) / x)
        g = np.where(small, _h_series(-x * x) * se2, (tx - se2) / (x * x))
    s = k1 + kap
    p = k2sq + k1 * kap
    den = s * s + p * p * a * a * tx * tx
    num = se2 + tx + k1 * kap * a * a * g
    return num, den, se2


def barrier_times(k1, v0, v1, a, hbar=1.0, mu=1.0):
    """Coefficients and stationary times for every entry of ``k1``.

    Returns ``(regime, T, R, t_ct, t_0, t_cr, tau_d)``.  Below the right level
    the transmission quantities are NaN, ``T = 0``, ``R = 1`` and ``t_cr`` is
    the continued reflection time (equal to the dwell time there).
    """
    k1 = np.ascontiguousarray(k1, dtype=float)
    scale = 2.0 * mu / (hbar * hbar)
    k2sq = k1 * k1 - scale * v0
    k3sq = k1 * k1 - scale * v1
    below = k3sq <= 0.0 if v1 > 0.0 else np.zeros(k1.shape, dtype=bool)
    prop = (k2sq >= 0.0) & ~below
    evan = (k2sq < 0.0) & ~below
    k3 = np.sqrt(np.where(below, 0.0, k3sq))
    pref = mu * a / hbar

    regime = np.full(k1.shape, EVANESCENT, dtype=np.int8)
    regime[prop] = PROPAGATING
    regime[below] = BELOW_RIGHT_LEVEL

    T = np.zeros_like(k1)
    R = np.ones_like(k1)
    t_ct = np.full_like(k1, np.nan)
    t_0 = np.full_like(k1, np.nan)
    t_cr = np.empty_like(k1)

    symmetric = abs(v1) < SYMMETRY_EPS

    if prop.any():
        kk1, kk3, kk2sq = k1[prop], k3[prop], k2sq[prop]
        num_p, den_p = _propagating(kk1, kk3, kk2sq, a)
        num_m, den_m = _propagating(kk1, -kk3, kk2sq, a)
        T[prop] = 4.0 * kk1 * kk3 / den_p
        R[prop] = den_m / den_p
        t_ct[prop] = pref * (kk1 + kk3) * num_p / den_p
        with np.errstate(divide="ignore", invalid="ignore"):
            t_0[prop] = 0.0 if symmetric else pref * (kk1 - kk3) * num_m / den_m

    if evan.any():
        kk1, kk3, kk2sq = k1[evan], k3[evan], k2sq[evan]
        num_p, den_p, se2 = _evanescent(kk1, kk3, kk2sq, a)
        num_m, den_m, _ = _evanescent(kk1, -kk3, kk2sq, a)
        T[evan] = 4.0 * kk1 * kk3 * se2 / den_p
        R[evan] = den_m / den_p
        t_ct[evan] = pref * (kk1 + kk3) * num_p / den_p
        with np.errstate(divide="ignore", invalid="ignore"):
            t_0[evan] = 0.0 if symmetric else pref * (kk1 - kk3) * num_m / den_m

    ok = ~below
    t_cr[ok] = t_ct[ok] + t_0[ok]
    tau_d = t_ct + R * t_0

    if below.any():
        kk1 = k1[below]
        q2 = np.sqrt(-k2sq[below])
        q3 = np.sqrt(-k3sq[below])
        x = q2 * a
        th = np.tanh(x)
        se2 = _sech2(x)
        # reflection amplitude is -conj(D)/D; D/cosh = X + iY
        X = -q2 * (q3 + q2 * th)
        Y = kk1 * (q2 + q3 * th)
        dX = -q3 - 2.0 * q2 * th - q2 * q2 * a * se2
        dY = kk1 + kk1 * q3 * a * se2
        t = 2.0 * mu / (hbar * q2) * (X * dY - Y * dX) / (X * X + Y * Y)
        t_cr[below] = t
        tau_d[below] = t

    return regime, T, R, t_ct, t_0, t_cr, tau_d


N_COMPONENTS = 8


def ensemble_integrand(k, k0, sigma, v0, v1, a, hbar=1.0, mu=1.0):
    """Integrand columns for the wave-packet averages, shape ``(len(k), 8)``.

    Columns: w, wT, wR, wT*t_ct, wR*t_cr, wT*tau_d, wR*tau_d, wTR*t_0 with
    ``w = |A(k)|^2`` the unit-norm Gaussian momentum density.  Transmission
    columns are exactly zero below the right level.
    """
    k = np.ascontiguousarray(k, dtype=float)
    regime, T, R, t_ct, t_0, t_cr, tau_d = barrier_times(k, v0, v1, a, hbar, mu)
    d = k - k0
    w = np.sqrt(2.0 / np.pi) * sigma * np.exp(-2.0 * sigma * sigma * d * d)
    out = np.empty((k.shape[0], N_COMPONENTS))
    wT = w * T
    wR = w * R
    trans = regime != BELOW_RIGHT_LEVEL
    out[:, 0] = w
    out[:, 1] = wT
    out[:, 2] = wR
    out[:, 3] = np.where(trans, wT * t_ct, 0.0)
    out[:, 4] = wR * t_cr
    out[:, 5] = np.where(trans, wT * tau_d, 0.0)
    out[:, 6] = wR * tau_d
    out[:, 7] = np.where(trans, wT * R * t_0, 0.0)
    return out
