"""Pure-Python implementations of the hot loops (fallback for ``_ckernels``)."""
import numpy as np

_RESCALE = 1e30

# Dormand-Prince 5(4) tableau.
A21 = 1.0 / 5.0
A31, A32 = 3.0 / 40.0, 9.0 / 40.0
A41, A42, A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
A51, A52, A53, A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
A61, A62, A63 = 9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0
A64, A65 = 49.0 / 176.0, -5103.0 / 18656.0
B1, B3, B4, B5, B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
E1, E3, E4 = 71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0
E5, E6, E7 = -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0


def cross_sections(delta, g21, g31, g32, G32, r23, omega_c):
    d = np.ascontiguousarray(delta, dtype=np.float64).ravel()
    om2 = omega_c * omega_c
    pump = om2 + g32 * r23
    em_den = g32 * G32 + 2.0 * om2 + 2.0 * g32 * r23
    sa = np.empty_like(d)
    se = np.empty_like(d)

    near = np.abs(d) < _RESCALE
    d2 = d[near] ** 2
    d4 = d2 * d2
    den = 4.0 * d2 * (-2.0 * om2 + g21 * g21 + g31 * g31) + (om2 + g21 * g31) ** 2 + 16.0 * d4
    sa[near] = g31 * (g21 * om2 + g31 * (g21 * g21 + 4.0 * d2)) / den
    se[near] = (
        g31 * G32 * om2 * (om2 + g21 * g31 - 4.0 * d2)
        + g31 * (g21 * (om2 + g21 * g31) + 4.0 * g31 * d2) * pump
    ) / (den * em_den)

    far = ~near
    if far.any():
        # numerator and denominator divided by d**4, u = 1/d**2
        u = 1.0 / d[far] ** 2
        den = 4.0 * u * (-2.0 * om2 + g21 * g21 + g31 * g31) + (om2 + g21 * g31) ** 2 * u * u + 16.0
        sa[far] = g31 * (g21 * om2 * u * u + g31 * (g21 * g21 * u * u + 4.0 * u)) / den
        se[far] = (
            g31 * G32 * om2 * ((om2 + g21 * g31) * u * u - 4.0 * u)
            + g31 * (g21 * (om2 + g21 * g31) * u * u + 4.0 * g31 * u) * pump
        ) / (den * em_den)
    return sa, se


def spectrum(delta, g21, g31, g32, G32, r23, omega_c, lam):
    """Cross sections and saturated brightness; gain points get B = nan."""
    sa, se = cross_sections(delta, g21, g31, g32, G32, r23, omega_c)
    net = sa - lam * se
    gain = ~(net > 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        b = np.where(gain, np.nan, lam * se / net)
    return sa, se, b, gain


# Decaying channels keep h*alpha inside the stable region so the error
# does not ride the stability edge once the solution is flat.
STIFF_CAP = 2.0


def _integrate_channel(alpha, s, z, out, rtol, atol, max_steps):
    nz = len(z)
    y = 0.0
    t = z[0]
    out[0] = 0.0
    span = z[-1] - z[0]
    if span <= 0.0:
        for j in range(1, nz):
            out[j] = 0.0
        return 0
    h = min(span, 0.05 / abs(alpha)) if alpha != 0.0 else span
    k1 = s - alpha * y
    steps = 0
    for j in range(1, nz):
        t_end = z[j]
        while t < t_end:
            if steps >= max_steps:
                return -1
            if h > t_end - t:
                h = t_end - t
            k2 = s - alpha * (y + h * A21 * k1)
            k3 = s - alpha * (y + h * (A31 * k1 + A32 * k2))
            k4 = s - alpha * (y + h * (A41 * k1 + A42 * k2 + A43 * k3))
            k5 = s - alpha * (y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4))
            k6 = s - alpha * (y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5))
            ynew = y + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6)
            k7 = s - alpha * ynew
            err = abs(h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7))
            sc = atol + rtol * max(abs(y), abs(ynew))
            steps += 1
            if sc > 0.0:
                ratio = err / sc
            elif err == 0.0:
                ratio = 0.0
            else:
                ratio = 1e300
            if ratio <= 1.0:
                t += h
                y = ynew
                k1 = k7
                fac = 5.0 if ratio == 0.0 else min(5.0, 0.9 * ratio**-0.2)
            else:
                fac = max(0.2, 0.9 * ratio**-0.2)
            h *= fac
            if alpha > 0.0 and h * alpha > STIFF_CAP:
                h = STIFF_CAP / alpha
        t = t_end
        out[j] = y
    return steps


def integrate_linear(alpha, source, z, rtol=1e-9, atol=0.0, max_steps=1_000_000):
    """Integrate dB/dz = s - alpha*B with B(z[0]) = 0 for each channel.

    Returns (B, steps) with B shaped (n_channels, len(z)).
    """
    a = np.ascontiguousarray(alpha, dtype=np.float64).ravel()
    s = np.ascontiguousarray(source, dtype=np.float64).ravel()
    zz = [float(v) for v in np.ravel(z)]
    out = np.empty((a.size, len(zz)))
    steps = np.empty(a.size, dtype=np.int64)
    for i in range(a.size):
        row = [0.0] * len(zz)
        k = _integrate_channel(float(a[i]), float(s[i]), zz, row, rtol, atol, max_steps)
        if k < 0:
            raise ArithmeticError(f"step budget exhausted on channel {i}")
        out[i] = row
        steps[i] = k
    return out, steps
