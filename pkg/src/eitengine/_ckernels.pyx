# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: cross-section grids and the adaptive transfer integrator.

Mirrors ``_pykernels`` function for function; the two must agree to rounding.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, fmax, fmin, pow, NAN

cnp.import_array()

cdef double _RESCALE = 1e30

# Dormand-Prince 5(4) tableau.
cdef double A21 = 1.0 / 5.0
cdef double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0
cdef double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0
cdef double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0, A53 = 64448.0 / 6561.0
cdef double A54 = -212.0 / 729.0
cdef double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0
cdef double A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0
cdef double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0
cdef double B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0
cdef double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0
cdef double E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0


cdef inline void _xs_point(double d, double g21, double g31, double g32, double G32,
                           double r23, double om2, double *sa, double *se) nogil:
    cdef double d2, d4, den, pump, em_den, u, c
    pump = om2 + g32 * r23
    c = om2 + g21 * g31
    em_den = g32 * G32 + 2.0 * om2 + 2.0 * g32 * r23
    if fabs(d) < _RESCALE:
        d2 = d * d
        d4 = d2 * d2
        den = 4.0 * d2 * (-2.0 * om2 + g21 * g21 + g31 * g31) + c * c + 16.0 * d4
        sa[0] = g31 * (g21 * om2 + g31 * (g21 * g21 + 4.0 * d2)) / den
        se[0] = (g31 * G32 * om2 * (om2 + g21 * g31 - 4.0 * d2)
                 + g31 * (g21 * (om2 + g21 * g31) + 4.0 * g31 * d2) * pump) / (den * em_den)
    else:
        # numerator and denominator divided by d**4, u = 1/d**2
        u = 1.0 / (d * d)
        den = 4.0 * u * (-2.0 * om2 + g21 * g21 + g31 * g31) + c * c * u * u + 16.0
        sa[0] = g31 * (g21 * om2 * u * u + g31 * (g21 * g21 * u * u + 4.0 * u)) / den
        se[0] = (g31 * G32 * om2 * ((om2 + g21 * g31) * u * u - 4.0 * u)
                 + g31 * (g21 * (om2 + g21 * g31) * u * u + 4.0 * g31 * u) * pump) / (den * em_den)


def cross_sections(delta, double g21, double g31, double g32, double G32, double r23,
                   double omega_c):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = np.ascontiguousarray(delta, dtype=np.float64).ravel()
    cdef Py_ssize_t n = d.shape[0], i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sa = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] se = np.empty(n)
    cdef double om2 = omega_c * omega_c
    cdef double a, e
    with nogil:
        for i in range(n):
            _xs_point(d[i], g21, g31, g32, G32, r23, om2, &a, &e)
            sa[i] = a
            se[i] = e
    return sa, se


def spectrum(delta, double g21, double g31, double g32, double G32, double r23,
             double omega_c, double lam):
    """Cross sections and saturated brightness; gain points get B = nan."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = np.ascontiguousarray(delta, dtype=np.float64).ravel()
    cdef Py_ssize_t n = d.shape[0], i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sa = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] se = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] b = np.empty(n)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] gain = np.zeros(n, dtype=np.uint8)
    cdef double om2 = omega_c * omega_c
    cdef double a, e, net
    with nogil:
        for i in range(n):
            _xs_point(d[i], g21, g31, g32, G32, r23, om2, &a, &e)
            sa[i] = a
            se[i] = e
            net = a - lam * e
            if net > 0.0:
                b[i] = lam * e / net
            else:
                b[i] = NAN
                gain[i] = 1
    return sa, se, b, gain.astype(bool)


# Decaying channels keep h*alpha inside the stable region so the error
# does not ride the stability edge once the solution is flat.
cdef double STIFF_CAP = 2.0


cdef inline double _rhs(double s, double alpha, double y) nogil:
    return s - alpha * y


cdef long _integrate_channel(double alpha, double s, double[:] z, double[:] out,
                             double rtol, double atol, long max_steps) nogil:
    cdef Py_ssize_t nz = z.shape[0], j
    cdef double y = 0.0, t = z[0], h, t_end, k1, k2, k3, k4, k5, k6, k7
    cdef double ynew, err, sc, ratio, fac
    cdef long steps = 0
    cdef double span = z[nz - 1] - z[0]
    out[0] = 0.0
    if span <= 0.0:
        for j in range(1, nz):
            out[j] = 0.0
        return 0
    if alpha != 0.0:
        h = fmin(span, 0.05 / fabs(alpha))
    else:
        h = span
    k1 = _rhs(s, alpha, y)
    for j in range(1, nz):
        t_end = z[j]
        while t < t_end:
            if steps >= max_steps:
                return -1
            if h > t_end - t:
                h = t_end - t
            k2 = _rhs(s, alpha, y + h * A21 * k1)
            k3 = _rhs(s, alpha, y + h * (A31 * k1 + A32 * k2))
            k4 = _rhs(s, alpha, y + h * (A41 * k1 + A42 * k2 + A43 * k3))
            k5 = _rhs(s, alpha, y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4))
            k6 = _rhs(s, alpha, y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5))
            ynew = y + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6)
            k7 = _rhs(s, alpha, ynew)
            err = fabs(h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7))
            sc = atol + rtol * fmax(fabs(y), fabs(ynew))
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
                fac = 5.0 if ratio == 0.0 else fmin(5.0, 0.9 * pow(ratio, -0.2))
            else:
                fac = fmax(0.2, 0.9 * pow(ratio, -0.2))
            h *= fac
            if alpha > 0.0 and h * alpha > STIFF_CAP:
                h = STIFF_CAP / alpha
        t = t_end
        out[j] = y
    return steps


def integrate_linear(alpha, source, z, double rtol=1e-9, double atol=0.0, long max_steps=1000000):
    """Integrate dB/dz = s - alpha*B with B(z[0]) = 0 for each channel.

    Returns (B, steps) with B shaped (n_channels, len(z)).
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.ascontiguousarray(alpha, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] s = np.ascontiguousarray(source, dtype=np.float64).ravel()
    cdef double[:] zz = np.ascontiguousarray(z, dtype=np.float64).ravel()
    cdef Py_ssize_t n = a.shape[0], i
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n, zz.shape[0]))
    cdef double[:, :] ov = out
    cdef cnp.ndarray[cnp.int64_t, ndim=1] steps = np.empty(n, dtype=np.int64)
    cdef long k
    for i in range(n):
        with nogil:
            k = _integrate_channel(a[i], s[i], zz, ov[i], rtol, atol, max_steps)
        if k < 0:
            raise ArithmeticError(f"step budget exhausted on channel {i}")
        steps[i] = k
    return out, steps
