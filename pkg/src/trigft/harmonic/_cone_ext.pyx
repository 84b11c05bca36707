# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled weight grid for the null-cone superposition integrand.

Same arithmetic as _kernel_py.weight_grid: frames are built per (theta, phi)
stencil point, the Jacobian uses central differences with a relative r
step, and the density is |Pf| / r^2.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos, exp, fabs

cnp.import_array()


cdef inline void _frame(double th, double ph, int anchor,
                        double* w, double* e1, double* e2) noexcept nogil:
    cdef double st = sin(th)
    cdef double w1 = st * cos(ph)
    cdef double w2 = st * sin(ph)
    cdef double w3 = cos(th)
    w[0] = w1
    w[1] = w2
    w[2] = w3
    cdef double s = 1.0
    if anchor < 0:
        w2 = -w2
        w3 = -w3
        s = -1.0
    cdef double c = 1.0 + w3
    e1[0] = 1.0 - w1 * w1 / c
    e1[1] = s * (-w1 * w2 / c)
    e1[2] = s * (-w1)
    e2[0] = -w1 * w2 / c
    e2[1] = s * (1.0 - w2 * w2 / c)
    e2[2] = s * (-w2)


def weight_grid(r, theta, phi, psi, t, int anchor, double step):
    cdef double[::1] rv = np.ascontiguousarray(r, dtype=np.float64)
    cdef double[::1] thv = np.ascontiguousarray(theta, dtype=np.float64)
    cdef double[::1] phv = np.ascontiguousarray(phi, dtype=np.float64)
    cdef double[::1] psv = np.ascontiguousarray(psi, dtype=np.float64)
    cdef double[::1] tv = np.ascontiguousarray(t, dtype=np.float64)
    cdef Py_ssize_t nr = rv.shape[0], nt = thv.shape[0], nph = phv.shape[0], ns = psv.shape[0]
    out = np.empty((nr, nt, nph, ns), dtype=np.complex128)
    cdef double[:, :, :, ::1] re = np.empty((nr, nt, nph, ns))
    cdef double[:, :, :, ::1] im = np.empty((nr, nt, nph, ns))

    # stencil slots: 0 centre, 1 theta+, 2 theta-, 3 phi+, 4 phi-
    cdef double w[5][3]
    cdef double f1[5][3]
    cdef double f2[5][3]
    cdef double dx[4][3]
    cdef double dy[4][3]
    cdef double om[4][4]
    cdef double xc[3]
    cdef double xp[3]
    cdef double xm[3]
    cdef double cp, sp, cpp, spp, cpm, spm, rr, hr, pf, dens, yt, xt, fac, m_ab
    cdef Py_ssize_t i, j, k, l, a, b, c, s
    cdef double inv2h = 0.5 / step

    with nogil:
        for j in range(nt):
            for k in range(nph):
                _frame(thv[j], phv[k], anchor, &w[0][0], &f1[0][0], &f2[0][0])
                _frame(thv[j] + step, phv[k], anchor, &w[1][0], &f1[1][0], &f2[1][0])
                _frame(thv[j] - step, phv[k], anchor, &w[2][0], &f1[2][0], &f2[2][0])
                _frame(thv[j], phv[k] + step, anchor, &w[3][0], &f1[3][0], &f2[3][0])
                _frame(thv[j], phv[k] - step, anchor, &w[4][0], &f1[4][0], &f2[4][0])
                for l in range(ns):
                    cp = cos(psv[l])
                    sp = sin(psv[l])
                    cpp = cos(psv[l] + step)
                    spp = sin(psv[l] + step)
                    cpm = cos(psv[l] - step)
                    spm = sin(psv[l] - step)
                    for i in range(nr):
                        rr = rv[i]
                        hr = step * rr
                        for c in range(3):
                            xc[c] = cp * f1[0][c] + sp * f2[0][c]
                            # r column
                            dx[0][c] = ((rr + hr) * xc[c] - (rr - hr) * xc[c]) / (2.0 * hr)
                            dy[0][c] = ((rr + hr) * w[0][c] - (rr - hr) * w[0][c]) / (2.0 * hr)
                            # theta and phi columns
                            for s in range(2):
                                xp[c] = rr * (cp * f1[1 + 2 * s][c] + sp * f2[1 + 2 * s][c])
                                xm[c] = rr * (cp * f1[2 + 2 * s][c] + sp * f2[2 + 2 * s][c])
                                dx[1 + s][c] = (xp[c] - xm[c]) * inv2h
                                dy[1 + s][c] = (rr * w[1 + 2 * s][c] - rr * w[2 + 2 * s][c]) * inv2h
                            # psi column
                            dx[3][c] = (rr * (cpp * f1[0][c] + spp * f2[0][c])
                                        - rr * (cpm * f1[0][c] + spm * f2[0][c])) * inv2h
                            dy[3][c] = 0.0
                        for a in range(4):
                            for b in range(4):
                                m_ab = 0.0
                                for c in range(3):
                                    m_ab = m_ab + dx[a][c] * dy[b][c] - dx[b][c] * dy[a][c]
                                om[a][b] = m_ab
                        pf = om[0][1] * om[2][3] - om[0][2] * om[1][3] + om[0][3] * om[1][2]
                        dens = fabs(pf) / (rr * rr)
                        yt = 0.0
                        xt = 0.0
                        for c in range(3):
                            yt = yt + rr * w[0][c] * tv[c]
                            xt = xt + rr * xc[c] * tv[c]
                        fac = (1.0 - 0.5 / rr) * dens * exp(yt - rr)
                        re[i, j, k, l] = fac * cos(xt)
                        im[i, j, k, l] = -fac * sin(xt)
    out.real = np.asarray(re)
    out.imag = np.asarray(im)
    return out
