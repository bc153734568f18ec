# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled line kernels: same signatures and semantics as ``_pykernels``."""

from libc.math cimport sqrt, log1p, expm1, fabs, isfinite, INFINITY
from libc.stdlib cimport malloc, free

from .riemann import PositivityError


cdef inline double _log_mean(double a, double b) noexcept nogil:
    cdef double f = (a - b) / (a + b)
    cdef double u = f * f
    if u < 1e-3:
        return (a + b) / (2.0 * (1.0 + u * (1.0 / 3.0 + u * (1.0 / 5.0 + u * (1.0 / 7.0 + u / 9.0)))))
    return (a - b) / log1p((a - b) / b)


cdef inline double _poly_mean(double a, double b, double G) noexcept nogil:
    cdef double t = log1p((b - a) / a)
    if t == 0.0:
        return a
    return (G - 1.0) / G * a * expm1(G * t) / expm1((G - 1.0) * t)


cdef inline double _rho_bar(int mode, double a, double b, double G) noexcept nogil:
    if mode == 1:
        return _log_mean(a, b)
    if mode == 2:
        return _poly_mean(a, b, G)
    return 0.5 * (a + b)


cdef inline double _minmod(double a, double b) noexcept nogil:
    if a * b > 0.0:
        return a if fabs(a) < fabs(b) else b
    return 0.0


cdef inline double _clamp_to(double v, double bound) noexcept nogil:
    cdef double r = v / bound
    if r > 1.0:
        r = 1.0
    elif r < -1.0:
        r = -1.0
    return bound * r


cdef inline double _pos(double x) noexcept nogil:
    return x if x > 0.0 else 0.0


cdef inline void _speeds(double rL, double uL, double pL, double rR, double uR, double pR,
                         double rb, double dz, double M, double gamma, double beta, double theta,
                         double* aL, double* aR, double* bL, double* bR,
                         double* fL, double* fR) noexcept nogil:
    cdef double cL = sqrt(gamma * pL / rL)
    cdef double cR = sqrt(gamma * pR / rR)
    cdef double den = rL * (theta * cL) + rR * (theta * cR)
    cdef double jump = pR - pL + rb * dz
    cdef double dv = _pos(M * (uL - uR))
    cdef double XL = (dv + _pos(jump) / den) / cL
    cdef double XR = (dv + _pos(-jump) / den) / cR
    fL[0] = cL * (1.0 + beta * XL)
    fR[0] = cR * (1.0 + beta * XR)
    aL[0] = rL * fL[0] / theta
    aR[0] = rR * fR[0] / theta
    bL[0] = rL * theta * fL[0]
    bR[0] = rR * theta * fR[0]


cdef int _solve_face(double rL, double unL, double utL, double pL,
                     double rR, double unR, double utR, double pR,
                     double rb, double dz, double M, double gamma, double beta, double theta,
                     double* F, double* Sp, double* Sm) noexcept nogil:
    # same algebra as riemann.intermediate_states, rearranged to share divisions
    cdef double aL, aR, bL, bR, fL, fR
    _speeds(rL, unL, pL, rR, unR, pR, rb, dz, M, gamma, beta, theta, &aL, &aR, &bL, &bR, &fL, &fR)
    cdef double invD = 1.0 / (bL + bR)
    cdef double invM = 1.0 / M
    cdef double M2 = M * M
    cdef double invM2 = invM * invM
    cdef double iaL = 1.0 / aL
    cdef double iaR = 1.0 / aR
    cdef double Rm = (pL - pR - rb * dz) * invM
    cdef double dv = unR - unL
    cdef double vs = (bL * unL + bR * unR + Rm) * invD
    cdef double QL = (bR * dv + Rm) * invD
    cdef double QR = (Rm - bL * dv) * invD
    cdef double tauLs = 1.0 / rL + M * QL * iaL
    cdef double tauRs = 1.0 / rR - M * QR * iaR
    cdef double uLs = unL + bL * QL * iaL
    cdef double uRs = unR + bR * QR * iaR
    cdef double common = bR * pL + bL * pR - M * bL * bR * dv
    cdef double piLs = (common + bL * rb * dz) * invD
    cdef double piRs = (common - bR * rb * dz) * invD
    cdef double ig = 1.0 / (gamma - 1.0)
    cdef double eLs = pL * ig / rL + 0.5 * iaL * ((piLs * piLs - pL * pL) / bL + M2 * QL * QL * bL * (aL - bL) * iaL)
    cdef double eRs = pR * ig / rR + 0.5 * iaR * ((piRs * piRs - pR * pR) / bR + M2 * QR * QR * bR * (aR - bR) * iaR)
    if not (tauLs > 0.0 and tauRs > 0.0 and eLs > 0.0 and eRs > 0.0):
        return 1
    cdef double itM = invM / theta
    cdef double sm = unL - fL * itM
    cdef double sp = unR + fR * itM
    cdef double r, u, ut, E, pi
    if sm > 0.0:
        E = pL * ig + 0.5 * M2 * rL * (unL * unL + utL * utL)
        F[0] = rL * unL
        F[1] = F[0] * unL + pL * invM2
        F[2] = F[0] * utL
        F[3] = (E + pL) * unL
    elif sp <= 0.0 and vs < 0.0:
        E = pR * ig + 0.5 * M2 * rR * (unR * unR + utR * utR)
        F[0] = rR * unR
        F[1] = F[0] * unR + pR * invM2
        F[2] = F[0] * utR
        F[3] = (E + pR) * unR
    else:
        if vs >= 0.0:
            r = 1.0 / tauLs
            u = uLs
            ut = utL
            pi = piLs
            E = r * eLs + 0.5 * M2 * r * (uLs * uLs + utL * utL)
        else:
            r = 1.0 / tauRs
            u = uRs
            ut = utR
            pi = piRs
            E = r * eRs + 0.5 * M2 * r * (uRs * uRs + utR * utR)
        F[0] = r * vs
        F[1] = F[0] * u + pi * invM2
        F[2] = F[0] * ut
        F[3] = (E + pi) * vs
    cdef double b1 = -2.0 * rb * invM2
    cdef double b3 = -2.0 * rb * vs
    if vs >= 0.0:
        Sp[1] = b1
        Sp[3] = b3
        Sm[1] = 0.0
        Sm[3] = 0.0
    else:
        Sp[1] = 0.0
        Sp[3] = 0.0
        Sm[1] = b1
        Sm[3] = b3
    return 0


cdef inline double _jump(int mode, double phl, double phr, double hrl, double hpl, double hrr, double hpr) noexcept nogil:
    if mode == 3:
        return -(hpr - hpl) / (0.5 * (hrl + hrr))
    return phr - phl


def residual_sweep(double[:, :] rho, double[:, :] mn, double[:, :] mt, double[:, :] E,
                   double[:, :] phi, double[:, :] hsr, double[:, :] hsp,
                   double[:, :] R0, double[:, :] R1, double[:, :] R2, double[:, :] R3,
                   double inv_dx, double M, double theta, double gamma, double beta,
                   int mode, double poly_gamma, int order, int g, int retries=0):
    cdef Py_ssize_t L = rho.shape[0]
    cdef Py_ssize_t N = rho.shape[1]
    cdef Py_ssize_t n = N - 2 * g
    cdef int tries
    cdef double bt
    cdef Py_ssize_t line, c, k
    cdef double M2 = M * M
    cdef double *buf = <double*> malloc(14 * N * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    cdef double *r = buf
    cdef double *un = buf + N
    cdef double *ut = buf + 2 * N
    cdef double *p = buf + 3 * N
    cdef double *rb = buf + 4 * N
    cdef double *dz = buf + 5 * N
    cdef double *pr = buf + 6 * N
    cdef double *pu = buf + 7 * N
    cdef double *pt = buf + 8 * N
    cdef double *pp = buf + 9 * N
    cdef double *mr = buf + 10 * N
    cdef double *mu = buf + 11 * N
    cdef double *mtv = buf + 12 * N
    cdef double *mp = buf + 13 * N
    cdef double F[4]
    cdef double Sp[4]
    cdef double Sm[4]
    cdef double drho, dun, dut, dp, qm, qp, udot, n2, root, kap
    cdef int status = 0
    cdef Py_ssize_t bad_line = -1, bad_face = -1
    cdef double minr = INFINITY, minp = INFINITY
    with nogil:
        for line in range(L):
            for c in range(g - 2, g + n + 2):
                r[c] = rho[line, c]
                un[c] = mn[line, c] / r[c]
                ut[c] = mt[line, c] / r[c]
                p[c] = (gamma - 1.0) * (E[line, c] - 0.5 * M2 * r[c] * (un[c] * un[c] + ut[c] * ut[c]))
            for c in range(g, g + n):
                if r[c] < minr:
                    minr = r[c]
                if p[c] < minp:
                    minp = p[c]
            for c in range(g - 2, g + n + 1):
                rb[c] = _rho_bar(mode, r[c], r[c + 1], poly_gamma)
                dz[c] = _jump(mode, phi[line, c], phi[line, c + 1], hsr[line, c], hsp[line, c],
                              hsr[line, c + 1], hsp[line, c + 1])
            for c in range(g - 1, g + n + 1):
                if order == 2:
                    drho = _clamp_to(0.5 * _minmod(r[c] - r[c - 1], r[c + 1] - r[c]), 0.5 * r[c])
                    qm = p[c - 1] - rb[c - 1] * dz[c - 1]
                    qp = p[c + 1] + rb[c] * dz[c]
                    dp = _clamp_to(0.5 * _minmod(p[c] - qm, qp - p[c]), 0.5 * p[c])
                    dun = 0.5 * _minmod(un[c] - un[c - 1], un[c + 1] - un[c])
                    dut = 0.5 * _minmod(ut[c] - ut[c - 1], ut[c + 1] - ut[c])
                    udot = un[c] * dun + ut[c] * dut
                    n2 = dun * dun + dut * dut
                    kap = 1.0
                    if n2 > 0.0:
                        root = sqrt(drho * drho * udot * udot + n2 * r[c] * p[c] / (gamma - 1.0))
                        kap = (-drho * udot + root) / (r[c] * n2)
                        if kap > 1.0:
                            kap = 1.0
                    dun = kap * dun
                    dut = kap * dut
                else:
                    drho = 0.0
                    dp = 0.0
                    dun = 0.0
                    dut = 0.0
                pr[c] = r[c] + drho
                pu[c] = un[c] + dun
                pt[c] = ut[c] + dut
                pp[c] = p[c] + dp
                mr[c] = r[c] - drho
                mu[c] = un[c] - dun
                mtv[c] = ut[c] - dut
                mp[c] = p[c] - dp
                if not (pr[c] > 0.0 and pp[c] > 0.0 and mr[c] > 0.0 and mp[c] > 0.0):
                    status = 2
                    bad_line = line
                    bad_face = c
                    break
            if status:
                break
            for c in range(g - 1, g + n):
                bt = beta
                tries = 0
                while _solve_face(pr[c], pu[c], pt[c], pp[c], mr[c + 1], mu[c + 1], mtv[c + 1], mp[c + 1],
                                  rb[c], dz[c], M, gamma, bt, theta, F, Sp, Sm):
                    if tries >= retries:
                        status = 1
                        break
                    bt = 2.0 * bt
                    tries += 1
                if status:
                    bad_line = line
                    bad_face = c
                    break
                # mass and transverse momentum carry no source
                k = c - g
                if k >= 0:
                    R0[line, k] -= F[0] * inv_dx
                    R1[line, k] += (-F[1] + 0.5 * Sm[1] * dz[c]) * inv_dx
                    R2[line, k] -= F[2] * inv_dx
                    R3[line, k] += (-F[3] + 0.5 * Sm[3] * dz[c]) * inv_dx
                k = k + 1
                if k < n:
                    R0[line, k] += F[0] * inv_dx
                    R1[line, k] += (F[1] + 0.5 * Sp[1] * dz[c]) * inv_dx
                    R2[line, k] += F[2] * inv_dx
                    R3[line, k] += (F[3] + 0.5 * Sp[3] * dz[c]) * inv_dx
            if status:
                break
    free(buf)
    if status == 1:
        raise PositivityError(f"nonpositive intermediate state at line {bad_line}, face after cell {bad_face}",
                              {"line": int(bad_line), "face": int(bad_face - g + 1)})
    if status == 2:
        raise PositivityError(f"reconstructed trace outside the phase space at line {bad_line}, cell {bad_face}",
                              {"line": int(bad_line), "cell": int(bad_face - g)})
    return minr, minp


def max_wave_speed(double[:, :] rho, double[:, :] mn, double[:, :] mt, double[:, :] E,
                   double[:, :] phi, double[:, :] hsr, double[:, :] hsp,
                   double M, double theta, double gamma, double beta, int mode, double poly_gamma, int g):
    cdef Py_ssize_t L = rho.shape[0]
    cdef Py_ssize_t N = rho.shape[1]
    cdef Py_ssize_t n = N - 2 * g
    cdef Py_ssize_t line, c
    cdef double M2 = M * M
    cdef double smax = 0.0
    cdef double rL, rR, uL, uR, pL, pR, utL, utR, rb, dz, aL, aR, bL, bR, fL, fR, s
    with nogil:
        for line in range(L):
            for c in range(g - 1, g + n):
                rL = rho[line, c]
                rR = rho[line, c + 1]
                uL = mn[line, c] / rL
                uR = mn[line, c + 1] / rR
                utL = mt[line, c] / rL
                utR = mt[line, c + 1] / rR
                pL = (gamma - 1.0) * (E[line, c] - 0.5 * M2 * rL * (uL * uL + utL * utL))
                pR = (gamma - 1.0) * (E[line, c + 1] - 0.5 * M2 * rR * (uR * uR + utR * utR))
                rb = _rho_bar(mode, rL, rR, poly_gamma)
                dz = _jump(mode, phi[line, c], phi[line, c + 1], hsr[line, c], hsp[line, c],
                           hsr[line, c + 1], hsp[line, c + 1])
                _speeds(rL, uL, pL, rR, uR, pR, rb, dz, M, gamma, beta, theta, &aL, &aR, &bL, &bR, &fL, &fR)
                s = fabs(uL - aL / (M * rL))
                if s > smax or s != s:
                    smax = s
                s = fabs(uR + aR / (M * rR))
                if s > smax or s != s:
                    smax = s
    if not isfinite(smax):
        raise FloatingPointError("non-finite wave speed")
    return smax
