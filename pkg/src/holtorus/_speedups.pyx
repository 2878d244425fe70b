# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the hot loops in _kernels_py.

The arithmetic mirrors the pure-Python module statement for statement;
both backends must produce bit-identical results (the test suite checks
this), so keep expression order in sync when editing either side.
"""

from libc.math cimport cos, sin, sqrt, fabs


def walk_traces(double x, double y, double z,
                signed char[::1] proposals, double ceiling,
                double[:, ::1] xyz, double[::1] kap,
                signed char[::1] letters, Py_ssize_t start):
    cdef Py_ssize_t n_target = xyz.shape[0]
    cdef Py_ssize_t k = start
    cdef Py_ssize_t j = 0
    cdef Py_ssize_t m = proposals.shape[0]
    cdef int c
    cdef double nx, ny, nz, fm
    while k < n_target and j < m:
        c = proposals[j]
        j += 1
        if c == 0:
            nx = x * y - z; ny = y; nz = x
        elif c == 1:
            nx = z; ny = y; nz = z * y - x
        elif c == 2:
            nx = x; ny = x * y - z; nz = y
        else:
            nx = x; ny = z; nz = x * z - y
        fm = fabs(nx)
        if fabs(ny) > fm:
            fm = fabs(ny)
        if fabs(nz) > fm:
            fm = fabs(nz)
        if fm > ceiling:
            continue
        x = nx; y = ny; z = nz
        xyz[k, 0] = x
        xyz[k, 1] = y
        xyz[k, 2] = z
        kap[k] = x * x + y * y + z * z - x * y * z - 2.0
        letters[k] = <signed char> c
        k += 1
    return k, j


def walk_traces_fixed(double x, double y, double z,
                      signed char[::1] codes, Py_ssize_t n_steps,
                      double hard_ceiling,
                      double[:, ::1] xyz, double[::1] kap):
    cdef Py_ssize_t m = codes.shape[0]
    cdef Py_ssize_t k
    cdef int c
    cdef double fm, t
    for k in range(n_steps):
        c = codes[k % m]
        if c == 0:
            t = x * y - z; z = x; x = t
        elif c == 1:
            t = z * y - x; x = z; z = t
        elif c == 2:
            t = x * y - z; z = y; y = t
        else:
            t = x * z - y; y = z; z = t
        fm = fabs(x)
        if fabs(y) > fm:
            fm = fabs(y)
        if fabs(z) > fm:
            fm = fabs(z)
        xyz[k, 0] = x
        xyz[k, 1] = y
        xyz[k, 2] = z
        kap[k] = x * x + y * y + z * z - x * y * z - 2.0
        if fm > hard_ceiling:
            return k + 1
    return n_steps


def ellipticize_search(double y, double w, double theta, long n_max):
    cdef double cos_t = cos(theta)
    cdef double sin_t = sin(theta)
    cdef double c = 1.0
    cdef double s = 0.0
    cdef double cn, sn, tau
    cdef long n
    for n in range(1, n_max + 1):
        cn = c * cos_t - s * sin_t
        sn = s * cos_t + c * sin_t
        c = cn; s = sn
        if n % 4096 == 0:
            c = cos(n * theta)
            s = sin(n * theta)
        tau = y * c + w * s
        if fabs(tau) < 2.0 - 1e-9:
            return n
    return -1


cdef inline double _det2(double a, double b, double c, double d) nogil:
    cdef double sp = 134217729.0
    cdef double p1 = a * d
    cdef double t = sp * a
    cdef double ah = t - (t - a)
    cdef double al = a - ah
    cdef double dh, dl, e1, p2, bh, bl, ch, cl, e2, s, bb, err
    t = sp * d
    dh = t - (t - d)
    dl = d - dh
    e1 = ((ah * dh - p1) + ah * dl + al * dh) + al * dl
    p2 = b * c
    t = sp * b
    bh = t - (t - b)
    bl = b - bh
    t = sp * c
    ch = t - (t - c)
    cl = c - ch
    e2 = ((bh * ch - p2) + bh * cl + bl * ch) + bl * cl
    s = p1 - p2
    bb = s - p1
    err = (p1 - (s - bb)) + ((-p2) - bb)
    return s + (err + (e1 - e2))


def walk_pairs(double ga, double gb, double gc, double gd,
               double ha, double hb, double hc, double hd,
               signed char[::1] codes, Py_ssize_t renorm_every, double guard):
    cdef Py_ssize_t n = codes.shape[0]
    cdef Py_ssize_t k
    cdef int c
    cdef double ia, ib, ic, id_, t0, t1, t2, t3, sg, sh, fm
    for k in range(n):
        c = codes[k]
        if c == 0:
            ia = hd; ib = -hb; ic = -hc; id_ = ha
            t0 = ga * ia + gb * ic; t1 = ga * ib + gb * id_
            t2 = gc * ia + gd * ic; t3 = gc * ib + gd * id_
            ga = t0; gb = t1; gc = t2; gd = t3
        elif c == 1:
            t0 = ga * ha + gb * hc; t1 = ga * hb + gb * hd
            t2 = gc * ha + gd * hc; t3 = gc * hb + gd * hd
            ga = t0; gb = t1; gc = t2; gd = t3
        elif c == 2:
            ia = gd; ib = -gb; ic = -gc; id_ = ga
            t0 = ha * ia + hb * ic; t1 = ha * ib + hb * id_
            t2 = hc * ia + hd * ic; t3 = hc * ib + hd * id_
            ha = t0; hb = t1; hc = t2; hd = t3
        else:
            t0 = ha * ga + hb * gc; t1 = ha * gb + hb * gd
            t2 = hc * ga + hd * gc; t3 = hc * gb + hd * gd
            ha = t0; hb = t1; hc = t2; hd = t3
        fm = fabs(ga)
        if fabs(gb) > fm: fm = fabs(gb)
        if fabs(gc) > fm: fm = fabs(gc)
        if fabs(gd) > fm: fm = fabs(gd)
        if fabs(ha) > fm: fm = fabs(ha)
        if fabs(hb) > fm: fm = fabs(hb)
        if fabs(hc) > fm: fm = fabs(hc)
        if fabs(hd) > fm: fm = fabs(hd)
        if fm > guard:
            return k + 1, (ga, gb, gc, gd, ha, hb, hc, hd)
        if (k + 1) % renorm_every == 0:
            sg = 1.0 / sqrt(_det2(ga, gb, gc, gd))
            ga = ga * sg; gb = gb * sg; gc = gc * sg; gd = gd * sg
            sh = 1.0 / sqrt(_det2(ha, hb, hc, hd))
            ha = ha * sh; hb = hb * sh; hc = hc * sh; hd = hd * sh
    return n, (ga, gb, gc, gd, ha, hb, hc, hd)
