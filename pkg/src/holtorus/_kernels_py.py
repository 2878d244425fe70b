"""Pure-Python reference implementations of the hot loops.

The compiled extension (_speedups) mirrors these routines statement for
statement; both backends must produce bit-identical output, so keep the
arithmetic expression order in sync when editing either side.

Letter codes: 0 = T1, 1 = T1i, 2 = T2, 3 = T2i.
"""

import math


def walk_traces(x, y, z, proposals, ceiling, xyz, kap, letters, start):
    """Random bounded walk in trace coordinates.

    Consumes proposal codes one by one; a proposal whose image exceeds
    the ceiling in max-norm is rejected (consumed but not applied).
    Fills xyz, kap, letters from row `start` until the arrays are full
    or the proposals run out.  Returns (rows_filled_to, proposals_used).
    """
    n_target = xyz.shape[0]
    k = start
    j = 0
    m = proposals.shape[0]
    while k < n_target and j < m:
        c = proposals[j]
        j += 1
        if c == 0:
            nx, ny, nz = x * y - z, y, x
        elif c == 1:
            nx, ny, nz = z, y, z * y - x
        elif c == 2:
            nx, ny, nz = x, x * y - z, y
        else:
            nx, ny, nz = x, z, x * z - y
        fm = abs(nx)
        if abs(ny) > fm:
            fm = abs(ny)
        if abs(nz) > fm:
            fm = abs(nz)
        if fm > ceiling:
            continue
        x, y, z = nx, ny, nz
        xyz[k, 0] = x
        xyz[k, 1] = y
        xyz[k, 2] = z
        kap[k] = x * x + y * y + z * z - x * y * z - 2.0
        letters[k] = c
        k += 1
    return k, j


def walk_traces_fixed(x, y, z, codes, n_steps, hard_ceiling, xyz, kap):
    """Deterministic walk cycling through `codes`; stops when the triple
    exceeds the hard ceiling.  Returns the number of steps completed."""
    m = codes.shape[0]
    for k in range(n_steps):
        c = codes[k % m]
        if c == 0:
            x, y, z = x * y - z, y, x
        elif c == 1:
            x, y, z = z, y, z * y - x
        elif c == 2:
            x, y, z = x, x * y - z, y
        else:
            x, y, z = x, z, x * z - y
        fm = abs(x)
        if abs(y) > fm:
            fm = abs(y)
        if abs(z) > fm:
            fm = abs(z)
        xyz[k, 0] = x
        xyz[k, 1] = y
        xyz[k, 2] = z
        kap[k] = x * x + y * y + z * z - x * y * z - 2.0
        if fm > hard_ceiling:
            return k + 1
    return n_steps


def ellipticize_search(y, w, theta, n_max):
    """Smallest n >= 1 with |y cos(n theta) + w sin(n theta)| < 2 - 1e-9.

    Rotation recurrence with an exact trig refresh every 4096 steps.
    Returns -1 when the budget runs out.
    """
    cos_t = math.cos(theta)
    sin_t = math.sin(theta)
    c = 1.0
    s = 0.0
    for n in range(1, n_max + 1):
        c, s = c * cos_t - s * sin_t, s * cos_t + c * sin_t
        if n % 4096 == 0:
            c = math.cos(n * theta)
            s = math.sin(n * theta)
        tau = y * c + w * s
        if abs(tau) < 2.0 - 1e-9:
            return n
    return -1


def _det2(a, b, c, d):
    # compensated ad - bc (Dekker two-products)
    sp = 134217729.0
    p1 = a * d
    t = sp * a
    ah = t - (t - a)
    al = a - ah
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


def walk_pairs(ga, gb, gc, gd, ha, hb, hc, hd, codes, renorm_every, guard):
    """Apply letter codes to a matrix pair, renormalizing determinants
    every `renorm_every` steps; aborts when any entry passes the guard.

    Returns (steps_done, 8 final entries).
    """
    n = codes.shape[0]
    for k in range(n):
        c = codes[k]
        if c == 0:
            # g <- g h^-1
            ia, ib, ic, id_ = hd, -hb, -hc, ha
            ga, gb, gc, gd = (ga * ia + gb * ic, ga * ib + gb * id_,
                              gc * ia + gd * ic, gc * ib + gd * id_)
        elif c == 1:
            ga, gb, gc, gd = (ga * ha + gb * hc, ga * hb + gb * hd,
                              gc * ha + gd * hc, gc * hb + gd * hd)
        elif c == 2:
            ia, ib, ic, id_ = gd, -gb, -gc, ga
            ha, hb, hc, hd = (ha * ia + hb * ic, ha * ib + hb * id_,
                              hc * ia + hd * ic, hc * ib + hd * id_)
        else:
            ha, hb, hc, hd = (ha * ga + hb * gc, ha * gb + hb * gd,
                              hc * ga + hd * gc, hc * gb + hd * gd)
        fm = abs(ga)
        for v in (gb, gc, gd, ha, hb, hc, hd):
            if abs(v) > fm:
                fm = abs(v)
        if fm > guard:
            return k + 1, (ga, gb, gc, gd, ha, hb, hc, hd)
        if (k + 1) % renorm_every == 0:
            sg = 1.0 / math.sqrt(_det2(ga, gb, gc, gd))
            ga, gb, gc, gd = ga * sg, gb * sg, gc * sg, gd * sg
            sh = 1.0 / math.sqrt(_det2(ha, hb, hc, hd))
            ha, hb, hc, hd = ha * sh, hb * sh, hc * sh, hd * sh
    return n, (ga, gb, gc, gd, ha, hb, hc, hd)
