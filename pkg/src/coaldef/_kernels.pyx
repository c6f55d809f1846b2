# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled arithmetic kernels.

Same contract and data layout as ``coaldef._kernels_py`` (see its module
docstring); entries are Python ints, so arithmetic stays arbitrary
precision.  The speedup comes from removing interpreter overhead in the
inner loops, which dominate every cohomology computation.
"""

from math import gcd as _gcd


cdef inline tuple _q_add(na, da, nb, db):
    g = _gcd(da, db)
    if g == 1:
        return na * db + nb * da, da * db
    s = da // g
    t = na * (db // g) + nb * s
    g2 = _gcd(t, g)
    if g2 == 1:
        return t, s * db
    return t // g2, s * (db // g2)


cdef inline tuple _q_mul(na, da, nb, db):
    g1 = _gcd(na, db)
    if g1 > 1:
        na //= g1
        db //= g1
    g2 = _gcd(nb, da)
    if g2 > 1:
        nb //= g2
        da //= g2
    return na * nb, da * db


def q_add(list an, list ad, list bn, list bd):
    cdef Py_ssize_t i, size = len(an)
    cdef list cn = [], cd = []
    for i in range(size):
        n, d = _q_add(an[i], ad[i], bn[i], bd[i])
        cn.append(n)
        cd.append(d)
    return cn, cd


def q_sub(list an, list ad, list bn, list bd):
    cdef Py_ssize_t i, size = len(an)
    cdef list cn = [], cd = []
    for i in range(size):
        n, d = _q_add(an[i], ad[i], -bn[i], bd[i])
        cn.append(n)
        cd.append(d)
    return cn, cd


def q_neg(list an, list ad):
    return [-n for n in an], list(ad)


def q_scale(list an, list ad, sn, sd):
    cdef Py_ssize_t i, size = len(an)
    if sn == 0:
        return [0] * size, [1] * size
    cdef list cn = [], cd = []
    for i in range(size):
        n, d = _q_mul(an[i], ad[i], sn, sd)
        cn.append(n)
        cd.append(d)
    return cn, cd


def q_matmul(list an, list ad, list bn, list bd, Py_ssize_t n, Py_ssize_t k, Py_ssize_t m):
    cdef Py_ssize_t i, t, j, ik, im, tm
    cdef list cn = [0] * (n * m)
    cdef list cd = [1] * (n * m)
    for i in range(n):
        ik = i * k
        im = i * m
        for t in range(k):
            na = an[ik + t]
            if not na:
                continue
            da = ad[ik + t]
            tm = t * m
            for j in range(m):
                nb = bn[tm + j]
                if not nb:
                    continue
                pn, pd = _q_mul(na, da, nb, bd[tm + j])
                cn[im + j], cd[im + j] = _q_add(cn[im + j], cd[im + j], pn, pd)
    return cn, cd


def q_kron(list an, list ad, Py_ssize_t ar, Py_ssize_t ac,
           list bn, list bd, Py_ssize_t br, Py_ssize_t bc):
    cdef Py_ssize_t outc = ac * bc
    cdef Py_ssize_t size = ar * br * outc
    cdef Py_ssize_t i, j, s, t, iac, base, sbc
    cdef list cn = [0] * size
    cdef list cd = [1] * size
    for i in range(ar):
        iac = i * ac
        for j in range(ac):
            na = an[iac + j]
            if not na:
                continue
            da = ad[iac + j]
            for s in range(br):
                base = (i * br + s) * outc + j * bc
                sbc = s * bc
                for t in range(bc):
                    nb = bn[sbc + t]
                    if not nb:
                        continue
                    pn, pd = _q_mul(na, da, nb, bd[sbc + t])
                    cn[base + t] = pn
                    cd[base + t] = pd
    return cn, cd


def q_rref(list an, list ad, Py_ssize_t rows, Py_ssize_t cols):
    cdef list rn = list(an)
    cdef list rd = list(ad)
    cdef list pivots = []
    cdef Py_ssize_t pr = 0, pc, r, c, sel, a, b, base, rbase
    for pc in range(cols):
        if pr >= rows:
            break
        sel = -1
        for r in range(pr, rows):
            if rn[r * cols + pc]:
                sel = r
                break
        if sel < 0:
            continue
        if sel != pr:
            a = sel * cols
            b = pr * cols
            for c in range(pc, cols):
                rn[a + c], rn[b + c] = rn[b + c], rn[a + c]
                rd[a + c], rd[b + c] = rd[b + c], rd[a + c]
        base = pr * cols
        pn = rn[base + pc]
        pd = rd[base + pc]
        if pn != pd:
            if pn > 0:
                inv_n, inv_d = pd, pn
            else:
                inv_n, inv_d = -pd, -pn
            rn[base + pc] = 1
            rd[base + pc] = 1
            for c in range(pc + 1, cols):
                if rn[base + c]:
                    rn[base + c], rd[base + c] = _q_mul(
                        rn[base + c], rd[base + c], inv_n, inv_d
                    )
        for r in range(rows):
            if r == pr:
                continue
            rbase = r * cols
            fn = rn[rbase + pc]
            if not fn:
                continue
            fd = rd[rbase + pc]
            rn[rbase + pc] = 0
            rd[rbase + pc] = 1
            for c in range(pc + 1, cols):
                if rn[base + c]:
                    pn2, pd2 = _q_mul(rn[base + c], rd[base + c], fn, fd)
                    rn[rbase + c], rd[rbase + c] = _q_add(
                        rn[rbase + c], rd[rbase + c], -pn2, pd2
                    )
        pivots.append(pc)
        pr += 1
    return rn, rd, pivots


def p_add(list a, list b, p):
    cdef Py_ssize_t i, size = len(a)
    return [(a[i] + b[i]) % p for i in range(size)]


def p_sub(list a, list b, p):
    cdef Py_ssize_t i, size = len(a)
    return [(a[i] - b[i]) % p for i in range(size)]


def p_neg(list a, p):
    return [(-x) % p for x in a]


def p_scale(list a, s, p):
    return [(x * s) % p for x in a]


def p_matmul(list a, list b, Py_ssize_t n, Py_ssize_t k, Py_ssize_t m, p):
    cdef Py_ssize_t i, t, j, ik, im, tm
    cdef list c = [0] * (n * m)
    for i in range(n):
        ik = i * k
        im = i * m
        for t in range(k):
            va = a[ik + t]
            if not va:
                continue
            tm = t * m
            for j in range(m):
                vb = b[tm + j]
                if vb:
                    c[im + j] = c[im + j] + va * vb
    return [x % p for x in c]


def p_kron(list a, Py_ssize_t ar, Py_ssize_t ac, list b, Py_ssize_t br, Py_ssize_t bc, p):
    cdef Py_ssize_t outc = ac * bc
    cdef Py_ssize_t i, j, s, t, iac, base, sbc
    cdef list c = [0] * (ar * br * outc)
    for i in range(ar):
        iac = i * ac
        for j in range(ac):
            va = a[iac + j]
            if not va:
                continue
            for s in range(br):
                base = (i * br + s) * outc + j * bc
                sbc = s * bc
                for t in range(bc):
                    vb = b[sbc + t]
                    if vb:
                        c[base + t] = (va * vb) % p
    return c


def p_rref(list a, Py_ssize_t rows, Py_ssize_t cols, p):
    cdef list r_ = list(a)
    cdef list pivots = []
    cdef Py_ssize_t pr = 0, pc, r, c, sel, ab, bb, base, rbase
    for pc in range(cols):
        if pr >= rows:
            break
        sel = -1
        for r in range(pr, rows):
            if r_[r * cols + pc]:
                sel = r
                break
        if sel < 0:
            continue
        if sel != pr:
            ab = sel * cols
            bb = pr * cols
            for c in range(pc, cols):
                r_[ab + c], r_[bb + c] = r_[bb + c], r_[ab + c]
        base = pr * cols
        pv = r_[base + pc]
        if pv != 1:
            inv = pow(pv, p - 2, p)
            r_[base + pc] = 1
            for c in range(pc + 1, cols):
                if r_[base + c]:
                    r_[base + c] = (r_[base + c] * inv) % p
        for r in range(rows):
            if r == pr:
                continue
            rbase = r * cols
            f = r_[rbase + pc]
            if not f:
                continue
            r_[rbase + pc] = 0
            for c in range(pc + 1, cols):
                if r_[base + c]:
                    r_[rbase + c] = (r_[rbase + c] - f * r_[base + c]) % p
        pivots.append(pc)
        pr += 1
    return r_, pivots
