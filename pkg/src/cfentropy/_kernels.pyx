# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer kernels; a line-for-line mirror of ``_kernels_py``.

Big integers stay Python objects (their arithmetic is already C); the
compiled loops remove interpreter dispatch around them.
"""
from math import gcd, log2


cdef enum:
    K_DECIMAL = 0
    K_GAUSS = 1
    K_CHAN = 2
    K_NCF = 3
    K_RENYI = 4

DECIMAL, GAUSS, CHAN, NCF, RENYI = range(5)


cpdef tuple chan_digit(object l, object p, object q):
    """Largest ``a >= 0`` with ``l**a * p <= q``; returns ``(a, l**a)``."""
    cdef Py_ssize_t e = q.bit_length() - p.bit_length() - 1
    cdef Py_ssize_t a = int(e / log2(l)) if e > 0 else 0
    cdef object w
    w = l ** a
    while a > 0 and w * p > q:
        a -= 1
        w //= l
    while w * l * p <= q:
        a += 1
        w *= l
    return a, w


cpdef tuple branch(int kind, object param, object d):
    """Inverse branch of digit ``d`` as ``(a, b, c, d)``."""
    if kind == K_DECIMAL:
        return 1, d, 0, 10
    if kind == K_GAUSS:
        return 0, 1, 1, d
    if kind == K_CHAN:
        w = param ** d
        return 0, 1, (param - 1) * w, w
    if kind == K_NCF:
        return 0, param, 1, d
    return 1, d - param, 1, d


cpdef bint undefined(int kind, object p, object q):
    if kind == K_DECIMAL:
        return False
    if kind == K_RENYI:
        return p == q
    return p == 0


cpdef object digit(int kind, object param, object p, object q):
    if kind == K_DECIMAL:
        return (10 * p) // q
    if kind == K_GAUSS:
        return q // p
    if kind == K_CHAN:
        return chan_digit(param, p, q)[0]
    if kind == K_NCF:
        return (param * q) // p
    return (param * q) // (q - p)


cpdef object right_digit(int kind, object param, object p, object q):
    """Digit of the points immediately to the right of ``p/q``."""
    cdef object a, w
    if kind == K_DECIMAL:
        return (10 * p) // q
    if kind == K_GAUSS:
        return (q - 1) // p
    if kind == K_CHAN:
        a, w = chan_digit(param, p, q)
        return a - 1 if w * p == q else a
    if kind == K_NCF:
        return (param * q - 1) // p
    return (param * q) // (q - p)


cpdef tuple step(int kind, object param, object p, object q):
    """One application of the map: ``(digit, p', q')``."""
    if kind == K_DECIMAL:
        d = (10 * p) // q
        return d, 10 * p - d * q, q
    if kind == K_GAUSS:
        d = q // p
        return d, q - d * p, p
    if kind == K_CHAN:
        d, w = chan_digit(param, p, q)
        num = q - w * p
        g = gcd(num, (param - 1) * w)
        return d, num // g, ((param - 1) * w * p) // g
    if kind == K_NCF:
        d = (param * q) // p
        return d, param * q - d * p, p
    r = q - p
    d = (param * q) // r
    return d, param * q - d * r, r


def orbit_digits(int kind, object param, object p, object q, Py_ssize_t n):
    """First ``n`` digits of ``p/q``.

    Returns ``(digits, p, q, hit_zero)``: the digit list (short if the orbit
    reaches an undefined point), the last orbit point, and whether any
    iterate after the first landed on 0, an endpoint of every branch cell
    family here.
    """
    cdef list digits = []
    cdef bint hit = False
    cdef Py_ssize_t i
    cdef object d
    for i in range(n):
        if undefined(kind, p, q):
            break
        d, p, q = step(kind, param, p, q)
        digits.append(d)
        if p == 0:
            hit = True
    return digits, p, q, hit


def compose(int kind, object param, digits, bint normalize=True):
    """Matrix of ``u_{d1} o u_{d2} o ... o u_{dn}``."""
    cdef object A = 1, B = 0, C = 0, D = 1, e, f, g, h, det, k
    for dg in digits:
        e, f, g, h = branch(kind, param, dg)
        A, B, C, D = A * e + B * g, A * f + B * h, C * e + D * g, C * f + D * h
        if normalize:
            det = abs(e * h - f * g)
            if det != 1:
                # a primitive matrix times one of determinant det has content dividing det
                k = gcd(gcd(gcd(gcd(det, A), B), C), D)
                if k > 1:
                    A, B, C, D = A // k, B // k, C // k, D // k
    return A, B, C, D


def refine_depth(int kind, object param, object lp, object lq, bint lc,
                 object hp, object hq, bint hc, Py_ssize_t limit):
    """Number of leading digits shared by every point of the interval.

    The interval runs from ``lp/lq`` to ``hp/hq`` (denominators positive);
    ``lc``/``hc`` flag closed ends.  Each round checks that the interval sits
    inside one branch cell (half-open, as the floor digit rule makes it) and
    then pushes it forward through that branch.
    """
    cdef Py_ssize_t m = 0
    cdef bint cl_c, ch_c
    cdef object d, a, b, c, dd, det, adet, x, y, k
    cdef object cl_p, cl_q, ch_p, ch_q, nlp, nlq, nhp, nhq
    while m < limit:
        if undefined(kind, lp, lq):
            # digits are unbounded next to the undefined point
            break
        d = right_digit(kind, param, lp, lq)
        a, b, c, dd = branch(kind, param, d)
        det = a * dd - b * c
        if det > 0:
            cl_p, cl_q, cl_c = b, dd, True
            ch_p, ch_q, ch_c = a + b, c + dd, False
        else:
            cl_p, cl_q, cl_c = a + b, c + dd, False
            ch_p, ch_q, ch_c = b, dd, True
        x = lp * cl_q - cl_p * lq
        if x < 0 or (x == 0 and lc and not cl_c):
            break
        y = hp * ch_q - ch_p * hq
        if y > 0 or (y == 0 and hc and not ch_c):
            break
        nlp, nlq = dd * lp - b * lq, a * lq - c * lp
        nhp, nhq = dd * hp - b * hq, a * hq - c * hp
        if nlq < 0:
            nlp, nlq = -nlp, -nlq
        if nhq < 0:
            nhp, nhq = -nhp, -nhq
        adet = abs(det)
        if adet != 1:
            k = gcd(gcd(adet, nlp), nlq)
            if k > 1:
                nlp, nlq = nlp // k, nlq // k
            k = gcd(gcd(adet, nhp), nhq)
            if k > 1:
                nhp, nhq = nhp // k, nhq // k
        if det > 0:
            lp, lq, hp, hq = nlp, nlq, nhp, nhq
        else:
            lp, lq, lc, hp, hq, hc = nhp, nhq, hc, nlp, nlq, lc
        m += 1
    return m
