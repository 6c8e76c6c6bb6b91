"""Pure-Python integer kernels for the rational expansion families.

A point ``p/q`` (``q > 0``) is carried as an unreduced integer pair.  Every
inverse branch is an integer matrix, so orbits, cylinder matrices and interval
refinement need nothing but integer arithmetic.  ``_kernels.pyx`` mirrors this
module line for line; keep the two in sync.

Family codes: 0 decimal, 1 Gauss, 2 Chan(l), 3 N-continued fraction,
4 Renyi-type.  ``param`` is l or N (ignored for decimal and Gauss).
"""
from math import gcd, log2

DECIMAL, GAUSS, CHAN, NCF, RENYI = range(5)


def chan_digit(l, p, q):
    """Largest ``a >= 0`` with ``l**a * p <= q``; returns ``(a, l**a)``."""
    e = q.bit_length() - p.bit_length() - 1
    a = int(e / log2(l)) if e > 0 else 0
    w = l ** a
    while a > 0 and w * p > q:
        a -= 1
        w //= l
    while w * l * p <= q:
        a += 1
        w *= l
    return a, w


def branch(kind, param, d):
    """Inverse branch of digit ``d`` as ``(a, b, c, d)``."""
    if kind == DECIMAL:
        return 1, d, 0, 10
    if kind == GAUSS:
        return 0, 1, 1, d
    if kind == CHAN:
        w = param ** d
        return 0, 1, (param - 1) * w, w
    if kind == NCF:
        return 0, param, 1, d
    return 1, d - param, 1, d


def undefined(kind, p, q):
    if kind == DECIMAL:
        return False
    if kind == RENYI:
        return p == q
    return p == 0


def digit(kind, param, p, q):
    if kind == DECIMAL:
        return (10 * p) // q
    if kind == GAUSS:
        return q // p
    if kind == CHAN:
        return chan_digit(param, p, q)[0]
    if kind == NCF:
        return (param * q) // p
    return (param * q) // (q - p)


def right_digit(kind, param, p, q):
    """Digit of the points immediately to the right of ``p/q``."""
    if kind == DECIMAL:
        return (10 * p) // q
    if kind == GAUSS:
        return (q - 1) // p
    if kind == CHAN:
        a, w = chan_digit(param, p, q)
        return a - 1 if w * p == q else a
    if kind == NCF:
        return (param * q - 1) // p
    return (param * q) // (q - p)


def step(kind, param, p, q):
    """One application of the map: ``(digit, p', q')``."""
    if kind == DECIMAL:
        d = (10 * p) // q
        return d, 10 * p - d * q, q
    if kind == GAUSS:
        d = q // p
        return d, q - d * p, p
    if kind == CHAN:
        d, w = chan_digit(param, p, q)
        num = q - w * p
        g = gcd(num, (param - 1) * w)
        return d, num // g, ((param - 1) * w * p) // g
    if kind == NCF:
        d = (param * q) // p
        return d, param * q - d * p, p
    r = q - p
    d = (param * q) // r
    return d, param * q - d * r, r


def orbit_digits(kind, param, p, q, n):
    """First ``n`` digits of ``p/q``.

    Returns ``(digits, p, q, hit_zero)``: the digit list (short if the orbit
    reaches an undefined point), the last orbit point, and whether any
    iterate after the first landed on 0, an endpoint of every branch cell
    family here.
    """
    digits = []
    hit = False
    for _ in range(n):
        if undefined(kind, p, q):
            break
        d, p, q = step(kind, param, p, q)
        digits.append(d)
        if p == 0:
            hit = True
    return digits, p, q, hit


def compose(kind, param, digits, normalize=True):
    """Matrix of ``u_{d1} o u_{d2} o ... o u_{dn}``."""
    A, B, C, D = 1, 0, 0, 1
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


def refine_depth(kind, param, lp, lq, lc, hp, hq, hc, limit):
    """Number of leading digits shared by every point of the interval.

    The interval runs from ``lp/lq`` to ``hp/hq`` (denominators positive);
    ``lc``/``hc`` flag closed ends.  Each round checks that the interval sits
    inside one branch cell (half-open, as the floor digit rule makes it) and
    then pushes it forward through that branch.
    """
    m = 0
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
