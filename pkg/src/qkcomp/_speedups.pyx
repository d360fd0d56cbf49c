# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel for sparse exterior-algebra term arithmetic.

Same contract as qkcomp._termops: term maps are dicts keyed by index
bitmasks with exact Fraction coefficients.  Coefficients stay arbitrary
precision; beyond the mask and sign bookkeeping, the compiled win comes
from replicating Fraction's reduced multiply/add on its slots, skipping
the operator-dispatch layers while producing identical canonical values.
"""

import math
from fractions import Fraction

BACKEND = "compiled"

cdef object _Fraction = Fraction
cdef object _gcd = math.gcd
cdef object _ZERO = Fraction(0)


cdef inline int _popcount(unsigned long long x) nogil:
    cdef int count = 0
    while x:
        x &= x - 1
        count += 1
    return count


cdef inline int _merge_sign_c(unsigned long long ka, unsigned long long kb) nogil:
    cdef int swaps = 0
    cdef unsigned long long b = kb
    cdef unsigned long long low
    while b:
        low = b & (~b + 1)
        swaps += _popcount(ka & ~(low | (low - 1)))
        b ^= low
    return -1 if swaps & 1 else 1


cdef inline object _make(object num, object den):
    """Canonical Fraction from an already-reduced pair with den > 0."""
    cdef object f = _Fraction.__new__(_Fraction)
    f._numerator = num
    f._denominator = den
    return f


cdef object _mul_frac(object a, object b):
    """Exact product, reduced exactly as fractions.Fraction._mul reduces."""
    if type(a) is not _Fraction or type(b) is not _Fraction:
        return a * b
    cdef object na = a._numerator
    cdef object da = a._denominator
    cdef object nb = b._numerator
    cdef object db = b._denominator
    cdef object g1 = _gcd(na, db)
    if g1 > 1:
        na = na // g1
        db = db // g1
    cdef object g2 = _gcd(nb, da)
    if g2 > 1:
        nb = nb // g2
        da = da // g2
    return _make(na * nb, db * da)


cdef object _add_frac(object a, object b):
    """Exact sum, reduced exactly as fractions.Fraction._add reduces."""
    if type(a) is not _Fraction or type(b) is not _Fraction:
        return a + b
    cdef object na = a._numerator
    cdef object da = a._denominator
    cdef object nb = b._numerator
    cdef object db = b._denominator
    cdef object g = _gcd(da, db)
    cdef object s, t, g2
    if g == 1:
        return _make(na * db + da * nb, da * db)
    s = da // g
    t = na * (db // g) + nb * s
    g2 = _gcd(t, g)
    if g2 == 1:
        return _make(t, s * db)
    return _make(t // g2, s * (db // g2))


cdef inline object _neg_frac(object a):
    if type(a) is not _Fraction:
        return -a
    return _make(-a._numerator, a._denominator)


cdef inline bint _is_zero(object a):
    if type(a) is _Fraction:
        return a._numerator == 0
    return not a


def merge_sign(ka, kb):
    """Sign of sorting the concatenation of two disjoint index masks."""
    return _merge_sign_c(<unsigned long long> ka, <unsigned long long> kb)


def wedge_terms(dict a, dict b):
    """Exterior product of two term maps."""
    cdef dict out = {}
    cdef unsigned long long ka, kb, k
    cdef object ca, cb, c, acc
    for ka_obj, ca in a.items():
        ka = <unsigned long long> ka_obj
        for kb_obj, cb in b.items():
            kb = <unsigned long long> kb_obj
            if ka & kb:
                continue
            k = ka | kb
            c = _mul_frac(ca, cb)
            if _merge_sign_c(ka, kb) < 0:
                c = _neg_frac(c)
            acc = out.get(k)
            if acc is None:
                out[k] = c
            else:
                acc = _add_frac(acc, c)
                if _is_zero(acc):
                    del out[k]
                else:
                    out[k] = acc
    return out


def star_terms(dict a, dim):
    """Hodge dual of a term map for the canonical orientation."""
    cdef unsigned long long full = (<unsigned long long> 1 << <int> dim) - 1
    cdef dict out = {}
    cdef unsigned long long k, kc
    cdef object c
    for k_obj, c in a.items():
        k = <unsigned long long> k_obj
        kc = full & ~k
        out[kc] = c if _merge_sign_c(k, kc) > 0 else _neg_frac(c)
    return out


def interior_terms(tuple comps, dict a):
    """Contraction with the vector whose i-th component is comps[i]."""
    cdef dict out = {}
    cdef unsigned long long k, rest, low, k2
    cdef int pos, bit_index
    cdef object c, v, c2, acc
    for k_obj, c in a.items():
        k = <unsigned long long> k_obj
        rest = k
        pos = 0
        while rest:
            low = rest & (~rest + 1)
            bit_index = _popcount(low - 1)
            v = comps[bit_index]
            if not _is_zero(v):
                k2 = k ^ low
                c2 = _mul_frac(v, c)
                if pos & 1:
                    c2 = _neg_frac(c2)
                acc = out.get(k2)
                if acc is None:
                    out[k2] = c2
                else:
                    acc = _add_frac(acc, c2)
                    if _is_zero(acc):
                        del out[k2]
                    else:
                        out[k2] = acc
            rest ^= low
            pos += 1
    return out


def accumulate_scaled(dict acc, dict terms, coeff):
    """In-place acc += coeff * terms."""
    cdef object c, cur, scaled
    if _is_zero(coeff):
        return
    for k_obj, c in terms.items():
        scaled = _mul_frac(coeff, c)
        cur = acc.get(k_obj)
        if cur is None:
            acc[k_obj] = scaled
        else:
            cur = _add_frac(cur, scaled)
            if _is_zero(cur):
                del acc[k_obj]
            else:
                acc[k_obj] = cur


def inner_terms(dict a, dict b):
    """Inner product of two term maps (orthonormal basis monomials)."""
    cdef object total = _ZERO
    cdef object c, cb
    if len(b) < len(a):
        a, b = b, a
    for k_obj, c in a.items():
        cb = b.get(k_obj)
        if cb is not None:
            total = _add_frac(total, _mul_frac(c, cb))
    return total
