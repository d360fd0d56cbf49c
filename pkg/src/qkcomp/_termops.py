"""Pure-Python kernel for sparse exterior-algebra term arithmetic.

A form of degree p over an n-dimensional oriented orthonormal basis is a
mapping ``mask -> coefficient`` where ``mask`` is an integer whose set
bits (bit i-1 for basis index i) name a strictly increasing index tuple,
and the coefficient is an exact ``fractions.Fraction``.  All sign
bookkeeping counts transpositions via bit tricks; nothing here is ever
floating point.

``qkcomp._speedups`` implements the same functions in Cython; the
backend is chosen once in :mod:`qkcomp.kernel`.
"""

from __future__ import annotations

from fractions import Fraction

BACKEND = "python"

_ZERO = Fraction(0)


def merge_sign(ka: int, kb: int) -> int:
    """Sign of sorting the concatenation (tuple of ka, tuple of kb).

    Both masks are assumed disjoint.  Equals (-1)**t where t is the
    number of pairs (i in ka, j in kb) with i > j.
    """
    swaps = 0
    b = kb
    while b:
        low = b & -b
        # bits of ka strictly above this bit of kb
        swaps += (ka & ~(low | (low - 1))).bit_count()
        b ^= low
    return -1 if swaps & 1 else 1


def wedge_terms(a: dict, b: dict) -> dict:
    """Exterior product of two term maps."""
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            if ka & kb:
                continue
            k = ka | kb
            c = ca * cb if merge_sign(ka, kb) > 0 else -ca * cb
            acc = out.get(k)
            if acc is None:
                out[k] = c
            else:
                acc = acc + c
                if acc:
                    out[k] = acc
                else:
                    del out[k]
    return out


def star_terms(a: dict, dim: int) -> dict:
    """Hodge dual of a term map for the canonical orientation."""
    full = (1 << dim) - 1
    out: dict = {}
    for k, c in a.items():
        kc = full & ~k
        out[kc] = c if merge_sign(k, kc) > 0 else -c
    return out


def interior_terms(comps: tuple, a: dict) -> dict:
    """Contraction with the vector whose i-th component is comps[i] (0-based)."""
    out: dict = {}
    for k, c in a.items():
        rest = k
        pos = 0
        while rest:
            low = rest & -rest
            v = comps[low.bit_length() - 1]
            if v:
                k2 = k ^ low
                c2 = v * c if pos % 2 == 0 else -v * c
                acc = out.get(k2)
                if acc is None:
                    out[k2] = c2
                else:
                    acc = acc + c2
                    if acc:
                        out[k2] = acc
                    else:
                        del out[k2]
            rest ^= low
            pos += 1
    return out


def accumulate_scaled(acc: dict, terms: dict, coeff) -> None:
    """In-place acc += coeff * terms (coeff an exact rational)."""
    if not coeff:
        return
    for k, c in terms.items():
        cur = acc.get(k)
        if cur is None:
            acc[k] = coeff * c
        else:
            cur = cur + coeff * c
            if cur:
                acc[k] = cur
            else:
                del acc[k]


def inner_terms(a: dict, b: dict):
    """Inner product of two term maps (basis forms are orthonormal)."""
    total = _ZERO
    if len(b) < len(a):
        a, b = b, a
    for k, c in a.items():
        cb = b.get(k)
        if cb is not None:
            total += c * cb
    return total
