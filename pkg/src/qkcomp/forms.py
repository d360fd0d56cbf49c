"""Exact exterior algebra over an oriented inner-product space.

Coefficients are arbitrary-precision rationals throughout; every
operator identity checked on top of this module is therefore exact, with
no tolerances.  The canonical ordered basis is orthonormal and fixes the
orientation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import kernel

Rational = Fraction | int


class DimensionMismatch(ValueError):
    """Operands live over different ambient spaces."""


class ContractViolation(ValueError):
    """An operation precondition was violated."""


@dataclass(frozen=True)
class InnerSpace:
    """Oriented inner-product space with the canonical orthonormal basis."""

    dim: int

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ContractViolation(f"dimension must be >= 1, got {self.dim}")

    def basis_indices(self) -> range:
        return range(1, self.dim + 1)


def _mask(indices: Iterable[int], dim: int) -> int:
    m = 0
    for i in indices:
        if not 1 <= i <= dim:
            raise ContractViolation(f"index {i} out of range 1..{dim}")
        bit = 1 << (i - 1)
        if m & bit:
            raise ContractViolation(f"repeated index {i}")
        m |= bit
    return m


def _indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _sort_sign(indices: tuple[int, ...]) -> int:
    """Sign of the permutation sorting `indices` ascending (0 if repeated)."""
    sign = 1
    seq = list(indices)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] == seq[j]:
                return 0
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class Form:
    """Alternating multilinear form with exact rational coefficients.

    Stored sparsely as ``mask -> Fraction`` with zero coefficients never
    kept.  Instances are immutable; all operations return new forms.
    """

    __slots__ = ("space", "degree", "_terms")

    def __init__(self, space: InnerSpace, degree: int, terms: dict | None = None):
        if degree < 0:
            raise ContractViolation(f"degree must be >= 0, got {degree}")
        self.space = space
        self.degree = degree
        self._terms: dict = terms if terms is not None else {}

    @classmethod
    def zero(cls, space: InnerSpace, degree: int) -> "Form":
        return cls(space, degree)

    @classmethod
    def basis(cls, space: InnerSpace, indices: Iterable[int],
              coeff: Rational = 1) -> "Form":
        """Form coeff * theta^{i1} ^ ... ^ theta^{ip} for the given index order."""
        idx = tuple(indices)
        sign = _sort_sign(idx)
        c = Fraction(coeff) * sign
        f = cls(space, len(idx))
        if c:
            f._terms[_mask(idx, space.dim)] = c
        return f

    @classmethod
    def from_terms(cls, space: InnerSpace, degree: int,
                   term_map: Mapping[tuple[int, ...], Rational]) -> "Form":
        f = cls(space, degree)
        for idx, coeff in term_map.items():
            if len(idx) != degree:
                raise ContractViolation(
                    f"key {idx} has length {len(idx)}, expected degree {degree}")
            sign = _sort_sign(tuple(idx))
            c = Fraction(coeff) * sign
            if c:
                m = _mask(idx, space.dim)
                cur = f._terms.get(m, Fraction(0)) + c
                if cur:
                    f._terms[m] = cur
                elif m in f._terms:
                    del f._terms[m]
        return f

    def coefficient(self, indices: Iterable[int]) -> Fraction:
        """Coefficient on the monomial written in the given index order."""
        idx = tuple(indices)
        sign = _sort_sign(idx)
        if sign == 0:
            return Fraction(0)
        return sign * self._terms.get(_mask(idx, self.space.dim), Fraction(0))

    def terms(self) -> dict[tuple[int, ...], Fraction]:
        """Sorted-index view of the stored terms."""
        return {_indices(m): c for m, c in sorted(self._terms.items())}

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (self.space == other.space and self.degree == other.degree
                and self._terms == other._terms)

    def __hash__(self):  # pragma: no cover - forms are not hashable
        raise TypeError("Form is unhashable")

    def __add__(self, other: "Form") -> "Form":
        self._check_compatible(other)
        if self.degree != other.degree:
            raise ContractViolation(
                f"cannot add degrees {self.degree} and {other.degree}")
        out = dict(self._terms)
        kernel.accumulate_scaled(out, other._terms, Fraction(1))
        return Form(self.space, self.degree, out)

    def __sub__(self, other: "Form") -> "Form":
        self._check_compatible(other)
        if self.degree != other.degree:
            raise ContractViolation(
                f"cannot subtract degrees {self.degree} and {other.degree}")
        out = dict(self._terms)
        kernel.accumulate_scaled(out, other._terms, Fraction(-1))
        return Form(self.space, self.degree, out)

    def __neg__(self) -> "Form":
        return Form(self.space, self.degree, {k: -c for k, c in self._terms.items()})

    def __mul__(self, scalar: Rational) -> "Form":
        if scalar == 1:
            return self
        if scalar == -1:
            return self.__neg__()
        c = Fraction(scalar)
        if not c:
            return Form(self.space, self.degree)
        return Form(self.space, self.degree,
                    {k: c * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if not self._terms:
            return f"Form(dim={self.space.dim}, deg={self.degree}, 0)"
        parts = " + ".join(
            f"({c})*theta{_indices(m)}" for m, c in sorted(self._terms.items()))
        return f"Form(dim={self.space.dim}, deg={self.degree}, {parts})"

    def _check_compatible(self, other: "Form") -> None:
        if self.space.dim != other.space.dim:
            raise DimensionMismatch(
                f"ambient dimensions differ: {self.space.dim} vs {other.space.dim}")


@dataclass(frozen=True)
class Vector:
    """Vector with exact rational components over the canonical basis."""

    space: InnerSpace
    components: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.components) != self.space.dim:
            raise DimensionMismatch(
                f"expected {self.space.dim} components, got {len(self.components)}")

    @classmethod
    def of(cls, space: InnerSpace, comps: Iterable[Rational]) -> "Vector":
        return cls(space, tuple(Fraction(c) for c in comps))

    @classmethod
    def basis(cls, space: InnerSpace, i: int) -> "Vector":
        comps = [Fraction(0)] * space.dim
        comps[i - 1] = Fraction(1)
        return cls(space, tuple(comps))

    def dual(self) -> Form:
        """Metric-dual 1-form (the basis is orthonormal)."""
        f = Form(self.space, 1)
        for i, c in enumerate(self.components):
            if c:
                f._terms[1 << i] = c
        return f

    def dot(self, other: "Vector") -> Fraction:
        return sum((a * b for a, b in zip(self.components, other.components)),
                   Fraction(0))

    def is_zero(self) -> bool:
        return not any(self.components)


def dual_vector(theta: Form) -> Vector:
    """Metric-dual vector of a 1-form."""
    if theta.degree != 1:
        raise ContractViolation(f"expected a 1-form, got degree {theta.degree}")
    comps = [Fraction(0)] * theta.space.dim
    for m, c in theta._terms.items():
        comps[m.bit_length() - 1] = c
    return Vector(theta.space, tuple(comps))


def wedge(a: Form, b: Form) -> Form:
    """Exterior product a ^ b."""
    a._check_compatible(b)
    degree = a.degree + b.degree
    if degree > a.space.dim:
        return Form(a.space, degree)
    return Form(a.space, degree, kernel.wedge_terms(a._terms, b._terms))


def hodge_star(a: Form) -> Form:
    """Hodge star for the canonical orientation: maps degree p to dim - p."""
    if a.degree > a.space.dim:
        return Form(a.space, 0)
    return Form(a.space, a.space.dim - a.degree,
                kernel.star_terms(a._terms, a.space.dim))


def interior(v: Vector, a: Form) -> Form:
    """Interior product (contraction) of a vector into a form."""
    if v.space.dim != a.space.dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {v.space.dim} vs {a.space.dim}")
    if a.degree == 0:
        return Form(a.space, 0)
    return Form(a.space, a.degree - 1,
                kernel.interior_terms(v.components, a._terms))


def ext_mult(theta: Form, a: Form) -> Form:
    """Exterior multiplication by a 1-form: theta ^ a."""
    if theta.degree != 1:
        raise ContractViolation(
            f"exterior multiplication requires a 1-form, got degree {theta.degree}")
    return wedge(theta, a)


def form_inner(a: Form, b: Form) -> Fraction:
    """Induced inner product on forms (basis monomials are orthonormal)."""
    a._check_compatible(b)
    if a.degree != b.degree:
        return Fraction(0)
    return kernel.inner_terms(a._terms, b._terms)
