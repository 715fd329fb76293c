"""Exact arithmetic over the three entry rings used by the toolkit.

* ``IntegerRing`` wraps arbitrary-precision integers.
* ``ModularRing(n)`` stores residues reduced into ``[0, n)``.
* ``PolynomialRing()`` is the ring of integer polynomials in the variable
  family ``a1, a2, a3, ...``.

Polynomial values are kept canonical at all times: coefficients are
arbitrary-precision integers, zero coefficients are never stored, and terms
are sorted in graded-lexicographic order with ``a1 > a2 > ...``.  Structural
equality therefore coincides with mathematical equality, and values are
hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from .errors import (
    RingMismatchError,
    StructuralError,
    UnsupportedOperationError,
    ValidationError,
)

# A monomial is a tuple of (variable index, exponent) pairs, index ascending,
# every exponent >= 1.  The empty tuple is the constant monomial.
Monomial = tuple[tuple[int, int], ...]
# Terms are (monomial, coefficient) pairs sorted leading-first.
Terms = tuple[tuple[Monomial, int], ...]

_CONST: Monomial = ()


def _grlex_key(mono: Monomial):
    degree = sum(e for _, e in mono)
    return (degree, tuple((-i, e) for i, e in mono))


def _canonical_terms(acc: dict[Monomial, int]) -> Terms:
    items = [(m, c) for m, c in acc.items() if c != 0]
    items.sort(key=lambda t: _grlex_key(t[0]), reverse=True)
    return tuple(items)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps: dict[int, int] = dict(a)
    for i, e in b:
        exps[i] = exps.get(i, 0) + e
    return tuple(sorted(exps.items()))


def _mono_divide(a: Monomial, b: Monomial) -> Monomial | None:
    """a / b, or None when b does not divide a."""
    exps = dict(a)
    for i, e in b:
        have = exps.get(i, 0)
        if have < e:
            return None
        if have == e:
            del exps[i]
        else:
            exps[i] = have - e
    return tuple(sorted(exps.items()))


def _poly_add(x: Terms, y: Terms) -> Terms:
    acc = dict(x)
    for m, c in y:
        acc[m] = acc.get(m, 0) + c
    return _canonical_terms(acc)


def _poly_neg(x: Terms) -> Terms:
    return tuple((m, -c) for m, c in x)


def _poly_mul(x: Terms, y: Terms) -> Terms:
    acc: dict[Monomial, int] = {}
    for mx, cx in x:
        for my, cy in y:
            m = _mono_mul(mx, my)
            acc[m] = acc.get(m, 0) + cx * cy
    return _canonical_terms(acc)


def _poly_divexact(num: Terms, den: Terms) -> Terms:
    """Exact division of canonical term tuples.

    Used by fraction-free elimination, where divisibility is guaranteed.
    Raises ArithmeticError when the division is not exact, which signals a
    broken invariant upstream.
    """
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    den_mono, den_coeff = den[0]
    rest: dict[Monomial, int] = dict(num)
    quotient: dict[Monomial, int] = {}
    while rest:
        lead = max(rest, key=_grlex_key)
        q_mono = _mono_divide(lead, den_mono)
        q_coeff, rem = divmod(rest[lead], den_coeff)
        if q_mono is None or rem != 0:
            raise ArithmeticError("inexact polynomial division")
        quotient[q_mono] = quotient.get(q_mono, 0) + q_coeff
        for m, c in den:
            key = _mono_mul(q_mono, m)
            val = rest.get(key, 0) - q_coeff * c
            if val:
                rest[key] = val
            elif key in rest:
                del rest[key]
    return _canonical_terms(quotient)


def _term_str(mono: Monomial, coeff: int) -> str:
    if not mono:
        return str(coeff)
    factors = "*".join(
        f"a{i}" if e == 1 else f"a{i}^{e}" for i, e in mono
    )
    if coeff == 1:
        return factors
    if coeff == -1:
        return "-" + factors
    return f"{coeff}*{factors}"


@dataclass(frozen=True)
class IntegerRing:
    """The ring of arbitrary-precision integers."""

    def value(self, n: int) -> "RingValue":
        return RingValue(self, int(n))

    def zero(self) -> "RingValue":
        return self.value(0)

    def one(self) -> "RingValue":
        return self.value(1)

    def __str__(self) -> str:
        return "Z"


@dataclass(frozen=True)
class ModularRing:
    """The residue ring Z/nZ with canonical representatives in [0, n)."""

    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValidationError(f"modulus must be at least 2, got {self.modulus}")

    def value(self, n: int) -> "RingValue":
        return RingValue(self, int(n) % self.modulus)

    def zero(self) -> "RingValue":
        return self.value(0)

    def one(self) -> "RingValue":
        return self.value(1)

    def __str__(self) -> str:
        return f"Z/{self.modulus}"


@dataclass(frozen=True)
class PolynomialRing:
    """Integer polynomials in the countable variable family a1, a2, ...

    Variable names are ``a`` followed by a positive decimal index; the
    family is ordered by index, a1 being the greatest in the term order.
    """

    def value(self, n: int) -> "RingValue":
        n = int(n)
        terms: Terms = ((_CONST, n),) if n else ()
        return RingValue(self, terms)

    def zero(self) -> "RingValue":
        return self.value(0)

    def one(self) -> "RingValue":
        return self.value(1)

    def variable(self, index: int) -> "RingValue":
        if index < 1:
            raise ValidationError(f"variable index must be positive, got {index}")
        return RingValue(self, (((((index, 1),)), 1),))

    def monomial(self, coeff: int, exponents: Mapping[int, int]) -> "RingValue":
        if coeff == 0:
            return self.zero()
        for i, e in exponents.items():
            if i < 1 or e < 1:
                raise ValidationError("exponent map must use positive indices and exponents")
        mono = tuple(sorted(exponents.items()))
        return RingValue(self, ((mono, int(coeff)),))

    def __str__(self) -> str:
        return "Z[a]"


RingSpec = Union[IntegerRing, ModularRing, PolynomialRing]

INTEGERS = IntegerRing()
POLYNOMIALS = PolynomialRing()


@dataclass(frozen=True)
class RingValue:
    """An immutable element of one of the three rings.

    The payload is an ``int`` for integer and residue values, and a
    canonical term tuple for polynomials.  Construct values through the
    ring objects rather than directly.
    """

    spec: RingSpec
    payload: int | Terms

    def _require_same(self, other: "RingValue") -> None:
        if not isinstance(other, RingValue):
            raise StructuralError(f"expected a ring value, got {type(other).__name__}")
        if self.spec != other.spec:
            raise RingMismatchError(f"mixed rings: {self.spec} and {other.spec}")

    def is_zero(self) -> bool:
        if isinstance(self.spec, PolynomialRing):
            return not self.payload
        return self.payload == 0

    def is_one(self) -> bool:
        if isinstance(self.spec, PolynomialRing):
            return self.payload == ((_CONST, 1),)
        return self.payload == 1

    def __add__(self, other: "RingValue") -> "RingValue":
        self._require_same(other)
        if isinstance(self.spec, PolynomialRing):
            return RingValue(self.spec, _poly_add(self.payload, other.payload))
        if isinstance(self.spec, ModularRing):
            return RingValue(self.spec, (self.payload + other.payload) % self.spec.modulus)
        return RingValue(self.spec, self.payload + other.payload)

    def __sub__(self, other: "RingValue") -> "RingValue":
        return self + (-other)

    def __neg__(self) -> "RingValue":
        if isinstance(self.spec, PolynomialRing):
            return RingValue(self.spec, _poly_neg(self.payload))
        if isinstance(self.spec, ModularRing):
            return RingValue(self.spec, (-self.payload) % self.spec.modulus)
        return RingValue(self.spec, -self.payload)

    def __mul__(self, other: "RingValue") -> "RingValue":
        self._require_same(other)
        if isinstance(self.spec, PolynomialRing):
            return RingValue(self.spec, _poly_mul(self.payload, other.payload))
        if isinstance(self.spec, ModularRing):
            return RingValue(self.spec, (self.payload * other.payload) % self.spec.modulus)
        return RingValue(self.spec, self.payload * other.payload)

    def variables(self) -> tuple[int, ...]:
        """Sorted indices of the variables occurring in this value."""
        if not isinstance(self.spec, PolynomialRing):
            return ()
        seen = {i for mono, _ in self.payload for i, _ in mono}
        return tuple(sorted(seen))

    def constant_value(self) -> int | None:
        """The integer this value equals, or None for a non-constant polynomial."""
        if isinstance(self.spec, PolynomialRing):
            if not self.payload:
                return 0
            if len(self.payload) == 1 and self.payload[0][0] == _CONST:
                return self.payload[0][1]
            return None
        return self.payload

    def single_variable(self) -> int | None:
        """If the value is exactly one variable a_k, return k, else None."""
        if not isinstance(self.spec, PolynomialRing):
            return None
        if len(self.payload) != 1:
            return None
        mono, coeff = self.payload[0]
        if coeff == 1 and len(mono) == 1 and mono[0][1] == 1:
            return mono[0][0]
        return None

    def __str__(self) -> str:
        if isinstance(self.spec, PolynomialRing):
            if not self.payload:
                return "0"
            parts = [_term_str(m, c) for m, c in self.payload]
            out = parts[0]
            for p in parts[1:]:
                out += " - " + p[1:] if p.startswith("-") else " + " + p
            return out
        return str(self.payload)


def divexact(x: RingValue, y: RingValue) -> RingValue:
    """Exact division, defined only over the integral domains."""
    x._require_same(y)
    if isinstance(x.spec, ModularRing):
        raise UnsupportedOperationError("exact division is not defined over residue rings")
    if isinstance(x.spec, PolynomialRing):
        return RingValue(x.spec, _poly_divexact(x.payload, y.payload))
    if y.payload == 0:
        raise ZeroDivisionError("division by zero")
    q, r = divmod(x.payload, y.payload)
    if r != 0:
        raise ArithmeticError(f"inexact integer division {x.payload} / {y.payload}")
    return RingValue(x.spec, q)


def poly_eval(value: RingValue, assignment: Mapping[str, int]) -> RingValue:
    """Evaluate a polynomial at integer points, yielding an integer value.

    The assignment maps variable names such as ``"a3"`` to integers and must
    cover every variable occurring in the polynomial.
    """
    if not isinstance(value.spec, PolynomialRing):
        raise StructuralError("poly_eval expects a polynomial value")
    total = 0
    for mono, coeff in value.payload:
        term = coeff
        for i, e in mono:
            name = f"a{i}"
            if name not in assignment:
                raise StructuralError(f"assignment is missing variable {name}")
            term *= assignment[name] ** e
        total += term
    return INTEGERS.value(total)


def iter_terms(value: RingValue) -> Iterator[tuple[Monomial, int]]:
    """Iterate (monomial, coefficient) pairs of a polynomial, leading first."""
    if not isinstance(value.spec, PolynomialRing):
        raise StructuralError("iter_terms expects a polynomial value")
    return iter(value.payload)
