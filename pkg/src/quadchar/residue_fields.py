"""Exact arithmetic in small finite fields and their quadratic extensions.

This module is the residue-level substrate for quadratic-character
evaluation.  It provides:

* ``FiniteField(p, f)`` — the field with ``q = p**f`` elements (``f`` is 1
  or 2, ``q`` odd), with exact integer-encoded arithmetic;
* ``QuadraticExtension(base)`` — the degree-2 extension of a
  ``FiniteField`` realised as ``base[X]/(X**2 - u)`` with ``u`` the
  canonical non-square, elements being pairs ``(a, b)`` for ``a + b*X``;
* the two sign characters:

  - ``sgn_units(k, x) = x**((q-1)//2)`` — the unique nontrivial quadratic
    character of the cyclic group ``k^x`` of order ``q - 1``;
  - ``sgn_norm_one(ext, x) = x**((q+1)//2)`` — the unique nontrivial
    quadratic character of the norm-one subgroup of ``ext^x``, cyclic of
    order ``q + 1``;

* Frobenius ``x -> x**q``, norm ``x -> x**(q+1)`` and trace ``x -> x + x**q``
  from the quadratic extension down to the base.

Element encoding.  Elements of ``FiniteField(p, f)`` are integers in
``range(q)``.  For ``f == 1`` the integer is the residue itself; for
``f == 2`` the integer ``a + p*b`` encodes ``a + b*X`` in
``F_p[X]/(X**2 - u_p)`` where ``u_p`` is the least positive non-residue
mod ``p``.  Elements of a ``QuadraticExtension`` are pairs of base-field
encodings.

All arithmetic is exact; fields are capped at ``q <= 10**4`` to guard
against accidental blowup in exhaustive tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

__all__ = [
    "ExtElement",
    "FiniteField",
    "QuadraticExtension",
    "NormOneElement",
    "sgn_units",
    "sgn_norm_one",
    "frobenius",
    "norm_to_base",
    "trace_to_base",
]

_MAX_Q = 10_000

ExtElement = tuple[int, int]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n >= 1`` by trial division."""
    out: list[int] = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FiniteField:
    """The finite field with ``q = p**f`` elements, ``p`` an odd prime.

    Supports ``f in (1, 2)``; larger residue degrees in this project are
    handled by cyclic-group exponent models and never need a field basis.

    >>> k = FiniteField(5)
    >>> k.q
    5
    >>> k.mul(2, 3)
    1
    >>> k9 = FiniteField(3, 2)   # F_9 = F_3[X]/(X^2 - 2), i.e. F_3(i)
    >>> k9.mul(3, 3)             # X * X = 2  (X^2 = u = 2 = -1)
    2
    """

    p: int
    f: int = 1

    def __post_init__(self) -> None:
        if self.p == 2 or not _is_prime(self.p):
            raise ValueError(f"characteristic must be an odd prime, got {self.p}")
        if self.f not in (1, 2):
            raise ValueError(f"residue degree must be 1 or 2, got {self.f}")
        if self.p**self.f > _MAX_Q:
            raise ValueError(f"field size {self.p ** self.f} exceeds cap {_MAX_Q}")

    @property
    def q(self) -> int:
        return self.p**self.f

    # -- encoding helpers -------------------------------------------------

    def _decode(self, x: int) -> tuple[int, int]:
        self._check(x)
        return (x % self.p, x // self.p)

    def _encode(self, a: int, b: int) -> int:
        return (a % self.p) + self.p * (b % self.p)

    def _check(self, x: int) -> None:
        if not 0 <= x < self.q:
            raise ValueError(f"element {x} out of range for field of size {self.q}")

    def reduce(self, n: int) -> int:
        """Reduce an arbitrary integer into the prime subfield (``f == 1`` only)."""
        if self.f != 1:
            raise ValueError("integer reduction is defined only for prime fields")
        return n % self.p

    # -- ring operations ---------------------------------------------------

    def add(self, x: int, y: int) -> int:
        if self.f == 1:
            self._check(x), self._check(y)
            return (x + y) % self.p
        a, b = self._decode(x)
        c, d = self._decode(y)
        return self._encode(a + c, b + d)

    def neg(self, x: int) -> int:
        if self.f == 1:
            self._check(x)
            return (-x) % self.p
        a, b = self._decode(x)
        return self._encode(-a, -b)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.f == 1:
            self._check(x), self._check(y)
            return (x * y) % self.p
        a, b = self._decode(x)
        c, d = self._decode(y)
        u = _modulus_nonsquare(self.p)
        return self._encode(a * c + u * b * d, a * d + b * c)

    def pow(self, x: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(x), -n)
        if self.f == 1:
            self._check(x)
            return pow(x, n, self.p)
        result, base = 1, x
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(x, self.q - 2)

    # -- enumeration and structure ------------------------------------------

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    def units(self) -> Iterator[int]:
        return iter(range(1, self.q))

    def is_square(self, x: int) -> bool:
        """Whether the nonzero element ``x`` is a square in ``self``."""
        if x == 0:
            raise ValueError("squareness of zero is not defined here")
        return self.pow(x, (self.q - 1) // 2) == 1

    def canonical_nonsquare(self) -> int:
        """The first non-square unit in encoding order.

        For a prime field this is the least positive quadratic non-residue
        mod ``p``; the choice is deterministic and is used as the defining
        modulus for quadratic extensions.
        """
        return _canonical_nonsquare(self)

    def generator(self) -> int:
        """A generator of the cyclic unit group, found by deterministic search."""
        return _generator(self)

    def unit_order(self, x: int) -> int:
        """Multiplicative order of the unit ``x``."""
        if x == 0:
            raise ValueError("zero has no multiplicative order")
        order = self.q - 1
        for r in _prime_factors(self.q - 1):
            while order % r == 0 and self.pow(x, order // r) == 1:
                order //= r
        return order


@lru_cache(maxsize=None)
def _modulus_nonsquare(p: int) -> int:
    """Least positive quadratic non-residue mod the odd prime ``p``."""
    squares = {(x * x) % p for x in range(1, p)}
    return min(x for x in range(1, p) if x not in squares)


@lru_cache(maxsize=None)
def _canonical_nonsquare(k: FiniteField) -> int:
    return min(x for x in k.units() if not k.is_square(x))


@lru_cache(maxsize=None)
def _generator(k: FiniteField) -> int:
    for g in k.units():
        if k.unit_order(g) == k.q - 1:
            return g
    raise AssertionError("unit group of a finite field is cyclic")


@dataclass(frozen=True)
class QuadraticExtension:
    """The quadratic extension ``base[X]/(X**2 - u)``, ``u`` the canonical non-square.

    Elements are pairs ``(a, b)`` of base-field encodings meaning
    ``a + b*sqrt(u)``.  The cardinality is ``q**2`` where ``q = base.q``.

    >>> ext = QuadraticExtension(FiniteField(3))   # F_9 = F_3(i), u = 2 = -1
    >>> i = (0, 1)
    >>> ext.mul(i, i)          # i^2 = -1
    (2, 0)
    >>> ext.norm(i)            # i * conj(i) = -i^2 = 1
    1
    >>> ext.trace(i)
    0
    """

    base: FiniteField

    def __post_init__(self) -> None:
        if self.base.q**2 > _MAX_Q**2:
            raise ValueError("extension too large")

    @property
    def q(self) -> int:
        """Cardinality of the *base* field."""
        return self.base.q

    @property
    def u(self) -> int:
        return self.base.canonical_nonsquare()

    @property
    def zero(self) -> ExtElement:
        return (0, 0)

    @property
    def one(self) -> ExtElement:
        return (1, 0)

    def embed(self, a: int) -> ExtElement:
        self.base._check(a)
        return (a, 0)

    def add(self, x: ExtElement, y: ExtElement) -> ExtElement:
        return (self.base.add(x[0], y[0]), self.base.add(x[1], y[1]))

    def neg(self, x: ExtElement) -> ExtElement:
        return (self.base.neg(x[0]), self.base.neg(x[1]))

    def mul(self, x: ExtElement, y: ExtElement) -> ExtElement:
        a, b = x
        c, d = y
        k, u = self.base, self.u
        real = k.add(k.mul(a, c), k.mul(u, k.mul(b, d)))
        imag = k.add(k.mul(a, d), k.mul(b, c))
        return (real, imag)

    def pow(self, x: ExtElement, n: int) -> ExtElement:
        if n < 0:
            return self.pow(self.inv(x), -n)
        result, base = self.one, x
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inv(self, x: ExtElement) -> ExtElement:
        nrm = self.norm(x)
        if nrm == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.base.inv(nrm)
        conj = self.conj(x)
        return (self.base.mul(conj[0], c), self.base.mul(conj[1], c))

    def conj(self, x: ExtElement) -> ExtElement:
        """The base-field automorphism ``a + b*sqrt(u) -> a - b*sqrt(u)``.

        This equals the ``q``-power Frobenius: ``sqrt(u)**q = u**((q-1)/2)
        * sqrt(u) = -sqrt(u)`` since ``u`` is a non-square.
        """
        return (x[0], self.base.neg(x[1]))

    def norm(self, x: ExtElement) -> int:
        """Norm to the base field: ``x * conj(x) = a**2 - u*b**2``."""
        a, b = x
        k, u = self.base, self.u
        return k.sub(k.mul(a, a), k.mul(u, k.mul(b, b)))

    def trace(self, x: ExtElement) -> int:
        """Trace to the base field: ``x + conj(x) = 2a``."""
        return self.base.add(x[0], x[0])

    def elements(self) -> Iterator[ExtElement]:
        for b in self.base.elements():
            for a in self.base.elements():
                yield (a, b)

    def units(self) -> Iterator[ExtElement]:
        return (x for x in self.elements() if x != (0, 0))

    def norm_one_elements(self) -> list[ExtElement]:
        """All elements of norm 1; a cyclic group of order ``q + 1``."""
        return [x for x in self.units() if self.norm(x) == 1]

    def scalar(self, x: ExtElement) -> int | None:
        """The base-field value of ``x`` if it lies in the base, else ``None``."""
        return x[0] if x[1] == 0 else None


@dataclass(frozen=True)
class NormOneElement:
    """A validated element of the norm-one subgroup of a quadratic extension.

    The norm-one subgroup is the kernel of the norm map
    ``ext^x -> base^x``, cyclic of order ``q + 1``.
    """

    ext: QuadraticExtension
    value: ExtElement

    def __post_init__(self) -> None:
        if self.ext.norm(self.value) != 1:
            raise ValueError(f"element {self.value} does not have norm 1")


def _sign_of(k: FiniteField, x: int) -> int:
    if x == 1:
        return 1
    if x == k.neg(1):
        return -1
    raise AssertionError(f"expected +-1 in the field, got encoding {x}")


def sgn_units(k: FiniteField, x: int) -> int:
    """The quadratic character of ``k^x``: ``x**((q-1)//2)`` as ``+1`` or ``-1``.

    This is the unique nontrivial quadratic character of the cyclic group
    of order ``q - 1``; its kernel is the subgroup of squares.

    >>> sgn_units(FiniteField(5), 2)
    -1
    >>> sgn_units(FiniteField(5), 4)
    1
    """
    if k.f == 1:
        x = x % k.p
    if x == 0:
        raise ValueError("the sign character is defined on units only")
    return _sign_of(k, k.pow(x, (k.q - 1) // 2))


def sgn_norm_one(ext: QuadraticExtension, x: ExtElement | NormOneElement) -> int:
    """The quadratic character of the norm-one subgroup: ``x**((q+1)//2)``.

    The norm-one subgroup of ``ext^x`` is cyclic of order ``q + 1`` (even),
    so this power lands in ``{+1, -1}`` and defines its unique nontrivial
    quadratic character.

    >>> ext = QuadraticExtension(FiniteField(3))
    >>> sgn_norm_one(ext, (0, 1))    # i has norm 1 in F_9/F_3; i^2 = -1
    -1
    """
    if isinstance(x, NormOneElement):
        x = x.value
    if ext.norm(x) != 1:
        raise ValueError(f"element {x} is not norm-one")
    value = ext.pow(x, (ext.q + 1) // 2)
    scalar = ext.scalar(value)
    if scalar is None:
        raise AssertionError("square root of 1 must be a base scalar")
    return _sign_of(ext.base, scalar)


def frobenius(ext: QuadraticExtension, x: ExtElement) -> ExtElement:
    """The ``q``-power map of the quadratic extension (= conjugation)."""
    return ext.conj(x)


def norm_to_base(ext: QuadraticExtension, x: ExtElement) -> int:
    """``x**(q+1)`` as a base-field element."""
    return ext.norm(x)


def trace_to_base(ext: QuadraticExtension, x: ExtElement) -> int:
    """``x + x**q`` as a base-field element."""
    return ext.trace(x)
