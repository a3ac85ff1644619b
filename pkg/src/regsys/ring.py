"""Arithmetic in Z/n for squarefree n.

Every element of such a ring is a unit times an idempotent, and the ring
splits as a product of prime fields.  All matrix-level algorithms in this
package work one prime at a time and glue the results back together with
the helpers defined here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd


class NotSquarefreeError(ValueError):
    """Raised when a modulus has a repeated prime factor."""

    def __init__(self, modulus: int, prime: int):
        self.modulus = modulus
        self.prime = prime
        super().__init__(
            f"modulus {modulus} is not squarefree: {prime}^2 divides it"
        )


class ContextMismatchError(ValueError):
    pass


def factor_squarefree(n: int) -> tuple[int, ...]:
    """Trial-divide ``n`` and return its primes; reject repeated factors."""
    if n < 2:
        raise ValueError(f"modulus must be >= 2, got {n}")
    primes = []
    rest = n
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            rest //= p
            if rest % p == 0:
                raise NotSquarefreeError(n, p)
            primes.append(p)
        p += 1 if p == 2 else 2
    if rest > 1:
        primes.append(rest)
    return tuple(primes)


@dataclass(frozen=True)
class RingContext:
    """The ring Z/modulus together with its prime factorization."""

    modulus: int
    primes: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.modulus, int) or isinstance(self.modulus, bool):
            raise TypeError("modulus must be an int")
        primes = factor_squarefree(self.modulus)
        if self.primes and tuple(self.primes) != primes:
            raise ValueError(f"primes {self.primes} do not factor {self.modulus}")
        object.__setattr__(self, "primes", primes)

    @cached_property
    def crt_basis(self) -> tuple[int, ...]:
        """Primitive idempotents: the k-th is 1 mod primes[k] and 0 mod the rest."""
        n = self.modulus
        basis = []
        for p in self.primes:
            cofactor = n // p
            basis.append(cofactor * pow(cofactor, -1, p) % n)
        return tuple(basis)

    def __call__(self, value: int) -> "RingElement":
        return RingElement(value, self)

    @property
    def one(self) -> "RingElement":
        return RingElement(1, self)

    @property
    def zero(self) -> "RingElement":
        return RingElement(0, self)

    def elements(self):
        return [RingElement(v, self) for v in range(self.modulus)]

    def units(self) -> list[int]:
        return [v for v in range(1, self.modulus) if gcd(v, self.modulus) == 1]

    def idempotents(self) -> list[int]:
        """All 2**len(primes) idempotents, as residues."""
        out = []
        for mask in range(1 << len(self.primes)):
            out.append(
                sum(b for k, b in enumerate(self.crt_basis) if mask >> k & 1)
                % self.modulus
            )
        return sorted(out)

    # integer-level helpers used by the matrix layer

    def split(self, value: int) -> tuple[int, ...]:
        return tuple(value % p for p in self.primes)

    def join(self, residues) -> int:
        residues = tuple(residues)
        if len(residues) != len(self.primes):
            raise ValueError(
                f"expected {len(self.primes)} residues, got {len(residues)}"
            )
        total = 0
        for r, p, b in zip(residues, self.primes, self.crt_basis):
            if not 0 <= r < p:
                raise ValueError(f"residue {r} out of range for prime {p}")
            total += r * b
        return total % self.modulus

    def support(self, e: int) -> tuple[int, ...]:
        """Indices of the primes at which ``e`` is nonzero."""
        return tuple(k for k, p in enumerate(self.primes) if e % p)

    def idempotent_of(self, value: int) -> int:
        return sum(
            b for p, b in zip(self.primes, self.crt_basis) if value % p
        ) % self.modulus


@dataclass(frozen=True)
class RingElement:
    value: int
    context: RingContext

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.context.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, RingElement):
            if other.context != self.context:
                raise ContextMismatchError(
                    f"Z/{self.context.modulus} vs Z/{other.context.modulus}"
                )
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return RingElement(self.value + v, self.context)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return RingElement(self.value - v, self.context)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return RingElement(v - self.value, self.context)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return RingElement(self.value * v, self.context)

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(-self.value, self.context)

    def __pow__(self, k: int):
        return RingElement(pow(self.value, k, self.context.modulus), self.context)

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.context.modulus})"

    def inverse(self) -> "RingElement":
        if not is_unit(self):
            raise ZeroDivisionError(f"{self!r} is not a unit")
        return RingElement(pow(self.value, -1, self.context.modulus), self.context)


def crt_split(a: RingElement) -> tuple[int, ...]:
    """Residues of ``a`` modulo each prime of its context, in order."""
    return a.context.split(a.value)


def crt_join(residues, ctx: RingContext) -> RingElement:
    return RingElement(ctx.join(residues), ctx)


def idempotent_part(a: RingElement) -> RingElement:
    """The idempotent generating the same ideal as ``a``."""
    return RingElement(a.context.idempotent_of(a.value), a.context)


def unit_idempotent_factor(a: RingElement) -> tuple[RingElement, RingElement]:
    """Return ``(u, e)`` with ``a == u * e``, ``u`` a unit and ``e`` idempotent.

    On the prime components where ``a`` vanishes the unit is taken to be 1.
    """
    ctx = a.context
    unit = [r if r else 1 for r in ctx.split(a.value)]
    return crt_join(unit, ctx), idempotent_part(a)


def is_idempotent(a: RingElement) -> bool:
    return a.value * a.value % a.context.modulus == a.value


def is_unit(a: RingElement) -> bool:
    return gcd(a.value, a.context.modulus) == 1
