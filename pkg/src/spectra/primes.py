"""Finite and cofinite sets of primes, and Q-parts of integers.

A PrimeSet is either a finite set of primes or the complement of one.  The
complement form matters because localizing at p means inverting every prime
except p.  Nothing here ever factors an integer over an unknown prime set:
q_factor only divides by explicitly named primes, so cofinite sets cost the
same as finite ones.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import is_prime, prime_part


@dataclass(frozen=True)
class PrimeSet:
    """A set of primes, stored as members + a complement flag.

    >>> 3 in PrimeSet.of(2, 3)
    True
    >>> 3 in PrimeSet.all_but(3)
    False
    >>> PrimeSet.all_but().is_finite
    False
    """

    members: tuple = ()
    complement: bool = False

    def __post_init__(self):
        ms = tuple(sorted(set(self.members)))
        for p in ms:
            if not is_prime(p):
                raise ValueError("not a prime: %r" % (p,))
        object.__setattr__(self, "members", ms)

    @classmethod
    def of(cls, *primes):
        return cls(members=tuple(primes))

    @classmethod
    def from_iterable(cls, primes):
        if isinstance(primes, PrimeSet):
            return primes
        return cls(members=tuple(primes))

    @classmethod
    def all_but(cls, *primes):
        return cls(members=tuple(primes), complement=True)

    @property
    def is_finite(self):
        return not self.complement

    @property
    def is_empty(self):
        return not self.complement and not self.members

    def __contains__(self, p):
        return (p in self.members) != self.complement

    def __str__(self):
        inner = "{%s}" % ",".join(str(p) for p in self.members)
        if self.complement:
            return "all primes except %s" % inner if self.members else "all primes"
        return inner

    def q_factor(self, n):
        """Largest positive divisor of n supported on this prime set.

        >>> PrimeSet.of(2, 3).q_factor(720)
        144
        >>> PrimeSet.all_but(5).q_factor(720)
        144
        >>> PrimeSet.of().q_factor(7)
        1
        """
        if n == 0:
            raise ValueError("q_factor of 0 is undefined")
        n = abs(n)
        named = 1
        for p in self.members:
            named *= prime_part(n, p)
        return n // named if self.complement else named

    def coprime_part(self, n):
        """|n| with all factors from this prime set removed."""
        return abs(n) // self.q_factor(n)


def q_factor(n, primes):
    """Module-level form of PrimeSet.q_factor; accepts any prime iterable.

    >>> q_factor(720, {2, 3})
    144
    >>> q_factor(8, [2])
    8
    """
    return PrimeSet.from_iterable(primes).q_factor(n)
