"""Exact arithmetic in Z[w] for w = exp(2*pi*i/p), p prime.

Elements are stored in canonical coordinates over the power basis
1, w, ..., w^(p-2); the relation w^(p-1) = -(1 + w + ... + w^(p-2)) is
applied eagerly, so equality is plain coefficient comparison and the zero
test is exact.  The element u = 1 - w generates the unique prime above p
(u^(p-1) and p agree up to a unit), which makes u-adic valuations the
exact way to read off p-adic valuations of the integers this package
produces.
"""

from __future__ import annotations

import math

from .errors import InexactDivision, InvalidParameter, PrimeMismatch
from .exactdet import RingElement


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class CycInt(RingElement):
    """An element of Z[w] in canonical power-basis coordinates.

    ``coeffs`` always has length p - 1.  Mixed-prime operations raise
    :class:`PrimeMismatch`; integer operands are coerced.
    """

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != p - 1:
            raise InvalidParameter(
                f"need {p - 1} coefficients for prime {p}, got {len(coeffs)}"
            )
        self.p = p
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------

    @classmethod
    def from_int(cls, p: int, n: int) -> "CycInt":
        return cls(p, (n,) + (0,) * (p - 2))

    @classmethod
    def zero(cls, p: int) -> "CycInt":
        return cls(p, (0,) * (p - 1))

    @classmethod
    def one(cls, p: int) -> "CycInt":
        return cls.from_int(p, 1)

    @classmethod
    def root(cls, p: int, k: int = 1) -> "CycInt":
        """The root of unity w^k."""
        acc = [0] * p
        acc[k % p] = 1
        return cls.from_exponent_vector(p, acc)

    @classmethod
    def from_exponent_vector(cls, p: int, vec) -> "CycInt":
        """Reduce a length-p coefficient vector (indexed by the exponent
        of w) to canonical coordinates using 1 + w + ... + w^(p-1) = 0."""
        if len(vec) != p:
            raise InvalidParameter(f"need {p} accumulator slots, got {len(vec)}")
        top = vec[p - 1]
        if top:
            return cls(p, tuple(vec[i] - top for i in range(p - 1)))
        return cls(p, tuple(vec[:-1]))

    # -- basic ring structure -----------------------------------------

    def _coerce(self, other):
        if isinstance(other, int):
            return CycInt.from_int(self.p, other)
        if isinstance(other, CycInt):
            if other.p != self.p:
                raise PrimeMismatch(f"mixed primes {self.p} and {other.p}")
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycInt(self.p, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return CycInt(self.p, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.p, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p
        acc = [0] * p
        b = o.coeffs
        for i, ai in enumerate(self.coeffs):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    acc[(i + j) % p] += ai * bj
        return CycInt.from_exponent_vector(p, acc)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise InvalidParameter("negative powers leave Z[w]")
        out = CycInt.one(self.p)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"CycInt(p={self.p}, {list(self.coeffs)})"

    # -- structure maps ------------------------------------------------

    def galois(self, k: int) -> "CycInt":
        """Apply the automorphism w -> w^k (1 <= k <= p-1)."""
        p = self.p
        if not 1 <= k <= p - 1:
            raise InvalidParameter(f"automorphism index {k} not in 1..{p - 1}")
        acc = [0] * p
        for i, c in enumerate(self.coeffs):
            if c:
                acc[(i * k) % p] += c
        return CycInt.from_exponent_vector(p, acc)

    def conjugates_product(self) -> "CycInt":
        """Product of all Galois conjugates other than the element itself."""
        out = CycInt.one(self.p)
        for k in range(2, self.p):
            out = out * self.galois(k)
        return out

    def norm(self) -> int:
        """Field norm down to Z (product over all conjugates)."""
        n = (self * self.conjugates_product()).as_integer()
        assert n is not None, "norm must be a rational integer"
        return n

    def as_integer(self):
        """The rational integer this element equals, or None.

        Canonical coordinates make this a plain pattern match: an element
        is in Z exactly when all coordinates above the constant vanish.
        """
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    # -- divisibility --------------------------------------------------

    def _div_u(self):
        """Exact quotient by u = 1 - w, or None if u does not divide.

        Divisibility by u is equivalent to p | f(1) because Z[w]/(u) is
        the field with p elements under w -> 1.  When that holds, subtract
        the right multiple of 1 + w + ... + w^(p-1) (which is zero) to
        force a root at 1, then strip the factor (1 - w) by synthetic
        division.  No norms, no coefficient blowup.
        """
        p = self.p
        a = self.coeffs
        t, r = divmod(sum(a), p)
        if r:
            return None
        q = [0] * (p - 1)
        q[p - 2] = -t
        for i in range(p - 2, 0, -1):
            q[i - 1] = (a[i] - t) + q[i]
        return CycInt(p, tuple(-x for x in q))

    def u_valuation(self):
        """Exponent of u = 1 - w dividing the element (inf for zero).

        For a rational integer n this equals (p-1) * v_p(n), which is how
        p-adic valuations of determinant values are certified exactly.
        """
        if not self:
            return math.inf
        v = 0
        cur = self
        while True:
            nxt = cur._div_u()
            if nxt is None:
                return v
            v += 1
            cur = nxt

    def divexact(self, other):
        """Exact quotient self / other; raises InexactDivision otherwise.

        Clears the denominator with its Galois conjugates, so the division
        reduces to p - 1 integer divisions by the norm.  Exactness of all
        of them is equivalent to divisibility in Z[w] because the ring is
        an integral domain.
        """
        if isinstance(other, int):
            other = CycInt.from_int(self.p, other)
        elif not isinstance(other, CycInt):
            raise TypeError(f"cannot divide CycInt by {type(other).__name__}")
        elif other.p != self.p:
            raise PrimeMismatch(f"mixed primes {self.p} and {other.p}")
        conj = other.conjugates_product()
        denom = (other * conj).as_integer()
        assert denom is not None, "norm must be a rational integer"
        if denom == 0:
            raise ZeroDivisionError("division by zero in Z[w]")
        num = self * conj
        out = []
        for c in num.coeffs:
            q, r = divmod(c, denom)
            if r:
                raise InexactDivision(f"{self!r} is not divisible by {other!r}")
            out.append(q)
        return CycInt(self.p, tuple(out))


def eval_at_root(coeffs, k: int, p: int) -> CycInt:
    """Evaluate sum(coeffs[i] * x^i) at x = w^k as an exact CycInt."""
    acc = [0] * p
    for i, c in enumerate(coeffs):
        if c:
            acc[(i * k) % p] += c
    return CycInt.from_exponent_vector(p, acc)


def eval_bivariate_at_roots(coeffs2d, i: int, j: int, p: int) -> CycInt:
    """Evaluate sum(c[b][k] y^b z^k) at (y, z) = (w^i, w^j) exactly."""
    acc = [0] * p
    for b, row in enumerate(coeffs2d):
        ib = i * b
        for k, c in enumerate(row):
            if c:
                acc[(ib + j * k) % p] += c
    return CycInt.from_exponent_vector(p, acc)
