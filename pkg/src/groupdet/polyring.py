"""Dense univariate polynomials over Z with exact division.

Used wherever a computation must stay in Z[y] before a final reduction
modulo y^n - 1 or y^n + 1: the symbolic circulant determinant behind the
proof-object coefficients, power-sum identities, and the folded products
in the explicit constructions.
"""

from __future__ import annotations

from .errors import InexactDivision
from .exactdet import RingElement


class IntPoly(RingElement):
    """Polynomial in one variable over Z, coefficients ascending.

    Normalized so the zero polynomial is the empty tuple and nonzero
    polynomials carry no trailing zero coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
        return IntPoly(out)

    __rmul__ = __mul__

    def divexact(self, other):
        """Exact polynomial quotient; raises InexactDivision on remainder."""
        if isinstance(other, int):
            other = IntPoly((other,))
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return IntPoly()
        a = list(self.coeffs)
        b = other.coeffs
        if len(a) < len(b):
            raise InexactDivision(f"{self!r} is not divisible by {other!r}")
        lead = b[-1]
        q = [0] * (len(a) - len(b) + 1)
        for k in range(len(q) - 1, -1, -1):
            head, r = divmod(a[k + len(b) - 1], lead)
            if r:
                raise InexactDivision(f"{self!r} is not divisible by {other!r}")
            q[k] = head
            if head:
                for j, bj in enumerate(b):
                    a[k + j] -= head * bj
        if any(a):
            raise InexactDivision(f"{self!r} is not divisible by {other!r}")
        return IntPoly(q)

    def fold(self, n: int) -> "IntPoly":
        """Reduce modulo y^n - 1 (wrap exponents cyclically)."""
        out = [0] * n
        for e, c in enumerate(self.coeffs):
            out[e % n] += c
        return IntPoly(out)

    def eval_int(self, x: int) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def padded(self, n: int) -> list:
        """Coefficient list of length exactly n (degree must be < n)."""
        if len(self.coeffs) > n:
            raise ValueError(f"degree {self.degree} does not fit in {n} slots")
        return list(self.coeffs) + [0] * (n - len(self.coeffs))


def mul_fold_cyclic(a, b, n: int) -> list:
    """Product of two coefficient lists reduced modulo y^n - 1."""
    out = [0] * n
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[(i + j) % n] += ai * bj
    return out


def pow_fold_cyclic(base, e: int, n: int) -> list:
    """base(y)^e modulo y^n - 1, by binary exponentiation."""
    out = [0] * n
    out[0] = 1
    cur = [0] * n
    for i, c in enumerate(base):
        cur[i % n] += c
    while e:
        if e & 1:
            out = mul_fold_cyclic(out, cur, n)
        cur = mul_fold_cyclic(cur, cur, n)
        e >>= 1
    return out
