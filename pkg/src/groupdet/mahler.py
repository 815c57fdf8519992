"""Numeric Mahler-type measures for the infinite-group limits.

The logarithmic measure of a one-variable Laurent polynomial comes from
its roots (Jensen's formula), not quadrature; the infinite dihedral and
dihedral-with-center measures are finite combinations of such measures;
the Heisenberg-limit measure integrates a maximum of two slice measures
over one circle numerically.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from ._roots import polynomial_roots
from .errors import InvalidParameter, ZeroPolynomial, ZeroSlice


class LaurentPoly:
    """Sparse Laurent polynomial in one variable.

    Construct from a dict {exponent: coefficient}, an iterable of
    (exponent, coefficient) pairs, or a plain coefficient sequence
    (exponents 0, 1, ...).  Zero coefficients are dropped.
    """

    __slots__ = ("terms",)

    def __init__(self, data=()):
        if isinstance(data, LaurentPoly):
            self.terms = dict(data.terms)
            return
        if isinstance(data, dict):
            items = data.items()
        elif data and not isinstance(data, (list, tuple)):
            items = list(data)
        elif data and not isinstance(data[0], tuple):
            items = list(enumerate(data))
        else:
            items = list(data)
        terms = {}
        for e, c in items:
            if c:
                terms[int(e)] = terms.get(int(e), 0) + c
                if not terms[int(e)]:
                    del terms[int(e)]
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, float, complex)):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        return f"LaurentPoly({dict(sorted(self.terms.items()))})"

    def __add__(self, other):
        if isinstance(other, (int, float, complex)):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
            if not out[e]:
                del out[e]
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, float, complex)):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return LaurentPoly({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def reciprocal(self) -> "LaurentPoly":
        """The substitution x -> 1/x (coefficient reversal)."""
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def dense(self):
        """(lowest exponent, ascending coefficient list)."""
        if not self.terms:
            return 0, []
        lo = min(self.terms)
        hi = max(self.terms)
        out = [0] * (hi - lo + 1)
        for e, c in self.terms.items():
            out[e - lo] = c
        return lo, out


def _as_laurent(f) -> LaurentPoly:
    return f if isinstance(f, LaurentPoly) else LaurentPoly(f)


def mahler_measure(f) -> float:
    """Logarithmic Mahler measure of a one-variable Laurent polynomial:
    log |leading coefficient| plus log of every root modulus above 1.
    Monomial shifts do not matter.  Raises ZeroPolynomial on 0."""
    f = _as_laurent(f)
    if f.is_zero():
        raise ZeroPolynomial("measure of the zero polynomial")
    _, coeffs = f.dense()
    return _measure_from_coeffs(coeffs)


def _measure_from_coeffs(coeffs) -> float:
    c = list(coeffs)
    while c and not c[-1]:
        c.pop()
    lead = c[-1]
    m = math.log(abs(lead))
    if len(c) > 1:
        for r in polynomial_roots(c):
            a = abs(r)
            if a > 1.0:
                m += math.log(a)
    return m


def d_infinity_measure(f, g) -> float:
    """Measure of f(x) + y g(x) over the infinite dihedral group:
    half the Mahler measure of f f~ - g g~ (~ is x -> 1/x).  The
    combination vanishing identically (e.g. g = +-f~) is an error."""
    f = _as_laurent(f)
    g = _as_laurent(g)
    h = f * f.reciprocal() - g * g.reciprocal()
    if h.is_zero():
        raise ZeroPolynomial("f f~ - g g~ vanishes identically")
    return 0.5 * mahler_measure(h)


def d_infinity_h_measure(f, g) -> float:
    """Measure of f(x) + y g(x) over the infinite dihedral group with an
    adjoined central involution: the average of the measures of
    f f~ - g g~ and f f~ + g g~, each weighted 1/4."""
    f = _as_laurent(f)
    g = _as_laurent(g)
    a = f * f.reciprocal() - g * g.reciprocal()
    b = f * f.reciprocal() + g * g.reciprocal()
    if a.is_zero() or b.is_zero():
        raise ZeroPolynomial("a combination f f~ -+ g g~ vanishes identically")
    return 0.25 * (mahler_measure(a) + mahler_measure(b))


def d_infinity_h_fourcomponent(f0, f1, f2, f3) -> float:
    """Four-component form of the central-extension measure, for
    F = f0 + y f1 + w f2 + y w f3 with w the central involution.
    Reduces to d_infinity_h_measure(f, g) at (f, g, 0, 0)."""
    f0, f1, f2, f3 = (_as_laurent(t) for t in (f0, f1, f2, f3))
    sp = f0 + f2
    sm = f0 - f2
    tp = f1 + f3
    tm = f1 - f3
    a = sp * sp.reciprocal() - tp * tp.reciprocal()
    b = sm * sm.reciprocal() + tm * tm.reciprocal()
    if a.is_zero() or b.is_zero():
        raise ZeroPolynomial("a component combination vanishes identically")
    return 0.25 * (mahler_measure(a) + mahler_measure(b))


def heisenberg_infinite_measure(f0, fk, points: int = 512) -> float:
    """Measure of F = f0(y, z) + x^k fk(y, z) in the Heisenberg limit.

    Only this binomial-in-x shape has the closed slice form: for each z
    on the unit circle the integrand is the larger of the two slice
    Mahler measures in y, and the result is the mean over ``points``
    equally spaced z.  Inputs are {(y_exp, z_exp): coefficient} dicts
    (or LaurentPoly for pure-y polynomials).  A slice vanishing
    identically raises ZeroSlice; an identically-zero input raises
    ZeroPolynomial.
    """
    f0 = _as_bivariate(f0)
    fk = _as_bivariate(fk)
    if not f0 or not fk:
        raise ZeroPolynomial("binomial parts must not vanish identically")
    if points < 1:
        raise InvalidParameter(f"need points >= 1, got {points}")
    acc = 0.0
    for t in range(points):
        zv = cmath.exp(2j * cmath.pi * t / points)
        m0 = _slice_measure(f0, zv, t, points)
        mk = _slice_measure(fk, zv, t, points)
        acc += max(m0, mk)
    return acc / points


def _as_bivariate(f) -> dict:
    if isinstance(f, LaurentPoly):
        return {(e, 0): c for e, c in f.terms.items()}
    if isinstance(f, dict):
        out = {}
        for key, c in f.items():
            if isinstance(key, int):
                key = (key, 0)
            if len(key) != 2:
                raise InvalidParameter(f"bivariate exponent {key!r} must be a pair")
            if c:
                out[(int(key[0]), int(key[1]))] = out.get((int(key[0]), int(key[1])), 0) + c
        return out
    raise InvalidParameter(f"cannot read {type(f).__name__} as a bivariate polynomial")


def _slice_measure(f, zv: complex, t: int, points: int) -> float:
    ylo = min(e for e, _ in f)
    yhi = max(e for e, _ in f)
    coeffs = np.zeros(yhi - ylo + 1, dtype=np.complex128)
    for (ey, ez), c in f.items():
        coeffs[ey - ylo] += c * zv ** ez
    scale = np.abs(coeffs).max()
    if scale < 1e-12:
        raise ZeroSlice(
            f"slice at angle {t}/{points} vanishes identically")
    # strip numerically-dead leading/trailing coefficients so the root
    # finder sees the true slice degree
    keep = np.abs(coeffs) > 1e-12 * scale
    idx = np.nonzero(keep)[0]
    coeffs = coeffs[idx[0]:idx[-1] + 1]
    return _measure_from_coeffs(list(coeffs))
