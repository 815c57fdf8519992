"""Finite groups as validated Cayley tables, and group-ring elements.

Groups are concrete: a multiplication table, inverse table, and a labeling
of elements by exponent tuples for the generators of each supported kind
(cyclic, products of cyclics, the order-p^3 Heisenberg group, dihedral,
dicyclic).  The table route is the slow, obviously-correct oracle that the
factorized determinant formulas are checked against.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iter_product

import numpy as np

from .cyclotomic import is_prime
from .errors import InvalidParameter, ParseError
from .exactdet import det_bareiss

# The Cayley-matrix route is quadratic in group order in memory and worse
# in time; it exists for cross-checking, not production work.
MAX_ORACLE_ORDER = 300


class GroupSpec:
    """A finite group given by tables, with structural validation.

    ``mul[i][j]`` is the index of g_i * g_j, index 0 is the identity, and
    ``element_exps[i]`` is the exponent tuple of g_i in the kind's
    generator convention.  Construction checks the identity, the Latin
    square property, two-sided inverses, and (for order <= 200) full
    associativity.
    """

    __slots__ = ("kind", "params", "order", "mul", "inv", "element_exps", "_index")

    def __init__(self, kind, params, mul, element_exps, check=True):
        self.kind = kind
        self.params = tuple(params)
        self.order = len(mul)
        self.mul = tuple(tuple(row) for row in mul)
        self.element_exps = tuple(tuple(e) for e in element_exps)
        self._index = {e: i for i, e in enumerate(self.element_exps)}
        if len(self._index) != self.order:
            raise InvalidParameter("element exponent labels are not distinct")
        if check:
            self._validate()
        inv = [None] * self.order
        for i in range(self.order):
            for j in range(self.order):
                if self.mul[i][j] == 0:
                    inv[i] = j
                    break
        if any(v is None for v in inv):
            raise InvalidParameter("some element has no inverse")
        for i in range(self.order):
            if self.mul[inv[i]][i] != 0:
                raise InvalidParameter("inverses are not two-sided")
        self.inv = tuple(inv)

    def _validate(self):
        n = self.order
        t = np.array(self.mul, dtype=np.int32)
        if t.shape != (n, n) or t.min() < 0 or t.max() >= n:
            raise InvalidParameter("multiplication table is malformed")
        if not (np.array_equal(t[0], np.arange(n)) and np.array_equal(t[:, 0], np.arange(n))):
            raise InvalidParameter("index 0 is not a two-sided identity")
        ref = np.arange(n)
        if not (np.array_equal(np.sort(t, axis=1), np.tile(ref, (n, 1)))
                and np.array_equal(np.sort(t, axis=0), np.tile(ref[:, None], (1, n)))):
            raise InvalidParameter("multiplication table is not a Latin square")
        if n <= 200:
            # (ab)c == a(bc) for all triples, fully vectorized.
            if not np.array_equal(t[t], t[:, t]):
                raise InvalidParameter("multiplication table is not associative")

    def index_of(self, exps) -> int:
        exps = self.reduce_exps(exps)
        try:
            return self._index[exps]
        except KeyError:
            raise InvalidParameter(f"no element with exponents {exps}") from None

    def reduce_exps(self, exps):
        """Normalize an exponent tuple into the canonical label range."""
        exps = tuple(int(e) for e in exps)
        kind, params = self.kind, self.params
        if kind in ("cyclic", "product", "elementary"):
            ns = params if kind == "product" else (
                (params[0],) if kind == "cyclic" else (params[0],) * params[1])
            if len(exps) != len(ns):
                raise InvalidParameter(f"need {len(ns)} exponents, got {len(exps)}")
            return tuple(e % n for e, n in zip(exps, ns))
        if kind == "heisenberg":
            p = params[0]
            if len(exps) != 3:
                raise InvalidParameter(f"need 3 exponents, got {len(exps)}")
            return tuple(e % p for e in exps)
        if kind in ("dihedral", "dicyclic"):
            half = self.order // 2
            if len(exps) != 2:
                raise InvalidParameter(f"need 2 exponents, got {len(exps)}")
            return (exps[0] % half, exps[1] % 2)
        raise InvalidParameter(f"unknown group kind {kind!r}")

    def is_abelian(self) -> bool:
        return all(self.mul[i][j] == self.mul[j][i]
                   for i in range(self.order) for j in range(i))

    def describe(self) -> dict:
        d = {"kind": self.kind, "order": self.order}
        if self.kind == "cyclic":
            d["n"] = self.params[0]
        elif self.kind == "elementary":
            d["p"], d["n"] = self.params
        elif self.kind == "product":
            d["orders"] = list(self.params)
        elif self.kind == "heisenberg":
            d["p"] = self.params[0]
        else:
            d["order"] = self.order
        return d


# -- builders ----------------------------------------------------------


@lru_cache(maxsize=None)
def _cached_group(kind, params) -> GroupSpec:
    if kind == "cyclic":
        return _build_product((params[0],), "cyclic", params)
    if kind == "elementary":
        p, n = params
        if not is_prime(p):
            raise InvalidParameter(f"{p} is not prime")
        return _build_product((p,) * n, "elementary", params)
    if kind == "product":
        return _build_product(params, "product", params)
    if kind == "heisenberg":
        return _build_heisenberg(params[0])
    if kind == "dihedral":
        return _build_dihedral(params[0])
    if kind == "dicyclic":
        return _build_dicyclic(params[0])
    raise InvalidParameter(f"unknown group kind {kind!r}")


def _build_product(ns, kind, params) -> GroupSpec:
    if not ns or any(n < 1 for n in ns):
        raise InvalidParameter(f"bad cyclic factors {ns}")
    elems = list(iter_product(*(range(n) for n in ns)))
    index = {e: i for i, e in enumerate(elems)}
    mul = [[index[tuple((a + b) % n for a, b, n in zip(x, y, ns))] for y in elems]
           for x in elems]
    return GroupSpec(kind, params, mul, elems)


def _heisenberg_triple_mul(a, b, p):
    return ((a[0] + b[0]) % p, (a[1] + b[1]) % p, (a[2] + b[2] + a[1] * b[0]) % p)


def _build_heisenberg(p: int) -> GroupSpec:
    if not is_prime(p) or p == 2:
        raise InvalidParameter(f"Heisenberg group needs an odd prime, got {p}")
    elems = list(iter_product(range(p), repeat=3))
    index = {e: i for i, e in enumerate(elems)}
    mul = [[index[_heisenberg_triple_mul(x, y, p)] for y in elems] for x in elems]
    return GroupSpec("heisenberg", (p,), mul, elems, check=(p ** 3 <= 200))


def _build_dihedral(order: int) -> GroupSpec:
    if order < 2 or order % 2:
        raise InvalidParameter(f"dihedral order must be even, got {order}")
    n = order // 2
    elems = [(i, j) for j in range(2) for i in range(n)]
    index = {e: i for i, e in enumerate(elems)}
    mul = []
    for (i, j) in elems:
        row = []
        for (k, l) in elems:
            row.append(index[((i + (-k if j else k)) % n, (j + l) % 2)])
        mul.append(row)
    return GroupSpec("dihedral", (order,), mul, elems)


def _build_dicyclic(order: int) -> GroupSpec:
    if order < 4 or order % 4:
        raise InvalidParameter(f"dicyclic order must be divisible by 4, got {order}")
    n = order // 4
    elems = [(i, j) for j in range(2) for i in range(2 * n)]
    index = {e: i for i, e in enumerate(elems)}
    mul = []
    for (i, j) in elems:
        row = []
        for (k, l) in elems:
            m = i + (-k if j else k)
            jj = j + l
            if jj == 2:
                m += n
                jj = 0
            row.append(index[(m % (2 * n), jj)])
        mul.append(row)
    return GroupSpec("dicyclic", (order,), mul, elems)


def build_group(kind: str, *params) -> GroupSpec:
    """Build (and cache) one of the supported group kinds.

    kinds: cyclic(n), elementary(p, n), product(n1, ..., nk),
    heisenberg(p), dihedral(order), dicyclic(order).
    """
    if kind == "product":
        return _cached_group(kind, tuple(int(p) for p in params[0]))
    return _cached_group(kind, tuple(int(p) for p in params))


def cyclic_group(n):
    return build_group("cyclic", n)


def elementary_group(p, n):
    return build_group("elementary", p, n)


def product_group(ns):
    return build_group("product", ns)


def heisenberg_group(p):
    return build_group("heisenberg", p)


def dihedral_group(order):
    return build_group("dihedral", order)


def dicyclic_group(order):
    return build_group("dicyclic", order)


# -- group-ring elements ------------------------------------------------


class GroupRingElt:
    """Integer coefficient vector over a fixed GroupSpec."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: GroupSpec, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) != group.order:
            raise InvalidParameter(
                f"need {group.order} coefficients, got {len(coeffs)}")
        self.group = group
        self.coeffs = coeffs

    @classmethod
    def from_terms(cls, group: GroupSpec, terms) -> "GroupRingElt":
        coeffs = [0] * group.order
        for exps, c in terms:
            coeffs[group.index_of(exps)] += int(c)
        return cls(group, coeffs)

    def value_sum(self) -> int:
        """Evaluation at the trivial character (all generators -> 1)."""
        return sum(self.coeffs)

    def convolve(self, other: "GroupRingElt") -> "GroupRingElt":
        if other.group is not self.group:
            raise InvalidParameter("operands live over different groups")
        mul = self.group.mul
        out = [0] * self.group.order
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            row = mul[i]
            for j, b in enumerate(other.coeffs):
                if b:
                    out[row[j]] += a * b
        return GroupRingElt(self.group, out)

    def translate(self, g: int) -> "GroupRingElt":
        """Left multiplication by the group element with index g."""
        mul = self.group.mul
        out = [0] * self.group.order
        for j, c in enumerate(self.coeffs):
            if c:
                out[mul[g][j]] += c
        return GroupRingElt(self.group, out)

    def nonzero_terms(self):
        return [(self.group.element_exps[i], c)
                for i, c in enumerate(self.coeffs) if c]


def cayley_matrix(f: GroupRingElt):
    """The order x order matrix with entry (i, j) = coeff at g_i * g_j^(-1)."""
    g = f.group
    c = f.coeffs
    return [[c[g.mul[i][g.inv[j]]] for j in range(g.order)] for i in range(g.order)]


def group_determinant(f: GroupRingElt, max_order: int = MAX_ORACLE_ORDER) -> int:
    """Exact determinant of the Cayley matrix (the definition, un-factored)."""
    if f.group.order > max_order:
        raise InvalidParameter(
            f"oracle path is capped at order {max_order}; "
            f"got {f.group.order}")
    return det_bareiss(cayley_matrix(f))


# -- Heisenberg polynomials ---------------------------------------------


class HeisenbergPoly:
    """Coefficients a[i][j][k] of sum a_ijk x^i y^j z^k over the order-p^3
    Heisenberg group, with x the off-center generator, z the central one,
    and monomials in the normal-form order x then y then z."""

    __slots__ = ("p", "a")

    def __init__(self, p: int, a=None):
        if not is_prime(p) or p == 2:
            raise InvalidParameter(f"need an odd prime, got {p}")
        self.p = p
        if a is None:
            self.a = [[[0] * p for _ in range(p)] for _ in range(p)]
        else:
            self.a = [[[int(a[i][j][k]) for k in range(p)] for j in range(p)]
                      for i in range(p)]

    @classmethod
    def from_terms(cls, p: int, terms) -> "HeisenbergPoly":
        out = cls(p)
        for (i, j, k), c in terms:
            out.a[i % p][j % p][k % p] += int(c)
        return out

    def coef(self, i: int, j: int, k: int) -> int:
        return self.a[i % self.p][j % self.p][k % self.p]

    def add_term(self, i: int, j: int, k: int, c: int) -> None:
        self.a[i % self.p][j % self.p][k % self.p] += c

    def x_slice(self, i: int):
        """Coefficient grid [y-exp][z-exp] of the x^i part."""
        return self.a[i]

    def collapse_z(self):
        """Coefficients of F(x, y, 1) as a grid [x-exp][y-exp]."""
        p = self.p
        return [[sum(self.a[i][j]) for j in range(p)] for i in range(p)]

    def value_at_one(self) -> int:
        return sum(sum(sum(r) for r in plane) for plane in self.a)

    def flat(self) -> list:
        return [self.a[i][j][k] for i in range(self.p)
                for j in range(self.p) for k in range(self.p)]

    def nonzero_terms(self):
        return [((i, j, k), self.a[i][j][k])
                for i in range(self.p) for j in range(self.p)
                for k in range(self.p) if self.a[i][j][k]]

    def __eq__(self, other):
        return (isinstance(other, HeisenbergPoly)
                and self.p == other.p and self.a == other.a)


def to_group_ring(f: HeisenbergPoly) -> GroupRingElt:
    g = heisenberg_group(f.p)
    return GroupRingElt.from_terms(g, f.nonzero_terms())


def heisenberg_normal_form(terms, p: int) -> HeisenbergPoly:
    """Fold words in the generators into normal-form coefficients.

    Each term is (word, coefficient) where a word is a string like
    "yx", "x^2z", "y^-1x" (letters x, y, z with optional integer
    exponents, whitespace and '*' ignored).  Words multiply left to
    right under yx = xyz with z central, so e.g. "yx" lands on the
    monomial x y z.
    """
    out = HeisenbergPoly(p)
    for word, c in terms:
        triple = (0, 0, 0)
        for gen, e in _parse_word(word):
            if gen == "x":
                step = (e % p, 0, 0)
            elif gen == "y":
                step = (0, e % p, 0)
            else:
                step = (0, 0, e % p)
            triple = _heisenberg_triple_mul(triple, step, p)
        out.add_term(triple[0], triple[1], triple[2], int(c))
    return out


def _parse_word(word: str):
    pairs = []
    i = 0
    s = word.replace(" ", "").replace("*", "")
    while i < len(s):
        gen = s[i]
        if gen not in "xyz":
            raise ParseError(f"unexpected character {gen!r} in word {word!r}")
        i += 1
        e = 1
        if i < len(s) and s[i] == "^":
            i += 1
            j = i
            if j < len(s) and s[j] == "-":
                j += 1
            while j < len(s) and s[j].isdigit():
                j += 1
            if j == i or s[i:j] == "-":
                raise ParseError(f"missing exponent after '^' in word {word!r}")
            e = int(s[i:j])
            i = j
        pairs.append((gen, e))
    return pairs


# -- JSON polynomial format ----------------------------------------------


@dataclass
class PolyInput:
    """Parsed form of the on-disk polynomial JSON."""

    kind: str
    params: tuple
    terms: list  # [(exps tuple, int coef), ...]

    def group(self) -> GroupSpec:
        if self.kind == "product":
            return build_group("product", self.params)
        return build_group(self.kind, *self.params)

    def to_group_ring(self) -> GroupRingElt:
        return GroupRingElt.from_terms(self.group(), self.terms)

    def to_heisenberg(self) -> HeisenbergPoly:
        if self.kind != "heisenberg":
            raise InvalidParameter(f"polynomial is over {self.kind}, not heisenberg")
        return HeisenbergPoly.from_terms(self.params[0], self.terms)

    def split_two_part(self):
        """For dihedral/dicyclic input, the pair (f, g) with F = f + y g."""
        if self.kind not in ("dihedral", "dicyclic"):
            raise InvalidParameter(f"no f/g split for kind {self.kind!r}")
        order = self.params[0]
        half = order // 2
        f = [0] * half
        g = [0] * half
        for (i, j), c in ((tuple(e), c) for e, c in self.terms):
            if j % 2:
                g[i % half] += c
            else:
                f[i % half] += c
        return f, g


_KIND_PARAM_KEYS = {
    "cyclic": ("n",),
    "elementary": ("p", "n"),
    "heisenberg": ("p",),
    "dihedral": ("order",),
    "dicyclic": ("order",),
}


def poly_from_json(text: str) -> PolyInput:
    """Parse the polynomial JSON format.

    {"group": {"kind": "heisenberg", "p": 3},
     "terms": [{"exps": [1, 2, 0], "coef": "-12"}, ...]}

    Coefficients are decimal strings (or JSON integers); exps length must
    match the kind (3 for heisenberg, 2 for dihedral/dicyclic, one per
    factor otherwise).  Malformed input raises ParseError naming the
    offending key or token.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg} at position {e.pos}") from None
    if not isinstance(obj, dict):
        raise ParseError("top level must be a JSON object")
    group = obj.get("group")
    if not isinstance(group, dict) or "kind" not in group:
        raise ParseError("missing or malformed 'group' object")
    kind = group["kind"]
    if kind == "product":
        orders = group.get("orders")
        if (not isinstance(orders, list) or not orders
                or not all(isinstance(n, int) and n >= 1 for n in orders)):
            raise ParseError("product group needs a nonempty 'orders' list")
        params = tuple(orders)
        nexps = len(orders)
    elif kind in _KIND_PARAM_KEYS:
        params = []
        for key in _KIND_PARAM_KEYS[kind]:
            v = group.get(key)
            if not isinstance(v, int) or v < 1:
                raise ParseError(f"group key {key!r} must be a positive integer")
            params.append(v)
        params = tuple(params)
        nexps = {"cyclic": 1, "elementary": None, "heisenberg": 3,
                 "dihedral": 2, "dicyclic": 2}[kind]
        if kind == "elementary":
            nexps = params[1]
    else:
        raise ParseError(f"unknown group kind {kind!r}")
    terms_in = obj.get("terms")
    if not isinstance(terms_in, list):
        raise ParseError("missing or malformed 'terms' list")
    terms = []
    for t in terms_in:
        if not isinstance(t, dict) or "exps" not in t or "coef" not in t:
            raise ParseError(f"malformed term {t!r}")
        exps = t["exps"]
        if (not isinstance(exps, list) or len(exps) != nexps
                or not all(isinstance(e, int) for e in exps)):
            raise ParseError(f"term exps {exps!r} must be {nexps} integers")
        coef = t["coef"]
        if isinstance(coef, str):
            try:
                coef = int(coef, 10)
            except ValueError:
                raise ParseError(f"bad coefficient token {t['coef']!r}") from None
        elif not isinstance(coef, int):
            raise ParseError(f"bad coefficient token {coef!r}")
        terms.append((tuple(exps), coef))
    # validate exponent ranges via the group itself
    pin = PolyInput(kind, params, terms)
    grp = pin.group()
    pin.terms = [(grp.reduce_exps(e), c) for e, c in terms]
    return pin


def poly_to_json(kind: str, params, terms) -> str:
    group: dict = {"kind": kind}
    if kind == "product":
        group["orders"] = list(params)
    else:
        for key, v in zip(_KIND_PARAM_KEYS[kind], params):
            group[key] = v
    body = {
        "group": group,
        "terms": [{"exps": list(e), "coef": str(c)} for e, c in terms],
    }
    return json.dumps(body, indent=2)
