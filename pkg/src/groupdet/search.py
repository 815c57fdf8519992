"""Bounded searches over integer group-ring coefficients.

Enumerate (exhaustively or by seeded sampling) the determinant values a
group attains at a given coefficient height, track the minimum
nontrivial absolute value and a witness, and estimate the growth
constant log(min)/|G|.  Exhaustive work is split into shards by the
first coefficient; shard results merge by min/union, so the outcome is
independent of evaluation order.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass, field
from itertools import product as iter_product
from typing import Optional

import numpy as np

from .errors import BudgetExceeded, InvalidParameter
from .groups import GroupRingElt, build_group
from .measures import (
    abelian_measure,
    circulant_det,
    dicyclic_measure,
    dihedral_measure,
    heisenberg_measure,
    measure_h3,
)
from .groups import HeisenbergPoly
from ._roots import active_backend
from .verify import achieve_construction, is_power_residue

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

DEFAULT_BUDGET = 100_000_000
MAX_DISTINCT_VALUES = 1_000_000


def evaluation_budget() -> int:
    """Evaluation cap for exhaustive searches (env GDET_BUDGET overrides)."""
    raw = os.environ.get("GDET_BUDGET", "")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise InvalidParameter(f"GDET_BUDGET={raw!r} is not an integer") from None
    return DEFAULT_BUDGET


@dataclass
class SearchConfig:
    """What to enumerate.

    kind/params name the group as in build_group; height bounds |coeff|;
    mode is "exhaustive" or "random" (trials + seed); value_filter keeps
    "all" values, only those "coprime" to the group's base prime, or only
    "multiples" of it.
    """

    kind: str
    params: tuple
    height: int
    mode: str = "exhaustive"
    trials: int = 10000
    seed: int = 0
    value_filter: str = "all"
    budget: Optional[int] = None
    max_values: int = MAX_DISTINCT_VALUES

    def group_order(self) -> int:
        if self.kind == "heisenberg":
            return self.params[0] ** 3
        if self.kind == "cyclic":
            return self.params[0]
        if self.kind == "elementary":
            return self.params[0] ** self.params[1]
        if self.kind == "product":
            out = 1
            for n in self.params:
                out *= n
            return out
        if self.kind in ("dihedral", "dicyclic"):
            return self.params[0]
        raise InvalidParameter(f"unknown group kind {self.kind!r}")

    def base_prime(self) -> int:
        """Modulus for the coprime/multiples filters."""
        if self.kind in ("dihedral", "dicyclic"):
            return 2
        n = (self.params[0] if self.kind != "product" else self.params[0])
        f = 2
        while f * f <= n:
            if n % f == 0:
                return f
            f += 1
        return n


@dataclass
class SearchResult:
    config: SearchConfig
    evaluations: int
    min_nontrivial: Optional[int]
    witness: Optional[list]
    attained_values: list = field(repr=False)
    values_truncated: int = 0

    def lambda_estimate(self) -> Optional[float]:
        if self.min_nontrivial is None:
            return None
        return math.log(abs(self.min_nontrivial)) / self.config.group_order()

    def to_report(self, value_cap: int = 200) -> dict:
        vals = self.attained_values
        lam = self.lambda_estimate()
        return {
            "group": {"kind": self.config.kind, "params": list(self.config.params)},
            "height": self.config.height,
            "mode": self.config.mode,
            "trials": self.config.trials if self.config.mode == "random" else None,
            "seed": self.config.seed if self.config.mode == "random" else None,
            "value_filter": self.config.value_filter,
            "evaluations": self.evaluations,
            "min_nontrivial": None if self.min_nontrivial is None else str(self.min_nontrivial),
            "witness": None if self.witness is None else [
                {"exps": list(e), "coef": str(c)} for e, c in self.witness],
            "num_distinct_values": len(vals),
            "values_truncated": self.values_truncated,
            "attained_values": [str(v) for v in vals[:value_cap]],
            "lambda_estimate": None if lam is None else f"{lam:.12f}",
        }


class _Collector:
    """Merge-friendly accumulator for one shard of a search."""

    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        self.p = cfg.base_prime()
        self.values = set()
        self.truncated = 0
        self.evaluations = 0
        self.best = None  # (abs value, value, coeff tuple)

    def _keep(self, m: int) -> bool:
        vf = self.cfg.value_filter
        if vf == "all":
            return True
        if vf == "coprime":
            return m % self.p != 0
        if vf == "multiples":
            return m % self.p == 0
        raise InvalidParameter(f"unknown value filter {vf!r}")

    def add(self, m: int, coeffs) -> None:
        self.evaluations += 1
        if not self._keep(m):
            return
        if m not in self.values:
            if len(self.values) < self.cfg.max_values:
                self.values.add(m)
            else:
                self.truncated += 1
        if abs(m) >= 2 and (self.best is None or abs(m) < self.best[0]):
            self.best = (abs(m), m, tuple(coeffs))

    def merge(self, other: "_Collector") -> None:
        self.evaluations += other.evaluations
        self.truncated += other.truncated
        for v in other.values:
            if v not in self.values:
                if len(self.values) < self.cfg.max_values:
                    self.values.add(v)
                else:
                    self.truncated += 1
        if other.best is not None and (self.best is None or other.best < self.best):
            self.best = other.best


def _make_evaluator(cfg: SearchConfig):
    kind, params = cfg.kind, cfg.params
    if kind == "heisenberg":
        p = params[0]
        if p == 3:
            return lambda coeffs: measure_h3(coeffs)

        def ev(coeffs):
            f = HeisenbergPoly(p)
            idx = 0
            for i in range(p):
                for j in range(p):
                    for k in range(p):
                        f.a[i][j][k] = coeffs[idx]
                        idx += 1
            return heisenberg_measure(f).m

        return ev
    if kind == "cyclic":
        n = params[0]
        return lambda coeffs: circulant_det(list(coeffs), n)
    if kind in ("elementary", "product"):
        group = (build_group("product", params) if kind == "product"
                 else build_group(kind, *params))
        return lambda coeffs: abelian_measure(GroupRingElt(group, list(coeffs)))
    if kind == "dihedral":
        n = params[0] // 2
        return lambda coeffs: dihedral_measure(coeffs[:n], coeffs[n:], n)
    if kind == "dicyclic":
        n = params[0] // 4
        return lambda coeffs: dicyclic_measure(coeffs[:2 * n], coeffs[2 * n:], n)
    raise InvalidParameter(f"unknown group kind {kind!r}")


def _witness_terms(cfg: SearchConfig, coeffs) -> list:
    group = (build_group("product", cfg.params) if cfg.kind == "product"
             else build_group(cfg.kind, *cfg.params))
    return [(group.element_exps[i], c) for i, c in enumerate(coeffs) if c]


def run_shard(cfg: SearchConfig, first_coeff: int) -> _Collector:
    """Exhaustively evaluate the shard with the leading coefficient fixed."""
    order = cfg.group_order()
    ev = _make_evaluator(cfg)
    col = _Collector(cfg)
    h = cfg.height
    span = range(-h, h + 1)
    for rest in iter_product(span, repeat=order - 1):
        coeffs = (first_coeff,) + rest
        col.add(ev(coeffs), coeffs)
    return col


def enumerate_values(cfg: SearchConfig) -> SearchResult:
    """Run the configured search and merge shard results."""
    order = cfg.group_order()
    h = cfg.height
    if h < 0:
        raise InvalidParameter(f"height must be >= 0, got {h}")
    total = _Collector(cfg)
    if cfg.mode == "exhaustive":
        budget = cfg.budget if cfg.budget is not None else evaluation_budget()
        count = (2 * h + 1) ** order
        if count > budget:
            raise BudgetExceeded(
                f"(2*{h}+1)^{order} = {count} matrix evaluations exceed the "
                f"budget {budget}; raise GDET_BUDGET or shrink the search")
        if cfg.kind == "dihedral" and cfg.params[0] == 8 and cfg.value_filter == "all":
            return _enumerate_dihedral8(cfg)
        for c0 in range(-h, h + 1):
            total.merge(run_shard(cfg, c0))
    elif cfg.mode == "random":
        ev = _make_evaluator(cfg)
        for t in range(cfg.trials):
            rng = random.Random(f"{cfg.seed}:{t}")
            coeffs = tuple(rng.randint(-h, h) for _ in range(order))
            total.add(ev(coeffs), coeffs)
    else:
        raise InvalidParameter(f"unknown search mode {cfg.mode!r}")
    return _result_from_collector(cfg, total)


def _result_from_collector(cfg: SearchConfig, col: _Collector) -> SearchResult:
    witness = None
    minval = None
    if col.best is not None:
        minval = col.best[1]
        witness = _witness_terms(cfg, col.best[2])
    return SearchResult(config=cfg, evaluations=col.evaluations,
                        min_nontrivial=minval, witness=witness,
                        attained_values=sorted(col.values),
                        values_truncated=col.truncated)


# -- vectorized exhaustive kernel for the order-8 dihedral group -----------
#
# At order 8 the determinant factors over the fourth roots of unity into
# integer quantities: with s1 = f(1), s2 = f(-1), |f(i)|^2 = re^2 + im^2,
# the value is (s1^2 - t1^2)(s2^2 - t2^2)(|f(i)|^2 - |g(i)|^2)^2 where the
# t's are the same functionals of g.  That turns the (2H+1)^8 enumeration
# into one outer-product pass; both backends below fill the same table.


def _d8_functionals(height: int):
    span = np.arange(-height, height + 1, dtype=np.int64)
    c0, c1, c2, c3 = np.meshgrid(span, span, span, span, indexing="ij")
    c0, c1, c2, c3 = (a.ravel() for a in (c0, c1, c2, c3))
    s1 = (c0 + c1 + c2 + c3) ** 2
    s2 = (c0 - c1 + c2 - c3) ** 2
    q = (c0 - c2) ** 2 + (c1 - c3) ** 2
    vecs = np.stack([c0, c1, c2, c3], axis=1)
    return s1, s2, q, vecs


def _d8_table_numpy(s1, s2, q):
    a = s1[:, None] - s1[None, :]
    b = s2[:, None] - s2[None, :]
    c = q[:, None] - q[None, :]
    return a * b * c * c


if _HAVE_NUMBA:

    @njit(cache=True)
    def _d8_table_numba(s1, s2, q):  # pragma: no cover - exercised via wrapper
        n = s1.shape[0]
        out = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                c = q[i] - q[j]
                out[i, j] = (s1[i] - s1[j]) * (s2[i] - s2[j]) * c * c
        return out

else:  # pragma: no cover
    _d8_table_numba = None


def _d8_value_table(height: int):
    s1, s2, q, vecs = _d8_functionals(height)
    if active_backend() == "numba" and _d8_table_numba is not None:
        table = _d8_table_numba(s1, s2, q)
    else:
        table = _d8_table_numpy(s1, s2, q)
    return table, vecs


def _enumerate_dihedral8(cfg: SearchConfig) -> SearchResult:
    # int64 is ample here: |value| <= 16384 * H^8, so heights up to ~35
    # stay exact; the evaluation budget bites long before that.
    if cfg.height > 35:
        raise BudgetExceeded("vectorized order-8 kernel is int64-exact only up to height 35")
    table, vecs = _d8_value_table(cfg.height)
    col = _Collector(cfg)
    col.evaluations = table.size
    uniq = np.unique(table)
    col.values = set(int(v) for v in uniq[:cfg.max_values])
    col.truncated = max(0, len(uniq) - cfg.max_values)
    absval = np.abs(table)
    masked = np.where(absval >= 2, absval, np.iinfo(np.int64).max)
    flat = int(masked.argmin())
    if masked.flat[flat] != np.iinfo(np.int64).max:
        i, j = divmod(flat, table.shape[1])
        coeffs = tuple(int(v) for v in vecs[i]) + tuple(int(v) for v in vecs[j])
        col.best = (int(absval.flat[flat]), int(table.flat[flat]), coeffs)
    return _result_from_collector(cfg, col)


# -- growth constants --------------------------------------------------------


def min_coprime_residue(p: int, n: int = 3) -> int:
    """Smallest x >= 2 with x^(p-1) == 1 mod p^n: the smallest value
    coprime to p that the order-p^3 Heisenberg group can attain (n = 3),
    by the classification of coprime values."""
    mod = p ** n
    for x in range(2, mod + 1):
        if pow(x, p - 1, mod) == 1:
            return x
    raise InvalidParameter(f"no unit below p^{n} found (impossible for p >= 2)")


def lambda_heisenberg(p: int) -> dict:
    """Growth constant of the order-p^3 Heisenberg family at prime p:
    lambda = log(min attainable |value| >= 2) / p^3.

    The minimum over values coprime to p comes from the residue scan;
    the explicit construction then exhibits a polynomial attaining it
    (searched over small bases a), which certifies the scan result is
    actually attained.  Multiples of p are never competitive: the
    smallest admissible one is p^(p^2+3).
    """
    min_x = min_coprime_residue(p, 3)
    pc = p ** 3
    witness = None
    for target in (min_x, -min_x):
        for a in range(1, pc + 1):
            if a % p == 0:
                continue
            r = target - a ** (p * p)
            if r % pc:
                continue
            poly, value = achieve_construction(a, r // pc, p)
            if abs(value) != min_x:
                continue
            witness = {"a": a, "m": r // pc, "value": value,
                       "terms": poly.nonzero_terms()}
            break
        if witness:
            break
    assert is_power_residue(min_x, p, 3)
    return {
        "p": p,
        "min_nontrivial": min_x,
        "lambda": math.log(min_x) / pc,
        "witness": witness,
        "attained": witness is not None and abs(witness["value"]) == min_x,
    }
