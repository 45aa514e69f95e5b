"""Family sweeps: enumerate triples over abelian models, histogram the pole
orders, cross-check structural invariants, and collect first witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .errors import PreconditionError
from .models import AbelianModel, CyclicData


def multiplicative_order(u: int, n: int) -> int:
    if gcd(u, n) != 1:
        raise PreconditionError(f"{u} is not a unit mod {n}")
    k, acc = 1, u % n
    while acc != 1:
        acc = (acc * u) % n
        k += 1
    return k


class _FastTables:
    """Dense index tables for one abelian model; all sweep inner loops run on
    small-int indices instead of coordinate tuples."""

    def __init__(self, model: AbelianModel):
        self.model = model
        self.p = model.p
        n = model.order
        self.n = n
        decode = model.decode
        encode = model.encode
        elems = [decode(i) for i in range(n)]
        self.add = [
            [encode(model.add(a, b)) for b in elems] for a in elems
        ]
        self.neg = [encode(model.neg(a)) for a in elems]
        self.shift = [
            [encode(model.apply_sigma(a, t)) for a in elems] for t in range(model.p)
        ]
        self.invariant = [self.shift[1][i] == i for i in range(n)]
        self.noninv = [i for i in range(n) if not self.invariant[i]]


@dataclass(frozen=True)
class SweepFamily:
    models: tuple[AbelianModel, ...]

    def __post_init__(self):
        object.__setattr__(self, "models", tuple(self.models))


@dataclass(frozen=True)
class SweepBudget:
    """Enumeration strategy: 'exhaustive' walks every triple (optionally
    truncated by `limit`), 'sample' draws `samples` random triples."""

    strategy: str = "exhaustive"
    limit: int | None = None
    samples: int = 10000
    seed: int = 0

    def __post_init__(self):
        if self.strategy not in ("exhaustive", "sample"):
            raise PreconditionError(f"unknown sweep strategy {self.strategy!r}")
        if self.limit is not None and self.limit < 0:
            raise PreconditionError("limit must be >= 0")
        if self.samples < 0:
            raise PreconditionError("samples must be >= 0")


@dataclass
class SweepReport:
    strategy: str
    complete: bool
    triples_examined: int
    max_ell: int
    histogram: dict
    witnesses: list
    violations: list
    rigidity_breaches: list
    rng: dict | None = None
    models: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "complete": self.complete,
            "triples_examined": self.triples_examined,
            "max_ell": self.max_ell,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "witnesses": self.witnesses,
            "violations": self.violations,
            "rigidity_breaches": self.rigidity_breaches,
            "rng": self.rng,
            "models": self.models,
        }


def _witness(model_index: int, tables: _FastTables, i1: int, i2: int, ic: int, ell: int) -> dict:
    decode = tables.model.decode
    return {
        "model": model_index,
        "theta1": list(decode(i1)),
        "theta2": list(decode(i2)),
        "chi": list(decode(ic)),
        "ell": ell,
    }


def _pair_buckets(tables: _FastTables, i1: int, i2: int) -> dict:
    """Group the p x p cells of the pair by the unique chi turning each cell
    on: cell (j, k) is on exactly for chi = -(shift^j(t2) + shift^k(t1))."""
    p = tables.p
    add, neg, shift = tables.add, tables.neg, tables.shift
    row2 = [shift[j][i2] for j in range(p)]
    col1 = [shift[k][i1] for k in range(p)]
    buckets: dict[int, list] = {}
    for j in range(p):
        arow = add[row2[j]]
        for k in range(p):
            buckets.setdefault(neg[arow[col1[k]]], []).append((j, k))
    return buckets


def _check_cells(cells: list, p: int) -> bool:
    if len(cells) > p:
        return False
    rows = {j for j, _ in cells}
    cols = {k for _, k in cells}
    return len(rows) == len(cells) and len(cols) == len(cells)


def sweep(family: SweepFamily, budget: SweepBudget) -> SweepReport:
    """Histogram pole orders over all (theta1, theta2, chi) triples with both
    inducing labels non-invariant, across every model in the family.

    Exhaustive sweeps also verify, for every bucket of triples, that the on
    cells form a partial permutation of size at most p, and at p = 2 that a
    double pole only occurs with an invariant chi; breaches are reported, not
    raised.  Witnesses record the first triple attaining each distinct pole
    order, in (model, theta1, theta2, chi) index order.
    """
    if budget.strategy == "sample":
        return _sweep_sampled(family, budget)

    histogram: dict[int, int] = {}
    witnesses: dict[int, dict] = {}
    violations: list = []
    rigidity: list = []
    examined = 0
    complete = True
    limit = budget.limit

    done = False
    for mi, model in enumerate(family.models):
        if done:
            break
        tables = _FastTables(model)
        p, n = tables.p, tables.n
        noninv = tables.noninv
        for i1 in noninv:
            if done:
                break
            for i2 in noninv:
                if limit is not None and examined + n > limit:
                    complete = False
                    done = True
                    break
                buckets = _pair_buckets(tables, i1, i2)
                examined += n
                for ic, cells in buckets.items():
                    ell = len(cells)
                    if not _check_cells(cells, p):
                        violations.append(_witness(mi, tables, i1, i2, ic, ell))
                        continue
                    histogram[ell] = histogram.get(ell, 0) + 1
                    if p == 2 and ell >= 2 and not tables.invariant[ic]:
                        rigidity.append(_witness(mi, tables, i1, i2, ic, ell))
                    if ell not in witnesses or (
                        witnesses[ell]["model"] == mi
                        and witnesses[ell]["_key"] > (i1, i2, ic)
                    ):
                        w = _witness(mi, tables, i1, i2, ic, ell)
                        w["_key"] = (i1, i2, ic)
                        witnesses[ell] = w
                if len(buckets) < n:
                    histogram[0] = histogram.get(0, 0) + (n - len(buckets))
                if 0 not in witnesses and len(buckets) < n:
                    seen = set(buckets)
                    ic0 = next(i for i in range(n) if i not in seen)
                    w = _witness(mi, tables, i1, i2, ic0, 0)
                    w["_key"] = (i1, i2, ic0)
                    witnesses[0] = w

    for w in witnesses.values():
        w.pop("_key", None)
    max_ell = max((ell for ell, c in histogram.items() if c), default=0)
    return SweepReport(
        strategy="exhaustive",
        complete=complete,
        triples_examined=examined,
        max_ell=max_ell,
        histogram=histogram,
        witnesses=[witnesses[e] for e in sorted(witnesses)],
        violations=violations,
        rigidity_breaches=rigidity,
        models=[m.describe() for m in family.models],
    )


def _cells_for_chi(tables: _FastTables, i1: int, i2: int, ic: int) -> list:
    p = tables.p
    add, neg, shift = tables.add, tables.neg, tables.shift
    out = []
    for j in range(p):
        arow = add[shift[j][i2]]
        for k in range(p):
            if neg[arow[shift[k][i1]]] == ic:
                out.append((j, k))
    return out


def _sweep_sampled(family: SweepFamily, budget: SweepBudget) -> SweepReport:
    if not family.models:
        raise PreconditionError("cannot sample from an empty family")
    rng = np.random.default_rng(budget.seed)
    tables = [_FastTables(m) for m in family.models]
    usable = [t for t in tables if t.noninv]
    if not usable:
        raise PreconditionError("no model in the family has non-invariant labels")

    histogram: dict[int, int] = {}
    witnesses: dict[int, dict] = {}
    violations: list = []
    rigidity: list = []
    for _ in range(budget.samples):
        t = usable[int(rng.integers(len(usable)))]
        mi = tables.index(t)
        i1 = t.noninv[int(rng.integers(len(t.noninv)))]
        i2 = t.noninv[int(rng.integers(len(t.noninv)))]
        ic = int(rng.integers(t.n))
        cells = _cells_for_chi(t, i1, i2, ic)
        ell = len(cells)
        if not _check_cells(cells, t.p):
            violations.append(_witness(mi, t, i1, i2, ic, ell))
            continue
        histogram[ell] = histogram.get(ell, 0) + 1
        if t.p == 2 and ell >= 2 and not t.invariant[ic]:
            rigidity.append(_witness(mi, t, i1, i2, ic, ell))
        if ell not in witnesses:
            witnesses[ell] = _witness(mi, t, i1, i2, ic, ell)

    max_ell = max((ell for ell, c in histogram.items() if c), default=0)
    return SweepReport(
        strategy="sample",
        complete=False,
        triples_examined=budget.samples,
        max_ell=max_ell,
        histogram=histogram,
        witnesses=[witnesses[e] for e in sorted(witnesses)],
        violations=violations,
        rigidity_breaches=rigidity,
        rng={"name": "numpy-pcg64", "seed": budget.seed},
        models=[t.model.describe() for t in tables],
    )


def find_witness(
    family: SweepFamily,
    target_ell: int | None = None,
    require_noninvariant_chi: bool = False,
) -> dict | None:
    """First triple (model, theta1, theta2, chi in index order) whose pole
    order equals `target_ell` (default: the model's p, the sharp bound).

    Returns None when the family contains no such triple.
    """
    for mi, model in enumerate(family.models):
        tables = _FastTables(model)
        target = model.p if target_ell is None else target_ell
        n = tables.n
        for i1 in tables.noninv:
            for i2 in tables.noninv:
                buckets = _pair_buckets(tables, i1, i2)
                if target == 0:
                    pool = [i for i in range(n) if i not in buckets]
                else:
                    pool = [ic for ic, cells in buckets.items() if len(cells) == target]
                if require_noninvariant_chi:
                    pool = [ic for ic in pool if not tables.invariant[ic]]
                if pool:
                    return _witness(mi, tables, i1, i2, min(pool), target)
    return None


def catalogue_cyclic(p: int, max_group_order: int = 64) -> list[AbelianModel]:
    out = []
    cyc = CyclicData(p)
    for n in range(2, max_group_order + 1):
        for u in range(2, n):
            if gcd(u, n) == 1 and multiplicative_order(u, n) == p:
                out.append(AbelianModel(factors=(n,), sigma=((u,),), cyclic=cyc))
    return out


def catalogue_rank2(p: int, max_side: int = 5) -> list[AbelianModel]:
    out = []
    cyc = CyclicData(p)
    for d in range(2, max_side + 1):
        ident = ((1, 0), (0, 1))
        for a in range(d):
            for b in range(d):
                for c in range(d):
                    for e in range(d):
                        m = ((a, b), (c, e))
                        if m == ident:
                            continue
                        power = m
                        for _ in range(p - 1):
                            power = (
                                (
                                    (power[0][0] * a + power[0][1] * c) % d,
                                    (power[0][0] * b + power[0][1] * e) % d,
                                ),
                                (
                                    (power[1][0] * a + power[1][1] * c) % d,
                                    (power[1][0] * b + power[1][1] * e) % d,
                                ),
                            )
                        if power == ident:
                            out.append(
                                AbelianModel(factors=(d, d), sigma=m, cyclic=cyc)
                            )
    return out


def shipped_catalogue(p_values=(2, 3, 5), max_group_order: int = 64) -> SweepFamily:
    """The default model family: all cyclic groups up to `max_group_order`
    with a unit of order p, rank-2 groups with sides up to 5, and a few
    larger rank-2 involutions."""
    models: list[AbelianModel] = []
    for p in p_values:
        models.extend(catalogue_cyclic(p, max_group_order))
        models.extend(catalogue_rank2(p))
    if 2 in p_values:
        cyc2 = CyclicData(2)
        for d in (6, 7, 8):
            models.append(
                AbelianModel(factors=(d, d), sigma=((0, 1), (1, 0)), cyclic=cyc2)
            )
            models.append(
                AbelianModel(
                    factors=(d, d), sigma=((d - 1, 0), (0, d - 1)), cyclic=cyc2
                )
            )
    return SweepFamily(tuple(models))
