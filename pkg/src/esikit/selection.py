"""Suite composition, eligibility selection, budget filtering and sweeps.

A suite is one (encryption, hash, key-exchange) triple; its composed metrics
are the sums of the three constituents' metrics.  Selection scores every
composition in the catalog's n*m*l space, keeps those at or above the cut-off
and reports best/worst with deterministic lexicographic tie-breaking.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .catalog import MetricCatalog
from .scoring import EsiScorer, WeightVector, cutoff_score, weighted_scores


@dataclass(frozen=True)
class SuiteComposition:
    """One cell of the composed metric space (esi set once scored)."""

    enc_index: int
    hash_index: int
    kex_index: int
    power_mw: float
    throughput_gbps: float
    slices: int
    esi: float | None = None

    @property
    def indices(self) -> tuple[int, int, int]:
        return (self.enc_index, self.hash_index, self.kex_index)


@dataclass(frozen=True)
class CompositionSpace:
    """All suite compositions of a catalog plus their maxima and averages."""

    catalog: MetricCatalog
    cells: tuple[SuiteComposition, ...]
    p_max: float
    t_max: float
    r_max: float
    p_avg: float
    t_avg: float
    r_avg: float

    @property
    def size(self) -> int:
        return len(self.cells)

    def metric_matrix(self) -> np.ndarray:
        """Cells as a (n_suites, 3) array: power, throughput, resource."""
        return np.array(
            [(c.power_mw, c.throughput_gbps, c.slices) for c in self.cells], dtype=float
        )


@dataclass(frozen=True)
class SelectionReport:
    """Outcome of one selection run for a fixed weight vector."""

    weights: WeightVector
    esi_t: float
    eligible: tuple[SuiteComposition, ...]
    best: SuiteComposition
    worst: SuiteComposition
    eligible_percent: float
    space: CompositionSpace


@dataclass(frozen=True)
class MetricBudget:
    """User bounds on composed metrics; unset bounds are unconstrained."""

    max_power_mw: float | None = None
    min_throughput_gbps: float | None = None
    max_resource_slices: float | None = None

    @property
    def bounds(self) -> dict[str, float]:
        out = {}
        if self.max_power_mw is not None:
            out["max_power_mw"] = self.max_power_mw
        if self.min_throughput_gbps is not None:
            out["min_throughput_gbps"] = self.min_throughput_gbps
        if self.max_resource_slices is not None:
            out["max_resource_slices"] = self.max_resource_slices
        return out

    def admits(self, cell: SuiteComposition, ignore: str | None = None) -> bool:
        if ignore != "max_power_mw" and self.max_power_mw is not None:
            if cell.power_mw > self.max_power_mw:
                return False
        if ignore != "min_throughput_gbps" and self.min_throughput_gbps is not None:
            if cell.throughput_gbps < self.min_throughput_gbps:
                return False
        if ignore != "max_resource_slices" and self.max_resource_slices is not None:
            if cell.slices > self.max_resource_slices:
                return False
        return True


@dataclass(frozen=True)
class BudgetRelaxation:
    """Smallest change of one bound that would admit at least one suite."""

    bound: str
    required_value: float
    witness: SuiteComposition


@dataclass(frozen=True)
class BudgetInfeasible:
    """No eligible suite fits the budget; carries per-bound relaxations."""

    budget: MetricBudget
    relaxations: tuple[BudgetRelaxation, ...]


def suite_label(catalog: MetricCatalog, cell: SuiteComposition) -> str:
    """'+'-joined constituent names, e.g. 'DES+MD5+RSA'."""
    return "+".join(
        (
            catalog.encryption[cell.enc_index].name,
            catalog.hash[cell.hash_index].name,
            catalog.key_exchange[cell.kex_index].name,
        )
    )


def compose_space(catalog: MetricCatalog) -> CompositionSpace:
    """Build all n*m*l additive compositions with maxima and averages."""
    catalog.validate()
    pe = np.array([a.power_mw for a in catalog.encryption])
    ph = np.array([a.power_mw for a in catalog.hash])
    pk = np.array([a.power_mw for a in catalog.key_exchange])
    te = np.array([a.throughput_gbps for a in catalog.encryption])
    th = np.array([a.throughput_gbps for a in catalog.hash])
    tk = np.array([a.throughput_gbps for a in catalog.key_exchange])
    re_ = np.array([a.slices for a in catalog.encryption], dtype=np.int64)
    rh = np.array([a.slices for a in catalog.hash], dtype=np.int64)
    rk = np.array([a.slices for a in catalog.key_exchange], dtype=np.int64)

    power = pe[:, None, None] + ph[None, :, None] + pk[None, None, :]
    throughput = te[:, None, None] + th[None, :, None] + tk[None, None, :]
    resource = re_[:, None, None] + rh[None, :, None] + rk[None, None, :]

    n, m, l = catalog.sizes
    cells = tuple(
        SuiteComposition(
            enc_index=i,
            hash_index=j,
            kex_index=k,
            power_mw=float(power[i, j, k]),
            throughput_gbps=float(throughput[i, j, k]),
            slices=int(resource[i, j, k]),
        )
        for i in range(n)
        for j in range(m)
        for k in range(l)
    )
    return CompositionSpace(
        catalog=catalog,
        cells=cells,
        p_max=float(power.max()),
        t_max=float(throughput.max()),
        r_max=float(resource.max()),
        p_avg=float(power.mean()),
        t_avg=float(throughput.mean()),
        r_avg=float(resource.mean()),
    )


def esi(cell: SuiteComposition, space: CompositionSpace, weights: WeightVector) -> float:
    """Weighted normalized score of one composition against the space maxima."""
    return float(
        weighted_scores(
            cell.power_mw,
            cell.throughput_gbps,
            cell.slices,
            space.p_max,
            space.t_max,
            space.r_max,
            weights,
        )
    )


def esi_threshold(space: CompositionSpace, weights: WeightVector) -> float:
    """Eligibility cut-off of the space (score of its average metric point)."""
    return cutoff_score(
        space.p_avg, space.t_avg, space.r_avg, space.p_max, space.t_max, space.r_max, weights
    )


def select_in_space(space: CompositionSpace, weights: WeightVector) -> SelectionReport:
    """Score every cell of a prebuilt space and assemble the report."""
    scorer = EsiScorer(weights.w_p, weights.w_t, weights.w_r)
    X = space.metric_matrix()
    scores = scorer.fit(X).score_samples(X)
    threshold = scorer.threshold_

    scored = tuple(
        dataclasses.replace(cell, esi=float(score))
        for cell, score in zip(space.cells, scores)
    )
    # ties broken by lowest (i, j, k) so identical inputs give identical reports
    eligible = tuple(
        sorted(
            (c for c in scored if c.esi >= threshold),
            key=lambda c: (-c.esi, c.indices),
        )
    )
    best = min(scored, key=lambda c: (-c.esi, c.indices))
    worst = min(scored, key=lambda c: (c.esi, c.indices))
    return SelectionReport(
        weights=weights,
        esi_t=threshold,
        eligible=eligible,
        best=best,
        worst=worst,
        eligible_percent=100.0 * len(eligible) / len(scored),
        space=space,
    )


def select(catalog: MetricCatalog, weights: WeightVector) -> SelectionReport:
    """Compose the catalog's space and select eligible suites for one weight vector."""
    return select_in_space(compose_space(catalog), weights)


def sweep(catalog: MetricCatalog, weight_list) -> list[SelectionReport]:
    """One selection report per weight vector, input order preserved."""
    weight_list = list(weight_list)
    if not weight_list:
        return []
    space = compose_space(catalog)
    return [select_in_space(space, w) for w in weight_list]


_BOUND_EXTREMES = {
    # bound name -> (metric getter, witness sort key); ties go to lowest (i, j, k)
    "max_power_mw": (lambda c: c.power_mw, lambda c: (c.power_mw, c.indices)),
    "min_throughput_gbps": (
        lambda c: c.throughput_gbps,
        lambda c: (-c.throughput_gbps, c.indices),
    ),
    "max_resource_slices": (lambda c: float(c.slices), lambda c: (float(c.slices), c.indices)),
}


def filter_by_budget(
    report: SelectionReport, budget: MetricBudget
) -> list[SuiteComposition] | BudgetInfeasible:
    """Keep eligible suites inside the budget, or explain why none fit.

    The infeasible signal carries, for each bound, the minimal relaxation of
    that bound alone that would admit at least one eligible suite while the
    other bounds stay as given (omitted when no such relaxation exists).
    """
    bounds = budget.bounds
    if not bounds:
        raise ValueError("budget has no bounds set; nothing to filter by")
    admitted = [c for c in report.eligible if budget.admits(c)]
    if admitted:
        return admitted

    relaxations = []
    for bound in bounds:
        getter, sort_key = _BOUND_EXTREMES[bound]
        candidates = [c for c in report.eligible if budget.admits(c, ignore=bound)]
        if not candidates:
            continue
        witness = min(candidates, key=sort_key)
        relaxations.append(
            BudgetRelaxation(bound=bound, required_value=getter(witness), witness=witness)
        )
    return BudgetInfeasible(budget=budget, relaxations=tuple(relaxations))
