"""Bundled reference results and the recompute-vs-reference diff.

``data/table1_weights.csv`` holds the 46 published weight vectors and
``data/table1_reference.csv`` the full published rows (threshold, best and
worst suite, eligibility percentage) transcribed verbatim.  The diff recomputes
every row from a catalog and reports deltas, keeping the reference data out of
test assertions so discrepancies stay visible in one place.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources

from .catalog import MetricCatalog, default_catalog
from .scoring import WeightVector
from .selection import SelectionReport, esi, suite_label, sweep

_DATA_PACKAGE = "esikit.data"
WEIGHTS_RESOURCE = "table1_weights.csv"
REFERENCE_RESOURCE = "table1_reference.csv"


@dataclass(frozen=True)
class ReferenceRow:
    sl: int
    w_p: float
    w_t: float
    w_r: float
    priority: str
    esi_t: float
    best: str
    worst: str
    eligible_percent: float


@dataclass(frozen=True)
class RowDiff:
    """Published row vs recomputed selection for one weight vector."""

    sl: int
    weights: WeightVector
    esi_t_reference: float
    esi_t_computed: float
    best_reference: str
    best_computed: str
    best_match: bool
    best_esi_computed: float  # score of the computed best suite
    reference_best_esi: float  # score the reference's claimed best actually gets
    worst_reference: str
    worst_computed: str
    worst_match: bool
    worst_esi_computed: float
    reference_worst_esi: float
    pct_reference: float
    pct_computed: float

    @property
    def esi_t_delta(self) -> float:
        return self.esi_t_computed - self.esi_t_reference

    @property
    def pct_delta(self) -> float:
        return self.pct_computed - self.pct_reference


@dataclass(frozen=True)
class TableDiff:
    rows: tuple[RowDiff, ...]

    @property
    def max_abs_esi_t_delta(self) -> float:
        return max(abs(r.esi_t_delta) for r in self.rows)

    @property
    def max_abs_pct_delta(self) -> float:
        return max(abs(r.pct_delta) for r in self.rows)

    @property
    def best_matches(self) -> int:
        return sum(r.best_match for r in self.rows)

    @property
    def worst_matches(self) -> int:
        return sum(r.worst_match for r in self.rows)

    @property
    def mismatches(self) -> tuple[RowDiff, ...]:
        return tuple(r for r in self.rows if not (r.best_match and r.worst_match))


def _read_resource(name: str) -> str:
    return resources.files(_DATA_PACKAGE).joinpath(name).read_text(encoding="utf-8")


def _data_rows(text: str) -> list[dict[str, str]]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def load_reference_weights() -> list[WeightVector]:
    """The bundled weight vectors, file order preserved."""
    return [
        WeightVector(float(r["w_p"]), float(r["w_t"]), float(r["w_r"]))
        for r in _data_rows(_read_resource(WEIGHTS_RESOURCE))
    ]


def load_weights_file(path) -> list[WeightVector]:
    """Parse a sweep input file (header w_p,w_t,w_r; `#` comments allowed)."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    rows = _data_rows(text)
    if rows and set(rows[0]) != {"w_p", "w_t", "w_r"}:
        raise ValueError(f"weights file must have header w_p,w_t,w_r (got {sorted(rows[0])})")
    out = []
    for i, r in enumerate(rows, start=1):
        try:
            out.append(WeightVector(float(r["w_p"]), float(r["w_t"]), float(r["w_r"])))
        except (TypeError, ValueError) as exc:
            raise ValueError(f"weights file row {i}: {exc}") from None
    return out


def load_reference_rows() -> list[ReferenceRow]:
    return [
        ReferenceRow(
            sl=int(r["sl"]),
            w_p=float(r["w_p"]),
            w_t=float(r["w_t"]),
            w_r=float(r["w_r"]),
            priority=r["priority"],
            esi_t=float(r["esi_t"]),
            best=r["best"],
            worst=r["worst"],
            eligible_percent=float(r["eligible_percent"]),
        )
        for r in _data_rows(_read_resource(REFERENCE_RESOURCE))
    ]


def normalize_suite(label: str) -> str:
    """Casefold and drop hyphens so 'DES+SHA-512+RSA' matches 'DES+SHA512+RSA'."""
    return label.replace("-", "").casefold()


def _lookup_esi(report: SelectionReport, label: str) -> float:
    catalog = report.space.catalog
    want = normalize_suite(label)
    by_label = {normalize_suite(suite_label(catalog, c)): c for c in report.space.cells}
    if want not in by_label:
        raise ValueError(f"suite {label!r} names algorithms missing from the catalog")
    return esi(by_label[want], report.space, report.weights)


def reproduce_reference(catalog: MetricCatalog | None = None) -> TableDiff:
    """Recompute every reference row over a catalog and diff the outcomes."""
    if catalog is None:
        catalog = default_catalog()
    reference = load_reference_rows()
    weights = [WeightVector(r.w_p, r.w_t, r.w_r) for r in reference]
    reports = sweep(catalog, weights)

    rows = []
    for ref, report in zip(reference, reports):
        best_label = suite_label(catalog, report.best)
        worst_label = suite_label(catalog, report.worst)
        rows.append(
            RowDiff(
                sl=ref.sl,
                weights=report.weights,
                esi_t_reference=ref.esi_t,
                esi_t_computed=report.esi_t,
                best_reference=ref.best,
                best_computed=best_label,
                best_match=normalize_suite(best_label) == normalize_suite(ref.best),
                best_esi_computed=report.best.esi,
                reference_best_esi=_lookup_esi(report, ref.best),
                worst_reference=ref.worst,
                worst_computed=worst_label,
                worst_match=normalize_suite(worst_label) == normalize_suite(ref.worst),
                worst_esi_computed=report.worst.esi,
                reference_worst_esi=_lookup_esi(report, ref.worst),
                pct_reference=ref.eligible_percent,
                pct_computed=report.eligible_percent,
            )
        )
    return TableDiff(rows=tuple(rows))
