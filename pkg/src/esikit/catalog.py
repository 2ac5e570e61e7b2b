"""Algorithm metric catalog: data model, CSV ingestion and the bundled defaults.

A catalog holds one measured metric row per algorithm, grouped into the three
cipher-suite slots (encryption, hash, key exchange). List order is meaningful:
it defines the row indices used by the suite-composition matrices.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass
from enum import Enum

CATALOG_HEADER = ("class", "name", "power_mw", "throughput_gbps", "slices", "critical_path_ns")


class CatalogError(ValueError):
    """Malformed or invalid catalog document."""


class AlgorithmClass(str, Enum):
    ENCRYPTION = "encryption"
    HASH = "hash"
    KEY_EXCHANGE = "key_exchange"


@dataclass(frozen=True)
class AlgorithmMetrics:
    """Measured implementation metrics for one algorithm.

    ``critical_path_ns`` is informational only; it participates in no score.
    """

    name: str
    algo_class: AlgorithmClass
    power_mw: float
    throughput_gbps: float
    slices: int
    critical_path_ns: float

    def validate(self, where: str = "") -> None:
        prefix = f"{where}: " if where else ""
        if not self.name:
            raise CatalogError(f"{prefix}empty algorithm name")
        if not self.power_mw > 0:
            raise CatalogError(f"{prefix}power_mw must be > 0 for {self.name!r} (got {self.power_mw})")
        if not self.throughput_gbps > 0:
            raise CatalogError(
                f"{prefix}throughput_gbps must be > 0 for {self.name!r} (got {self.throughput_gbps})"
            )
        if not self.slices > 0:
            raise CatalogError(f"{prefix}slices must be > 0 for {self.name!r} (got {self.slices})")
        if not self.critical_path_ns > 0:
            raise CatalogError(
                f"{prefix}critical_path_ns must be > 0 for {self.name!r} (got {self.critical_path_ns})"
            )


@dataclass(frozen=True)
class MetricCatalog:
    """Ordered per-class algorithm lists; order defines matrix row indices."""

    encryption: tuple[AlgorithmMetrics, ...]
    hash: tuple[AlgorithmMetrics, ...]
    key_exchange: tuple[AlgorithmMetrics, ...]

    def by_class(self, algo_class: AlgorithmClass) -> tuple[AlgorithmMetrics, ...]:
        return {
            AlgorithmClass.ENCRYPTION: self.encryption,
            AlgorithmClass.HASH: self.hash,
            AlgorithmClass.KEY_EXCHANGE: self.key_exchange,
        }[algo_class]

    @property
    def sizes(self) -> tuple[int, int, int]:
        """(n encryption, m hash, l key-exchange) list lengths."""
        return (len(self.encryption), len(self.hash), len(self.key_exchange))

    @property
    def n_suites(self) -> int:
        n, m, l = self.sizes
        return n * m * l

    def validate(self) -> None:
        for algo_class in AlgorithmClass:
            entries = self.by_class(algo_class)
            if not entries:
                raise CatalogError(f"catalog has no {algo_class.value} algorithms")
            seen: set[str] = set()
            for entry in entries:
                if entry.algo_class is not algo_class:
                    raise CatalogError(
                        f"entry {entry.name!r} carries class {entry.algo_class.value}, "
                        f"expected {algo_class.value}"
                    )
                entry.validate(where=f"{algo_class.value} list")
                if entry.name in seen:
                    raise CatalogError(f"duplicate {algo_class.value} name {entry.name!r}")
                seen.add(entry.name)


def _parse_row(fields: list[str], lineno: int) -> AlgorithmMetrics:
    where = f"line {lineno}"
    if len(fields) != len(CATALOG_HEADER):
        raise CatalogError(f"{where}: expected {len(CATALOG_HEADER)} fields, got {len(fields)}")
    class_field, name, power, throughput, slices, critical_path = (f.strip() for f in fields)
    try:
        algo_class = AlgorithmClass(class_field)
    except ValueError:
        raise CatalogError(
            f"{where}: unknown class {class_field!r} "
            f"(expected one of {', '.join(c.value for c in AlgorithmClass)})"
        ) from None
    try:
        entry = AlgorithmMetrics(
            name=name,
            algo_class=algo_class,
            power_mw=float(power),
            throughput_gbps=float(throughput),
            slices=int(slices),
            critical_path_ns=float(critical_path),
        )
    except ValueError as exc:
        raise CatalogError(f"{where} ({name!r}): {exc}") from None
    try:
        entry.validate()
    except CatalogError as exc:
        raise CatalogError(f"{where}: {exc}") from None
    return entry


def parse_catalog(text: str) -> MetricCatalog:
    """Parse a catalog document; raises CatalogError naming the offending row."""
    rows: dict[AlgorithmClass, list[AlgorithmMetrics]] = {c: [] for c in AlgorithmClass}
    header_seen = False
    reader = csv.reader(io.StringIO(text))
    for lineno, fields in enumerate(reader, start=1):
        if not fields or not "".join(fields).strip():
            continue
        if fields[0].lstrip().startswith("#"):
            continue
        if not header_seen:
            got = tuple(f.strip() for f in fields)
            if got != CATALOG_HEADER:
                raise CatalogError(
                    f"line {lineno}: bad header {','.join(got)!r}; "
                    f"expected {','.join(CATALOG_HEADER)!r}"
                )
            header_seen = True
            continue
        entry = _parse_row(fields, lineno)
        rows[entry.algo_class].append(entry)
    if not header_seen:
        raise CatalogError("empty document: missing header line")
    catalog = MetricCatalog(
        encryption=tuple(rows[AlgorithmClass.ENCRYPTION]),
        hash=tuple(rows[AlgorithmClass.HASH]),
        key_exchange=tuple(rows[AlgorithmClass.KEY_EXCHANGE]),
    )
    catalog.validate()
    return catalog


def load_catalog(path: str | os.PathLike[str]) -> MetricCatalog:
    """Load and validate a catalog file (UTF-8 CSV, `#` comments allowed)."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_catalog(text)


def dump_catalog(catalog: MetricCatalog) -> str:
    """Serialize to the catalog file format; parse_catalog() round-trips it."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CATALOG_HEADER)
    for algo_class in AlgorithmClass:
        for e in catalog.by_class(algo_class):
            writer.writerow(
                [
                    algo_class.value,
                    e.name,
                    repr(e.power_mw),
                    repr(e.throughput_gbps),
                    e.slices,
                    repr(e.critical_path_ns),
                ]
            )
    return out.getvalue()


def save_catalog(catalog: MetricCatalog, path: str | os.PathLike[str]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_catalog(catalog))


# Bundled default: measured FPGA implementation metrics for 7 encryption,
# 3 hash and 3 key-exchange algorithms. Also shipped as data/default_catalog.csv;
# a test pins the two representations against each other.
_DEFAULT_ROWS: tuple[tuple[str, str, float, float, int, float], ...] = (
    ("encryption", "AES", 1183.0, 1.067, 11385, 2.939),
    ("encryption", "RC4", 994.0, 0.931, 5383, 4.127),
    ("encryption", "Grain", 99.7, 0.116, 237, 1.689),
    ("encryption", "Salsa", 107.0, 3.725, 2839, 2.064),
    ("encryption", "DES", 103.0, 7.45, 456, 2.468),
    ("encryption", "3DES", 117.0, 2.48, 1478, 2.468),
    ("encryption", "Idea", 95.0, 0.079, 320, 8.18),
    ("hash", "SHA-256", 176.0, 0.735, 1385, 3.85),
    ("hash", "SHA-512", 278.0, 1.471, 2647, 5.50),
    ("hash", "MD5", 112.0, 0.916, 992, 7.31),
    ("key_exchange", "RSA", 1589.0, 0.298, 13910, 3.85),
    ("key_exchange", "DH_anon", 1767.0, 0.149, 14012, 3.89),
    ("key_exchange", "DH_RSA", 1918.0, 0.099, 14789, 5.67),
)


def default_catalog() -> MetricCatalog:
    """The bundled 7+3+3 catalog (compiled in; identical to the shipped CSV)."""
    rows: dict[AlgorithmClass, list[AlgorithmMetrics]] = {c: [] for c in AlgorithmClass}
    for class_field, name, power, throughput, slices, critical_path in _DEFAULT_ROWS:
        algo_class = AlgorithmClass(class_field)
        rows[algo_class].append(
            AlgorithmMetrics(
                name=name,
                algo_class=algo_class,
                power_mw=power,
                throughput_gbps=throughput,
                slices=slices,
                critical_path_ns=critical_path,
            )
        )
    catalog = MetricCatalog(
        encryption=tuple(rows[AlgorithmClass.ENCRYPTION]),
        hash=tuple(rows[AlgorithmClass.HASH]),
        key_exchange=tuple(rows[AlgorithmClass.KEY_EXCHANGE]),
    )
    catalog.validate()
    return catalog
