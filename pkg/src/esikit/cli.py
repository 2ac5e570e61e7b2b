"""Command-line front end: selection, sweeps, reference diffs and simulation.

Exit status: 0 on success, 1 on any validation/parse error, 2 when a budget
admits no eligible suite.  Machine output (--format json) is a single JSON
document carrying a ``schema_version`` field; human output is plain tables.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import CatalogError, MetricCatalog, default_catalog, load_catalog
from .scoring import WeightVector
from .selection import (
    BudgetInfeasible,
    MetricBudget,
    SelectionReport,
    SuiteComposition,
    filter_by_budget,
    select,
    suite_label,
    sweep,
)
from .simulator import (
    SimConfig,
    SimResult,
    Topology,
    compare_topologies,
    run_simulation,
)
from .table1 import load_weights_file, reproduce_reference

SCHEMA_VERSION = 1
CATALOG_ENV_VAR = "ESIKIT_CATALOG"

_TOPOLOGY_ALIASES = {
    "dual": Topology.DUAL_INTERFACE,
    "split": Topology.SPLIT_BUS_SINGLE_PCI,
    "shared": Topology.SHARED_BIDIRECTIONAL_BUS,
}


class CliError(Exception):
    """One-line user-facing error; maps to exit status 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we reserve 2
        raise CliError(message)


def _resolve_catalog(path: str | None) -> MetricCatalog:
    if path is None:
        path = os.environ.get(CATALOG_ENV_VAR)
    if path is None:
        return default_catalog()
    try:
        return load_catalog(path)
    except FileNotFoundError:
        raise CliError(f"catalog file not found: {path}") from None
    except CatalogError as exc:
        raise CliError(f"invalid catalog {path}: {exc}") from None


def _parse_weights(text: str) -> WeightVector:
    try:
        return WeightVector.parse(text)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _cell_dict(catalog: MetricCatalog, cell: SuiteComposition) -> dict:
    return {
        "suite": suite_label(catalog, cell),
        "enc_index": cell.enc_index,
        "hash_index": cell.hash_index,
        "kex_index": cell.kex_index,
        "power_mw": cell.power_mw,
        "throughput_gbps": cell.throughput_gbps,
        "slices": cell.slices,
        "esi": cell.esi,
    }


def _report_dict(report: SelectionReport) -> dict:
    catalog = report.space.catalog
    return {
        "weights": {
            "w_p": report.weights.w_p,
            "w_t": report.weights.w_t,
            "w_r": report.weights.w_r,
            "priority": report.weights.priority,
        },
        "esi_t": report.esi_t,
        "best": _cell_dict(catalog, report.best),
        "worst": _cell_dict(catalog, report.worst),
        "eligible": [_cell_dict(catalog, c) for c in report.eligible],
        "eligible_percent": report.eligible_percent,
    }


def _report_text(report: SelectionReport) -> str:
    catalog = report.space.catalog
    w = report.weights
    lines = [
        f"weights      w_p={w.w_p:g} w_t={w.w_t:g} w_r={w.w_r:g}  ({w.priority} priority)",
        f"esi_t        {report.esi_t:.4f}",
        f"best         {suite_label(catalog, report.best)}  (esi {report.best.esi:.4f})",
        f"worst        {suite_label(catalog, report.worst)}  (esi {report.worst.esi:.4f})",
        f"eligible     {len(report.eligible)}/{report.space.size}  ({report.eligible_percent:.1f}%)",
        "",
        f"{'#':>3} {'suite':<24} {'power_mw':>9} {'gbps':>7} {'slices':>7} {'esi':>7}",
    ]
    for rank, cell in enumerate(report.eligible, start=1):
        lines.append(
            f"{rank:>3} {suite_label(catalog, cell):<24} {cell.power_mw:>9.1f} "
            f"{cell.throughput_gbps:>7.3f} {cell.slices:>7d} {cell.esi:>7.4f}"
        )
    return "\n".join(lines)


def _budget_from_args(args) -> MetricBudget | None:
    if args.max_power is None and args.min_throughput is None and args.max_resource is None:
        return None
    return MetricBudget(
        max_power_mw=args.max_power,
        min_throughput_gbps=args.min_throughput,
        max_resource_slices=args.max_resource,
    )


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cmd_catalog_validate(args) -> int:
    try:
        catalog = load_catalog(args.file)
    except FileNotFoundError:
        raise CliError(f"catalog file not found: {args.file}") from None
    except CatalogError as exc:
        raise CliError(str(exc)) from None
    n, m, l = catalog.sizes
    if args.format == "json":
        _emit(
            args,
            json.dumps(
                {
                    "schema_version": SCHEMA_VERSION,
                    "command": "catalog-validate",
                    "valid": True,
                    "encryption": n,
                    "hash": m,
                    "key_exchange": l,
                    "suites": catalog.n_suites,
                },
                indent=2,
            ),
        )
    else:
        _emit(
            args,
            f"OK: {n} encryption, {m} hash, {l} key-exchange algorithms "
            f"({catalog.n_suites} suite combinations)",
        )
    return 0


def _cmd_select(args) -> int:
    catalog = _resolve_catalog(args.catalog)
    weights = _parse_weights(args.weights)
    report = select(catalog, weights)
    budget = _budget_from_args(args)

    filtered = None
    infeasible = None
    if budget is not None:
        outcome = filter_by_budget(report, budget)
        if isinstance(outcome, BudgetInfeasible):
            infeasible = outcome
        else:
            filtered = outcome

    if args.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": "select", **_report_dict(report)}
        if budget is not None:
            doc["budget"] = budget.bounds
            doc["budget_infeasible"] = infeasible is not None
            if infeasible is not None:
                doc["relaxations"] = [
                    {
                        "bound": r.bound,
                        "required_value": r.required_value,
                        "witness": _cell_dict(catalog, r.witness),
                    }
                    for r in infeasible.relaxations
                ]
            else:
                doc["within_budget"] = [_cell_dict(catalog, c) for c in filtered]
        _emit(args, json.dumps(doc, indent=2))
    else:
        text = _report_text(report)
        if infeasible is not None:
            hints = "; ".join(
                f"set {r.bound} to {r.required_value:g} (admits "
                f"{suite_label(catalog, r.witness)})"
                for r in infeasible.relaxations
            )
            text += "\n\nno eligible suite fits the budget; increase metrics budget"
            if hints:
                text += f": {hints}"
        elif filtered is not None:
            text += f"\n\nwithin budget: {', '.join(suite_label(catalog, c) for c in filtered)}"
        _emit(args, text)
    return 2 if infeasible is not None else 0


def _cmd_sweep(args) -> int:
    catalog = _resolve_catalog(args.catalog)
    try:
        weight_list = load_weights_file(args.weights_file)
    except FileNotFoundError:
        raise CliError(f"weights file not found: {args.weights_file}") from None
    except ValueError as exc:
        raise CliError(str(exc)) from None
    reports = sweep(catalog, weight_list)
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": "sweep",
            "rows": [_report_dict(r) for r in reports],
        }
        _emit(args, json.dumps(doc, indent=2))
    else:
        lines = [
            f"{'#':>3} {'w_p':>6} {'w_t':>6} {'w_r':>6} {'esi_t':>7} "
            f"{'best':<24} {'worst':<24} {'elig%':>6}"
        ]
        for i, r in enumerate(reports, start=1):
            lines.append(
                f"{i:>3} {r.weights.w_p:>6g} {r.weights.w_t:>6g} {r.weights.w_r:>6g} "
                f"{r.esi_t:>7.4f} {suite_label(catalog, r.best):<24} "
                f"{suite_label(catalog, r.worst):<24} {r.eligible_percent:>6.1f}"
            )
        _emit(args, "\n".join(lines))
    return 0


def _cmd_reproduce_table1(args) -> int:
    catalog = _resolve_catalog(args.catalog)
    diff = reproduce_reference(catalog)
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": "reproduce-table1",
            "n_rows": len(diff.rows),
            "max_abs_esi_t_delta": diff.max_abs_esi_t_delta,
            "max_abs_pct_delta": diff.max_abs_pct_delta,
            "best_matches": diff.best_matches,
            "worst_matches": diff.worst_matches,
            "rows": [
                {
                    "sl": r.sl,
                    "w_p": r.weights.w_p,
                    "w_t": r.weights.w_t,
                    "w_r": r.weights.w_r,
                    "esi_t_paper": r.esi_t_reference,
                    "esi_t_computed": r.esi_t_computed,
                    "esi_t_delta": r.esi_t_delta,
                    "best_paper": r.best_reference,
                    "best_computed": r.best_computed,
                    "best_match": r.best_match,
                    "best_esi_computed": r.best_esi_computed,
                    "best_paper_esi_computed": r.reference_best_esi,
                    "worst_paper": r.worst_reference,
                    "worst_computed": r.worst_computed,
                    "worst_match": r.worst_match,
                    "worst_esi_computed": r.worst_esi_computed,
                    "worst_paper_esi_computed": r.reference_worst_esi,
                    "pct_paper": r.pct_reference,
                    "pct_computed": r.pct_computed,
                    "pct_delta": r.pct_delta,
                }
                for r in diff.rows
            ],
        }
        _emit(args, json.dumps(doc, indent=2))
    else:
        lines = [
            f"{'#':>3} {'w_p':>6} {'w_t':>6} {'w_r':>6} {'esi_t ref':>9} {'esi_t':>7} "
            f"{'d':>8} {'best':>4} {'worst':>5} {'pct ref':>7} {'pct':>6} {'dpct':>6}"
        ]
        for r in diff.rows:
            lines.append(
                f"{r.sl:>3} {r.weights.w_p:>6g} {r.weights.w_t:>6g} {r.weights.w_r:>6g} "
                f"{r.esi_t_reference:>9.4f} {r.esi_t_computed:>7.4f} {r.esi_t_delta:>+8.4f} "
                f"{'ok' if r.best_match else 'DIFF':>4} {'ok' if r.worst_match else 'DIFF':>5} "
                f"{r.pct_reference:>7.1f} {r.pct_computed:>6.1f} {r.pct_delta:>+6.1f}"
            )
        lines.append("")
        lines.append(
            f"max |esi_t delta| = {diff.max_abs_esi_t_delta:.4f}; "
            f"best matches {diff.best_matches}/{len(diff.rows)}, "
            f"worst matches {diff.worst_matches}/{len(diff.rows)}"
        )
        for r in diff.mismatches:
            if not r.best_match:
                lines.append(
                    f"row {r.sl} best: reference {r.best_reference} "
                    f"(esi {r.reference_best_esi:.4f}) vs computed {r.best_computed} "
                    f"(esi {r.best_esi_computed:.4f})"
                )
            if not r.worst_match:
                lines.append(
                    f"row {r.sl} worst: reference {r.worst_reference} "
                    f"(esi {r.reference_worst_esi:.4f}) vs computed {r.worst_computed} "
                    f"(esi {r.worst_esi_computed:.4f})"
                )
        _emit(args, "\n".join(lines))
    return 0


def _parse_packets(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise CliError(f"--packets expects FORWARD,REVERSE counts, got {text!r}")
    try:
        fwd, rev = int(parts[0]), int(parts[1])
    except ValueError:
        raise CliError(f"--packets counts must be integers, got {text!r}") from None
    return fwd, rev


def _sim_config_from_args(args, topology: Topology | None) -> SimConfig:
    settings: dict = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                settings = json.load(fh)
        except FileNotFoundError:
            raise CliError(f"config file not found: {args.config}") from None
        except json.JSONDecodeError as exc:
            raise CliError(f"invalid config {args.config}: {exc}") from None
    if args.packets is not None:
        settings["n_forward_packets"], settings["n_reverse_packets"] = _parse_packets(
            args.packets
        )
    for flag, key in (
        ("packet_size", "packet_size"),
        ("bus_gbps", "bus_bandwidth"),
        ("suite_gbps", "suite_throughput"),
        ("dma_setup", "dma_setup"),
        ("reconfig_delay", "reconfig_delay"),
        ("key_exchange_delay", "key_exchange_delay"),
        ("crypto_fwd_gbps", "crypto_gbps_forward"),
        ("crypto_rev_gbps", "crypto_gbps_reverse"),
    ):
        value = getattr(args, flag, None)
        if value is not None:
            settings[key] = value
    if topology is not None:
        settings["topology"] = topology
    settings.setdefault("topology", Topology.DUAL_INTERFACE)
    required = (
        "packet_size",
        "n_forward_packets",
        "n_reverse_packets",
        "bus_bandwidth",
        "suite_throughput",
    )
    missing = [k for k in required if k not in settings]
    if missing:
        raise CliError(f"missing simulation parameters: {', '.join(missing)}")
    try:
        return SimConfig(**settings)
    except (TypeError, ValueError) as exc:
        raise CliError(f"invalid simulation config: {exc}") from None


def _sim_result_dict(result: SimResult) -> dict:
    cfg = result.config
    return {
        "config": {
            "topology": cfg.topology.value,
            "packet_size": cfg.packet_size,
            "n_forward_packets": cfg.n_forward_packets,
            "n_reverse_packets": cfg.n_reverse_packets,
            "bus_bandwidth": cfg.bus_bandwidth,
            "suite_throughput": cfg.suite_throughput,
            "dma_setup": cfg.dma_setup,
            "reconfig_delay": cfg.reconfig_delay,
            "key_exchange_delay": cfg.key_exchange_delay,
            "crypto_gbps_forward": cfg.crypto_gbps_forward,
            "crypto_gbps_reverse": cfg.crypto_gbps_reverse,
        },
        "makespan_ns": result.makespan,
        "utilization": result.utilization,
        "packets": [
            {
                "direction": p.direction.value,
                "packet_id": p.packet_id,
                "first_start_ns": p.first_start,
                "completion_ns": p.completion,
                "latency_ns": p.latency,
            }
            for p in result.packets
        ],
        "events": [
            {
                "packet_id": e.packet_id,
                "direction": e.direction.value,
                "stage": e.stage.value,
                "resource": e.resource,
                "start_ns": e.start,
                "end_ns": e.end,
            }
            for e in result.events
        ],
    }


def _sim_result_text(result: SimResult, events: bool = True) -> str:
    cfg = result.config
    lines = [
        f"topology     {cfg.topology.value}",
        f"packets      {cfg.n_forward_packets} forward, {cfg.n_reverse_packets} reverse "
        f"x {cfg.packet_size} bits",
        f"rates        bus {cfg.bus_bandwidth:g} Gbps, crypto {cfg.suite_throughput:g} Gbps, "
        f"dma setup {cfg.dma_setup} ns",
        f"makespan     {result.makespan} ns",
    ]
    if result.utilization:
        lines.append("utilization  " + "  ".join(
            f"{r}={u:.2f}" for r, u in result.utilization.items()
        ))
    if result.packets:
        lines.append("")
        lines.append(f"{'dir':<8} {'pkt':>4} {'start':>8} {'done':>8} {'latency':>8}")
        for p in result.packets:
            lines.append(
                f"{p.direction.value:<8} {p.packet_id:>4} {p.first_start:>8} "
                f"{p.completion:>8} {p.latency:>8}"
            )
    if events and result.events:
        lines.append("")
        lines.append(f"{'dir':<8} {'pkt':>4} {'stage':<17} {'resource':<11} {'start':>8} {'end':>8}")
        for e in result.events:
            lines.append(
                f"{e.direction.value:<8} {e.packet_id:>4} {e.stage.value:<17} "
                f"{e.resource:<11} {e.start:>8} {e.end:>8}"
            )
    return "\n".join(lines)


def _cmd_simulate(args) -> int:
    raw = args.topology
    topology = _TOPOLOGY_ALIASES.get(raw)
    if topology is None:
        try:
            topology = Topology(raw)
        except ValueError:
            choices = sorted({*_TOPOLOGY_ALIASES, *(t.value for t in Topology)})
            raise CliError(f"unknown topology {raw!r} (choose from {', '.join(choices)})") from None
    result = run_simulation(_sim_config_from_args(args, topology))
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": "simulate",
            **_sim_result_dict(result),
        }
        _emit(args, json.dumps(doc, indent=2))
    else:
        _emit(args, _sim_result_text(result))
    return 0


def _cmd_compare(args) -> int:
    comparison = compare_topologies(_sim_config_from_args(args, None))
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": "compare-topologies",
            "ranking": [
                {"topology": t.value, "makespan_ns": m} for t, m in comparison.ranking
            ],
            "results": [_sim_result_dict(r) for r in comparison.results],
        }
        _emit(args, json.dumps(doc, indent=2))
    else:
        lines = ["makespan ranking (fastest first):"]
        for rank, (topology, makespan) in enumerate(comparison.ranking, start=1):
            lines.append(f"  {rank}. {topology.value:<26} {makespan} ns")
        for result in comparison.results:
            lines.append("")
            lines.append(_sim_result_text(result, events=False))
        _emit(args, "\n".join(lines))
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("human", "json"), default="human",
                        help="output mode (default: human)")
    parser.add_argument("--out", metavar="FILE", help="write the report to FILE instead of stdout")


def _add_sim_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="FILE", help="JSON file with simulation parameters")
    parser.add_argument("--packets", metavar="F,R", help="forward,reverse packet counts")
    parser.add_argument("--packet-size", dest="packet_size", type=int, help="packet size in bits")
    parser.add_argument("--bus-gbps", dest="bus_gbps", type=float, help="bus/interface bandwidth")
    parser.add_argument("--suite-gbps", dest="suite_gbps", type=float,
                        help="composed crypto throughput of the selected suite")
    parser.add_argument("--dma-setup", dest="dma_setup", type=int, help="per-transfer setup ns")
    parser.add_argument("--reconfig-delay", dest="reconfig_delay", type=int,
                        help="one-time suite-switch delay ns")
    parser.add_argument("--key-exchange-delay", dest="key_exchange_delay", type=int,
                        help="one-time session setup delay ns")
    parser.add_argument("--crypto-fwd-gbps", dest="crypto_fwd_gbps", type=float,
                        help="forward engine rate override")
    parser.add_argument("--crypto-rev-gbps", dest="crypto_rev_gbps", type=float,
                        help="reverse engine rate override")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="esikit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_catalog = sub.add_parser("catalog", help="catalog utilities")
    catalog_sub = p_catalog.add_subparsers(dest="catalog_command", required=True)
    p_validate = catalog_sub.add_parser("validate", help="validate a catalog file")
    p_validate.add_argument("file")
    _add_common(p_validate)
    p_validate.set_defaults(func=_cmd_catalog_validate)

    p_select = sub.add_parser("select", help="select eligible suites for one weight vector")
    p_select.add_argument("--weights", required=True, metavar="WP,WT,WR")
    p_select.add_argument("--catalog", metavar="FILE")
    p_select.add_argument("--max-power", type=float, metavar="MW")
    p_select.add_argument("--min-throughput", type=float, metavar="GBPS")
    p_select.add_argument("--max-resource", type=float, metavar="SLICES")
    _add_common(p_select)
    p_select.set_defaults(func=_cmd_select)

    p_sweep = sub.add_parser("sweep", help="run selection for every weight vector in a file")
    p_sweep.add_argument("--weights-file", required=True, metavar="FILE")
    p_sweep.add_argument("--catalog", metavar="FILE")
    _add_common(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_repro = sub.add_parser(
        "reproduce-table1",
        help="recompute the bundled 46-row reference table and diff against it",
    )
    p_repro.add_argument("--catalog", metavar="FILE")
    _add_common(p_repro)
    p_repro.set_defaults(func=_cmd_reproduce_table1)

    p_sim = sub.add_parser("simulate", help="run one dataflow simulation")
    p_sim.add_argument("--topology", required=True,
                       help="dual | split | shared (or full topology names)")
    _add_sim_flags(p_sim)
    _add_common(p_sim)
    p_sim.set_defaults(func=_cmd_simulate)

    p_cmp = sub.add_parser("compare-topologies",
                           help="run the same workload under all three topologies")
    _add_sim_flags(p_cmp)
    _add_common(p_cmp)
    p_cmp.set_defaults(func=_cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
