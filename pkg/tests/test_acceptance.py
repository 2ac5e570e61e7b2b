"""Acceptance suite: one test per numbered criterion, each printing a
PASS/FAIL line (run with -s or check captured output).

Criterion 3 is expected to fail on one sub-check: at weights (1,0,0) the
reference table's claimed worst suite (AES+SHA512+DH_anon) conflicts with the
bundled metric values, under which AES+SHA512+DH_RSA composes strictly more
power and scores exactly 0.  The check is asserted as stated rather than
weakened; see the row-level regression pins in test_table1.py.
"""

import json
import random
import time
from dataclasses import replace

from esikit.catalog import AlgorithmClass, AlgorithmMetrics, MetricCatalog, default_catalog
from esikit.cli import main as cli_main
from esikit.scoring import EsiScorer, WeightVector
from esikit.selection import compose_space, esi, esi_threshold, select, select_in_space
from esikit.simulator import SimConfig, Topology, run_simulation
from esikit.table1 import normalize_suite, reproduce_reference

from oracle import brute_force_select
from test_simulator import assert_invariants


def _report(num: int, ok: bool, detail: str = "") -> None:
    line = f"[acceptance] criterion {num:2d}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  [{detail}]"
    print(line)
    assert ok, f"criterion {num} failed: {detail}"


def _random_weights(rng: random.Random) -> WeightVector:
    raw = [rng.random() + 1e-9 for _ in range(3)]
    total = sum(raw)
    return WeightVector(*(x / total for x in raw))


def test_criterion_01_threshold_anchors():
    space = compose_space(default_catalog())
    power = esi_threshold(space, WeightVector(1, 0, 0))
    resource = esi_threshold(space, WeightVector(0, 0, 1))
    ok = abs(power - 0.3098) <= 0.0005 and abs(resource - 0.3384) <= 0.0005
    _report(1, ok, f"esi_t(1,0,0)={power:.5f}, esi_t(0,0,1)={resource:.5f}")


def test_criterion_02_threshold_band(capsys):
    diff = reproduce_reference(default_catalog())
    code = cli_main(["reproduce-table1", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    reported = doc["max_abs_esi_t_delta"]
    ok = (
        code == 0
        and diff.max_abs_esi_t_delta <= 0.010
        and abs(reported - diff.max_abs_esi_t_delta) < 1e-12
    )
    with capsys.disabled():
        _report(2, ok, f"max |esi_t delta| = {diff.max_abs_esi_t_delta:.4f} (reported {reported:.4f})")


def test_criterion_03_best_worst_reproduction():
    diff = reproduce_reference(default_catalog())
    by_sl = {r.sl: r for r in diff.rows}
    anchors = {
        1: ("DES+MD5+RSA", "AES+SHA256+DH_RSA"),
        2: ("Idea+MD5+RSA", "AES+SHA512+DH_anon"),
        3: ("DES+SHA512+RSA", "Idea+SHA256+DH_RSA"),
        4: ("Grain+MD5+RSA", "AES+SHA512+DH_RSA"),
    }
    failures = []
    for sl, (best, worst) in anchors.items():
        row = by_sl[sl]
        if normalize_suite(row.best_computed) != normalize_suite(best):
            failures.append(
                f"row {sl} best: computed {row.best_computed} "
                f"(esi {row.best_esi_computed:.4f}) vs published {best} "
                f"(esi {row.reference_best_esi:.4f})"
            )
        if normalize_suite(row.worst_computed) != normalize_suite(worst):
            failures.append(
                f"row {sl} worst: computed {row.worst_computed} "
                f"(esi {row.worst_esi_computed:.4f}) vs published {worst} "
                f"(esi {row.reference_worst_esi:.4f})"
            )
    if diff.best_matches < 42:
        failures.append(f"best matches {diff.best_matches}/46 < 42")
    if diff.worst_matches < 42:
        failures.append(f"worst matches {diff.worst_matches}/46 < 42")
    for row in diff.mismatches:
        if not row.best_match and row.best_esi_computed is None:
            failures.append(f"row {row.sl} mismatch lacks computed scores")
    detail = (
        f"best {diff.best_matches}/46, worst {diff.worst_matches}/46"
        + ("; " + "; ".join(failures) if failures else "")
    )
    _report(3, not failures, detail)


def test_criterion_04_eligibility_percentages():
    diff = reproduce_reference(default_catalog())
    by_sl = {r.sl: r for r in diff.rows}
    within_anchor = (
        abs(by_sl[2].pct_computed - 71.4) <= 1.7 and abs(by_sl[4].pct_computed - 66.6) <= 1.7
    )
    within_band = sum(1 for r in diff.rows if abs(r.pct_delta) <= 5.0)
    off_rows = [r.sl for r in diff.rows if abs(r.pct_delta) > 5.0]
    ok = within_anchor and within_band >= 42
    _report(
        4,
        ok,
        f"row2={by_sl[2].pct_computed:.1f}%, row4={by_sl[4].pct_computed:.1f}%, "
        f"{within_band}/46 within 5pp (outliers: {off_rows})",
    )


def test_criterion_05_oracle_equivalence(default_catalog_text):
    rng = random.Random(0x5EED)
    catalog = default_catalog()
    space = compose_space(catalog)
    start = time.perf_counter()
    for _ in range(100):
        w = _random_weights(rng)
        expected = brute_force_select(default_catalog_text, w.w_p, w.w_t, w.w_r)
        report = select_in_space(space, w)
        assert report.best.indices == expected["best"]
        assert report.worst.indices == expected["worst"]
        assert abs(report.esi_t - expected["esi_t"]) <= 1e-9 * abs(expected["esi_t"])
        assert {c.indices for c in report.eligible} == expected["eligible_indices"]
    elapsed = time.perf_counter() - start
    _report(5, elapsed < 1.0, f"100 weight vectors in {elapsed:.3f}s")


def _random_catalog(rng: random.Random) -> MetricCatalog:
    def entries(algo_class, count):
        return tuple(
            AlgorithmMetrics(
                name=f"{algo_class.value[:3]}{i}",
                algo_class=algo_class,
                power_mw=rng.uniform(1e-3, 5000.0),
                throughput_gbps=rng.uniform(1e-3, 60.0),
                slices=rng.randint(1, 60_000),
                critical_path_ns=rng.uniform(0.05, 30.0),
            )
            for i in range(count)
        )

    return MetricCatalog(
        encryption=entries(AlgorithmClass.ENCRYPTION, rng.randint(1, 6)),
        hash=entries(AlgorithmClass.HASH, rng.randint(1, 6)),
        key_exchange=entries(AlgorithmClass.KEY_EXCHANGE, rng.randint(1, 6)),
    )


def test_criterion_06_mean_threshold_identity():
    rng = random.Random(0xA11CE)
    worst_rel = 0.0
    for _ in range(100):
        catalog = _random_catalog(rng)
        weights = _random_weights(rng)
        space = compose_space(catalog)
        threshold = esi_threshold(space, weights)
        mean = sum(esi(c, space, weights) for c in space.cells) / space.size
        worst_rel = max(worst_rel, abs(threshold - mean) / abs(mean))
        assert abs(threshold - mean) <= 1e-9 * abs(mean)
        assert select_in_space(space, weights).eligible
    _report(6, True, f"100 catalogs, worst relative gap {worst_rel:.2e}")


def test_criterion_07_scale_invariance():
    rng = random.Random(0x5CA1E)
    space = compose_space(default_catalog())
    X = space.metric_matrix()
    checks = 0
    for _ in range(34):
        for column in range(3):
            c = 10.0 ** rng.uniform(-3.0, 3.0)
            weights = _random_weights(rng)
            scorer = EsiScorer(*weights.as_tuple())
            base = scorer.fit(X).score_samples(X)
            base_eligible = base >= scorer.threshold_
            scaled = X.copy()
            scaled[:, column] *= c
            scorer_scaled = EsiScorer(*weights.as_tuple())
            new = scorer_scaled.fit(scaled).score_samples(scaled)
            assert (abs(new - base) <= 1e-9).all()
            assert ((new >= scorer_scaled.threshold_) == base_eligible).all()
            assert new.argmax() == base.argmax() and new.argmin() == base.argmin()
            checks += 1
    _report(7, True, f"{checks} scaled spaces, c in [1e-3, 1e3]")


def test_criterion_08_topology_ordering():
    rng = random.Random(0xF16)
    start = time.perf_counter()
    violations = []
    for k in range(1, 9):
        for _ in range(50):
            base = SimConfig(
                topology=Topology.DUAL_INTERFACE,
                packet_size=rng.randint(64, 1 << 16),
                n_forward_packets=k,
                n_reverse_packets=k,
                bus_bandwidth=rng.uniform(0.05, 20.0),
                suite_throughput=rng.uniform(0.05, 20.0),
                dma_setup=rng.randint(0, 50),
            )
            dual = run_simulation(base).makespan
            split = run_simulation(
                replace(base, topology=Topology.SPLIT_BUS_SINGLE_PCI)
            ).makespan
            shared = run_simulation(
                replace(base, topology=Topology.SHARED_BIDIRECTIONAL_BUS)
            ).makespan
            if not (dual <= split <= shared):
                violations.append((k, dual, split, shared))
            if k >= 2 and not dual < shared:
                violations.append((k, dual, split, shared))
    elapsed = time.perf_counter() - start
    ok = not violations and elapsed < 10.0
    _report(8, ok, f"400 workloads in {elapsed:.2f}s, violations: {violations[:3]}")


def test_criterion_09_simulator_invariant_fuzz():
    rng = random.Random(0xFACADE)
    start = time.perf_counter()
    for _ in range(1000):
        config = SimConfig(
            topology=rng.choice(list(Topology)),
            packet_size=rng.randint(1, 1 << 16),
            n_forward_packets=rng.randint(0, 6),
            n_reverse_packets=rng.randint(0, 6),
            bus_bandwidth=rng.uniform(0.01, 64.0),
            suite_throughput=rng.uniform(0.01, 64.0),
            dma_setup=rng.randint(0, 100),
            reconfig_delay=rng.choice((0, 0, rng.randint(0, 5000))),
            key_exchange_delay=rng.choice((0, 0, rng.randint(0, 5000))),
        )
        assert_invariants(run_simulation(config))
    elapsed = time.perf_counter() - start
    _report(9, elapsed < 30.0, f"1000 fuzzed configs in {elapsed:.2f}s")


def test_criterion_10_trivial_pipeline():
    results = {}
    for topology in Topology:
        config = SimConfig(
            topology=topology,
            packet_size=1024,
            n_forward_packets=1,
            n_reverse_packets=0,
            bus_bandwidth=1.0,
            suite_throughput=1.0,
        )
        results[topology.value] = run_simulation(config).makespan
    ok = all(m == 5 * 1024 for m in results.values())
    _report(10, ok, f"makespans {sorted(set(results.values()))} vs expected 5120")
