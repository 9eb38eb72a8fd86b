import random

import pytest

from gatesimp.core import Circuit, GateKind
from gatesimp.formats import write_bench
from gatesimp.rewrite import (RewriteConfig, dying_gate_count, simplify,
                              subcircuit_truth_triple, window_tables)
from gatesimp.principal import principal_subcircuits

from conftest import random_circuit
from test_core import full_adder


def test_full_adder_shrinks_to_five(bench_db5):
    c = full_adder()
    report = simplify(c, RewriteConfig(database=bench_db5))
    assert report.initial_size == 7
    assert report.final_size == c.size == 5
    assert [t.bits for t in c.truth_tables()] == [0x96, 0xE8]
    assert report.iterations[0].gates_saved == 2
    assert report.iterations[1].gates_saved == 0  # converged


def test_minimal_circuit_unchanged(bench_db5):
    c = Circuit("BENCH")
    a, b = c.add_input(), c.add_input()
    g = c.add_gate(GateKind.AND, [a, b])
    c.add_output(g)
    text = write_bench(c)
    simplify(c, RewriteConfig(database=bench_db5, iterations=1))
    assert write_bench(c) == text


def test_window_tables_cover_closure():
    rng = random.Random(2)
    for _ in range(20):
        c = random_circuit(rng, "BENCH", n_gates=15)
        for sub in principal_subcircuits(c, 3):
            vals = window_tables(c, sub)
            assert set(sub.closure) <= set(vals)
            triple = subcircuit_truth_triple(c, sub)
            assert len(triple) == len(sub.outputs)
            assert all(0 <= t <= 255 for t in triple)
            assert dying_gate_count(c, sub) >= 0


def test_simplify_preserves_function_random(bench_db3, aig_db3):
    rng = random.Random(12)
    for _ in range(40):
        basis = rng.choice(["BENCH", "AIG"])
        db = aig_db3 if basis == "AIG" else bench_db3
        c = random_circuit(rng, basis, n_gates=rng.randint(5, 35))
        before = [t.bits for t in c.truth_tables()]
        report = simplify(c, RewriteConfig(database=db))
        c.validate()
        assert [t.bits for t in c.truth_tables()] == before
        assert report.final_size <= report.initial_size


def test_simplify_never_grows_and_is_deterministic(bench_db3):
    rng = random.Random(13)
    for _ in range(10):
        c = random_circuit(rng, "BENCH", n_gates=25)
        c2 = c.copy()
        r1 = simplify(c, RewriteConfig(database=bench_db3))
        r2 = simplify(c2, RewriteConfig(database=bench_db3))
        assert write_bench(c) == write_bench(c2)
        assert r1.format() == r2.format()


def test_iteration_limit_respected(bench_db3):
    rng = random.Random(14)
    c = random_circuit(rng, "BENCH", n_gates=30)
    report = simplify(c, RewriteConfig(database=bench_db3, iterations=1))
    assert len(report.iterations) == 1


def test_bad_config_rejected(bench_db3):
    with pytest.raises(Exception):
        RewriteConfig(database=bench_db3, iterations=0)
