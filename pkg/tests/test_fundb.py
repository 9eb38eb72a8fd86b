import io
import itertools
import random

import pytest

from gatesimp import fundb
from gatesimp.canon import FULL, PROJECTIONS, canonicalize
from gatesimp.core import Circuit, GateKind

from conftest import random_circuit


def _frag_tables(frag):
    # after lookup, fragment.circuit.outputs mirror the query order
    return tuple(t.bits for t in frag.circuit.truth_tables())


def test_db_stats_cap3(bench_db3, aig_db3):
    assert {s: (r["classes"], r["functions"])
            for s, r in fundb.db_stats(bench_db3).items()} == \
        {2: (45, 396), 3: (659, 12480)}
    assert {s: (r["classes"], r["functions"])
            for s, r in fundb.db_stats(aig_db3).items()} == {3: (51, 11840)}


def test_lookup_identity_full_adder(bench_db3, bench_db5):
    # (s, c) of a full adder needs 5 gates; absent at cap 3
    assert fundb.lookup(bench_db3, (0x96, 0xE8)) is None
    res = fundb.lookup(bench_db5, (0x96, 0xE8))
    assert res is not None and res.fragment.size == 5


def test_lookup_projection_and_constant_outputs(bench_db3):
    res = fundb.lookup(bench_db3, (PROJECTIONS[1], 0x00, 0xFF))
    assert res is not None and res.fragment.size == 0
    assert _frag_tables(res.fragment) == (PROJECTIONS[1], 0x00, 0xFF)


def test_lookup_duplicate_outputs_collapse(bench_db3):
    t = 0x96  # XOR3
    res = fundb.lookup(bench_db3, (t, t, t))
    assert res is not None
    got = _frag_tables(res.fragment)
    assert got == (t, t, t)


@pytest.mark.parametrize("basis", ["BENCH", "AIG"])
def test_random_lookups_realize_query(basis, bench_db3, aig_db3):
    db = aig_db3 if basis == "AIG" else bench_db3
    rng = random.Random(99)
    hits = 0
    for _ in range(400):
        tables = tuple(rng.randrange(256) for _ in range(rng.randint(1, 3)))
        res = fundb.lookup(db, tables)
        if res is None:
            continue
        hits += 1
        assert _frag_tables(res.fragment) == tables
        assert res.fragment.circuit.basis == basis
        res.fragment.circuit.validate()
    assert hits > 50


def test_lookup_miss_returns_none(bench_db3):
    # XOR3 pair with an unrelated dense function needs more than 3 gates
    assert fundb.lookup(bench_db3, (0x96, 0xE8, 0x1E)) is None


def test_fragment_sizes_are_minimal_at_cap(bench_db5):
    # lookup of any single BENCH gate function must cost at most 1 gate
    for t in (0x88, 0xEE, 0x66, 0x77, 0x11, 0x99):
        res = fundb.lookup(bench_db5, (t,))
        assert res is not None and res.fragment.size <= 1


def test_save_load_roundtrip(bench_db3):
    buf = io.BytesIO()
    fundb.save_db(bench_db3, buf)
    buf.seek(0)
    again = fundb.load_db(buf)
    assert again.basis == bench_db3.basis and again.cap == bench_db3.cap
    assert fundb.db_stats(again) == fundb.db_stats(bench_db3)
    for k in (1, 2, 3):
        assert set(again.sections[k]) == set(bench_db3.sections[k])


def test_save_is_deterministic(bench_db3):
    b1, b2 = io.BytesIO(), io.BytesIO()
    fundb.save_db(bench_db3, b1)
    fundb.save_db(bench_db3, b2)
    assert b1.getvalue() == b2.getvalue()


def test_load_rejects_corruption(bench_db3):
    buf = io.BytesIO()
    fundb.save_db(bench_db3, buf)
    data = bytearray(buf.getvalue())
    with pytest.raises(fundb.DbFormatError):
        fundb.load_db(io.BytesIO(b"junk" + bytes(data)))


def test_build_zero_cap_is_empty():
    db = fundb.build_database("BENCH", 0)
    assert fundb.db_stats(db) == {}


def test_build_python_fallback_matches_kernel_counts():
    if not fundb.HAVE_KERNELS:
        pytest.skip("compiled kernels unavailable")
    a = fundb.build_database("AIG", 3)
    b = fundb.build_database("AIG", 3, force_python=True)
    assert fundb.db_stats(a) == fundb.db_stats(b)
    for k in (1, 2, 3):
        assert set(a.sections[k]) == set(b.sections[k])
