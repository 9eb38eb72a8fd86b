import itertools
import random

from hypothesis import given, settings, strategies as st

from gatesimp.canon import (AIG_INPUT_MAPS, BENCH_INPUT_MAPS, FULL,
                            PROJECTIONS, anchor, canon, canonicalize, fold,
                            orbit_size)

TABLES = st.integers(0, 255)


def test_projection_tables():
    # bit r of table = value on assignment r, inputs little-endian
    assert PROJECTIONS == (0xAA, 0xCC, 0xF0)
    for i, t in enumerate(PROJECTIONS):
        for row in range(8):
            assert (t >> row) & 1 == (row >> i) & 1


def test_fold_picks_smaller_complement():
    assert fold(0x00) == 0x00 and fold(0xFF) == 0x00
    assert fold(0x96) == 0x69 and fold(0x69) == 0x69


def test_anchor_clears_row_zero():
    for t in range(256):
        a = anchor(t)
        assert a & 1 == 0 and a in (t, t ^ FULL)


def test_input_map_counts():
    assert len(BENCH_INPUT_MAPS) == 6
    assert len(AIG_INPUT_MAPS) == 48


@settings(max_examples=200, deadline=None)
@given(st.lists(TABLES, min_size=1, max_size=3), st.integers(0, 10 ** 9))
def test_canon_invariant_under_class_transforms(tables, seed):
    rng = random.Random(seed)
    for basis, maps in (("BENCH", BENCH_INPUT_MAPS), ("AIG", AIG_INPUT_MAPS)):
        key = canon(tables, basis)
        _perm, _negmask, m = rng.choice(maps)
        mutated = [m[t] for t in tables]
        rng.shuffle(mutated)
        if basis == "BENCH":
            mutated = [t ^ (FULL if rng.random() < 0.5 else 0)
                       for t in mutated]
        else:
            # AIG canonicalization anchors output polarity instead
            mutated = [t ^ (FULL if rng.random() < 0.5 else 0)
                       for t in mutated]
        assert canon(mutated, basis) == key


@settings(max_examples=150, deadline=None)
@given(st.lists(TABLES, min_size=1, max_size=3))
def test_canonicalize_transform_reconstructs_query(tables):
    for basis in ("BENCH", "AIG"):
        key, tr = canonicalize(tables, basis)
        assert tr.apply(key) == tuple(tables)
        assert canon(tables, basis) == key


def test_orbit_size_single_tables():
    # one projection: orbit under BENCH group = all 6 projections/negations
    key = canon([0xAA], "BENCH")
    orbit = {canon([t], "BENCH") == key and t for t in range(256)}
    count = sum(1 for t in range(256) if canon([t], "BENCH") == key)
    assert orbit_size(key, "BENCH") == count


@settings(max_examples=60, deadline=None)
@given(st.lists(TABLES, min_size=1, max_size=2, unique=True))
def test_orbit_size_matches_enumeration_small(tables):
    # orbit = distinct k-element table *sets* reachable by input mapping
    # plus output negation (collapsing images lie outside the orbit)
    for basis in ("BENCH", "AIG"):
        key = canon(tables, basis)
        k = len(tables)
        maps = AIG_INPUT_MAPS if basis == "AIG" else BENCH_INPUT_MAPS
        seen = set()
        for _p, _n, m in maps:
            mapped = [m[t] for t in key]
            for negbits in range(1 << k):
                cand = frozenset(mapped[j] ^ (FULL if (negbits >> j) & 1
                                              else 0) for j in range(k))
                if len(cand) == k:
                    seen.add(cand)
        assert orbit_size(key, basis) == len(seen)
