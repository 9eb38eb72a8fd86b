import itertools
import random

from gatesimp.core import Circuit, GateKind
from gatesimp.principal import (brute_force_s_sets, closure,
                                dependency_degree, principal_subcircuits,
                                s_sets)

from conftest import random_circuit


def two_layer_example():
    """x5=AND(x1,x2), x6=OR(x1,x2), x7=AND(x3,x4), x8=AND(x5,x6),
    x9=AND(x5,x7); names map to ids for readable assertions."""
    c = Circuit("BENCH")
    ids = {}
    for i in range(1, 5):
        ids[i] = c.add_input(f"x{i}")
    ids[5] = c.add_gate(GateKind.AND, [ids[1], ids[2]])
    ids[6] = c.add_gate(GateKind.OR, [ids[1], ids[2]])
    ids[7] = c.add_gate(GateKind.AND, [ids[3], ids[4]])
    ids[8] = c.add_gate(GateKind.AND, [ids[5], ids[6]])
    ids[9] = c.add_gate(GateKind.AND, [ids[5], ids[7]])
    c.add_output(ids[8])
    c.add_output(ids[9])
    return c, ids


def as_names(ids, sets):
    rev = {v: k for k, v in ids.items()}
    return {frozenset(rev[g] for g in s) for s in sets}


def test_closure_example():
    c, ids = two_layer_example()
    cl = closure(c, {ids[1], ids[2]})
    assert as_names(ids, [cl]) == {frozenset({1, 2, 5, 6, 8})}
    assert closure(c, {ids[5], ids[6]}) == {ids[5], ids[6], ids[8]}


def test_dependency_degree_example():
    c, ids = two_layer_example()
    assert dependency_degree(c, ids[9], {ids[1], ids[2], ids[7]}) == 3
    assert dependency_degree(c, ids[8], {ids[1], ids[2]}) == 2


def test_s_sets_example():
    c, ids = two_layer_example()
    r = s_sets(c)
    assert as_names(ids, r.s2[ids[8]]) == {frozenset({1, 2}),
                                           frozenset({5, 6})}
    assert as_names(ids, r.s3[ids[9]]) == {frozenset({1, 2, 7}),
                                           frozenset({5, 3, 4})}
    assert not r.flagged


def test_principal_subcircuits_example():
    c, ids = two_layer_example()
    subs = principal_subcircuits(c, 3)
    closures = as_names(ids, [s.closure for s in subs])
    assert frozenset({1, 2, 5, 6, 7, 8, 9}) in closures
    assert frozenset({3, 4, 5, 7, 9}) in closures


def brute_closure(circuit, X):
    """Oracle: gate in g(X) iff every input-ascending path crosses X."""
    X = set(X)
    memo = {}

    def ok(v):
        if v in memo:
            return memo[v]
        if v in X:
            memo[v] = True
            return True
        g = circuit.gate(v)
        if g.kind is GateKind.INPUT:
            memo[v] = False
            return False
        if g.kind in (GateKind.CONST0, GateKind.CONST1):
            memo[v] = True
            return True
        memo[v] = all(ok(o) for o, _n in g.operands)
        return memo[v]

    return {v for v in circuit.topo_order() if ok(v)}


def test_closure_matches_path_oracle():
    rng = random.Random(5)
    for _ in range(60):
        c = random_circuit(rng, rng.choice(["BENCH", "AIG"]),
                           n_gates=rng.randint(4, 18))
        pool = list(c.topo_order())
        X = set(rng.sample(pool, min(len(pool), rng.randint(1, 3))))
        assert closure(c, X) == brute_closure(c, X)


def assert_s_sets_agree(fast, brute):
    # flagged gates had their candidate list trimmed by the cap; they are
    # excluded from principality claims, so only subset-ness is promised
    for attr in ("s2", "s3"):
        f, b = getattr(fast, attr), getattr(brute, attr)
        assert set(f) == set(b)
        for g in f:
            if g in fast.flagged:
                assert set(f[g]) <= set(b[g])
            else:
                assert sorted(f[g]) == sorted(b[g]), (attr, g)


def test_s_sets_match_brute_force_random():
    rng = random.Random(6)
    for _ in range(120):
        c = random_circuit(rng, rng.choice(["BENCH", "AIG"]),
                           n_gates=rng.randint(3, 22))
        assert_s_sets_agree(s_sets(c), brute_force_s_sets(c))


def test_principal_count_bound():
    rng = random.Random(8)
    for _ in range(150):
        c = random_circuit(rng, rng.choice(["BENCH", "AIG"]),
                           n_gates=rng.randint(1, 40))
        subs = principal_subcircuits(c, 3)
        assert len(subs) <= 2 * c.size


def test_windows_have_valid_interfaces():
    rng = random.Random(9)
    for _ in range(40):
        c = random_circuit(rng, "BENCH", n_gates=20)
        for sub in principal_subcircuits(c, 3):
            assert len(sub.inputs) == 3
            assert set(sub.inputs) <= sub.closure
            assert sub.anchor in sub.closure
            assert not sub.stale(c)
            out_set = {o for o, _n in c.outputs}
            for g in sub.outputs:
                assert g in sub.closure and g not in sub.inputs
                assert g in out_set or \
                    any(u not in sub.closure for u in c.fanout(g))
