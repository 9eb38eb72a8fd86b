import itertools

import pytest

from gatesimp import benchgen as bg
from gatesimp.core import CircuitError


def sat(c):
    n = len(c.inputs)
    return any(c.simulate(v)[0]
               for v in itertools.product((0, 1), repeat=n))


def value(bits):
    return sum(b << i for i, b in enumerate(bits))


@pytest.mark.parametrize("n", [1, 2, 3, 5, 7])
def test_gen_sum_popcount(n):
    c = bg.gen_sum(n)
    assert len(c.outputs) == max(1, n.bit_length())
    for v in itertools.product((0, 1), repeat=n):
        assert value(c.simulate(v)) == sum(v)


def test_gen_sum_pinned_sizes():
    assert bg.gen_sum(1).size == 0  # identity wire
    c = bg.gen_sum(3)  # a full adder
    assert c.size == 5
    assert [t.bits for t in c.truth_tables()] == [0x96, 0xE8]
    for n in (2, 4, 6, 9):
        assert bg.gen_sum(n).size <= 5 * n


@pytest.mark.parametrize("n", [1, 3, 5])
def test_threshold_circuits(n):
    for k in range(0, n + 2):
        cl, cm = bg.gen_atleast(n, k), bg.gen_atmost(n, k)
        for v in itertools.product((0, 1), repeat=n):
            assert cl.simulate(v)[0] == (sum(v) >= k)
            assert cm.simulate(v)[0] == (sum(v) <= k)


def test_threshold_rejects_bad_k():
    with pytest.raises(CircuitError):
        bg.gen_atleast(3, 5)
    with pytest.raises(CircuitError):
        bg.gen_atmost(3, -1)


def test_pigeonhole_grid():
    # satisfiable iff every pigeon fits: n <= m*k
    for n, m, k in itertools.product((1, 2, 3), (1, 2, 3), (1, 2)):
        if n * m > 9:
            continue
        assert sat(bg.gen_pigeonhole(n, m, k)) == (n <= m * k), (n, m, k)


def test_even_colouring():
    assert not sat(bg.gen_even_colouring("0 1\n1 2\n2 0"))  # odd |E|
    assert sat(bg.gen_even_colouring("0 1\n0 1"))
    # 4-cycle: even edge count, satisfiable
    assert sat(bg.gen_even_colouring("0 1\n1 2\n2 3\n3 0"))
    with pytest.raises(CircuitError):
        bg.gen_even_colouring("0 1")  # odd degrees


def test_clique():
    tri = "0 1\n1 2\n2 0"
    assert sat(bg.gen_clique(tri, 3))
    assert not sat(bg.gen_clique([], 2, n_vertices=3))
    # path graph has no triangle
    assert not sat(bg.gen_clique("0 1\n1 2", 3))
    with pytest.raises(CircuitError):
        bg.gen_clique(tri, 4)


def brute_clique(edges, k, n):
    present = {(min(u, v), max(u, v)) for u, v in edges}
    for sub in itertools.combinations(range(n), k):
        if all((a, b) in present for a, b in itertools.combinations(sub, 2)):
            return True
    return k == 0


def test_clique_random_graphs():
    import random
    rng = random.Random(77)
    for _ in range(15):
        n = rng.randint(3, 7)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.5]
        for k in (2, 3):
            c = bg.gen_clique(edges, k, n_vertices=n)
            assert sat(c) == brute_clique(edges, k, n)


def test_factorization_matches_primality():
    def prime(k):
        return k > 1 and all(k % d for d in range(2, k))
    for k in range(2, 65):
        assert sat(bg.gen_factorization(k)) == (not prime(k)), k


@pytest.mark.parametrize("method", ["schoolbook", "karatsuba"])
def test_multiplier_exhaustive(method):
    for n in (1, 2, 3, 4):
        c = bg.gen_multiplier(n, method)
        assert len(c.inputs) == 2 * n and len(c.outputs) == 2 * n
        for v in itertools.product((0, 1), repeat=2 * n):
            a, b = value(v[:n]), value(v[n:])
            assert value(c.simulate(v)) == a * b


def test_multiplier_n1_single_and():
    assert bg.gen_multiplier(1).size == 1


def test_miters_constant_zero():
    for fam, n in [("summation", 5), ("threshold", 4),
                   ("multiplication", 3)]:
        for basis in ("BENCH", "AIG"):
            m = bg.gen_miter_family(fam, n, basis)
            assert m.basis == basis
            assert all(t.bits == 0 for t in m.truth_tables()), (fam, basis)


def test_generated_circuits_validate():
    for c in [bg.gen_pigeonhole(2, 2, 1), bg.gen_clique("0 1", 2),
              bg.gen_factorization(12), bg.gen_multiplier(3, "karatsuba"),
              bg.gen_miter_family("summation", 4),
              bg.gen_even_colouring("0 1\n0 1")]:
        c.validate()


def test_parse_edge_list():
    edges = bg.parse_edge_list("# comment\n0 1\n\n2 3 # tail\n")
    assert edges == [(0, 1), (2, 3)]
