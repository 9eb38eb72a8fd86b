import random

import pytest

from gatesimp.core import Circuit, GateKind
from gatesimp.formats import (ParseError, read_aiger, read_bench,
                              write_aiger_ascii, write_bench)

from conftest import random_circuit


BENCH_TEXT = """\
# full adder
INPUT(x1)
INPUT(x2)
INPUT(x3)
OUTPUT(s)
OUTPUT(c)
t = XOR(x1, x2)
s = XOR(t, x3)
p = AND(x1, x2)
q = AND(x1, x3)
r = AND(x2, x3)
u = OR(p, q)
c = OR(u, r)
"""


def test_read_bench_full_adder():
    c = read_bench(BENCH_TEXT)
    assert len(c.inputs) == 3 and len(c.outputs) == 2 and c.size == 7
    assert [t.bits for t in c.truth_tables()] == [0x96, 0xE8]


def test_bench_roundtrip_preserves_function():
    rng = random.Random(3)
    for _ in range(30):
        c = random_circuit(rng, "BENCH")
        d = read_bench(write_bench(c))
        assert [t.bits for t in d.truth_tables()] == \
            [t.bits for t in c.truth_tables()]


def test_aiger_ascii_roundtrip_preserves_function():
    rng = random.Random(4)
    for _ in range(30):
        c = random_circuit(rng, "AIG")
        d = read_aiger(write_aiger_ascii(c).encode())
        assert [t.bits for t in d.truth_tables()] == \
            [t.bits for t in c.truth_tables()]


def test_read_bench_diagnostics():
    with pytest.raises(ParseError):
        read_bench("g = AND(a, b)\n")  # undefined operands
    with pytest.raises(ParseError):
        read_bench("INPUT(x)\ng = FROB(x, x)\n")
    with pytest.raises(ParseError):
        read_bench("INPUT(x)\nOUTPUT(y)\n")  # y never defined


def test_read_aiger_rejects_garbage():
    with pytest.raises(ParseError):
        read_aiger(b"not an aiger file")


def test_bench_constants_roundtrip():
    c = Circuit("BENCH")
    x = c.add_input("x")
    k = c.add_gate(GateKind.CONST1)
    g = c.add_gate(GateKind.AND, [x, k])
    c.add_output(g)
    d = read_bench(write_bench(c))
    assert [t.bits for t in d.truth_tables()] == [0b10]
