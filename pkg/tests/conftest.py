import random

import pytest

from gatesimp import fundb
from gatesimp.core import Circuit, GateKind

BENCH_KINDS = (GateKind.AND, GateKind.OR, GateKind.XOR, GateKind.NAND,
               GateKind.NOR, GateKind.NXOR, GateKind.NOT)
AIG_KINDS = (GateKind.AND,)


@pytest.fixture(scope="session")
def bench_db3():
    return fundb.build_database("BENCH", 3)


@pytest.fixture(scope="session")
def aig_db3():
    return fundb.build_database("AIG", 3)


@pytest.fixture(scope="session")
def bench_db5():
    return fundb.build_database("BENCH", fundb.DEFAULT_CAP["BENCH"])


def random_circuit(rng: random.Random, basis: str = "BENCH",
                   n_inputs: int = None, n_gates: int = 12) -> Circuit:
    """Random connected-ish circuit; every gate id is a legal operand of
    later gates, outputs are a random non-empty selection."""
    c = Circuit(basis)
    if n_inputs is None:
        n_inputs = rng.randint(3, 6)
    ids = [c.add_input(f"x{i + 1}") for i in range(n_inputs)]
    kinds = AIG_KINDS if basis == "AIG" else BENCH_KINDS
    for _ in range(n_gates):
        kind = rng.choice(kinds)
        arity = 1 if kind is GateKind.NOT else 2
        ops = []
        for _ in range(arity):
            neg = basis == "AIG" and rng.random() < 0.3
            ops.append((rng.choice(ids), neg))
        ids.append(c.add_gate(kind, ops))
    gates = [g for g in ids if g not in c.inputs]
    n_out = rng.randint(1, min(3, len(gates)))
    for gid in rng.sample(gates, n_out):
        c.add_output(gid, basis == "AIG" and rng.random() < 0.3)
    return c
