"""Circuit data model: gates, wires, topological order, simulation.

A Circuit is a DAG of typed gates.  Two bases are supported:

* BENCH: gates NOT/AND/OR/XOR/NAND/NOR/NXOR, no edge negations.
* AIG: gates are binary ANDs only; negations live on edges and outputs.

Truth tables use the fixed convention that bit b of a table holds the
value of the function on the assignment where x1 is bit 0 of b, x2 is
bit 1, and so on (x1 least significant).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional


class GateKind(enum.Enum):
    INPUT = "INPUT"
    CONST0 = "CONST0"
    CONST1 = "CONST1"
    NOT = "NOT"
    AND = "AND"
    OR = "OR"
    XOR = "XOR"
    NAND = "NAND"
    NOR = "NOR"
    NXOR = "NXOR"


ARITY = {
    GateKind.INPUT: 0,
    GateKind.CONST0: 0,
    GateKind.CONST1: 0,
    GateKind.NOT: 1,
    GateKind.AND: 2,
    GateKind.OR: 2,
    GateKind.XOR: 2,
    GateKind.NAND: 2,
    GateKind.NOR: 2,
    GateKind.NXOR: 2,
}

# kinds that count toward circuit size
_LOGIC_KINDS = frozenset(
    k for k in GateKind if k not in (GateKind.INPUT, GateKind.CONST0, GateKind.CONST1)
)

# negated twin of each binary kind (used to realize free output negation)
NEGATED_TWIN = {
    GateKind.AND: GateKind.NAND,
    GateKind.NAND: GateKind.AND,
    GateKind.OR: GateKind.NOR,
    GateKind.NOR: GateKind.OR,
    GateKind.XOR: GateKind.NXOR,
    GateKind.NXOR: GateKind.XOR,
}

COMMUTATIVE = frozenset(
    (GateKind.AND, GateKind.OR, GateKind.XOR, GateKind.NAND, GateKind.NOR, GateKind.NXOR)
)


def _eval_kind(kind: GateKind, vals) -> int:
    if kind is GateKind.NOT:
        return vals[0] ^ 1
    a, b = vals
    if kind is GateKind.AND:
        return a & b
    if kind is GateKind.OR:
        return a | b
    if kind is GateKind.XOR:
        return a ^ b
    if kind is GateKind.NAND:
        return (a & b) ^ 1
    if kind is GateKind.NOR:
        return (a | b) ^ 1
    if kind is GateKind.NXOR:
        return (a ^ b) ^ 1
    raise ValueError(f"not a logic kind: {kind}")


def eval_kind_wide(kind: GateKind, vals, mask: int) -> int:
    """Evaluate a gate kind over bit-parallel operand words under `mask`."""
    if kind is GateKind.NOT:
        return vals[0] ^ mask
    a, b = vals
    if kind is GateKind.AND:
        return a & b
    if kind is GateKind.OR:
        return a | b
    if kind is GateKind.XOR:
        return a ^ b
    if kind is GateKind.NAND:
        return (a & b) ^ mask
    if kind is GateKind.NOR:
        return (a | b) ^ mask
    if kind is GateKind.NXOR:
        return (a ^ b) ^ mask
    raise ValueError(f"not a logic kind: {kind}")


@dataclass
class Gate:
    id: int
    kind: GateKind
    operands: list  # list of (gate id, negated: bool)
    version: int = 0


@dataclass
class TruthTable:
    n: int
    bits: int

    def value(self, assignment: int) -> int:
        return (self.bits >> assignment) & 1

    def __eq__(self, other):
        return isinstance(other, TruthTable) and (self.n, self.bits) == (other.n, other.bits)

    def __hash__(self):
        return hash((self.n, self.bits))


class CircuitError(Exception):
    pass


DEFAULT_EXHAUSTIVE_CAP = 20


class Circuit:
    """Mutable gate DAG.  Single-writer; read-only queries are pure."""

    def __init__(self, basis: str = "BENCH", name: str = ""):
        basis = basis.upper()
        if basis not in ("AIG", "BENCH"):
            raise CircuitError(f"unknown basis {basis!r}")
        self.basis = basis
        self.name = name
        self._gates: dict[int, Gate] = {}
        self._free_ids: list[int] = []
        self._next_id = 0
        self._mutation = 0
        self.inputs: list[int] = []
        self.outputs: list[tuple[int, bool]] = []
        self._names: dict[int, str] = {}
        self._ids_by_name: dict[str, int] = {}
        self._fanout: dict[int, set[int]] = {}
        self._topo_cache: Optional[list[int]] = None
        self.exhaustive_cap = DEFAULT_EXHAUSTIVE_CAP

    # -- basic access -------------------------------------------------

    def _bump(self) -> int:
        # Monotonic mutation stamp: gate ids are recycled, so version
        # snapshots must never repeat within one circuit's lifetime.
        self._mutation += 1
        return self._mutation

    def gate(self, gid: int) -> Gate:
        try:
            return self._gates[gid]
        except KeyError:
            raise CircuitError(f"no gate with id {gid}") from None

    def gates(self) -> Iterable[Gate]:
        return self._gates.values()

    def gate_ids(self):
        return self._gates.keys()

    def __contains__(self, gid: int) -> bool:
        return gid in self._gates

    def __len__(self):
        return len(self._gates)

    @property
    def size(self) -> int:
        """Number of logic gates (excludes inputs and constants)."""
        return sum(1 for g in self._gates.values() if g.kind in _LOGIC_KINDS)

    def set_name(self, gid: int, name: str) -> None:
        self.gate(gid)
        old = self._names.get(gid)
        if old is not None:
            self._ids_by_name.pop(old, None)
        if name in self._ids_by_name and self._ids_by_name[name] != gid:
            raise CircuitError(f"name {name!r} already bound")
        self._names[gid] = name
        self._ids_by_name[name] = gid

    def name_of(self, gid: int) -> Optional[str]:
        return self._names.get(gid)

    def id_by_name(self, name: str) -> Optional[int]:
        return self._ids_by_name.get(name)

    def fanout(self, gid: int) -> set:
        return self._fanout.get(gid, set())

    # -- construction -------------------------------------------------

    def add_gate(self, kind: GateKind, operands=()) -> int:
        operands = [op if isinstance(op, tuple) else (op, False) for op in operands]
        if len(operands) != ARITY[kind]:
            raise CircuitError(
                f"{kind.value} takes {ARITY[kind]} operand(s), got {len(operands)}"
            )
        for oid, neg in operands:
            if oid not in self._gates:
                raise CircuitError(f"dangling operand id {oid}")
            if neg and self.basis != "AIG":
                raise CircuitError("negated operands are only legal in AIG mode")
        if self.basis == "AIG" and kind in (
            GateKind.OR, GateKind.XOR, GateKind.NAND, GateKind.NOR,
            GateKind.NXOR, GateKind.NOT,
        ):
            raise CircuitError(f"{kind.value} gate is not part of the AIG basis")
        gid = self._free_ids.pop() if self._free_ids else self._next_id
        if gid == self._next_id:
            self._next_id += 1
        gate = Gate(gid, kind, operands, self._bump())
        self._gates[gid] = gate
        self._fanout[gid] = set()
        for oid, _neg in operands:
            self._fanout[oid].add(gid)
        if kind is GateKind.INPUT:
            self.inputs.append(gid)
        self._topo_cache = None
        return gid

    def add_input(self, name: Optional[str] = None) -> int:
        gid = self.add_gate(GateKind.INPUT)
        if name is not None:
            self.set_name(gid, name)
        return gid

    def add_output(self, gid: int, negated: bool = False) -> None:
        self.gate(gid)
        if negated and self.basis != "AIG":
            raise CircuitError("negated outputs are only legal in AIG mode")
        self.outputs.append((gid, negated))

    def remove_gate(self, gid: int) -> None:
        """Remove an unreferenced non-input gate."""
        gate = self.gate(gid)
        if self._fanout.get(gid):
            raise CircuitError(f"gate {gid} still has consumers")
        if any(o == gid for o, _ in self.outputs):
            raise CircuitError(f"gate {gid} is an output")
        if gate.kind is GateKind.INPUT:
            raise CircuitError("inputs are never removed")
        for oid, _neg in gate.operands:
            self._fanout[oid].discard(gid)
        del self._gates[gid]
        del self._fanout[gid]
        name = self._names.pop(gid, None)
        if name is not None:
            self._ids_by_name.pop(name, None)
        self._free_ids.append(gid)
        self._topo_cache = None

    # -- topological order --------------------------------------------

    def topo_order(self) -> list:
        if self._topo_cache is not None:
            return self._topo_cache
        order: list[int] = []
        state: dict[int, int] = {}  # 0 unseen / 1 on stack / 2 done
        for root in self._gates:
            if state.get(root):
                continue
            stack = [(root, False)]
            while stack:
                gid, processed = stack.pop()
                if processed:
                    state[gid] = 2
                    order.append(gid)
                    continue
                st = state.get(gid, 0)
                if st == 2:
                    continue
                if st == 1:
                    raise CircuitError("cycle detected")
                state[gid] = 1
                stack.append((gid, True))
                for oid, _neg in self._gates[gid].operands:
                    if state.get(oid, 0) == 0:
                        stack.append((oid, False))
                    elif state.get(oid) == 1:
                        raise CircuitError("cycle detected")
        self._topo_cache = order
        return order

    def _would_cycle(self, start: int, target: int) -> bool:
        """True if `target` is reachable downstream from `start` via fanout."""
        if start == target:
            return True
        seen = {start}
        stack = [start]
        while stack:
            gid = stack.pop()
            for succ in self._fanout.get(gid, ()):
                if succ == target:
                    return True
                if succ not in seen:
                    seen.add(succ)
                    stack.append(succ)
        return False

    # -- mutation -----------------------------------------------------

    def replace_fanin(self, old: int, new: int) -> None:
        """Point every consumer of `old` (and the outputs list) at `new`.

        Negation flags on edges are preserved.  Raises if the rewiring
        would create a cycle.
        """
        self.gate(old)
        self.gate(new)
        if old == new:
            return
        if self._fanout.get(old) and self._would_cycle(old, new):
            # `new` lies downstream of `old`, so some consumer of `old`
            # sits on a path old ->* new; pointing it at `new` would make
            # `new` depend on its own consumer
            raise CircuitError("replace_fanin would create a cycle")
        for cid in list(self._fanout.get(old, ())):
            consumer = self._gates[cid]
            consumer.operands = [
                (new if oid == old else oid, neg) for oid, neg in consumer.operands
            ]
            consumer.version = self._bump()
            self._fanout[old].discard(cid)
            self._fanout[new].add(cid)
        self.outputs = [
            (new if oid == old else oid, neg) for oid, neg in self.outputs
        ]
        self._gates[old].version = self._bump()
        self._gates[new].version = self._bump()
        self._topo_cache = None

    # -- evaluation ---------------------------------------------------

    def simulate(self, assignment) -> list:
        """Evaluate the circuit on one input assignment (bit per input)."""
        if len(assignment) != len(self.inputs):
            raise CircuitError(
                f"assignment length {len(assignment)} != input count {len(self.inputs)}"
            )
        vals = self._simulate_wide(
            {gid: int(bit) for gid, bit in zip(self.inputs, assignment)}, mask=1
        )
        return [vals[oid] ^ int(neg) for oid, neg in self.outputs]

    def _simulate_wide(self, input_words: dict, mask: int) -> dict:
        vals: dict[int, int] = {}
        for gid in self.topo_order():
            gate = self._gates[gid]
            if gate.kind is GateKind.INPUT:
                vals[gid] = input_words[gid] & mask
            elif gate.kind is GateKind.CONST0:
                vals[gid] = 0
            elif gate.kind is GateKind.CONST1:
                vals[gid] = mask
            else:
                ops = [vals[oid] ^ (mask if neg else 0) for oid, neg in gate.operands]
                vals[gid] = eval_kind_wide(gate.kind, ops, mask)
        return vals

    def truth_tables(self) -> list:
        """One TruthTable per output, computed bit-parallel over all 2^n rows."""
        n = len(self.inputs)
        if n > self.exhaustive_cap:
            raise CircuitError(f"{n} inputs exceeds exhaustive cap {self.exhaustive_cap}")
        rows = 1 << n
        mask = (1 << rows) - 1
        words = {}
        for i, gid in enumerate(self.inputs):
            # bit b of the word = value of x_{i+1} on assignment b
            period = 1 << (i + 1)
            half = 1 << i
            chunk = ((1 << half) - 1) << half
            word = 0
            for base in range(0, rows, period):
                word |= chunk << base
            words[gid] = word
        vals = self._simulate_wide(words, mask)
        return [
            TruthTable(n, (vals[oid] ^ (mask if neg else 0)) & mask)
            for oid, neg in self.outputs
        ]

    # -- queries ------------------------------------------------------

    def reachable_from_outputs(self) -> set:
        seen = set()
        stack = [oid for oid, _ in self.outputs]
        while stack:
            gid = stack.pop()
            if gid in seen:
                continue
            seen.add(gid)
            for oid, _neg in self._gates[gid].operands:
                if oid not in seen:
                    stack.append(oid)
        return seen

    def validate(self) -> None:
        """Full structural recheck; raises CircuitError on any violation."""
        for gid, gate in self._gates.items():
            if gate.id != gid:
                raise CircuitError(f"gate {gid} carries id {gate.id}")
            if len(gate.operands) != ARITY[gate.kind]:
                raise CircuitError(f"gate {gid}: arity mismatch for {gate.kind.value}")
            for oid, neg in gate.operands:
                if oid not in self._gates:
                    raise CircuitError(f"gate {gid}: dangling operand {oid}")
                if neg and self.basis != "AIG":
                    raise CircuitError(f"gate {gid}: edge negation outside AIG mode")
        for gid in self.inputs:
            if self.gate(gid).kind is not GateKind.INPUT:
                raise CircuitError(f"inputs list references non-INPUT gate {gid}")
        for gid, gate in self._gates.items():
            if gate.kind is GateKind.INPUT and gid not in self.inputs:
                raise CircuitError(f"INPUT gate {gid} missing from inputs list")
        for oid, neg in self.outputs:
            if oid not in self._gates:
                raise CircuitError(f"output references missing gate {oid}")
            if neg and self.basis != "AIG":
                raise CircuitError("negated output outside AIG mode")
        self.topo_order()  # raises on cycles
        # fanout map consistency
        for gid, gate in self._gates.items():
            for oid, _neg in gate.operands:
                if gid not in self._fanout[oid]:
                    raise CircuitError(f"fanout map missing edge {oid}->{gid}")

    def copy(self) -> "Circuit":
        c = Circuit(self.basis, self.name)
        c._next_id = self._next_id
        c._free_ids = list(self._free_ids)
        c._mutation = self._mutation
        c._gates = {
            gid: Gate(g.id, g.kind, list(g.operands), g.version)
            for gid, g in self._gates.items()
        }
        c.inputs = list(self.inputs)
        c.outputs = list(self.outputs)
        c._names = dict(self._names)
        c._ids_by_name = dict(self._ids_by_name)
        c._fanout = {gid: set(s) for gid, s in self._fanout.items()}
        c.exhaustive_cap = self.exhaustive_cap
        return c
