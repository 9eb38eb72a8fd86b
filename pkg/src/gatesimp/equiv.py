"""Equivalence checking: miter construction, exhaustive/random
simulation verdicts, and Tseitin CNF export for external certification.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .core import Circuit, CircuitError, GateKind

DEFAULT_RANDOM_VECTORS = 100_000


def _copy_into(dst: Circuit, src: Circuit, input_map: dict) -> list:
    """Copy src's logic into dst reusing dst gates for src inputs.

    Returns [(gid in dst, negated)] per src output.  BENCH kinds are
    lowered to AND-with-negations when dst is an AIG.
    """
    mapping = {}  # src gid -> (dst gid, negated)
    for sid, did in input_map.items():
        mapping[sid] = (did, False)

    def emit_and(a, b):
        return dst.add_gate(GateKind.AND, [a, b])

    for gid in src.topo_order():
        gate = src.gate(gid)
        if gate.kind is GateKind.INPUT:
            if gid not in mapping:
                raise CircuitError("unmapped input")
            continue
        if gate.kind is GateKind.CONST0:
            mapping[gid] = (dst.add_gate(GateKind.CONST0), False)
            continue
        if gate.kind is GateKind.CONST1:
            if dst.basis == "AIG":
                mapping[gid] = (dst.add_gate(GateKind.CONST0), True)
            else:
                mapping[gid] = (dst.add_gate(GateKind.CONST1), False)
            continue
        ops = []
        for oid, neg in gate.operands:
            base, bneg = mapping[oid]
            ops.append((base, bneg ^ neg))
        if dst.basis != "AIG":
            # BENCH target: realize operand negation with NOT gates
            ops = [
                (dst.add_gate(GateKind.NOT, [o]) if n else o, False)
                for o, n in ops
            ]
            mapping[gid] = (dst.add_gate(gate.kind, [o for o, _n in ops]), False)
            continue
        # AIG target: lower each kind to ANDs + edge negations
        kind = gate.kind
        if kind is GateKind.NOT:
            o, n = ops[0]
            mapping[gid] = (o, not n)
            continue
        (a, an), (b, bn) = ops
        flip = kind in (GateKind.NAND, GateKind.NOR, GateKind.NXOR)
        base = {GateKind.NAND: GateKind.AND, GateKind.NOR: GateKind.OR,
                GateKind.NXOR: GateKind.XOR}.get(kind, kind)
        if base is GateKind.AND:
            g = emit_and((a, an), (b, bn))
            mapping[gid] = (g, flip)
        elif base is GateKind.OR:
            g = emit_and((a, not an), (b, not bn))
            mapping[gid] = (g, not flip)
        else:  # XOR(a,b) = ~(a & b) & ~(~a & ~b)
            p = emit_and((a, an), (b, bn))
            q = emit_and((a, not an), (b, not bn))
            g = emit_and((p, True), (q, True))
            mapping[gid] = (g, flip)
    outs = []
    for oid, neg in src.outputs:
        base, bneg = mapping[oid]
        outs.append((base, bneg ^ neg))
    return outs


def convert(circuit: Circuit, basis: str) -> Circuit:
    """Re-express a circuit in the requested basis, preserving all
    output truth tables (BENCH kinds lower to ANDs + edge negations;
    AND-graphs raise verbatim)."""
    basis = basis.upper()
    out = Circuit(basis, name=circuit.name)
    ins = []
    for gid in circuit.inputs:
        ins.append(out.add_input(circuit.name_of(gid)))
    for oid, neg in _copy_into(out, circuit, dict(zip(circuit.inputs, ins))):
        if neg and basis != "AIG":
            oid = out.add_gate(GateKind.NOT, [oid])
            neg = False
        out.add_output(oid, neg)
    return out


def miter(c1: Circuit, c2: Circuit, basis: Optional[str] = None) -> Circuit:
    """Single-output circuit computing OR over (y_i XOR z_i)."""
    if len(c1.inputs) != len(c2.inputs):
        raise CircuitError("input counts differ")
    if len(c1.outputs) != len(c2.outputs):
        raise CircuitError("output counts differ")
    basis = (basis or c1.basis).upper()
    m = Circuit(basis, name="miter")
    ins = [m.add_input(f"m{i+1}") for i in range(len(c1.inputs))]
    o1 = _copy_into(m, c1, dict(zip(c1.inputs, ins)))
    o2 = _copy_into(m, c2, dict(zip(c2.inputs, ins)))
    diffs = []
    for (a, an), (b, bn) in zip(o1, o2):
        if basis == "AIG":
            p = m.add_gate(GateKind.AND, [(a, an), (b, bn)])
            q = m.add_gate(GateKind.AND, [(a, not an), (b, not bn)])
            diffs.append((m.add_gate(GateKind.AND, [(p, True), (q, True)]), False))
        else:
            kind = GateKind.XOR if an == bn else GateKind.NXOR
            diffs.append((m.add_gate(kind, [a, b]), False))
    acc = diffs[0]
    for d in diffs[1:]:
        if basis == "AIG":
            acc = (m.add_gate(GateKind.AND, [(acc[0], not acc[1]),
                                             (d[0], not d[1])]), True)
        else:
            acc = (m.add_gate(GateKind.OR, [acc[0], d[0]]), False)
    m.add_output(acc[0], acc[1] if basis == "AIG" else False)
    return m


@dataclass
class EquivVerdict:
    status: str  # "equal" | "counterexample" | "inconclusive"
    counterexample: Optional[tuple] = None


def check_equiv(c1: Circuit, c2: Circuit, mode: str = "exhaustive",
                vectors: int = DEFAULT_RANDOM_VECTORS,
                seed: int = 0, cap: int = 20) -> EquivVerdict:
    """Simulation-based equivalence verdict.

    Exhaustive mode is definitive (inputs <= cap); random mode returns
    a counterexample or "inconclusive" after `vectors` samples.
    """
    if len(c1.inputs) != len(c2.inputs) or len(c1.outputs) != len(c2.outputs):
        raise CircuitError("interface mismatch")
    n = len(c1.inputs)
    if mode not in ("exhaustive", "random"):
        raise CircuitError(f"unknown mode {mode!r}")
    if mode == "exhaustive":
        if n > cap:
            raise CircuitError(f"{n} inputs exceeds exhaustive cap {cap}")
        t1 = [t.bits for t in c1.truth_tables()]
        t2 = [t.bits for t in c2.truth_tables()]
        if t1 == t2:
            return EquivVerdict("equal")
        for j, (a, b) in enumerate(zip(t1, t2)):
            d = a ^ b
            if d:
                row = (d & -d).bit_length() - 1
                cex = tuple((row >> i) & 1 for i in range(n))
                return EquivVerdict("counterexample", cex)
    rng = random.Random(seed)
    width = 4096  # vectors per bit-parallel sweep
    done = 0
    while done < vectors:
        w = min(width, vectors - done)
        mask = (1 << w) - 1
        words = [rng.getrandbits(w) for _ in range(n)]
        v1 = c1._simulate_wide(dict(zip(c1.inputs, words)), mask)
        v2 = c2._simulate_wide(dict(zip(c2.inputs, words)), mask)
        diff = 0
        for (o1, n1), (o2, n2) in zip(c1.outputs, c2.outputs):
            a = v1[o1] ^ (mask if n1 else 0)
            b = v2[o2] ^ (mask if n2 else 0)
            diff |= a ^ b
        if diff:
            col = (diff & -diff).bit_length() - 1
            cex = tuple((word >> col) & 1 for word in words)
            # re-simulate before reporting (invariant: any returned
            # counterexample indeed distinguishes the circuits)
            assert c1.simulate(cex) != c2.simulate(cex)
            return EquivVerdict("counterexample", cex)
        done += w
    return EquivVerdict("inconclusive")


def export_cnf(circuit: Circuit) -> str:
    """Tseitin CNF (DIMACS) asserting the single output true."""
    if len(circuit.outputs) != 1:
        raise CircuitError("export_cnf requires a single-output circuit")
    var = {}
    order = circuit.topo_order()
    for gid in order:
        var[gid] = len(var) + 1
    clauses = []

    def lit(gid, neg=False):
        return -var[gid] if neg else var[gid]

    for gid in order:
        gate = circuit.gate(gid)
        v = var[gid]
        k = gate.kind
        if k is GateKind.INPUT:
            continue
        if k is GateKind.CONST0:
            clauses.append([-v])
            continue
        if k is GateKind.CONST1:
            clauses.append([v])
            continue
        ops = [lit(oid, neg) for oid, neg in gate.operands]
        if k is GateKind.NOT:
            a = ops[0]
            clauses += [[-v, -a], [v, a]]
            continue
        a, b = ops
        neg_out = k in (GateKind.NAND, GateKind.NOR, GateKind.NXOR)
        t = -v if neg_out else v
        base = {GateKind.NAND: GateKind.AND, GateKind.NOR: GateKind.OR,
                GateKind.NXOR: GateKind.XOR}.get(k, k)
        if base is GateKind.AND:
            clauses += [[-t, a], [-t, b], [t, -a, -b]]
        elif base is GateKind.OR:
            clauses += [[t, -a], [t, -b], [-t, a, b]]
        else:  # XOR
            clauses += [[-t, a, b], [-t, -a, -b], [t, -a, b], [t, a, -b]]
    oid, oneg = circuit.outputs[0]
    clauses.append([lit(oid, oneg)])
    lines = [f"c gatesimp miter CNF; output gate {oid}"]
    for gid in circuit.inputs:
        name = circuit.name_of(gid) or f"g{gid}"
        lines.append(f"c var {var[gid]} = input {name}")
    lines.append(f"p cnf {len(var)} {len(clauses)}")
    for cl in clauses:
        lines.append(" ".join(map(str, cl)) + " 0")
    return "\n".join(lines) + "\n"
