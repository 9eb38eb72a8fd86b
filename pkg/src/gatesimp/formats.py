"""Readers and writers for the BENCH text format and AIGER (ascii + binary).

BENCH files look like::

    # comment
    INPUT(a)
    INPUT(b)
    c = AND(a, b)
    OUTPUT(c)

n-ary AND/OR/XOR/NAND/NOR gates are accepted and expanded into left-deep
binary trees (any trailing negation is applied to the final gate only).
BUF is collapsed to a wire alias.

AIGER follows the standard: header ``aag M I L O A`` (ascii) or
``aig M I L O A`` (binary, delta-coded ANDs), literal 2v for variable v,
low bit = negation, literals 0/1 = constants.  Only combinational files
(L = 0) are supported.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import Circuit, CircuitError, GateKind


@dataclass
class ParseDiagnostic:
    line: int
    message: str
    severity: str = "error"  # "warning" | "error"


class ParseError(CircuitError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.diagnostic = ParseDiagnostic(line, message)


_BENCH_GATES = {
    "NOT": GateKind.NOT,
    "AND": GateKind.AND,
    "NAND": GateKind.NAND,
    "OR": GateKind.OR,
    "NOR": GateKind.NOR,
    "XOR": GateKind.XOR,
    "XNOR": GateKind.NXOR,
    "NXOR": GateKind.NXOR,
}

_PLAIN_OF = {
    GateKind.NAND: GateKind.AND,
    GateKind.NOR: GateKind.OR,
    GateKind.NXOR: GateKind.XOR,
}

_LINE_RE = re.compile(
    r"""^(?:
          (?P<io>INPUT|OUTPUT)\s*\(\s*(?P<ioname>[^()\s]+)\s*\)
        | (?P<lhs>[^()\s=]+)\s*=\s*(?P<gate>[A-Za-z]+)\s*\(\s*(?P<args>[^()]*)\)
        )\s*$""",
    re.VERBOSE,
)


def read_bench(text: str) -> Circuit:
    circuit = Circuit("BENCH")
    inputs: list[str] = []
    outputs: list[str] = []
    defs: dict[str, tuple[int, str, list]] = {}  # name -> (line, gate token, args)
    order: list[str] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE_RE.match(line)
        if m is None:
            raise ParseError(lineno, f"cannot parse {line!r}")
        if m.group("io"):
            (inputs if m.group("io") == "INPUT" else outputs).append(m.group("ioname"))
            continue
        lhs, gate, args = m.group("lhs"), m.group("gate").upper(), m.group("args")
        if lhs in defs or lhs in inputs:
            raise ParseError(lineno, f"duplicate definition of {lhs!r}")
        ops = [a.strip() for a in args.split(",")] if args.strip() else []
        if gate not in _BENCH_GATES and gate != "BUF" and gate != "BUFF":
            raise ParseError(lineno, f"unknown gate token {gate!r}")
        defs[lhs] = (lineno, gate, ops)
        order.append(lhs)

    ids: dict[str, int] = {}
    for name in inputs:
        ids[name] = circuit.add_input(name)

    resolving: set[str] = set()

    def resolve(name: str) -> int:
        if name in ids:
            return ids[name]
        if name not in defs:
            # find a line to blame
            raise ParseError(0, f"use of undefined signal {name!r}")
        if name in resolving:
            lineno = defs[name][0]
            raise ParseError(lineno, f"cyclic definition involving {name!r}")
        resolving.add(name)
        lineno, gate, opnames = defs[name]
        try:
            op_ids = [resolve(o) for o in opnames]
        finally:
            resolving.discard(name)
        gid = _build_bench_gate(circuit, lineno, gate, op_ids)
        ids[name] = gid
        if circuit.name_of(gid) is None:
            circuit.set_name(gid, name)
        return gid

    for name in order:
        resolve(name)
    for name in outputs:
        circuit.add_output(resolve(name))
    circuit.name = ""
    return circuit


def _build_bench_gate(circuit: Circuit, lineno: int, gate: str, op_ids: list) -> int:
    if gate in ("BUF", "BUFF"):
        if len(op_ids) != 1:
            raise ParseError(lineno, "BUF takes exactly one operand")
        return op_ids[0]  # alias, no gate
    kind = _BENCH_GATES[gate]
    if kind is GateKind.NOT:
        if len(op_ids) != 1:
            raise ParseError(lineno, "NOT takes exactly one operand")
        return circuit.add_gate(GateKind.NOT, [op_ids[0]])
    if len(op_ids) < 2:
        raise ParseError(lineno, f"{gate} needs at least two operands")
    if kind is GateKind.NXOR and len(op_ids) > 2:
        raise ParseError(lineno, "n-ary XNOR is ambiguous; only binary accepted")
    plain = _PLAIN_OF.get(kind, kind)
    acc = op_ids[0]
    for i, oid in enumerate(op_ids[1:], start=2):
        last = i == len(op_ids)
        use = kind if (last and kind in _PLAIN_OF) else plain
        acc = circuit.add_gate(use, [acc, oid])
    return acc


def write_bench(circuit: Circuit) -> str:
    if circuit.basis != "BENCH":
        raise CircuitError("write_bench requires a BENCH-basis circuit")
    lines: list[str] = []
    names: dict[int, str] = {}
    used: set[str] = set()

    def name_for(gid: int) -> str:
        if gid in names:
            return names[gid]
        n = circuit.name_of(gid)
        if n is None or n in used:
            n = f"g{gid}"
            while n in used:
                n = "_" + n
        names[gid] = n
        used.add(n)
        return n

    for gid in circuit.inputs:
        lines.append(f"INPUT({name_for(gid)})")
    for oid, _neg in circuit.outputs:
        lines.append(f"OUTPUT({name_for(oid)})")
    token = {v: k for k, v in _BENCH_GATES.items() if k != "NXOR"}
    token[GateKind.NXOR] = "XNOR"
    const_input = circuit.inputs[0] if circuit.inputs else None
    for gid in circuit.topo_order():
        gate = circuit.gate(gid)
        if gate.kind is GateKind.INPUT:
            continue
        if gate.kind in (GateKind.CONST0, GateKind.CONST1):
            if const_input is None:
                raise CircuitError("cannot emit a constant in a circuit with no inputs")
            i = name_for(const_input)
            op = "XOR" if gate.kind is GateKind.CONST0 else "XNOR"
            lines.append(f"{name_for(gid)} = {op}({i},{i})")
            continue
        ops = ",".join(name_for(oid) for oid, _ in gate.operands)
        lines.append(f"{name_for(gid)} = {token[gate.kind]}({ops})")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# AIGER
# ---------------------------------------------------------------------------


def read_aiger(data) -> Circuit:
    if isinstance(data, str):
        data = data.encode()
    if data.startswith(b"aag"):
        return _read_aag(data)
    if data.startswith(b"aig"):
        return _read_aig_binary(data)
    raise ParseError(1, "not an AIGER file (missing aag/aig header)")


def _parse_header(line: bytes):
    parts = line.split()
    if len(parts) != 6:
        raise ParseError(1, f"malformed header {line!r}")
    try:
        m, i, l, o, a = (int(p) for p in parts[1:])
    except ValueError:
        raise ParseError(1, f"malformed header {line!r}") from None
    if l != 0:
        raise ParseError(1, f"sequential AIGER not supported (latch count {l})")
    return m, i, l, o, a


def _lit_to_ref(circuit, by_var, lit: int, maxvar: int, lineno: int):
    """Return (gate id, negated) for an AIGER literal."""
    if lit > 2 * maxvar + 1:
        raise ParseError(lineno, f"literal {lit} out of range")
    var, neg = lit >> 1, bool(lit & 1)
    if var == 0:
        cid = by_var.get(0)
        if cid is None:
            cid = circuit.add_gate(GateKind.CONST0)
            by_var[0] = cid
        return cid, neg
    if var not in by_var:
        raise ParseError(lineno, f"literal {lit} references undefined variable {var}")
    return by_var[var], neg


def _read_aag(data: bytes) -> Circuit:
    lines = data.decode().splitlines()
    m, i, l, o, a = _parse_header(lines[0].encode())
    circuit = Circuit("AIG")
    by_var: dict[int, int] = {}
    pos = 1
    in_lits = []
    for k in range(i):
        lit = int(lines[pos + k].split()[0])
        if lit & 1 or lit == 0:
            raise ParseError(pos + k + 1, f"invalid input literal {lit}")
        gid = circuit.add_input(f"i{k}")
        by_var[lit >> 1] = gid
        in_lits.append(lit)
    pos += i
    out_lits = [int(lines[pos + k].split()[0]) for k in range(o)]
    pos += o
    for k in range(a):
        parts = lines[pos + k].split()
        if len(parts) < 3:
            raise ParseError(pos + k + 1, "malformed AND line")
        lhs, r0, r1 = (int(p) for p in parts[:3])
        if lhs & 1 or lhs >> 1 in by_var:
            raise ParseError(pos + k + 1, f"invalid AND literal {lhs}")
        a0 = _lit_to_ref(circuit, by_var, r0, m, pos + k + 1)
        a1 = _lit_to_ref(circuit, by_var, r1, m, pos + k + 1)
        by_var[lhs >> 1] = circuit.add_gate(GateKind.AND, [a0, a1])
    pos += a
    _read_aiger_symbols(circuit, lines[pos:], by_var, in_lits)
    for lit in out_lits:
        gid, neg = _lit_to_ref(circuit, by_var, lit, m, 0)
        circuit.add_output(gid, neg)
    return circuit


def _read_aig_binary(data: bytes) -> Circuit:
    nl = data.index(b"\n")
    m, i, l, o, a = _parse_header(data[:nl])
    circuit = Circuit("AIG")
    by_var: dict[int, int] = {}
    # binary format: inputs are implicitly variables 1..i
    for k in range(i):
        by_var[k + 1] = circuit.add_input(f"i{k}")
    pos = nl + 1
    out_lits = []
    for _ in range(o):
        end = data.index(b"\n", pos)
        out_lits.append(int(data[pos:end]))
        pos = end + 1

    def read_delta():
        nonlocal pos
        x, shift = 0, 0
        while True:
            if pos >= len(data):
                raise ParseError(0, "truncated delta encoding")
            byte = data[pos]
            pos += 1
            x |= (byte & 0x7F) << shift
            if not byte & 0x80:
                return x
            shift += 7

    for k in range(a):
        lhs = 2 * (i + l + k + 1)
        d0 = read_delta()
        d1 = read_delta()
        r0 = lhs - d0
        r1 = r0 - d1
        if d0 == 0 or r1 < 0:
            raise ParseError(0, f"malformed delta encoding at AND {k}")
        a0 = _lit_to_ref(circuit, by_var, r0, m, 0)
        a1 = _lit_to_ref(circuit, by_var, r1, m, 0)
        by_var[lhs >> 1] = circuit.add_gate(GateKind.AND, [a0, a1])
    _read_aiger_symbols(circuit, data[pos:].decode(errors="replace").splitlines(),
                        by_var, [2 * (k + 1) for k in range(i)])
    for lit in out_lits:
        gid, neg = _lit_to_ref(circuit, by_var, lit, m, 0)
        circuit.add_output(gid, neg)
    return circuit


def _read_aiger_symbols(circuit, lines, by_var, in_lits):
    for line in lines:
        line = line.strip()
        if not line or line == "c":
            break
        m = re.match(r"^i(\d+)\s+(.+)$", line)
        if m:
            idx = int(m.group(1))
            if idx < len(in_lits):
                gid = by_var[in_lits[idx] >> 1]
                try:
                    circuit.set_name(gid, m.group(2))
                except CircuitError:
                    pass


def write_aiger_ascii(circuit: Circuit) -> str:
    if circuit.basis != "AIG":
        raise CircuitError("write_aiger_ascii requires an AIG-basis circuit")
    lit: dict[int, int] = {}
    var = 0
    for gid in circuit.inputs:
        var += 1
        lit[gid] = 2 * var
    and_rows = []
    for gid in circuit.topo_order():
        gate = circuit.gate(gid)
        if gate.kind is GateKind.INPUT:
            continue
        if gate.kind is GateKind.CONST0:
            lit[gid] = 0
            continue
        if gate.kind is GateKind.CONST1:
            lit[gid] = 1
            continue
        if gate.kind is not GateKind.AND:
            raise CircuitError(f"{gate.kind.value} gate cannot be written as AIGER")
        var += 1
        lhs = 2 * var
        ops = [lit[oid] ^ int(neg) for oid, neg in gate.operands]
        and_rows.append((lhs, max(ops), min(ops)))
        lit[gid] = lhs
    out = [f"aag {var} {len(circuit.inputs)} 0 {len(circuit.outputs)} {len(and_rows)}"]
    out.extend(str(lit[gid]) for gid in circuit.inputs)
    out.extend(str(lit[oid] ^ int(neg)) for oid, neg in circuit.outputs)
    out.extend(f"{l} {a} {b}" for l, a, b in and_rows)
    for idx, gid in enumerate(circuit.inputs):
        name = circuit.name_of(gid)
        if name:
            out.append(f"i{idx} {name}")
    return "\n".join(out) + "\n"
