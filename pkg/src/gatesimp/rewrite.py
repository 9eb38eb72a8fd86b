"""Database-driven rewriting: enumerate 3-input principal windows,
replace improvable ones with minimal fragments, merge equivalent gates
inside oversized windows, iterate to a fixpoint.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import fundb
from .preprocess import preprocess, remove_dangling
from .canon import FULL, PROJECTIONS
from .core import Circuit, CircuitError, GateKind, _LOGIC_KINDS, eval_kind_wide
from .principal import PrincipalSubcircuit, _window, principal_subcircuits, s_sets


@dataclass
class RewriteConfig:
    database: fundb.Database
    iterations: int = 5
    strict: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.iterations < 1:
            raise CircuitError("iterations must be >= 1")


@dataclass
class IterationStats:
    enumerated: int = 0
    examined: int = 0
    skipped_stale: int = 0
    merged_windows: int = 0
    replaced: int = 0
    gates_saved: int = 0


@dataclass
class RewriteReport:
    initial_size: int
    final_size: int = 0
    iterations: list = field(default_factory=list)
    wall_time: float = 0.0

    def format(self) -> str:
        lines = [f"initial size {self.initial_size}"]
        for i, it in enumerate(self.iterations, 1):
            lines.append(
                f"iter {i}: enumerated {it.enumerated} examined {it.examined}"
                f" skipped {it.skipped_stale} merged {it.merged_windows}"
                f" replaced {it.replaced} saved {it.gates_saved}"
            )
        lines.append(f"final size {self.final_size}")
        return "\n".join(lines)


def window_tables(circuit: Circuit, sub: PrincipalSubcircuit) -> dict:
    """Local 8-bit truth tables of every closure gate over sub.inputs."""
    vals: dict = {}
    for i, gid in enumerate(sub.inputs):
        vals[gid] = PROJECTIONS[i] if i < 3 else None
    order = [g for g in circuit.topo_order() if g in sub.closure]
    for gid in order:
        if gid in vals:
            continue
        gate = circuit.gate(gid)
        if gate.kind is GateKind.CONST0:
            vals[gid] = 0
        elif gate.kind is GateKind.CONST1:
            vals[gid] = FULL
        elif gate.kind is GateKind.INPUT:
            raise CircuitError("window interior contains a foreign input")
        else:
            ops = [vals[oid] ^ (FULL if neg else 0) for oid, neg in gate.operands]
            vals[gid] = eval_kind_wide(gate.kind, ops, FULL)
    return vals


def subcircuit_truth_triple(circuit: Circuit, sub: PrincipalSubcircuit):
    """Tables of the window outputs, in sub.outputs order."""
    vals = window_tables(circuit, sub)
    return [vals[gid] for gid in sub.outputs]


def dying_gate_count(circuit: Circuit, sub: PrincipalSubcircuit) -> int:
    """Logic gates freed if the window body is replaced: every closure
    member except the generator gates (interior gates feed only the
    window; output gates' external consumers get re-pointed)."""
    return sum(
        1 for gid in sub.closure
        if gid not in sub.generator
        and circuit.gate(gid).kind in _LOGIC_KINDS
    )


def _strash_key(circuit: Circuit, kind, operands):
    ops = list(operands)
    from .core import COMMUTATIVE
    if kind in COMMUTATIVE:
        ops.sort()
    return (kind, tuple(ops))


def _splice(circuit: Circuit, sub: PrincipalSubcircuit, frag: fundb.Fragment):
    """Copy the fragment over sub.inputs; returns per-query (gid, neg).

    Existing gates are reused via structural hashing, so a replacement
    can save more than the nominal size delta.
    """
    strash = {}
    for g in circuit.gates():
        if g.kind in _LOGIC_KINDS:
            strash.setdefault(_strash_key(circuit, g.kind, g.operands), g.id)
    fc = frag.circuit
    mapping = {}
    for i, pid in enumerate(fc.inputs):
        mapping[pid] = sub.inputs[i]
    for gid in fc.topo_order():
        gate = fc.gate(gid)
        if gate.kind is GateKind.INPUT:
            continue
        ops = [(mapping[oid], neg) for oid, neg in gate.operands]
        key = _strash_key(circuit, gate.kind, ops)
        hit = strash.get(key)
        if hit is not None:
            mapping[gid] = hit
            continue
        new = circuit.add_gate(gate.kind, ops)
        strash[key] = new
        mapping[gid] = new
    return [
        (mapping[fc.outputs[idx][0]], fc.outputs[idx][1])
        for idx in frag.outputs
    ]


def try_replace(circuit: Circuit, sub: PrincipalSubcircuit,
                database: fundb.Database, config: RewriteConfig) -> int:
    """Replace the window when the database offers a smaller body.

    Returns gates actually saved (0 = no replacement).
    """
    if not sub.outputs or len(sub.outputs) > 3:
        return 0
    if sub.stale(circuit):
        return 0
    tables = subcircuit_truth_triple(circuit, sub)
    res = fundb.lookup(database, tables)
    if res is None:
        return 0
    k = dying_gate_count(circuit, sub)
    if config.strict and res.fragment.size >= k:
        return 0
    before = circuit.size
    new_outs = _splice(circuit, sub, res.fragment)
    if any(neg for _g, neg in new_outs) and circuit.basis != "AIG":
        remove_dangling(circuit)
        return 0
    for old, (new, neg) in zip(sub.outputs, new_outs):
        # check right before each repoint: a structural-hash reuse
        # downstream of the dying window would close a cycle.  Earlier
        # repoints each preserved equivalence, so stopping mid-way is
        # safe; cleanup reclaims whatever became dangling.
        if old != new and circuit.fanout(old) and circuit._would_cycle(old, new):
            break
        if neg:
            # push the flag onto the consumers of `old`
            for cid in list(circuit.fanout(old)):
                consumer = circuit.gate(cid)
                consumer.operands = [
                    (oid, n ^ (oid == old)) for oid, n in consumer.operands
                ]
            circuit.outputs = [
                (oid, n ^ (oid == old)) for oid, n in circuit.outputs
            ]
        circuit.replace_fanin(old, new)
    remove_dangling(circuit)
    return max(before - circuit.size, 0)


def merge_equivalent_in_window(circuit: Circuit, sub: PrincipalSubcircuit) -> int:
    """Merge closure gates computing identical local tables."""
    vals = window_tables(circuit, sub)
    by_table: dict = {}
    merged = 0
    for gid in [g for g in circuit.topo_order() if g in sub.closure]:
        if gid in sub.generator:
            continue
        if circuit.gate(gid).kind not in _LOGIC_KINDS:
            continue
        keep = by_table.get(vals[gid])
        if keep is None:
            by_table[vals[gid]] = gid
            continue
        try:
            circuit.replace_fanin(gid, keep)
        except CircuitError:
            continue
        if not circuit.fanout(gid) and not any(
            o == gid for o, _ in circuit.outputs
        ):
            circuit.remove_gate(gid)
        merged += 1
    return merged


def simplify(circuit: Circuit, config: RewriteConfig) -> RewriteReport:
    """Iterated preprocessing + window replacement (deterministic)."""
    report = RewriteReport(initial_size=circuit.size)
    t0 = time.monotonic()
    for _ in range(config.iterations):
        stats = IterationStats()
        preprocess(circuit)
        ssr = s_sets(circuit)
        windows = principal_subcircuits(circuit, 3, ssr)
        # deterministic order: anchor gate position in topological order
        pos = {gid: i for i, gid in enumerate(circuit.topo_order())}
        windows.sort(key=lambda w: (pos.get(w.anchor, -1), w.inputs))
        stats.enumerated = len(windows)
        changed = False
        for w in windows:
            if w.stale(circuit):
                stats.skipped_stale += 1
                continue
            stats.examined += 1
            if len(w.outputs) > 3:
                m = merge_equivalent_in_window(circuit, w)
                if m:
                    stats.merged_windows += 1
                    changed = True
                    w = _window(circuit, w.generator, w.anchor)
                if len(w.outputs) > 3:
                    continue
            saved = try_replace(circuit, w, config.database, config)
            if saved:
                stats.replaced += 1
                stats.gates_saved += saved
                changed = True
        report.iterations.append(stats)
        if not changed:
            break
    preprocess(circuit)
    report.final_size = circuit.size
    report.wall_time = time.monotonic() - t0
    return report
