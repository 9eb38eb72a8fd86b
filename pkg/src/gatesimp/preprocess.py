"""Structural cleanup passes: dangling removal, duplicate merging, and
constant/idempotence local rules.

All passes preserve every output truth table, never grow the circuit,
and are idempotent (an immediate second run reports zero changes).
"""

from __future__ import annotations

from .core import COMMUTATIVE, Circuit, GateKind, _LOGIC_KINDS


def remove_dangling(circuit: Circuit) -> int:
    """Delete gates with no path to any output.  Returns count removed.

    Inputs and constants referenced by nothing are kept (the interface
    of the circuit is not the pass's to change).
    """
    live = circuit.reachable_from_outputs()
    removed = 0
    # peel in reverse topological order so consumers go before operands
    for gid in reversed(circuit.topo_order()):
        if gid in live or gid not in circuit:
            continue
        gate = circuit.gate(gid)
        if gate.kind not in _LOGIC_KINDS:
            continue
        if circuit.fanout(gid):
            continue  # feeds another dangling gate removed later
        circuit.remove_gate(gid)
        removed += 1
    if removed:
        # a single reverse sweep can leave chains whose heads became
        # free only after the sweep passed them; iterate to fixpoint
        removed += remove_dangling(circuit)
    return removed


def _dedup_key(circuit: Circuit, gid: int):
    gate = circuit.gate(gid)
    ops = list(gate.operands)
    if gate.kind in COMMUTATIVE:
        ops.sort()
    return (gate.kind, tuple(ops))


def merge_duplicates(circuit: Circuit) -> int:
    """Merge gates sharing (kind, normalized operands) to a fixpoint."""
    merged = 0
    while True:
        seen: dict = {}
        changed = False
        for gid in list(circuit.topo_order()):
            if gid not in circuit:
                continue  # removed earlier in this sweep
            gate = circuit.gate(gid)
            if gate.kind not in _LOGIC_KINDS:
                continue
            key = _dedup_key(circuit, gid)
            keep = seen.get(key)
            if keep is None:
                seen[key] = gid
                continue
            circuit.replace_fanin(gid, keep)
            circuit.remove_gate(gid)
            merged += 1
            changed = True
        if not changed:
            return merged


def _const_of(kind: GateKind):
    return {GateKind.CONST0: 0, GateKind.CONST1: 1}.get(kind)


def _get_const(circuit: Circuit, value: int, cache: dict) -> int:
    gid = cache.get(value)
    if gid is None:
        gid = circuit.add_gate(GateKind.CONST1 if value else GateKind.CONST0)
        cache[value] = gid
    return gid


def _wire(circuit: Circuit, gid: int, src: int, neg: bool, cache: dict) -> bool:
    """Replace gate `gid` by signal `src` (negated when `neg`)."""
    if neg and circuit.basis != "AIG":
        # express the negation as a NOT gate; only reached for rules
        # like NAND(x,x) -> NOT x, which trade a binary gate for a NOT
        srckind = circuit.gate(src).kind
        cv = _const_of(srckind)
        if cv is not None:
            src = _get_const(circuit, cv ^ 1, cache)
        else:
            src = circuit.add_gate(GateKind.NOT, [src])
        neg = False
    if neg:
        # AIG: push the negation onto every consumer edge and output
        for cid in list(circuit.fanout(gid)):
            consumer = circuit.gate(cid)
            consumer.operands = [
                (oid, n ^ (oid == gid)) for oid, n in consumer.operands
            ]
        circuit.outputs = [
            (oid, n ^ (oid == gid)) for oid, n in circuit.outputs
        ]
    try:
        circuit.replace_fanin(gid, src)
    except Exception:
        return False
    if not circuit.fanout(gid) and not any(o == gid for o, _ in circuit.outputs):
        circuit.remove_gate(gid)
    return True


def _local_rule(circuit: Circuit, gid: int, cache: dict):
    """Return (src, neg) the gate is equivalent to, or None."""
    gate = circuit.gate(gid)
    kind = gate.kind
    if kind is GateKind.NOT:
        (a, an) = gate.operands[0]
        agate = circuit.gate(a)
        cv = _const_of(agate.kind)
        if cv is not None:
            return (_get_const(circuit, cv ^ an ^ 1, cache), False)
        if agate.kind is GateKind.NOT:
            return (agate.operands[0][0], agate.operands[0][1])
        return None
    if kind not in _LOGIC_KINDS or kind is GateKind.NOT:
        return None
    (a, an), (b, bn) = gate.operands
    ac = _const_of(circuit.gate(a).kind)
    bc = _const_of(circuit.gate(b).kind)
    av = None if ac is None else ac ^ an
    bv = None if bc is None else bc ^ bn
    flip = kind in (GateKind.NAND, GateKind.NOR, GateKind.NXOR)
    base = {GateKind.NAND: GateKind.AND, GateKind.NOR: GateKind.OR,
            GateKind.NXOR: GateKind.XOR}.get(kind, kind)
    # both operands constant: fold completely
    if av is not None and bv is not None:
        v = {GateKind.AND: av & bv, GateKind.OR: av | bv,
             GateKind.XOR: av ^ bv}[base] ^ flip
        return (_get_const(circuit, v, cache), False)
    # one operand constant
    if av is not None or bv is not None:
        v = av if av is not None else bv
        o, on = (b, bn) if av is not None else (a, an)
        if base is GateKind.AND:
            if v == 0:
                return (_get_const(circuit, flip, cache), False)
            return (o, on ^ flip)
        if base is GateKind.OR:
            if v == 1:
                return (_get_const(circuit, 1 ^ flip, cache), False)
            return (o, on ^ flip)
        return (o, on ^ v ^ flip)  # XOR with a constant
    # same signal twice, looking through NOT gates and edge negations
    ra, ran = a, an
    ag = circuit.gate(a)
    if ag.kind is GateKind.NOT:
        ra, ran = ag.operands[0][0], ag.operands[0][1] ^ an ^ 1
    rb, rbn = b, bn
    bg = circuit.gate(b)
    if bg.kind is GateKind.NOT:
        rb, rbn = bg.operands[0][0], bg.operands[0][1] ^ bn ^ 1
    if ra == rb:
        if ran == rbn:
            if base is GateKind.XOR:
                return (_get_const(circuit, flip, cache), False)
            return (ra, ran ^ flip)  # AND/OR idempotence
        # x op (not x)
        if base is GateKind.XOR:
            return (_get_const(circuit, 1 ^ flip, cache), False)
        v = 0 if base is GateKind.AND else 1
        return (_get_const(circuit, v ^ flip, cache), False)
    return None


def apply_local_rules(circuit: Circuit) -> int:
    """Fold constants, collapse idempotent/annihilating gates and double
    negations, to a fixpoint.  Returns number of gates rewritten."""
    cache: dict = {}
    for value, kid in ((0, GateKind.CONST0), (1, GateKind.CONST1)):
        for g in circuit.gates():
            if g.kind is kid:
                cache.setdefault(value, g.id)
    rewritten = 0
    changed = True
    while changed:
        changed = False
        for gid in list(circuit.topo_order()):
            if gid not in circuit:
                continue
            res = _local_rule(circuit, gid, cache)
            if res is None:
                continue
            src, neg = res
            if src == gid:
                continue
            if _wire(circuit, gid, src, neg, cache):
                rewritten += 1
                changed = True
    return rewritten


def preprocess(circuit: Circuit) -> dict:
    """Run all three passes to a joint fixpoint; returns change counts."""
    totals = {"dangling": 0, "duplicates": 0, "local_rules": 0}
    while True:
        round_ = {
            "dangling": remove_dangling(circuit),
            "duplicates": merge_duplicates(circuit),
            "local_rules": apply_local_rules(circuit),
        }
        for k, v in round_.items():
            totals[k] += v
        if not any(round_.values()):
            return totals
