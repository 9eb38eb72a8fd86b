"""Closure operator, minimal subcircuit generators, and principal
subcircuit enumeration.

For a gate set X, the closure g(X) is every gate whose value is fixed
by an assignment to X: a gate joins if it is in X or all of its
operands have joined (equivalently, every ascending path from it to a
circuit input passes through X).  A set X is a minimal generator of v
when v lies in g(X) but in no closure of a proper subset.  S_k(v)
collects the size-k minimal generators; the k-principal subcircuits
are the closures of the per-gate dominating generators (at most one
for k = 2 and two for k = 3).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations

from .core import Circuit, CircuitError, GateKind

log = logging.getLogger(__name__)

DEFAULT_CANDIDATE_CAP = 16


def _const_ids(circuit: Circuit) -> tuple:
    return tuple(g.id for g in circuit.gates()
                 if g.kind in (GateKind.CONST0, GateKind.CONST1))


def closure(circuit: Circuit, X, consts: tuple = None) -> set:
    """g(X): forward propagation from X through full-operand gates.

    Constants join unconditionally (their value needs no support);
    callers in hot loops pass the precomputed `consts` tuple.
    """
    members = set(X)
    for gid in members:
        circuit.gate(gid)  # validate
    work = list(members)
    # seed constants and their closure
    if consts is None:
        consts = _const_ids(circuit)
    for gid in consts:
        if gid not in members:
            members.add(gid)
            work.append(gid)
    while work:
        gid = work.pop()
        for cid in circuit.fanout(gid):
            if cid in members:
                continue
            gate = circuit.gate(cid)
            if all(oid in members for oid, _n in gate.operands):
                members.add(cid)
                work.append(cid)
    return members


def dependency_degree(circuit: Circuit, v: int, X, consts: tuple = None):
    """Smallest |Y|, Y ⊆ X, with v in g(Y); None when v not in g(X)."""
    X = tuple(dict.fromkeys(X))
    if len(X) > 3:
        raise CircuitError("dependency degree is defined for |X| <= 3")
    if consts is None:
        consts = _const_ids(circuit)
    for k in range(1, len(X) + 1):
        for Y in combinations(X, k):
            if v in closure(circuit, Y, consts):
                return k
    return None


def _generates(circuit: Circuit, v: int, X, consts=None) -> bool:
    return v in closure(circuit, X, consts)


def _is_minimal_generator(circuit: Circuit, v: int, X, consts=None) -> bool:
    Xs = frozenset(X)
    if not _generates(circuit, v, Xs, consts):
        return False
    return dependency_degree(circuit, v, tuple(Xs), consts) == len(Xs)


@dataclass
class SSetResult:
    """Per-gate S₂/S₃ sets plus gates whose candidate list was trimmed."""

    s2: dict
    s3: dict
    flagged: set = field(default_factory=set)


def s_sets(circuit: Circuit, candidate_cap: int = DEFAULT_CANDIDATE_CAP) -> SSetResult:
    """One topological sweep computing S₂(v) and S₃(v) for every gate.

    Candidates at a gate are unions of generators (including the
    trivial {parent}) from its operands' sets, capped at
    `candidate_cap` before minimality filtering; gates whose list was
    trimmed are flagged and excluded from principality claims.
    """
    consts = _const_ids(circuit)
    s_all: dict = {}  # gate -> list of frozensets (sizes 1..3, incl {v})
    s2: dict = {}
    s3: dict = {}
    flagged: set = set()
    for gid in circuit.topo_order():
        gate = circuit.gate(gid)
        here = [frozenset((gid,))]
        if gate.kind is GateKind.INPUT or not gate.operands:
            s_all[gid] = here
            s2[gid] = []
            s3[gid] = []
            continue
        ops = [oid for oid, _n in gate.operands]
        if len(ops) == 1 or ops[0] == ops[1]:
            # single-operand gates copy the operand's sets
            cands = list(s_all[ops[0]])
        else:
            cands = []
            seen = set()
            for Xa in s_all[ops[0]]:
                for Xb in s_all[ops[1]]:
                    u = Xa | Xb
                    if len(u) <= 3 and u not in seen:
                        seen.add(u)
                        cands.append(u)
        if len(cands) > candidate_cap:
            cands = sorted(cands, key=lambda s: (len(s), sorted(s)))[:candidate_cap]
            flagged.add(gid)
        elif any(o in flagged for o in ops):
            # a trimmed ancestor may have dropped generators this gate
            # would have inherited, so its sets are suspect too
            flagged.add(gid)
        minimal = [X for X in cands
                   if _is_minimal_generator(circuit, gid, X, consts)]
        s_all[gid] = here + [X for X in minimal if gid not in X]
        s2[gid] = sorted((X for X in minimal if len(X) == 2), key=sorted)
        s3[gid] = sorted((X for X in minimal if len(X) == 3), key=sorted)
    return SSetResult(s2, s3, flagged)


def brute_force_s_sets(circuit: Circuit, limit: int = 32) -> SSetResult:
    """Definitional S-sets by subset enumeration (test oracle)."""
    candidates = [g.id for g in circuit.gates()
                  if g.kind not in (GateKind.CONST0, GateKind.CONST1)]
    if len(candidates) > limit:
        raise CircuitError(f"brute force limited to {limit} gates")
    consts = _const_ids(circuit)
    s2 = {gid: [] for gid in candidates}
    s3 = {gid: [] for gid in candidates}
    for k in (2, 3):
        for combo in combinations(sorted(candidates), k):
            X = frozenset(combo)
            cl = closure(circuit, X, consts)
            for v in cl:
                if v in X or v not in s2:
                    continue
                if dependency_degree(circuit, v, combo, consts) == k:
                    (s2 if k == 2 else s3)[v].append(X)
    for d in (s2, s3):
        for v in d:
            d[v] = sorted(d[v], key=sorted)
    return SSetResult(s2, s3, set())


@dataclass
class PrincipalSubcircuit:
    """Closure window of a dominating generator."""

    generator: frozenset
    anchor: int
    closure: frozenset
    inputs: tuple
    outputs: tuple
    versions: dict  # gate id -> version snapshot

    def stale(self, circuit: Circuit) -> bool:
        for gid, ver in self.versions.items():
            if gid not in circuit or circuit.gate(gid).version != ver:
                return True
        return False


def _window(circuit: Circuit, X: frozenset, anchor: int) -> PrincipalSubcircuit:
    cl = frozenset(closure(circuit, X))
    out_set = set(oid for oid, _n in circuit.outputs)
    outs = []
    for gid in sorted(cl):
        if gid in X:
            continue
        if gid in out_set or any(c not in cl for c in circuit.fanout(gid)):
            outs.append(gid)
    return PrincipalSubcircuit(
        generator=X,
        anchor=anchor,
        closure=cl,
        inputs=tuple(sorted(X)),
        outputs=tuple(outs),
        versions={gid: circuit.gate(gid).version for gid in cl},
    )


def principal_subcircuits(circuit: Circuit, k: int,
                          ssr: SSetResult = None) -> list:
    """Dominating-generator windows, deduplicated across anchor gates."""
    if k not in (2, 3):
        raise CircuitError("principal subcircuits are defined for k in {2, 3}")
    if ssr is None:
        ssr = s_sets(circuit)
    per_gate = ssr.s2 if k == 2 else ssr.s3
    keep = 1 if k == 2 else 2
    windows = []
    seen = set()
    for gid in circuit.topo_order():
        if gid in ssr.flagged:
            continue
        gens = per_gate.get(gid, [])
        if not gens:
            continue
        closures = {X: closure(circuit, X) for X in gens}
        # maximal generators under closure containment
        maximal = []
        for X in sorted(gens, key=sorted):
            if any(closures[X] < closures[Y] or
                   (closures[X] == closures[Y] and Y in maximal and X != Y)
                   for Y in gens if Y != X):
                continue
            maximal.append(X)
        if len(maximal) > keep:
            # Theorem 2 says this cannot happen; log, keep the first
            covered = all(
                any(closures[Z] <= closures[Y] for Y in maximal[:keep])
                for Z in gens
            )
            if not covered:
                log.warning(
                    "gate %d: %d mutually non-dominating generators "
                    "(theorem-violation diagnostic)", gid, len(maximal)
                )
        for X in maximal[:keep]:
            if X in seen:
                continue
            seen.add(X)
            windows.append(_window(circuit, X, gid))
    return windows
