"""Pure-Python bottom-up enumerator for minimal 3-input circuit classes.

This is the reference implementation of the search that the compiled
kernel (``_kernels``) accelerates.  Both walk the same state space and
must produce identical results.

State space (BENCH): a state is the set of gates of a partial circuit
over inputs x1..x3, represented by their exact 8-bit tables.

* Binary gates AND/OR/XOR/NAND/NOR/XNOR over two distinct existing
  signals; a gate whose table duplicates an existing gate is pruned.
* Unary NOT over an input or a binary gate.  All consumers of one NOT
  must share a single gate kind (a NOT item carries a "lock" that is
  set by its first consumer).
* Output pins attach, with free polarity, to binary gates computing
  normal tables (value 0 on the all-zero assignment); negated-kind
  gates with non-normal tables act as internal signals only.

State space (AIG): gates are binary ANDs over two distinct existing
signals with free operand negations; exact-duplicate tables pruned.
Output pins are exact gate tables; tuples containing a complement pair
are not recorded (both polarities of one function cost separate nodes).

Every time a state gains a gate, the k-subsets (k = 1, 2, 3) of
eligible pin tables that include the new gate are recorded at the
current level on first sight.  A record is ``(level, items, pins)``
where ``items`` is the state's gate description set — enough to
rebuild a witness program later.
"""

from __future__ import annotations

import time
from itertools import combinations

from .canon import FULL, PROJECTIONS, canon_aig, canon_bench

# binary kind codes shared with the kernel and the SIMPDB format
KIND_AND, KIND_OR, KIND_XOR, KIND_NAND, KIND_NOR, KIND_NXOR, KIND_NOT = range(7)


def apply_kind(code: int, a: int, b: int) -> int:
    r = (a & b, a | b, a ^ b)[code % 3]
    return r ^ FULL if code >= 3 else r


class BudgetExceeded(Exception):
    pass


class EnumResult:
    """found[k]: canonical key -> (level, items, pins); levels_complete: int."""

    def __init__(self, found, levels_complete, states_per_level):
        self.found = found
        self.levels_complete = levels_complete
        self.states_per_level = states_per_level


def _record_subsets(found, raw_seen, canon_fn, pins, new_pins, level, items,
                    forbid_complements):
    for k in (1, 2, 3):
        if len(pins) < k:
            continue
        for combo in combinations(pins, k):
            if not any(p in new_pins for p in combo):
                continue
            if forbid_complements and any(
                (p ^ FULL) in combo for p in combo
            ):
                continue
            raw = combo  # pins iterated in sorted order, combo is sorted
            seen = raw_seen[k]
            if raw in seen:
                continue
            seen.add(raw)
            key = canon_fn(raw)
            bucket = found[k]
            if key not in bucket:
                bucket[key] = (level, items, raw)


def enumerate_bench(cap: int, time_budget: float = None) -> EnumResult:
    deadline = time.monotonic() + time_budget if time_budget else None
    found = {1: {}, 2: {}, 3: {}}
    raw_seen = {1: set(), 2: set(), 3: set()}
    init = (frozenset(), frozenset())  # (binary tables, NOT (table, lock) pairs)
    frontier = {init}
    visited = {init}
    states_per_level = []
    levels_complete = 0
    for level in range(1, cap + 1):
        nxt = set()
        for bt, nt in frontier:
            if deadline and time.monotonic() > deadline:
                return EnumResult(found, levels_complete, states_per_level)
            not_tables = dict(nt)
            sigs = list(PROJECTIONS) + sorted(bt) + sorted(not_tables)
            gate_tables = bt | set(not_tables)
            # unary NOT over an input or binary gate
            for s in list(PROJECTIONS) + sorted(bt):
                t = s ^ FULL
                if t in gate_tables:
                    continue
                state = (bt, frozenset(list(nt) + [(t, -1)]))
                if state not in visited:
                    visited.add(state)
                    nxt.add(state)
                    # NOT gates are never pinnable: nothing to record
            # binary gate over two distinct signals
            for i in range(len(sigs)):
                for j in range(i + 1, len(sigs)):
                    a, b = sigs[i], sigs[j]
                    for code in range(6):
                        t = apply_kind(code, a, b)
                        if t in gate_tables:
                            continue
                        locked = []
                        ok = True
                        for x, lock in nt:
                            if x in (a, b):
                                if lock not in (-1, code):
                                    ok = False
                                    break
                                locked.append((x, code))
                            else:
                                locked.append((x, lock))
                        if not ok:
                            continue
                        nbt = bt | {t}
                        state = (nbt, frozenset(locked))
                        if state not in visited:
                            visited.add(state)
                            nxt.add(state)
                        # record even when the state was already reached:
                        # a different "newest" gate unlocks different pins
                        if not t & 1:
                            pins = sorted(
                                {x for u in nbt if not u & 1 for x in (u, u ^ FULL)}
                            )
                            _record_subsets(
                                found, raw_seen, canon_bench, pins,
                                {t, t ^ FULL}, level, state,
                                forbid_complements=False,
                            )
        frontier = nxt
        states_per_level.append(len(nxt))
        levels_complete = level
    return EnumResult(found, levels_complete, states_per_level)


def enumerate_aig(cap: int, time_budget: float = None) -> EnumResult:
    deadline = time.monotonic() + time_budget if time_budget else None
    found = {1: {}, 2: {}, 3: {}}
    raw_seen = {1: set(), 2: set(), 3: set()}
    init = frozenset()
    frontier = {init}
    visited = {init}
    states_per_level = []
    levels_complete = 0
    for level in range(1, cap + 1):
        nxt = set()
        for st in frontier:
            if deadline and time.monotonic() > deadline:
                return EnumResult(found, levels_complete, states_per_level)
            sigs = list(PROJECTIONS) + sorted(st)
            for i in range(len(sigs)):
                for j in range(i + 1, len(sigs)):
                    a, b = sigs[i], sigs[j]
                    for negmask in range(4):
                        t = (a ^ (FULL if negmask & 1 else 0)) & (
                            b ^ (FULL if negmask & 2 else 0)
                        )
                        if t in st:
                            continue
                        ns = st | {t}
                        if ns not in visited:
                            visited.add(ns)
                            nxt.add(ns)
                        _record_subsets(
                            found, raw_seen, canon_aig, sorted(ns), {t},
                            level, frozenset(ns), forbid_complements=True,
                        )
        frontier = nxt
        states_per_level.append(len(nxt))
        levels_complete = level
    return EnumResult(found, levels_complete, states_per_level)
