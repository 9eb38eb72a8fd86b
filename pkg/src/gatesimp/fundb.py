"""Database of minimal circuits for 3-input functions.

Classes of function tuples (up to three distinct 8-bit truth tables)
are canonicalized per :mod:`gatesimp.canon` and mapped to a minimal
witness circuit over three named inputs, found by the bottom-up
enumeration in ``_kernels`` (compiled) or ``_enum_py`` (fallback).

A database entry stores a straight-line program over signals 1..3
(inputs) and 4.. (gates, in order), plus an output spec binding each
table of the canonical key to a signal with a negation flag.
"""

from __future__ import annotations

import io
import struct
import zlib
from dataclasses import dataclass, field

from . import _enum_py
from ._enum_py import (
    KIND_AND, KIND_NAND, KIND_NOR, KIND_NOT, KIND_NXOR, KIND_OR, KIND_XOR,
    apply_kind,
)
from .canon import (
    FULL, PROJECTIONS, ClassTransform, _input_map, canonicalize, orbit_size,
)
from .core import Circuit, CircuitError, GateKind

try:  # compiled kernel, optional
    from . import _kernels
except ImportError:  # pragma: no cover - depends on build environment
    _kernels = None

HAVE_KERNELS = _kernels is not None

KIND_OF_CODE = {
    KIND_AND: GateKind.AND,
    KIND_OR: GateKind.OR,
    KIND_XOR: GateKind.XOR,
    KIND_NAND: GateKind.NAND,
    KIND_NOR: GateKind.NOR,
    KIND_NXOR: GateKind.NXOR,
    KIND_NOT: GateKind.NOT,
}
CODE_OF_KIND = {v: k for k, v in KIND_OF_CODE.items()}
TWIN_CODE = {
    KIND_AND: KIND_NAND, KIND_NAND: KIND_AND,
    KIND_OR: KIND_NOR, KIND_NOR: KIND_OR,
    KIND_XOR: KIND_NXOR, KIND_NXOR: KIND_XOR,
}

DEFAULT_CAP = {"BENCH": 5, "AIG": 6}


@dataclass
class DbEntry:
    key: tuple                # canonical tables, ascending
    size: int                 # gate count of the witness (model cost)
    program: list             # [(kind code, lit1, lit2)]; literal = 2*sig+neg
    out_spec: list            # [(sig, negated)] aligned with key
    optimal: bool = True

    def eval_tables(self) -> list:
        """Truth tables of all program signals (index 0 unused, 1..3 inputs)."""
        tables = [None, *PROJECTIONS]
        for code, l1, l2 in self.program:
            a = tables[l1 >> 1] ^ (FULL if l1 & 1 else 0)
            if code == KIND_NOT:
                tables.append(a ^ FULL)
            else:
                b = tables[l2 >> 1] ^ (FULL if l2 & 1 else 0)
                tables.append(apply_kind(code, a, b))
        return tables

    def output_tables(self) -> tuple:
        tables = self.eval_tables()
        return tuple(
            tables[sig] ^ (FULL if neg else 0) for sig, neg in self.out_spec
        )


class Database:
    def __init__(self, basis: str, cap: int):
        self.basis = basis.upper()
        self.cap = cap
        self.sections = {1: {}, 2: {}, 3: {}}  # k -> {key: DbEntry}
        self.levels_complete = cap
        self.states_per_level: list[int] = []

    def entry(self, key):
        return self.sections[len(key)].get(tuple(key))

    def __len__(self):
        return sum(len(s) for s in self.sections.values())


# ---------------------------------------------------------------------------
# witness derivation
# ---------------------------------------------------------------------------


def _derive_program_bench(items):
    """Order the gates of a BENCH search state into a buildable program.

    ``items`` is (binary tables, ((not table, lock kind), ...)).  Finds, by
    depth-first search, an insertion order and operand choices in which
    every gate is produced from previously available signals and every
    NOT feeds only gates of its lock kind.  Returns [(code, lit1, lit2)]
    with literal = 2 * signal (signals 1..3 inputs, 4.. program gates).
    """
    binary, nots = items
    lock_of = dict(nots)
    todo = set(binary) | set(lock_of)

    def extend(avail, program):
        if not todo:
            return list(program)
        for t in sorted(todo):
            if t in lock_of:  # a NOT gate computing t from its complement
                src = t ^ FULL
                if src in avail and src not in lock_of:
                    idx = avail.index(src)
                    todo.discard(t)
                    got = extend(avail + [t], program + [(KIND_NOT, 2 * (idx + 1), 0)])
                    if got is not None:
                        return got
                    todo.add(t)
            else:
                for i in range(len(avail)):
                    for j in range(i + 1, len(avail)):
                        a, b = avail[i], avail[j]
                        for code in range(6):
                            if apply_kind(code, a, b) != t:
                                continue
                            if lock_of.get(a, code) != code:
                                continue
                            if lock_of.get(b, code) != code:
                                continue
                            todo.discard(t)
                            got = extend(
                                avail + [t],
                                program + [(code, 2 * (i + 1), 2 * (j + 1))],
                            )
                            if got is not None:
                                return got
                            todo.add(t)
        return None

    program = extend(list(PROJECTIONS), [])
    if program is None:
        raise AssertionError("search state has no consistent build order")
    return program


def _derive_program_aig(items):
    """Order AIG node tables into a program of ANDs over negatable edges."""
    todo = set(items)

    def extend(avail, program):
        if not todo:
            return program
        for t in sorted(todo):
            for i in range(len(avail)):
                for j in range(i + 1, len(avail)):
                    for mask in range(4):
                        a = avail[i] ^ (FULL if mask & 1 else 0)
                        b = avail[j] ^ (FULL if mask & 2 else 0)
                        if a & b != t:
                            continue
                        todo.discard(t)
                        got = extend(
                            avail + [t],
                            program + [(KIND_AND,
                                        2 * (i + 1) + (mask & 1),
                                        2 * (j + 1) + ((mask >> 1) & 1))],
                        )
                        if got is not None:
                            return got
                        todo.add(t)
        return None

    program = extend(list(PROJECTIONS), [])
    if program is None:
        raise AssertionError("search state has no consistent build order")
    return program


def _invert_input_transform(in_perm, in_neg):
    inv_perm = [0, 0, 0]
    for i in range(3):
        inv_perm[in_perm[i]] = i
    inv_neg = 0
    for i in range(3):
        if (in_neg >> i) & 1:
            inv_neg |= 1 << in_perm[i]
    return tuple(inv_perm), inv_neg


def _entry_from_record(basis, key, level, items, raw_pins, optimal):
    """Turn a search record into a DbEntry computing `key` exactly.

    The record witnesses the *raw* pin tuple; the witness is relabelled
    through the inverse class transform so its outputs produce the
    canonical representative instead.
    """
    if basis == "BENCH":
        program = _derive_program_bench(items)
    else:
        program = _derive_program_aig(items)
    _, t = canonicalize(raw_pins, basis)  # t.apply(key) == raw_pins

    # Relabel inputs through the inverse transform.  Where the original
    # program reads input j it must now read input in_perm[j], negated
    # per the inverse mask (AIG only; BENCH masks are always 0).
    inv_perm, inv_neg = _invert_input_transform(t.in_perm, t.in_neg)
    relabeled = []
    for code, l1, l2 in program:
        lits = []
        for lit in (l1, l2):
            sig, neg = lit >> 1, lit & 1
            if 1 <= sig <= 3:
                new = t.in_perm[sig - 1] + 1
                neg ^= (inv_neg >> (new - 1)) & 1
                lits.append(2 * new + neg)
            else:
                lits.append(lit)
        relabeled.append((code, lits[0], lits[1]))

    # Tables of the relabelled program, for binding outputs to signals.
    m_inv = _input_map(inv_perm, inv_neg)
    tables = [None, *PROJECTIONS]
    for code, l1, l2 in relabeled:
        a = tables[l1 >> 1] ^ (FULL if l1 & 1 else 0)
        if code == KIND_NOT:
            tables.append(a ^ FULL)
        else:
            b = tables[l2 >> 1] ^ (FULL if l2 & 1 else 0)
            tables.append(apply_kind(code, a, b))

    out_spec = []
    for c, want in enumerate(key):
        sig = neg = None
        for s in range(len(tables) - 1, 0, -1):
            if tables[s] == want:
                sig, neg = s, False
                break
            if tables[s] ^ FULL == want:
                sig, neg = s, True
                break
        if sig is None:
            raise AssertionError("canonical table missing from witness")
        out_spec.append((sig, neg))

    entry = DbEntry(tuple(key), level, relabeled, out_spec, optimal)
    assert entry.output_tables() == tuple(key)
    return entry


def build_database(basis: str, cap: int, time_budget: float = None,
                   force_python: bool = False) -> Database:
    """Bottom-up synthesis of all classes realizable within `cap` gates."""
    basis = basis.upper()
    if basis not in ("AIG", "BENCH"):
        raise CircuitError(f"unknown basis {basis!r}")
    if cap < 0:
        raise CircuitError("cap must be nonnegative")
    use_kernel = HAVE_KERNELS and not force_python
    if use_kernel:
        enum = (_kernels.enumerate_bench if basis == "BENCH"
                else _kernels.enumerate_aig)
    else:
        enum = (_enum_py.enumerate_bench if basis == "BENCH"
                else _enum_py.enumerate_aig)
    res = enum(cap, time_budget)
    db = Database(basis, cap)
    db.levels_complete = res.levels_complete
    db.states_per_level = list(res.states_per_level)
    for k in (1, 2, 3):
        for key, (level, items, raw_pins) in res.found[k].items():
            optimal = level <= res.levels_complete
            db.sections[k][tuple(key)] = _entry_from_record(
                basis, tuple(key), level, items, raw_pins, optimal
            )
    return db


# ---------------------------------------------------------------------------
# lookup
# ---------------------------------------------------------------------------


@dataclass
class Fragment:
    """A circuit over 3 inputs realizing a queried tuple of tables."""

    circuit: Circuit
    outputs: list      # per query table: output index in circuit.outputs
    size: int


@dataclass
class LookupResult:
    fragment: Fragment
    entry: DbEntry | None


def _materialize(entry: DbEntry, transform: ClassTransform, basis: str,
                 want: tuple) -> Fragment:
    """Build `entry`'s program as a Circuit whose outputs are `want`.

    BENCH output negation is realized by flipping the final gate's kind
    (or inserting a twin gate when that gate has other consumers); AIG
    negations are edge/output flags.  Gates feeding no requested output
    are dropped, so sizes can undercut the entry's nominal size when a
    padded output is discarded.
    """
    # query[j] = entry tables at out_spec[transform.out_perm[j]], with
    # input relabel (in_perm, in_neg) and negation bit j of out_neg.
    inv_perm, inv_neg = _invert_input_transform(transform.in_perm, transform.in_neg)

    c = Circuit(basis)
    in_ids = [c.add_input(n) for n in ("p1", "p2", "p3")]
    gate_ids = [None, *in_ids] + [None] * len(entry.program)

    def build_sig(sig):
        # signals built lazily so unused program gates are never emitted
        if gate_ids[sig] is not None:
            return gate_ids[sig]
        code, l1, l2 = entry.program[sig - 4]
        ops = []
        for lit in (l1, l2)[: 1 if code == KIND_NOT else 2]:
            s, neg = lit >> 1, lit & 1
            if 1 <= s <= 3:
                # program reads y_s; y_s = x_{inv_perm[s]} ^ in_neg bit
                s2 = inv_perm[s - 1] + 1
                neg ^= (transform.in_neg >> (s2 - 1)) & 1
                base = in_ids[s2 - 1]
            else:
                base = build_sig(s)
            # BENCH programs carry no negated literals (masks are 0)
            ops.append((base, bool(neg)))
        gid = c.add_gate(KIND_OF_CODE[code], ops)
        gate_ids[sig] = gid
        return gid

    # count how often each gate signal is consumed (operands + requested
    # outputs) so a negated output only flips a gate's kind in place when
    # nothing else reads that gate
    refs = [0] * (4 + len(entry.program))
    for code, l1, l2 in entry.program:
        for lit in (l1, l2)[: 1 if code == KIND_NOT else 2]:
            if (lit >> 1) >= 4:
                refs[lit >> 1] += 1
    for j in range(len(want)):
        sig = entry.out_spec[transform.out_perm[j]][0]
        if sig >= 4:
            refs[sig] += 1

    out_indices = []
    for j in range(len(want)):
        sig, neg0 = entry.out_spec[transform.out_perm[j]]
        neg = bool(neg0) ^ bool((transform.out_neg >> j) & 1)
        if sig <= 3:
            s2 = inv_perm[sig - 1] + 1
            neg ^= bool((transform.in_neg >> (s2 - 1)) & 1)
            gid = in_ids[s2 - 1]
        else:
            gid = build_sig(sig)
        if basis == "AIG":
            c.add_output(gid, neg)
        else:
            if neg:
                gid = _bench_negate(c, gid, allow_flip=sig >= 4 and refs[sig] == 1)
            c.add_output(gid)
        out_indices.append(j)

    frag = Fragment(c, out_indices, c.size)
    got = tuple(t.bits for t in c.truth_tables())
    assert got == tuple(want), (got, want)
    return frag


def _bench_negate(c: Circuit, gid: int, allow_flip: bool = True):
    """Negate a BENCH signal: flip a sole-use binary gate's kind, else NOT."""
    gate = c.gate(gid)
    from .core import NEGATED_TWIN
    if allow_flip and gate.kind in NEGATED_TWIN and not c.fanout(gid) and not any(
        o == gid for o, _ in c.outputs
    ):
        gate.kind = NEGATED_TWIN[gate.kind]
        gate.version = c._bump()
        return gid
    if allow_flip and gate.kind is GateKind.NOT and not c.fanout(gid) and not any(
        o == gid for o, _ in c.outputs
    ):
        # double negation: reuse the NOT's operand
        src = gate.operands[0][0]
        c.outputs = list(c.outputs)
        c.remove_gate(gid)
        return src
    return c.add_gate(GateKind.NOT, [gid])


def lookup(db: Database, tables, basis: str = None):
    """Find a minimal fragment computing `tables` (1..3 of them).

    Constant and projection tables are wired directly and cost nothing;
    the remaining distinct tables are canonicalized and fetched from the
    matching section.  Returns a LookupResult or None on a miss.
    """
    basis = (basis or db.basis).upper()
    tables = tuple(t & FULL for t in tables)
    if not 1 <= len(tables) <= 3:
        raise CircuitError("lookup takes 1..3 tables")

    plan = []          # per query table: ("const", v) | ("proj", i) | ("db", idx, neg)
    remaining = []     # distinct tables sent to the database
    for t in tables:
        if t in (0, FULL):
            plan.append(("const", t))
        elif t in PROJECTIONS:
            plan.append(("proj", PROJECTIONS.index(t)))
        elif t in remaining:
            plan.append(("db", remaining.index(t), False))
        elif basis == "AIG" and (t ^ FULL) in remaining:
            # serve the complement from the same node via an output flag
            plan.append(("db", remaining.index(t ^ FULL), True))
        else:
            remaining.append(t)
            plan.append(("db", len(remaining) - 1, False))

    entry = None
    if remaining:
        key, transform = canonicalize(tuple(remaining), basis)
        entry = db.sections[len(remaining)].get(key)
        if entry is None:
            return None
        frag = _materialize(entry, transform, basis, tuple(remaining))
    else:
        frag = Fragment(_projection_only_circuit(basis), [], 0)

    c = frag.circuit
    outputs = []
    db_outs = list(c.outputs)
    c.outputs = []
    for step in plan:
        if step[0] == "const":
            kind = GateKind.CONST1 if step[1] == FULL else GateKind.CONST0
            gid = c.add_gate(kind)
            c.add_output(gid)
        elif step[0] == "proj":
            c.add_output(c.inputs[step[1]])
        else:
            gid, neg = db_outs[step[1]]
            if step[2]:
                neg = not neg
            if basis == "AIG":
                c.add_output(gid, neg)
            else:
                c.add_output(_bench_negate(c, gid) if neg else gid)
        outputs.append(len(c.outputs) - 1)
    frag.outputs = outputs
    frag.size = c.size
    got = tuple(t.bits for t in c.truth_tables())
    assert got == tables, (got, tables)
    return LookupResult(frag, entry)


def _projection_only_circuit(basis: str) -> Circuit:
    c = Circuit(basis)
    for n in ("p1", "p2", "p3"):
        c.add_input(n)
    return c


# ---------------------------------------------------------------------------
# serialization (SIMPDB)
# ---------------------------------------------------------------------------

_MAGIC = b"SIMPDB 1 "


def save_db(db: Database, sink) -> None:
    close = False
    if isinstance(sink, (str, bytes)):
        sink = open(sink, "wb")
        close = True
    try:
        body = io.BytesIO()
        body.write(_MAGIC + f"{db.basis} {db.cap}\n".encode())
        body.write(struct.pack("<HH", db.levels_complete, len(db.states_per_level)))
        for n in db.states_per_level:
            body.write(struct.pack("<I", n))
        for k in (3, 2, 1):
            entries = db.sections[k]
            body.write(struct.pack("<BI", k, len(entries)))
            for key in sorted(entries):
                e = entries[key]
                body.write(bytes(key))
                body.write(struct.pack("<BBB", e.size, int(e.optimal), len(e.program)))
                for code, l1, l2 in e.program:
                    body.write(struct.pack("<BBB", code, l1, l2))
                for sig, neg in e.out_spec:
                    body.write(struct.pack("<B", (sig << 1) | int(neg)))
        payload = body.getvalue()
        sink.write(payload)
        sink.write(struct.pack("<I", zlib.crc32(payload)))
    finally:
        if close:
            sink.close()


class DbFormatError(CircuitError):
    pass


def load_db(source) -> Database:
    if isinstance(source, (str,)):
        with open(source, "rb") as f:
            data = f.read()
    elif isinstance(source, bytes):
        data = source
    else:
        data = source.read()
    if len(data) < len(_MAGIC) + 4:
        raise DbFormatError("truncated database file")
    payload, crc = data[:-4], struct.unpack("<I", data[-4:])[0]
    if zlib.crc32(payload) != crc:
        raise DbFormatError("checksum mismatch")
    if not payload.startswith(_MAGIC):
        raise DbFormatError("bad magic / unsupported version")
    nl = payload.index(b"\n")
    try:
        basis, cap = payload[len(_MAGIC):nl].decode().split()
        cap = int(cap)
    except ValueError:
        raise DbFormatError("malformed header") from None
    db = Database(basis, cap)
    view = memoryview(payload)[nl + 1:]
    pos = 0

    def take(fmt):
        nonlocal pos
        n = struct.calcsize(fmt)
        vals = struct.unpack_from(fmt, view, pos)
        pos += n
        return vals

    db.levels_complete, nlev = take("<HH")
    db.states_per_level = [take("<I")[0] for _ in range(nlev)]
    for _ in range(3):
        k, count = take("<BI")
        for _ in range(count):
            key = tuple(view[pos:pos + k])
            pos += k
            size, opt, nprog = take("<BBB")
            program = [take("<BBB") for _ in range(nprog)]
            out_spec = []
            for _ in range(k):
                b = take("<B")[0]
                out_spec.append((b >> 1, bool(b & 1)))
            entry = DbEntry(key, size, program, out_spec, bool(opt))
            if entry.output_tables() != key:
                raise DbFormatError("corrupt entry for key %s" % (key,))
            db.sections[k][key] = entry
    return db


# ---------------------------------------------------------------------------
# statistics
# ---------------------------------------------------------------------------


def db_stats(db: Database) -> dict:
    """Class/function counts by size for the 3-output section (per-size
    distribution of canonical classes), split by optimality."""
    rows = {}
    for key, e in db.sections[3].items():
        row = rows.setdefault(e.size, {"classes": 0, "functions": 0,
                                       "optimal": 0, "unproven": 0})
        row["classes"] += 1
        row["functions"] += orbit_size(key, db.basis)
        row["optimal" if e.optimal else "unproven"] += 1
    return dict(sorted(rows.items()))


def format_stats(db: Database) -> str:
    lines = [f"basis {db.basis}, cap {db.cap}",
             f"{'size':>4} {'classes':>8} {'functions':>10} {'optimal':>8}"]
    for size, row in db_stats(db).items():
        lines.append(f"{size:>4} {row['classes']:>8} {row['functions']:>10,}"
                     f" {row['optimal']:>8}")
    return "\n".join(lines)
