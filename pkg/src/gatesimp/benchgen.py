"""Benchmark circuit generators: counting/threshold blocks, pigeonhole,
even colouring, clique, factorization, multipliers, and miters of
function pairs.  All constructions are plain BENCH netlists (convert
via `equiv.convert` for AIG); semantic correctness is checked against
arithmetic/combinatorial oracles in the test suite.
"""

from __future__ import annotations

from .core import Circuit, CircuitError, GateKind
from . import equiv

# signals handed around below are either a gate id (int) or one of the
# symbolic constants "0"/"1".  Only const-op-const is folded; a constant
# meeting a live signal becomes a real gate with a CONST operand — the
# generators deliberately emit the literal encodings so the corpus keeps
# the redundancy a simplifier is supposed to find.
ZERO, ONE = "0", "1"
_CONSTS = {ZERO: 0, ONE: 1}


def _gate(c: Circuit, kind: GateKind, a, b=None):
    if kind is GateKind.NOT:
        if a in _CONSTS:
            return ONE if a == ZERO else ZERO
        return c.add_gate(kind, [a])
    av, bv = _CONSTS.get(a), _CONSTS.get(b)
    if av is not None and bv is not None:
        flip = kind in (GateKind.NAND, GateKind.NOR, GateKind.NXOR)
        base = {GateKind.NAND: GateKind.AND, GateKind.NOR: GateKind.OR,
                GateKind.NXOR: GateKind.XOR}.get(kind, kind)
        v = {GateKind.AND: av & bv, GateKind.OR: av | bv,
             GateKind.XOR: av ^ bv}[base] ^ flip
        return ONE if v else ZERO
    return c.add_gate(kind, [_materialize_const(c, a),
                             _materialize_const(c, b)])


def _materialize_const(c: Circuit, sig):
    if sig not in _CONSTS:
        return sig
    cache = getattr(c, "_const_cache", None)
    if cache is None:
        cache = c._const_cache = {}
    if sig not in cache:
        kind = GateKind.CONST0 if sig == ZERO else GateKind.CONST1
        cache[sig] = c.add_gate(kind)
    return cache[sig]


def _conj(c: Circuit, terms):
    acc = ONE
    for t in terms:
        acc = t if acc == ONE else _gate(c, GateKind.AND, acc, t)
    return acc


def _disj(c: Circuit, terms):
    acc = ZERO
    for t in terms:
        acc = t if acc == ZERO else _gate(c, GateKind.OR, acc, t)
    return acc


def _full_add(c: Circuit, a, b, cin):
    t = _gate(c, GateKind.XOR, a, b)
    s = _gate(c, GateKind.XOR, t, cin)
    u = _gate(c, GateKind.AND, a, b)
    v = _gate(c, GateKind.AND, t, cin)
    return s, _gate(c, GateKind.OR, u, v)


def _half_add(c: Circuit, a, b):
    return _gate(c, GateKind.XOR, a, b), _gate(c, GateKind.AND, a, b)


def _sum_bits(c: Circuit, bits, reverse: bool = False):
    """Binary representation of the population count of `bits`.

    `reverse` picks operands from the other end of each weight bucket —
    a second adder-tree layout of the same function (used for miters).
    """
    buckets = [list(bits)]
    out = []
    w = 0
    while w < len(buckets):
        bucket = buckets[w]
        while len(bucket) > 1:
            if reverse:
                bucket.reverse()
            if len(bucket) >= 3:
                a, b, cin = bucket.pop(), bucket.pop(), bucket.pop()
                s, cy = _full_add(c, a, b, cin)
            else:
                a, b = bucket.pop(), bucket.pop()
                s, cy = _half_add(c, a, b)
            bucket.append(s)
            if w + 1 >= len(buckets):
                buckets.append([])
            buckets[w + 1].append(cy)
        out.append(bucket[0] if bucket else ZERO)
        w += 1
    while out and out[-1] == ZERO and len(out) > 1:
        # trim impossible high weights, keeping ceil(log2(n+1)) bits
        need = max(1, (len(bits)).bit_length())
        if len(out) <= need:
            break
        out.pop()
    return out


def gen_sum(n: int) -> Circuit:
    """Circuit computing the binary weight of its n inputs."""
    if n < 1:
        raise CircuitError("n >= 1")
    c = Circuit("BENCH", name=f"sum{n}")
    xs = [c.add_input(f"x{i+1}") for i in range(n)]
    for bit in _sum_bits(c, xs):
        c.add_output(_materialize_const(c, bit))
    return c


def _compare_ge(c: Circuit, bits, k: int):
    """Signal for [binary(bits) >= k]."""
    gt, eq = ZERO, ONE
    for i in reversed(range(len(bits))):
        s = bits[i]
        if (k >> i) & 1:
            eq = _gate(c, GateKind.AND, eq, s)
        else:
            gt = _gate(c, GateKind.OR, gt, _gate(c, GateKind.AND, eq, s))
            eq = _gate(c, GateKind.AND, eq, _gate(c, GateKind.NOT, s))
    if k >> len(bits):
        return ZERO  # k exceeds the representable range
    return _gate(c, GateKind.OR, gt, eq)


def _equals_const(c: Circuit, bits, k: int):
    if k >> len(bits):
        return ZERO
    return _conj(c, [s if (k >> i) & 1 else _gate(c, GateKind.NOT, s)
                     for i, s in enumerate(bits)])


def _atleast(c: Circuit, xs, k: int):
    if k <= 0:
        return ONE
    if k > len(xs):
        return ZERO
    if k == 1:
        return _disj(c, xs)
    return _compare_ge(c, _sum_bits(c, xs), k)


def _atmost(c: Circuit, xs, k: int):
    return _gate(c, GateKind.NOT, _atleast(c, xs, k + 1))


def gen_atleast(n: int, k: int) -> Circuit:
    if not 0 <= k <= n + 1:
        raise CircuitError("0 <= k <= n+1")
    c = Circuit("BENCH", name=f"atleast{n}_{k}")
    xs = [c.add_input(f"x{i+1}") for i in range(n)]
    c.add_output(_materialize_const(c, _atleast(c, xs, k)))
    return c


def gen_atmost(n: int, k: int) -> Circuit:
    if not 0 <= k <= n + 1:
        raise CircuitError("0 <= k <= n+1")
    c = Circuit("BENCH", name=f"atmost{n}_{k}")
    xs = [c.add_input(f"x{i+1}") for i in range(n)]
    c.add_output(_materialize_const(c, _atmost(c, xs, k)))
    return c


def gen_pigeonhole(n: int, m: int, k: int) -> Circuit:
    """x_ij = pigeon i sits in hole j; every pigeon placed, every hole
    capped at k occupants."""
    if n < 1 or m < 1 or k < 1:
        raise CircuitError("n, m, k >= 1")
    c = Circuit("BENCH", name=f"php{n}_{m}_{k}")
    x = [[c.add_input(f"x{i+1}_{j+1}") for j in range(m)] for i in range(n)]
    terms = [_atleast(c, x[i], 1) for i in range(n)]
    for j in range(m):
        col = [x[i][j] for i in range(n)]
        terms.append(_atmost(c, col, k))
    c.add_output(_materialize_const(c, _conj(c, terms)))
    return c


def parse_edge_list(text: str) -> list:
    """`u v` per line, 0-indexed vertices; '#' comments allowed."""
    edges = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        u, v = map(int, line.split())
        edges.append((u, v))
    return edges


def gen_even_colouring(edges) -> Circuit:
    """One input per edge; each vertex needs exactly half its incident
    edges labelled 1.  Every degree must be even."""
    if isinstance(edges, str):
        edges = parse_edge_list(edges)
    c = Circuit("BENCH", name="evencol")
    vars = [c.add_input(f"e{i+1}") for i in range(len(edges))]
    incident: dict = {}
    for i, (u, v) in enumerate(edges):
        incident.setdefault(u, []).append(vars[i])
        incident.setdefault(v, []).append(vars[i])
    terms = []
    for v in sorted(incident):
        deg = len(incident[v])
        if deg % 2:
            raise CircuitError(f"vertex {v} has odd degree {deg}")
        bits = _sum_bits(c, incident[v])
        terms.append(_equals_const(c, bits, deg // 2))
    c.add_output(_materialize_const(c, _conj(c, terms)))
    return c


def gen_clique(edges, k: int, n_vertices: int = None) -> Circuit:
    """One input per vertex (membership); asserts the selected set is a
    clique of size >= k (non-edge exclusion + at most n-k zeros)."""
    if isinstance(edges, str):
        edges = parse_edge_list(edges)
    n = n_vertices or (max((max(u, v) for u, v in edges), default=-1) + 1)
    if k > n:
        raise CircuitError("k <= |V| required")
    c = Circuit("BENCH", name=f"clique{n}_{k}")
    xs = [c.add_input(f"v{i+1}") for i in range(n)]
    present = {(min(u, v), max(u, v)) for u, v in edges}
    terms = [_gate(c, GateKind.NAND, xs[u], xs[v])
             for u in range(n) for v in range(u + 1, n)
             if (u, v) not in present]
    negs = [_gate(c, GateKind.NOT, x) for x in xs]
    terms.append(_atmost(c, negs, n - k))
    c.add_output(_materialize_const(c, _conj(c, terms)))
    return c


def _ripple_add(c: Circuit, A, B):
    """Sum of two little-endian bit vectors (lengths may differ)."""
    n = max(len(A), len(B))
    A = list(A) + [ZERO] * (n - len(A))
    B = list(B) + [ZERO] * (n - len(B))
    out, carry = [], ZERO
    for a, b in zip(A, B):
        s, carry = _full_add(c, a, b, carry)
        out.append(s)
    out.append(carry)
    return out


def _ripple_sub(c: Circuit, A, B):
    """A - B for little-endian vectors with A >= B guaranteed."""
    n = max(len(A), len(B))
    A = list(A) + [ZERO] * (n - len(A))
    B = list(B) + [ZERO] * (n - len(B))
    out, borrow = [], ZERO
    for a, b in zip(A, B):
        t = _gate(c, GateKind.XOR, a, b)
        d = _gate(c, GateKind.XOR, t, borrow)
        # borrow out = (~a & b) | (~(a^b) & borrow)
        u = _gate(c, GateKind.AND, _gate(c, GateKind.NOT, a), b)
        v = _gate(c, GateKind.AND, _gate(c, GateKind.NOT, t), borrow)
        borrow = _gate(c, GateKind.OR, u, v)
        out.append(d)
    return out


def _mult_schoolbook(c: Circuit, A, B):
    total = len(A) + len(B)
    acc = [_gate(c, GateKind.AND, a, B[0]) for a in A]
    for j in range(1, len(B)):
        row = [ZERO] * j + [_gate(c, GateKind.AND, a, B[j]) for a in A]
        acc = _ripple_add(c, acc, row)[:total]
    return (acc + [ZERO] * total)[:total]


KARATSUBA_BASE = 4


def _mult_karatsuba(c: Circuit, A, B):
    n = max(len(A), len(B))
    if n < KARATSUBA_BASE:
        return _mult_schoolbook(c, A, B)
    A = list(A) + [ZERO] * (n - len(A))
    B = list(B) + [ZERO] * (n - len(B))
    m = n // 2
    a_lo, a_hi = A[:m], A[m:]
    b_lo, b_hi = B[:m], B[m:]
    z0 = _mult_karatsuba(c, a_lo, b_lo)
    z2 = _mult_karatsuba(c, a_hi, b_hi)
    sa = _ripple_add(c, a_lo, a_hi)
    sb = _ripple_add(c, b_lo, b_hi)
    z1 = _ripple_sub(c, _ripple_sub(c, _mult_karatsuba(c, sa, sb), z0), z2)
    out = list(z0) + [ZERO] * (2 * n - len(z0))
    out = _ripple_add(c, out, [ZERO] * m + z1)
    out = _ripple_add(c, out, [ZERO] * (2 * m) + z2)
    return out[: len(A) + len(B)]


def gen_multiplier(n: int, method: str = "schoolbook") -> Circuit:
    """n x n -> 2n bit multiplier (little-endian input/output order)."""
    if n < 1:
        raise CircuitError("n >= 1")
    c = Circuit("BENCH", name=f"mult{n}_{method}")
    A = [c.add_input(f"a{i}") for i in range(n)]
    B = [c.add_input(f"b{i}") for i in range(n)]
    fn = {"schoolbook": _mult_schoolbook, "karatsuba": _mult_karatsuba}[method]
    for bit in fn(c, A, B)[: 2 * n]:
        c.add_output(_materialize_const(c, bit))
    return c


def gen_factorization(k: int) -> Circuit:
    """Satisfiable iff k has a nontrivial factorization a*b = k."""
    if k < 2:
        raise CircuitError("k >= 2")
    w = max((k - 1).bit_length(), 1)
    c = Circuit("BENCH", name=f"factor{k}")
    A = [c.add_input(f"a{i}") for i in range(w)]
    B = [c.add_input(f"b{i}") for i in range(w)]
    prod = _mult_schoolbook(c, A, B)
    acc = _conj(c, [
        _equals_const(c, prod, k),
        _gate(c, GateKind.NOT, _equals_const(c, A, 1)),
        _gate(c, GateKind.NOT, _equals_const(c, A, k)),
    ])
    c.add_output(_materialize_const(c, acc))
    return c


def _threshold2_direct(n: int) -> Circuit:
    """[x1+...+xn >= 2] as an OR over pairwise ANDs (sort-free)."""
    c = Circuit("BENCH", name=f"thr2_{n}")
    xs = [c.add_input(f"x{i+1}") for i in range(n)]
    pairs = [_gate(c, GateKind.AND, xs[i], xs[j])
             for i in range(n) for j in range(i + 1, n)]
    c.add_output(_materialize_const(c, _disj(c, pairs)))
    return c


def _sum_variant(n: int, reverse: bool) -> Circuit:
    c = Circuit("BENCH", name=f"sum{n}{'r' if reverse else ''}")
    xs = [c.add_input(f"x{i+1}") for i in range(n)]
    for bit in _sum_bits(c, xs, reverse=reverse):
        c.add_output(_materialize_const(c, bit))
    return c


def gen_miter_family(family: str, n: int, basis: str = "BENCH") -> Circuit:
    """Miter of two constructions of one function; constant-0 by design."""
    if family == "summation":
        c1, c2 = _sum_variant(n, False), _sum_variant(n, True)
    elif family == "threshold":
        c1, c2 = _threshold2_direct(n), gen_atleast(n, 2)
    elif family == "multiplication":
        c1 = gen_multiplier(n, "schoolbook")
        c2 = gen_multiplier(n, "karatsuba")
    else:
        raise CircuitError(f"unknown miter family {family!r}")
    return equiv.miter(c1, c2, basis)
