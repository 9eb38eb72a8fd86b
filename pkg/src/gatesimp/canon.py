"""Canonical classes of 3-input function tuples under basis symmetries.

Functions of three inputs are 8-bit truth tables (bit b = value on
assignment b, x1 least significant).  Two output tuples are equivalent
when related by:

* BENCH: permuting inputs, permuting outputs, negating outputs
  (every binary BENCH gate has a negated twin, so output negation is
  free); input negation is *not* free (a NOT on an input costs a gate).
* AIG: permuting and negating inputs, permuting and negating outputs
  (all negations ride on edges for free).

Canonical keys are the lexicographically least table tuple over the
group, treating the tuple as unordered.  For AIG the representative is
anchored to normal functions: each table maps input 000 to 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

FULL = 0xFF
PROJECTIONS = (0xAA, 0xCC, 0xF0)  # x1, x2, x3


@lru_cache(maxsize=None)
def _input_map(perm, negmask) -> tuple:
    """256-entry table transform for f'(x) = f(y), y[perm[i]] = x[i]^neg[i]."""
    m = [0] * 256
    for t in range(256):
        nt = 0
        for a in range(8):
            b = 0
            for i in range(3):
                bit = (a >> i) & 1
                if (negmask >> i) & 1:
                    bit ^= 1
                b |= bit << perm[i]
            if (t >> b) & 1:
                nt |= 1 << a
        m[t] = nt
    return tuple(m)


_PERMS = tuple(itertools.permutations(range(3)))

# (perm, negmask, table map) triples
BENCH_INPUT_MAPS = tuple((p, 0, _input_map(p, 0)) for p in _PERMS)
AIG_INPUT_MAPS = tuple(
    (p, mask, _input_map(p, mask)) for p in _PERMS for mask in range(8)
)


def fold(t: int) -> int:
    """Lesser of a table and its complement (free-negation normal form)."""
    return min(t, t ^ FULL)


def anchor(t: int) -> int:
    """Normal-function anchor: complement tables with f(0,0,0) = 1."""
    return t ^ FULL if t & 1 else t


def canon_bench(tables) -> tuple:
    best = None
    for _p, _m, m in BENCH_INPUT_MAPS:
        c = tuple(sorted(min(m[t], m[t] ^ FULL) for t in tables))
        if best is None or c < best:
            best = c
    return best


def canon_aig(tables) -> tuple:
    best = None
    for _p, _m, m in AIG_INPUT_MAPS:
        c = tuple(sorted(m[t] ^ FULL if m[t] & 1 else m[t] for t in tables))
        if best is None or c < best:
            best = c
    return best


def canon(tables, basis: str) -> tuple:
    return canon_aig(tables) if basis.upper() == "AIG" else canon_bench(tables)


@dataclass(frozen=True)
class ClassTransform:
    """Group element mapping a canonical representative onto a query tuple.

    query[j] = rep[out_perm[j]] transformed by (in_perm, in_neg), then
    complemented when bit j of out_neg is set.
    """

    in_perm: tuple
    in_neg: int
    out_perm: tuple
    out_neg: int

    def apply(self, rep) -> tuple:
        m = _input_map(self.in_perm, self.in_neg)
        return tuple(
            m[rep[self.out_perm[j]]] ^ (FULL if (self.out_neg >> j) & 1 else 0)
            for j in range(len(rep))
        )


IDENTITY_TRANSFORM = ClassTransform((0, 1, 2), 0, (0, 1, 2), 0)


def canonicalize(tables, basis: str):
    """Return (canonical key, transform with transform.apply(key) == tables)."""
    tables = tuple(tables)
    basis = basis.upper()
    key = canon(tables, basis)
    maps = AIG_INPUT_MAPS if basis == "AIG" else BENCH_INPUT_MAPS
    k = len(tables)
    for perm, negmask, m in maps:
        mapped = tuple(m[t] for t in key)
        for out_perm in itertools.permutations(range(k)):
            picked = tuple(mapped[out_perm[j]] for j in range(k))
            out_neg = 0
            ok = True
            for j in range(k):
                if picked[j] == tables[j]:
                    pass
                elif picked[j] ^ FULL == tables[j]:
                    out_neg |= 1 << j
                else:
                    ok = False
                    break
            if ok:
                return key, ClassTransform(perm, negmask, out_perm, out_neg)
    raise AssertionError("canonical key not reachable from its own class")


@lru_cache(maxsize=1 << 16)
def orbit_size(key, basis: str) -> int:
    """Distinct k-element table sets in the class of `key`."""
    maps = AIG_INPUT_MAPS if basis.upper() == "AIG" else BENCH_INPUT_MAPS
    k = len(key)
    seen = set()
    for _p, _m, m in maps:
        mt = [m[t] for t in key]
        for mask in range(1 << k):
            img = frozenset(
                mt[i] ^ (FULL if (mask >> i) & 1 else 0) for i in range(k)
            )
            if len(img) == k:
                seen.add(img)
    return len(seen)
