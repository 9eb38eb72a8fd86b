# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled bottom-up enumerator for minimal 3-input circuit classes.

Mirrors ``_enum_py`` exactly (same state spaces, same recording rules)
but encodes states as 64-bit integers and tracks seen pin subsets and
canonical keys in flat bitmaps, so the deeper levels of the default
caps finish in seconds instead of hours.

State encodings:

* BENCH item: ``is_not << 11 | table << 3 | (lock + 1)``; a state is
  its items sorted ascending, packed 12 bits apiece (cap 5 fits 64).
* AIG state: node tables sorted ascending, one byte apiece, with the
  node count in the top byte (cap 7 fits 64).
"""

import time

from libc.stdint cimport int8_t, uint8_t, uint16_t, uint32_t, uint64_t
from libc.string cimport memset
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

from .canon import AIG_INPUT_MAPS, BENCH_INPUT_MAPS
from ._enum_py import EnumResult

cdef int FULL = 0xFF
cdef int PROJ0 = 0xAA, PROJ1 = 0xCC, PROJ2 = 0xF0

# input-relabel maps copied into flat C arrays at import time
cdef uint8_t BENCH_MAPS[6][256]
cdef uint8_t AIG_MAPS[48][256]

cdef _load_maps():
    cdef int i, t
    for i, (_p, _m, m) in enumerate(BENCH_INPUT_MAPS):
        for t in range(256):
            BENCH_MAPS[i][t] = m[t]
    for i, (_p, _m, m) in enumerate(AIG_INPUT_MAPS):
        for t in range(256):
            AIG_MAPS[i][t] = m[t]

_load_maps()


cdef inline int apply_kind_c(int code, int a, int b) nogil:
    cdef int r
    if code % 3 == 0:
        r = a & b
    elif code % 3 == 1:
        r = a | b
    else:
        r = a ^ b
    return r ^ FULL if code >= 3 else r


cdef inline void sort3(int* v, int n) nogil:
    cdef int t
    if n > 1 and v[0] > v[1]:
        t = v[0]; v[0] = v[1]; v[1] = t
    if n > 2:
        if v[1] > v[2]:
            t = v[1]; v[1] = v[2]; v[2] = t
        if v[0] > v[1]:
            t = v[0]; v[0] = v[1]; v[1] = t


cdef inline uint32_t canon_bench_pack(int* combo, int k) nogil:
    cdef uint32_t best = 0xFFFFFFFFu, cur
    cdef int i, j, t
    cdef int v[3]
    for i in range(6):
        for j in range(k):
            t = BENCH_MAPS[i][combo[j]]
            if (t ^ FULL) < t:
                t ^= FULL
            v[j] = t
        sort3(v, k)
        cur = 0
        for j in range(k):
            cur = (cur << 8) | <uint32_t>v[j]
        if cur < best:
            best = cur
    return best


cdef inline uint32_t canon_aig_pack(int* combo, int k) nogil:
    cdef uint32_t best = 0xFFFFFFFFu, cur
    cdef int i, j, t
    cdef int v[3]
    for i in range(48):
        for j in range(k):
            t = AIG_MAPS[i][combo[j]]
            if t & 1:
                t ^= FULL
            v[j] = t
        sort3(v, k)
        cur = 0
        for j in range(k):
            cur = (cur << 8) | <uint32_t>v[j]
        if cur < best:
            best = cur
    return best


cdef class _Recorder:
    """Seen-subset and seen-key bitmaps plus the Python `found` dicts."""

    cdef vector[uint8_t] raw1, raw2, raw3, key1, key2, key3
    cdef public object found
    cdef bint aig

    def __cinit__(self, bint aig):
        self.raw1.resize(32); self.raw2.resize(8192); self.raw3.resize(1 << 21)
        self.key1.resize(32); self.key2.resize(8192); self.key3.resize(1 << 21)
        self.found = {1: {}, 2: {}, 3: {}}
        self.aig = aig

    cdef inline bint test_set(self, vector[uint8_t]* bm, uint32_t idx) nogil:
        cdef uint8_t mask = <uint8_t>(1 << (idx & 7))
        if bm[0][idx >> 3] & mask:
            return True
        bm[0][idx >> 3] |= mask
        return False

    cdef void record(self, int* combo, int k, int level, int* items, int n):
        """Record one sorted pin combo.  `items`/`n` describe the state;
        the Python witness set is built only when the canonical key is
        new, so the hot path stays allocation-free."""
        cdef uint32_t raw = 0, key
        cdef int j, it
        cdef vector[uint8_t]* rawbm
        cdef vector[uint8_t]* keybm
        for j in range(k):
            raw = (raw << 8) | <uint32_t>combo[j]
        if k == 1:
            rawbm = &self.raw1; keybm = &self.key1
        elif k == 2:
            rawbm = &self.raw2; keybm = &self.key2
        else:
            rawbm = &self.raw3; keybm = &self.key3
        if self.test_set(rawbm, raw):
            return
        key = canon_aig_pack(combo, k) if self.aig else canon_bench_pack(combo, k)
        if self.test_set(keybm, key):
            return
        key_t = tuple((key >> (8 * (k - 1 - j))) & 0xFF for j in range(k))
        raw_t = tuple(combo[j] for j in range(k))
        if self.aig:
            items_py = frozenset(items[j] for j in range(n))
        else:
            binaries = []
            nots = []
            for j in range(n):
                it = items[j]
                if it >> 11:
                    nots.append(((it >> 3) & 0xFF, (it & 7) - 1))
                else:
                    binaries.append((it >> 3) & 0xFF)
            items_py = (frozenset(binaries), frozenset(nots))
        self.found[k][key_t] = (level, items_py, raw_t)


cdef inline uint64_t pack_bench_state(int* items, int n) nogil:
    """Items must be sorted ascending; 12 bits each, count in the top nibble
    (an item can legitimately be 0: a binary gate computing the constant-0
    table, e.g. AND(x, NOT x))."""
    cdef uint64_t s = <uint64_t>n << 60
    cdef int i
    for i in range(n):
        s |= (<uint64_t>items[i]) << (12 * i)
    return s


cdef inline int unpack_bench_state(uint64_t s, int* items) nogil:
    cdef int n = <int>(s >> 60)
    cdef int i
    for i in range(n):
        items[i] = <int>((s >> (12 * i)) & 0xFFF)
    return n


cdef inline void insert_sorted(int* arr, int n, int v) nogil:
    cdef int i = n
    while i > 0 and arr[i - 1] > v:
        arr[i] = arr[i - 1]
        i -= 1
    arr[i] = v


def enumerate_bench(int cap, time_budget=None):
    """Compiled twin of ``_enum_py.enumerate_bench``."""
    if cap > 5:
        raise ValueError("compiled BENCH enumerator packs at most 5 gates")
    cdef double deadline = time.monotonic() + time_budget if time_budget else 0.0
    cdef _Recorder rec = _Recorder(False)
    cdef unordered_set[uint64_t] visited
    cdef vector[uint64_t] frontier, nxt
    cdef uint64_t st, ns
    cdef int items[6]
    cdef int nitems, i, j, g, code, a, b, t, s, npins, nbin, nnot, k
    cdef int bt[5]
    cdef int nt_t[5]
    cdef int nt_lock[5]
    cdef int sigs[8]
    cdef int nsigs
    cdef int newitems[6]
    cdef int pins[10]
    cdef int combo[3]
    cdef uint8_t have[256]
    cdef bint ok
    cdef int c1, c2, c3
    cdef Py_ssize_t st_i
    states_per_level = []
    levels_complete = 0

    visited.insert(0)
    frontier.push_back(0)
    for level in range(1, cap + 1):
        nxt.clear()
        for st_i in range(<Py_ssize_t>frontier.size()):
            st = frontier[st_i]
            if deadline and (st_i & 1023) == 0 and time.monotonic() > deadline:
                return EnumResult(rec.found, levels_complete, states_per_level)
            nitems = unpack_bench_state(st, items)
            # split items (already ascending; NOT items sort after binary
            # because of the is_not high bit)
            nbin = 0
            nnot = 0
            memset(have, 0, 256)
            for i in range(nitems):
                if items[i] >> 11:
                    nt_t[nnot] = (items[i] >> 3) & 0xFF
                    nt_lock[nnot] = (items[i] & 7) - 1
                    have[nt_t[nnot]] = 1
                    nnot += 1
                else:
                    bt[nbin] = (items[i] >> 3) & 0xFF
                    have[bt[nbin]] = 1
                    nbin += 1
            sigs[0] = PROJ0; sigs[1] = PROJ1; sigs[2] = PROJ2
            nsigs = 3
            for i in range(nbin):
                sigs[nsigs] = bt[i]; nsigs += 1
            for i in range(nnot):
                sigs[nsigs] = nt_t[i]; nsigs += 1

            # unary NOT over an input or binary gate
            for i in range(3 + nbin):
                t = sigs[i] ^ FULL
                if have[t]:
                    continue
                for j in range(nitems):
                    newitems[j] = items[j]
                # lock -1 encodes as 0
                insert_sorted(newitems, nitems, (1 << 11) | (t << 3) | 0)
                ns = pack_bench_state(newitems, nitems + 1)
                if visited.find(ns) == visited.end():
                    visited.insert(ns)
                    nxt.push_back(ns)

            # binary gate over two distinct signals
            for i in range(nsigs):
                for j in range(i + 1, nsigs):
                    a = sigs[i]; b = sigs[j]
                    for code in range(6):
                        t = apply_kind_c(code, a, b)
                        if have[t]:
                            continue
                        ok = True
                        g = 0
                        for s in range(nnot):
                            if nt_t[s] == a or nt_t[s] == b:
                                if nt_lock[s] != -1 and nt_lock[s] != code:
                                    ok = False
                                    break
                                newitems[g] = (1 << 11) | (nt_t[s] << 3) | (code + 1)
                            else:
                                newitems[g] = (1 << 11) | (nt_t[s] << 3) | (nt_lock[s] + 1)
                            g += 1
                        if not ok:
                            continue
                        for s in range(nbin):
                            newitems[g] = bt[s] << 3
                            g += 1
                        insert_sorted(newitems, g, t << 3)
                        g += 1
                        # g == nitems + 1; sort NOT items after binaries
                        _sort_items(newitems, g)
                        ns = pack_bench_state(newitems, g)
                        if visited.find(ns) == visited.end():
                            visited.insert(ns)
                            nxt.push_back(ns)
                        # record even when the state was already reached
                        if not (t & 1):
                            npins = 0
                            for s in range(nbin):
                                if not (bt[s] & 1):
                                    pins[npins] = bt[s]; npins += 1
                                    pins[npins] = bt[s] ^ FULL; npins += 1
                            pins[npins] = t; npins += 1
                            pins[npins] = t ^ FULL; npins += 1
                            _sort_small(pins, npins)
                            for c1 in range(npins):
                                combo[0] = pins[c1]
                                if pins[c1] == t or pins[c1] == (t ^ FULL):
                                    rec.record(combo, 1, level, newitems, g)
                                for c2 in range(c1 + 1, npins):
                                    combo[1] = pins[c2]
                                    if (pins[c1] == t or pins[c1] == (t ^ FULL)
                                            or pins[c2] == t
                                            or pins[c2] == (t ^ FULL)):
                                        rec.record(combo, 2, level, newitems, g)
                                    for c3 in range(c2 + 1, npins):
                                        if not (pins[c1] == t
                                                or pins[c1] == (t ^ FULL)
                                                or pins[c2] == t
                                                or pins[c2] == (t ^ FULL)
                                                or pins[c3] == t
                                                or pins[c3] == (t ^ FULL)):
                                            continue
                                        combo[2] = pins[c3]
                                        rec.record(combo, 3, level, newitems, g)
        frontier.swap(nxt)
        states_per_level.append(frontier.size())
        levels_complete = level
    return EnumResult(rec.found, levels_complete, states_per_level)


cdef void _sort_items(int* arr, int n) nogil:
    # insertion sort, n <= 6
    cdef int i, j, v
    for i in range(1, n):
        v = arr[i]
        j = i
        while j > 0 and arr[j - 1] > v:
            arr[j] = arr[j - 1]
            j -= 1
        arr[j] = v


cdef void _sort_small(int* arr, int n) nogil:
    _sort_items(arr, n)


cdef inline uint64_t pack_aig_state(int* tabs, int n) nogil:
    cdef uint64_t s = <uint64_t>n << 56
    cdef int i
    for i in range(n):
        s |= (<uint64_t>tabs[i]) << (8 * i)
    return s


def enumerate_aig(int cap, time_budget=None):
    """Compiled twin of ``_enum_py.enumerate_aig``."""
    if cap > 7:
        raise ValueError("compiled AIG enumerator packs at most 7 nodes")
    cdef double deadline = time.monotonic() + time_budget if time_budget else 0.0
    cdef _Recorder rec = _Recorder(True)
    cdef unordered_set[uint64_t] visited
    cdef vector[uint64_t] frontier, nxt
    cdef uint64_t st, ns
    cdef int tabs[7]
    cdef int ntabs, i, j, negmask, a, b, t, s
    cdef int sigs[10]
    cdef int nsigs
    cdef int newtabs[8]
    cdef int combo[3]
    cdef uint8_t have[256]
    cdef int c1, c2, c3
    cdef Py_ssize_t st_i
    states_per_level = []
    levels_complete = 0

    visited.insert(0)
    frontier.push_back(0)
    for level in range(1, cap + 1):
        nxt.clear()
        for st_i in range(<Py_ssize_t>frontier.size()):
            st = frontier[st_i]
            if deadline and (st_i & 1023) == 0 and time.monotonic() > deadline:
                return EnumResult(rec.found, levels_complete, states_per_level)
            ntabs = <int>(st >> 56)
            memset(have, 0, 256)
            for i in range(ntabs):
                tabs[i] = <int>((st >> (8 * i)) & 0xFF)
                have[tabs[i]] = 1
            sigs[0] = PROJ0; sigs[1] = PROJ1; sigs[2] = PROJ2
            nsigs = 3
            for i in range(ntabs):
                sigs[nsigs] = tabs[i]; nsigs += 1
            for i in range(nsigs):
                for j in range(i + 1, nsigs):
                    for negmask in range(4):
                        a = sigs[i] ^ (FULL if negmask & 1 else 0)
                        b = sigs[j] ^ (FULL if negmask & 2 else 0)
                        t = a & b
                        if have[t]:
                            continue
                        for s in range(ntabs):
                            newtabs[s] = tabs[s]
                        insert_sorted(newtabs, ntabs, t)
                        ns = pack_aig_state(newtabs, ntabs + 1)
                        if visited.find(ns) == visited.end():
                            visited.insert(ns)
                            nxt.push_back(ns)
                        # record k-subsets containing t, skipping any
                        # subset holding a complement pair
                        for c1 in range(ntabs + 1):
                            combo[0] = newtabs[c1]
                            if newtabs[c1] == t:
                                rec.record(combo, 1, level, newtabs, ntabs + 1)
                            for c2 in range(c1 + 1, ntabs + 1):
                                if newtabs[c2] == (newtabs[c1] ^ FULL):
                                    continue
                                combo[1] = newtabs[c2]
                                if newtabs[c1] == t or newtabs[c2] == t:
                                    rec.record(combo, 2, level, newtabs, ntabs + 1)
                                for c3 in range(c2 + 1, ntabs + 1):
                                    if (newtabs[c3] == (newtabs[c1] ^ FULL)
                                            or newtabs[c3] == (newtabs[c2] ^ FULL)):
                                        continue
                                    if not (newtabs[c1] == t or newtabs[c2] == t
                                            or newtabs[c3] == t):
                                        continue
                                    combo[2] = newtabs[c3]
                                    rec.record(combo, 3, level, newtabs, ntabs + 1)
        frontier.swap(nxt)
        states_per_level.append(frontier.size())
        levels_complete = level
    return EnumResult(rec.found, levels_complete, states_per_level)
