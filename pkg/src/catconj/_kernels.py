"""Integer-table law scans.

Every law checker in the package reduces to one of the scans below once
objects and morphisms are replaced by their indices.  Each scan exists twice:
a numba ``@njit`` loop and a vectorised numpy version.  The numba path is
used when numba imports and ``CONJ_NO_NUMBA`` is unset (or ``0``).

All scans return an ``int64`` array of offending row indices (or index
triples), in increasing order, so both paths give byte-identical results.
"""

import os

import numpy as np

_DISABLED = os.environ.get("CONJ_NO_NUMBA", "0") not in ("", "0")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    HAS_NUMBA = False


def backend():
    return "numba" if HAS_NUMBA else "numpy"


# --- numpy path -------------------------------------------------------------


def _np_table_scan(src, tgt, table):
    n = table.shape[0]
    g, f = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    composable = tgt[f] == src[g]
    defined = table >= 0
    bad_def = np.argwhere(composable != defined)
    h = np.where(defined, table, 0)
    bad_ends = np.argwhere(defined & composable & ((src[h] != src[f]) | (tgt[h] != tgt[g])))
    return bad_def.astype(np.int64), bad_ends.astype(np.int64)


def _np_assoc_scan(table):
    n = table.shape[0]
    out = []
    for h in range(n):
        hg = table[h]  # hg[g] = h o g
        valid_g = np.nonzero(hg >= 0)[0]
        if valid_g.size == 0:
            continue
        sub = table[valid_g]  # sub[i, f] = g o f
        ok = sub >= 0
        left = np.where(ok, table[h][np.where(ok, sub, 0)], -1)  # h o (g o f)
        right = np.where(ok, table[hg[valid_g]], -1)  # (h o g) o f
        bad = np.argwhere(ok & (left != right))
        for i, f in bad:
            out.append((h, valid_g[i], f))
    if not out:
        return np.zeros((0, 3), dtype=np.int64)
    return np.array(out, dtype=np.int64)


def _np_unit_scan(src, tgt, ident, table):
    n = table.shape[0]
    idx = np.arange(n)
    left = table[ident[tgt], idx]  # id o f
    right = table[idx, ident[src]]  # f o id
    return np.nonzero((left != idx) | (right != idx))[0].astype(np.int64)


def _np_pair_scan(mapped_gf, mapped_g, mapped_f, target_table):
    got = target_table[mapped_g, mapped_f]
    return np.nonzero(got != mapped_gf)[0].astype(np.int64)


def _np_square_scan(top, left, right, bottom, table):
    # checks  right o top == bottom o left  row by row
    a = table[right, top]
    b = table[bottom, left]
    return np.nonzero((a != b) | (a < 0))[0].astype(np.int64)


# --- numba path -------------------------------------------------------------

if HAS_NUMBA:

    @njit(cache=True)
    def _nb_table_scan(src, tgt, table):
        n = table.shape[0]
        bad_def = []
        bad_ends = []
        for g in range(n):
            for f in range(n):
                composable = tgt[f] == src[g]
                h = table[g, f]
                if composable != (h >= 0):
                    bad_def.append((g, f))
                elif h >= 0 and (src[h] != src[f] or tgt[h] != tgt[g]):
                    bad_ends.append((g, f))
        a = np.zeros((len(bad_def), 2), dtype=np.int64)
        for i in range(len(bad_def)):
            a[i, 0] = bad_def[i][0]
            a[i, 1] = bad_def[i][1]
        b = np.zeros((len(bad_ends), 2), dtype=np.int64)
        for i in range(len(bad_ends)):
            b[i, 0] = bad_ends[i][0]
            b[i, 1] = bad_ends[i][1]
        return a, b

    @njit(cache=True)
    def _nb_assoc_scan(table):
        n = table.shape[0]
        count = 0
        for h in range(n):
            for g in range(n):
                hg = table[h, g]
                if hg < 0:
                    continue
                for f in range(n):
                    gf = table[g, f]
                    if gf < 0:
                        continue
                    if table[h, gf] != table[hg, f]:
                        count += 1
        out = np.zeros((count, 3), dtype=np.int64)
        k = 0
        for h in range(n):
            for g in range(n):
                hg = table[h, g]
                if hg < 0:
                    continue
                for f in range(n):
                    gf = table[g, f]
                    if gf < 0:
                        continue
                    if table[h, gf] != table[hg, f]:
                        out[k, 0] = h
                        out[k, 1] = g
                        out[k, 2] = f
                        k += 1
        return out

    @njit(cache=True)
    def _nb_unit_scan(src, tgt, ident, table):
        n = table.shape[0]
        flags = np.zeros(n, dtype=np.bool_)
        for f in range(n):
            if table[ident[tgt[f]], f] != f or table[f, ident[src[f]]] != f:
                flags[f] = True
        return np.nonzero(flags)[0].astype(np.int64)

    @njit(cache=True)
    def _nb_pair_scan(mapped_gf, mapped_g, mapped_f, target_table):
        m = mapped_gf.shape[0]
        flags = np.zeros(m, dtype=np.bool_)
        for i in range(m):
            if target_table[mapped_g[i], mapped_f[i]] != mapped_gf[i]:
                flags[i] = True
        return np.nonzero(flags)[0].astype(np.int64)

    @njit(cache=True)
    def _nb_square_scan(top, left, right, bottom, table):
        m = top.shape[0]
        flags = np.zeros(m, dtype=np.bool_)
        for i in range(m):
            a = table[right[i], top[i]]
            b = table[bottom[i], left[i]]
            if a != b or a < 0:
                flags[i] = True
        return np.nonzero(flags)[0].astype(np.int64)


# --- dispatch ---------------------------------------------------------------


def _i64(*arrays):
    return tuple(np.ascontiguousarray(a, dtype=np.int64) for a in arrays)


def table_scan(src, tgt, table):
    """Pairs (g, f) where definedness or endpoints of ``g o f`` are wrong."""
    src, tgt, table = _i64(src, tgt, table)
    if HAS_NUMBA:
        return _nb_table_scan(src, tgt, table)
    return _np_table_scan(src, tgt, table)


def assoc_scan(table):
    """Triples (h, g, f) with ``h o (g o f) != (h o g) o f``."""
    (table,) = _i64(table)
    if HAS_NUMBA:
        return _nb_assoc_scan(table)
    return _np_assoc_scan(table)


def unit_scan(src, tgt, ident, table):
    src, tgt, ident, table = _i64(src, tgt, ident, table)
    if HAS_NUMBA:
        return _nb_unit_scan(src, tgt, ident, table)
    return _np_unit_scan(src, tgt, ident, table)


def pair_scan(mapped_gf, mapped_g, mapped_f, target_table):
    """Rows where ``target_table[g', f'] != (gf)'`` (composition preservation)."""
    args = _i64(mapped_gf, mapped_g, mapped_f, target_table)
    if HAS_NUMBA:
        return _nb_pair_scan(*args)
    return _np_pair_scan(*args)


def square_scan(top, left, right, bottom, table):
    """Rows where the square ``right o top == bottom o left`` fails."""
    args = _i64(top, left, right, bottom, table)
    if HAS_NUMBA:
        return _nb_square_scan(*args)
    return _np_square_scan(*args)
