"""Hot enumeration kernels.

Two inner loops dominate runtime at scale: the low-index backtracking search
over partial coset tables and the brute-force homomorphism search used for
normal-subgroup enumeration.  Both operate on flat int32 arrays and carry
``numba.njit`` when available; setting ``FPCERT_JIT=0`` (or numba being
absent) selects the pure-Python/numpy fallback, which runs the very same
function bodies uncompiled.  ``bench/bench_kernels.py`` compares the two.

Encoding: a presentation with n generators uses 2n table columns; column
``2*g`` is the action of generator g, column ``2*g + 1`` its inverse, so
``col ^ 1`` flips a letter.  Undefined entries are -1.  Relators are passed
as flattened column sequences.
"""

from __future__ import annotations

import os

import numpy as np


def _jit_wanted() -> bool:
    flag = os.environ.get("FPCERT_JIT", "").strip().lower()
    if flag in {"0", "off", "false", "no"}:
        return False
    return True


def _identity(f):
    return f


if _jit_wanted():
    try:
        from numba import njit

        def _jit(f):
            return njit(cache=True)(f)

    except ImportError:  # pragma: no cover - numba is a declared dependency
        _jit = _identity
else:
    _jit = _identity


def _low_index_impl(ncols, max_index, rot_flat, rot_off, col_rot_idx, col_rot_off):
    """Enumerate every complete standardized coset table on <= max_index cosets.

    Depth-first over table slots in row-major order; each choice is propagated
    Felsch-style (deduction stack over relator rotations grouped by first
    column).  Because the first undefined slot is always filled next and new
    cosets are numbered in order of appearance, each subgroup's standardized
    table is generated exactly once.

    Returns (stacked_rows, sizes): table i occupies rows
    sum(sizes[:i]) .. sum(sizes[:i+1]) of stacked_rows.
    """
    cap = max_index
    table = np.full((cap, ncols), -1, np.int32)
    nslots = cap * ncols

    f_slot = np.empty(nslots + 1, np.int32)
    f_beta = np.empty(nslots + 1, np.int32)
    f_log = np.empty(nslots + 1, np.int32)
    f_ncos = np.empty(nslots + 1, np.int32)
    log_c = np.empty(nslots + 2, np.int32)
    log_col = np.empty(nslots + 2, np.int32)
    ded_c = np.empty(2 * nslots + 4, np.int32)
    ded_col = np.empty(2 * nslots + 4, np.int32)

    res_cap = 256
    res = np.empty((res_cap, ncols), np.int32)
    sizes_cap = 64
    sizes = np.empty(sizes_cap, np.int32)
    res_rows = 0
    ntab = 0

    log_ptr = 0
    depth = 1
    f_slot[0] = 0
    f_beta[0] = 0
    f_log[0] = 0
    f_ncos[0] = 1

    while depth > 0:
        fi = depth - 1
        base = f_log[fi]
        while log_ptr > base:
            log_ptr -= 1
            table[log_c[log_ptr], log_col[log_ptr]] = -1
        slot = f_slot[fi]
        row = slot // ncols
        col = slot % ncols
        advanced = False
        while f_beta[fi] <= f_ncos[fi]:
            beta_code = f_beta[fi]
            f_beta[fi] += 1
            if beta_code < f_ncos[fi]:
                beta = beta_code
                if table[beta, col ^ 1] != -1:
                    continue
                cur_ncos = f_ncos[fi]
            else:
                if f_ncos[fi] >= max_index:
                    continue
                beta = f_ncos[fi]
                cur_ncos = f_ncos[fi] + 1

            table[row, col] = beta
            log_c[log_ptr] = row
            log_col[log_ptr] = col
            log_ptr += 1
            table[beta, col ^ 1] = row
            log_c[log_ptr] = beta
            log_col[log_ptr] = col ^ 1
            log_ptr += 1

            dp = 0
            ded_c[dp] = row
            ded_col[dp] = col
            dp += 1
            ded_c[dp] = beta
            ded_col[dp] = col ^ 1
            dp += 1

            ok = True
            while dp > 0 and ok:
                dp -= 1
                gamma = ded_c[dp]
                y = ded_col[dp]
                for ridx in range(col_rot_off[y], col_rot_off[y + 1]):
                    ri = col_rot_idx[ridx]
                    rbase = rot_off[ri]
                    rlen = rot_off[ri + 1] - rbase
                    c = gamma
                    i = 0
                    while i < rlen:
                        t = table[c, rot_flat[rbase + i]]
                        if t == -1:
                            break
                        c = t
                        i += 1
                    if i == rlen:
                        if c != gamma:
                            ok = False
                            break
                        continue
                    d = gamma
                    j = rlen - 1
                    while j >= i:
                        t = table[d, rot_flat[rbase + j] ^ 1]
                        if t == -1:
                            break
                        d = t
                        j -= 1
                    if j == i:
                        cf = rot_flat[rbase + i]
                        table[c, cf] = d
                        log_c[log_ptr] = c
                        log_col[log_ptr] = cf
                        log_ptr += 1
                        ded_c[dp] = c
                        ded_col[dp] = cf
                        dp += 1
                        if table[d, cf ^ 1] == -1:
                            table[d, cf ^ 1] = c
                            log_c[log_ptr] = d
                            log_col[log_ptr] = cf ^ 1
                            log_ptr += 1
                            ded_c[dp] = d
                            ded_col[dp] = cf ^ 1
                            dp += 1
                        elif table[d, cf ^ 1] != c:
                            ok = False
                            break
                    elif j < i:
                        if c != d:
                            ok = False
                            break

            if not ok:
                while log_ptr > base:
                    log_ptr -= 1
                    table[log_c[log_ptr], log_col[log_ptr]] = -1
                continue

            next_slot = -1
            s = slot
            total = cur_ncos * ncols
            while s < total:
                if table[s // ncols, s % ncols] == -1:
                    next_slot = s
                    break
                s += 1

            if next_slot == -1:
                while res_rows + cur_ncos > res_cap:
                    res_cap *= 2
                    bigger = np.empty((res_cap, ncols), np.int32)
                    bigger[:res_rows] = res[:res_rows]
                    res = bigger
                if ntab >= sizes_cap:
                    sizes_cap *= 2
                    bigger_s = np.empty(sizes_cap, np.int32)
                    bigger_s[:ntab] = sizes[:ntab]
                    sizes = bigger_s
                for r2 in range(cur_ncos):
                    for c2 in range(ncols):
                        res[res_rows + r2, c2] = table[r2, c2]
                res_rows += cur_ncos
                sizes[ntab] = cur_ncos
                ntab += 1
                while log_ptr > base:
                    log_ptr -= 1
                    table[log_c[log_ptr], log_col[log_ptr]] = -1
                continue

            f_slot[depth] = next_slot
            f_beta[depth] = 0
            f_log[depth] = log_ptr
            f_ncos[depth] = cur_ncos
            depth += 1
            advanced = True
            break

        if not advanced:
            depth -= 1

    return res[:res_rows].copy(), sizes[:ntab].copy()


def _hom_tuples_impl(ngens, rel_flat, rel_off, mult, inv):
    """All generator-image tuples defining surjections onto the group `mult`.

    ``mult`` is an m x m multiplication table (element 0 the identity,
    mult[x, y] = x*y), ``inv`` its inverse table.  A tuple passes when every
    relator evaluates to the identity and the images generate the whole
    group.
    """
    m = mult.shape[0]
    nrel = rel_off.shape[0] - 1
    total = 1
    for _ in range(ngens):
        total *= m

    out_cap = 64
    out = np.empty((out_cap, ngens), np.int32)
    cnt = 0

    img = np.empty(ngens, np.int64)
    seen = np.empty(m, np.uint8)
    stack = np.empty(m, np.int32)

    for code in range(total):
        tmp = code
        for i in range(ngens):
            img[i] = tmp % m
            tmp //= m

        ok = True
        for r in range(nrel):
            e = 0
            for k in range(rel_off[r], rel_off[r + 1]):
                c = rel_flat[k]
                x = img[c >> 1]
                if c & 1:
                    x = inv[x]
                e = mult[e, x]
            if e != 0:
                ok = False
                break
        if not ok:
            continue

        for i in range(m):
            seen[i] = 0
        seen[0] = 1
        stack[0] = 0
        sp = 1
        count = 1
        while sp > 0:
            sp -= 1
            x = stack[sp]
            for i in range(ngens):
                y = mult[x, img[i]]
                if seen[y] == 0:
                    seen[y] = 1
                    stack[sp] = y
                    sp += 1
                    count += 1
        if count != m:
            continue

        if cnt >= out_cap:
            out_cap *= 2
            bigger = np.empty((out_cap, ngens), np.int32)
            bigger[:cnt] = out[:cnt]
            out = bigger
        for i in range(ngens):
            out[cnt, i] = img[i]
        cnt += 1

    return out[:cnt].copy()


low_index_tables = _jit(_low_index_impl)
hom_tuples = _jit(_hom_tuples_impl)

JIT_ENABLED = low_index_tables is not _low_index_impl
