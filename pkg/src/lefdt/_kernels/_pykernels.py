"""Pure-Python kernels.  Same signatures and results as ``_ckernels``.

Maps are enumerated by depth-first backtracking over domain vertices in a
fixed order.  Vertex ``order[k]`` may only take values that are allowed for
it and close to the values already given to its earlier neighbours
(``back_idx[back_ptr[k]:back_ptr[k+1]]``).  The first earlier neighbour's
closed neighbourhood in the codomain seeds the candidate list.

Status codes: 0 finished, 1 map cap exceeded, 2 node cap exceeded.
"""
import numpy as np

STAT_FIXED = 0
STAT_LEFSCHETZ = 1
STAT_AFP = 2


def _candidate_table(close, allowed):
    m = close.shape[0]
    close_lists = [np.flatnonzero(close[y]).tolist() for y in range(m)]
    allowed_sets = [frozenset(np.flatnonzero(row).tolist()) for row in allowed]
    return close_lists, allowed_sets


def _walk(order, back_ptr, back_idx, close, allowed, max_nodes, visit):
    """Backtracking driver; ``visit(assign)`` returns False to abort."""
    n = len(order)
    if n == 0:
        visit([])
        return 0, 0
    close_b = close.astype(bool)
    close_lists, allowed_sets = _candidate_table(close, allowed)
    order = [int(v) for v in order]
    backs = [[int(u) for u in back_idx[back_ptr[k]:back_ptr[k + 1]]] for k in range(n)]
    m = close.shape[0]
    every = list(range(m))
    assign = [0] * n
    nodes = 0

    def candidates(k):
        v = order[k]
        bk = backs[k]
        ok = allowed_sets[v]
        if not bk:
            return [y for y in every if y in ok]
        base = close_lists[assign[bk[0]]]
        rest = [close_b[assign[u]] for u in bk[1:]]
        return [y for y in base if y in ok and all(r[y] for r in rest)]

    stack = [candidates(0)]
    cursor = [0]
    while stack:
        k = len(stack) - 1
        cands = stack[k]
        if cursor[k] >= len(cands):
            stack.pop()
            cursor.pop()
            continue
        assign[order[k]] = cands[cursor[k]]
        cursor[k] += 1
        nodes += 1
        if nodes > max_nodes:
            return 2, nodes
        if k + 1 == n:
            if not visit(assign):
                return 1, nodes
        else:
            stack.append(candidates(k + 1))
            cursor.append(0)
    return 0, nodes


def enumerate_maps(order, back_ptr, back_idx, close, allowed, max_maps, max_nodes):
    """All admissible maps as an ``(count, n)`` int32 array."""
    out = []

    def visit(assign):
        if len(out) >= max_maps:
            return False
        out.append(list(assign))
        return True

    status, nodes = _walk(order, back_ptr, back_idx, close, allowed, max_nodes, visit)
    maps = np.asarray(out, dtype=np.int32).reshape(len(out), len(order))
    return maps, nodes, status


def cell_lefschetz(assign, cell_ptr, cell_verts, cell_dims, cubical):
    """Chain-level Lefschetz number: signed count of cells mapped onto themselves."""
    total = 0
    for c in range(len(cell_dims)):
        lo, hi = cell_ptr[c], cell_ptr[c + 1]
        verts = cell_verts[lo:hi]
        size = hi - lo
        where = {int(v): k for k, v in enumerate(verts)}
        perm = []
        for v in verts:
            k = where.get(int(assign[v]))
            if k is None:
                break
            perm.append(k)
        if len(perm) != size or len(set(perm)) != size:
            continue
        if cubical:
            r = perm[0]
            pi = [(perm[1 << i] ^ r).bit_length() - 1 for i in range(int(cell_dims[c]))]
            sign = _parity(pi) * (-1 if bin(r).count("1") % 2 else 1)
        else:
            sign = _parity(perm)
        total += sign if cell_dims[c] % 2 == 0 else -sign
    return total


def _parity(seq):
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


def scan_maps(order, back_ptr, back_idx, close, allowed, stat,
              cell_ptr, cell_verts, cell_dims, cubical, dist, radius,
              max_maps, max_nodes):
    """Enumerate maps, evaluating one statistic per map without storing them.

    Returns ``(witnesses, count, nodes, status)`` where ``witnesses`` maps
    each attained statistic value to the first map (tuple) attaining it.
    """
    witnesses = {}
    count = 0
    n = len(order)
    cell_ptr = [int(x) for x in cell_ptr]
    cell_verts = [int(x) for x in cell_verts]
    cell_dims = [int(x) for x in cell_dims]
    dist_rows = [list(map(int, row)) for row in dist] if stat == STAT_AFP else None

    def visit(assign):
        nonlocal count
        if count >= max_maps:
            return False
        count += 1
        if stat == STAT_FIXED:
            value = sum(1 for i in range(n) if assign[i] == i)
        elif stat == STAT_LEFSCHETZ:
            value = cell_lefschetz(assign, cell_ptr, cell_verts, cell_dims, cubical)
        else:
            value = sum(1 for i in range(n) if 0 <= dist_rows[i][assign[i]] <= radius)
        if value not in witnesses:
            witnesses[value] = tuple(assign)
        return True

    status, nodes = _walk(order, back_ptr, back_idx, close, allowed, max_nodes, visit)
    return witnesses, count, nodes, status


def lefschetz_batch(maps, cell_ptr, cell_verts, cell_dims, cubical):
    """Chain-level Lefschetz numbers of many self-maps (rows of ``maps``)."""
    cell_ptr = [int(x) for x in cell_ptr]
    cell_verts = [int(x) for x in cell_verts]
    cell_dims = [int(x) for x in cell_dims]
    out = np.empty(len(maps), dtype=np.int64)
    for r, row in enumerate(np.asarray(maps).tolist()):
        out[r] = cell_lefschetz(row, cell_ptr, cell_verts, cell_dims, cubical)
    return out
