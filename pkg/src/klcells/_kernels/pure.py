"""Pure-Python kernel backend.

Reference implementation of the hot loops: the bar-invariant triangular
lift producing the KL basis, the c_s structure-constant columns, cell
module traces, and the full structure-constant sweep for the a-function.
The compiled backend in ``_speedups.pyx`` mirrors these functions and
must produce bit-identical outputs (it is checked against this module).

Polynomials cross the kernel boundary in a compact window form
``(exp0, (c0, ..., ck))`` with c0 != 0 != ck; the zero polynomial never
appears (entries are simply absent).  Coefficients here are Python ints,
so this backend is overflow-free.
"""

from __future__ import annotations

BACKEND_NAME = "pure"


def compact(d: dict):
    """dict {exp: coef} -> (exp0, coeffs tuple); returns None if zero."""
    items = [(e, c) for e, c in d.items() if c]
    if not items:
        return None
    lo = min(e for e, _ in items)
    hi = max(e for e, _ in items)
    coeffs = [0] * (hi - lo + 1)
    for e, c in items:
        coeffs[e - lo] = c
    return (lo, tuple(coeffs))


def expand(p) -> dict:
    if p is None:
        return {}
    lo, coeffs = p
    return {lo + i: c for i, c in enumerate(coeffs) if c}


def _addmul(dst: dict, p: dict, q: dict):
    """dst += p*q on dict polynomials."""
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            v = dst.get(e, 0) + c1 * c2
            if v:
                dst[e] = v
            else:
                dst.pop(e, None)


def _add(dst: dict, p: dict):
    for e, c in p.items():
        v = dst.get(e, 0) + c
        if v:
            dst[e] = v
        else:
            dst.pop(e, None)


def _sub(dst: dict, p: dict):
    for e, c in p.items():
        v = dst.get(e, 0) - c
        if v:
            dst[e] = v
        else:
            dst.pop(e, None)


def _submul(dst: dict, p: dict, q: dict):
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            v = dst.get(e, 0) - c1 * c2
            if v:
                dst[e] = v
            else:
                dst.pop(e, None)


def _min_left_descent(ldesc_w: int) -> int:
    s = 0
    while not (ldesc_w >> s) & 1:
        s += 1
    return s


def bar_columns(size, lmul, length, ldesc, weights, restrict=None):
    """Columns of the bar involution on the T-basis.

    rcols[w] = {x: poly} with bar(T_w) = sum_x rcols[w][x] T_x (dict polys).
    If ``restrict`` is a set, only columns for w in it are computed (it must
    be closed downwards under taking left descents, e.g. a Bruhat downset).
    """
    order = sorted(range(size), key=lambda w: (length[w], w))
    rcols = [None] * size
    rcols[0] = {0: {0: 1}}
    for w in order:
        if w == 0 or (restrict is not None and w not in restrict):
            continue
        s = _min_left_descent(ldesc[w])
        sw = int(lmul[s][w])
        a = int(weights[s])
        col = rcols[sw]
        new = {}
        # bar(T_w) = T_s^{-1} bar(T_sw); T_s^{-1} T_y = T_sy - [sy>y] xi_s T_y
        for y, p in col.items():
            sy = int(lmul[s][y])
            q = new.get(sy)
            if q is None:
                q = new[sy] = {}
            _add(q, p)
            if not q:
                del new[sy]
            if length[sy] > length[y]:
                q = new.get(y)
                if q is None:
                    q = new[y] = {}
                _submul(q, {a: 1, -a: -1}, p)
                if not q:
                    del new[y]
        rcols[w] = new
    return rcols


def _lift_column(w, rcols, length):
    """Triangular lift of one KL column from bar columns: returns
    {y: dict poly} for c_w = sum p_{y,w} T_y, verifying skew-consistency."""
    col = {w: {0: 1}}
    q_acc = {}
    bands = [[] for _ in range(int(length[w]) + 1)]

    def contribute(y, barp):
        for x, r in rcols[y].items():
            if x == y:
                continue
            acc = q_acc.get(x)
            if acc is None:
                acc = q_acc[x] = {}
                bands[int(length[x])].append(x)
            _addmul(acc, barp, r)

    contribute(w, {0: 1})
    for L in range(int(length[w]) - 1, -1, -1):
        for x in bands[L]:
            acc = q_acc.pop(x)
            if not acc:
                continue
            # p_x - bar(p_x) = q_x with p_x in strictly negative degrees:
            # q_x must be skew (bar(q) = -q) with zero constant term
            if acc.get(0, 0) != 0:
                raise RuntimeError("bar-invariance failure: constant term in q")
            neg = {e: c for e, c in acc.items() if e < 0}
            for e, c in acc.items():
                if e > 0 and neg.get(-e, 0) != -c:
                    raise RuntimeError("bar-invariance failure: q not skew")
            for e, c in neg.items():
                if acc.get(-e, 0) != -c:
                    raise RuntimeError("bar-invariance failure: q not skew")
            if neg:
                col[x] = neg
                contribute(x, {-e: c for e, c in neg.items()})
    return col


def kl_polynomials(size, lmul, length, ldesc, weights):
    """All KL columns: pcols[w] = {y: (exp0, coeffs)} with pcols[w][w] = (0,(1,)).

    Generic bar-invariant triangular lift, valid for any positive weights;
    both defining properties are verified en route (negativity of the lift
    by construction, bar-invariance through the skew checks).
    """
    rcols = bar_columns(size, lmul, length, ldesc, weights)
    order = sorted(range(size), key=lambda w: (length[w], w))
    pcols = [None] * size
    for w in order:
        col = _lift_column(w, rcols, length) if w else {0: {0: 1}}
        pcols[w] = {y: compact(p) for y, p in col.items() if p}
    return pcols


def kl_single_column(w, size, lmul, length, ldesc, weights, downset):
    """Recompute a single KL column restricted to its Bruhat downset
    (used by the cache integrity recheck)."""
    rcols = bar_columns(size, lmul, length, ldesc, weights, restrict=set(downset))
    col = _lift_column(w, rcols, length) if w else {0: {0: 1}}
    return {y: compact(p) for y, p in col.items() if p}


def cs_columns(pcols, size, lmul, length, ldesc, weights):
    """Structure constant columns for the generators:
    cs[s][w] = {z: (exp0, coeffs)} with c_s c_w = sum_z h_{s,w,z} c_z."""
    nS = len(weights)
    out = []
    for s in range(nS):
        a = int(weights[s])
        cols = [None] * size
        for w in range(size):
            if (ldesc[w] >> s) & 1:
                cols[w] = {w: (-a, (1,) + (0,) * (2 * a - 1) + (1,))}
                continue
            # T-basis column of c_s * c_w, with c_s = T_s + v^-a
            t = {}
            for y, p in pcols[w].items():
                pd = expand(p)
                sy = int(lmul[s][y])
                q = t.get(sy)
                if q is None:
                    q = t[sy] = {}
                _add(q, pd)
                if not q:
                    del t[sy]
                q = t.get(y)
                if q is None:
                    q = t[y] = {}
                if length[sy] < length[y]:
                    _addmul(q, {a: 1, -a: -1}, pd)
                _addmul(q, {-a: 1}, pd)
                if not q:
                    del t[y]
            # convert to the c-basis (unitriangular elimination)
            col = {}
            live = {z for z, p in t.items() if p}
            while live:
                z = max(live, key=lambda u: (length[u], u))
                h = t[z]
                if h:
                    col[z] = compact(h)
                    for y, p in pcols[z].items():
                        if y == z:
                            continue
                        q = t.get(y)
                        if q is None:
                            q = t[y] = {}
                            live.add(y)
                        _submul(q, h, expand(p))
                live.discard(z)
            cols[w] = col
        out.append(cols)
    return out


def _ts_matrix(cell, pos, cs_s, a):
    """Sparse columns of rho(T_s) on the cell module basis:
    rho(T_s) e_y = v^a e_y - sum_{z in C} h_{s,y,z} e_z."""
    cols = []
    for y in cell:
        col = {}
        col[pos[y]] = {a: 1}
        for z, h in cs_s[y].items():
            j = pos.get(z)
            if j is not None:
                q = col.get(j)
                if q is None:
                    q = col[j] = {}
                _sub(q, expand(h))
                if not q:
                    del col[j]
        cols.append([(i, p) for i, p in col.items() if p])
    return cols


def cell_traces(cells, cs, size, weights, children):
    """Traces of all T_w on every left cell module.

    cells: list of id-lists; children: children[w] = [(child, s), ...]
    along the spanning tree T_child = T_w T_s.  Returns
    traces[ci][w] = (exp0, coeffs) or None.
    """
    out = []
    for cell in cells:
        pos = {y: i for i, y in enumerate(cell)}
        d = len(cell)
        mats = [_ts_matrix(cell, pos, cs[s], int(weights[s])) for s in range(len(weights))]
        traces = [None] * size

        ident = [{i: {0: 1}} for i in range(d)]
        stack = [(0, ident)]
        traces[0] = compact({0: d})
        while stack:
            w, mat = stack.pop()
            for child, s in children[w]:
                ms = mats[s]
                new = []
                tr = {}
                for j in range(d):
                    colj = {}
                    for i, h in ms[j]:
                        for row, p in mat[i].items():
                            q = colj.get(row)
                            if q is None:
                                q = colj[row] = {}
                            _addmul(q, p, h)
                            if not q:
                                del colj[row]
                    new.append(colj)
                    pj = colj.get(j)
                    if pj:
                        _add(tr, pj)
                traces[child] = compact(tr)
                stack.append((child, new))
        out.append(traces)
    return out


def structure_vector(x, y, cs, lmul, length, ldesc, memo):
    """c_x c_y in the c-basis as {z: dict poly}; memoized on (x, y)."""
    key = (x, y)
    got = memo.get(key)
    if got is not None:
        return got
    if x == 0:
        out = {y: {0: 1}}
        memo[key] = out
        return out
    s = _min_left_descent(ldesc[x])
    sx = int(lmul[s][x])
    gsx = structure_vector(sx, y, cs, lmul, length, ldesc, memo)
    # c_x = c_s c_sx - sum_{z != x} h_{s,sx,z} c_z
    out = {}
    for t, coef in gsx.items():
        for z, h in cs[s][t].items():
            q = out.get(z)
            if q is None:
                q = out[z] = {}
            _addmul(q, coef, expand(h))
            if not q:
                del out[z]
    for z, h in cs[s][sx].items():
        if z == x:
            continue
        gz = structure_vector(z, y, cs, lmul, length, ldesc, memo)
        hd = expand(h)
        for u, coef in gz.items():
            q = out.get(u)
            if q is None:
                q = out[u] = {}
            _submul(q, hd, coef)
            if not q:
                del out[u]
    out = {z: p for z, p in out.items() if p}
    memo[key] = out
    return out


def a_function_sweep(cs, size, lmul, length, ldesc):
    """a(z) = max over (x, y) of deg h_{x,y,z}, by the full sweep."""
    amax = [None] * size
    order = sorted(range(size), key=lambda x: (length[x], x))
    for y in range(size):
        g = [None] * size
        g[0] = {y: {0: 1}}
        _record(g[0], amax)
        for x in order:
            if x == 0:
                continue
            s = _min_left_descent(ldesc[x])
            sx = int(lmul[s][x])
            out = {}
            for t, coef in g[sx].items():
                for z, h in cs[s][t].items():
                    q = out.get(z)
                    if q is None:
                        q = out[z] = {}
                    _addmul(q, coef, expand(h))
                    if not q:
                        del out[z]
            for z, h in cs[s][sx].items():
                if z == x:
                    continue
                hd = expand(h)
                for u, coef in g[z].items():
                    q = out.get(u)
                    if q is None:
                        q = out[u] = {}
                    _submul(q, hd, coef)
                    if not q:
                        del out[u]
            g[x] = {z: p for z, p in out.items() if p}
            _record(g[x], amax)
    return [a if a is not None else 0 for a in amax]


def _record(gvec, amax):
    for z, p in gvec.items():
        if p:
            d = max(p)
            if amax[z] is None or d > amax[z]:
                amax[z] = d
