"""Independent reference implementations used only by the test suite.

Everything here recomputes quantities from first principles (explicit site
enumeration, dense matrices) with no shared code paths with the package's
sparse cut-line engine.
"""

import numpy as np

from hexlat.states import enumerate_states, translate


def lattice_edges(lh, lv, boundary):
    """Deduplicated adjacency pairs of the lh-ring x lv-column lattice.

    Sites are numbered col*lh + row.  Edges: vertical within a column
    (cyclic in the row direction), horizontal between matching rows of
    adjacent columns, and the diagonal joining old-column row k+1 to
    new-column row k.  Toroidal closes the column direction too.
    A self-pair (u, u) marks a site that can never be occupied.
    """
    edges = set()

    def site(x, y):
        return x * lh + (y % lh)

    cols = range(lv) if boundary == "toroidal" else range(lv - 1)
    for x in range(lv):
        for y in range(lh):
            a, b = site(x, y), site(x, y + 1)
            edges.add((min(a, b), max(a, b)))
    for x in cols:
        nx = (x + 1) % lv
        for y in range(lh):
            a, b = site(x, y), site(nx, y)
            edges.add((min(a, b), max(a, b)))
            a, b = site(x, y + 1), site(nx, y)
            edges.add((min(a, b), max(a, b)))
    return sorted(edges)


def brute_force_partition(lh, lv, boundary):
    """Coefficients g(N) by scanning all 2^(lh*lv) occupation patterns."""
    n = lh * lv
    if n > 24:
        raise ValueError("direct scan limited to 24 sites")
    edges = lattice_edges(lh, lv, boundary)
    configs = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(len(configs), dtype=bool)
    for a, b in edges:
        if a == b:
            ok &= (configs >> a) & 1 == 0
        else:
            ok &= ((configs >> a) & (configs >> b) & 1) == 0
    pops = np.zeros(len(configs), dtype=np.int64)
    for bit in range(n):
        pops += (configs >> bit) & 1
    counts = np.bincount(pops[ok])
    return [int(c) for c in counts]


def column_dp_partition(lh, lv, boundary):
    """Coefficients g(N) by dynamic programming over whole-column states.

    Still an exhaustive count of every valid configuration, organized
    column by column; usable where the 2^N scan is not (e.g. 6x6).
    """
    states = [int(s) for s in enumerate_states(lh).states]
    pops = {s: s.bit_count() for s in states}

    def compatible(old, new):
        return (old & new) == 0 and (old & translate(new, lh, 1)) == 0

    deg = max(pops.values()) * lv
    if boundary == "cylindrical":
        table = {s: _unit(pops[s], deg) for s in states}
        for _ in range(lv - 1):
            nxt = {}
            for new in states:
                acc = [0] * (deg + 1)
                for old in states:
                    if compatible(old, new):
                        row = table[old]
                        for i, c in enumerate(row):
                            if c:
                                acc[i] += c
                nxt[new] = _shift(acc, pops[new])
            table = nxt
        coeffs = [0] * (deg + 1)
        for row in table.values():
            for i, c in enumerate(row):
                coeffs[i] += c
        return _trim(coeffs)
    if boundary == "toroidal":
        coeffs = [0] * (deg + 1)
        for first in states:
            table = {first: _unit(pops[first], deg)}
            for _ in range(lv - 1):
                nxt = {}
                for new in states:
                    acc = [0] * (deg + 1)
                    hit = False
                    for old, row in table.items():
                        if compatible(old, new):
                            hit = True
                            for i, c in enumerate(row):
                                if c:
                                    acc[i] += c
                    if hit:
                        nxt[new] = _shift(acc, pops[new])
                table = nxt
            for last, row in table.items():
                if compatible(last, first):
                    for i, c in enumerate(row):
                        coeffs[i] += c
        return _trim(coeffs)
    raise ValueError(boundary)


def _unit(power, deg):
    out = [0] * (deg + 1)
    out[power] = 1
    return out


def _shift(row, k):
    if k == 0:
        return row
    return [0] * k + row[:-k]


def _trim(coeffs):
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def dense_transfer_matrix(lh, z):
    """Row-to-row transfer matrix with split site weights, on valid ring states.

    T[b, a] = z^((|a|+|b|)/2) when rows a (below) and b (above) are compatible:
    no shared occupied column and no occupied diagonal pair a_{k+1}, b_k.
    """
    states = [int(s) for s in enumerate_states(lh).states]
    n = len(states)
    T = np.zeros((n, n), dtype=complex)
    zval = complex(z)
    for j, a in enumerate(states):
        for i, b in enumerate(states):
            if (a & b) == 0 and (translate(a, lh, -1) & b) == 0:
                T[i, j] = zval ** ((a.bit_count() + b.bit_count()) / 2.0)
    return T
