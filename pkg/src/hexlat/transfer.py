"""Exact hard-hexagon partition polynomials by site-at-a-time transfer.

The lattice is a ring of ``lh`` cyclic sites (one column) repeated ``lv``
times, with nearest-neighbor exclusion along columns, between matching rows
of adjacent columns, and along one diagonal: old-column row k+1 excludes
new-column row k (cyclically, so the diagonal also wraps the ring seam).

A column is added one site at a time, top row down.  While a column is
partially built the cut line holds lh+1 sites forming a ring, so the working
vector has lucas(lh+1) entries; completed columns contract back to lucas(lh).
Each occupied site contributes one factor of the fugacity z when it is added
to the cut line.

Polynomials are accumulated as coefficient arrays indexed by particle number,
either modulo a prime (fast numpy path) or over exact Python integers (slow
reference path used for cross-checks).
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .states import enumerate_states, lucas, symmetry_classes, translate

# Local update when site (row k) of a new column replaces the old-column
# site at row k+1 on the cut line.  Keys are the (A, B, C) occupations of
# old row k, old row k+1, new row k+1; values list (target (A, D, C),
# fugacity power) pairs for the new site D at row k.
UPDATE_RULES = {
    (0, 0, 0): [((0, 0, 0), 0), ((0, 1, 0), 1)],
    (0, 1, 0): [((0, 0, 0), 0)],
    (1, 0, 0): [((1, 0, 0), 0)],
    (0, 0, 1): [((0, 0, 1), 0)],
    (1, 0, 1): [((1, 0, 1), 0)],
}


def apply_update_rules(weights, z):
    """One local update on a dict {(A,B,C): weight}; returns {(A,D,C): weight}.

    Reference implementation of UPDATE_RULES used by tests; the engine
    below applies the same map vectorized over whole cut-line vectors.
    """
    out = {}
    for src, w in weights.items():
        for tgt, zpow in UPDATE_RULES.get(src, []):
            out[tgt] = out.get(tgt, 0) + w * z**zpow
    return out


@dataclass
class Move:
    """Compact index arrays for one site update on the expanded space."""

    occ_idx: np.ndarray    # targets with the new site occupied
    occ_src: np.ndarray    # their sources (new-site bit cleared)
    bad_idx: np.ndarray    # occupied targets blocked by the ring seam
    add_idx: np.ndarray    # empty targets that also absorb a B=1 source
    add_src: np.ndarray    # those B=1 sources


@dataclass
class SweepTables:
    """Index arrays driving one full-column sweep for a given width."""

    lh: int
    con: object            # StateIndex of width lh
    exp: object            # StateIndex of width lh+1
    inf_e0: np.ndarray     # contracted pos -> expanded pos, new site empty
    inf_e1: np.ndarray     # contracted pos -> expanded pos, new site occupied (-1 if blocked)
    moves: list            # Move for k = 0 .. lh-2
    con_c0: np.ndarray     # contracted pos -> expanded pos with leftover empty
    con_c1: np.ndarray     # contracted pos -> expanded pos with leftover occupied (-1)


@lru_cache(maxsize=8)
def move_tables(lh):
    """Build (and cache) the sweep index tables for a column of height lh."""
    con = enumerate_states(lh)
    exp = enumerate_states(lh + 1)
    cs = con.states
    es = exp.states

    top = np.int64(1) << lh
    allow1 = ((cs & 1) == 0) & (((cs >> (lh - 1)) & 1) == 0)
    inf_e0 = exp.index(cs).astype(np.int32)
    inf_e1 = np.where(allow1, exp.index(cs | top), -1).astype(np.int32)

    moves = []
    for k in range(lh - 1):
        bit = np.int64(1) << (k + 1)
        occ = (es & bit) != 0
        ok = occ if k else occ & ((es & top) == 0)
        occ_idx = np.nonzero(ok)[0].astype(np.int32)
        occ_src = exp.index(es[occ_idx] & ~bit).astype(np.int32)
        bad_idx = np.nonzero(occ & ~ok)[0].astype(np.int32)

        lo = np.int64(1) << k
        hi = np.int64(1) << (k + 2)
        free = (es & (lo | bit | hi)) == 0
        add_idx = np.nonzero(free)[0].astype(np.int32)
        add_src = exp.index(es[add_idx] | bit).astype(np.int32)
        moves.append(Move(occ_idx, occ_src, bad_idx, add_idx, add_src))

    con_c0 = exp.index(cs << 1).astype(np.int32)
    ok1 = ((cs & 1) == 0) & (((cs >> (lh - 1)) & 1) == 0)
    con_c1 = np.where(ok1, exp.index((cs << 1) | 1), -1).astype(np.int32)
    return SweepTables(lh, con, exp, inf_e0, inf_e1, moves, con_c0, con_c1)


# ---------------------------------------------------------------------------
# numpy coefficient pipeline (one residue field)
# ---------------------------------------------------------------------------

def _sweep_coeffs(vec, tables, prime):
    """One full-column sweep of a (n_contracted, ncoef) residue array.

    Residues stay in [0, prime); at most one addition happens per row per
    move, so int32 storage cannot overflow before the per-move reduction.
    """
    t = tables
    ncoef = vec.shape[1]
    w = np.zeros((len(t.exp.states), ncoef), dtype=vec.dtype)
    w[t.inf_e0] = vec
    live = t.inf_e1 >= 0
    w[t.inf_e1[live], 1:] = vec[live, :-1]

    for k in range(t.lh - 2, -1, -1):
        m = t.moves[k]
        nxt = w.copy()
        nxt[m.occ_idx, 1:] = w[m.occ_src, :-1]
        nxt[m.occ_idx, 0] = 0
        if len(m.bad_idx):
            nxt[m.bad_idx] = 0
        nxt[m.add_idx] += w[m.add_src]
        nxt[m.add_idx] %= prime
        w = nxt

    out = w[t.con_c0].copy()
    live = t.con_c1 >= 0
    out[live] += w[t.con_c1[live]]
    out[live] %= prime
    return out


@dataclass
class ModPolynomial:
    """Partition polynomial with coefficients reduced modulo one prime."""

    prime: int
    coeffs: np.ndarray

    @property
    def degree(self):
        nz = np.nonzero(self.coeffs)[0]
        return int(nz[-1]) if len(nz) else 0


@dataclass
class ExactPolynomial:
    """Partition polynomial with exact integer coefficients g(N)."""

    coeffs: list

    @property
    def degree(self):
        d = len(self.coeffs) - 1
        while d > 0 and self.coeffs[d] == 0:
            d -= 1
        return d

    def __call__(self, z):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc


def _degree_bound(lh, lv):
    return (lh * lv) // 3


def _ring_polynomial(lh):
    """Independent-set counts on a single lh-cycle, by size (exact ints)."""
    from math import comb
    if lh == 1:
        return [1]
    out = [1]
    for k in range(1, lh // 2 + 1):
        out.append(lh * comb(lh - k, k) // (lh - k))
    return out


def partition_cylindrical(lh, lv, prime):
    """Z for lv columns with free ends, mod prime (one residue field).

    Degree is at most floor(lh*lv/3) except in the degenerate single-column
    case, where a lone ring packs up to floor(lh/2) particles.
    """
    if lh < 1 or lv < 1:
        raise ValueError("lattice dimensions must be positive")
    if lh == 1 or lv == 1:
        ring = _ring_polynomial(lh) if lv == 1 else [1]
        out = np.array(ring, dtype=np.int64) % prime
        return ModPolynomial(prime, out)
    ncoef = _degree_bound(lh, lv) + 2  # one spare slot guards the bound
    t = move_tables(lh)
    grow = (lh + 1) // 2 + 1  # max particles one column sweep can add
    width = 1
    vec = np.zeros((t.con.count, width), dtype=np.int32)
    vec[t.con.index(0), 0] = 1
    for _ in range(lv):
        width = min(ncoef, width + grow)
        if vec.shape[1] < width:
            pad = np.zeros((t.con.count, width - vec.shape[1]), dtype=np.int32)
            vec = np.hstack([vec, pad])
        vec = _sweep_coeffs(vec, t, prime)
    total = vec.sum(axis=0, dtype=np.int64) % prime
    total = np.concatenate([total, np.zeros(ncoef - len(total), dtype=np.int64)])
    if total[-1] != 0:
        raise AssertionError("partition degree exceeded lh*lv/3 bound")
    return ModPolynomial(prime, total[:-1])


def _torus_compatible(tables, s_init):
    """Mask of final-column states compatible with the stored first column."""
    lh = tables.lh
    shifted = translate(int(s_init), lh, 1)
    es = tables.con.states
    return ((es & s_init) == 0) & ((es & shifted) == 0)


def partition_toroidal(lh, lv, prime, threads=None):
    """Z with both directions periodic, mod prime.

    Runs one sweep sequence per dihedral class of first-column states,
    weighting each class by its orbit size; the wrap interactions between the
    last and first columns are applied before the final state sum.
    """
    if lh < 1 or lv < 1:
        raise ValueError("lattice dimensions must be positive")
    ncoef = _degree_bound(lh, lv) + 1
    if lh == 1:
        out = np.zeros(ncoef, dtype=np.int64)
        out[0] = 1
        return ModPolynomial(prime, out)
    t = move_tables(lh)
    sym = symmetry_classes(lh)
    total = np.zeros(ncoef, dtype=np.int64)

    grow = (lh + 1) // 2 + 1

    def run_class(ci):
        rep = int(sym.representatives[ci])
        occ = int(rep).bit_count()
        if occ >= ncoef:
            # seed already beyond the torus particle bound; cannot complete
            return np.zeros(ncoef, dtype=np.int64)
        width = occ + 1
        vec = np.zeros((t.con.count, width), dtype=np.int32)
        vec[t.con.index(rep), occ] = 1
        for _ in range(lv - 1):
            width = min(ncoef, width + grow)
            if vec.shape[1] < width:
                pad = np.zeros((t.con.count, width - vec.shape[1]), dtype=np.int32)
                vec = np.hstack([vec, pad])
            vec = _sweep_coeffs(vec, t, prime)
        mask = _torus_compatible(t, rep)
        part = vec[mask].sum(axis=0, dtype=np.int64) % prime
        return np.concatenate([part, np.zeros(ncoef - len(part), dtype=np.int64)])

    results = _map_indexed(run_class, sym.count, threads)
    for ci, part in enumerate(results):
        total = (total + int(sym.orbit_sizes[ci]) * part) % prime
    return ModPolynomial(prime, total)


def _map_indexed(fn, n, threads):
    """Apply fn to range(n), optionally with a thread pool, order preserved."""
    if threads and threads > 1 and n > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, range(n)))
    return [fn(i) for i in range(n)]


# ---------------------------------------------------------------------------
# exact big-integer pipeline (reference path, small lattices)
# ---------------------------------------------------------------------------

def _sweep_exact(vec, tables):
    """Column sweep over lists of python-int coefficient lists."""
    t = tables
    ncoef = len(vec[0])
    zero = [0] * ncoef
    w = [zero[:] for _ in range(len(t.exp.states))]
    for i, e0 in enumerate(t.inf_e0):
        w[e0] = vec[i][:]
        e1 = t.inf_e1[i]
        if e1 >= 0:
            w[e1] = [0] + vec[i][:-1]
    for k in range(t.lh - 2, -1, -1):
        m = t.moves[k]
        occ_from = {int(i): int(s) for i, s in zip(m.occ_idx, m.occ_src)}
        blocked = set(int(i) for i in m.bad_idx)
        add_from = {int(i): int(s) for i, s in zip(m.add_idx, m.add_src)}
        occ_bit = 1 << (k + 1)
        nxt = []
        for pos, state in enumerate(t.exp.states):
            if state & occ_bit:
                if pos in blocked:
                    row = zero[:]
                else:
                    row = [0] + w[occ_from[pos]][:-1]
            else:
                row = w[pos][:]
                if pos in add_from:
                    row = [x + y for x, y in zip(row, w[add_from[pos]])]
            nxt.append(row)
        w = nxt
    out = []
    for i in range(len(t.con.states)):
        row = w[t.con_c0[i]][:]
        c1 = t.con_c1[i]
        if c1 >= 0:
            row = [x + y for x, y in zip(row, w[c1])]
        out.append(row)
    return out


def partition_exact(lh, lv, boundary):
    """Exact big-integer partition polynomial; slow, for oracle cross-checks."""
    ncoef = _degree_bound(lh, lv) + 1
    if boundary == "cylindrical":
        if lh == 1 or lv == 1:
            return ExactPolynomial(_ring_polynomial(lh) if lv == 1 else [1])
        t = move_tables(lh)
        vec = [[0] * (ncoef + 1) for _ in range(t.con.count)]
        vec[int(t.con.index(0))][0] = 1
        for _ in range(lv):
            vec = _sweep_exact(vec, t)
        coeffs = [sum(col) for col in zip(*vec)]
        if coeffs[-1] != 0:
            raise AssertionError("partition degree exceeded lh*lv/3 bound")
        return ExactPolynomial(coeffs[:-1])
    if boundary == "toroidal":
        if lh == 1:
            return ExactPolynomial([1] + [0] * (ncoef - 1))
        t = move_tables(lh)
        sym = symmetry_classes(lh)
        total = [0] * ncoef
        for ci in range(sym.count):
            rep = int(sym.representatives[ci])
            occ = int(rep).bit_count()
            if occ >= ncoef:
                continue
            vec = [[0] * ncoef for _ in range(t.con.count)]
            vec[int(t.con.index(rep))][occ] = 1
            for _ in range(lv - 1):
                vec = _sweep_exact(vec, t)
            mask = _torus_compatible(t, rep)
            size = int(sym.orbit_sizes[ci])
            for pos in np.nonzero(mask)[0]:
                for n, c in enumerate(vec[pos]):
                    total[n] += size * c
        return ExactPolynomial(total)
    raise ValueError(f"unknown boundary {boundary!r}")


# ---------------------------------------------------------------------------
# complex-fugacity column sweep (used by the eigenvalue module)
# ---------------------------------------------------------------------------

def sweep_complex(vec, lh, z):
    """Apply the column transfer to a complex cut-line vector of dim lucas(lh).

    Accepts a single vector or a (lucas(lh), m) block of columns.
    """
    t = move_tables(lh)
    shape = (len(t.exp.states),) + vec.shape[1:]
    w = np.zeros(shape, dtype=np.complex128)
    w[t.inf_e0] = vec
    live = t.inf_e1 >= 0
    w[t.inf_e1[live]] = z * vec[live]
    for k in range(t.lh - 2, -1, -1):
        m = t.moves[k]
        nxt = w.copy()
        nxt[m.occ_idx] = z * w[m.occ_src]
        if len(m.bad_idx):
            nxt[m.bad_idx] = 0
        nxt[m.add_idx] += w[m.add_src]
        w = nxt
    out = w[t.con_c0].copy()
    live = t.con_c1 >= 0
    out[live] += w[t.con_c1[live]]
    return out
