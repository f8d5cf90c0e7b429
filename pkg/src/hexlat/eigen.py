"""Leading transfer-matrix eigenvalues at complex fugacity and their crossings.

The column transfer acts on cut-line vectors through the same factorized
site updates used for the partition polynomials, so a matrix-vector product
never materializes the matrix.  Cylinder physics lives in the subspace that
is invariant under both translation and reflection of the ring; its
dimension is the dihedral class count, and restriction is exact because the
translation-invariant block commutes with reflection.

Equimodular curves |lambda_1| = |lambda_2| are traced by the circle-corrector
walk; curve endpoints (where the two eigenvalues actually collide) are
polished by Newton iteration on the analytic function ((l1-l2)/2)^2.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .states import enumerate_states, lucas, symmetry_classes, translate
from .transfer import sweep_complex

DENSE_LIMIT = 320


@dataclass
class MatrixAction:
    """Column-transfer action at fixed fugacity, full or symmetry-reduced."""

    lh: int
    z: complex
    sector: str = "full"   # "full" or "p0"

    def __post_init__(self):
        if self.sector not in ("full", "p0"):
            raise ValueError(f"unknown sector {self.sector!r}")
        self.index = enumerate_states(self.lh)
        if self.sector == "p0":
            sym = symmetry_classes(self.lh)
            self.class_of = sym.class_of
            self.rep_pos = self.index.index(sym.representatives)
            self.dim = sym.count
        else:
            self.dim = self.index.count

    def __call__(self, v):
        v = np.asarray(v, dtype=np.complex128)
        if v.shape[0] != self.dim:
            raise ValueError(f"vector must have leading dimension {self.dim}")
        if self.sector == "full":
            return sweep_complex(v, self.lh, self.z)
        full = v[self.class_of]
        out = sweep_complex(full, self.lh, self.z)
        return out[self.rep_pos]


def apply_transfer(v, z, lh, sector="full"):
    """One application of the column transfer to a cut-line vector."""
    return MatrixAction(lh, complex(z), sector)(v)


@dataclass
class EigenSet:
    eigenvalues: np.ndarray          # sorted by descending modulus
    eigenvectors: np.ndarray = None  # columns matching eigenvalues (may be None)
    momenta: list = field(default_factory=list)


def _dense_matrix(action):
    return action(np.eye(action.dim, dtype=np.complex128))


def _arnoldi_cycle(action, v0, m):
    n = action.dim
    V = np.zeros((n, m + 1), dtype=np.complex128)
    H = np.zeros((m + 1, m), dtype=np.complex128)
    V[:, 0] = v0 / np.linalg.norm(v0)
    for j in range(m):
        w = action(V[:, j])
        h = V[:, : j + 1].conj().T @ w
        w = w - V[:, : j + 1] @ h
        h2 = V[:, : j + 1].conj().T @ w   # one re-orthogonalization pass
        w = w - V[:, : j + 1] @ h2
        h = h + h2
        H[: j + 1, j] = h
        beta = np.linalg.norm(w)
        H[j + 1, j] = beta
        if beta < 1e-14:
            return V[:, : j + 1], H[: j + 1, : j + 1], True
        V[:, j + 1] = w / beta
    return V, H, False


def leading_eigenvalues(z, lh, sector="full", k=6, v0=None, tol=1e-10,
                        krylov=None, max_restarts=10, want_vectors=False):
    """The k largest-modulus eigenvalues of the column transfer at z.

    Small sectors are diagonalized densely; larger ones use Arnoldi
    iteration with explicit restarts.  A previous eigenvector passed as v0
    warm-starts the Krylov space (useful along curve traces).
    """
    action = MatrixAction(lh, complex(z), sector)
    n = action.dim
    k = min(k, n)
    if n <= DENSE_LIMIT:
        mat = _dense_matrix(action)
        vals, vecs = scipy.linalg.eig(mat)
        order = np.argsort(-np.abs(vals))
        vals, vecs = vals[order], vecs[:, order]
        return EigenSet(vals[:k], vecs[:, :k] if want_vectors else None)

    m0 = krylov or min(n, max(2 * k + 12, 30))
    rng = np.random.default_rng(lucas(lh))
    v = (v0 if v0 is not None
         else rng.standard_normal(n) + 1j * rng.standard_normal(n))
    last = None
    for restart in range(max_restarts):
        m = min(n, m0 + 10 * restart)
        V, H, happy = _arnoldi_cycle(action, v, m)
        if happy:
            vals, y = np.linalg.eig(H)
            order = np.argsort(-np.abs(vals))
            vals, y = vals[order], y[:, order]
            vecs = V @ y
            return EigenSet(vals[:k], vecs[:, :k] if want_vectors else None)
        Hm = H[:m, :m]
        vals, y = np.linalg.eig(Hm)
        order = np.argsort(-np.abs(vals))
        vals, y = vals[order], y[:, order]
        resid = np.abs(H[m, m - 1]) * np.abs(y[m - 1, :])
        last = (V[:, :m], y, vals)
        if np.all(resid[:k] <= tol * np.maximum(np.abs(vals[:k]), 1e-300)):
            vecs = V[:, :m] @ y[:, :k]
            return EigenSet(vals[:k], vecs if want_vectors else None)
        # randomized recombination of the wanted Ritz vectors avoids the
        # cancellation a plain sum can produce for close modulus pairs
        weights = 1.0 + 0.2 * (rng.standard_normal(k)
                               + 1j * rng.standard_normal(k))
        v = (V[:, :m] @ y[:, :k]) @ weights
    V, y, vals = last
    vecs = V @ y[:, :k]
    return EigenSet(vals[:k], vecs if want_vectors else None)


def momentum_label(vec, lh, snap_tol=1e-3):
    """Momentum of a full-sector eigenvector from the translation phase.

    Returns one of 0.0, pi, +-2*pi/3, or the raw phase when it does not
    snap to those values.
    """
    idx = enumerate_states(lh)
    states = idx.states
    rot_to = idx.index(np.array([translate(int(s), lh, 1) for s in states]))
    rv = np.zeros_like(vec)
    rv[rot_to] = vec
    denom = np.vdot(vec, vec)
    if abs(denom) == 0:
        raise ValueError("zero vector has no momentum")
    phase = cmath.phase(np.vdot(vec, rv) / denom)
    for target in (0.0, 2 * math.pi / 3, -2 * math.pi / 3, math.pi, -math.pi):
        if abs(phase - target) < snap_tol:
            return abs(target) if abs(target) == math.pi else target
    return phase


# ---------------------------------------------------------------------------
# eigenvalue bookkeeping along scans and traces
# ---------------------------------------------------------------------------

def _cluster_moduli(vals, rel=1e-8):
    """Distinct modulus levels among eigenvalues, descending."""
    mods = sorted(np.abs(vals), reverse=True)
    levels = []
    for m in mods:
        if not levels or levels[-1] - m > rel * max(m, 1e-300):
            levels.append(m)
    return levels


def _match_pair(vals, pair, with_indices=False):
    """Pick the two eigenvalues continuing a tracked pair, by proximity."""
    vals = np.asarray(vals)
    ia = int(np.argmin(np.abs(vals - pair[0])))
    d = np.abs(vals - pair[1]).astype(float)
    d[ia] = math.inf
    ib = int(np.argmin(d))
    if with_indices:
        return vals[ia], vals[ib], ia, ib
    return vals[ia], vals[ib]


@dataclass
class CurvePoint:
    z: complex
    mods: tuple          # up to three leading modulus levels
    multiplicity: int
    flag: str = "regular"
    momenta: tuple = ()


@dataclass
class EquimodularCurve:
    lh: int
    sector: str
    points: list
    landmarks: dict = field(default_factory=dict)


def _eigs(z, lh, sector, k=6, v0=None):
    return leading_eigenvalues(z, lh, sector, k=k, v0=v0, want_vectors=True)


def axis_spectrum_gap(x, lh, sector="p0", k=8):
    """Signed gap (top pair modulus - top real modulus) on the negative axis."""
    es = _eigs(complex(x), lh, sector, k=k)
    vals = es.eigenvalues
    real_mask = np.abs(vals.imag) < 1e-9 * np.abs(vals)
    reals = np.abs(vals[real_mask])
    pairs = np.abs(vals[~real_mask])
    top_real = reals.max() if len(reals) else 0.0
    top_pair = pairs.max() if len(pairs) else 0.0
    return top_pair - top_real, vals


def axis_endpoint(lh, sector="p0", lo=-0.20, hi=-0.02, k=8, tol=1e-13):
    """Negative-axis point where the leading real eigenvalue and the leading
    conjugate pair become equimodular, plus the next-modulus ratio there."""
    flo, _ = axis_spectrum_gap(lo, lh, sector, k)
    fhi, _ = axis_spectrum_gap(hi, lh, sector, k)
    if flo * fhi > 0:
        raise RuntimeError("no modulus crossing inside the bracket")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm, vals = axis_spectrum_gap(mid, lh, sector, k)
        if flo * fm <= 0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
        if hi - lo < tol * max(1.0, abs(mid)):
            break
    x = 0.5 * (lo + hi)
    _, vals = axis_spectrum_gap(x, lh, sector, k)
    # the colliding partners straddle the located point; cluster them together
    levels = _cluster_moduli(vals, rel=1e-3)
    ratio = levels[1] / levels[0] if len(levels) > 1 else math.nan
    return x, ratio


def _collision_fn(lh, sector, pair_guess, k=8):
    """d(z) = ((l1-l2)/2)^2 for the tracked pair; analytic near a collision."""
    state = {"pair": pair_guess}

    def d(z):
        es = _eigs(z, lh, sector, k=k)
        a, b = _match_pair(es.eigenvalues, state["pair"])
        state["pair"] = (a, b)
        return ((a - b) / 2) ** 2

    return d, state


def collision_refine(z0, lh, sector="p0", pair=None, k=8, iters=40,
                     tol=1e-12):
    """Newton-polish an eigenvalue-collision point from a nearby seed z0."""
    es = _eigs(complex(z0), lh, sector, k=k)
    vals = es.eigenvalues
    if pair is None:
        pair = (vals[0], vals[1])
    d, state = _collision_fn(lh, sector, pair, k)
    z = complex(z0)
    for _ in range(iters):
        h = 1e-6 * (1.0 + abs(z))
        dm = d(z)
        dp = (d(z + h) - d(z - h)) / (2 * h)
        if dp == 0:
            break
        step = dm / dp
        z = z - step
        if abs(step) < tol * max(1.0, abs(z)):
            break
    es = _eigs(z, lh, sector, k=k)
    a, b = _match_pair(es.eigenvalues, state["pair"])
    levels = _cluster_moduli(es.eigenvalues, rel=1e-3)
    ratio = levels[1] / levels[0] if len(levels) > 1 else math.nan
    return z, ratio, abs(a - b) / max(abs(a), 1e-300)


def _signed_gap_tracked(z, lh, sector, pair, k=6):
    es = _eigs(z, lh, sector, k=k)
    a, b = _match_pair(es.eigenvalues, pair)
    return abs(a) - abs(b), (a, b), es


def curve_correct(z_center, direction, lh, sector, pair, eps, k=6,
                  angle_tol=2e-5):
    """Find the equimodular zero on the eps-circle around z_center.

    Scans angles around `direction` for a sign change of the tracked-pair
    modulus gap, then bisects in the angle, as in the circle-corrector walk.
    """
    base = cmath.phase(direction)
    angles = np.linspace(-1.45, 1.45, 9)
    gaps = []
    for a in angles:
        zt = z_center + eps * cmath.exp(1j * (base + a))
        g, _, _ = _signed_gap_tracked(zt, lh, sector, pair, k)
        gaps.append(g)
    for i in range(len(angles) - 1):
        if gaps[i] == 0 or gaps[i] * gaps[i + 1] < 0:
            lo, hi = angles[i], angles[i + 1]
            glo = gaps[i]
            while hi - lo > angle_tol:
                mid = 0.5 * (lo + hi)
                zt = z_center + eps * cmath.exp(1j * (base + mid))
                gm, pr, es = _signed_gap_tracked(zt, lh, sector, pair, k)
                if glo * gm <= 0:
                    hi = mid
                else:
                    lo, glo = mid, gm
            zt = z_center + eps * cmath.exp(1j * (base + 0.5 * (lo + hi)))
            g, pr, es = _signed_gap_tracked(zt, lh, sector, pair, k)
            return zt, pr, es
    return None


def trace_equimodular(lh, sector="p0", z0=-1.0, eps=1e-2, direction=-1.0,
                      max_points=4000, branch_tol=1e-6, box=12.0,
                      endpoint_tol=5e-3, k=6):
    """Walk an equimodular curve from a point on (or bracketing) it.

    The default start z0 = -1 sits on the negative real axis, which always
    carries a conjugate-pair crossing; the default direction walks left
    toward the branching structure.  Each step corrects onto the curve with
    an eps-circle angle search.  Branch points are flagged when a third
    modulus joins the leading pair; endpoints when the tracked pair
    collides (the walk then stops; collision_refine polishes the location).
    The mirror half of off-axis structure follows by conjugation symmetry.
    """
    es = _eigs(complex(z0), lh, sector, k=k)
    vals = es.eigenvalues
    pair = (vals[0], vals[1])
    pts = []
    z = complex(z0)
    direction = complex(direction)
    for _ in range(max_points):
        step = curve_correct(z, direction, lh, sector, pair, eps, k)
        if step is None:
            pts.append(CurvePoint(z, _top3(vals), 2, flag="endpoint"))
            break
        z_new, pair, es = step
        vals = es.eigenvalues
        mult = sum(1 for v in vals if abs(abs(v) - abs(pair[0]))
                   <= branch_tol * abs(pair[0]))
        flag = "regular"
        if mult >= 3:
            flag = "branch"
        momenta = ()
        if sector == "full" and es.eigenvectors is not None:
            _, _, ia, ib = _match_pair(vals, pair, with_indices=True)
            momenta = tuple(momentum_label(es.eigenvectors[:, i], lh)
                            for i in (ia, ib))
        if abs(pair[0] - pair[1]) < endpoint_tol * abs(pair[0]):
            pts.append(CurvePoint(z_new, _top3(vals), mult,
                                  flag="endpoint", momenta=momenta))
            break
        pts.append(CurvePoint(z_new, _top3(vals), mult, flag=flag,
                              momenta=momenta))
        if len(pts) > 3 and abs(z_new - pts[-3].z) < 0.6 * eps:
            # walk turned around onto already-traced ground
            pts[-1].flag = "endpoint"
            break
        if abs(z_new.real) > box or abs(z_new.imag) > box:
            break
        direction = z_new - z
        z = z_new
    return EquimodularCurve(lh, sector, pts)


def _top3(vals):
    mods = sorted(np.abs(vals), reverse=True)
    return tuple(mods[:3]) + (math.nan,) * (3 - min(3, len(mods)))


def _level_gap(x, lh, sector, k):
    """Relative gap between the two leading modulus clusters on the axis.

    Conjugate partners share a cluster, so the gap vanishes exactly where
    two distinct eigenvalue families cross in modulus, whatever their type
    (pair-pair, pair-real, or real-real).
    """
    es = _eigs(complex(x), lh, sector, k=k)
    levels = _cluster_moduli(es.eigenvalues, rel=1e-9)
    if len(levels) < 2:
        return math.nan, es.eigenvalues
    return (levels[0] - levels[1]) / levels[0], es.eigenvalues


def axis_crossing_scan(lh, sector="p0", x_lo=-12.0, x_hi=-0.2, n=140, k=10,
                       dip_tol=1e-5):
    """Real-axis points where the two leading modulus clusters cross.

    The cluster gap is nonnegative and dips to zero at a crossing; local
    minima of the scan are refined by golden-section search and accepted
    when the refined relative gap falls below dip_tol.  Returns (x, ratio)
    pairs where ratio is the next distinct modulus over the crossing one.
    """
    xs = np.linspace(x_lo, x_hi, n)
    gaps = np.empty(n)
    for i, x in enumerate(xs):
        gaps[i], _ = _level_gap(x, lh, sector, k)
    out = []
    invphi = (math.sqrt(5) - 1) / 2
    for i in range(1, n - 1):
        if not (gaps[i] <= gaps[i - 1] and gaps[i] <= gaps[i + 1]):
            continue
        if gaps[i] > 0.2:
            continue
        a, b = xs[i - 1], xs[i + 1]
        c = b - invphi * (b - a)
        d = a + invphi * (b - a)
        fc, _ = _level_gap(c, lh, sector, k)
        fd, _ = _level_gap(d, lh, sector, k)
        for _ in range(45):
            if fc < fd:
                b, d, fd = d, c, fc
                c = b - invphi * (b - a)
                fc, _ = _level_gap(c, lh, sector, k)
            else:
                a, c, fc = c, d, fd
                d = a + invphi * (b - a)
                fd, _ = _level_gap(d, lh, sector, k)
        x_star = 0.5 * (a + b)
        gap, vals = _level_gap(x_star, lh, sector, k)
        if gap < dip_tol:
            levels = _cluster_moduli(vals, rel=1e-3)
            ratio = levels[1] / levels[0] if len(levels) > 1 else math.nan
            out.append((x_star, ratio))
    return out


def collision_scan(lh, sector, box, spacing=0.35, k=6):
    """Seed an eigenvalue-collision search by gridding a box.

    The defect min_{i<j<=3} |l_i - l_j| / |l_1| vanishes only at curve
    endpoints (actual collisions), not at equimodular branchings, so its
    grid minimum localizes the endpoint for Newton polishing.
    """
    x0, x1, y0, y1 = box
    best, best_z = math.inf, None
    v0 = None
    for x in np.arange(x0, x1 + spacing / 2, spacing):
        for y in np.arange(y0, y1 + spacing / 2, spacing):
            z = complex(x, y)
            es = leading_eigenvalues(z, lh, sector, k=k, v0=v0,
                                     want_vectors=True)
            if es.eigenvectors is not None:
                v0 = es.eigenvectors.sum(axis=1)
            vals = es.eigenvalues[:3]
            defect = min(abs(vals[i] - vals[j]) for i in range(len(vals))
                         for j in range(i + 1, len(vals))) / abs(vals[0])
            if defect < best:
                best, best_z = defect, z
    return best_z, best


def arc_endpoint(lh, sector="p0", spacing=0.45, k=8):
    """Endpoint of the main equimodular arc near the positive critical point.

    Scans the quadrant that the finite-size endpoints approach (the exact
    critical fugacity sits at its corner) and Newton-polishes the collision;
    the collision-defect basin grows like a square root, so a coarse grid
    localizes it reliably.
    """
    seed, _ = collision_scan(lh, sector, (8.0, 12.0, 1.0, 7.0), spacing, k=k)
    return collision_refine(seed, lh, sector, k=k)


def necklace_endpoint(lh, sector="p0", spacing=0.3, k=8, report=None):
    """Off-axis tip of the necklace, seeded from the axis landmarks."""
    rep = report or curve_report(lh, sector)
    width = rep.y_branching - rep.leftmost_crossing
    box = (rep.leftmost_crossing - 0.5 * width, rep.y_branching + 0.2,
           0.5, 1.7 * width)
    seed, _ = collision_scan(lh, sector, box, spacing, k=k)
    return collision_refine(seed, lh, sector, k=k)


@dataclass
class CurveReport:
    lh: int
    sector: str
    axis_crossings: list      # (x, next-modulus ratio)
    y_branching: float
    leftmost_crossing: float
    endpoints: list           # (z, ratio, collision defect)


def curve_report(lh, sector="p0", scan=(-12.0, -0.2), n_scan=140):
    """Landmark summary of the equimodular structure for one strip width."""
    crossings = axis_crossing_scan(lh, sector, scan[0], scan[1], n_scan)
    xs = [x for x, _ in crossings]
    y_branch = max(xs) if xs else math.nan
    leftmost = min(xs) if xs else math.nan
    return CurveReport(lh, sector, crossings, y_branch, leftmost, [])
