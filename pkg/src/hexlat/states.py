"""Cut-line state space of the hard-hexagon transfer matrix.

A cut-line of width n is a ring of n sites, each empty (0) or occupied (1),
with no two cyclically adjacent sites occupied.  States are packed into a
single integer, bit j = site j, so the whole space for n <= 31 fits in one
machine word.  The number of such rings is the Lucas number L(n).
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_WIDTH = 31  # states must fit one machine word alongside int32 indexing


def lucas(n):
    """Lucas number L(n): count of n-site rings with no adjacent occupied pair."""
    if n < 1:
        raise ValueError("width must be >= 1")
    a, b = 2, 1  # L(0), L(1)
    for _ in range(n):
        a, b = b, a + b
    return a


def _check_width(n):
    if not 1 <= n <= MAX_WIDTH:
        raise ValueError(f"width {n} outside supported range [1, {MAX_WIDTH}]")


def is_valid_state(bits, width):
    """True if no two cyclically adjacent bits are both set."""
    ring = bits | ((bits & 1) << width)  # duplicate site 0 above the top
    return bits < (1 << width) and (ring & (ring >> 1)) == 0


def translate(bits, width, k=1):
    """Cyclic shift of a ring state by k sites (bit j -> bit j+k mod width)."""
    k %= width
    mask = (1 << width) - 1
    return ((bits << k) | (bits >> (width - k))) & mask


def reflect(bits, width):
    """Ring reflection fixing site 0 (site j -> site width-j)."""
    out = bits & 1
    for j in range(1, width):
        out |= ((bits >> j) & 1) << (width - j)
    return out


@dataclass(frozen=True)
class RingState:
    """One occupation configuration of a cut-line ring."""

    bits: int
    width: int

    def __post_init__(self):
        _check_width(self.width)
        if not is_valid_state(self.bits, self.width):
            raise ValueError(f"{self.bits:0{self.width}b} violates ring adjacency")

    def translated(self, k=1):
        return RingState(translate(self.bits, self.width, k), self.width)

    def reflected(self):
        return RingState(reflect(self.bits, self.width), self.width)

    def occupancy(self):
        return int(self.bits).bit_count()

    def __str__(self):
        return format(self.bits, f"0{self.width}b")


def _enumerate_bits(width):
    """All valid ring states of a width, ascending, as an int64 array.

    Built by extending open chains site by site, keeping (first bit, last bit)
    classes, then closing the ring; O(L(n)) memory, no 2^n scan.
    """
    if width == 1:
        return np.array([0], dtype=np.int64)
    # chains[(first, last)] -> array of packed values for sites 0..j
    chains = {(0, 0): np.array([0], dtype=np.int64),
              (1, 1): np.array([1], dtype=np.int64)}
    for j in range(1, width):
        nxt = {}
        for (first, last), vals in chains.items():
            key0 = (first, 0)
            nxt[key0] = np.concatenate([nxt[key0], vals]) if key0 in nxt else vals
            if last == 0:
                key1 = (first, 1)
                occ = vals | (np.int64(1) << j)
                nxt[key1] = np.concatenate([nxt[key1], occ]) if key1 in nxt else occ
        chains = nxt
    parts = [vals for (first, last), vals in chains.items() if not (first and last)]
    out = np.concatenate(parts)
    out.sort()
    return out


class StateIndex:
    """Bijection between valid ring states and dense indices [0, count)."""

    def __init__(self, width):
        _check_width(width)
        self.width = width
        self.states = _enumerate_bits(width)
        self.count = len(self.states)
        if self.count != lucas(width):
            raise AssertionError("state enumeration disagrees with Lucas count")

    def index(self, bits):
        """Dense index of one state (or of an array of states)."""
        pos = np.searchsorted(self.states, bits)
        return pos

    def state(self, idx):
        return self.states[idx]

    def __len__(self):
        return self.count


@lru_cache(maxsize=16)
def enumerate_states(width):
    """Cached StateIndex for a cut-line width."""
    return StateIndex(width)


def _canonical_map(states, width):
    """Orbit minimum and orbit size under the dihedral group, vectorized.

    Orbit size comes from the orbit-stabilizer relation: 2*width group
    elements divided by the number of elements fixing the state.
    """
    mask = (1 << width) - 1
    s = states.astype(np.int64)
    # reflection: site j -> width - j (site 0 fixed)
    refl = s & 1
    for j in range(1, width):
        refl |= ((s >> j) & 1) << (width - j)
    best = s.copy()
    stab = np.zeros(len(s), dtype=np.int64)
    for base in (s, refl):
        for k in range(width):
            img = ((base << k) | (base >> (width - k))) & mask if k else base
            np.minimum(best, img, out=best)
            stab += img == s
    return best, (2 * width) // stab


@dataclass
class SymmetryClasses:
    """Dihedral (rotation + reflection) orbit decomposition of a state space."""

    width: int
    representatives: np.ndarray  # orbit minima, ascending
    orbit_sizes: np.ndarray      # number of states in each orbit
    class_of: np.ndarray         # state position -> class position

    @property
    def count(self):
        return len(self.representatives)


@lru_cache(maxsize=16)
def symmetry_classes(width):
    """Group the ring states of a width into dihedral symmetry classes."""
    idx = enumerate_states(width)
    best, orbit_size = _canonical_map(idx.states, width)
    reps, first, class_of = np.unique(best, return_index=True, return_inverse=True)
    sizes = orbit_size[first]
    if sizes.sum() != idx.count:
        raise AssertionError("orbit sizes do not partition the state space")
    return SymmetryClasses(width, reps, sizes, class_of)
