import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DIHEDRAL_CLASS_TABLE, LUCAS_TABLE
from hexlat.states import (RingState, enumerate_states, is_valid_state, lucas,
                           reflect, symmetry_classes, translate)


def test_lucas_examples():
    assert lucas(3) == 4
    assert lucas(9) == 76
    assert lucas(1) == 1
    assert lucas(2) == 3


def test_lucas_recurrence():
    for n in range(3, 40):
        assert lucas(n) == lucas(n - 1) + lucas(n - 2)


def test_lucas_rejects_nonpositive():
    with pytest.raises(ValueError):
        lucas(0)


def test_enumeration_matches_lucas_exhaustively():
    for n in range(1, 21):
        idx = enumerate_states(n)
        assert len(idx) == lucas(n)
        # every enumerated state is valid, ascending, unique
        assert np.all(np.diff(idx.states) > 0)
        for s in idx.states[: min(50, len(idx))]:
            assert is_valid_state(int(s), n)


def test_enumeration_small_cases():
    assert list(enumerate_states(3).states) == [0b000, 0b001, 0b010, 0b100]
    assert list(enumerate_states(2).states) == [0b00, 0b01, 0b10]
    assert len(enumerate_states(6)) == 18


def test_enumeration_against_direct_filter():
    for n in range(2, 15):
        direct = [s for s in range(1 << n) if is_valid_state(s, n)]
        assert list(enumerate_states(n).states) == direct


def test_width_cap():
    with pytest.raises(ValueError):
        enumerate_states(32)


def test_index_roundtrip():
    idx = enumerate_states(9)
    for pos, s in enumerate(idx.states):
        assert idx.index(int(s)) == pos


def test_translate_examples():
    assert translate(0b001, 3, 1) == 0b010
    st9 = 0b000100101
    assert translate(st9, 9, 9) == st9
    # shift by 2 in width 5
    assert translate(0b00101, 5, 2) == 0b10100


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=2, max_value=16), st.integers(), st.integers())
def test_translate_preserves_validity_and_period(width, pick, k):
    idx = enumerate_states(width)
    s = int(idx.states[pick % len(idx)])
    t = translate(s, width, k % (4 * width))
    assert is_valid_state(t, width)
    assert translate(s, width, width) == s
    # shifting there and back is the identity
    assert translate(translate(s, width, 3), width, -3) == s


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=2, max_value=16), st.integers())
def test_reflection_involution(width, pick):
    idx = enumerate_states(width)
    s = int(idx.states[pick % len(idx)])
    r = reflect(s, width)
    assert is_valid_state(r, width)
    assert reflect(r, width) == s


def test_ring_state_validation():
    with pytest.raises(ValueError):
        RingState(0b011, 3)
    with pytest.raises(ValueError):
        RingState(0b101, 2)  # wrap adjacency
    rs = RingState(0b0101, 5)
    assert rs.translated(1).bits == 0b1010
    assert rs.occupancy() == 2


def test_symmetry_class_counts_match_table():
    for n, n_i in DIHEDRAL_CLASS_TABLE.items():
        if n > 24:
            continue
        sym = symmetry_classes(n)
        assert sym.count == n_i
        assert lucas(n) == LUCAS_TABLE[n]


def test_orbit_sizes_partition_state_space():
    for n in range(3, 19):
        sym = symmetry_classes(n)
        assert int(sym.orbit_sizes.sum()) == lucas(n)


def test_representatives_are_orbit_minima():
    sym = symmetry_classes(9)
    idx = enumerate_states(9)
    for ci, rep in enumerate(sym.representatives):
        members = idx.states[sym.class_of == ci]
        orbit = set()
        for m in members:
            for k in range(9):
                orbit.add(translate(int(m), 9, k))
                orbit.add(translate(reflect(int(m), 9), 9, k))
        assert int(rep) == min(orbit)
        assert len(orbit) == int(sym.orbit_sizes[ci])


def test_states_per_class_ratio_grows_like_2n():
    sym = symmetry_classes(27)
    ratio = lucas(27) / sym.count
    assert ratio == pytest.approx(52.02, abs=0.01)
