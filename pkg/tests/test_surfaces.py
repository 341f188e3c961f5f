from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from raagdisk.errors import InputError
from raagdisk.surfaces import (
    DiskCountClass,
    HandlebodyType,
    Mode,
    SurfaceType,
    admits_two_disjoint_disks,
    complexity,
    disk_count_class,
    parse_gn,
    surfaces_with_complexity,
)


def test_complexity_values():
    assert complexity(SurfaceType(2, 3)) == 6
    assert complexity(SurfaceType(0, 3)) == 0
    assert complexity(HandlebodyType(1, 5)) == 5
    assert complexity(HandlebodyType(0, 8)) == 5
    assert complexity(HandlebodyType(2, 2)) == 5
    assert complexity(SurfaceType(0, 0)) == 0  # clamped at zero


@given(st.integers(0, 6), st.integers(0, 6))
def test_boundary_has_same_complexity(g, n):
    h = HandlebodyType(g, n)
    assert complexity(h.boundary()) == complexity(h)


def test_surfaces_with_complexity_frozen_lists():
    assert [(s.genus, s.marks) for s in surfaces_with_complexity(5, 2)] == [
        (0, 8),
        (1, 5),
        (2, 2),
    ]
    assert [(s.genus, s.marks) for s in surfaces_with_complexity(4, 2)] == [
        (0, 7),
        (1, 4),
        (2, 1),
    ]
    assert [(s.genus, s.marks) for s in surfaces_with_complexity(0, 1)] == [
        (0, 0),
        (0, 1),
        (0, 2),
        (0, 3),
        (1, 0),
    ]


@given(st.integers(0, 9), st.integers(0, 4))
def test_surfaces_with_complexity_against_brute_force(xi, cap):
    got = surfaces_with_complexity(xi, cap)
    expected = sorted(
        SurfaceType(g, n)
        for g in range(cap + 1)
        for n in range(xi + 4)
        if max(3 * g - 3 + n, 0) == xi
    )
    assert got == expected
    assert len(set(got)) == len(got)


def test_disk_count_class_table():
    assert disk_count_class(HandlebodyType(1, 1)) is DiskCountClass.UNIQUE
    assert disk_count_class(HandlebodyType(1, 0)) is DiskCountClass.UNIQUE
    assert disk_count_class(HandlebodyType(0, 3)) is DiskCountClass.NONE
    assert disk_count_class(HandlebodyType(0, 0)) is DiskCountClass.NONE
    assert disk_count_class(HandlebodyType(0, 4)) is DiskCountClass.INFINITE
    assert disk_count_class(HandlebodyType(2, 0)) is DiskCountClass.INFINITE


def test_admits_two_disjoint_disks_modes():
    s11 = SurfaceType(1, 1)
    s04 = SurfaceType(0, 4)
    assert not admits_two_disjoint_disks(s11, Mode.HANDLEBODY)
    assert admits_two_disjoint_disks(s11, Mode.SURFACE)
    assert admits_two_disjoint_disks(s04, Mode.HANDLEBODY)
    assert admits_two_disjoint_disks(s04, Mode.SURFACE)
    # complexity 0 pieces never qualify, complexity >= 2 always do
    assert not admits_two_disjoint_disks(SurfaceType(0, 3), Mode.HANDLEBODY)
    assert admits_two_disjoint_disks(SurfaceType(0, 5), Mode.HANDLEBODY)
    assert admits_two_disjoint_disks(SurfaceType(1, 2), Mode.HANDLEBODY)


def test_invalid_types_rejected():
    with pytest.raises(InputError):
        SurfaceType(-1, 0)
    with pytest.raises(InputError):
        HandlebodyType(0, -2)
    with pytest.raises(InputError):
        surfaces_with_complexity(-1, 2)


def test_parse_gn():
    assert parse_gn("1,5") == (1, 5)
    assert parse_gn("0,8") == (0, 8)
    with pytest.raises(InputError):
        parse_gn("1;5")
    with pytest.raises(InputError):
        parse_gn("1,x")
    with pytest.raises(InputError):
        parse_gn("-1,5")
