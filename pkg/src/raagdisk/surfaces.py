"""Surface and handlebody types and the complexity bookkeeping built on them.

Everything downstream is parameterized by pairs (genus, marks) and the
complexity max(3g - 3 + n, 0), which also bounds the size of a maximal
system of pairwise disjoint, pairwise non-isotopic essential disks.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import InputError


@dataclass(frozen=True, order=True)
class SurfaceType:
    """A compact orientable surface of the given genus with marked points."""

    genus: int
    marks: int

    def __post_init__(self):
        if self.genus < 0:
            raise InputError(f"negative genus: {self.genus}")
        if self.marks < 0:
            raise InputError(f"negative mark count: {self.marks}")

    def __str__(self) -> str:
        return f"S_{{{self.genus},{self.marks}}}"


@dataclass(frozen=True, order=True)
class HandlebodyType:
    """A genus-g handlebody whose boundary carries n marked points."""

    genus: int
    marks: int

    def __post_init__(self):
        if self.genus < 0:
            raise InputError(f"negative genus: {self.genus}")
        if self.marks < 0:
            raise InputError(f"negative mark count: {self.marks}")

    def boundary(self) -> SurfaceType:
        return SurfaceType(self.genus, self.marks)

    def __str__(self) -> str:
        return f"H_{{{self.genus},{self.marks}}}"


class Mode(Enum):
    """Which ambient object the disjoint-disk-pair test refers to.

    HANDLEBODY restricts complexity-1 pieces to the four-marked sphere;
    SURFACE also allows the one-marked torus.  SURFACE exists for
    differential testing only.
    """

    HANDLEBODY = "handlebody"
    SURFACE = "surface"


class DiskCountClass(Enum):
    NONE = "none"
    UNIQUE = "unique"
    INFINITE = "infinite"


def complexity(t: SurfaceType | HandlebodyType) -> int:
    """max(3g - 3 + n, 0) for a (genus, marks) type."""
    return max(3 * t.genus - 3 + t.marks, 0)


def surfaces_with_complexity(xi: int, cap_genus: int) -> list[SurfaceType]:
    """All surface types of the given complexity with genus <= cap_genus.

    Sorted by genus (then marks).  For xi = 0 the defining equation is an
    inequality 3g - 3 + n <= 0, so several types qualify.
    """
    if xi < 0:
        raise InputError(f"negative complexity: {xi}")
    if cap_genus < 0:
        raise InputError(f"negative genus cap: {cap_genus}")
    found = []
    for g in range(cap_genus + 1):
        # n ranges over solutions of max(3g-3+n, 0) == xi
        if xi == 0:
            for n in range(0, max(3 - 3 * g, -1) + 1):
                found.append(SurfaceType(g, n))
        else:
            n = xi + 3 - 3 * g
            if n >= 0:
                found.append(SurfaceType(g, n))
    return sorted(found)


def disk_count_class(h: HandlebodyType) -> DiskCountClass:
    """How many essential-disk isotopy classes the handlebody carries.

    Genus 0 with at most three marks has none; the unmarked and
    once-marked solid torus has exactly one; everything else has
    infinitely many.
    """
    if h.genus == 0 and h.marks <= 3:
        return DiskCountClass.NONE
    if (h.genus, h.marks) in ((1, 0), (1, 1)):
        return DiskCountClass.UNIQUE
    return DiskCountClass.INFINITE


def admits_two_disjoint_disks(piece: SurfaceType, mode: Mode) -> bool:
    """Can this piece contain two disjoint non-isotopic essential disk boundaries?

    Complexity >= 2 always can; complexity 0 never can.  At complexity 1
    the answer depends on the ambient: a handlebody side must be the
    four-marked sphere, while on a surface the one-marked torus also
    qualifies (its curve system is richer than its disk system).
    """
    xi = complexity(piece)
    if xi == 0:
        return False
    if xi >= 2:
        return True
    if mode is Mode.HANDLEBODY:
        return (piece.genus, piece.marks) == (0, 4)
    return (piece.genus, piece.marks) in ((0, 4), (1, 1))


def parse_gn(text: str) -> tuple[int, int]:
    """Parse the CLI syntax "g,n" into a (genus, marks) pair."""
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"expected 'g,n', got {text!r}")
    try:
        g, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise InputError(f"expected integers in 'g,n', got {text!r}") from None
    if g < 0 or n < 0:
        raise InputError(f"genus and marks must be nonnegative, got {text!r}")
    return g, n
