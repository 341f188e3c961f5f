"""Splittings of a marked surface along a four-cycle of disjoint curves.

A decomposition consists of two disjoint "sides" (each a connected
subsurface able to carry two disjoint non-isotopic essential disk
boundaries) together with the components of the complement, called
connectors here.  Each connector attaches to the sides along circles and
may carry genus and marked points of the ambient surface.

The enumeration is governed by the complexity identity

    xi(ambient) = xi(side1) + xi(side2) + xi(connectors) + alpha

where alpha counts free isotopy classes of attaching circles: every
circle counts once, except that the two ends of an annulus connector are
isotopic and count once together.  Since both sides need xi >= 1 and
every connector contributes at least 1 to xi + alpha, the search space
is tiny for the complexities (3, 4, 5) treated here.

Decompositions are canonicalized up to relabeling connectors and
swapping the two sides; the canonical class of the connector data alone
(complexity, attachment split, annulus flag per connector) is the
CaseKey, the granularity at which the classification statements are
made.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cache

from .errors import InputError
from .surfaces import (
    Mode,
    SurfaceType,
    admits_two_disjoint_disks,
    complexity,
    surfaces_with_complexity,
)


@dataclass(frozen=True, order=True)
class Side:
    """A connected subsurface holding one pair of disjoint disk boundaries."""

    genus: int
    circles: int  # boundary circles attached to connectors
    punctures: int  # ambient marked points inside this side

    @property
    def marks(self) -> int:
        return self.circles + self.punctures

    @property
    def surface_type(self) -> SurfaceType:
        return SurfaceType(self.genus, self.marks)


@dataclass(frozen=True, order=True)
class Connector:
    """One component of the complement of the two sides."""

    genus: int
    circles_to_side1: int
    circles_to_side2: int
    punctures: int

    @property
    def circles(self) -> int:
        return self.circles_to_side1 + self.circles_to_side2

    @property
    def marks(self) -> int:
        return self.circles + self.punctures

    @property
    def surface_type(self) -> SurfaceType:
        return SurfaceType(self.genus, self.marks)

    @property
    def is_annulus(self) -> bool:
        return self.genus == 0 and self.punctures == 0 and self.circles == 2

    @property
    def is_crossing(self) -> bool:
        return self.circles_to_side1 > 0 and self.circles_to_side2 > 0

    def swapped(self) -> "Connector":
        return Connector(
            self.genus, self.circles_to_side2, self.circles_to_side1, self.punctures
        )


@dataclass(frozen=True, order=True)
class Decomposition:
    ambient: SurfaceType
    side1: Side
    side2: Side
    connectors: tuple[Connector, ...]

    def swapped(self) -> "Decomposition":
        return Decomposition(
            self.ambient,
            self.side2,
            self.side1,
            tuple(sorted(c.swapped() for c in self.connectors)),
        )

    def canonical(self) -> "Decomposition":
        mine = replace(self, connectors=tuple(sorted(self.connectors)))
        return min(mine, mine.swapped())


def alpha(d: Decomposition) -> int:
    """Free isotopy classes of attaching circles.

    The two boundary circles of an annulus connector are isotopic to each
    other and count once; every other circle counts individually.
    """
    total = sum(c.circles for c in d.connectors)
    annuli = sum(1 for c in d.connectors if c.is_annulus)
    return total - annuli


def verify_xi_identity(d: Decomposition) -> bool:
    lhs = complexity(d.ambient)
    rhs = (
        complexity(d.side1.surface_type)
        + complexity(d.side2.surface_type)
        + sum(complexity(c.surface_type) for c in d.connectors)
        + alpha(d)
    )
    return lhs == rhs


def _attachment_graph_connected(d: Decomposition) -> bool:
    # nodes: side1, side2, connectors; an edge whenever circles attach
    n = 2 + len(d.connectors)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for i, c in enumerate(d.connectors):
        if c.circles_to_side1 > 0:
            union(2 + i, 0)
        if c.circles_to_side2 > 0:
            union(2 + i, 1)
    return len({find(x) for x in range(n)}) == 1


def attachment_betti(d: Decomposition) -> int:
    """First Betti number of the attachment multigraph (assumed connected)."""
    edges = sum(c.circles for c in d.connectors)
    nodes = 2 + len(d.connectors)
    return edges - nodes + 1


def validate_decomposition(d: Decomposition) -> list[str]:
    """All violated structural invariants, empty when the data is coherent."""
    problems: list[str] = []
    for i, c in enumerate(d.connectors):
        if c.circles < 1:
            problems.append(f"connector {i} attaches no circles")
        if c.genus == 0 and c.circles == 1 and c.punctures <= 1:
            problems.append(f"connector {i} would have an inessential boundary circle")
    for side_name, side in (("side1", d.side1), ("side2", d.side2)):
        if side.circles < 1:
            problems.append(f"{side_name} is not attached to any connector")
    got1 = sum(c.circles_to_side1 for c in d.connectors)
    got2 = sum(c.circles_to_side2 for c in d.connectors)
    if got1 != d.side1.circles:
        problems.append(f"side1 circle count {d.side1.circles} != attached {got1}")
    if got2 != d.side2.circles:
        problems.append(f"side2 circle count {d.side2.circles} != attached {got2}")
    punctures = d.side1.punctures + d.side2.punctures + sum(
        c.punctures for c in d.connectors
    )
    if punctures != d.ambient.marks:
        problems.append(f"puncture balance {punctures} != ambient {d.ambient.marks}")
    if not _attachment_graph_connected(d):
        problems.append("attachment graph is disconnected")
    else:
        genus = (
            d.side1.genus
            + d.side2.genus
            + sum(c.genus for c in d.connectors)
            + attachment_betti(d)
        )
        if genus != d.ambient.genus:
            problems.append(f"genus balance {genus} != ambient {d.ambient.genus}")
    # gluing along circles preserves Euler characteristic (chi(S^1) = 0);
    # each side counts its attaching circles among its marks, so this is
    # implied by the genus/puncture balances but asserted independently
    euler_ambient = 2 - 2 * d.ambient.genus - d.ambient.marks
    euler_pieces = (
        (2 - 2 * d.side1.genus - d.side1.marks)
        + (2 - 2 * d.side2.genus - d.side2.marks)
        + sum(2 - 2 * c.genus - c.marks for c in d.connectors)
    )
    if euler_ambient != euler_pieces:
        problems.append("Euler characteristic mismatch")
    if not verify_xi_identity(d):
        problems.append("complexity identity fails")
    return problems


def _connector_cost(c: Connector) -> int:
    # contribution to xi(connector) + alpha; always >= 1
    circle_classes = c.circles - (1 if c.is_annulus else 0)
    return complexity(c.surface_type) + circle_classes


def _candidate_connectors(ambient: SurfaceType, budget: int) -> list[Connector]:
    out = []
    for genus in range(ambient.genus + 1):
        for c1 in range(budget + 2):
            for c2 in range(budget + 2):
                if c1 + c2 < 1:
                    continue
                for punct in range(ambient.marks + 1):
                    c = Connector(genus, c1, c2, punct)
                    if c.genus == 0 and c.circles == 1 and c.punctures <= 1:
                        continue  # inessential boundary circle
                    if _connector_cost(c) <= budget:
                        out.append(c)
    return sorted(out)


def _side_splits(xi_side: int, circles: int, genus_cap: int, punct_cap: int):
    """All (genus, punctures) with 3g - 3 + circles + p == xi_side >= 1."""
    for genus in range(genus_cap + 1):
        punct = xi_side + 3 - 3 * genus - circles
        if 0 <= punct <= punct_cap:
            yield genus, punct


@cache
def enumerate_decompositions(
    ambient: SurfaceType, mode: Mode = Mode.HANDLEBODY
) -> tuple[Decomposition, ...]:
    """All decompositions of the ambient surface, canonical and sorted.

    Empty for complexity < 3: two sides with xi >= 1 plus at least one
    attaching-circle class already need xi >= 3.
    """
    xi = complexity(ambient)
    if xi < 3:
        return ()
    budget = xi - 2  # sides consume at least 1 + 1
    candidates = _candidate_connectors(ambient, budget)
    found: set[Decomposition] = set()

    def build(connectors: tuple[Connector, ...]) -> None:
        cost = sum(_connector_cost(c) for c in connectors)
        sides_xi = xi - cost
        if sides_xi < 2:
            return
        b1 = sum(c.circles_to_side1 for c in connectors)
        b2 = sum(c.circles_to_side2 for c in connectors)
        if b1 < 1 or b2 < 1:
            return
        punct_left = ambient.marks - sum(c.punctures for c in connectors)
        if punct_left < 0:
            return
        probe = Decomposition(ambient, Side(0, b1, 0), Side(0, b2, 0), connectors)
        if not _attachment_graph_connected(probe):
            return
        genus_left = (
            ambient.genus - sum(c.genus for c in connectors) - attachment_betti(probe)
        )
        if genus_left < 0:
            return
        for xi1 in range(1, sides_xi):
            xi2 = sides_xi - xi1
            for g1, p1 in _side_splits(xi1, b1, genus_left, punct_left):
                g2 = genus_left - g1
                p2 = punct_left - p1
                s1 = Side(g1, b1, p1)
                s2 = Side(g2, b2, p2)
                if g2 < 0 or p2 < 0:
                    continue
                if complexity(s2.surface_type) != xi2 or s2.marks < 1:
                    continue
                if not admits_two_disjoint_disks(s1.surface_type, mode):
                    continue
                if not admits_two_disjoint_disks(s2.surface_type, mode):
                    continue
                d = Decomposition(ambient, s1, s2, connectors).canonical()
                bad = validate_decomposition(d)
                if bad:  # construction guarantees coherence
                    raise AssertionError(f"enumerator produced invalid data: {bad}")
                found.add(d)

    def extend(start: int, chosen: tuple[Connector, ...], cost: int) -> None:
        if chosen:
            build(chosen)
        if cost >= budget:
            return
        for i in range(start, len(candidates)):
            c = candidates[i]
            nc = cost + _connector_cost(c)
            if nc <= budget:
                extend(i, chosen + (c,), nc)

    extend(0, (), 0)
    return tuple(sorted(found))


@dataclass(frozen=True, order=True)
class CaseKey:
    """Connector data up to side swap: the classification granularity.

    One entry per connector: (complexity, low attachment count, high
    attachment count, annulus flag), as a sorted tuple.  Side genus and
    puncture placement are deliberately forgotten; two decompositions
    with the same key present the same combinatorial picture to the
    obstruction analysis.
    """

    entries: tuple[tuple[int, int, int, bool], ...]

    @classmethod
    def of(cls, d: Decomposition) -> "CaseKey":
        entries = []
        for c in d.connectors:
            lo, hi = sorted((c.circles_to_side1, c.circles_to_side2))
            entries.append((complexity(c.surface_type), lo, hi, c.is_annulus))
        return cls(tuple(sorted(entries)))

    def __str__(self) -> str:
        parts = []
        for xi, lo, hi, is_ann in self.entries:
            if is_ann:
                parts.append(f"ann({lo},{hi})")
            elif xi == 0:
                parts.append(f"pants({lo},{hi})")
            else:
                parts.append(f"piece(xi={xi},{lo},{hi})")
        return "+".join(parts)


def _shape_key(shapes: list[tuple[int, int, int, int]]) -> CaseKey:
    # shape = (genus, circles_to_side1, circles_to_side2, punctures)
    conns = tuple(Connector(*s) for s in shapes)
    entries = []
    for c in conns:
        lo, hi = sorted((c.circles_to_side1, c.circles_to_side2))
        entries.append((complexity(c.surface_type), lo, hi, c.is_annulus))
    return CaseKey(tuple(sorted(entries)))


_ANN = (0, 1, 1, 0)

_LABELED_SHAPES: dict[int, list[tuple[str, list[tuple[int, int, int, int]]]]] = {
    5: [
        ("(1)", [_ANN]),
        ("(2)", [(0, 1, 1, 1)]),
        ("(3)", [_ANN, _ANN]),
        ("(4)", [_ANN, (0, 2, 0, 0)]),
        ("(5)", [_ANN, (0, 1, 0, 2)]),
        ("(6)", [(0, 1, 1, 2)]),
        ("(7)", [_ANN, (0, 1, 0, 3)]),
        ("(8)", [(0, 2, 1, 0)]),
        ("(9)", [_ANN, (0, 1, 1, 1)]),
        ("(10)", [_ANN, (0, 2, 0, 1)]),
        ("(11)", [(0, 2, 0, 0), (0, 1, 1, 1)]),
        ("(12)", [_ANN, _ANN, _ANN]),
        ("(13)", [_ANN, _ANN, (0, 2, 0, 0)]),
        ("(14)", [_ANN, (0, 2, 0, 0), (0, 0, 2, 0)]),
        ("(15)", [_ANN, _ANN, (0, 1, 0, 2)]),
        ("(16)", [_ANN, (0, 2, 0, 0), (0, 1, 0, 2)]),
        ("(17)", [_ANN, (0, 1, 0, 2), (0, 1, 0, 2)]),
    ],
    4: [
        ("(1)'", [_ANN]),
        ("(2)'", [(0, 1, 1, 1)]),
        ("(3)'", [_ANN, _ANN]),
        ("(4)'", [_ANN, (0, 2, 0, 0)]),
        ("(5)'", [_ANN, (0, 1, 0, 2)]),
    ],
}


def _label_table(xi: int) -> dict[CaseKey, str]:
    table = {}
    for label, shapes in _LABELED_SHAPES.get(xi, []):
        key = _shape_key(shapes)
        if key in table:
            raise AssertionError(f"label table collision at {label}")
        table[key] = label
    return table


def case_label(key: CaseKey, xi: int) -> str | None:
    """The classification label of a key at the given ambient complexity."""
    return _label_table(xi).get(key)


@dataclass(frozen=True)
class CatalogEntry:
    key: CaseKey
    label: str | None
    ambients: tuple[SurfaceType, ...]
    representative: Decomposition


def _label_sort_token(label: str | None, key: CaseKey):
    if label is None:
        return (1, 0, key)
    digits = "".join(ch for ch in label if ch.isdigit())
    return (0, int(digits), key)


def case_catalog(xi: int, mode: Mode = Mode.HANDLEBODY) -> tuple[CatalogEntry, ...]:
    """Group all decompositions at one complexity by CaseKey.

    Scans every homeomorphism type of ambient surface with the given
    complexity (ambient genus is bounded: a side needs 3g - 3 + 1 <= xi,
    and (xi + 3) // 3 caps the total).
    """
    if xi < 0:
        raise InputError(f"complexity must be nonnegative, got {xi}")
    cap_genus = (xi + 3) // 3
    grouped: dict[CaseKey, dict] = {}
    for ambient in surfaces_with_complexity(xi, cap_genus):
        for d in enumerate_decompositions(ambient, mode):
            key = CaseKey.of(d)
            slot = grouped.setdefault(key, {"ambients": [], "rep": d})
            if ambient not in slot["ambients"]:
                slot["ambients"].append(ambient)
    entries = [
        CatalogEntry(
            key=key,
            label=case_label(key, xi),
            ambients=tuple(sorted(slot["ambients"])),
            representative=slot["rep"],
        )
        for key, slot in grouped.items()
    ]
    entries.sort(key=lambda e: _label_sort_token(e.label, e.key))
    return tuple(entries)


def decomposition_to_json(d: Decomposition) -> dict:
    return {
        "ambient": [d.ambient.genus, d.ambient.marks],
        "side1": [d.side1.genus, d.side1.circles, d.side1.punctures],
        "side2": [d.side2.genus, d.side2.circles, d.side2.punctures],
        "connectors": [
            [c.genus, c.circles_to_side1, c.circles_to_side2, c.punctures]
            for c in d.connectors
        ],
        "case_key": str(CaseKey.of(d)),
    }


def catalog_to_json(entries: tuple[CatalogEntry, ...]) -> list[dict]:
    return [
        {
            "case_key": str(e.key),
            "label": e.label,
            "ambients": [[a.genus, a.marks] for a in e.ambients],
            "representative": decomposition_to_json(e.representative),
        }
        for e in entries
    ]
