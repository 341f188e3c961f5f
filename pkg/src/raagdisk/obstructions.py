"""Rule-based refutation of graph embeddings into disk graphs.

Given a target graph containing an induced four-cycle and a decomposition
of the ambient boundary surface along that four-cycle's disks, each extra
vertex of the graph is a disk whose boundary curve is confined by its
adjacencies: adjacent to all four cycle vertices means the curve avoids
both sides, adjacent to one opposite pair means it avoids that pair's
side.  Within those regions a curve has finitely many placement classes
at this level of granularity:

  pin   - in a connector that is a sphere piece with at most three marks,
          every essential curve is parallel to one of its attaching
          circles; one placement per circle class;
  free  - a roomier connector admits curves this analysis does not pin;
  region - a curve confined to the complement of one side.

A pair constraint (intersect for non-edges, disjoint for edges) can be
checked against a pair of placements; six rules R1-R6 recognize the
unsatisfiable combinations.  A case is contradicted when every placement
combination violates some pair.  Survivors mean "no obstruction found at
this granularity", never "embeddable".

The rules are sound for refutation: each encodes a fact about curves on
the decomposed surface (see the rule table in _pair_violation).  R5 is
coarser than the others: it pronounces a verdict about the two
complement-confined curves that is not reducible to placement pairs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

from .decompositions import (
    CaseKey,
    Decomposition,
    case_label,
    enumerate_decompositions,
)
from .errors import InputError
from .graphs import SimplicialGraph, max_clique_size
from .surfaces import HandlebodyType, Mode, complexity, surfaces_with_complexity


class RegionConstraint(Enum):
    AVOID_BOTH_SIDES = "avoid_both_sides"  # adjacent to all four cycle disks
    AVOID_SIDE1 = "avoid_side1"  # adjacent to the side-1 pair
    AVOID_SIDE2 = "avoid_side2"  # adjacent to the side-2 pair
    UNCONSTRAINED = "unconstrained"


class PairConstraint(Enum):
    MUST_INTERSECT = "must_intersect"  # non-edge: distinct disks that meet
    MUST_BE_DISJOINT = "must_be_disjoint"  # edge: distinct disjoint disks


class CaseVerdict(Enum):
    CONTRADICTION = "contradiction"
    NO_OBSTRUCTION = "no_obstruction"


class AnalysisVerdict(Enum):
    NOT_EMBEDDABLE = "not_embeddable"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PlacementProblem:
    """Region and pair constraints for the non-cycle vertices."""

    target: SimplicialGraph
    cycle: tuple[str, str, str, str]
    regions: tuple[tuple[str, RegionConstraint], ...]
    pairs: tuple[tuple[str, str, PairConstraint], ...]
    _region_map: dict = field(default_factory=dict, compare=False, repr=False)
    _pair_map: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_region_map", dict(self.regions))
        object.__setattr__(
            self, "_pair_map", {(u, v): c for u, v, c in self.pairs}
        )

    @property
    def extra_vertices(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.regions)

    def region_of(self, v: str) -> RegionConstraint:
        return self._region_map[v]

    def pair_of(self, u: str, v: str) -> PairConstraint:
        u, v = sorted((u, v))
        return self._pair_map[(u, v)]


def derive_constraints(
    target: SimplicialGraph, cycle: tuple[str, str, str, str]
) -> PlacementProblem:
    """Read region and pair constraints off the target graph.

    The cycle (a, b, c, d) must be an induced four-cycle: edges ab, bc,
    cd, da present, diagonals ac, bd absent.  Side 1 carries {a, c},
    side 2 carries {b, d}.
    """
    a, b, c, d = cycle
    if len({a, b, c, d}) != 4:
        raise InputError("cycle vertices must be distinct")
    for v in cycle:
        if not target.has_vertex(v):
            raise InputError(f"cycle vertex {v!r} not in graph")
    for u, v in [(a, b), (b, c), (c, d), (d, a)]:
        if not target.has_edge(u, v):
            raise InputError(f"cycle edge {u!r}-{v!r} missing")
    for u, v in [(a, c), (b, d)]:
        if target.has_edge(u, v):
            raise InputError(f"cycle diagonal {u!r}-{v!r} present; not induced")

    extras = sorted(v for v in target.vertices if v not in cycle)
    regions = []
    for v in extras:
        nbrs = set(target.neighbors(v))
        if {a, b, c, d} <= nbrs:
            reg = RegionConstraint.AVOID_BOTH_SIDES
        elif {a, c} <= nbrs:
            reg = RegionConstraint.AVOID_SIDE1
        elif {b, d} <= nbrs:
            reg = RegionConstraint.AVOID_SIDE2
        else:
            reg = RegionConstraint.UNCONSTRAINED
        regions.append((v, reg))
    pairs = []
    for u, v in itertools.combinations(extras, 2):
        if target.has_edge(u, v):
            pairs.append((u, v, PairConstraint.MUST_BE_DISJOINT))
        else:
            pairs.append((u, v, PairConstraint.MUST_INTERSECT))
    return PlacementProblem(target, tuple(cycle), tuple(regions), tuple(pairs))


# ------------------------------------------------------------- placements

@dataclass(frozen=True, order=True)
class Placement:
    pid: str
    kind: str  # "pin" | "free" | "region" | "any"
    comp: int | None = None
    circle_class: str | None = None
    sides: frozenset = frozenset()  # pin: sides of the class; free: comp's sides
    avoid: int | None = None


def _is_pinned_connector(c) -> bool:
    # every essential curve in a sphere piece with <= 3 marks is parallel
    # to an attaching circle (curves around single punctures are trivial
    # in the ambient surface)
    return c.genus == 0 and c.marks <= 3


def _connector_sides(c) -> frozenset:
    s = set()
    if c.circles_to_side1 > 0:
        s.add(1)
    if c.circles_to_side2 > 0:
        s.add(2)
    return frozenset(s)


def connector_circle_classes(d: Decomposition, i: int):
    """Isotopy classes of the i-th connector's attaching circles.

    The two ends of an annulus are one class; any other circle is its
    own class.
    """
    c = d.connectors[i]
    if c.is_annulus:
        return [(f"comp{i}:core", _connector_sides(c))]
    classes = []
    for j in range(c.circles_to_side1):
        classes.append((f"comp{i}:side1#{j}", frozenset({1})))
    for j in range(c.circles_to_side2):
        classes.append((f"comp{i}:side2#{j}", frozenset({2})))
    return classes


def placements_for(problem: PlacementProblem, d: Decomposition):
    """Placement options for every extra vertex under this decomposition."""
    inside_opts = []
    for i, c in enumerate(d.connectors):
        if _is_pinned_connector(c):
            for class_id, sides in connector_circle_classes(d, i):
                inside_opts.append(
                    Placement(
                        pid=f"pin:{class_id}",
                        kind="pin",
                        comp=i,
                        circle_class=class_id,
                        sides=sides,
                    )
                )
        else:
            inside_opts.append(
                Placement(
                    pid=f"free:comp{i}",
                    kind="free",
                    comp=i,
                    sides=_connector_sides(c),
                )
            )
    options = {}
    for v in problem.extra_vertices:
        reg = problem.region_of(v)
        if reg is RegionConstraint.AVOID_BOTH_SIDES:
            options[v] = tuple(inside_opts)
        elif reg is RegionConstraint.AVOID_SIDE1:
            options[v] = (Placement(pid="region:avoid-side1", kind="region", avoid=1),)
        elif reg is RegionConstraint.AVOID_SIDE2:
            options[v] = (Placement(pid="region:avoid-side2", kind="region", avoid=2),)
        else:
            options[v] = (Placement(pid="anywhere", kind="any"),)
    return options


# -------------------------------------------------------------- the rules

@dataclass(frozen=True)
class Violation:
    rule: str
    vertices: tuple[str, str]
    constraint: PairConstraint
    detail: str


def _pair_violation(d: Decomposition, pa: Placement, pb: Placement,
                    want: PairConstraint):
    """Decide whether two placements make the pair constraint unsatisfiable.

    Rule table (all statements about essential curves on the decomposed
    surface, after isotopy to minimal position):

    R1  the two region-confined curves can only meet inside crossing
        connectors, and every connector any of them can reach is an
        annulus, where such meetings are removable; likewise a free curve
        in a connector attached only to the avoided side is unreachable.
    R2  as R1 for the crossing connectors, but some reachable connector
        is roomier (separate name: the removability argument differs).
    R3  curves pinned to attaching circles (of the same or different
        connectors) or confined to different connectors are disjoint
        after isotopy; a required intersection is unsatisfiable.  For a
        pinned curve against a region curve this applies when the circle
        lies on the avoided side's boundary.
    R4  as R3 when the pinned connector attaches to the avoided side
        along two circles (the argument uses the second circle).
    R5  both region curves must meet inside a crossing connector, every
        crossing connector is pinned (sphere, <= 3 marks) and some
        connector is not crossing: the meeting is obstructed.  This is a
        verdict-level rule, coarser than the placement-pair rules.
    R6  two distinct vertices pinned to the same circle class would be
        isotopic disks: contradiction regardless of the pair constraint.
    """
    x, y = sorted((pa, pb), key=lambda p: ("pin", "free", "region", "any").index(p.kind))
    if x.kind == "any" or y.kind == "any":
        return None

    if x.kind == "pin" and y.kind == "pin":
        if x.circle_class == y.circle_class:
            return ("R6", "both pinned to the same circle class: the disks "
                          "would be isotopic, but vertices are distinct")
        if want is PairConstraint.MUST_INTERSECT:
            return ("R3", "curves parallel to distinct attaching circles are "
                          "disjoint; required intersection impossible")
        return None

    if x.kind == "pin" and y.kind == "free":
        # pins only exist in pinned connectors, free only in roomy ones,
        # so the components differ and the curves are separated
        if want is PairConstraint.MUST_INTERSECT:
            return ("R3", "a circle-parallel curve and a curve in a different "
                          "connector are disjoint; required intersection "
                          "impossible")
        return None

    if x.kind == "pin" and y.kind == "region":
        if want is PairConstraint.MUST_INTERSECT and y.avoid in x.sides:
            comp = d.connectors[x.comp]
            doubled = (
                (y.avoid == 1 and comp.circles_to_side1 >= 2)
                or (y.avoid == 2 and comp.circles_to_side2 >= 2)
            )
            rule = "R4" if doubled else "R3"
            return (rule, "the pinned curve is parallel to a boundary circle "
                          "of the avoided side; a curve avoiding that side "
                          "cannot reach it")
        return None

    if x.kind == "free" and y.kind == "free":
        if want is PairConstraint.MUST_INTERSECT and x.comp != y.comp:
            return ("R3", "curves confined to different connectors are "
                          "disjoint; required intersection impossible")
        return None

    if x.kind == "free" and y.kind == "region":
        if (
            want is PairConstraint.MUST_INTERSECT
            and x.sides == frozenset({y.avoid})
        ):
            return ("R1", "the free curve's connector attaches only to the "
                          "avoided side; the region curve cannot enter it")
        return None

    # region vs region
    if x.avoid == y.avoid:
        return None
    if want is not PairConstraint.MUST_INTERSECT:
        return None
    crossing = [c for c in d.connectors if c.is_crossing]
    if all(c.is_annulus for c in crossing):
        if all(c.is_annulus for c in d.connectors):
            return ("R1", "the curves can only meet inside crossing "
                          "connectors; all connectors are annuli, where "
                          "meetings are removable")
        return ("R2", "the curves can only meet inside crossing connectors, "
                      "all of which are annuli with removable meetings")
    if crossing and all(_is_pinned_connector(c) for c in crossing) and (
        len(crossing) < len(d.connectors)
    ):
        return ("R5", "every crossing connector is a pinned sphere piece and "
                      "a non-crossing connector is present; the required "
                      "meeting of the two region curves is obstructed")
    return None


# ------------------------------------------------------------ case checks

@dataclass(frozen=True)
class TraceStep:
    assignment: tuple[tuple[str, str], ...]  # (vertex, placement id)
    violation: Violation | None


@dataclass(frozen=True)
class CaseReport:
    decomposition: Decomposition
    key: CaseKey
    label: str | None
    verdict: CaseVerdict
    steps: tuple[TraceStep, ...]


def check_case(problem: PlacementProblem, d: Decomposition) -> CaseReport:
    """Scan every placement combination; contradiction iff all violate."""
    options = placements_for(problem, d)
    vertices = problem.extra_vertices
    steps = []
    all_violated = True
    for combo in itertools.product(*(options[v] for v in vertices)):
        chosen = dict(zip(vertices, combo))
        violation = None
        for u, v, want in problem.pairs:
            hit = _pair_violation(d, chosen[u], chosen[v], want)
            if hit is not None:
                rule, detail = hit
                violation = Violation(rule, (u, v), want, detail)
                break
        if violation is None:
            all_violated = False
        steps.append(
            TraceStep(
                assignment=tuple((v, chosen[v].pid) for v in vertices),
                violation=violation,
            )
        )
    verdict = CaseVerdict.CONTRADICTION if all_violated else CaseVerdict.NO_OBSTRUCTION
    key = CaseKey.of(d)
    return CaseReport(
        decomposition=d,
        key=key,
        label=case_label(key, complexity(d.ambient)),
        verdict=verdict,
        steps=tuple(steps),
    )


def verify_trace(problem: PlacementProblem, report: CaseReport) -> list[str]:
    """Independently replay a case report; empty list means it checks out.

    Verifies that the recorded combinations exactly cover the placement
    product space, that each recorded violation re-fires under the rule
    dispatcher, that violation-free steps really have no violated pair,
    and that the verdict matches the steps.
    """
    problems = []
    d = report.decomposition
    options = placements_for(problem, d)
    vertices = problem.extra_vertices
    by_pid = {v: {p.pid: p for p in options[v]} for v in vertices}
    expected = {
        tuple((v, p.pid) for v, p in zip(vertices, combo))
        for combo in itertools.product(*(options[v] for v in vertices))
    }
    recorded = {s.assignment for s in report.steps}
    if recorded != expected:
        problems.append(
            f"combination coverage mismatch: {len(recorded)} recorded, "
            f"{len(expected)} expected"
        )
    for step in report.steps:
        try:
            chosen = {v: by_pid[v][pid] for v, pid in step.assignment}
        except KeyError as e:
            problems.append(f"unknown placement id {e} in step")
            continue
        hits = {}
        for u, v, want in problem.pairs:
            hit = _pair_violation(d, chosen[u], chosen[v], want)
            if hit is not None:
                hits[(u, v)] = (hit[0], want)
        if step.violation is None:
            if hits:
                problems.append(
                    f"step {step.assignment} recorded clean but violates {hits}"
                )
        else:
            got = hits.get(tuple(step.violation.vertices))
            if got is None:
                problems.append(
                    f"step {step.assignment}: recorded violation "
                    f"{step.violation.rule} on {step.violation.vertices} "
                    "does not re-fire"
                )
            elif got[0] != step.violation.rule:
                problems.append(
                    f"step {step.assignment}: rule mismatch "
                    f"{step.violation.rule} vs {got[0]}"
                )
    has_clean = any(s.violation is None for s in report.steps)
    want_verdict = (
        CaseVerdict.NO_OBSTRUCTION if has_clean else CaseVerdict.CONTRADICTION
    )
    if report.verdict is not want_verdict:
        problems.append(f"verdict {report.verdict} inconsistent with steps")
    return problems


# --------------------------------------------------------- whole ambients

@dataclass(frozen=True)
class AnalysisResult:
    handlebody: HandlebodyType
    verdict: AnalysisVerdict
    reason: str
    reports: tuple[CaseReport, ...]

    @property
    def survivors(self) -> tuple[CaseReport, ...]:
        return tuple(
            r for r in self.reports if r.verdict is CaseVerdict.NO_OBSTRUCTION
        )


def check_all_cases(
    target: SimplicialGraph,
    cycle: tuple[str, str, str, str],
    handlebody: HandlebodyType,
    mode: Mode = Mode.HANDLEBODY,
    mapper=map,
) -> AnalysisResult:
    """Analyze every decomposition of the handlebody boundary.

    NOT_EMBEDDABLE means every case is contradicted (vacuously when the
    boundary admits no decomposition at all, or by the disjoint-disk
    capacity bound when the target's largest clique exceeds the boundary
    complexity).  Anything else is INCONCLUSIVE with the survivors listed.

    mapper is an order-preserving map implementation; pass an executor's
    map to spread the per-case checks over workers.
    """
    xi = complexity(handlebody.boundary())
    if xi not in (3, 4, 5):
        raise InputError(
            f"case analysis covers complexity 3..5, got {xi} for {handlebody}"
        )
    problem = derive_constraints(target, cycle)
    clique = max_clique_size(target)
    if clique > xi:
        return AnalysisResult(
            handlebody=handlebody,
            verdict=AnalysisVerdict.NOT_EMBEDDABLE,
            reason=(
                f"a {clique}-clique needs {clique} disjoint non-isotopic "
                f"disks, but the boundary carries at most {xi}"
            ),
            reports=(),
        )
    decomps = enumerate_decompositions(handlebody.boundary(), mode)
    if not decomps:
        return AnalysisResult(
            handlebody=handlebody,
            verdict=AnalysisVerdict.NOT_EMBEDDABLE,
            reason="no four-cycle decomposition exists on this boundary",
            reports=(),
        )
    reports = tuple(mapper(lambda d: check_case(problem, d), decomps))
    if all(r.verdict is CaseVerdict.CONTRADICTION for r in reports):
        return AnalysisResult(
            handlebody=handlebody,
            verdict=AnalysisVerdict.NOT_EMBEDDABLE,
            reason=f"all {len(reports)} decomposition cases are contradicted",
            reports=reports,
        )
    surviving = [r for r in reports if r.verdict is CaseVerdict.NO_OBSTRUCTION]
    labels = sorted({r.label or str(r.key) for r in surviving})
    return AnalysisResult(
        handlebody=handlebody,
        verdict=AnalysisVerdict.INCONCLUSIVE,
        reason=f"cases {', '.join(labels)} are not contradicted",
        reports=reports,
    )


def surviving_labels(
    target: SimplicialGraph,
    cycle: tuple[str, str, str, str],
    xi: int,
    mode: Mode = Mode.HANDLEBODY,
) -> dict:
    """Surviving case labels per handlebody type at one complexity."""
    if xi not in (3, 4, 5):
        raise InputError(f"complexity must be 3..5, got {xi}")
    out = {}
    for ambient in surfaces_with_complexity(xi, (xi + 3) // 3):
        h = HandlebodyType(ambient.genus, ambient.marks)
        result = check_all_cases(target, cycle, h, mode)
        out[h] = tuple(
            sorted({r.label or str(r.key) for r in result.survivors})
        )
    return out


# ---------------------------------------------------------------- JSON

def report_to_json(report: CaseReport) -> dict:
    from .decompositions import decomposition_to_json

    return {
        "case_key": str(report.key),
        "label": report.label,
        "verdict": report.verdict.value,
        "decomposition": decomposition_to_json(report.decomposition),
        "steps": [
            {
                "assignment": [list(pair) for pair in s.assignment],
                "violation": None
                if s.violation is None
                else {
                    "rule": s.violation.rule,
                    "vertices": list(s.violation.vertices),
                    "constraint": s.violation.constraint.value,
                    "detail": s.violation.detail,
                },
            }
            for s in report.steps
        ],
    }


def analysis_to_json(result: AnalysisResult) -> dict:
    return {
        "handlebody": [result.handlebody.genus, result.handlebody.marks],
        "verdict": result.verdict.value,
        "reason": result.reason,
        "cases": [report_to_json(r) for r in result.reports],
    }
