"""Filter bases of finite-index relations and their separation certificates.

A filter base here is a finite list of partitions on one carrier, each
passing a declared law, such that every pairwise intersection is refined
by some member. The Hausdorff certificate asks whether the meet of all
members is the diagonal; the discreteness certificate asks, element by
element, for a member isolating it.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import carrier as ca
from . import partition as pt
from .carrier import FiniteStructure, StructureMap, Violation
from .errors import (
    CarrierMismatch,
    KindMismatch,
    LawCheckFailed,
    NotAFilterBase,
    UnknownElement,
)
from .partition import CheckReport, LawTag, Partition


@dataclass(frozen=True)
class FilterBase:
    carrier: FiniteStructure
    members: tuple[Partition, ...]
    law: LawTag = LawTag.COMPATIBLE


def is_filter_base(i: FilterBase) -> CheckReport:
    """Pairwise refinement-witness condition, with the failing pair reported."""
    for m in i.members:
        if m.carrier != i.carrier:
            raise CarrierMismatch("member lives on a different carrier")
        rep = pt.check(i.law, m)
        if not rep.passed:
            raise LawCheckFailed(rep, "member fails the declared law")
    failures: list[Violation] = []
    members = i.members
    for a in range(len(members)):
        for b in range(a, len(members)):
            if not any(
                m.refines(members[a]) and m.refines(members[b]) for m in members
            ):
                failures.append(Violation("NoRefinementWitness", (a, b)))
    return CheckReport(i.law, tuple(failures))


def meet_close(i: FilterBase) -> FilterBase:
    """Close the member list under pairwise intersection.

    The result always passes is_filter_base, and its meet equals the meet
    of the original members, so separation certificates are unchanged.
    """
    seen: list[Partition] = []

    def add(p: Partition):
        if not any(p.classes == q.classes for q in seen):
            seen.append(p)

    for m in i.members:
        add(m)
    grew = True
    while grew:
        grew = False
        current = list(seen)
        for a in range(len(current)):
            for b in range(a + 1, len(current)):
                meet = pt.intersect(current[a], current[b])
                if not any(meet.classes == q.classes for q in seen):
                    seen.append(meet)
                    grew = True
    return FilterBase(i.carrier, tuple(seen), i.law)


def _require_filter_base(i: FilterBase) -> None:
    rep = is_filter_base(i)
    if not rep.passed:
        raise NotAFilterBase(f"refinement witness missing for member pair {rep.failures[0].witness}")


def is_hausdorff(i: FilterBase) -> bool:
    """True when the meet of all members is the diagonal."""
    _require_filter_base(i)
    return pt.meet_all(i.members).is_discrete()


@dataclass(frozen=True)
class DiscretenessReport:
    separated: dict[str, bool]

    @property
    def all_discrete(self) -> bool:
        return all(self.separated.values())


def discreteness_certificate(i: FilterBase) -> DiscretenessReport:
    """Per element, whether some member isolates it in a singleton class."""
    _require_filter_base(i)
    out = {
        x: any(len(m.class_of(x)) == 1 for m in i.members)
        for x in i.carrier.elements
    }
    return DiscretenessReport(out)


def _vertex_separator_codomain() -> FiniteStructure:
    """Two vertices a, b with loops e, f and opposite edges g, gbar."""
    src = {"a": "a", "b": "b", "e": "a", "f": "b", "g": "a", "gbar": "b"}
    tgt = {"a": "a", "b": "b", "e": "a", "f": "b", "g": "b", "gbar": "a"}
    return FiniteStructure(ca.DIGRAPH, tuple(src), {"a", "b"}, src, tgt)


def _edge_separator_codomain() -> FiniteStructure:
    src = {"a": "a", "e": "a"}
    return FiniteStructure(ca.DIGRAPH, ("a", "e"), {"a"}, dict(src), dict(src))


def separating_map(structure: FiniteStructure, y: str) -> StructureMap:
    """The finite-codomain map whose kernel isolates y.

    A vertex goes to one of two vertices; edges follow their endpoints.
    An edge goes to the unique loop edge, everything else to the vertex.
    """
    if structure.kind != ca.DIGRAPH:
        raise KindMismatch("separating congruences are built on directed graphs")
    if y not in set(structure.elements):
        raise UnknownElement(y)
    if y in structure.vertices:
        delta = _vertex_separator_codomain()
        table = {}
        for x in structure.elements:
            if x in structure.vertices:
                table[x] = "a" if x == y else "b"
            else:
                at_src = structure.src[x] == y
                at_tgt = structure.tgt[x] == y
                table[x] = {
                    (True, True): "e",
                    (True, False): "g",
                    (False, True): "gbar",
                    (False, False): "f",
                }[(at_src, at_tgt)]
        return StructureMap(structure, delta, table)
    delta = _edge_separator_codomain()
    table = {x: "e" if x == y else "a" for x in structure.elements}
    return StructureMap(structure, delta, table)


def separating_congruence(structure: FiniteStructure, y: str) -> Partition:
    """Compatible finite-index relation whose class at y is the singleton.

    Index is at most 6 when y is a vertex and exactly 2 when y is an edge
    of a carrier with more than one element.
    """
    return pt.kernel(separating_map(structure, y))


def compatible_interior(structure: FiniteStructure, r: Partition) -> Partition:
    """Largest compatible equivalence inside an arbitrary equivalence.

    Two elements stay related exactly when they, their sources, and their
    targets are related in the input. One pass suffices because sources
    and targets of vertices are fixed.
    """
    if r.carrier != structure:
        raise CarrierMismatch("partition does not live on the given structure")
    groups: dict[tuple[str, str, str], list[str]] = {}
    for x in structure.elements:
        key = (r.rep(x), r.rep(structure.src[x]), r.rep(structure.tgt[x]))
        groups.setdefault(key, []).append(x)
    return Partition.from_classes(structure, groups.values())
