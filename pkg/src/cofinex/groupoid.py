"""Groupoid congruence theory: rigid congruences and coherent families.

A congruence is rigid when no two distinct vertices are related; rigid
congruences correspond exactly to coherent families of normal vertex
subgroups, conjugation along any arrow carrying the subgroup at its
source onto the one at its target. Rigid congruences always admit
quotient groupoids; general congruences are gated on the triple-lifting
certificate checked here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from . import carrier as ca
from . import cofinite as cf
from . import completion as cp
from . import partition as pt
from .carrier import FiniteStructure
from .errors import (
    KindMismatch,
    NotACongruence,
    NotAChain,
    NotCoherent,
    NotConnected,
    NotNormal,
    NotRigid,
    UnknownVertex,
    VerticesInseparable,
)
from .partition import LawTag, Partition


@dataclass(frozen=True)
class CoherentFamily:
    """Per-vertex subsets of vertex groups meant to be a coherent family."""

    groupoid: FiniteStructure
    subgroups: Mapping[str, frozenset[str]]


@dataclass(frozen=True)
class RigidCongruence:
    """A congruence together with its vertex-subgroup certificate."""

    partition: Partition
    family: CoherentFamily

    @property
    def index(self) -> int:
        return self.partition.index


def _require_groupoid(g: FiniteStructure) -> None:
    if g.kind != ca.GROUPOID:
        raise KindMismatch("operation requires a groupoid carrier")


def _require_congruence(g: FiniteStructure, rho: Partition) -> None:
    _require_groupoid(g)
    if rho.carrier != g:
        raise NotACongruence("partition lives on a different carrier")
    if not pt.check(LawTag.CONGRUENCE, rho).passed:
        raise NotACongruence("partition fails the congruence check")


def is_rigid(g: FiniteStructure, rho: Partition) -> bool:
    """True when the restriction of the congruence to vertices is trivial."""
    _require_congruence(g, rho)
    for v in g.vertices:
        if any(u != v and u in g.vertices for u in rho.class_of(v)):
            return False
    return True


def conjugate(g: FiniteStructure, subset: Iterable[str], arrow: str) -> frozenset[str]:
    """Image of a source vertex-group subset under conjugation along an arrow."""
    gi = g.inv[arrow]
    return frozenset(g.mul[(g.mul[(gi, n)], arrow)] for n in subset)


def is_subgroup(g: FiniteStructure, x: str, subset: frozenset[str]) -> bool:
    group = ca.hom_set(g, x, x)
    if x not in subset or not subset <= group:
        return False
    for a in subset:
        if g.inv[a] not in subset:
            return False
        for b in subset:
            if g.mul[(a, b)] not in subset:
                return False
    return True


def is_normal_subgroup(g: FiniteStructure, x: str, subset: frozenset[str]) -> bool:
    if not is_subgroup(g, x, subset):
        return False
    return all(conjugate(g, subset, h) == subset for h in ca.hom_set(g, x, x))


def verify_family(fam: CoherentFamily) -> None:
    """Raise unless each subgroup is normal and conjugation is coherent."""
    g = fam.groupoid
    _require_groupoid(g)
    if set(fam.subgroups.keys()) != set(g.vertices):
        raise NotNormal(None, "family must assign a subgroup to every vertex")
    for x in sorted(g.vertices):
        if not is_normal_subgroup(g, x, frozenset(fam.subgroups[x])):
            raise NotNormal(x)
    for a in g.elements:
        if a in g.vertices:
            continue
        if conjugate(g, fam.subgroups[g.src[a]], a) != frozenset(fam.subgroups[g.tgt[a]]):
            raise NotCoherent(a)


def rigid_from_coherent(fam: CoherentFamily) -> RigidCongruence:
    """The unique rigid congruence whose class at each vertex is its subgroup.

    Two arrows are related exactly when they share endpoints and differ by
    a member of the subgroup at their source.
    """
    verify_family(fam)
    g = fam.groupoid
    classes = []
    seen: set[str] = set()
    for h in g.elements:
        if h in seen:
            continue
        n_src = fam.subgroups[g.src[h]]
        cls = sorted(g.mul[(n, h)] for n in n_src)
        seen.update(cls)
        classes.append(cls)
    part = Partition.from_classes(g, classes, fill_singletons=False)
    return RigidCongruence(part, fam)


def coherent_from_rigid(g: FiniteStructure, rho: Partition | RigidCongruence) -> CoherentFamily:
    """Read the vertex-subgroup family off a rigid congruence."""
    part = rho.partition if isinstance(rho, RigidCongruence) else rho
    if not is_rigid(g, part):
        raise NotRigid("congruence relates two distinct vertices")
    subgroups = {
        x: frozenset(part.class_of(x)) & ca.hom_set(g, x, x) for x in g.vertices
    }
    return CoherentFamily(g, subgroups)


def as_rigid(g: FiniteStructure, rho: Partition) -> RigidCongruence:
    """Certify a partition as a rigid congruence."""
    fam = coherent_from_rigid(g, rho)
    return RigidCongruence(rho, fam)


def rho_from_subgroup(g: FiniteStructure, x: str, n: Iterable[str]) -> RigidCongruence:
    """Spread a normal subgroup at one vertex over a connected groupoid.

    The subgroup at any other vertex is the conjugate along any arrow from
    x; normality makes the choice immaterial, and the check verifies that
    on the actual tables. The resulting index is the vertex count squared
    times the subgroup's index in the vertex group.
    """
    _require_groupoid(g)
    if x not in g.vertices:
        raise UnknownVertex(x)
    n = frozenset(n)
    for y in sorted(g.vertices):
        if not ca.hom_set(g, x, y):
            raise NotConnected(f"no arrows from {x} to {y}")
    if not is_normal_subgroup(g, x, n):
        raise NotNormal(x)
    subgroups: dict[str, frozenset[str]] = {}
    for y in sorted(g.vertices):
        images = {conjugate(g, n, a) for a in ca.hom_set(g, x, y)}
        if len(images) != 1:
            raise NotNormal(x, "conjugates along parallel arrows disagree")
        subgroups[y] = next(iter(images))
    return rigid_from_coherent(CoherentFamily(g, subgroups))


def condition3_check(g: FiniteStructure, rho: Partition) -> bool:
    """Whether every composable triple of the quotient lifts to the groupoid."""
    _require_congruence(g, rho)
    return not pt.condition3_unliftable(g, rho)


def condition3_witness(g: FiniteStructure, rho: Partition) -> tuple[str, str, str] | None:
    _require_congruence(g, rho)
    missing = pt.condition3_unliftable(g, rho)
    return missing[0] if missing else None


def rigid_base(g: FiniteStructure, i: cf.FilterBase) -> cf.FilterBase:
    """Replace a congruence filter base by a member-wise rigid refinement.

    Each vertex must be split off from the other vertices by some member;
    the meet of one such member per vertex is rigid, and intersecting it
    into every member keeps the filter base property while making every
    member rigid.
    """
    _require_groupoid(g)
    if i.law != LawTag.CONGRUENCE:
        raise NotACongruence("filter base must carry the congruence law")
    rep = cf.is_filter_base(i)
    if not rep.passed:
        raise NotACongruence("members do not form a filter base")
    separators = []
    for x in sorted(g.vertices):
        member = next(
            (m for m in i.members if all(u == x or u not in g.vertices for u in m.class_of(x))),
            None,
        )
        if member is None:
            other = next(
                u
                for u in sorted(g.vertices)
                if u != x and all(m.related(x, u) for m in i.members)
            )
            raise VerticesInseparable(x, other)
        separators.append(member)
    sigma = pt.meet_all(separators)
    members = tuple(pt.intersect(m, sigma) for m in i.members)
    return cf.FilterBase(g, members, LawTag.CONGRUENCE)


def profinite_groupoid_system(g: FiniteStructure, chain: Iterable[RigidCongruence]) -> cp.InverseSystem:
    """Quotient-groupoid tower along a refinement chain of rigid congruences."""
    _require_groupoid(g)
    parts = [rc.partition if isinstance(rc, RigidCongruence) else rc for rc in chain]
    parts.sort(key=lambda p: p.index)
    for a, b in zip(parts, parts[1:]):
        if not b.refines(a):
            raise NotAChain("congruences are not totally ordered by refinement")
    fb = cf.FilterBase(g, tuple(parts), LawTag.CONGRUENCE)
    return cp.system_from_filterbase(fb)


def openness_shadow(g: FiniteStructure, i: cf.FilterBase) -> bool:
    """Finite openness certificate for the hom sets.

    For every ordered vertex pair some member must have all its classes
    either inside or disjoint from that hom set. Rigid members always
    qualify because their classes never cross hom sets.
    """
    _require_groupoid(g)
    homs = {
        (x, y): ca.hom_set(g, x, y)
        for x in sorted(g.vertices)
        for y in sorted(g.vertices)
    }
    for hom in homs.values():
        ok = any(
            all(not (set(cls) & hom) or set(cls) <= hom for cls in m.classes)
            for m in i.members
        )
        if not ok:
            return False
    return True


def vertex_group_trace(g: FiniteStructure, rho: Partition, x: str) -> frozenset[str]:
    """Class of a vertex intersected with its vertex group."""
    if x not in g.vertices:
        raise UnknownVertex(x)
    return frozenset(rho.class_of(x)) & ca.hom_set(g, x, x)
