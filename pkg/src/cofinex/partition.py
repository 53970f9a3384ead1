"""Equivalence relations on carriers: laws, closure, kernels, quotients.

Three laws grade how much structure a relation must respect: compatible
relations close under coordinate-wise source and target, graph equivalence
relations additionally close under the involution and keep self-inverse
classes near vertices, and congruences additionally close under the
partial product. Closure is worklist saturation over a merge-find
structure; it terminates because the number of classes only decreases.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple

from . import carrier as ca
from .carrier import FiniteStructure, StructureMap, ValidationReport, Violation
from .errors import (
    CarrierMismatch,
    DanglingReference,
    LawCheckFailed,
    LawKindMismatch,
    NotARefinement,
    QuotientProductUndefined,
)


class LawTag(str, Enum):
    COMPATIBLE = "compatible"
    GRAPH_EQUIVALENCE = "graph_equivalence"
    CONGRUENCE = "congruence"

    def __str__(self):
        return self.value


_LAW_KINDS = {
    LawTag.COMPATIBLE: (ca.DIGRAPH, ca.GRAPH, ca.GROUPOID),
    LawTag.GRAPH_EQUIVALENCE: (ca.GRAPH,),
    LawTag.CONGRUENCE: (ca.GROUPOID,),
}


def require_law_kind(law: LawTag, kind: str) -> None:
    if kind not in _LAW_KINDS[LawTag(law)]:
        raise LawKindMismatch(f"law {LawTag(law).value} does not apply to kind {kind}")


def quotient_kind(law: LawTag) -> str:
    """Kind of a quotient taken under the given law."""
    return {
        LawTag.COMPATIBLE: ca.DIGRAPH,
        LawTag.GRAPH_EQUIVALENCE: ca.GRAPH,
        LawTag.CONGRUENCE: ca.GROUPOID,
    }[LawTag(law)]


@dataclass(frozen=True)
class Partition:
    """Disjoint classes covering a carrier, in canonical order.

    Classes are sorted tuples sorted by their first member, so the first
    member of a class is its representative (smallest id in lexicographic
    order).
    """

    carrier: FiniteStructure
    classes: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        pos: dict[str, int] = {}
        for i, cls in enumerate(self.classes):
            for x in cls:
                pos[x] = i
        object.__setattr__(self, "_pos", pos)

    @staticmethod
    def from_classes(
        structure: FiniteStructure,
        classes: Iterable[Iterable[str]],
        fill_singletons: bool = True,
    ) -> "Partition":
        elems = set(structure.elements)
        seen: set[str] = set()
        canon: list[tuple[str, ...]] = []
        for cls in classes:
            cls = tuple(sorted(set(cls)))
            if not cls:
                continue
            for x in cls:
                if x not in elems:
                    raise DanglingReference(f"class mentions unknown id {x}")
                if x in seen:
                    raise DanglingReference(f"id {x} appears in two classes")
            seen.update(cls)
            canon.append(cls)
        rest = elems - seen
        if rest:
            if not fill_singletons:
                raise DanglingReference(f"classes do not cover {sorted(rest)[0]}")
            canon.extend((x,) for x in rest)
        canon.sort(key=lambda c: c[0])
        return Partition(structure, tuple(canon))

    @staticmethod
    def discrete(structure: FiniteStructure) -> "Partition":
        return Partition(structure, tuple((x,) for x in structure.elements))

    @staticmethod
    def full(structure: FiniteStructure) -> "Partition":
        return Partition(structure, (tuple(structure.elements),))

    @property
    def index(self) -> int:
        return len(self.classes)

    def class_of(self, x: str) -> tuple[str, ...]:
        return self.classes[self._pos[x]]

    def rep(self, x: str) -> str:
        return self.classes[self._pos[x]][0]

    def related(self, x: str, y: str) -> bool:
        return self._pos[x] == self._pos[y]

    def refines(self, other: "Partition") -> bool:
        """True when every class of self lies inside a class of other."""
        return all(
            all(other._pos[x] == other._pos[cls[0]] for x in cls)
            for cls in self.classes
        )

    def is_discrete(self) -> bool:
        return all(len(cls) == 1 for cls in self.classes)


class _DisjointSet:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.size = {x: 1 for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        return True

    def partition(self, structure: FiniteStructure) -> Partition:
        groups: dict[str, list[str]] = {}
        for x in structure.elements:
            groups.setdefault(self.find(x), []).append(x)
        return Partition.from_classes(structure, groups.values())


@dataclass(frozen=True)
class CheckReport:
    law: LawTag
    failures: tuple[Violation, ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def codes(self) -> set[str]:
        return {v.code for v in self.failures}


def check(law: LawTag, r: Partition) -> CheckReport:
    """Test whether the partition satisfies every condition of the law."""
    law = LawTag(law)
    s = r.carrier
    require_law_kind(law, s.kind)
    out: list[Violation] = []

    for cls in r.classes:
        lead = cls[0]
        for x in cls[1:]:
            if not r.related(s.src[x], s.src[lead]):
                out.append(Violation("SourcesUnrelated", (lead, x, s.src[lead], s.src[x])))
            if not r.related(s.tgt[x], s.tgt[lead]):
                out.append(Violation("TargetsUnrelated", (lead, x, s.tgt[lead], s.tgt[x])))

    if law in (LawTag.GRAPH_EQUIVALENCE, LawTag.CONGRUENCE):
        for cls in r.classes:
            lead = cls[0]
            for x in cls[1:]:
                if not r.related(s.inv[lead], s.inv[x]):
                    out.append(Violation("InversesUnrelated", (lead, x)))

    if law == LawTag.GRAPH_EQUIVALENCE:
        for x in s.elements:
            if r.related(x, s.inv[x]) and not any(v in s.vertices for v in r.class_of(x)):
                out.append(Violation("SelfInverseNotNearVertex", (x,)))

    if law == LawTag.CONGRUENCE:
        # Same-signature composable pairs must have related products.
        sig: dict[tuple[str, str], tuple[str, str]] = {}
        for (g, h) in s.composable_pairs():
            key = (r.rep(g), r.rep(h))
            p = s.mul[(g, h)]
            if key in sig:
                g0, h0 = sig[key]
                if not r.related(s.mul[(g0, h0)], p):
                    out.append(Violation("ProductsUnrelated", (g0, h0, g, h)))
            else:
                sig[key] = (g, h)
    return CheckReport(law, tuple(out))


@dataclass(frozen=True)
class ClosureResult:
    law: LawTag
    partition: Partition
    valid: bool
    invalid_witnesses: tuple[str, ...] = ()


def close(law: LawTag, structure: FiniteStructure, seed: Iterable[tuple[str, str]]) -> ClosureResult:
    """Smallest equivalence containing the seed and closed under the law.

    Merging two elements enqueues their source and target pair, the
    inverse pair for graph and congruence laws, and, for congruences,
    products are re-canonicalized until no composable pair with merged
    operands has unmerged products.

    The graph law's side condition (a self-inverse class must meet the
    vertex set) is checked, never forced; a failing result comes back
    with valid set to False and the offending elements listed.
    """
    law = LawTag(law)
    s = structure
    require_law_kind(law, s.kind)
    elems = set(s.elements)
    queue: deque[tuple[str, str]] = deque()
    for (x, y) in seed:
        if x not in elems or y not in elems:
            raise DanglingReference(f"seed pair ({x},{y}) mentions unknown id")
        queue.append((x, y))
    uf = _DisjointSet(s.elements)

    def drain():
        while queue:
            x, y = queue.popleft()
            if not uf.union(x, y):
                continue
            queue.append((s.src[x], s.src[y]))
            queue.append((s.tgt[x], s.tgt[y]))
            if law in (LawTag.GRAPH_EQUIVALENCE, LawTag.CONGRUENCE):
                queue.append((s.inv[x], s.inv[y]))

    drain()
    if law == LawTag.CONGRUENCE:
        pairs = list(s.composable_pairs())
        while True:
            sig: dict[tuple[str, str], str] = {}
            dirty = False
            for (g, h) in pairs:
                key = (uf.find(g), uf.find(h))
                p = s.mul[(g, h)]
                q = sig.get(key)
                if q is None:
                    sig[key] = p
                elif uf.find(p) != uf.find(q):
                    queue.append((p, q))
                    dirty = True
            if not dirty:
                break
            drain()

    part = uf.partition(s)
    valid = True
    witnesses: tuple[str, ...] = ()
    if law == LawTag.GRAPH_EQUIVALENCE:
        bad = [
            x
            for x in s.elements
            if part.related(x, s.inv[x]) and not any(v in s.vertices for v in part.class_of(x))
        ]
        if bad:
            valid = False
            witnesses = tuple(bad)
    return ClosureResult(law, part, valid, witnesses)


def intersect(r1: Partition, r2: Partition) -> Partition:
    """Common refinement; related exactly when related in both."""
    if r1.carrier != r2.carrier:
        raise CarrierMismatch("partitions live on different carriers")
    groups: dict[tuple[str, str], list[str]] = {}
    for x in r1.carrier.elements:
        groups.setdefault((r1.rep(x), r2.rep(x)), []).append(x)
    return Partition.from_classes(r1.carrier, groups.values())


def meet_all(parts: Iterable[Partition]) -> Partition:
    parts = list(parts)
    out = parts[0]
    for p in parts[1:]:
        out = intersect(out, p)
    return out


def kernel(f: StructureMap) -> Partition:
    """Partition of the domain by equal images under the map."""
    groups: dict[str, list[str]] = {}
    for x in f.domain.elements:
        groups.setdefault(f.table[x], []).append(x)
    return Partition.from_classes(f.domain, groups.values())


class QuotientResult(NamedTuple):
    structure: FiniteStructure
    nu: StructureMap


def condition3_unliftable(structure: FiniteStructure, r: Partition) -> tuple[tuple[str, str, str], ...]:
    """Composable triples of the quotient directed graph with no composable lift.

    Classes are named by their representatives. An empty result is the
    finite certificate that every quotient triple lifts.
    """
    s = structure
    lifted = {(r.rep(g), r.rep(h), r.rep(k)) for (g, h, k) in s.composable_triples()}
    reps = sorted({cls[0] for cls in r.classes})
    src_q = {cls[0]: r.rep(s.src[cls[0]]) for cls in r.classes}
    tgt_q = {cls[0]: r.rep(s.tgt[cls[0]]) for cls in r.classes}
    missing = []
    for a in reps:
        for b in reps:
            if tgt_q[a] != src_q[b]:
                continue
            for c in reps:
                if tgt_q[b] != src_q[c]:
                    continue
                if (a, b, c) not in lifted:
                    missing.append((a, b, c))
    return tuple(missing)


def quotient(structure: FiniteStructure, r: Partition, law: LawTag = LawTag.COMPATIBLE) -> QuotientResult:
    """Quotient carrier and the natural map onto it.

    The law decides the kind of the result and which induced tables it
    carries. For congruences the product table is induced from lifts; the
    construction refuses (with a witness) whenever some composable triple
    of the quotient has no composable lift.
    """
    law = LawTag(law)
    if r.carrier != structure:
        raise CarrierMismatch("partition does not live on the given structure")
    report = check(law, r)
    if not report.passed:
        raise LawCheckFailed(report)
    kind = quotient_kind(law)

    cls_id = {cls: cls[0] for cls in r.classes}
    nu_table = {x: r.rep(x) for x in structure.elements}
    elements = tuple(sorted(cls_id.values()))
    vertices = {r.rep(v) for v in structure.vertices}
    src = {cls[0]: r.rep(structure.src[cls[0]]) for cls in r.classes}
    tgt = {cls[0]: r.rep(structure.tgt[cls[0]]) for cls in r.classes}
    inv = None
    mul = None
    if law in (LawTag.GRAPH_EQUIVALENCE, LawTag.CONGRUENCE):
        inv = {cls[0]: r.rep(structure.inv[cls[0]]) for cls in r.classes}
    if law == LawTag.CONGRUENCE:
        missing = condition3_unliftable(structure, r)
        if missing:
            raise QuotientProductUndefined(missing[0])
        mul = {}
        for (g, h) in structure.composable_pairs():
            mul[(r.rep(g), r.rep(h))] = r.rep(structure.mul[(g, h)])

    q = FiniteStructure(kind, elements, vertices, src, tgt, inv, mul)
    laws = {ca.LAW_SRC_TGT}
    if inv is not None:
        laws.add(ca.LAW_INVOLUTION)
    if mul is not None:
        laws.add(ca.LAW_PRODUCT)
    nu = StructureMap(structure, q, nu_table, frozenset(laws))
    return QuotientResult(q, nu)


@dataclass(frozen=True)
class IsoReport:
    kernel_partition: Partition
    quotient_structure: FiniteStructure
    nu: StructureMap
    induced: StructureMap
    injective: bool
    surjective: bool
    isomorphism: bool
    triangle_ok: bool
    unhit: tuple[str, ...]


def first_isomorphism(f: StructureMap) -> IsoReport:
    """Factor a map through its kernel quotient and grade the factors.

    Works on underlying directed graphs: the quotient is taken under the
    compatible law, the induced map sends each kernel class to the common
    image of its members. The induced map is injective by construction and
    an isomorphism exactly when the original map is surjective.
    """
    rep = ca.check_map(f)
    if not rep.ok:
        raise LawCheckFailed(rep, "map fails its declared laws")
    dom = ca.underlying_digraph(f.domain)
    fd = StructureMap(dom, f.codomain, dict(f.table), frozenset({ca.LAW_SRC_TGT}))
    k = kernel(fd)
    q, nu = quotient(dom, k, LawTag.COMPATIBLE)
    induced_table = {cls[0]: f.table[cls[0]] for cls in k.classes}
    induced = StructureMap(q, f.codomain, induced_table, frozenset({ca.LAW_SRC_TGT}))
    image = set(induced_table.values())
    injective = len(image) == len(induced_table)
    unhit = tuple(x for x in f.codomain.elements if x not in image)
    surjective = not unhit
    triangle_ok = all(induced_table[nu.table[x]] == f.table[x] for x in dom.elements)
    iso = injective and surjective and ca.check_map(induced).ok
    return IsoReport(k, q, nu, induced, injective, surjective, iso, triangle_ok, unhit)


def induced_bonding(r_coarse: Partition, r_fine: Partition, law: LawTag = LawTag.COMPATIBLE) -> StructureMap:
    """Map between quotients sending a fine class to the coarse class around it."""
    if r_coarse.carrier != r_fine.carrier:
        raise CarrierMismatch("partitions live on different carriers")
    for cls in r_fine.classes:
        lead = cls[0]
        for x in cls[1:]:
            if not r_coarse.related(lead, x):
                raise NotARefinement(cls)
    fine_q, _ = quotient(r_fine.carrier, r_fine, law)
    coarse_q, _ = quotient(r_coarse.carrier, r_coarse, law)
    table = {cls[0]: r_coarse.rep(cls[0]) for cls in r_fine.classes}
    laws = {ca.LAW_SRC_TGT}
    if LawTag(law) in (LawTag.GRAPH_EQUIVALENCE, LawTag.CONGRUENCE):
        laws.add(ca.LAW_INVOLUTION)
    if LawTag(law) == LawTag.CONGRUENCE:
        laws.add(ca.LAW_PRODUCT)
    return StructureMap(fine_q, coarse_q, table, frozenset(laws))
