"""Validated finite carriers: directed graphs, Serre graphs, and groupoids.

A single representation covers all three kinds. Every element has a source
and a target; vertices are exactly the common fixed points of both maps.
Serre graphs add a total involution without fixed edges, groupoids add an
involution and a partial product table defined exactly on target-source
matching pairs. Structures are immutable once built and all operations
here are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import CarrierMismatch, DanglingReference, KindMismatch, UnknownVertex

DIGRAPH = "digraph"
GRAPH = "graph"
GROUPOID = "groupoid"
KINDS = (DIGRAPH, GRAPH, GROUPOID)

LAW_SRC_TGT = "src_tgt"
LAW_INVOLUTION = "involution"
LAW_PRODUCT = "product"


@dataclass(frozen=True)
class Violation:
    """One failed axiom with the ids that witness the failure."""

    code: str
    witness: tuple

    def __str__(self):
        return f"{self.code}{self.witness}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}


@dataclass(frozen=True)
class FiniteStructure:
    """A finite carrier of kind digraph, graph, or groupoid.

    Fields hold the raw tables; use :func:`validate` to certify the axioms
    of the declared kind. The identity at a groupoid vertex is the vertex
    itself, so no separate identity table exists.
    """

    kind: str
    elements: tuple[str, ...]
    vertices: frozenset[str]
    src: Mapping[str, str]
    tgt: Mapping[str, str]
    inv: Mapping[str, str] | None = None
    mul: Mapping[tuple[str, str], str] | None = None

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(self.elements)))
        object.__setattr__(self, "vertices", frozenset(self.vertices))

    @property
    def edges(self) -> tuple[str, ...]:
        return tuple(x for x in self.elements if x not in self.vertices)

    def is_vertex(self, x: str) -> bool:
        return x in self.vertices

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        """All pairs (g, h) with tgt(g) = src(h), in element order."""
        by_src: dict[str, list[str]] = {}
        for h in self.elements:
            by_src.setdefault(self.src[h], []).append(h)
        for g in self.elements:
            for h in by_src.get(self.tgt[g], ()):
                yield (g, h)

    def composable_triples(self) -> Iterator[tuple[str, str, str]]:
        by_src: dict[str, list[str]] = {}
        for h in self.elements:
            by_src.setdefault(self.src[h], []).append(h)
        for g in self.elements:
            for h in by_src.get(self.tgt[g], ()):
                for k in by_src.get(self.tgt[h], ()):
                    yield (g, h, k)


@dataclass(frozen=True)
class StructureMap:
    """A total function between carriers with declared preservation laws."""

    domain: FiniteStructure
    codomain: FiniteStructure
    table: Mapping[str, str]
    laws: frozenset[str] = frozenset({LAW_SRC_TGT})

    def __call__(self, x: str) -> str:
        return self.table[x]

    def then(self, other: "StructureMap") -> "StructureMap":
        """Composite map applying self first, then other."""
        if other.domain is not self.codomain and other.domain != self.codomain:
            raise CarrierMismatch("map composition domains do not line up")
        table = {x: other.table[y] for x, y in self.table.items()}
        return StructureMap(self.domain, other.codomain, table, self.laws & other.laws)


def _require_tables(structure: FiniteStructure) -> None:
    """Raise on malformed tables: unknown ids or kind/table disagreement."""
    s = structure
    if s.kind not in KINDS:
        raise KindMismatch(f"unknown kind {s.kind!r}")
    elems = set(s.elements)
    if len(s.elements) != len(elems):
        raise DanglingReference("duplicate element ids")
    if not s.vertices <= elems:
        raise DanglingReference(f"vertices not among elements: {sorted(s.vertices - elems)}")
    for name, table in (("src", s.src), ("tgt", s.tgt)):
        if set(table.keys()) != elems:
            raise DanglingReference(f"{name} table domain differs from elements")
        bad = [x for x in s.elements if table[x] not in elems]
        if bad:
            raise DanglingReference(f"{name} table maps {bad[0]} to unknown id {table[bad[0]]}")
    if s.kind == DIGRAPH:
        if s.inv is not None or s.mul is not None:
            raise KindMismatch("digraph carries no involution or product table")
    if s.kind == GRAPH:
        if s.inv is None:
            raise KindMismatch("graph requires an involution table")
        if s.mul is not None:
            raise KindMismatch("graph carries no product table")
    if s.kind == GROUPOID:
        if s.inv is None or s.mul is None:
            raise KindMismatch("groupoid requires involution and product tables")
    if s.inv is not None:
        if set(s.inv.keys()) != elems:
            raise DanglingReference("involution table domain differs from elements")
        bad = [x for x in s.elements if s.inv[x] not in elems]
        if bad:
            raise DanglingReference(f"involution maps {bad[0]} to unknown id")
    if s.mul is not None:
        for (g, h), p in s.mul.items():
            if g not in elems or h not in elems or p not in elems:
                raise DanglingReference(f"product entry ({g},{h})->{p} mentions unknown id")


def validate(structure: FiniteStructure) -> ValidationReport:
    """Check every axiom of the declared kind, reporting each violation.

    Structural problems (unknown ids, tables that the kind forbids or
    requires) raise; axiom failures are collected with witnesses.
    """
    _require_tables(structure)
    s = structure
    out: list[Violation] = []

    for v in sorted(s.vertices):
        if s.src[v] != v or s.tgt[v] != v:
            out.append(Violation("VertexSourceTarget", (v,)))
    for x in s.elements:
        if s.src[x] not in s.vertices:
            out.append(Violation("SourceNotVertex", (x, s.src[x])))
        if s.tgt[x] not in s.vertices:
            out.append(Violation("TargetNotVertex", (x, s.tgt[x])))

    if s.kind == GRAPH:
        for x in s.elements:
            xi = s.inv[x]
            if s.inv[xi] != x:
                out.append(Violation("InvolutionNotInvolutive", (x,)))
            if s.src[xi] != s.tgt[x] or s.tgt[xi] != s.src[x]:
                out.append(Violation("InvolutionSourceTarget", (x,)))
            if xi == x and x not in s.vertices:
                out.append(Violation("FixedEdge", (x,)))
            if xi != x and x in s.vertices:
                out.append(Violation("VertexNotSelfInverse", (x,)))

    if s.kind == GROUPOID:
        out.extend(_groupoid_violations(s))
    return ValidationReport(tuple(out))


def _groupoid_violations(s: FiniteStructure) -> list[Violation]:
    out: list[Violation] = []
    composable = set(s.composable_pairs())
    declared = set(s.mul.keys())
    for pair in sorted(composable - declared):
        out.append(Violation("PartialProductDomain", pair))
    for pair in sorted(declared - composable):
        out.append(Violation("ProductOutsideDomain", pair))
    usable = composable & declared

    for (g, h) in sorted(usable):
        p = s.mul[(g, h)]
        if s.src[p] != s.src[g] or s.tgt[p] != s.tgt[h]:
            out.append(Violation("ProductSourceTarget", (g, h)))
    for g in s.elements:
        sg, tg = s.src[g], s.tgt[g]
        if (sg, g) in usable and s.mul[(sg, g)] != g:
            out.append(Violation("IdentityLaw", (g,)))
        if (g, tg) in usable and s.mul[(g, tg)] != g:
            out.append(Violation("IdentityLaw", (g,)))
    for g in s.elements:
        gi = s.inv[g]
        if s.src[gi] != s.tgt[g] or s.tgt[gi] != s.src[g]:
            out.append(Violation("InverseSourceTarget", (g,)))
            continue
        if (g, gi) not in usable or (gi, g) not in usable:
            continue
        if s.mul[(g, gi)] != s.src[g] or s.mul[(gi, g)] != s.tgt[g]:
            out.append(Violation("InverseLaw", (g,)))
    # Associativity over composable triples; skipped where the table is
    # already known partial, those pairs were reported above.
    for (g, h, k) in s.composable_triples():
        if (g, h) not in usable or (h, k) not in usable:
            continue
        gh, hk = s.mul[(g, h)], s.mul[(h, k)]
        if (gh, k) not in usable or (g, hk) not in usable:
            continue
        if s.mul[(gh, k)] != s.mul[(g, hk)]:
            out.append(Violation("NotAssociative", (g, h, k)))
    return out


def pair_id(x: str, y: str) -> str:
    return f"({x},{y})"


def product(a: FiniteStructure, b: FiniteStructure) -> FiniteStructure:
    """Cartesian product carrier with coordinate-wise tables."""
    if a.kind != b.kind:
        raise KindMismatch(f"cannot form product of {a.kind} and {b.kind}")
    elements = [pair_id(x, y) for x in a.elements for y in b.elements]
    vertices = {pair_id(x, y) for x in a.vertices for y in b.vertices}
    src = {pair_id(x, y): pair_id(a.src[x], b.src[y]) for x in a.elements for y in b.elements}
    tgt = {pair_id(x, y): pair_id(a.tgt[x], b.tgt[y]) for x in a.elements for y in b.elements}
    inv = None
    mul = None
    if a.kind in (GRAPH, GROUPOID):
        inv = {pair_id(x, y): pair_id(a.inv[x], b.inv[y]) for x in a.elements for y in b.elements}
    if a.kind == GROUPOID:
        mul = {}
        for (g1, h1) in a.mul:
            for (g2, h2) in b.mul:
                mul[(pair_id(g1, g2), pair_id(h1, h2))] = pair_id(a.mul[(g1, h1)], b.mul[(g2, h2)])
    return FiniteStructure(a.kind, tuple(elements), vertices, src, tgt, inv, mul)


def product_projections(a: FiniteStructure, b: FiniteStructure) -> tuple[StructureMap, StructureMap]:
    """Coordinate projections of the product, carrying all laws of the kind."""
    prod = product(a, b)
    first = {pair_id(x, y): x for x in a.elements for y in b.elements}
    second = {pair_id(x, y): y for x in a.elements for y in b.elements}
    laws = laws_for_kind(a.kind)
    return (
        StructureMap(prod, a, first, laws),
        StructureMap(prod, b, second, laws),
    )


def laws_for_kind(kind: str) -> frozenset[str]:
    if kind == DIGRAPH:
        return frozenset({LAW_SRC_TGT})
    if kind == GRAPH:
        return frozenset({LAW_SRC_TGT, LAW_INVOLUTION})
    return frozenset({LAW_SRC_TGT, LAW_INVOLUTION, LAW_PRODUCT})


def generated_substructure(structure: FiniteStructure, seed: Iterable[str]) -> FiniteStructure:
    """Smallest substructure containing the seed, with induced tables.

    Closure adds sources and targets for every kind, involution images for
    graphs and groupoids, and products of composable pairs for groupoids.
    """
    s = structure
    elems = set(s.elements)
    want = set(seed)
    missing = want - elems
    if missing:
        raise DanglingReference(f"seed mentions unknown id {sorted(missing)[0]}")
    closed: set[str] = set()
    frontier = sorted(want)
    while frontier:
        x = frontier.pop()
        if x in closed:
            continue
        closed.add(x)
        for y in (s.src[x], s.tgt[x]):
            if y not in closed:
                frontier.append(y)
        if s.inv is not None and s.inv[x] not in closed:
            frontier.append(s.inv[x])
        if s.kind == GROUPOID:
            for g in list(closed):
                if s.tgt[g] == s.src[x]:
                    p = s.mul[(g, x)]
                    if p not in closed:
                        frontier.append(p)
                if s.tgt[x] == s.src[g]:
                    p = s.mul[(x, g)]
                    if p not in closed:
                        frontier.append(p)
    sub = tuple(sorted(closed))
    inv = {x: s.inv[x] for x in sub} if s.inv is not None else None
    mul = None
    if s.mul is not None:
        mul = {
            (g, h): p
            for (g, h), p in s.mul.items()
            if g in closed and h in closed
        }
    return FiniteStructure(
        s.kind,
        sub,
        s.vertices & closed,
        {x: s.src[x] for x in sub},
        {x: s.tgt[x] for x in sub},
        inv,
        mul,
    )


def hom_set(g: FiniteStructure, x: str, y: str) -> frozenset[str]:
    """All arrows from x to y; with the restricted product, hom(x, x) is a group."""
    if g.kind != GROUPOID:
        raise KindMismatch("hom_set is defined for groupoids")
    if x not in g.vertices:
        raise UnknownVertex(x)
    if y not in g.vertices:
        raise UnknownVertex(y)
    return frozenset(a for a in g.elements if g.src[a] == x and g.tgt[a] == y)


def underlying_digraph(structure: FiniteStructure) -> FiniteStructure:
    """Forget involution and product tables, keeping sources and targets."""
    if structure.kind == DIGRAPH:
        return structure
    return FiniteStructure(
        DIGRAPH,
        structure.elements,
        structure.vertices,
        dict(structure.src),
        dict(structure.tgt),
    )


def check_map(f: StructureMap) -> ValidationReport:
    """Verify each declared law of the map pointwise over its whole domain."""
    dom, cod = f.domain, f.codomain
    delems = set(dom.elements)
    celems = set(cod.elements)
    if set(f.table.keys()) != delems:
        raise DanglingReference("map table domain differs from carrier elements")
    bad = [x for x in dom.elements if f.table[x] not in celems]
    if bad:
        raise DanglingReference(f"map sends {bad[0]} outside the codomain")
    out: list[Violation] = []
    if LAW_SRC_TGT in f.laws:
        for x in dom.elements:
            if f.table[dom.src[x]] != cod.src[f.table[x]]:
                out.append(Violation("SourceNotPreserved", (x,)))
            if f.table[dom.tgt[x]] != cod.tgt[f.table[x]]:
                out.append(Violation("TargetNotPreserved", (x,)))
    if LAW_INVOLUTION in f.laws:
        if dom.inv is None or cod.inv is None:
            raise KindMismatch("involution law needs involutions on both carriers")
        for x in dom.elements:
            if f.table[dom.inv[x]] != cod.inv[f.table[x]]:
                out.append(Violation("InvolutionNotPreserved", (x,)))
    if LAW_PRODUCT in f.laws:
        if dom.mul is None or cod.mul is None:
            raise KindMismatch("product law needs product tables on both carriers")
        for (g, h) in dom.composable_pairs():
            fg, fh = f.table[g], f.table[h]
            if cod.tgt[fg] != cod.src[fh]:
                out.append(Violation("ImageNotComposable", (g, h)))
            elif f.table[dom.mul[(g, h)]] != cod.mul[(fg, fh)]:
                out.append(Violation("ProductNotPreserved", (g, h)))
    return ValidationReport(tuple(out))


def identity_map(structure: FiniteStructure) -> StructureMap:
    return StructureMap(
        structure,
        structure,
        {x: x for x in structure.elements},
        laws_for_kind(structure.kind),
    )


def map_is_rigid(f: StructureMap) -> bool:
    """True when every edge of the domain maps to an edge of the codomain."""
    return all(
        f.table[x] not in f.codomain.vertices
        for x in f.domain.elements
        if x not in f.domain.vertices
    )


def map_is_isomorphism(f: StructureMap) -> bool:
    """Bijective on elements and law-preserving for every law of the kind."""
    values = set(f.table.values())
    if len(values) != len(f.domain.elements) or values != set(f.codomain.elements):
        return False
    full = StructureMap(f.domain, f.codomain, f.table, laws_for_kind(f.domain.kind))
    try:
        return check_map(full).ok
    except KindMismatch:
        return check_map(StructureMap(f.domain, f.codomain, f.table, f.laws)).ok
