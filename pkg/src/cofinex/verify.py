"""Theorem-verification suites over fixtures and seeded random instances.

Every property is an executable statement about the library, checked at
desk scale against independent oracles: exhaustive set-partition search
for closures, exhaustive congruence enumeration for the quotient gate,
and direct recomputation for the counting identities. Reports are
deterministic for a fixed seed and list a witness for every failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from . import carrier as ca
from . import cofinite as cf
from . import completion as cp
from . import fixtures as fx
from . import groupoid as gp
from . import partition as pt
from .carrier import FiniteStructure
from .errors import CofinexError, QuotientProductUndefined
from .partition import LawTag, Partition

SUITES = ("core", "cofinite", "completion", "groupoid", "all")


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    witness: str = ""


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    max_size: int
    seed: int
    results: tuple[PropertyResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            mark = "PASS" if r.passed else "FAIL"
            tail = f"  witness: {r.witness}" if (r.witness and not r.passed) else ""
            out.append(f"{mark} {r.name}{tail}")
        out.append(f"{'OK' if self.ok else 'FAILED'} ({sum(r.passed for r in self.results)}/{len(self.results)} properties)")
        return out


# ---------------------------------------------------------------- oracles


def set_partitions(items: tuple[str, ...]) -> Iterator[tuple[tuple[str, ...], ...]]:
    """Every partition of the items into unordered nonempty blocks."""
    items = tuple(items)
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for sub in set_partitions(rest):
        yield ((first,),) + sub
        for k in range(len(sub)):
            grown = tuple(sorted(sub[k] + (first,)))
            yield sub[:k] + (grown,) + sub[k + 1 :]


def all_law_partitions(structure: FiniteStructure, law: LawTag) -> list[Partition]:
    """Every partition of the carrier passing the law check."""
    out = []
    for blocks in set_partitions(structure.elements):
        part = Partition.from_classes(structure, blocks, fill_singletons=False)
        if pt.check(law, part).passed:
            out.append(part)
    return out


def minimal_containing(candidates: list[Partition], seed: list[tuple[str, str]]) -> Partition | None:
    """The unique candidate containing the seed that refines all others."""
    holding = [p for p in candidates if all(p.related(x, y) for x, y in seed)]
    for p in holding:
        if all(p.refines(q) for q in holding):
            return p
    return None


def ungated_groupoid_quotient(g: FiniteStructure, rho: Partition) -> FiniteStructure:
    """Quotient groupoid table built from lifts only, without the triple gate.

    Composable quotient pairs with no composable lift are simply left out
    of the product table, so validation reports them as domain gaps.
    """
    elements = tuple(sorted(cls[0] for cls in rho.classes))
    vertices = {rho.rep(v) for v in g.vertices}
    src = {cls[0]: rho.rep(g.src[cls[0]]) for cls in rho.classes}
    tgt = {cls[0]: rho.rep(g.tgt[cls[0]]) for cls in rho.classes}
    inv = {cls[0]: rho.rep(g.inv[cls[0]]) for cls in rho.classes}
    mul = {}
    for (a, b) in g.composable_pairs():
        mul[(rho.rep(a), rho.rep(b))] = rho.rep(g.mul[(a, b)])
    return FiniteStructure(ca.GROUPOID, elements, vertices, src, tgt, inv, mul)


def random_pair_seed(rng: random.Random, structure: FiniteStructure, max_pairs: int = 3) -> list[tuple[str, str]]:
    k = rng.randint(0, max_pairs)
    return [
        (rng.choice(structure.elements), rng.choice(structure.elements))
        for _ in range(k)
    ]


def random_compatible(rng: random.Random, structure: FiniteStructure) -> Partition:
    return pt.close(LawTag.COMPATIBLE, structure, random_pair_seed(rng, structure)).partition


# ---------------------------------------------------------------- fixture pools


def digraph_pool(max_size: int) -> list[FiniteStructure]:
    pool = [fx.path(1), fx.path(2), fx.path(3), fx.delta_graph(), fx.discrete_space(3)]
    return [s for s in pool if len(s.elements) <= max_size]


def graph_pool(max_size: int) -> list[FiniteStructure]:
    pool = [fx.double_edges(fx.path(1)), fx.double_edges(fx.path(2))]
    return [s for s in pool if len(s.elements) <= max_size]


def groupoid_pool(max_size: int) -> list[FiniteStructure]:
    pool = [
        fx.cyclic_groupoid(2),
        fx.cyclic_groupoid(3),
        fx.cyclic_groupoid(4),
        fx.cyclic_groupoid(6),
        fx.cyclic_groupoid(8),
        fx.pair_groupoid(2),
        fx.pair_groupoid(3),
        fx.connected_groupoid(2, "z2"),
        fx.connected_groupoid(2, "z4"),
        fx.single_arrow_groupoid(),
    ]
    return [s for s in pool if len(s.elements) <= max_size]


def mixed_pool(max_size: int) -> list[FiniteStructure]:
    return digraph_pool(max_size) + graph_pool(max_size) + groupoid_pool(max_size)


def _law_for(structure: FiniteStructure) -> LawTag:
    if structure.kind == ca.GROUPOID:
        return LawTag.CONGRUENCE
    if structure.kind == ca.GRAPH:
        return LawTag.GRAPH_EQUIVALENCE
    return LawTag.COMPATIBLE


# ---------------------------------------------------------------- core suite


def _prop_validate_fixtures(max_size, rng):
    for s in mixed_pool(64):
        rep = ca.validate(s)
        if not rep.ok:
            return False, f"{s.kind} fixture fails {rep.violations[0]}"
    return True, ""


def _prop_validate_witnesses(max_size, rng):
    # Broken structures must be rejected and every reported witness must
    # re-check as a genuine violation of the named axiom.
    p1 = fx.path(1)
    fixed = FiniteStructure(
        ca.GRAPH,
        p1.elements,
        p1.vertices,
        dict(p1.src),
        dict(p1.tgt),
        {x: x for x in p1.elements},
    )
    rep = ca.validate(fixed)
    if "FixedEdge" not in rep.codes():
        return False, "fixed-edge involution accepted"
    for v in rep.violations:
        if v.code == "FixedEdge":
            (x,) = v.witness
            if fixed.inv[x] != x or x in fixed.vertices:
                return False, f"FixedEdge witness {x} does not re-check"

    partial = FiniteStructure(
        ca.GROUPOID,
        ("v", "g"),
        {"v"},
        {"v": "v", "g": "v"},
        {"v": "v", "g": "v"},
        {"v": "v", "g": "g"},
        {("v", "v"): "v", ("v", "g"): "g", ("g", "v"): "g"},
    )
    rep = ca.validate(partial)
    if "PartialProductDomain" not in rep.codes():
        return False, "missing product entry accepted"
    for v in rep.violations:
        if v.code == "PartialProductDomain":
            pair = v.witness
            if pair in partial.mul or partial.tgt[pair[0]] != partial.src[pair[1]]:
                return False, f"PartialProductDomain witness {pair} does not re-check"
    return True, ""


def _prop_product_projections(max_size, rng):
    pairs = [
        (fx.path(1), fx.path(1)),
        (fx.cyclic_groupoid(2), fx.cyclic_groupoid(2)),
        (fx.double_edges(fx.path(1)), fx.double_edges(fx.path(1))),
    ]
    for a, b in pairs:
        if len(a.elements) * len(b.elements) > max_size * max_size:
            continue
        pr1, pr2 = ca.product_projections(a, b)
        if not ca.validate(ca.product(a, b)).ok:
            return False, f"product of two {a.kind}s fails validation"
        if not (ca.check_map(pr1).ok and ca.check_map(pr2).ok):
            return False, f"projections fail their laws on {a.kind}"
    return True, ""


def _prop_generated_substructure(max_size, rng):
    for s in mixed_pool(max_size):
        for _ in range(5):
            seed = [rng.choice(s.elements) for _ in range(rng.randint(0, 2))]
            sub = ca.generated_substructure(s, seed)
            again = ca.generated_substructure(s, sub.elements)
            if set(again.elements) != set(sub.elements):
                return False, f"closure not idempotent on {s.kind} seed {seed}"
            larger = ca.generated_substructure(s, list(seed) + [rng.choice(s.elements)])
            if not set(sub.elements) <= set(larger.elements):
                return False, f"closure not monotone on {s.kind} seed {seed}"
            if not ca.validate(sub).ok:
                return False, f"induced substructure invalid on {s.kind}"
    return True, ""


def _prop_groupoid_inverse_law(max_size, rng):
    for g in groupoid_pool(max_size):
        for x in g.elements:
            xi = g.inv[x]
            if g.mul[(x, xi)] != g.src[x] or g.mul[(xi, x)] != g.tgt[x]:
                return False, f"inverse law fails at {x}"
    return True, ""


def _prop_closure_compatible_minimal(max_size, rng, trials: int = 40):
    cap = min(max_size, 6)
    for s in mixed_pool(cap):
        candidates = all_law_partitions(s, LawTag.COMPATIBLE)
        for _ in range(trials):
            seed = random_pair_seed(rng, s)
            got = pt.close(LawTag.COMPATIBLE, s, seed).partition
            want = minimal_containing(candidates, seed)
            if want is None or got.classes != want.classes:
                return False, f"compatible closure differs from oracle on {s.kind} seed {seed}"
    return True, ""


def check_congruence_closure(
    structure: FiniteStructure,
    seeds: Iterable[tuple[str, str]],
    close_fn: Callable = None,
) -> tuple[bool, str]:
    """Compare a closure routine against the exhaustive congruence oracle.

    Exposed with a pluggable closure so a deliberately crippled routine
    can be shown to fail, which is the suite's own self-test.
    """
    close_fn = close_fn or (lambda s, pairs: pt.close(LawTag.CONGRUENCE, s, pairs).partition)
    candidates = all_law_partitions(structure, LawTag.CONGRUENCE)
    for (x, y) in seeds:
        got = close_fn(structure, [(x, y)])
        want = minimal_containing(candidates, [(x, y)])
        if want is None or got.classes != want.classes:
            return False, f"congruence closure differs from oracle on seed ({x},{y})"
    return True, ""


def _prop_closure_congruence_minimal(max_size, rng):
    cap = min(max_size, 8)
    for g in groupoid_pool(cap):
        seeds = [(x, y) for x in g.elements for y in g.elements]
        ok, witness = check_congruence_closure(g, seeds)
        if not ok:
            return False, f"{witness} on {len(g.elements)}-element groupoid"
    return True, ""


def _prop_closure_empty_diagonal(max_size, rng):
    for s in mixed_pool(max_size):
        got = pt.close(_law_for(s), s, []).partition
        if got.classes != Partition.discrete(s).classes:
            return False, f"empty seed closure is not the diagonal on {s.kind}"
    return True, ""


def _prop_kernel_quotient_roundtrip(max_size, rng, trials: int = 25):
    for s in mixed_pool(max_size):
        for _ in range(trials):
            r = random_compatible(rng, s)
            q = pt.quotient(s, r, LawTag.COMPATIBLE)
            if pt.kernel(q.nu).classes != r.classes:
                return False, f"kernel of the natural map differs on {s.kind}"
    return True, ""


def _prop_intersect_preserves_law(max_size, rng, trials: int = 20):
    for s in mixed_pool(max_size):
        law = _law_for(s)
        for _ in range(trials):
            a = pt.close(law, s, random_pair_seed(rng, s)).partition
            b = pt.close(law, s, random_pair_seed(rng, s)).partition
            both = pt.intersect(a, b)
            if not pt.check(law, both).passed:
                return False, f"intersection loses law {law} on {s.kind}"
            if both.index > a.index * b.index:
                return False, "intersection index exceeds the product bound"
    return True, ""


def _prop_quotient_validates(max_size, rng, trials: int = 15):
    for s in mixed_pool(max_size):
        law = _law_for(s)
        for _ in range(trials):
            res = pt.close(law, s, random_pair_seed(rng, s))
            if not res.valid:
                continue
            try:
                q = pt.quotient(s, res.partition, law)
            except QuotientProductUndefined:
                continue
            if not ca.validate(q.structure).ok:
                return False, f"quotient of a {law} relation fails validation on {s.kind}"
            if not ca.check_map(q.nu).ok:
                return False, f"natural map fails its laws on {s.kind}"
    return True, ""


# ---------------------------------------------------------------- cofinite suite


def _prop_interior(max_size, rng, trials: int = 25):
    for s in mixed_pool(max_size):
        for _ in range(trials):
            # Arbitrary equivalence, not necessarily compatible.
            pairs = random_pair_seed(rng, s, max_pairs=4)
            blocks: dict[str, set[str]] = {x: {x} for x in s.elements}
            for x, y in pairs:
                merged = blocks[x] | blocks[y]
                for z in merged:
                    blocks[z] = merged
            raw = Partition.from_classes(s, {frozenset(b) for b in blocks.values()})
            inner = cf.compatible_interior(s, raw)
            if not pt.check(LawTag.COMPATIBLE, inner).passed:
                return False, "interior is not compatible"
            if not inner.refines(raw):
                return False, "interior does not refine its input"
            twice = cf.compatible_interior(s, inner)
            if twice.classes != inner.classes:
                return False, "interior is not idempotent"
            if pt.check(LawTag.COMPATIBLE, raw).passed and inner.classes != raw.classes:
                return False, "interior moves a compatible relation"
    return True, ""


def _prop_separating_congruence(max_size, rng):
    for s in digraph_pool(max_size):
        for y in s.elements:
            r = cf.separating_congruence(s, y)
            if r.class_of(y) != (y,):
                return False, f"class at {y} is not a singleton"
            if not pt.check(LawTag.COMPATIBLE, r).passed:
                return False, f"separating relation at {y} is not compatible"
            bound = 6 if y in s.vertices else 2
            if len(s.elements) > 1 and r.index > bound:
                return False, f"index {r.index} exceeds bound {bound} at {y}"
    return True, ""


def _prop_hausdorff_vs_separation(max_size, rng, trials: int = 12):
    for s in mixed_pool(min(max_size, 5)):
        for _ in range(trials):
            members = [random_compatible(rng, s) for _ in range(rng.randint(1, 3))]
            base = cf.meet_close(cf.FilterBase(s, tuple(members)))
            lhs = cf.is_hausdorff(base)
            rhs = cf.discreteness_certificate(base).all_discrete
            if lhs != rhs:
                return False, f"criteria disagree on {s.kind} with {len(base.members)} members"
    return True, ""


def _prop_filterbase_examples(max_size, rng):
    p2 = fx.path(2)
    delta = Partition.discrete(p2)
    if not cf.is_filter_base(cf.FilterBase(p2, (delta,))).passed:
        return False, "singleton family rejected"
    r = pt.close(LawTag.COMPATIBLE, p2, [("0", "1")]).partition
    if not cf.is_filter_base(cf.FilterBase(p2, (r, delta))).passed:
        return False, "family with the diagonal rejected"
    r1 = pt.close(LawTag.COMPATIBLE, p2, [("0", "1")]).partition
    r2 = pt.close(LawTag.COMPATIBLE, p2, [("1", "2")]).partition
    rep = cf.is_filter_base(cf.FilterBase(p2, (r1, r2)))
    if rep.passed:
        return False, "incomparable pair accepted without a witness member"
    return True, ""


# ---------------------------------------------------------------- completion suite


def _zline_systems(depth: int):
    return fx.zline_circles(depth), fx.zline_arcs(depth)


def _prop_system_validation(max_size, rng):
    circles, arcs = _zline_systems(4)
    for sys in (circles, arcs):
        rep = cp.validate_system(sys, window=6)
        if not rep.passed:
            return False, f"{sys.name} fails {rep.failures[0]}"
    return True, ""


def _prop_embed_functoriality(max_size, rng):
    circles, arcs = _zline_systems(4)
    for sys in (circles, arcs):
        for a in sys.base.window(5):
            for m, n in zip(sys.labels, sys.labels[1:]):
                down = sys.bonding_between(m, n)
                if down.table[cp.level_embed(sys, a, n)] != cp.level_embed(sys, a, m):
                    return False, f"{sys.name} embedding not compatible at {a}"
    return True, ""


def _prop_flagship_ends(max_size, rng):
    circles, arcs = _zline_systems(4)
    got_c = cp.count_new_points(circles, 4)
    got_a = cp.count_new_points(arcs, 4)
    if got_c.status != "Exact(1)" or got_c.per_level != (1, 1, 1, 1):
        return False, f"circle ends {got_c.status} per-level {got_c.per_level}"
    if got_a.status != "Exact(2)" or got_a.per_level != (2, 2, 2, 2):
        return False, f"arc ends {got_a.status} per-level {got_a.per_level}"
    return True, ""


def _prop_ends_monotone(max_size, rng):
    circles, arcs = _zline_systems(6)
    for sys, want in ((circles, 1), (arcs, 2)):
        deep = cp.count_new_points(sys, 6)
        if not deep.exact:
            return False, f"{sys.name} not exact at depth 6"
        for d in range(deep.stabilization + 1, 7):
            rep = cp.count_new_points(sys, d)
            if not rep.exact or rep.count != want:
                return False, f"{sys.name} count changes at depth {d}"
    return True, ""


def _prop_systems_differ(max_size, rng):
    circles, arcs = _zline_systems(7)
    if not (cp.separates_window(circles, 6, 7) and cp.separates_window(arcs, 6, 7)):
        return False, "a window pair stays glued at every level"
    c = cp.count_new_points(circles, 7).count
    a = cp.count_new_points(arcs, 7).count
    if c == a:
        return False, "the two systems report the same end count"
    return True, ""


def _prop_finite_base_reconstruction(max_size, rng):
    p2 = fx.path(2)
    full = Partition.full(p2)
    mid = pt.close(LawTag.COMPATIBLE, p2, [("0", "2")]).partition
    delta = Partition.discrete(p2)
    fb = cf.FilterBase(p2, (full, mid, delta))
    sys = cp.system_from_filterbase(fb)
    rep = cp.count_new_points(sys, len(sys.labels))
    if rep.status != "Exact(0)":
        return False, f"finite base reports {rep.status}"
    deepest = sys.levels[-1]
    nu = sys.projections[-1]
    table = {x: nu(x) for x in p2.elements}
    iso = ca.StructureMap(p2, deepest, table)
    if not ca.map_is_isomorphism(iso):
        return False, "deepest level does not reconstruct the carrier"
    return True, ""


def _prop_fiber_census(max_size, rng):
    circles, arcs = _zline_systems(4)
    for n in (1, 2, 3, 4):
        if len(cp.fiber_census(circles, n, 10).unbounded_classes()) != 1:
            return False, f"circle level {n} unbounded count differs from 1"
        if len(cp.fiber_census(arcs, n, 10).unbounded_classes()) != 2:
            return False, f"arc level {n} unbounded count differs from 2"
    p2 = fx.path(2)
    fb = cf.FilterBase(p2, (Partition.discrete(p2),))
    finite = cp.system_from_filterbase(fb)
    if cp.fiber_census(finite, 1, 4).unbounded_classes():
        return False, "finite base reports an unbounded class"
    return True, ""


def _prop_discrete_quotients(max_size, rng):
    circles, arcs = _zline_systems(4)
    for sys, sizes in ((arcs, [4 * n + 1 for n in range(1, 5)]), (circles, [4 * n for n in range(1, 5)])):
        for n, size in zip(range(1, 5), sizes):
            rep = cp.discrete_quotient_report(sys, n, 4)
            if not rep.passed or rep.extended_classes != size or rep.level_size != size:
                return False, f"{sys.name} level {n}: {rep.extended_classes} classes vs {size}"
    return True, ""


# ---------------------------------------------------------------- groupoid suite


def all_coherent_families(g: FiniteStructure) -> list[gp.CoherentFamily]:
    """Enumerate coherent families from per-vertex normal subgroups."""
    verts = sorted(g.vertices)
    per_vertex = {}
    for x in verts:
        group = ca.hom_set(g, x, x)
        subs = []
        for blocks in _subsets_containing(sorted(group), x):
            if gp.is_normal_subgroup(g, x, frozenset(blocks)):
                subs.append(frozenset(blocks))
        per_vertex[x] = subs
    out = []

    def rec(i, chosen):
        if i == len(verts):
            fam = gp.CoherentFamily(g, dict(chosen))
            try:
                gp.verify_family(fam)
            except CofinexError:
                return
            out.append(fam)
            return
        for sub in per_vertex[verts[i]]:
            chosen[verts[i]] = sub
            rec(i + 1, chosen)
        del chosen[verts[i]]

    rec(0, {})
    return out


def _subsets_containing(items, anchor):
    rest = [x for x in items if x != anchor]
    for mask in range(1 << len(rest)):
        yield [anchor] + [rest[i] for i in range(len(rest)) if mask >> i & 1]


def _prop_rigid_coherent_roundtrip(max_size, rng):
    for g in groupoid_pool(min(max_size, 16)):
        fams = all_coherent_families(g)
        seen = set()
        for fam in fams:
            rc = gp.rigid_from_coherent(fam)
            if not gp.is_rigid(g, rc.partition):
                return False, "built congruence is not rigid"
            back = gp.coherent_from_rigid(g, rc.partition)
            if dict(back.subgroups) != dict(fam.subgroups):
                return False, "family round trip changes the subgroups"
            seen.add(rc.partition.classes)
        if len(seen) != len(fams):
            return False, "two families build the same congruence"
        if len(g.elements) <= 8:
            rigid = [
                p
                for p in all_law_partitions(g, LawTag.CONGRUENCE)
                if gp.is_rigid(g, p)
            ]
            if len(rigid) != len(fams):
                return False, f"{len(rigid)} rigid congruences vs {len(fams)} families"
            for p in rigid:
                rc = gp.rigid_from_coherent(gp.coherent_from_rigid(g, p))
                if rc.partition.classes != p.classes:
                    return False, "congruence round trip changes the relation"
    return True, ""


def _prop_index_formula(max_size, rng):
    combos = [(k, h) for k in (1, 2) for h in ("z2", "z4", "s3")]
    for k, h in combos:
        g = fx.connected_groupoid(k, h)
        if len(g.elements) > max(max_size, 24):
            continue
        x = sorted(g.vertices)[0]
        group = sorted(ca.hom_set(g, x, x))
        for blocks in _subsets_containing(group, x):
            n = frozenset(blocks)
            if not gp.is_normal_subgroup(g, x, n):
                continue
            rc = gp.rho_from_subgroup(g, x, n)
            want = k * k * (len(group) // len(n))
            if rc.index != want:
                return False, f"C({k},{h}) N of order {len(n)}: index {rc.index} vs {want}"
    return True, ""


def _prop_condition3_gate(max_size, rng):
    for g in groupoid_pool(min(max_size, 8)):
        for rho in all_law_partitions(g, LawTag.CONGRUENCE):
            lhs = gp.condition3_check(g, rho)
            q = ungated_groupoid_quotient(g, rho)
            rhs = ca.validate(q).ok
            if lhs != rhs:
                return False, f"gate mismatch on {len(g.elements)}-element groupoid index {rho.index}"
            if lhs:
                gated = pt.quotient(g, rho, LawTag.CONGRUENCE)
                if not ca.validate(gated.structure).ok:
                    return False, "gated quotient fails validation"
    single = fx.single_arrow_groupoid()
    merge = Partition.from_classes(single, [["a", "b"]])
    if gp.condition3_check(single, merge):
        return False, "vertex-merging congruence passes the triple gate"
    if ("g", "g", "gi") not in pt.condition3_unliftable(single, merge):
        return False, "expected unliftable triple (g,g,gi) missing"
    return True, ""


def _prop_rigid_vertex_bijection(max_size, rng):
    for g in groupoid_pool(min(max_size, 16)):
        for fam in all_coherent_families(g):
            rc = gp.rigid_from_coherent(fam)
            q = pt.quotient(g, rc.partition, LawTag.CONGRUENCE)
            if len(q.structure.vertices) != len(g.vertices):
                return False, "rigid quotient changes the vertex count"
    return True, ""


def _prop_vertex_group_trace(max_size, rng, trials: int = 10):
    for g in groupoid_pool(min(max_size, 8)):
        for _ in range(trials):
            rho = pt.close(LawTag.CONGRUENCE, g, random_pair_seed(rng, g)).partition
            for x in g.vertices:
                trace = gp.vertex_group_trace(g, rho, x)
                if not gp.is_normal_subgroup(g, x, trace):
                    return False, f"vertex trace at {x} is not a normal subgroup"
    return True, ""


def _prop_rigid_base(max_size, rng):
    for g in (fx.pair_groupoid(2), fx.connected_groupoid(2, "z2")):
        if len(g.elements) > max(max_size, 8):
            continue
        merging = pt.close(LawTag.CONGRUENCE, g, [(sorted(g.vertices)[0], sorted(g.vertices)[1])]).partition
        separating = Partition.discrete(g)
        fb = cf.meet_close(cf.FilterBase(g, (merging, separating), LawTag.CONGRUENCE))
        out = gp.rigid_base(g, fb)
        for m in out.members:
            if not gp.is_rigid(g, m):
                return False, "rigid base output member is not rigid"
        if not cf.is_filter_base(out).passed:
            return False, "rigid base output is not a filter base"
        for refined, original in zip(out.members, fb.members):
            if not refined.refines(original):
                return False, "rigid base output does not refine the input"
    return True, ""


def _prop_openness_shadow(max_size, rng):
    g = fx.pair_groupoid(2)
    rigid = Partition.discrete(g)
    if not gp.openness_shadow(g, cf.FilterBase(g, (rigid,), LawTag.CONGRUENCE)):
        return False, "diagonal family rejected"
    full = Partition.full(g)
    if gp.openness_shadow(g, cf.FilterBase(g, (full,), LawTag.CONGRUENCE)):
        return False, "full relation accepted"
    return True, ""


def _prop_system_sizes(max_size, rng):
    g = fx.connected_groupoid(2, "z4")
    x = sorted(g.vertices)[0]
    group = sorted(ca.hom_set(g, x, x))
    whole = gp.rho_from_subgroup(g, x, frozenset(group))
    half = gp.rho_from_subgroup(g, x, frozenset({f"(0,{h},0)" for h in ("0", "2")}))
    fine = gp.rho_from_subgroup(g, x, frozenset({x}))
    sys = gp.profinite_groupoid_system(g, [whole, half, fine])
    sizes = tuple(len(level.elements) for level in sys.levels)
    if sizes != (4, 8, 16):
        return False, f"level sizes {sizes}"
    if not cp.validate_system(sys).passed:
        return False, "groupoid system fails validation"
    return True, ""


# ---------------------------------------------------------------- runner

_PROPERTIES = {
    "core": [
        ("core.validate-fixtures", _prop_validate_fixtures),
        ("core.validate-witnesses", _prop_validate_witnesses),
        ("core.product-projections", _prop_product_projections),
        ("core.generated-substructure", _prop_generated_substructure),
        ("core.groupoid-inverse-law", _prop_groupoid_inverse_law),
        ("core.closure-compatible-minimal", _prop_closure_compatible_minimal),
        ("core.closure-congruence-minimal", _prop_closure_congruence_minimal),
        ("core.closure-empty-diagonal", _prop_closure_empty_diagonal),
        ("core.kernel-quotient-roundtrip", _prop_kernel_quotient_roundtrip),
        ("core.intersect-preserves-law", _prop_intersect_preserves_law),
        ("core.quotient-validates", _prop_quotient_validates),
    ],
    "cofinite": [
        ("cofinite.interior", _prop_interior),
        ("cofinite.separating-congruence", _prop_separating_congruence),
        ("cofinite.hausdorff-vs-separation", _prop_hausdorff_vs_separation),
        ("cofinite.filterbase-examples", _prop_filterbase_examples),
    ],
    "completion": [
        ("completion.system-validation", _prop_system_validation),
        ("completion.embed-functoriality", _prop_embed_functoriality),
        ("completion.flagship-ends", _prop_flagship_ends),
        ("completion.ends-monotone", _prop_ends_monotone),
        ("completion.systems-differ", _prop_systems_differ),
        ("completion.finite-base-reconstruction", _prop_finite_base_reconstruction),
        ("completion.fiber-census", _prop_fiber_census),
        ("completion.discrete-quotients", _prop_discrete_quotients),
    ],
    "groupoid": [
        ("groupoid.rigid-coherent-roundtrip", _prop_rigid_coherent_roundtrip),
        ("groupoid.index-formula", _prop_index_formula),
        ("groupoid.condition3-gate", _prop_condition3_gate),
        ("groupoid.rigid-vertex-bijection", _prop_rigid_vertex_bijection),
        ("groupoid.vertex-group-trace", _prop_vertex_group_trace),
        ("groupoid.rigid-base", _prop_rigid_base),
        ("groupoid.openness-shadow", _prop_openness_shadow),
        ("groupoid.system-sizes", _prop_system_sizes),
    ],
}


def run_verify(suite: str = "all", max_size: int = 8, seed: int = 42) -> SuiteReport:
    """Run a property suite; failures are entries, never exceptions."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}, expected one of {SUITES}")
    names = ["core", "cofinite", "completion", "groupoid"] if suite == "all" else [suite]
    results = []
    for group in names:
        for name, fn in _PROPERTIES[group]:
            rng = random.Random(f"{seed}:{name}")
            try:
                passed, witness = fn(max_size, rng)
            except CofinexError as exc:
                passed, witness = False, f"unexpected error: {exc}"
            results.append(PropertyResult(name, passed, witness))
    return SuiteReport(suite, max_size, seed, tuple(results))
