import pytest

from cofinex import carrier as ca
from cofinex import fixtures as fx
from cofinex.carrier import FiniteStructure, StructureMap
from cofinex.errors import DanglingReference, KindMismatch, UnknownVertex


def serre_with_fixed_edge():
    p1 = fx.path(1)
    return FiniteStructure(
        ca.GRAPH,
        p1.elements,
        p1.vertices,
        dict(p1.src),
        dict(p1.tgt),
        {x: x for x in p1.elements},
    )


class TestValidate:
    def test_cyclic_group_is_a_valid_groupoid(self):
        assert ca.validate(fx.cyclic_groupoid(4)).ok

    def test_fixed_edge_violation(self):
        rep = ca.validate(serre_with_fixed_edge())
        assert not rep.ok
        assert ("FixedEdge", ("e01",)) in [(v.code, v.witness) for v in rep.violations]

    def test_missing_product_entry(self):
        g = FiniteStructure(
            ca.GROUPOID,
            ("v", "g"),
            {"v"},
            {"v": "v", "g": "v"},
            {"v": "v", "g": "v"},
            {"v": "v", "g": "g"},
            {("v", "v"): "v", ("v", "g"): "g", ("g", "v"): "g"},
        )
        rep = ca.validate(g)
        assert ("PartialProductDomain", ("g", "g")) in [(v.code, v.witness) for v in rep.violations]

    def test_dangling_reference_raises(self):
        with pytest.raises(DanglingReference):
            ca.validate(
                FiniteStructure(ca.DIGRAPH, ("v",), {"v"}, {"v": "w"}, {"v": "v"})
            )

    def test_kind_mismatch_raises(self):
        p1 = fx.path(1)
        with pytest.raises(KindMismatch):
            ca.validate(
                FiniteStructure(
                    ca.DIGRAPH,
                    p1.elements,
                    p1.vertices,
                    dict(p1.src),
                    dict(p1.tgt),
                    {x: x for x in p1.elements},
                )
            )

    def test_every_fixture_validates(self):
        for s in [
            fx.path(0),
            fx.path(3),
            fx.delta_graph(),
            fx.discrete_space(4),
            fx.double_edges(fx.path(2)),
            fx.cyclic_groupoid(6),
            fx.pair_groupoid(3),
            fx.connected_groupoid(2, "z4"),
            fx.connected_groupoid(2, "s3"),
            fx.single_arrow_groupoid(),
        ]:
            assert ca.validate(s).ok, s.kind


def one_edge_digraph():
    src = {"v0": "v0", "v1": "v1", "e": "v0"}
    tgt = {"v0": "v0", "v1": "v1", "e": "v1"}
    return FiniteStructure(ca.DIGRAPH, tuple(src), {"v0", "v1"}, src, tgt)


class TestProduct:
    def test_square_of_one_edge_digraph(self):
        p1 = one_edge_digraph()
        sq = ca.product(p1, p1)
        assert len(sq.elements) == 9
        assert len(sq.vertices) == 4
        assert len(sq.edges) == 5

    def test_product_with_point_is_isomorphic(self):
        p2 = fx.path(2)
        point = fx.discrete_space(1)
        prod = ca.product(p2, point)
        table = {ca.pair_id(x, "x0"): x for x in p2.elements}
        iso = StructureMap(prod, p2, table)
        assert ca.map_is_isomorphism(iso)

    def test_klein_four_group(self):
        z2 = fx.cyclic_groupoid(2)
        klein = ca.product(z2, z2)
        assert ca.validate(klein).ok
        assert len(klein.vertices) == 1
        vertex = next(iter(klein.vertices))
        # Every element squares to the identity and the table matches
        # coordinate-wise addition mod 2.
        for g in klein.elements:
            assert klein.mul[(g, g)] == vertex
        for a in (0, 1):
            for b in (0, 1):
                for c in (0, 1):
                    for d in (0, 1):
                        lhs = klein.mul[(ca.pair_id(str(a), str(b)), ca.pair_id(str(c), str(d)))]
                        assert lhs == ca.pair_id(str((a + c) % 2), str((b + d) % 2))

    def test_kind_mismatch(self):
        with pytest.raises(KindMismatch):
            ca.product(fx.path(1), fx.cyclic_groupoid(2))

    def test_projections_pass_their_laws(self):
        a, b = fx.cyclic_groupoid(2), fx.cyclic_groupoid(3)
        pr1, pr2 = ca.product_projections(a, b)
        assert ca.check_map(pr1).ok
        assert ca.check_map(pr2).ok


class TestGeneratedSubstructure:
    def test_path_edge_pulls_in_endpoints(self):
        sub = ca.generated_substructure(fx.path(2), ["e01"])
        assert set(sub.elements) == {"e01", "0", "1"}

    def test_serre_edge_pulls_in_mate(self):
        doubled = fx.double_edges(fx.path(2))
        sub = ca.generated_substructure(doubled, ["e01"])
        assert set(sub.elements) == {"e01", "e01'", "0", "1"}

    def test_generator_of_cyclic_group(self):
        z4 = fx.cyclic_groupoid(4)
        sub = ca.generated_substructure(z4, ["1"])
        assert set(sub.elements) == {"0", "1", "2", "3"}

    def test_idempotent_and_monotone(self):
        g = fx.pair_groupoid(3)
        small = ca.generated_substructure(g, ["a0_1"])
        again = ca.generated_substructure(g, small.elements)
        assert set(again.elements) == set(small.elements)
        bigger = ca.generated_substructure(g, ["a0_1", "a1_2"])
        assert set(small.elements) <= set(bigger.elements)


class TestHomSet:
    def test_pair_groupoid_single_arrows(self):
        g = fx.pair_groupoid(2)
        assert ca.hom_set(g, "v0", "v1") == frozenset({"a0_1"})

    def test_single_vertex_group(self):
        z4 = fx.cyclic_groupoid(4)
        assert ca.hom_set(z4, "0", "0") == frozenset({"0", "1", "2", "3"})

    def test_unknown_vertex(self):
        with pytest.raises(UnknownVertex):
            ca.hom_set(fx.pair_groupoid(2), "v0", "nope")

    def test_no_arrows_across_components(self):
        # Two disjoint copies of the order-two group in one carrier.
        src = {x: x[0] + "0" for x in ("a0", "a1", "b0", "b1")}
        g = FiniteStructure(
            ca.GROUPOID,
            ("a0", "a1", "b0", "b1"),
            {"a0", "b0"},
            src,
            dict(src),
            {"a0": "a0", "a1": "a1", "b0": "b0", "b1": "b1"},
            {
                ("a0", "a0"): "a0",
                ("a0", "a1"): "a1",
                ("a1", "a0"): "a1",
                ("a1", "a1"): "a0",
                ("b0", "b0"): "b0",
                ("b0", "b1"): "b1",
                ("b1", "b0"): "b1",
                ("b1", "b1"): "b0",
            },
        )
        assert ca.validate(g).ok
        assert ca.hom_set(g, "a0", "b0") == frozenset()


class TestMaps:
    def test_inverse_law_scan(self):
        for g in (fx.cyclic_groupoid(6), fx.pair_groupoid(2), fx.connected_groupoid(2, "s3")):
            for x in g.elements:
                xi = g.inv[x]
                assert g.mul[(x, xi)] == g.src[x]
                assert g.mul[(xi, x)] == g.tgt[x]

    def test_rigid_map_predicate(self):
        p2 = fx.path(2)
        ident = ca.identity_map(p2)
        assert ca.map_is_rigid(ident)
        collapse = StructureMap(p2, fx.path(0), {x: "0" for x in p2.elements})
        assert ca.check_map(collapse).ok
        assert not ca.map_is_rigid(collapse)
