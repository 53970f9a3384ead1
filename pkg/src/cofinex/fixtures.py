"""Built-in carriers and inverse systems used by the CLI and the suites.

The integer-line systems pin an exact element naming: vertices "v{i}" and
edges "e{i}" for the edge from i to i+1, with negative indices rendered
with a minus sign. Everything generated here passes validation for its
kind.
"""

from __future__ import annotations

from typing import Mapping

from . import carrier as ca
from . import partition as pt
from .carrier import FiniteStructure, StructureMap
from .completion import InverseSystem, SymbolicCarrier
from .errors import BadParameter
from .partition import LawTag, Partition

MAX_LEVEL = 64


def path(n: int) -> FiniteStructure:
    """Directed path with vertices 0..n and edges e01, e12, ..."""
    if n < 0:
        raise BadParameter("path length must be nonnegative")
    vertices = [str(i) for i in range(n + 1)]
    src = {v: v for v in vertices}
    tgt = {v: v for v in vertices}
    for i in range(n):
        e = f"e{i}{i + 1}"
        src[e] = str(i)
        tgt[e] = str(i + 1)
    return FiniteStructure(ca.DIGRAPH, tuple(src), set(vertices), src, tgt)


def delta_graph() -> FiniteStructure:
    """Two vertices with loops at each and one edge in each direction."""
    src = {"a": "a", "b": "b", "e": "a", "f": "b", "g": "a", "gbar": "b"}
    tgt = {"a": "a", "b": "b", "e": "a", "f": "b", "g": "b", "gbar": "a"}
    return FiniteStructure(ca.DIGRAPH, tuple(src), {"a", "b"}, src, tgt)


def discrete_space(n: int) -> FiniteStructure:
    """A carrier that is all vertices; sources and targets are the identity."""
    if n < 1:
        raise BadParameter("discrete space needs at least one point")
    ids = [f"x{i}" for i in range(n)]
    table = {x: x for x in ids}
    return FiniteStructure(ca.DIGRAPH, tuple(ids), set(ids), table, dict(table))


def double_edges(digraph: FiniteStructure) -> FiniteStructure:
    """Serre graph obtained by adding a reversed mate e' for every edge."""
    if digraph.kind != ca.DIGRAPH:
        raise BadParameter("edge doubling starts from a directed graph")
    src = dict(digraph.src)
    tgt = dict(digraph.tgt)
    inv = {v: v for v in digraph.vertices}
    for e in digraph.edges:
        mate = e + "'"
        src[mate] = digraph.tgt[e]
        tgt[mate] = digraph.src[e]
        inv[e] = mate
        inv[mate] = e
    return FiniteStructure(ca.GRAPH, tuple(src), digraph.vertices, src, tgt, inv)


def cyclic_groupoid(n: int) -> FiniteStructure:
    """The cyclic group of order n as a one-vertex groupoid, elements 0..n-1."""
    if n < 1:
        raise BadParameter("cyclic group order must be positive")
    ids = [str(i) for i in range(n)]
    src = {x: "0" for x in ids}
    tgt = dict(src)
    inv = {str(i): str((-i) % n) for i in range(n)}
    mul = {(str(i), str(j)): str((i + j) % n) for i in range(n) for j in range(n)}
    return FiniteStructure(ca.GROUPOID, tuple(ids), {"0"}, src, tgt, inv, mul)


def pair_groupoid(n: int) -> FiniteStructure:
    """One arrow between every ordered pair of n vertices."""
    if n < 1:
        raise BadParameter("pair groupoid needs at least one vertex")

    def name(i, j):
        return f"v{i}" if i == j else f"a{i}_{j}"

    ids = [name(i, j) for i in range(n) for j in range(n)]
    src = {name(i, j): name(i, i) for i in range(n) for j in range(n)}
    tgt = {name(i, j): name(j, j) for i in range(n) for j in range(n)}
    inv = {name(i, j): name(j, i) for i in range(n) for j in range(n)}
    mul = {
        (name(i, j), name(j, k)): name(i, k)
        for i in range(n)
        for j in range(n)
        for k in range(n)
    }
    return FiniteStructure(
        ca.GROUPOID, tuple(ids), {name(i, i) for i in range(n)}, src, tgt, inv, mul
    )


def group_table(name: str) -> tuple[tuple[str, ...], Mapping[tuple[str, str], str], Mapping[str, str], str]:
    """Elements, product, inverse, and identity of a named finite group.

    Supported names: z{k} for cyclic groups and s3 for the symmetric group
    on three letters (elements written as one-line permutations of 012).
    """
    name = name.lower()
    if name.startswith("z") and name[1:].isdigit():
        k = int(name[1:])
        if k < 1:
            raise BadParameter("cyclic group order must be positive")
        ids = tuple(str(i) for i in range(k))
        mul = {(str(i), str(j)): str((i + j) % k) for i in range(k) for j in range(k)}
        inv = {str(i): str((-i) % k) for i in range(k)}
        return ids, mul, inv, "0"
    if name == "s3":
        perms = ["012", "021", "102", "120", "201", "210"]

        def compose(p, q):
            # Apply p first, then q.
            return "".join(q[int(p[i])] for i in range(3))

        mul = {(p, q): compose(p, q) for p in perms for q in perms}
        inv = {p: next(q for q in perms if compose(p, q) == "012") for p in perms}
        return tuple(perms), mul, inv, "012"
    raise BadParameter(f"unknown group name {name!r}")


def connected_groupoid(n: int, group: str = "z2") -> FiniteStructure:
    """Connected groupoid with n vertices whose vertex groups are the named group.

    Arrows are triples (i,h,j) composing by (i,h,j)(j,h',k) = (i,hh',k);
    the identity at vertex i is (i,identity,i).
    """
    if n < 1:
        raise BadParameter("connected groupoid needs at least one vertex")
    helems, hmul, hinv, hid = group_table(group)

    def name(i, h, j):
        return f"({i},{h},{j})"

    ids = [name(i, h, j) for i in range(n) for h in helems for j in range(n)]
    vertices = {name(i, hid, i) for i in range(n)}
    src = {name(i, h, j): name(i, hid, i) for i in range(n) for h in helems for j in range(n)}
    tgt = {name(i, h, j): name(j, hid, j) for i in range(n) for h in helems for j in range(n)}
    inv = {
        name(i, h, j): name(j, hinv[h], i)
        for i in range(n)
        for h in helems
        for j in range(n)
    }
    mul = {}
    for i in range(n):
        for h1 in helems:
            for j in range(n):
                for h2 in helems:
                    for k in range(n):
                        mul[(name(i, h1, j), name(j, h2, k))] = name(i, hmul[(h1, h2)], k)
    return FiniteStructure(ca.GROUPOID, tuple(ids), vertices, src, tgt, inv, mul)


def single_arrow_groupoid() -> FiniteStructure:
    """Two vertices a, b joined by one arrow g and its inverse gi.

    Merging the two vertices gives the smallest congruence whose quotient
    pairs fail to lift, so this carrier exercises the triple-lift gate.
    """
    src = {"a": "a", "b": "b", "g": "a", "gi": "b"}
    tgt = {"a": "a", "b": "b", "g": "b", "gi": "a"}
    inv = {"a": "a", "b": "b", "g": "gi", "gi": "g"}
    mul = {
        ("a", "a"): "a",
        ("b", "b"): "b",
        ("a", "g"): "g",
        ("g", "b"): "g",
        ("b", "gi"): "gi",
        ("gi", "a"): "gi",
        ("g", "gi"): "a",
        ("gi", "g"): "b",
    }
    return FiniteStructure(ca.GROUPOID, tuple(src), {"a", "b"}, src, tgt, inv, mul)


def _vid(i: int) -> str:
    return f"v{i}"


def _eid(i: int) -> str:
    return f"e{i}"


def zline_carrier() -> SymbolicCarrier:
    """The subdivided integer line, windows holding indices of size at most w."""

    def window(w: int) -> tuple[str, ...]:
        if w < 0:
            raise BadParameter("window must be nonnegative")
        out = [_vid(i) for i in range(-w, w + 1)]
        out.extend(_eid(i) for i in range(-w, w))
        return tuple(out)

    def parse(x: str) -> tuple[str, int]:
        if len(x) > 1 and x[0] in "ve":
            try:
                return x[0], int(x[1:])
            except ValueError:
                pass
        raise KeyError(x)

    def src(x: str) -> str:
        kind, i = parse(x)
        return x if kind == "v" else _vid(i)

    def tgt(x: str) -> str:
        kind, i = parse(x)
        return x if kind == "v" else _vid(i + 1)

    return SymbolicCarrier(ca.DIGRAPH, window, src, tgt)


def arc_level(n: int) -> FiniteStructure:
    """The sub-path of the line on vertices -n..n."""
    src = {}
    tgt = {}
    vertices = set()
    for i in range(-n, n + 1):
        v = _vid(i)
        vertices.add(v)
        src[v] = v
        tgt[v] = v
    for i in range(-n, n):
        e = _eid(i)
        src[e] = _vid(i)
        tgt[e] = _vid(i + 1)
    return FiniteStructure(ca.DIGRAPH, tuple(src), vertices, src, tgt)


def circle_level(n: int) -> FiniteStructure:
    """The arc of the same length with its endpoint vertices identified."""
    arc = arc_level(n)
    glue = Partition.from_classes(arc, [[_vid(-n), _vid(n)]])
    return pt.quotient(arc, glue, LawTag.COMPATIBLE).structure


def _arc_project(n: int):
    line = zline_carrier()

    def proj(x: str) -> str:
        if x.startswith("v"):
            i = int(x[1:])
            return _vid(max(-n, min(n, i)))
        if x.startswith("e"):
            i = int(x[1:])
            if -n <= i <= n - 1:
                return x
            return _vid(n) if i >= n else _vid(-n)
        raise KeyError(x)

    # Touch the carrier so malformed ids fail early and uniformly.
    def checked(x: str) -> str:
        line.src(x)
        return proj(x)

    return checked


def _circle_project(n: int):
    arc = _arc_project(n)
    glued = _vid(-n)

    def proj(x: str) -> str:
        y = arc(x)
        return glued if y == _vid(n) else y

    return proj


def _arc_bonding(m: int) -> StructureMap:
    """Retraction of the arc at m+1 onto the arc at m."""
    fine = arc_level(m + 1)
    coarse = arc_level(m)
    proj = _arc_project(m)
    table = {x: proj(x) for x in fine.elements}
    return StructureMap(fine, coarse, table)


def _circle_bonding(m: int) -> StructureMap:
    fine = circle_level(m + 1)
    coarse = circle_level(m)
    proj = _circle_project(m)
    glued_fine = _vid(-(m + 1))
    table = {}
    for x in fine.elements:
        if x == glued_fine:
            table[x] = _vid(-m)
        else:
            table[x] = proj(x)
    return StructureMap(fine, coarse, table)


def zline_arcs(max_level: int) -> InverseSystem:
    """Arc quotient system of the line, levels 0..max_level."""
    if not 0 <= max_level <= MAX_LEVEL:
        raise BadParameter(f"max_level must lie in 0..{MAX_LEVEL}")
    labels = tuple(range(0, max_level + 1))
    levels = tuple(arc_level(n) for n in labels)
    bondings = tuple(_arc_bonding(m) for m in range(0, max_level))
    projections = tuple(_arc_project(n) for n in labels)
    unbounded = {0: frozenset({_vid(0)})}
    for n in range(1, max_level + 1):
        unbounded[n] = frozenset({_vid(-n), _vid(n)})
    return InverseSystem(
        levels,
        bondings,
        labels,
        base=zline_carrier(),
        projections=projections,
        unbounded=unbounded,
        name="zline-arcs",
    )


def zline_circles(max_level: int) -> InverseSystem:
    """Circle quotient system of the line, levels 1..max_level."""
    if not 1 <= max_level <= MAX_LEVEL:
        raise BadParameter(f"max_level must lie in 1..{MAX_LEVEL}")
    labels = tuple(range(1, max_level + 1))
    levels = tuple(circle_level(n) for n in labels)
    bondings = tuple(_circle_bonding(m) for m in range(1, max_level))
    projections = tuple(_circle_project(n) for n in labels)
    unbounded = {n: frozenset({_vid(-n)}) for n in labels}
    return InverseSystem(
        levels,
        bondings,
        labels,
        base=zline_carrier(),
        projections=projections,
        unbounded=unbounded,
        name="zline-circles",
    )


def generate(name: str, *params) -> FiniteStructure | InverseSystem:
    """Build a fixture by its public name.

    Structures: path(n), delta-graph, cyclic(n), pair-groupoid(n),
    connected-groupoid(n, group), discrete-space(n). Systems:
    zline-circles(N), zline-arcs(N).
    """
    try:
        if name == "path":
            return path(int(params[0]))
        if name == "delta-graph":
            return delta_graph()
        if name == "cyclic":
            return cyclic_groupoid(int(params[0]))
        if name == "pair-groupoid":
            return pair_groupoid(int(params[0]))
        if name == "connected-groupoid":
            group = params[1] if len(params) > 1 else "z2"
            return connected_groupoid(int(params[0]), str(group))
        if name == "discrete-space":
            return discrete_space(int(params[0]))
        if name == "zline-circles":
            return zline_circles(int(params[0]))
        if name == "zline-arcs":
            return zline_arcs(int(params[0]))
    except (IndexError, ValueError) as exc:
        raise BadParameter(f"bad parameters for fixture {name!r}: {params}") from exc
    raise BadParameter(f"unknown fixture {name!r}")
