"""Chain-indexed inverse systems of finite quotients and their ends census.

A system is a chain of finite levels with bonding maps toward the coarse
end, optionally sitting under a symbolic base carrier with one projection
per level. New points of the level-wise completion are counted as
coherent threads of unbounded-fiber classes: once the transition between
consecutive levels restricts to a bijection on unbounded classes, the
thread count is exact; otherwise the census answers Unknown rather than
extrapolate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from . import carrier as ca
from . import cofinite as cf
from . import partition as pt
from .carrier import FiniteStructure, StructureMap, Violation
from .errors import (
    BadParameter,
    NotAChain,
    NotAFilterBase,
    OutOfWindow,
    StatusUnknown,
)
from .partition import CheckReport, LawTag, Partition


@dataclass(frozen=True)
class SymbolicCarrier:
    """A possibly infinite carrier presented through nested finite windows."""

    kind: str
    window: Callable[[int], tuple[str, ...]]
    src: Callable[[str], str]
    tgt: Callable[[str], str]


def finite_symbolic(structure: FiniteStructure) -> SymbolicCarrier:
    """Wrap a finite carrier as a symbolic one with constant windows."""
    return SymbolicCarrier(
        structure.kind,
        lambda w: structure.elements,
        lambda x: structure.src[x],
        lambda x: structure.tgt[x],
    )


@dataclass(frozen=True)
class InverseSystem:
    """Finite levels, consecutive bondings, and optional base projections.

    bondings[k] maps levels[k + 1] onto levels[k]. Labels are the level
    numbers used by the census operations; they increase strictly along
    the chain. Analytically known unbounded classes, when the generator
    declares them, are kept per label.
    """

    levels: tuple[FiniteStructure, ...]
    bondings: tuple[StructureMap, ...]
    labels: tuple[int, ...]
    base: SymbolicCarrier | None = None
    projections: tuple[Callable[[str], str], ...] | None = None
    unbounded: dict[int, frozenset[str]] | None = None
    name: str | None = None

    def level_index(self, label: int) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise BadParameter(f"no level labeled {label}") from None

    def project(self, a: str, label: int) -> str:
        if self.projections is None:
            raise BadParameter("system has no base projections")
        try:
            return self.projections[self.level_index(label)](a)
        except (KeyError, ValueError):
            raise OutOfWindow(a) from None

    def bonding_between(self, coarse_label: int, fine_label: int) -> StructureMap:
        """Composite bonding from the finer level down to the coarser one."""
        i = self.level_index(coarse_label)
        j = self.level_index(fine_label)
        if j < i:
            raise BadParameter("fine label must not be coarser than coarse label")
        out = ca.identity_map(self.levels[j])
        for k in range(j - 1, i - 1, -1):
            out = out.then(self.bondings[k])
        return out


def system_from_filterbase(i: cf.FilterBase) -> InverseSystem:
    """Quotient tower of a filter base whose members form a refinement chain."""
    rep = cf.is_filter_base(i)
    if not rep.passed:
        raise NotAFilterBase(f"no refinement witness for pair {rep.failures[0].witness}")
    members = sorted(i.members, key=lambda m: m.index)
    for a, b in zip(members, members[1:]):
        if not b.refines(a):
            raise NotAChain("members are not totally ordered by refinement")
    levels = []
    projections = []
    for m in members:
        q, nu = pt.quotient(i.carrier, m, i.law)
        levels.append(q)
        projections.append(dict(nu.table).__getitem__)
    bondings = tuple(
        pt.induced_bonding(members[k], members[k + 1], i.law)
        for k in range(len(members) - 1)
    )
    labels = tuple(range(1, len(members) + 1))
    return InverseSystem(
        tuple(levels),
        bondings,
        labels,
        base=finite_symbolic(i.carrier),
        projections=tuple(projections),
        unbounded={n: frozenset() for n in labels},
    )


def validate_system(sys: InverseSystem, window: int = 4) -> CheckReport:
    """Check level axioms, bonding laws, and projection compatibility."""
    failures: list[Violation] = []
    for pos, level in enumerate(sys.levels):
        rep = ca.validate(level)
        for v in rep.violations:
            failures.append(Violation("LevelInvalid", (sys.labels[pos], v.code) + v.witness))
    for k, bonding in enumerate(sys.bondings):
        if bonding.domain != sys.levels[k + 1] or bonding.codomain != sys.levels[k]:
            failures.append(Violation("BondingEndpoints", (sys.labels[k], sys.labels[k + 1])))
            continue
        expected = ca.laws_for_kind(sys.levels[k].kind)
        rep = ca.check_map(StructureMap(bonding.domain, bonding.codomain, bonding.table, expected))
        for v in rep.violations:
            failures.append(Violation("BondingLaw", (sys.labels[k + 1], v.code) + v.witness))
    if sys.base is not None and sys.projections is not None:
        elems = sys.base.window(window)
        for pos in range(len(sys.levels)):
            label = sys.labels[pos]
            level = sys.levels[pos]
            proj = sys.projections[pos]
            for a in elems:
                try:
                    image = proj(a)
                except (KeyError, ValueError):
                    failures.append(Violation("ProjectionUndefined", (label, a)))
                    continue
                if image not in set(level.elements):
                    failures.append(Violation("ProjectionOutside", (label, a, image)))
                    continue
                if proj(sys.base.src(a)) != level.src[image]:
                    failures.append(Violation("ProjectionSource", (label, a)))
                if proj(sys.base.tgt(a)) != level.tgt[image]:
                    failures.append(Violation("ProjectionTarget", (label, a)))
                if pos + 1 < len(sys.levels):
                    finer = sys.projections[pos + 1]
                    if sys.bondings[pos].table[finer(a)] != image:
                        failures.append(Violation("ProjectionBonding", (label, a)))
    return CheckReport(LawTag.COMPATIBLE, tuple(failures))


def level_embed(sys: InverseSystem, a: str, n: int) -> str:
    """Level-n coordinate of the canonical embedding of a base element."""
    return sys.project(a, n)


@dataclass(frozen=True)
class FiberEntry:
    class_id: str
    size: int
    growing: bool
    unbounded: bool
    exact: bool


@dataclass(frozen=True)
class FiberCensus:
    label: int
    budget: int
    entries: tuple[FiberEntry, ...]

    def unbounded_classes(self) -> tuple[str, ...]:
        return tuple(e.class_id for e in self.entries if e.unbounded)


def fiber_census(sys: InverseSystem, n: int, budget: int) -> FiberCensus:
    """Fiber sizes of level-n classes within the budget window.

    A class counts as unbounded either by the generator's analytic
    declaration or, heuristically, when its fiber strictly grows across
    three consecutive window increments.
    """
    if sys.base is None:
        raise BadParameter("fiber census needs a base carrier")
    idx = sys.level_index(n)
    level = sys.levels[idx]
    proj = sys.projections[idx]
    sizes = []
    for w in (budget, budget + 1, budget + 2, budget + 3):
        count: dict[str, int] = {c: 0 for c in level.elements}
        for a in sys.base.window(w):
            count[proj(a)] += 1
        sizes.append(count)
    declared = sys.unbounded.get(n) if sys.unbounded is not None else None
    entries = []
    for c in level.elements:
        grow = sizes[0][c] < sizes[1][c] < sizes[2][c] < sizes[3][c]
        if declared is not None:
            entries.append(FiberEntry(c, sizes[0][c], grow, c in declared, True))
        else:
            entries.append(FiberEntry(c, sizes[0][c], grow, grow, False))
    return FiberCensus(n, budget, tuple(entries))


@dataclass(frozen=True)
class EndReport:
    exact: bool
    count: int | None
    labels: tuple[int, ...]
    per_level: tuple[int, ...]
    stabilization: int | None

    @property
    def status(self) -> str:
        return f"Exact({self.count})" if self.exact else "Unknown"

    def __str__(self):
        return self.status


def default_window(depth: int) -> int:
    # Large enough that every bounded level fiber of the built-in line
    # fixtures is fully enclosed.
    return 2 * depth + 2


def _censused_labels(sys: InverseSystem, depth: int) -> list[int]:
    labels = [n for n in sys.labels if 1 <= n <= depth]
    if not labels:
        raise BadParameter(f"no levels labeled between 1 and {depth}")
    if depth > max(sys.labels):
        raise BadParameter(f"depth {depth} exceeds deepest level {max(sys.labels)}")
    return labels


def count_new_points(sys: InverseSystem, depth: int) -> EndReport:
    """Count coherent threads of unbounded classes through levels 1..depth.

    The count is exact only when, from some level on, every consecutive
    transition restricts to a bijection between unbounded class sets, with
    at least one such transition witnessed; an all-empty census is exact
    with zero threads.
    """
    if sys.base is None:
        raise BadParameter("ends census needs a base carrier")
    labels = _censused_labels(sys, depth)
    budget = default_window(depth)
    unbounded: dict[int, tuple[str, ...]] = {}
    for n in labels:
        unbounded[n] = fiber_census(sys, n, budget).unbounded_classes()
    per_level = tuple(len(unbounded[n]) for n in labels)

    if all(c == 0 for c in per_level):
        return EndReport(True, 0, tuple(labels), per_level, labels[0])

    bijective: list[bool] = []
    for a, b in zip(labels, labels[1:]):
        bonding = sys.bonding_between(a, b)
        images = [bonding.table[c] for c in unbounded[b]]
        ok = (
            len(set(images)) == len(images)
            and set(images) == set(unbounded[a])
        )
        bijective.append(ok)
    stabilization = None
    for i in range(len(labels) - 1):
        if all(bijective[i:]):
            stabilization = labels[i]
            break
    if stabilization is None:
        return EndReport(False, None, tuple(labels), per_level, None)
    return EndReport(True, per_level[-1], tuple(labels), per_level, stabilization)


@dataclass(frozen=True)
class DiscreteQuotientReport:
    label: int
    extended_classes: int
    level_size: int
    passed: bool


def discrete_quotient_report(sys: InverseSystem, n: int, depth: int) -> DiscreteQuotientReport:
    """Finite shadow of the quotient comparison between base and completion.

    The level-n projection is extended to the ends (each end lands in the
    level-n class its thread passes through); the report passes when the
    extended quotient of the window plus ends has exactly the level's
    classes and the projection respects sources and targets there.
    """
    ends = count_new_points(sys, depth)
    if not ends.exact:
        raise StatusUnknown("ends census is not exact at this depth")
    labels = list(ends.labels)
    if n not in labels:
        raise BadParameter(f"level {n} not inside the censused range")
    w = default_window(depth)
    idx = sys.level_index(n)
    level = sys.levels[idx]
    proj = sys.projections[idx]
    window_elems = sys.base.window(w)
    hit = {proj(a) for a in window_elems}

    deepest = labels[-1]
    end_classes = set()
    if ends.count:
        down = sys.bonding_between(n, deepest)
        census = fiber_census(sys, deepest, default_window(depth))
        for c in census.unbounded_classes():
            end_classes.add(down.table[c])
    extended = hit | end_classes
    structure_ok = all(
        proj(sys.base.src(a)) == level.src[proj(a)]
        and proj(sys.base.tgt(a)) == level.tgt[proj(a)]
        for a in window_elems
    )
    passed = extended == set(level.elements) and structure_ok
    return DiscreteQuotientReport(n, len(extended), len(level.elements), passed)


def discrete_quotient_check(sys: InverseSystem, n: int, depth: int) -> bool:
    return discrete_quotient_report(sys, n, depth).passed


def separates_window(sys: InverseSystem, window: int, max_label: int | None = None) -> bool:
    """Whether every pair of window elements is split by some level.

    This is the system-side separation certificate: all-yes means the
    levels up to max_label induce a Hausdorff approximation on the window.
    """
    if sys.base is None:
        raise BadParameter("separation certificate needs a base carrier")
    labels = [n for n in sys.labels if max_label is None or n <= max_label]
    elems = list(sys.base.window(window))
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            if not any(
                sys.project(elems[i], n) != sys.project(elems[j], n) for n in labels
            ):
                return False
    return True
