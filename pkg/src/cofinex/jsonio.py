"""Bit-exact JSON formats for carriers, partitions, filter bases, systems.

Canonical form: object keys sorted, arrays of ids sorted lexicographically,
UTF-8, two-space indentation, newline-terminated. Serialize-parse-serialize
is the identity on canonical documents. Partition documents may omit
singleton classes; parsing fills them back in from the carrier.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from . import carrier as ca
from . import fixtures as fx
from .carrier import FiniteStructure, StructureMap
from .cofinite import FilterBase
from .completion import InverseSystem
from .errors import BadParameter, CofinexError
from .partition import LawTag, Partition


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def structure_doc(s: FiniteStructure) -> dict:
    doc = {
        "kind": s.kind,
        "elements": sorted(s.elements),
        "vertices": sorted(s.vertices),
        "src": dict(sorted(s.src.items())),
        "tgt": dict(sorted(s.tgt.items())),
    }
    if s.inv is not None:
        doc["inv"] = dict(sorted(s.inv.items()))
    if s.mul is not None:
        doc["mul"] = sorted([g, h, p] for (g, h), p in s.mul.items())
    return doc


def structure_from_doc(doc: dict) -> FiniteStructure:
    try:
        kind = doc["kind"]
        elements = tuple(doc["elements"])
        vertices = set(doc["vertices"])
        src = dict(doc["src"])
        tgt = dict(doc["tgt"])
        inv = dict(doc["inv"]) if "inv" in doc else None
        mul = None
        if "mul" in doc:
            mul = {(g, h): p for g, h, p in doc["mul"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise BadParameter(f"malformed structure document: {exc}") from exc
    return FiniteStructure(kind, elements, vertices, src, tgt, inv, mul)


def partition_doc(r: Partition) -> dict:
    return {"classes": sorted(list(c) for c in r.classes if len(c) > 1)}


def partition_from_doc(doc: dict, carrier: FiniteStructure) -> Partition:
    try:
        classes = [list(c) for c in doc["classes"]]
    except (KeyError, TypeError) as exc:
        raise BadParameter(f"malformed partition document: {exc}") from exc
    return Partition.from_classes(carrier, classes)


def filterbase_doc(i: FilterBase) -> dict:
    return {
        "carrier": structure_doc(i.carrier),
        "law": i.law.value,
        "members": [partition_doc(m) for m in i.members],
    }


def filterbase_from_doc(doc: dict, base_dir: Path | None = None) -> FilterBase:
    try:
        raw = doc["carrier"]
        if isinstance(raw, str):
            path = Path(raw)
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            carrier = structure_from_doc(json.loads(path.read_text(encoding="utf-8")))
        else:
            carrier = structure_from_doc(raw)
        law = LawTag(doc.get("law", "compatible"))
        members = tuple(partition_from_doc(m, carrier) for m in doc["members"])
    except (KeyError, TypeError, ValueError, OSError) as exc:
        raise BadParameter(f"malformed filter base document: {exc}") from exc
    return FilterBase(carrier, members, law)


def system_doc(sys: InverseSystem) -> dict:
    doc: dict[str, Any] = {
        "labels": list(sys.labels),
        "levels": [structure_doc(level) for level in sys.levels],
        "bondings": [dict(sorted(b.table.items())) for b in sys.bondings],
    }
    if sys.name is not None:
        doc["generator"] = sys.name
        doc["max_level"] = sys.labels[-1]
    return doc


def system_from_doc(doc: dict) -> InverseSystem:
    if "generator" in doc:
        name = doc["generator"]
        try:
            max_level = int(doc["max_level"])
        except (KeyError, TypeError, ValueError) as exc:
            raise BadParameter("generator documents need an integer max_level") from exc
        made = fx.generate(name, max_level)
        if not isinstance(made, InverseSystem):
            raise BadParameter(f"generator {name!r} does not build a system")
        return made
    try:
        levels = tuple(structure_from_doc(d) for d in doc["levels"])
        labels = tuple(int(n) for n in doc.get("labels", range(1, len(levels) + 1)))
        bondings = tuple(
            StructureMap(
                levels[k + 1],
                levels[k],
                dict(doc["bondings"][k]),
                ca.laws_for_kind(levels[k].kind),
            )
            for k in range(len(levels) - 1)
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise BadParameter(f"malformed system document: {exc}") from exc
    if len(labels) != len(levels):
        raise BadParameter("labels and levels differ in length")
    return InverseSystem(levels, bondings, labels)


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise BadParameter(f"cannot read JSON from {path}: {exc}") from exc


def load_structure(path: str | Path) -> FiniteStructure:
    return structure_from_doc(load_json(path))


def load_partition(path: str | Path, carrier: FiniteStructure) -> Partition:
    return partition_from_doc(load_json(path), carrier)


def load_filterbase(path: str | Path) -> FilterBase:
    return filterbase_from_doc(load_json(path), Path(path).parent)


def load_system(path: str | Path) -> InverseSystem:
    return system_from_doc(load_json(path))
