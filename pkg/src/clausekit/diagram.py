"""C-O Diagram models: norm boxes built from clause tables, JSON round-trip.

A box carries agent, guard, time restriction, and either a leaf action
with a modality (O/P/F) or an AND/OR/SEQ refinement over child boxes.
Reparations reference another box by name; the distinguished name
``⊥`` marks an unrecoverable violation and always resolves.  Declarative
rows (modality D) become declaration facts rather than boxes.

Guards and time restrictions are kept as uninterpreted strings: the
extractor cannot produce formal constraint syntax, so structuring them is
a post-editing concern.
"""

import json
import logging
from dataclasses import dataclass, field

log = logging.getLogger(__name__)

BOTTOM = "⊥"       # ⊥
CONNECTIVES = ("AND", "OR", "SEQ")
LEAF_MODALITIES = ("O", "P", "F")


class DiagramError(ValueError):
    pass


class DiagramSchemaError(ValueError):
    """JSON input rejected; carries a JSON-pointer path to the violation."""

    def __init__(self, path, message):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path


@dataclass(frozen=True)
class Leaf:
    modality: str
    verb: str
    object: str | None = None


@dataclass(frozen=True)
class Refined:
    connective: str
    children: tuple


@dataclass(frozen=True)
class DiagramBox:
    name: str
    content: object                     # Leaf or Refined
    agent: str | None = None
    guard: tuple = ()
    time_restriction: tuple = ()
    annotations: tuple = ()
    reparation: str | None = None

    @property
    def is_leaf(self):
        return isinstance(self.content, Leaf)


@dataclass(frozen=True)
class CODiagram:
    document_id: str
    roots: tuple = ()
    declarations: tuple = ()            # (subject, verb, object) facts

    def boxes(self):
        """All boxes in document order (pre-order over each root)."""
        out = []
        stack = list(reversed(self.roots))
        while stack:
            box = stack.pop()
            out.append(box)
            if isinstance(box.content, Refined):
                stack.extend(reversed(box.content.children))
        return out


@dataclass(frozen=True)
class Finding:
    box_name: str
    message: str


def validate(diagram):
    """Invariant findings; empty list means the model is well formed."""
    findings = []
    names = {}
    boxes = diagram.boxes()
    for box in boxes:
        if box.name in names:
            findings.append(Finding(box.name, "duplicate box name"))
        names[box.name] = box
    for box in boxes:
        content = box.content
        if isinstance(content, Leaf):
            if content.modality not in LEAF_MODALITIES:
                findings.append(Finding(box.name,
                                        f"unknown modality {content.modality!r}"))
            if not content.verb:
                findings.append(Finding(box.name, "leaf action has empty verb"))
        elif isinstance(content, Refined):
            if content.connective not in CONNECTIVES:
                findings.append(Finding(box.name,
                                        f"unknown connective {content.connective!r}"))
            if len(content.children) < 2:
                findings.append(Finding(box.name, "children < 2"))
        else:
            findings.append(Finding(box.name, "box has no content"))
        if box.reparation is not None and box.reparation != BOTTOM \
                and box.reparation not in names:
            findings.append(Finding(box.name,
                                    f"dangling reparation {box.reparation!r}"))
    return findings


# ---------------------------------------------------------------------------
# construction from clause tables

def from_table(table):
    """One root box per sentence group; D-rows become declarations."""
    roots = []
    declarations = []
    for group in table.groups:
        leaves = []
        connectives = []
        for k, row in enumerate(group.rows, start=1):
            if not row.verb:
                raise DiagramError(
                    f"sentence {group.sentence_id}, row {k}: empty Verb, "
                    "the model requires an action")
            if row.modality == "D":
                declarations.append((row.subject, row.verb, row.object))
                continue
            name = f"{table.document_id}_{group.sentence_id}_{k}"
            leaves.append(DiagramBox(
                name=name,
                content=Leaf(row.modality, row.verb, row.object),
                agent=row.subject or None,
                guard=tuple(f"{a}: {t}" for a, t in row.conditions),
                time_restriction=tuple(f"{a}: {t}" for a, t in row.time),
                annotations=tuple(f"{a}: {t}" for a, t in
                                  list(row.adverbials) + list(row.notes)),
            ))
            connectives.append(row.refinement)
        if not leaves:
            continue
        if len(leaves) == 1:
            roots.append(leaves[0])
            continue
        joiners = [c or "AND" for c in connectives[1:]]
        base = f"{table.document_id}_{group.sentence_id}"
        if len(set(joiners)) == 1:
            roots.append(DiagramBox(name=base,
                                    content=Refined(joiners[0], tuple(leaves))))
        else:
            log.warning("sentence %s mixes connectives %s; nesting left-associatively",
                        group.sentence_id, sorted(set(joiners)))
            box = leaves[0]
            for i, (leaf, conn) in enumerate(zip(leaves[1:], joiners), start=1):
                name = base if i == len(joiners) else f"{base}_g{i}"
                box = DiagramBox(name=name, content=Refined(conn, (box, leaf)))
            roots.append(box)
    return CODiagram(document_id=table.document_id,
                     roots=tuple(roots), declarations=tuple(declarations))


# ---------------------------------------------------------------------------
# JSON serialization

def to_json(diagram, indent=2):
    return json.dumps(_diagram_dict(diagram), ensure_ascii=False, indent=indent) + "\n"


def _diagram_dict(diagram):
    return {
        "document_id": diagram.document_id,
        "declarations": [
            {"subject": s, "verb": v, "object": o}
            for s, v, o in diagram.declarations
        ],
        "roots": [_box_dict(b) for b in diagram.roots],
    }


def _box_dict(box):
    out = {
        "name": box.name,
        "agent": box.agent,
        "guard": list(box.guard),
        "time_restriction": list(box.time_restriction),
        "annotations": list(box.annotations),
        "reparation": box.reparation,
    }
    if isinstance(box.content, Leaf):
        out["kind"] = "leaf"
        out["modality"] = box.content.modality
        out["action"] = {"verb": box.content.verb, "object": box.content.object}
    else:
        out["kind"] = "refined"
        out["connective"] = box.content.connective
        out["children"] = [_box_dict(c) for c in box.content.children]
    return out


def from_json(source):
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        data = json.loads(source)
    except json.JSONDecodeError as exc:
        raise DiagramSchemaError("", f"not valid JSON: {exc}") from None
    return _diagram_from_dict(data)


def _expect(cond, path, message):
    if not cond:
        raise DiagramSchemaError(path, message)


def _string_list(value, path):
    _expect(isinstance(value, list), path, "expected a list")
    for i, item in enumerate(value):
        _expect(isinstance(item, str), f"{path}/{i}", "expected a string")
    return tuple(value)


def _diagram_from_dict(data):
    _expect(isinstance(data, dict), "", "expected an object")
    _expect("document_id" in data, "/document_id", "missing")
    _expect(isinstance(data["document_id"], str), "/document_id", "expected a string")
    decls = []
    for i, d in enumerate(data.get("declarations", [])):
        path = f"/declarations/{i}"
        _expect(isinstance(d, dict), path, "expected an object")
        _expect(isinstance(d.get("subject"), str), f"{path}/subject", "expected a string")
        _expect(isinstance(d.get("verb"), str), f"{path}/verb", "expected a string")
        obj = d.get("object")
        _expect(obj is None or isinstance(obj, str), f"{path}/object",
                "expected a string or null")
        decls.append((d["subject"], d["verb"], obj))
    roots_data = data.get("roots", [])
    _expect(isinstance(roots_data, list), "/roots", "expected a list")
    roots = tuple(_box_from_dict(b, f"/roots/{i}")
                  for i, b in enumerate(roots_data))
    return CODiagram(document_id=data["document_id"], roots=roots,
                     declarations=tuple(decls))


def _box_from_dict(data, path):
    _expect(isinstance(data, dict), path, "expected an object")
    _expect(isinstance(data.get("name"), str) and data["name"],
            f"{path}/name", "expected a non-empty string")
    kind = data.get("kind")
    _expect(kind in ("leaf", "refined"), f"{path}/kind",
            "expected 'leaf' or 'refined'")
    agent = data.get("agent")
    _expect(agent is None or isinstance(agent, str), f"{path}/agent",
            "expected a string or null")
    reparation = data.get("reparation")
    _expect(reparation is None or isinstance(reparation, str),
            f"{path}/reparation", "expected a string or null")
    guard = _string_list(data.get("guard", []), f"{path}/guard")
    time_restriction = _string_list(data.get("time_restriction", []),
                                    f"{path}/time_restriction")
    annotations = _string_list(data.get("annotations", []), f"{path}/annotations")

    if kind == "leaf":
        _expect(data.get("modality") in LEAF_MODALITIES, f"{path}/modality",
                f"expected one of {', '.join(LEAF_MODALITIES)}")
        action = data.get("action")
        _expect(isinstance(action, dict), f"{path}/action", "expected an object")
        _expect(isinstance(action.get("verb"), str) and action["verb"],
                f"{path}/action/verb", "expected a non-empty string")
        obj = action.get("object")
        _expect(obj is None or isinstance(obj, str), f"{path}/action/object",
                "expected a string or null")
        content = Leaf(data["modality"], action["verb"], obj)
    else:
        _expect(data.get("connective") in CONNECTIVES, f"{path}/connective",
                f"expected one of {', '.join(CONNECTIVES)}")
        children_data = data.get("children", [])
        _expect(isinstance(children_data, list), f"{path}/children",
                "expected a list")
        children = tuple(_box_from_dict(c, f"{path}/children/{i}")
                         for i, c in enumerate(children_data))
        content = Refined(data["connective"], children)

    return DiagramBox(name=data["name"], content=content, agent=agent,
                      guard=guard, time_restriction=time_restriction,
                      annotations=annotations, reparation=reparation)
