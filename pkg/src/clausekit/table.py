"""The clause table: ordered rows grouped by source sentence, TSV round-trip.

The TSV layout is the post-editing interchange format: one header line,
a ``#``-prefixed provenance comment per sentence group, one data row per
clause.  Attributed phrases render as ``S: ...`` / ``V: ...`` / ``O: ...``
joined by `` | ``.  Cell text therefore must not contain tabs, newlines,
or the `` | `` separator.
"""

from dataclasses import dataclass, field

MODALITIES = ("O", "P", "F", "D")
REFINEMENTS = ("AND", "OR", "SEQ")
ATTACHMENTS = ("S", "V", "O")

HEADER = ("Refinement", "Modality", "Subject", "Verb", "Object",
          "Time", "Adverbials", "Conditions", "Notes")


class TableValidationError(ValueError):
    def __init__(self, row_no, message):
        super().__init__(f"row {row_no}: {message}")
        self.row_no = row_no


@dataclass(frozen=True)
class ClauseRow:
    modality: str
    subject: str
    verb: str
    object: str | None = None
    refinement: str | None = None
    time: tuple = ()
    adverbials: tuple = ()
    conditions: tuple = ()
    notes: tuple = ()

    def __post_init__(self):
        if self.modality not in MODALITIES:
            raise ValueError(f"unknown modality {self.modality!r}")
        if self.refinement is not None and self.refinement not in REFINEMENTS:
            raise ValueError(f"unknown refinement {self.refinement!r}")
        for name in ("time", "adverbials", "conditions", "notes"):
            for attach, _text in getattr(self, name):
                if attach not in ATTACHMENTS:
                    raise ValueError(f"unknown attachment {attach!r} in {name}")

    @property
    def incomplete(self):
        return not self.verb


@dataclass(frozen=True)
class SentenceGroup:
    sentence_id: str
    text: str
    rows: tuple

    def __post_init__(self):
        if self.rows and self.rows[0].refinement is not None:
            raise ValueError(
                f"sentence {self.sentence_id}: first row must have no refinement")


@dataclass(frozen=True)
class ClauseTable:
    document_id: str
    groups: tuple = ()

    @property
    def rows(self):
        return [row for g in self.groups for row in g.rows]


def _render_phrases(phrases):
    return " | ".join(f"{attach}: {text}" for attach, text in phrases)


def _parse_phrases(cell, row_no, column):
    if not cell:
        return ()
    out = []
    for part in cell.split(" | "):
        head, sep, text = part.partition(": ")
        if not sep or head not in ATTACHMENTS:
            raise TableValidationError(
                row_no, f"{column} entry {part!r} lacks an S:/V:/O: attachment")
        out.append((head, text))
    return tuple(out)


def to_tsv(table):
    """Render the table; UTF-8 text with LF line endings."""
    lines = ["\t".join(HEADER)]
    for group in table.groups:
        lines.append(f"# {group.sentence_id}\t{group.text}")
        for row in group.rows:
            lines.append("\t".join([
                row.refinement or "",
                row.modality,
                row.subject,
                row.verb,
                row.object or "",
                _render_phrases(row.time),
                _render_phrases(row.adverbials),
                _render_phrases(row.conditions),
                _render_phrases(row.notes),
            ]))
            if row.incomplete:
                lines.append("#! incomplete row: empty Verb")
    return "\n".join(lines) + "\n"


def from_tsv(source, document_id="document"):
    """Inverse of to_tsv; validates structure and enumerations."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")

    lines = source.replace("\r\n", "\n").split("\n")
    if not lines or lines[0].split("\t") != list(HEADER):
        raise TableValidationError(1, "missing or wrong header row")

    groups = []
    current = None      # [sentence_id, text, rows]

    def flush():
        nonlocal current
        if current is not None:
            groups.append(SentenceGroup(current[0], current[1], tuple(current[2])))
            current = None

    ordinal = 0
    for row_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        if line.startswith("#!"):
            continue        # regenerated diagnostics
        if line.startswith("#"):
            flush()
            body = line[1:].strip()
            sid, sep, text = body.partition("\t")
            ordinal += 1
            current = [sid.strip() if sep else (sid.strip() or str(ordinal)),
                       text if sep else "", []]
            continue
        cells = line.split("\t")
        if len(cells) != len(HEADER):
            raise TableValidationError(
                row_no, f"expected {len(HEADER)} columns, got {len(cells)}")
        if current is None:
            ordinal += 1
            current = [str(ordinal), "", []]
        refinement = cells[0] or None
        if refinement is not None and refinement not in REFINEMENTS:
            raise TableValidationError(row_no, f"unknown refinement {refinement!r}")
        if refinement is not None and not current[2]:
            raise TableValidationError(
                row_no, "refinement on the first row of a sentence group")
        if cells[1] not in MODALITIES:
            raise TableValidationError(row_no, f"unknown modality {cells[1]!r}")
        current[2].append(ClauseRow(
            modality=cells[1],
            subject=cells[2],
            verb=cells[3],
            object=cells[4] or None,
            refinement=refinement,
            time=_parse_phrases(cells[5], row_no, "Time"),
            adverbials=_parse_phrases(cells[6], row_no, "Adverbials"),
            conditions=_parse_phrases(cells[7], row_no, "Conditions"),
            notes=_parse_phrases(cells[8], row_no, "Notes"),
        ))
    flush()
    return ClauseTable(document_id=document_id, groups=tuple(groups))
