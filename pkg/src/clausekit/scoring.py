"""Precision/recall/F1 scoring of extractor output against gold tables.

The scored fields are Subject, Verb, Object and Modality.  Rows are
aligned per sentence group by greedy best-match pairing on Verb/Object
similarity; a field value counts as matched under case-insensitive exact
equality after whitespace normalization (or head-word equality in lenient
mode).  Extra output rows cost precision only, missing rows cost recall
only.
"""

import difflib
from dataclasses import dataclass, field

SCORED_FIELDS = ("Subject", "Verb", "Object", "Modality")
CONFIG_LABELS = ("rules_only", "rules_and_heuristics")


class ScoreAlignmentError(ValueError):
    pass


@dataclass(frozen=True)
class FieldCounts:
    matched: int = 0
    output_total: int = 0
    gold_total: int = 0

    def __add__(self, other):
        return FieldCounts(self.matched + other.matched,
                           self.output_total + other.output_total,
                           self.gold_total + other.gold_total)

    @property
    def precision(self):
        return self.matched / self.output_total if self.output_total else 0.0

    @property
    def recall(self):
        return self.matched / self.gold_total if self.gold_total else 0.0

    @property
    def f1(self):
        return f1_score(self.precision, self.recall)


@dataclass(frozen=True)
class ScoreReport:
    document_id: str
    config_label: str
    per_field: dict = field(default_factory=dict)   # field name -> FieldCounts

    @property
    def aggregate(self):
        total = FieldCounts()
        for counts in self.per_field.values():
            total = total + counts
        return total


def f1_score(precision, recall):
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def _normalize(value):
    if value is None:
        return ""
    return " ".join(value.split()).lower()


def _head_word(value):
    """Crude head for lenient matching: strip brackets, cut at ' of '."""
    text = _normalize(value).replace("[", "").replace("]", "")
    core = text.split(" of ")[0].strip()
    return core.split()[-1] if core.split() else ""


def _row_fields(row):
    return {"Subject": row.subject, "Verb": row.verb,
            "Object": row.object, "Modality": row.modality}


def _match(field_name, out_value, gold_value, lenient):
    a, b = _normalize(out_value), _normalize(gold_value)
    if a == b:
        return True
    if lenient and field_name in ("Subject", "Verb", "Object"):
        return _head_word(out_value) == _head_word(gold_value) != ""
    return False


def _pair_rows(out_rows, gold_rows):
    """Greedy alignment on Verb/Object similarity; ties keep document order.

    The score is symmetric in its two rows (exact matches first, then a
    string ratio computed on a canonical argument order), so swapping the
    output and gold tables swaps precision and recall exactly.
    """
    candidates = []
    for i, out in enumerate(out_rows):
        for j, gold in enumerate(gold_rows):
            exact = sum(
                int(_normalize(a) == _normalize(b) and _normalize(a) != "")
                for a, b in ((out.verb, gold.verb), (out.object, gold.object)))
            key_out = _normalize(out.verb) + "\x1f" + _normalize(out.object)
            key_gold = _normalize(gold.verb) + "\x1f" + _normalize(gold.object)
            first, second = sorted((key_out, key_gold))
            ratio = difflib.SequenceMatcher(None, first, second).ratio()
            candidates.append((-exact, -ratio, min(i, j), max(i, j), i, j))
    candidates.sort()
    used_out, used_gold, pairs = set(), set(), []
    for _exact, _ratio, _lo, _hi, i, j in candidates:
        if i in used_out or j in used_gold:
            continue
        used_out.add(i)
        used_gold.add(j)
        pairs.append((i, j))
    return pairs


def score(output, gold, lenient=False, config_label="rules_and_heuristics"):
    """ScoreReport for one document; tables must cover the same sentences."""
    if config_label not in CONFIG_LABELS:
        raise ValueError(f"unknown config label {config_label!r}")
    out_ids = [g.sentence_id for g in output.groups]
    gold_ids = [g.sentence_id for g in gold.groups]
    if out_ids != gold_ids:
        missing = [i for i in gold_ids if i not in out_ids]
        extra = [i for i in out_ids if i not in gold_ids]
        raise ScoreAlignmentError(
            "sentence ids differ between output and gold"
            + (f"; missing from output: {', '.join(missing)}" if missing else "")
            + (f"; extra in output: {', '.join(extra)}" if extra else ""))

    counts = {name: FieldCounts() for name in SCORED_FIELDS}
    for out_group, gold_group in zip(output.groups, gold.groups):
        pairs = _pair_rows(out_group.rows, gold_group.rows)
        paired_out = {i for i, _ in pairs}
        paired_gold = {j for _, j in pairs}
        for i, j in pairs:
            out_fields = _row_fields(out_group.rows[i])
            gold_fields = _row_fields(gold_group.rows[j])
            for name in SCORED_FIELDS:
                ov, gv = out_fields[name], gold_fields[name]
                matched = int(bool(_normalize(ov)) and bool(_normalize(gv))
                              and _match(name, ov, gv, lenient))
                counts[name] = counts[name] + FieldCounts(
                    matched,
                    int(bool(_normalize(ov))),
                    int(bool(_normalize(gv))))
        for i, row in enumerate(out_group.rows):
            if i in paired_out:
                continue
            for name, value in _row_fields(row).items():
                counts[name] = counts[name] + FieldCounts(0, int(bool(_normalize(value))), 0)
        for j, row in enumerate(gold_group.rows):
            if j in paired_gold:
                continue
            for name, value in _row_fields(row).items():
                counts[name] = counts[name] + FieldCounts(0, 0, int(bool(_normalize(value))))

    return ScoreReport(document_id=output.document_id,
                       config_label=config_label,
                       per_field=counts)


def with_label(report, config_label):
    if config_label not in CONFIG_LABELS:
        raise ValueError(f"unknown config label {config_label!r}")
    return ScoreReport(report.document_id, config_label, dict(report.per_field))


# ---------------------------------------------------------------------------
# rendering

def render_report(reports, fmt="text"):
    """Table-style rendering, one row per document, one column block per
    configuration; a block with no report renders as em-dashes."""
    by_doc = {}
    for rep in reports:
        by_doc.setdefault(rep.document_id, {})[rep.config_label] = rep

    header = ["Document",
              "Rules only P", "R", "F1",
              "Rules & heuristics P", "R", "F1"]
    rows = []
    for doc_id, blocks in by_doc.items():
        cells = [doc_id]
        for label in CONFIG_LABELS:
            rep = blocks.get(label)
            if rep is None:
                cells.extend(["—", "—", "—"])
            else:
                agg = rep.aggregate
                cells.extend([f"{agg.precision:.2f}", f"{agg.recall:.2f}",
                              f"{agg.f1:.2f}"])
        rows.append(cells)

    if fmt == "tsv":
        lines = ["\t".join(header)]
        lines += ["\t".join(r) for r in rows]
        return "\n".join(lines) + "\n"

    widths = [max(len(header[i]), *(len(r[i]) for r in rows)) if rows
              else len(header[i]) for i in range(len(header))]
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(header))]
    for r in rows:
        lines.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(r)))
    return "\n".join(lines) + "\n"


def render_field_breakdown(report):
    lines = [f"document: {report.document_id} ({report.config_label})"]
    for name in SCORED_FIELDS:
        c = report.per_field[name]
        lines.append(f"  {name:<9} P={c.precision:.2f} R={c.recall:.2f} "
                     f"F1={c.f1:.2f}  (matched {c.matched}, "
                     f"output {c.output_total}, gold {c.gold_total})")
    agg = report.aggregate
    lines.append(f"  {'ALL':<9} P={agg.precision:.2f} R={agg.recall:.2f} "
                 f"F1={agg.f1:.2f}  (matched {agg.matched}, "
                 f"output {agg.output_total}, gold {agg.gold_total})")
    return "\n".join(lines) + "\n"
