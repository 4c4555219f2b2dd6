"""Command-line entry point: extract, convert, query, eval.

Data goes to standard output unless ``-o`` is given; diagnostics always go
to standard error.  Exit codes: 0 success, 1 validation error, 2 usage
error.
"""

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import conllu, diagram, extract, labels, query, scoring, table
from .config import ExtractionConfig, load_config


@dataclass(frozen=True)
class RunManifest:
    command: str
    inputs: tuple
    output: str | None
    config: str | None
    heuristics: bool
    lenient: bool
    label_map: str | None
    query_text: str | None


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="clausekit",
        description="Extract draft deontic clauses from dependency-parsed "
                    "normative text, convert clause tables to C-O Diagram "
                    "models, query the models, and score extractions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", help="CoNLL-U to clause table TSV")
    p_extract.add_argument("input", help="CoNLL-U file")
    p_extract.add_argument("-o", dest="output", help="output TSV path")
    p_extract.add_argument("--no-heuristics", action="store_true",
                           help="run the rule layer only")
    p_extract.add_argument("--config", help="extraction config JSON")
    p_extract.add_argument("--label-map", help="label map JSON override")

    p_convert = sub.add_parser("convert", help="clause table TSV to model JSON")
    p_convert.add_argument("input", help="clause table TSV file")
    p_convert.add_argument("-o", dest="output", help="output JSON path")

    p_query = sub.add_parser("query", help="run a syntactic query on a model")
    p_query.add_argument("input", help="model JSON file")
    p_query.add_argument("-q", dest="query", required=True,
                         help='query expression, e.g. "(exists (isObl))"')

    p_eval = sub.add_parser("eval", help="score an extraction against gold")
    p_eval.add_argument("--output", required=True, help="extracted table TSV")
    p_eval.add_argument("--gold", required=True, help="gold table TSV")
    p_eval.add_argument("--lenient", action="store_true",
                        help="match on head words instead of full strings")
    return parser


def _manifest(args):
    if args.command == "extract":
        inputs = (args.input,) + ((args.config,) if args.config else ()) \
            + ((args.label_map,) if args.label_map else ())
        return RunManifest("extract", inputs, args.output, args.config,
                           not args.no_heuristics, False, args.label_map, None)
    if args.command == "convert":
        return RunManifest("convert", (args.input,), args.output, None,
                           True, False, None, None)
    if args.command == "query":
        return RunManifest("query", (args.input,), None, None,
                           True, False, None, args.query)
    return RunManifest("eval", (args.output, args.gold), None, None,
                       True, args.lenient, None, None)


def _check_inputs(manifest):
    for path in manifest.inputs:
        p = Path(path)
        if not p.is_file():
            raise FileNotFoundError(f"input file not found: {path}")


def _write_output(manifest, text):
    if manifest.output:
        Path(manifest.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _run_extract(args, manifest):
    cfg = load_config(args.config) if args.config else ExtractionConfig()
    if args.no_heuristics:
        cfg = cfg.without_heuristics()
    label_map = labels.LabelMap.load(args.label_map) if args.label_map \
        else labels.LabelMap.default()

    with open(args.input, "rb") as f:
        trees = conllu.parse_conllu(f)
    groups = []
    for tree in trees:
        mapped = labels.map_labels(tree, label_map)
        unknown = labels.unknown_labels(mapped)
        if unknown:
            print(f"warning: sentence {tree.sentence_id} keeps unmapped "
                  f"labels: {', '.join(unknown)}", file=sys.stderr)
        rows = extract.extract_clauses(mapped, cfg)
        groups.append(table.SentenceGroup(mapped.sentence_id, mapped.text,
                                          tuple(rows)))
    doc = table.ClauseTable(document_id=Path(args.input).stem,
                            groups=tuple(groups))
    _write_output(manifest, table.to_tsv(doc))


def _run_convert(args, manifest):
    with open(args.input, "rb") as f:
        doc = table.from_tsv(f, document_id=Path(args.input).stem)
    model = diagram.from_table(doc)
    findings = diagram.validate(model)
    for finding in findings:
        print(f"warning: {finding.box_name}: {finding.message}", file=sys.stderr)
    _write_output(manifest, diagram.to_json(model))


def _run_query(args, manifest):
    with open(args.input, "rb") as f:
        model = diagram.from_json(f)
    q = query.parse_query(args.query)
    result = query.eval_query(q, model)
    if isinstance(result, bool):
        _write_output(manifest, ("true" if result else "false") + "\n")
    else:
        _write_output(manifest, "".join(name + "\n" for name in result))


def _run_eval(args, manifest):
    with open(args.output, "rb") as f:
        out_table = table.from_tsv(f, document_id=Path(args.output).stem)
    with open(args.gold, "rb") as f:
        gold_table = table.from_tsv(f, document_id=Path(args.gold).stem)
    report = scoring.score(out_table, gold_table, lenient=args.lenient)
    text = scoring.render_report([report]) \
        + scoring.render_field_breakdown(report)
    _write_output(manifest, text)


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    manifest = _manifest(args)
    try:
        _check_inputs(manifest)
        if args.command == "extract":
            _run_extract(args, manifest)
        elif args.command == "convert":
            _run_convert(args, manifest)
        elif args.command == "query":
            _run_query(args, manifest)
        elif args.command == "eval":
            _run_eval(args, manifest)
    except (OSError,
            ValueError,
            conllu.ConlluParseError,
            conllu.TreeStructureError,
            table.TableValidationError,
            diagram.DiagramError,
            diagram.DiagramSchemaError,
            query.QuerySyntaxError,
            scoring.ScoreAlignmentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
