"""Command-line entry point for zero-shot extraction pipelines."""

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

from src.app.dataset import load_dataset, validate_zero_shot_splits
from src.app.document import read_documents, read_lines, write_documents
from src.app.evaluator import evaluate
from src.app.pipeline import Pipeline
from src.app.pipeline_config import load_config
from src.app.report import format_report, write_metrics_json
from src.lib import (
    ComponentError,
    ConfigError,
    DatasetError,
    EvaluationError,
    ParseError,
    UnknownSplit,
)
from src.lib.component import ComponentKind
from src.lib.registry import list_components
from src.ui import RenderError
from src.ui.entities import EntityRenderer
from src.ui.relations import RelationRenderer

logger = logging.getLogger(__name__)

LOG_FORMAT = "[%(asctime)s][%(name)s][%(levelname)s] %(message)s"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_ZERO_SHOT_VIOLATION = 3

RENDERERS = {
    EntityRenderer.style: EntityRenderer,
    RelationRenderer.style: RelationRenderer,
}


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with the configuration exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def configure_logging(verbose: bool = False) -> None:
    """Log to stderr; ``ZSIE_LOG_LEVEL`` overrides the level chosen by ``--verbose``."""
    level = logging.INFO if verbose else logging.WARNING
    override = os.environ.get("ZSIE_LOG_LEVEL", "").strip().upper()
    named = logging.getLevelName(override) if override else None
    if isinstance(named, int):
        level = named
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)
    if override and not isinstance(named, int):
        logger.warning(f"Ignoring unknown ZSIE_LOG_LEVEL '{override}'")


def build_parser() -> CliParser:
    parser = CliParser(
        prog="zeroshot-ie",
        description="Zero-shot entity and relation extraction pipelines",
    )
    parser.add_argument("--verbose", action="store_true", help="Log progress at INFO level")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=CliParser)
    commands.required = True

    annotate = commands.add_parser("annotate", help="Annotate texts with a pipeline")
    annotate.add_argument("--config", required=True, help="Pipeline configuration JSON file")
    source = annotate.add_mutually_exclusive_group(required=True)
    source.add_argument("--text", action="append", help="Inline text to annotate (repeatable)")
    source.add_argument("--input", help="Text file (one document per line) or JSONL file of {\"text\": ...}")
    annotate.add_argument("--output", help="Output JSONL file (default: standard output)")
    annotate.add_argument("--batch-size", type=int, help="Override the configured batch size")
    annotate.add_argument("--workers", type=int, help="Override the configured worker count")
    annotate.add_argument("--no-timing", action="store_true", help="Omit per-stage timing from the output")

    evaluate_cmd = commands.add_parser("evaluate", help="Evaluate a pipeline on dataset splits")
    evaluate_cmd.add_argument("--config", required=True, help="Pipeline configuration JSON file")
    evaluate_cmd.add_argument("--dataset", required=True, help="Dataset directory")
    evaluate_cmd.add_argument("--splits", nargs="+", help="Splits to evaluate (default: every split present)")
    evaluate_cmd.add_argument("--output", default="metrics.json", help="Metrics JSON file (default: metrics.json)")
    evaluate_cmd.add_argument("--label", help="Pipeline label in the report (default: config file name)")
    evaluate_cmd.add_argument("--workers", type=int, help="Worker count (default: 1)")
    evaluate_cmd.add_argument(
        "--allow-overlap", action="store_true", help="Evaluate even if splits share class names"
    )

    render = commands.add_parser("render", help="Render annotated documents as HTML")
    render.add_argument("--input", required=True, help="Annotated documents JSONL file")
    render.add_argument("--style", choices=sorted(RENDERERS), default="ent", help="ent or rel (default: ent)")
    render.add_argument("--output-dir", required=True, help="Directory for the HTML files")

    validate = commands.add_parser("validate-dataset", help="Check that dataset splits share no classes")
    validate.add_argument("--dataset", required=True, help="Dataset directory")

    commands.add_parser("list-components", help="List registered components")
    return parser


def read_inputs(path) -> List[str]:
    """
    Texts to annotate from a file.

    ``.jsonl`` files hold one ``{"text": ...}`` object per line; any other file
    holds one document per non-empty line.

    Raises:
        ParseError: If a line is not UTF-8 or a JSONL line is malformed
    """
    path = Path(path)
    texts = []
    for line_number, line in read_lines(path):
        if not line.strip():
            continue
        if path.suffix != ".jsonl":
            texts.append(line)
            continue
        try:
            data = json.loads(line)
            text = data["text"]
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise ParseError(f"malformed input line: {e}", path=path, line_number=line_number) from e
        if not isinstance(text, str):
            raise ParseError("'text' must be a string", path=path, line_number=line_number)
        texts.append(text)
    return texts


def cmd_annotate(args) -> int:
    pipeline = Pipeline.from_file(args.config)
    texts = args.text if args.text is not None else read_inputs(args.input)
    docs = pipeline.annotate(texts, batch_size=args.batch_size, workers=args.workers)
    include_timing = not args.no_timing
    if args.output:
        write_documents(args.output, docs, include_timing=include_timing)
    else:
        for doc in docs:
            sys.stdout.write(json.dumps(doc.to_dict(include_timing=include_timing), ensure_ascii=False) + "\n")
    logger.info(f"Annotated {len(docs)} documents")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    config = load_config(args.config)
    dataset = load_dataset(args.dataset)
    report = validate_zero_shot_splits(dataset)
    if not report.ok:
        for violation in report.violations:
            print(f"zero-shot violation: {violation}", file=sys.stderr)
        if not args.allow_overlap:
            return EXIT_ZERO_SHOT_VIOLATION
        logger.warning("Evaluating despite shared classes (--allow-overlap)")
    split_names = args.splits or list(dataset)
    label = args.label or Path(args.config).stem
    results = {label: evaluate(config, dataset, split_names, workers=args.workers)}
    sys.stdout.write(format_report(results))
    write_metrics_json(results, args.output)
    return EXIT_OK


def cmd_render(args) -> int:
    docs = read_documents(args.input)
    renderer = RENDERERS[args.style]()
    output_dir = Path(args.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    for index, doc in enumerate(docs):
        path = output_dir / f"doc-{index:04d}.html"
        path.write_text(renderer.render(doc), encoding="utf-8")
    logger.info(f"Rendered {len(docs)} documents ({args.style}) to {output_dir}")
    return EXIT_OK


def cmd_validate_dataset(args) -> int:
    report = validate_zero_shot_splits(load_dataset(args.dataset))
    if report.ok:
        print("ok")
        return EXIT_OK
    for violation in report.violations:
        print(f"violation: {violation}")
    return EXIT_ZERO_SHOT_VIOLATION


def cmd_list_components(args) -> int:
    for descriptor in list_components():
        end_to_end = "-"
        if descriptor.kind == ComponentKind.LINKER:
            if descriptor.is_end_to_end is None:
                end_to_end = "depends"
            else:
                end_to_end = "yes" if descriptor.is_end_to_end else "no"
        print(f"{descriptor.key:<20} {descriptor.kind.value:<20} {end_to_end}")
    return EXIT_OK


COMMANDS = {
    "annotate": cmd_annotate,
    "evaluate": cmd_evaluate,
    "render": cmd_render,
    "validate-dataset": cmd_validate_dataset,
    "list-components": cmd_list_components,
}


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse ``argv`` and run one command.

    Returns:
        int: 0 on success, 1 on configuration or usage errors, 2 on I/O or
        parse errors, 3 when dataset splits share classes
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except UnknownSplit as e:
        logger.error(f"{e}")
        return EXIT_USAGE
    except UnicodeDecodeError as e:
        logger.error(f"Cannot decode input as UTF-8: {e}")
        return EXIT_IO
    except (ConfigError, ComponentError, ValueError) as e:
        logger.error(f"{e}")
        return EXIT_USAGE
    except (DatasetError, EvaluationError, RenderError, OSError) as e:
        logger.error(f"{e}")
        return EXIT_IO


def main():
    """Main application entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
