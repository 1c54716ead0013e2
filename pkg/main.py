"""
hopfdesk Launcher

This script is the command-line entry point. It loads a task document, runs either the
document's own task list or a single task given by flags, and prints a report.

Usage:
    python main.py run tasks/c2fix_t3_15.json
    python main.py check tasks/c2fix_t3_15.json
    python main.py hom tasks/c2fix_t3_15.json --source T --target R --equivariant
    python main.py ext tasks/f2_group_cohomology.json --source trivial --target trivial --context mod_smash --degree 3
    python main.py ss tasks/c2fix_t3_15.json --theorem T3_15 --source T --target T --degree 3 --format json

Exit codes: 0 when every verdict passes, 1 on a computation mismatch, 2 on invalid input.
"""

import argparse
import logging
import sys
from typing import List, Optional

from config.settings import DESK, LOGGING
from desk import HopfDesk
from util.document import CHECK, COLINEAR, EQUIVARIANT, EXT, HOM, PLAIN, SS, build_task, load_document
from util.errors import DocumentError
from util.homological import CONTEXTS
from util.report import EXIT_CODES, INVALID, exit_code, render
from util.spectral import THEOREMS

# Configure logger
logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopfdesk", description="Hopf algebra module categories at desk scale")
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("file", help="task document (JSON)")
        sub.add_argument("--format", choices=("text", "json"), default=DESK["output_format"])
        return sub

    command("run", "run the document's task list")
    command(CHECK, "validate every structure in the document")
    hom = command(HOM, "Hom between two modules")
    ext = command(EXT, "Ext groups in a context")
    ss = command(SS, "a Grothendieck spectral sequence")
    for sub in (hom, ext, ss):
        sub.add_argument("--source", required=True)
        sub.add_argument("--target", required=True)
    mode = hom.add_mutually_exclusive_group()
    mode.add_argument("--equivariant", action="store_true", help="H-action on Hom, invariants vs smash Hom")
    mode.add_argument("--colinear", action="store_true", help="rational coaction on Hom, coinvariants vs colinear maps")
    ext.add_argument("--context", required=True, choices=CONTEXTS)
    ss.add_argument("--theorem", required=True, choices=THEOREMS)
    for sub in (ext, ss):
        sub.add_argument("--degree", type=int, default=DESK["default_degree"])
    return parser


def task_data(args: argparse.Namespace) -> Optional[dict]:
    """The single task described by the flags, or None for `run`."""
    if args.command == "run":
        return None
    data = {"kind": args.command}
    if args.command == CHECK:
        return data
    data.update(source=args.source, target=args.target)
    if args.command == HOM:
        data["mode"] = EQUIVARIANT if args.equivariant else COLINEAR if args.colinear else PLAIN
    elif args.command == EXT:
        data.update(context=args.context, degree=args.degree)
    else:
        data.update(theorem=args.theorem, degree=args.degree)
    return data


def main(argv: List[str] = None) -> int:
    """
    Main function: parse flags, load the document, run the tasks, print the report.

    Returns:
        int: The process exit code.
    """
    logging.basicConfig(level=LOGGING["level"], format=LOGGING["format"], stream=sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        document = load_document(args.file, DESK["default_degree"], DESK["max_degree"])
        data = task_data(args)
        tasks = document.tasks if data is None else [
            build_task(document, data, 1, DESK["default_degree"], DESK["max_degree"])]
    except DocumentError as e:
        logger.error(f"Invalid document: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CODES[INVALID]
    desk = HopfDesk(document)
    results = [desk.run_task(task) for task in tasks]
    sys.stdout.write(render(document.name, results, args.format))
    return exit_code(results)


if __name__ == "__main__":
    sys.exit(main())
