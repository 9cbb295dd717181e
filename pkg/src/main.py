"""
nt-codes command line.

    python main.py construct --family projective --q 2 --t 3 --l 1
    python main.py analyze output/projective_q2_s1_t3.code
    python main.py verify 2nt --family unital --q 2 --s 2
    python main.py reproduce min-distance
    python main.py export generators --family ovoid --q 8

Records go to stdout, one per line; summaries and progress go to stderr.
"""

import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, List

from pydantic import ValidationError
from rich import progress
from rich.console import Console
from rich.progress import Progress
from rich.table import Table

from app.schemas.jobs import JobSpec
from app.schemas.reports import VerificationReport
from app.services import claim_factory
from app.services.build_timed_logger import error_logger
from app.services.code_analysis import analyze
from app.services.code_builder import (
    LinearCode,
    even_weight_code,
    family_code,
    family_pointset,
    grm_code,
    hamming_code,
    prm_subfield,
    repetition_code,
    rm_subfield_code,
)
from app.services.finite_field import field_of_size
from app.services.group_actions import family_generators
from app.services.verifier import THEOREM_CASES
from app.services.storage import (
    format_record,
    format_report,
    load_code,
    save_automorphisms,
    save_code,
    save_generator_set,
    save_pointset,
    save_report_batch,
    save_reports_csv,
)
from app.utils.exceptions import CodesException, UnknownClaimError
from app.utils.log_templates import log_error
from settings import ReportFormatEnum, settings

console = Console()
status_console = Console(stderr=True)


def emit(record: str):
    """One record per stdout line, printed verbatim"""
    console.print(record, markup=False, highlight=False, soft_wrap=True)


REPRODUCTION_GRIDS = (
    "min-distance",
    "local-transitivity",
    "theorem-case",
    "reed-muller",
    "design",
    "dichotomy",
    "scalar-twist",
)

CODE_BUILDERS: Dict[str, Callable[[JobSpec], LinearCode]] = {
    "projective": lambda spec: family_code("projective", spec.q, spec.s, spec.t, spec.k, spec.l),
    "affine": lambda spec: family_code("affine", spec.q, spec.s, spec.t, spec.k, spec.l),
    "unital": lambda spec: family_code("unital", spec.q, spec.s, spec.t, spec.k, spec.l),
    "ovoid": lambda spec: family_code("ovoid", spec.q, spec.s, spec.t, spec.k, spec.l),
    "grm": lambda spec: grm_code(spec.q, spec.l, spec.t),
    "rm": lambda spec: rm_subfield_code(spec.q, spec.s, spec.l, spec.t),
    "prm": lambda spec: prm_subfield(spec.q, spec.s, spec.l, spec.t, spec.k),
    "hamming": lambda spec: hamming_code(spec.q, spec.t),
    "repetition": lambda spec: repetition_code(spec.q, spec.n),
    "dual-repetition": lambda spec: even_weight_code(spec.q, spec.n),
}


def build_code(spec: JobSpec) -> LinearCode:
    return CODE_BUILDERS[spec.family](spec)


def _output_dir(spec: JobSpec) -> Path:
    return Path(spec.output_dir or settings.output_dir)


def _stem(spec: JobSpec) -> str:
    parts = [spec.family, f"q{spec.q}", f"s{spec.s}"]
    for name in ("t", "k", "l", "n"):
        value = getattr(spec, name)
        if value is not None and not (name == "k" and value == 1):
            parts.append(f"{name}{value}")
    return "_".join(parts)


def cmd_construct(spec: JobSpec) -> int:
    code = build_code(spec)
    path = save_code(code, _output_dir(spec) / f"{_stem(spec)}.code")
    emit(format_record({"name": code.name, "n": code.n, "dim": code.dim, "file": str(path)}, spec.json_output))
    return 0


def cmd_analyze(spec: JobSpec) -> int:
    code = load_code(spec.code_file)
    report = analyze(code, spec.codeword_cap, spec.vertex_cap, spec.threads)
    emit(format_record(report.dict(), spec.json_output))

    table = Table(title=code.name or str(spec.code_file))
    for column in ("n", "dim", "delta", "rho", "e", "perfect"):
        table.add_column(column)
    table.add_row(
        str(report.n),
        str(report.dim),
        str(report.min_distance) if report.min_distance else "-",
        str(report.covering_radius),
        str(report.error_capacity) if report.error_capacity is not None else "-",
        str(report.perfect),
    )
    status_console.print(table)
    return 0


def _emit_reports(reports: List[VerificationReport], spec: JobSpec) -> int:
    for report in reports:
        emit(format_report(report, spec.json_output))
    failing = [r for r in reports if r.unexpected_failure]
    expected = [r for r in reports if r.expected_failure]
    status_console.print(
        f"[green]{len(reports) - len(failing) - len(expected)} passed[/], "
        f"[yellow]{len(expected)} known discrepancies[/], "
        f"[red]{len(failing)} failed[/]"
    )
    return 1 if failing else 0


def cmd_verify(spec: JobSpec) -> int:
    runner = claim_factory.getClaim(spec.claim)
    return _emit_reports(runner(**spec.claim_params()), spec)


def run_reproduction(spec: JobSpec) -> List[VerificationReport]:
    grids = REPRODUCTION_GRIDS if spec.claim == "all" else (spec.claim,)
    runners = [claim_factory.getReproduction(grid) for grid in grids]
    reports: List[VerificationReport] = []
    with Progress(
        progress.TextColumn("[progress.description]{task.description}"),
        progress.BarColumn(),
        progress.MofNCompleteColumn(),
        progress.TimeElapsedColumn(),
        console=status_console,
    ) as bar:
        task = bar.add_task("[green]Reproducing:", total=len(runners))
        for grid, runner in zip(grids, runners):
            bar.update(task, description=f"[green]{grid}")
            reports.extend(runner(spec.threads))
            bar.advance(task)
    return reports


def cmd_reproduce(spec: JobSpec) -> int:
    return _emit_reports(run_reproduction(spec), spec)


def cmd_export(spec: JobSpec) -> int:
    """Writes a point set, a code, a generator set or a report table"""
    directory = _output_dir(spec)
    what = spec.claim
    if what == "pointset":
        pointset = family_pointset(spec.family, field_of_size(spec.q**spec.s), spec.t, spec.s)
        written = [save_pointset(pointset, directory / f"{_stem(spec)}.points")]
    elif what == "code":
        written = [save_code(build_code(spec), directory / f"{_stem(spec)}.code")]
    elif what == "generators":
        generators = family_generators(spec.family, field_of_size(spec.q**spec.s), spec.t, spec.k, spec.s)
        written = [
            save_generator_set(generators, directory / f"{_stem(spec)}.generators"),
            save_automorphisms(generators.automorphisms, directory / f"{_stem(spec)}.automorphisms.jsonl"),
        ]
    elif what == "reports":
        reports = run_reproduction(spec.copy(update={"claim": spec.grid}))
        stem = f"reports_{spec.grid}"
        written = [
            save_report_batch(reports, directory / f"{stem}.json"),
            save_reports_csv(reports, directory / f"{stem}.csv"),
        ]
    else:
        raise UnknownClaimError(f"Could not find export target '{what}'")
    for path in written:
        emit(format_record({"file": str(path)}, spec.json_output))
    return 0


COMMANDS: Dict[str, Callable[[JobSpec], int]] = {
    "construct": cmd_construct,
    "analyze": cmd_analyze,
    "verify": cmd_verify,
    "reproduce": cmd_reproduce,
    "export": cmd_export,
}


def _add_family_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--family")
    parser.add_argument("--q", type=int)
    parser.add_argument("--s", type=int, default=1)
    parser.add_argument("--t", type=int)
    parser.add_argument("--k", type=int, default=1)
    parser.add_argument("--l", type=int)
    parser.add_argument("--n", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nt-codes")
    parser.add_argument(
        "--json",
        action="store_true",
        default=settings.report_format == ReportFormatEnum.json,
        help="JSON records instead of key=value text (default from REPORT_FORMAT)",
    )
    parser.add_argument("--threads", type=int, default=settings.max_workers)
    parser.add_argument("--codeword-cap", type=int)
    parser.add_argument("--vertex-cap", type=int)
    parser.add_argument("--output-dir")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    construct = subparsers.add_parser("construct", help="build a code and write it to files")
    _add_family_arguments(construct)

    analyze_parser = subparsers.add_parser("analyze", help="parameters of a code file")
    analyze_parser.add_argument("code_file")

    verify = subparsers.add_parser("verify", help="run one claim check")
    verify.add_argument("claim")
    _add_family_arguments(verify)
    verify.add_argument("--level", type=int, default=2)
    verify.add_argument("--block-weight", type=int)
    verify.add_argument("--expected", type=int, help="expected minimum distance")
    verify.add_argument("--expected-case", choices=tuple(THEOREM_CASES))
    verify.add_argument("--expected-lambda", type=int)
    verify.add_argument(
        "--not-transitive", dest="transitive", action="store_false", help="a 2nt check expects intransitivity"
    )

    reproduce = subparsers.add_parser("reproduce", help="run a frozen reproduction grid")
    reproduce.add_argument("claim", choices=REPRODUCTION_GRIDS + ("all",))

    export = subparsers.add_parser("export", help="write a point set, code, generator set or report table")
    export.add_argument("claim", choices=("pointset", "code", "generators", "reports"))
    _add_family_arguments(export)
    export.add_argument("--grid", choices=REPRODUCTION_GRIDS + ("all",), default="all")
    return parser


def job_spec(args: argparse.Namespace) -> JobSpec:
    values = {key: value for key, value in vars(args).items() if value is not None and key != "json"}
    return JobSpec(**values, json_output=args.json)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = job_spec(args)
    except ValidationError as e:
        status_console.print(f"[red]invalid parameters:[/] {e}")
        return 2
    settings.max_workers = spec.threads
    if spec.codeword_cap is not None:
        settings.codeword_cap = spec.codeword_cap
    if spec.vertex_cap is not None:
        settings.vertex_cap = spec.vertex_cap
    try:
        return COMMANDS[spec.subcommand](spec)
    except CodesException as e:
        log_error(error_logger, spec.subcommand, spec.dict(), e)
        status_console.print(f"[red]error {int(e.error_code)}:[/] {e}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
