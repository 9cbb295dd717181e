"""
Text formats for point sets, matrices, codes and generator sets, and the
report exports (one record per line, JSON batches, CSV tables).

Point set:  header `kind q s t n`, then one point per line (t element encodings).
Matrix:     header `size rows cols` (size of the entry field), then the rows.
Code:       `code q s <point set file or ->`, `name <name>`, then a Matrix block.
Generators: `generators <family> <count>`, `params <json>`, then count Matrix blocks.
"""

import json
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from app.schemas.reports import ReportBatch, VerificationReport
from app.services.code_builder import LinearCode
from app.services.finite_field import Field, field_of_size
from app.services.geometry import POINTSET_KINDS, PointSet, ProjPoint
from app.services.group_actions import GeneratorSet, HammingAutomorphism, code_alphabet
from app.services.linalg import Matrix
from app.utils.exceptions import CodesException, CorruptFileError
from settings import settings


def _ints(line: str, path) -> List[int]:
    try:
        return [int(x) for x in line.split()]
    except ValueError as e:
        raise CorruptFileError(f"{path}: expected integers, got '{line.strip()}'") from e


def _read_lines(path: Path) -> List[str]:
    try:
        with Path(path).open("r", encoding="utf-8") as f:
            return [line.rstrip("\n") for line in f if line.strip()]
    except FileNotFoundError as e:
        raise CorruptFileError(f"{path} does not exist") from e


def pointset_text(pointset: PointSet) -> str:
    lines = [pointset.header()]
    lines += [" ".join(str(x) for x in p.coords) for p in pointset.points]
    return "\n".join(lines) + "\n"


def parse_pointset(lines: Sequence[str], path="<text>") -> PointSet:
    if not lines:
        raise CorruptFileError(f"{path}: empty point set file")
    header = lines[0].split()
    if len(header) != 5 or header[0] not in POINTSET_KINDS:
        raise CorruptFileError(f"{path}: bad point set header '{lines[0]}'")
    kind = header[0]
    q, s, t, n = _ints(" ".join(header[1:]), path)
    if len(lines) - 1 != n:
        raise CorruptFileError(f"{path}: header announces {n} points, found {len(lines) - 1}")
    points = []
    for line in lines[1:]:
        coords = _ints(line, path)
        if len(coords) != t:
            raise CorruptFileError(f"{path}: point '{line}' does not have {t} coordinates")
        points.append(ProjPoint(tuple(coords)))
    try:
        return PointSet(field_of_size(q**s), t, kind, points, s)
    except CodesException as e:
        raise CorruptFileError(f"{path}: {e}") from e


def save_pointset(pointset: PointSet, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(pointset_text(pointset), encoding="utf-8")
    return path


def load_pointset(path: Path) -> PointSet:
    return parse_pointset(_read_lines(path), path)


def matrix_text(m: Matrix) -> str:
    lines = [f"{m.field.size} {m.rows} {m.cols}"]
    lines += [" ".join(str(x) for x in row) for row in m.tolist()]
    return "\n".join(lines) + "\n"


def parse_matrix(lines: Sequence[str], path="<text>", field: Optional[Field] = None) -> Tuple[Matrix, int]:
    """Parses one Matrix block from the start of lines; returns it with the lines consumed"""
    if not lines:
        raise CorruptFileError(f"{path}: missing matrix header")
    header = _ints(lines[0], path)
    if len(header) != 3:
        raise CorruptFileError(f"{path}: bad matrix header '{lines[0]}'")
    size, rows, cols = header
    if field is not None and field.size != size:
        raise CorruptFileError(f"{path}: matrix over a field of size {size}, expected {field.size}")
    if len(lines) - 1 < rows:
        raise CorruptFileError(f"{path}: header announces {rows} rows, found {len(lines) - 1}")
    entries = [_ints(line, path) for line in lines[1 : rows + 1]]
    if any(len(row) != cols for row in entries):
        raise CorruptFileError(f"{path}: a row does not have {cols} entries")
    try:
        return Matrix.from_rows(field or field_of_size(size), entries, cols), rows + 1
    except CodesException as e:
        raise CorruptFileError(f"{path}: {e}") from e


def save_matrix(m: Matrix, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(matrix_text(m), encoding="utf-8")
    return path


def load_matrix(path: Path) -> Matrix:
    lines = _read_lines(path)
    m, used = parse_matrix(lines, path)
    if used != len(lines):
        raise CorruptFileError(f"{path}: trailing lines after the matrix")
    return m


def save_code(code: LinearCode, path: Path, pointset_path: Optional[Path] = None) -> Path:
    """Writes the code and, when it has one, its point set next to it"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    reference = "-"
    if code.pointset is not None:
        pointset_path = Path(pointset_path or path.with_suffix(".points"))
        save_pointset(code.pointset, pointset_path)
        reference = pointset_path.name
    s = code_alphabet(code).s
    lines = [f"code {code.q} {s} {reference}", f"name {code.name}", matrix_text(code.gen)]
    path.write_text("\n".join(lines), encoding="utf-8")
    return path


def load_code(path: Path) -> LinearCode:
    path = Path(path)
    lines = _read_lines(path)
    if len(lines) < 3 or not lines[0].startswith("code ") or not lines[1].startswith("name"):
        raise CorruptFileError(f"{path}: not a code file")
    header = lines[0].split()
    if len(header) != 4:
        raise CorruptFileError(f"{path}: bad code header '{lines[0]}'")
    q, s = _ints(" ".join(header[1:3]), path)
    try:
        field = field_of_size(q**s)
    except CodesException as e:
        raise CorruptFileError(f"{path}: {e}") from e
    gen, used = parse_matrix(lines[2:], path, field)
    if used != len(lines) - 2:
        raise CorruptFileError(f"{path}: trailing lines after the generator matrix")
    pointset = None if header[3] == "-" else load_pointset(path.parent / header[3])
    try:
        return LinearCode(
            field,
            field.subfield_elements(s),
            gen,
            pointset,
            lines[1][len("name ") :],
            {"q": q, "s": s},
        )
    except CodesException as e:
        raise CorruptFileError(f"{path}: {e}") from e


def save_generator_set(generators: GeneratorSet, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [
        f"generators {generators.family} {len(generators.matrices)}",
        f"params {json.dumps(generators.params, sort_keys=True)}",
    ]
    lines += [matrix_text(m).rstrip("\n") for m in generators.matrices]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def load_generator_matrices(path: Path) -> Tuple[str, dict, List[Matrix]]:
    lines = _read_lines(path)
    header = lines[0].split() if lines else []
    if len(header) != 3 or header[0] != "generators" or len(lines) < 2 or not lines[1].startswith("params "):
        raise CorruptFileError(f"{path}: not a generator set file")
    family = header[1]
    (count,) = _ints(header[2], path)
    try:
        params = json.loads(lines[1][len("params ") :])
    except json.JSONDecodeError as e:
        raise CorruptFileError(f"{path}: bad params line") from e
    matrices, position = [], 2
    for _ in range(count):
        m, used = parse_matrix(lines[position:], path)
        matrices.append(m)
        position += used
    if position != len(lines):
        raise CorruptFileError(f"{path}: trailing lines after {count} matrices")
    return family, params, matrices


def save_automorphisms(automorphisms: Iterable[HammingAutomorphism], path: Path) -> Path:
    """One JSON object per line: the coordinate permutation and the alphabet tables"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        for g in automorphisms:
            f.write(json.dumps(g.export()) + "\n")
    return path


def load_automorphisms(path: Path) -> List[HammingAutomorphism]:
    automorphisms = []
    for line in _read_lines(path):
        try:
            record = json.loads(line)
            automorphisms.append(HammingAutomorphism(record["sigma"], record["alpha"]))
        except (json.JSONDecodeError, KeyError) as e:
            raise CorruptFileError(f"{path}: bad automorphism record") from e
        except CodesException as e:
            raise CorruptFileError(f"{path}: {e}") from e
    return automorphisms


def format_report(report: VerificationReport, as_json: bool = False, include_timing: bool = True) -> str:
    return format_record(report.record(include_timing=include_timing), as_json)


def format_record(record: dict, as_json: bool = False) -> str:
    """
    One line per record. Text records are `key=value` pairs in a fixed key
    order with JSON values; as_json prints the whole record as a JSON object.
    """
    if as_json:
        return json.dumps(record, sort_keys=True, ensure_ascii=False)
    return " ".join(
        f"{key}={json.dumps(value, sort_keys=True, separators=(',', ':'), ensure_ascii=False)}"
        for key, value in record.items()
    )


def save_report_batch(reports: List[VerificationReport], path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    batch = ReportBatch(version=settings.version, reports=reports)
    with path.open("w", encoding="utf-8") as f:
        json.dump(json.loads(batch.json(by_alias=True)), f, ensure_ascii=False, indent=2)
    return path


def load_report_batch(path: Path) -> ReportBatch:
    try:
        return ReportBatch.parse_file(path)
    except (ValueError, OSError) as e:
        raise CorruptFileError(f"{path}: {e}") from e


def reports_table(reports: List[VerificationReport]) -> pd.DataFrame:
    """Flat table with one row per report; nested values become dotted columns"""
    return pd.json_normalize([report.record() for report in reports])


def save_reports_csv(reports: List[VerificationReport], path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    reports_table(reports).to_csv(path, index=False, encoding="utf-8")
    return path
