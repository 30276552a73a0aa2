"""CSV ingestion and serialization for the four fixture schemas.

All files are UTF-8 with a required header row; lines starting with ``#``
are comments. Blank cells mean "absent" for optional columns. Parse
errors carry the physical line number of the offending row (header and
comment lines count). Unknown extra columns are ignored on input so
fixtures can carry annotation columns.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .core import HorizonObservation, ModelBenchmarkObservation, TimeSeries, parse_instant
from .errors import SchemaError, ValidationError

KINDS = ("horizons", "compute_spend", "flop_per_usd", "family_benchmarks")


@dataclass(frozen=True)
class SpendRecord:
    year: float
    value: float
    unit: str  # "flop" | "usd"


@dataclass(frozen=True)
class FlopPerUsdRecord:
    year: float
    flop_per_usd: float


_REQUIRED = {
    "horizons": ["model_id", "developer", "release_date", "p50_minutes",
                 "p80_minutes", "training_flop"],
    "compute_spend": ["year", "value", "unit"],
    "flop_per_usd": ["year", "flop_per_usd"],
    "family_benchmarks": ["family", "model_id", "benchmark", "params", "tokens",
                          "training_flop", "horizon_minutes"],
}


def _float(cell: str, column: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise ValidationError(f"column {column!r}: cannot parse {cell!r}") from None
    if not math.isfinite(value):
        raise ValidationError(f"column {column!r}: non-finite value {cell!r}")
    return value


def _positive(cell: str, column: str) -> float:
    value = _float(cell, column)
    if value <= 0:
        raise ValidationError(f"column {column!r}: must be > 0, got {cell!r}")
    return value


def _optional_positive(cell: str, column: str) -> float | None:
    if cell.strip() == "":
        return None
    return _positive(cell, column)


def _parse_horizons_row(get: Callable[[str], str]) -> HorizonObservation:
    in_sample_cell = get("in_sample").strip()
    return HorizonObservation(
        model_id=get("model_id").strip(),
        developer=get("developer").strip(),
        release=parse_instant(get("release_date")),
        p50_minutes=_optional_positive(get("p50_minutes"), "p50_minutes"),
        p80_minutes=_optional_positive(get("p80_minutes"), "p80_minutes"),
        training_flop=_optional_positive(get("training_flop"), "training_flop"),
        in_sample=in_sample_cell not in ("0", "false", "no")
    )


def _parse_spend_row(get: Callable[[str], str]) -> SpendRecord:
    unit = get("unit").strip().lower()
    if unit not in ("flop", "usd"):
        raise ValidationError(f"column 'unit': expected flop|usd, got {unit!r}")
    return SpendRecord(
        year=_float(get("year"), "year"),
        value=_positive(get("value"), "value"),
        unit=unit,
    )


def _parse_flop_per_usd_row(get: Callable[[str], str]) -> FlopPerUsdRecord:
    return FlopPerUsdRecord(
        year=_float(get("year"), "year"),
        flop_per_usd=_positive(get("flop_per_usd"), "flop_per_usd"),
    )


def _parse_family_row(get: Callable[[str], str]) -> ModelBenchmarkObservation:
    return ModelBenchmarkObservation(
        family=get("family").strip(),
        model_id=get("model_id").strip(),
        benchmark=get("benchmark").strip(),
        params_count=_positive(get("params"), "params"),
        tokens_count=_positive(get("tokens"), "tokens"),
        training_flop=_positive(get("training_flop"), "training_flop"),
        horizon_minutes=_positive(get("horizon_minutes"), "horizon_minutes"),
    )


_ROW_PARSERS = {
    "horizons": _parse_horizons_row,
    "compute_spend": _parse_spend_row,
    "flop_per_usd": _parse_flop_per_usd_row,
    "family_benchmarks": _parse_family_row,
}


def parse_csv(kind: str, text: bytes | str) -> list:
    """Parse one of the four fixture schemas into typed records.

    Row order is preserved. All invalid rows are collected and reported
    together in a single :class:`ValidationError` naming their physical
    line numbers; a missing required column raises :class:`SchemaError`.
    """
    if kind not in KINDS:
        raise SchemaError(f"unknown csv kind {kind!r}; expected one of {KINDS}")
    if isinstance(text, bytes):
        text = text.decode("utf-8")

    numbered = [
        (i + 1, line) for i, line in enumerate(text.splitlines())
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not numbered:
        raise SchemaError(f"{kind}: empty file (header row required)")

    header = next(csv.reader(io.StringIO(numbered[0][1])))
    columns = {name.strip(): idx for idx, name in enumerate(header)}
    missing = [c for c in _REQUIRED[kind] if c not in columns]
    if missing:
        raise SchemaError(f"{kind}: missing required column(s) {missing}")

    parse_row = _ROW_PARSERS[kind]
    records = []
    errors: list[str] = []
    for lineno, line in numbered[1:]:
        cells = next(csv.reader(io.StringIO(line)))

        def get(column: str, _cells=cells) -> str:
            idx = columns.get(column)
            if idx is None or idx >= len(_cells):
                return ""
            return _cells[idx]

        try:
            records.append(parse_row(get))
        except ValidationError as exc:
            errors.append(f"row {lineno}: {exc}")
    if errors:
        raise ValidationError(f"{kind}: invalid rows\n" + "\n".join(errors))
    return records


def _fmt(value: float | None) -> str:
    return "" if value is None else repr(float(value))


def serialize_csv(kind: str, records: Sequence) -> str:
    """Inverse of :func:`parse_csv`; numeric fields round-trip exactly."""
    if kind not in KINDS:
        raise SchemaError(f"unknown csv kind {kind!r}; expected one of {KINDS}")
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if kind == "horizons":
        writer.writerow(_REQUIRED[kind] + ["in_sample"])
        for r in records:
            writer.writerow([
                r.model_id, r.developer, _fmt(r.release), _fmt(r.p50_minutes),
                _fmt(r.p80_minutes), _fmt(r.training_flop),
                "1" if r.in_sample else "0",
            ])
    elif kind == "compute_spend":
        writer.writerow(_REQUIRED[kind])
        for r in records:
            writer.writerow([_fmt(r.year), _fmt(r.value), r.unit])
    elif kind == "flop_per_usd":
        writer.writerow(_REQUIRED[kind])
        for r in records:
            writer.writerow([_fmt(r.year), _fmt(r.flop_per_usd)])
    else:
        writer.writerow(_REQUIRED[kind])
        for r in records:
            writer.writerow([
                r.family, r.model_id, r.benchmark, _fmt(r.params_count),
                _fmt(r.tokens_count), _fmt(r.training_flop), _fmt(r.horizon_minutes),
            ])
    return out.getvalue()


def spend_to_series(records: Sequence[SpendRecord]) -> tuple[str, TimeSeries]:
    """Collapse spend records into a series, requiring a single unit."""
    if not records:
        raise ValidationError("no spend records")
    units = {r.unit for r in records}
    if len(units) > 1:
        raise ValidationError(f"mixed spend units {sorted(units)}; split the file")
    ordered = sorted(records, key=lambda r: r.year)
    return ordered[0].unit, TimeSeries(
        [r.year for r in ordered], [r.value for r in ordered]
    )


def flop_per_usd_series(records: Sequence[FlopPerUsdRecord]) -> TimeSeries:
    ordered = sorted(records, key=lambda r: r.year)
    return TimeSeries([r.year for r in ordered], [r.flop_per_usd for r in ordered])
