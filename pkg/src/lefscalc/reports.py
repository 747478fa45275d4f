"""Typed command reports with a stable JSON form.

Every command prints exactly one report.  Reports serialize to plain JSON
(sorted keys, deterministic ordering of every list) and parse back to an
equal report, so downstream tooling can diff command output structurally.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields

from .errors import ParseError
from .exact import GaussianRational


def _gaussian_from(x) -> GaussianRational:
    try:
        return GaussianRational.of(x)
    except (ParseError, TypeError, ValueError) as exc:
        raise ParseError(f"invalid Gaussian rational {x!r}: {exc}") from exc


def _plain(value):
    """Recursively normalize to JSON-safe content (tuples become lists)."""
    if isinstance(value, GaussianRational):
        return value.to_json()
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    return value


def _frozen(value):
    """Recursively normalize parsed JSON for structural equality."""
    if isinstance(value, list):
        return tuple(_frozen(v) for v in value)
    if isinstance(value, dict):
        if set(value) == {"re", "im"}:
            return _gaussian_from(value)
        return {k: _frozen(v) for k, v in value.items()}
    return value


@dataclass(frozen=True)
class Report:
    """Base class; concrete reports define KIND and their payload fields."""

    KIND = "report"

    def to_json(self) -> dict:
        data = {"kind": type(self).KIND}
        for f in fields(self):
            data[f.name] = _plain(getattr(self, f.name))
        return data

    def to_text(self) -> str:
        lines = [f"kind: {type(self).KIND}"]
        for f in fields(self):
            value = _plain(getattr(self, f.name))
            if isinstance(value, (list, dict)):
                value = json.dumps(value, sort_keys=True)
            lines.append(f"{f.name}: {value}")
        return "\n".join(lines)

    @classmethod
    def from_json(cls, data: dict) -> "Report":
        if not isinstance(data, dict):
            raise ParseError("report must be a JSON object")
        if data.get("kind") != cls.KIND:
            raise ParseError(
                f"expected a {cls.KIND!r} report, got {data.get('kind')!r}"
            )
        names = {f.name for f in fields(cls)}
        extra = sorted(set(data) - names - {"kind"})
        if extra:
            raise ParseError(f"unknown report fields {extra}")
        kwargs = {}
        for f in fields(cls):
            if f.name not in data:
                raise ParseError(f"report misses field {f.name!r}")
            kwargs[f.name] = _frozen(data[f.name])
        return cls(**kwargs)


@dataclass(frozen=True)
class ChiReport(Report):
    KIND = "chi"
    chi: int


@dataclass(frozen=True)
class IntegralReport(Report):
    KIND = "integral"
    integral: GaussianRational


@dataclass(frozen=True)
class LefschetzReport(Report):
    KIND = "lefschetz"
    global_trace: GaussianRational
    degree_traces: tuple  # ((k, trace), ...)


@dataclass(frozen=True)
class LocalizationReport(Report):
    KIND = "localization"
    global_trace: GaussianRational
    sum_of_local: GaussianRational
    equal: bool
    components: tuple  # ({component, cells, normal_dim, sign, integral, signed_contribution}, ...)


@dataclass(frozen=True)
class CycleTableJson(Report):
    KIND = "cycle-table"
    component: int
    regime: str
    sign: int
    table: tuple  # ((vertex, value), ...)
    total: GaussianRational


@dataclass(frozen=True)
class CcReport(Report):
    KIND = "cc"
    table: tuple  # ((vertex, value), ...)
    total: GaussianRational


@dataclass(frozen=True)
class IndexCheckReport(Report):
    KIND = "index-check"
    index_sum: GaussianRational
    integral: GaussianRational
    equal: bool


@dataclass(frozen=True)
class PushforwardReport(Report):
    KIND = "pushforward"
    values: tuple  # ((cell, value), ...)
    source_integral: GaussianRational
    target_integral: GaussianRational
    equal: bool


@dataclass(frozen=True)
class FlagModelReport(Report):
    KIND = "flag-model"
    n: int
    blocks: tuple
    cell_count: int
    chi: int
    component_count: int


@dataclass(frozen=True)
class WorkedExampleReport(Report):
    KIND = "worked-example"
    components: tuple  # ((label, family, contained, points, contribution), ...)
    total: GaussianRational
    chi_of_divisor: int


@dataclass(frozen=True)
class VerifyReport(Report):
    KIND = "verify"
    seed: int
    checks: tuple  # ((name, "ok"|"FAIL", detail), ...)
    all_ok: bool
    digest: str


REPORT_TYPES = {
    cls.KIND: cls
    for cls in (
        ChiReport,
        IntegralReport,
        LefschetzReport,
        LocalizationReport,
        CycleTableJson,
        CcReport,
        IndexCheckReport,
        PushforwardReport,
        FlagModelReport,
        WorkedExampleReport,
        VerifyReport,
    )
}


def parse_report(data) -> Report:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "kind" not in data:
        raise ParseError("report must be a JSON object with a kind")
    kind = data["kind"]
    if kind not in REPORT_TYPES:
        raise ParseError(f"unknown report kind {kind!r}")
    return REPORT_TYPES[kind].from_json(data)


def print_report(report: Report, as_json: bool) -> str:
    if as_json:
        return json.dumps(report.to_json(), sort_keys=True, indent=2)
    return report.to_text()
