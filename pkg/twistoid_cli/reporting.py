"""
Records and tables emitted by the command line.

Records serialize to JSON with sorted keys and no floats; every number is an
integer and every rational is written as "n" or "n/d".
"""

from __future__ import annotations

import csv
import io
import json
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .exact_geometry import (
    TWIST_CLASSES,
    Centroid,
    InternalInconsistency,
    analyze_twist,
    axis_incidence,
    classify_twist_type,
    twist_type_representatives,
)
from .flag_complex_oracle import verify
from .params import (
    PARAMS_BY_KIND,
    DicosmAxialParams,
    DicosmDiagonalParams,
    ManifoldKind,
    TetracosmParams,
    TricosmParams,
    TwistoidParams,
    encoding,
)
from .platycosm_groups import HEXACOSM_MESSAGE, HexacosmImpossible
from .toroidal_covers import cover_class, cover_lattice
from .twistoid_classifier import (
    DEFORMABLE_COLUMNS,
    ClassificationReport,
    InvalidParameters,
    classify,
    family_catalog,
    table2_grid,
)

logger = logging.getLogger(__name__)

_RATIONAL = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def parse_rational(text: str, name: str) -> Fraction:
    if not _RATIONAL.match(text.strip()):
        raise InvalidParameters(f"{name} must be written as n or n/d, got {text!r}")
    return Fraction(text.strip())


def _scaled(value: Optional[str], name: str, scale: int) -> int:
    """Integer encoding scale * value, rejecting values off the 1/scale grid"""
    if value is None:
        raise InvalidParameters(f"missing parameter --{name}")
    scaled = parse_rational(value, name) * scale
    if scaled.denominator != 1:
        raise InvalidParameters(f"{name} must be a multiple of 1/{scale}, got {value}")
    return int(scaled)


def _diagonal_translation(options: Mapping[str, Optional[str]]) -> int:
    """N for c = N*sqrt2/2, given as --d (sqrt2 * c) or as --c in units of sqrt2/2"""
    d, c = options.get("d"), options.get("c")
    if d is None:
        return _scaled(c, "d" if c is None else "c", 1)
    if c is not None and _scaled(c, "c", 1) != _scaled(d, "d", 1):
        raise InvalidParameters(f"--c {c} and --d {d} name different translations")
    return _scaled(d, "d", 1)


def params_from_options(kind: ManifoldKind, options: Mapping[str, Optional[str]]) -> TwistoidParams:
    """Integer-encoded parameters from the rational command-line values"""
    if kind is ManifoldKind.HEXACOSM:
        raise HexacosmImpossible(HEXACOSM_MESSAGE)
    if kind is ManifoldKind.DICOSM_AXIAL:
        return DicosmAxialParams(
            _scaled(options.get("c"), "c", 1),
            _scaled(options.get("p1"), "p1", 2),
            _scaled(options.get("p2"), "p2", 2),
            _scaled(options.get("p3"), "p3", 2),
            _scaled(options.get("q3"), "q3", 2),
        )
    if kind is ManifoldKind.DICOSM_DIAGONAL:
        return DicosmDiagonalParams(
            _diagonal_translation(options),
            _scaled(options.get("p1"), "p1", 4),
            _scaled(options.get("p2"), "p2", 4),
            _scaled(options.get("p3"), "p3", 4),
            _scaled(options.get("q3"), "q3", 2),
        )
    if kind is ManifoldKind.TRICOSM:
        return TricosmParams(
            _scaled(options.get("m"), "m", 1),
            _scaled(options.get("a"), "a", 1),
            _scaled(options.get("b"), "b", 1),
        )
    return TetracosmParams(
        _scaled(options.get("c"), "c", 1),
        _scaled(options.get("p"), "p", 2),
        _scaled(options.get("q"), "q", 2),
    )


def params_from_record(record: Mapping) -> TwistoidParams:
    kind = ManifoldKind(record["manifold"])
    return PARAMS_BY_KIND[kind](**record["params"]["encoding"])


@dataclass(frozen=True)
class OutputRecord:
    report: ClassificationReport
    cover: Optional[dict] = None
    oracle: Optional[dict] = None

    def to_dict(self) -> dict:
        r = self.report
        data = {
            "manifold": r.kind.value,
            "params": {"encoding": encoding(r.params), "display": r.params.display()},
            "family": r.family_id,
            "rigid": sorted(r.profile.rigid_part),
            "deformable": r.profile.deformable_label,
            "flags": r.flag_count,
            "flagOrbits": r.flag_orbit_count,
            "identityComponentOrder": r.identity_component_order,
        }
        if self.cover is not None:
            data["cover"] = self.cover
        if self.oracle is not None:
            data["oracle"] = self.oracle
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False, separators=(",", ":"))

    def to_text(self) -> str:
        data = self.to_dict()
        shown = " ".join(f"{k}={v}" for k, v in data["params"]["display"].items())
        lines = [
            f"{data['manifold']} [{shown}]",
            f"  family: {data['family']}",
            f"  rigid: {', '.join(data['rigid']) or '-'}",
            f"  deformable: {data['deformable']}",
            f"  flags: {data['flags']}",
            f"  flag-orbits: {data['flagOrbits']}",
            f"  identity component: {data['identityComponentOrder']}",
        ]
        if self.cover is not None:
            lines.append(f"  cover: index {self.cover['index']}, class {self.cover['class']}")
        if self.oracle is not None:
            verdict = "PASS" if self.oracle["pass"] else "FAIL"
            lines.append(f"  oracle: {verdict} ({self.oracle['flags']} flags, {self.oracle['orbits']} orbits)")
        return "\n".join(lines)


CSV_HEADER = (
    "manifold", "params", "family", "rigid", "deformable", "flags", "flagOrbits",
    "identityComponentOrder", "coverIndex", "coverClass", "oraclePass",
)


def _csv_text(rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


def records_to_csv(records: list[OutputRecord]) -> str:
    rows = [CSV_HEADER]
    for record in records:
        data = record.to_dict()
        cover = data.get("cover") or {}
        oracle = data.get("oracle")
        rows.append((
            data["manifold"],
            " ".join(f"{k}={v}" for k, v in data["params"]["display"].items()),
            data["family"],
            " ".join(data["rigid"]),
            data["deformable"],
            data["flags"],
            data["flagOrbits"],
            data["identityComponentOrder"],
            cover.get("index", ""),
            cover.get("class", ""),
            "" if oracle is None else str(oracle["pass"]).lower(),
        ))
    return _csv_text(rows)


def cover_summary(params: TwistoidParams) -> dict:
    lat = cover_lattice(params)
    return {
        "t1": list(lat.t1),
        "t2": list(lat.t2),
        "t3": list(lat.t3),
        "index": lat.index,
        "class": cover_class(params).value,
    }


def oracle_summary(params: TwistoidParams, max_flags: Optional[int] = None) -> dict:
    result = verify(params, max_flags)
    return {"flags": result.flags, "orbits": result.orbits, "pass": result.passed}


def build_record(
    params: TwistoidParams,
    with_cover: bool = False,
    with_oracle: bool = False,
    max_flags: Optional[int] = None,
) -> OutputRecord:
    logger.debug(f"building record for {params}")
    report = classify(params)
    cover = cover_summary(report.params) if with_cover else None
    oracle = oracle_summary(report.params, max_flags) if with_oracle else None
    return OutputRecord(report, cover, oracle)


def table1_csv() -> str:
    """One row per conjugacy class of twists, recomputed from its representative"""
    rows = [("type", "period", "V", "E", "S", "C", "direction", "norm")]
    for twist_type, isometry in twist_type_representatives().items():
        data = analyze_twist(isometry)
        if classify_twist_type(data) is not twist_type:
            raise InternalInconsistency(f"representative of {twist_type.value} classifies differently")
        incidence = axis_incidence(data.axis_point, data.axis_direction)
        cls = TWIST_CLASSES[twist_type]
        rows.append((
            twist_type.value,
            data.rotation_order,
            *("yes" if c in incidence else "no" for c in Centroid),
            cls.direction_label,
            cls.norm_label,
        ))
    return _csv_text(rows)


def _table2_cell(params: Optional[DicosmAxialParams]) -> str:
    if params is None:
        return "None"
    shown = params.display()
    return " ".join(f"{k}={shown[k]}" for k in ("p1", "p2", "p3", "q3"))


def table2_csv() -> str:
    rows = [("row", *(column.value for column in DEFORMABLE_COLUMNS))]
    for label, cells in table2_grid():
        for column, params in zip(DEFORMABLE_COLUMNS, cells):
            if params is not None:
                report = classify(params)
                if report.family_id != f"{label}|{column.value}":
                    raise InternalInconsistency(f"{params} lands in {report.family_id}, not {label}|{column.value}")
        rows.append((label, *(_table2_cell(params) for params in cells)))
    return _csv_text(rows)


def families_csv() -> str:
    rows = [("manifold", "family", "flagOrbits", "witness", "witnessOrbits")]
    for entry in family_catalog():
        shown = " ".join(f"{k}={v}" for k, v in entry.witness.display().items())
        rows.append((entry.kind.value, entry.family_id, entry.orbit_formula, shown, classify(entry.witness).flag_orbit_count))
    return _csv_text(rows)


TABLES = {"table1": table1_csv, "table2": table2_csv, "families": families_csv}
