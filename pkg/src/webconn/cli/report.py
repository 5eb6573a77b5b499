"""Running the pipeline on a parsed web file and rendering the results."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .. import assoc, conn, extract, rank
from ..errors import DegreeError, SlopeRequiredError, UnsupportedDegreeError
from ..kernel import exterior_derivative
from ..kernel import ppoly
from ..webdef import SlopeWeb, from_polynomial, from_slopes
from .parser import WebSpecFile

COMMANDS = ("classify", "invariants", "connection", "curvature", "rank", "trace-check", "analyze")


@dataclass
class Report:
    command: str
    sections: dict = field(default_factory=dict)


def build_web(spec: WebSpecFile):
    """WebEquation or SlopeWeb for the spec."""
    if spec.slopes is not None:
        if len(spec.slopes) != spec.degree:
            raise DegreeError(f"degree is {spec.degree} but {len(spec.slopes)} slopes were given")
        return from_slopes(spec.slopes, spec.base_point)
    return from_polynomial(list(spec.F), spec.base_point, spec.degree)


def _matrix(rows):
    return [[str(e) for e in r] for r in rows]


def _classify(web, out):
    lin = assoc.linearization_polynomial(web)
    out["linearization"] = {
        "P": ppoly.to_string(lin.P_poly),
        "effective_degree": lin.effective_degree,
        "L1": None if lin.L1 is None else str(lin.L1),
        "L2": None if lin.L2 is None else str(lin.L2),
    }
    out["classification"] = assoc.classify(web)


def _invariants(web, out):
    out["associated"] = [
        {"order": p.order, "U": ppoly.to_string(p.U_poly), "V": ppoly.to_string(p.V_poly)}
        for p in assoc.all_associated_polynomials(web)
    ]
    al = assoc.fundamental_form(web).alpha
    out["alpha"] = str(al)
    out["dalpha"] = str(exterior_derivative(al))


def _connection(web, out, experimental):
    out["system_matrix"] = _matrix(conn.system_matrix(web).rows())
    out["gamma"] = conn.connection_matrix(web, experimental).to_strings()


def _curvature(web, out, experimental):
    cd = conn.curvature(web, experimental)
    out["K"] = cd.K.to_strings()
    out["k_row"] = [str(k) for k in cd.k_row]
    out["k1_trace"] = str(conn.trace_curvature(web))
    if web.d == 4:
        out["normal_curvature"] = [str(k) for k in conn.normal_basis_curvature_4web(web)]


def _rank(web, out, experimental):
    rep = rank.web_rank(web, experimental)
    out["rank"] = {
        "kml": _matrix(rep.kml),
        "generic_rank": rep.generic_rank,
        "web_rank": rep.web_rank,
        "pi_d": rep.pi,
        "det_is_zero": rep.det_is_zero,
    }


def _trace(sw, out):
    rep = extract.trace_formula_check(sw)
    out["trace_check"] = {
        "triples": [list(t) for t in rep.triples],
        "blaschke": [str(b) for b in rep.blaschke],
        "sum": str(rep.sum),
        "k1": str(rep.k1_form),
        "residual": str(rep.residual),
    }


def run(command: str, spec: WebSpecFile, experimental: bool = False) -> Report:
    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}")
    experimental = experimental or spec.options.get("experimental", False)
    if spec.degree > conn.MAX_SUPPORTED_DEGREE and not experimental:
        raise UnsupportedDegreeError(
            f"degree {spec.degree} is above {conn.MAX_SUPPORTED_DEGREE}; rerun with --experimental")
    built = build_web(spec)
    sw = built if isinstance(built, SlopeWeb) else None
    web = built.web if sw else built
    out = {"input": spec.echo(), "warnings": list(web.warnings)}
    if command != "trace-check":
        out["discriminant"] = str(web.resultant)
    if command in ("classify", "analyze"):
        _classify(web, out)
    if command in ("invariants", "analyze"):
        if "linearization" not in out:
            _classify(web, out)
        _invariants(web, out)
    if command in ("connection", "curvature", "analyze"):
        _connection(web, out, experimental)
    if command in ("curvature", "analyze"):
        _curvature(web, out, experimental)
    if command in ("rank", "analyze"):
        _rank(web, out, experimental)
        if out["warnings"]:
            out["rank"]["note"] = "generic rank; the base point is not a regular point"
    if command == "trace-check":
        if sw is None:
            raise SlopeRequiredError("trace-check needs a web given by slopes")
        _trace(sw, out)
    elif command == "analyze" and sw is not None:
        _trace(sw, out)
    return Report(command, out)


def _text_value(key, value, indent=""):
    lines = []
    if isinstance(value, dict):
        lines.append(f"{indent}{key}:")
        for k, v in value.items():
            lines.extend(_text_value(k, v, indent + "  "))
    elif isinstance(value, list) and value and isinstance(value[0], list):
        lines.append(f"{indent}{key}:")
        for row in value:
            lines.append(f"{indent}  [ " + " | ".join(str(e) for e in row) + " ]")
    elif isinstance(value, list) and value and isinstance(value[0], dict):
        lines.append(f"{indent}{key}:")
        for item in value:
            lines.append(f"{indent}  - " + ", ".join(f"{k} = {v}" for k, v in item.items()))
    elif isinstance(value, list):
        lines.append(f"{indent}{key}: " + ("[" + ", ".join(str(e) for e in value) + "]"))
    elif isinstance(value, str) and "\n" in value:
        lines.append(f"{indent}{key}:")
        lines.extend(f"{indent}  {ln}" for ln in value.rstrip("\n").split("\n"))
    else:
        shown = "none" if value is None else (str(value).lower() if isinstance(value, bool) else value)
        lines.append(f"{indent}{key}: {shown}")
    return lines


def serialize_report(report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps({"command": report.command, **report.sections}, indent=2) + "\n"
    lines = [f"webconn {report.command}"]
    for k, v in report.sections.items():
        lines.extend(_text_value(k, v))
    return "\n".join(lines) + "\n"
