"""Structured and text reports for the ``verify`` and ``analyze`` pipelines.

Structured reports are plain dicts of strings, bools and lists; rationals are
always canonical strings, never floats.  Exit codes are computed from the
report dict alone.
"""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .exact import format_scalar, to_strings
from .geometry import Geometry
from .soliton import SolitonInfeasible, SolitonSolution, Variant, classify, solve_soliton_constants
from .verify import verify_structure


def _vector_text(v) -> str:
    terms = []
    for k, x in enumerate(v):
        if x == 0:
            continue
        coeff = "" if x == 1 else "-" if x == -1 else f"{format_scalar(x)} "
        terms.append(f"{coeff}e{k + 1}")
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


def geometry_tables(geometry: Geometry) -> dict:
    """Connection and curvature tables, shared verbatim by every report."""
    R = geometry.curvature.riemann
    n = geometry.spec.dimension
    nonzero = [
        {"i": i + 1, "j": j + 1, "k": k + 1, "l": l + 1, "value": format_scalar(R[i, j, k, l])}
        for i, j, k, l in np.ndindex(R.shape)
        if R[i, j, k, l] != 0
    ]
    return {
        "connection": to_strings(geometry.connection.gamma),
        "curvature": {
            "riemann_nonzero": nonzero,
            "ricci": to_strings(geometry.curvature.ricci),
            "scalar": format_scalar(geometry.curvature.scalar),
        },
        "spec": {"name": geometry.spec.name, "dimension": n},
    }


def verify_report(geometry: Geometry, force: bool = False) -> dict:
    verification = verify_structure(geometry, force=force)
    failed = [r.identity for r in verification if r.failed]
    skipped = [r.identity for r in verification if r.status == "skipped"]
    report = geometry_tables(geometry)
    report["kind"] = "verify"
    report["verification"] = verification.to_dict()
    if not failed and not skipped:
        report["verdict"] = f"PASS: {geometry.spec.name} is Kenmotsu and every identity holds"
    else:
        report["verdict"] = f"FAIL: {', '.join(failed) or 'none failed'}" + (
            f"; {len(skipped)} derived identities skipped" if skipped else ""
        )
    return report


def analysis_report(geometry: Geometry, p=None, variant=Variant.CONFORMAL_ETA_EINSTEIN, force: bool = False) -> dict:
    variant = Variant(variant)
    spec = geometry.spec
    report = verify_report(geometry, force=force)
    report["kind"] = "analyze"
    result = solve_soliton_constants(spec, geometry.curvature, geometry.derivatives.lie_xi_g, p, variant)
    report["soliton"] = result.to_dict()
    params = result.parameters if isinstance(result, SolitonSolution) else result.candidate
    classification = classify(geometry, params, force=force)
    report["classification"] = classification.to_dict()
    if isinstance(result, SolitonInfeasible):
        report["verdict"] = f"FAIL: no {variant.value} soliton; residual nonzero at slot {tuple(result.slot)}"
    elif not classification.passed:
        bad = [c.identity for c in classification.checks if c.failed]
        report["verdict"] = f"FAIL: theorem cross-checks failed: {', '.join(bad)}"
    else:
        report["verdict"] = (
            f"PASS: {variant.value} soliton with lambda = {format_scalar(params.lam)}, "
            f"mu = {format_scalar(params.mu)}, r = {format_scalar(geometry.curvature.scalar)}"
        )
    return report


def exit_status(report: dict) -> int:
    """0 pass, 1 mathematical failure."""
    if report["kind"] == "verify":
        records = report["verification"]["records"]
        return 0 if all(r["status"] == "pass" for r in records) else 1
    if not report["soliton"]["feasible"]:
        return 1
    return 0 if all(c["status"] != "fail" for c in report["classification"]["checks"]) else 1


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _record_line(rec: dict) -> str:
    line = f"  [{rec['status']:>14}] {rec['identity']}"
    if rec.get("witness"):
        w = rec["witness"]
        line += f"  witness {tuple(w['slot'])} of '{w['part']}': {w['left']} != {w['right']}"
    elif rec.get("note") and rec["status"] != "pass":
        line += f"  ({rec['note']})"
    return line


def to_text(report: dict) -> str:
    """Human-readable rendering in the order connection, curvature, Ricci, checks."""
    spec = report["spec"]
    n = spec["dimension"]
    out = [f"manifold {spec['name']} (dimension {n})", "", "Levi-Civita connection:"]
    gamma = report["connection"]
    for i in range(n):
        row = [f"nabla_e{i + 1} e{j + 1} = {_vector_text([Fraction(x) for x in gamma[i][j]])}" for j in range(n)]
        out.append("  " + ",  ".join(row))
    out += ["", "Curvature R(ei,ej)ek (nonzero components):"]
    grouped: dict[tuple, list] = {}
    for e in report["curvature"]["riemann_nonzero"]:
        grouped.setdefault((e["i"], e["j"], e["k"]), [0] * n)[e["l"] - 1] = Fraction(e["value"])
    for (i, j, k), vec in grouped.items():
        out.append(f"  R(e{i},e{j})e{k} = {_vector_text(vec)}")
    if not grouped:
        out.append("  (flat)")
    out += ["", "Ricci tensor S:"]
    for row in report["curvature"]["ricci"]:
        out.append("  [" + ", ".join(f"{x:>5}" for x in row) + "]")
    out.append(f"scalar curvature r = {report['curvature']['scalar']}")
    out += ["", "Structure identities (" + report["verification"]["note"] + "):"]
    out += [_record_line(r) for r in report["verification"]["records"]]
    if report["kind"] == "analyze":
        sol = report["soliton"]
        out.append("")
        if sol["feasible"]:
            prm = sol["parameters"]
            out.append(
                f"Soliton ({prm['variant']}): lambda = {prm['lambda']}, mu = {prm['mu']}, p = {prm['p']}; "
                f"residual identically zero; scalar relation {'holds' if sol['scalar_relation'] else 'fails'}"
            )
        else:
            w = sol["witness"]
            out.append(f"Soliton ({sol['candidate']['variant']}): infeasible; residual {w['value']} at slot {tuple(w['slot'])}")
        cls = report["classification"]
        rr = cls["ricci_recurrence"]
        out += [
            "",
            "Classification:",
            f"  Kenmotsu: {cls['kenmotsu']}",
            f"  Ricci symmetric (nabla S = 0): {cls['ricci_symmetric']}",
            f"  eta-recurrent (nabla S = eta (x) S): {cls['eta_recurrent']}",
            f"  cyclic Ricci tensor: {cls['cyclic_parallel']}",
            f"  Ricci recurrence: {rr['category']}" + (f", A = {rr['one_form']}" if rr["category"] == "recurrent" else ""),
            f"  h = L_xi g + 2S + 2 mu eta(x)eta parallel: {cls['parallel_h']['nabla_h_zero']}, h(xi,xi) = {cls['parallel_h']['h_xi_xi']}",
            f"  d eta = 0: {cls['d_eta_zero']}",
            "  eta-Einstein: "
            + (
                f"S = {cls['eta_einstein']['a']} g + {cls['eta_einstein']['b']} eta(x)eta"
                if cls["eta_einstein"]["decomposable"]
                else f"no, witness slot {tuple(cls['eta_einstein']['witness'])}"
            ),
            "",
            "Theorem cross-checks:",
        ]
        out += [_record_line(c) for c in cls["checks"]]
    out += ["", report["verdict"]]
    return "\n".join(out) + "\n"
