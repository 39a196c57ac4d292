"""Command surface shared by scripts/focc.py and the HTTP app.

Every command takes a RunRequest and returns a Report; ``exit_code`` turns a
report or an error into the process status.
"""
from __future__ import annotations

import argparse
import itertools
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from pydantic import ValidationError

from .bicomodule import (
    build_universal,
    cocommutator,
    decompose_bicomodule,
    delta_image,
    find_cointegral,
    generate_subbicomodule,
    is_simple_probe,
    simple_decomposition,
)
from .coalgebra import Coalgebra, coalgebra_from_document, validate_coalgebra
from .config import settings
from .duality import (
    check_duality,
    check_pairing_identities,
    dual_hopf,
    kernel_of_v,
    pairing_rank,
    tangent_space,
)
from .errors import CodiffError, InputError, PoleError
from .graphs import classify_set_foccs
from .hopf import (
    FiniteHopfAlgebra,
    HopfAlgebra,
    bicovariant_focc_from_yd,
    generate_yd_submodule,
    hopf_from_document,
    hopf_to_document,
    right_covariant_comodule,
    validate_hopf,
)
from .linalg import Subspace
from .models import CoalgebraDocument, HopfDocument, Report, RunRequest
from .presentations import as_coalgebra, build_builtin, list_builtins
from .qlie import build_qlie, certify_identities, classical_limit, standard_basis
from .scalar import ScalarField, parse_scalar
from .utils import parse_vector

logger = logging.getLogger("codiff.cli")

EXIT_OK, EXIT_INVALID, EXIT_INPUT, EXIT_INCOMPLETE = 0, 1, 2, 3


# loading


def load_structure(req: RunRequest) -> Coalgebra | HopfAlgebra:
    if req.document is not None and req.builtin:
        raise InputError("give either a built-in or a document, not both")
    if req.document is not None:
        try:
            if "product" in req.document:
                return hopf_from_document(HopfDocument.model_validate(req.document))
            return coalgebra_from_document(CoalgebraDocument.model_validate(req.document))
        except ValidationError as exc:
            raise InputError(f"invalid document: {exc}") from exc
    if not req.builtin:
        raise InputError("no structure given; use --builtin or --input")
    return build_builtin(req.builtin, req.trunc)


def _hopf(S) -> HopfAlgebra:
    if not isinstance(S, HopfAlgebra):
        raise InputError(f"{S.name} is a coalgebra; this command needs a Hopf algebra")
    return S


def _finite_hopf(S) -> FiniteHopfAlgebra:
    H = _hopf(S)
    if not isinstance(H, FiniteHopfAlgebra):
        raise InputError(f"{H.name} is infinite dimensional; this command needs a finite Hopf algebra")
    return H


def _bindings(req: RunRequest, field: ScalarField) -> list[dict[str, Any]]:
    """``a=2`` fixes a family parameter; a bare ``a`` sweeps it over the samples."""
    fixed: dict[str, Any] = {}
    swept: list[str] = []
    for p in req.params:
        name, eq, value = p.partition("=")
        name = name.strip()
        if not name.isidentifier():
            raise InputError(f"bad parameter {p!r}")
        if eq:
            fixed[name] = parse_scalar(value, field)
        else:
            swept.append(name)
    samples = [parse_scalar(s, field) for s in (req.samples or settings.parameter_samples)]
    out = []
    for values in itertools.product(samples, repeat=len(swept)):
        out.append({**fixed, **dict(zip(swept, values))})
    return out


def _coeff(field: ScalarField, bindings: dict) -> Callable[[str], Any]:
    return lambda s: parse_scalar(s, field, bindings)


def _universal_vector(U, text: str, bindings: dict) -> list:
    C = U.coalgebra

    def resolve(label: str) -> Optional[dict]:
        label = label.strip()
        if not (label.startswith("[") and label.endswith("]")) or "⊗" not in label:
            return None
        a, _, b = label[1:-1].partition("⊗")
        return U.cls(C.index(a.strip()), C.index(b.strip()))

    return U.dense(parse_vector(text, resolve, _coeff(U.field, bindings), U.field.one))


def _coalgebra_vector(C: Coalgebra, text: str) -> list:
    def resolve(label: str) -> Optional[dict]:
        i = C._index.get(label.strip())
        return None if i is None else {i: C.field.one}

    v = parse_vector(text, resolve, _coeff(C.field, {}), C.field.one)
    return [v.get(i, C.field.zero) for i in range(C.n)]


def _hopf_vectors(H: HopfAlgebra, texts: Sequence[str], bindings: Optional[dict] = None) -> list[dict]:
    if not texts:
        raise InputError("no generators given")
    return [parse_vector(t, H.resolve, _coeff(H.field, bindings or {}), H.field.one) for t in texts]


def _format_coalgebra_vector(C: Coalgebra, v: Sequence[Any]) -> str:
    f = C.field
    parts = []
    for i, c in enumerate(v):
        if not c:
            continue
        parts.append(C.labels[i] if c == f.one else f"-{C.labels[i]}" if c == -f.one else f"({f.format(c)})*{C.labels[i]}")
    return " + ".join(parts).replace("+ -", "- ") or "0"


def _subspace_data(U, S: Subspace) -> dict[str, Any]:
    C = U.coalgebra
    return {
        "dim": S.dim,
        "basis": [U.format(b) for b in S.basis()],
        "delta_image": [_format_coalgebra_vector(C, b) for b in delta_image(U, S).basis()],
    }


# commands


def cmd_builtins(req: RunRequest) -> Report:
    return Report(command="builtins", structure="-", data={"builtins": list_builtins()})


def cmd_validate(req: RunRequest) -> Report:
    S = load_structure(req)
    if isinstance(S, Coalgebra):
        v = validate_coalgebra(S)
        data = {"dim": S.n, "kind": "coalgebra"}
    else:
        v = validate_hopf(S)
        data = {"kind": "hopf", "finite": S.finite}
        if isinstance(S, FiniteHopfAlgebra):
            data["dim"] = S.n
        else:
            data["bound"] = S.bound
    return Report(command="validate", structure=S.name, ok=v.ok, data=data, validation=v)


def cmd_universal(req: RunRequest) -> Report:
    C = as_coalgebra(load_structure(req))
    U = build_universal(C)
    K = U.kernel_of_delta()
    return Report(
        command="universal",
        structure=C.name,
        data={
            "dim": U.dim,
            "kernel_dim": K.dim,
            "basis": list(U.labels),
            "kernel_basis": [U.format(b) for b in K.basis()],
        },
    )


def cmd_generate(req: RunRequest) -> Report:
    C = as_coalgebra(load_structure(req))
    U = build_universal(C)
    if not req.generators:
        raise InputError("no generators given")
    runs = []
    for bindings in _bindings(req, C.field):
        gens = [_universal_vector(U, g, bindings) for g in req.generators]
        if not any(any(v) for v in gens):
            raise InputError("all generators vanish in Υ^U")
        S = generate_subbicomodule(U.bicomodule, gens)
        run = _subspace_data(U, S)
        if S.dim:
            verdict = is_simple_probe(U.bicomodule, S, req.budget, req.seed)
            run["simplicity"] = verdict.verdict
            run["certified"] = verdict.certified
        if bindings:
            run["params"] = {k: C.field.format(v) for k, v in bindings.items()}
        runs.append(run)
    data = runs[0] if len(runs) == 1 else {"runs": runs}
    return Report(command="generate", structure=C.name, data=data)


def cmd_cocommutator(req: RunRequest) -> Report:
    C = as_coalgebra(load_structure(req))
    U = build_universal(C)
    S = cocommutator(U.bicomodule)
    return Report(command="cocommutator", structure=C.name, data={"dim": S.dim, "basis": [U.format(b) for b in S.basis()]})


def cmd_decompose(req: RunRequest) -> Report:
    C = as_coalgebra(load_structure(req))
    U = build_universal(C)
    M = U.bicomodule
    if req.summands:
        summands = [
            Subspace.from_vectors([_coalgebra_vector(C, t) for t in s.split(",")], C.n, C.field) for s in req.summands
        ]
        blocks = decompose_bicomodule(M, summands)
        data = {"blocks": [{"left": i, "right": j, "dim": S.dim} for i, j, S in blocks]}
        ok = sum(S.dim for _, _, S in blocks) == U.dim
    else:
        pieces = simple_decomposition(M, req.budget, req.seed)
        data = {"pieces": [{"dim": S.dim, "basis": [U.format(b) for b in S.basis()]} for S in pieces]}
        ok = sum(S.dim for S in pieces) == U.dim
    data["dim"] = U.dim
    return Report(command="decompose", structure=C.name, ok=ok, data=data)


def cmd_cointegral(req: RunRequest) -> Report:
    C = as_coalgebra(load_structure(req))
    omega = find_cointegral(C)
    data: dict[str, Any] = {"coseparable": omega is not None}
    if omega is not None:
        data["omega"] = {
            f"{C.labels[a]}⊗{C.labels[b]}": C.field.format(omega[a][b])
            for a in range(C.n)
            for b in range(C.n)
            if omega[a][b]
        }
    return Report(command="cointegral", structure=C.name, data=data)


def cmd_graph_classify(req: RunRequest) -> Report:
    if req.points is None or req.dim is None:
        raise InputError("graph-classify needs --points and --dim")
    classes = classify_set_foccs(req.points, req.dim)
    return Report(
        command="graph-classify",
        structure=f"set:{req.points}",
        data={
            "classes": len(classes),
            "graphs": [{"edges": [f"{s}->{t}" for s, t in c.graph.edges], "count": c.count} for c in classes],
            "dot": [c.graph.to_dot(f"class{k}") for k, c in enumerate(classes)],
        },
    )


def _yd_report(command: str, H: HopfAlgebra, result, extra: Optional[dict] = None) -> Report:
    data = {"dim": result.dim, "basis": [H.format(b) for b in result.basis()], **(extra or {})}
    return Report(command=command, structure=H.name, data=data, certificate=result.certificate)


def cmd_yd_generate(req: RunRequest) -> Report:
    H = _hopf(load_structure(req))
    result = generate_yd_submodule(H, _hopf_vectors(H, req.generators), req.side)
    return _yd_report("yd-generate", H, result, {"side": req.side})


def cmd_comodule(req: RunRequest) -> Report:
    H = _hopf(load_structure(req))
    result = right_covariant_comodule(H, _hopf_vectors(H, req.generators))
    return _yd_report("comodule", H, result)


def cmd_bicovariant(req: RunRequest) -> Report:
    H = _hopf(load_structure(req))
    result = generate_yd_submodule(H, _hopf_vectors(H, req.generators))
    extra: dict[str, Any] = {}
    if isinstance(H, FiniteHopfAlgebra):
        U = build_universal(H.coalgebra)
        S = bicovariant_focc_from_yd(H, U, result.basis())
        extra["focc"] = _subspace_data(U, S)
    return _yd_report("bicovariant", H, result, extra)


def _qlie(req: RunRequest):
    H = _hopf(load_structure(req))
    if req.basis:
        basis = _hopf_vectors(H, req.basis)
        labels = req.labels or None
        certificate = None
    else:
        result = generate_yd_submodule(H, _hopf_vectors(H, req.generators), req.side)
        certificate = result.certificate
        preset = standard_basis(H, req.generators) if req.side == "left" else None
        if preset is not None and len(preset[1]) == result.dim:
            labels, basis = preset
        else:
            basis = result.basis()
            labels = req.labels or None
    Q = build_qlie(H, basis, labels, req.side)
    return H, Q, certificate


def cmd_qlie(req: RunRequest) -> Report:
    H, Q, cert = _qlie(req)
    return Report(command="qlie", structure=H.name, data=Q.to_dict(), certificate=cert)


def cmd_qlie_certify(req: RunRequest) -> Report:
    H, Q, cert = _qlie(req)
    v = certify_identities(Q)
    return Report(
        command="qlie-certify", structure=H.name, ok=v.ok, data={"dim": Q.dim, "basis": Q.labels}, certificate=cert, validation=v
    )


def cmd_limit(req: RunRequest) -> Report:
    H, Q, cert = _qlie(req)
    if req.at is None:
        raise InputError("limit needs --at")
    value = parse_scalar(req.at, ScalarField(Q.field.base))
    L = classical_limit(Q, value, req.drop)
    return Report(command="limit", structure=H.name, data=L.to_dict(), certificate=cert)


def cmd_dual(req: RunRequest) -> Report:
    H = _finite_hopf(load_structure(req))
    Dh, v = check_duality(H)
    return Report(
        command="dual",
        structure=H.name,
        ok=v.ok,
        data={
            "dual": hopf_to_document(Dh.dual).model_dump(),
            "tangent_dim": tangent_space(Dh).dim,
            "v_kernel": [H.format(x) for x in kernel_of_v(Dh)],
        },
        validation=v,
    )


def cmd_pair(req: RunRequest) -> Report:
    H = _finite_hopf(load_structure(req))
    Dh = dual_hopf(H)
    U = build_universal(H.coalgebra)
    v = check_pairing_identities(Dh, U)
    r = pairing_rank(Dh, U)
    ok = v.ok and r == H.n * (H.n - 1)
    return Report(
        command="pair",
        structure=H.name,
        ok=ok,
        data={"rank": r, "universal_dim": U.dim, "one_forms_dim": Dh.one_forms.dim},
        validation=v,
    )


COMMANDS: dict[str, Callable[[RunRequest], Report]] = {
    "builtins": cmd_builtins,
    "validate": cmd_validate,
    "universal": cmd_universal,
    "generate": cmd_generate,
    "cocommutator": cmd_cocommutator,
    "decompose": cmd_decompose,
    "cointegral": cmd_cointegral,
    "graph-classify": cmd_graph_classify,
    "yd-generate": cmd_yd_generate,
    "comodule": cmd_comodule,
    "bicovariant": cmd_bicovariant,
    "qlie": cmd_qlie,
    "qlie-certify": cmd_qlie_certify,
    "limit": cmd_limit,
    "dual": cmd_dual,
    "pair": cmd_pair,
}


def run(req: RunRequest) -> Report:
    handler = COMMANDS.get(req.command)
    if handler is None:
        raise InputError(f"unknown command {req.command!r}")
    t0 = time.perf_counter()
    report = handler(req)
    logger.info("%s on %s: ok=%s", req.command, report.structure, report.ok)
    logger.debug("%s took %.3fs", req.command, time.perf_counter() - t0)
    return report


def exit_code(report: Optional[Report] = None, error: Optional[BaseException] = None, require_complete: bool = False) -> int:
    if error is not None:
        return EXIT_INPUT if isinstance(error, (InputError, PoleError)) else EXIT_INVALID
    if not report.ok:
        return EXIT_INVALID
    if require_complete and report.certificate is not None and not report.certificate.complete:
        return EXIT_INCOMPLETE
    return EXIT_OK


# rendering


def to_json(report: Report) -> str:
    return json.dumps(report.model_dump(mode="json", exclude_none=True), sort_keys=True, indent=2, ensure_ascii=False)


def to_text(report: Report) -> str:
    lines = [f"{report.command} {report.structure}: {'ok' if report.ok else 'FAILED'}"]

    def emit(key: str, value: Any, indent: str):
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            for k in sorted(value):
                emit(k, value[k], indent + "  ")
        elif isinstance(value, list):
            lines.append(f"{indent}{key}:")
            for item in value:
                if isinstance(item, dict):
                    lines.append(f"{indent}  -")
                    for k in sorted(item):
                        emit(k, item[k], indent + "    ")
                else:
                    lines.append(f"{indent}  - {item}")
        else:
            lines.append(f"{indent}{key}: {value}")

    for key in sorted(report.data):
        if key != "dot":
            emit(key, report.data[key], "")
    if report.certificate is not None:
        cert = report.certificate
        lines.append(f"certificate: {cert.status} (bound {cert.bound})" + (f"; {cert.witness}" if cert.witness else ""))
    if report.validation is not None:
        v = report.validation
        lines.append(f"checked {v.checked}, skipped {v.skipped}, violations {len(v.violations)}")
        for x in v.violations:
            lines.append(f"  {x.axiom} at {x.at}: {x.detail}")
    return "\n".join(lines)


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "dot":
        if "dot" not in report.data:
            raise InputError(f"{report.command} has no DOT output")
        return "\n\n".join(report.data["dot"])
    return to_text(report)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="focc", description="Codifferential calculi on coalgebras and Hopf algebras")
    parser.add_argument("command", choices=sorted(COMMANDS), help="What to compute")
    parser.add_argument("--builtin", help="Built-in structure name (see `builtins`)")
    parser.add_argument("--input", help="Path to a JSON coalgebra or Hopf algebra document")
    parser.add_argument("--singleton", action="append", dest="generators", default=[], help="Generator vector (repeatable)")
    parser.add_argument("--generators", action="append", dest="generators", help="Generator vector (repeatable)")
    parser.add_argument("--basis", action="append", default=[], help="Basis vector of the Y-D submodule (repeatable)")
    parser.add_argument("--label", action="append", dest="labels", default=[], help="Label for the matching --basis vector")
    parser.add_argument("--param", action="append", dest="params", default=[], help="a=value fixes a parameter, bare a sweeps it")
    parser.add_argument("--samples", help="Comma separated sample values for swept parameters")
    parser.add_argument("--summand", action="append", dest="summands", default=[], help="Comma separated vectors spanning a subcoalgebra")
    parser.add_argument("--points", type=int, help="Number of points for graph-classify")
    parser.add_argument("--dim", type=int, help="FOCC dimension for graph-classify")
    parser.add_argument("--side", choices=["left", "right"], default="left")
    parser.add_argument("--trunc", type=int, help="Truncation bound for filtered built-ins")
    parser.add_argument("--seed", type=int, help="Seed for random probes")
    parser.add_argument("--budget", type=int, help="Number of random probes")
    parser.add_argument("--at", help="Parameter value for `limit`")
    parser.add_argument("--drop", action="append", default=[], help="Basis label sent to zero by `limit`")
    parser.add_argument("--require-complete", action="store_true", help="Exit 3 when the result is truncation limited")
    parser.add_argument("--format", choices=["text", "json", "dot"], default="text")
    return parser


def request_from_args(args: argparse.Namespace) -> RunRequest:
    document = None
    if args.input:
        p = Path(args.input)
        if not p.exists():
            raise InputError(f"file not found: {args.input}")
        try:
            document = json.loads(p.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.input} is not JSON: {exc}") from exc
    return RunRequest(
        command=args.command,
        builtin=args.builtin,
        document=document,
        generators=args.generators,
        basis=args.basis,
        labels=args.labels,
        params=args.params,
        samples=args.samples.split(",") if args.samples else None,
        summands=args.summands,
        points=args.points,
        dim=args.dim,
        side=args.side,
        trunc=args.trunc,
        seed=args.seed,
        budget=args.budget,
        at=args.at,
        drop=args.drop,
        require_complete=args.require_complete,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    if not logger.handlers:
        logging.basicConfig(level=settings.log_level, stream=sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        req = request_from_args(args)
        report = run(req)
        print(render(report, args.format))
    except CodiffError as exc:
        logger.error("%s failed: %s", args.command, exc)
        print(f"error: {exc}", file=sys.stderr)
        return exit_code(error=exc)
    return exit_code(report, require_complete=req.require_complete)
