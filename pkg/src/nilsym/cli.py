"""Command-line interface: ``nilsym <command> ...``.

Exit codes: 0 success, 1 usage / IO / refused operation, 2 invalid algebra.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__
from .algebra import (
    LieAlgebra,
    center,
    characteristic_sequence,
    generators_count,
    lower_central_series,
    nilindex,
    upper_central_series,
)
from .catalog import list_entries, named
from .deform import ContractionScaling, contract, linear_deformation, transport_symplectic, validate_deformation
from .errors import InvalidAlgebraError, MalformedInputError, NilsymError
from .exterior import cartan_class, cohomology_dims
from .fileformat import (
    form_terms,
    format_rational,
    format_two_form,
    parse_algebra,
    parse_cochain,
    parse_matrix,
    parse_one_form,
    parse_rational,
    parse_two_form,
    serialize_algebra,
)
from .structures import double_extension
from .symplectic import decide_symplectic, default_seed


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> tuple[LieAlgebra, str]:
    raw = _read(path)
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise UsageError(f"{path} is not UTF-8") from None
    try:
        L = parse_algebra(text)
    except MalformedInputError as exc:
        # a malformed algebra file counts as an invalid algebra, not a usage error
        raise InvalidAlgebraError(f"{path}: {exc}") from exc
    return L, hashlib.sha256(raw).hexdigest()


def _report(command: str, L: LieAlgebra, digest: str, body: dict, started: float) -> dict:
    out = {
        "tool_version": __version__,
        "command": command,
        "input_digest": digest,
        "algebra": {"name": L.name, "dim": L.dim},
    }
    out.update(body)
    out["timings"] = {"total_s": round(time.perf_counter() - started, 6)}
    return out


def _emit(args, report: dict, human: str) -> None:
    if getattr(args, "json", False):
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        sys.stdout.write(human if human.endswith("\n") else human + "\n")


def _dims(series) -> list[int]:
    return [s.dim for s in series]


# -- commands -------------------------------------------------------------------------


def cmd_check(args, t0):
    L, digest = _load(args.file)
    rep = _report("check", L, digest, {"valid": True}, t0)
    _emit(args, rep, f"ok: {L.name or args.file} (dim {L.dim}) satisfies Jacobi")


def cmd_info(args, t0):
    L, digest = _load(args.file)
    lower = _dims(lower_central_series(L))
    upper = _dims(upper_central_series(L))
    ni = nilindex(L)
    body = {
        "lower_central_dims": lower,
        "upper_central_dims": upper,
        "nilindex": ni,
        "generators": generators_count(L),
        "center_dim": center(L).dim,
    }
    if ni is not None:
        body["charseq"] = list(characteristic_sequence(L, seed=args.seed, trials=args.trials))
        body["seed"] = args.seed
    lines = [
        f"algebra: {L.name or '-'} (dim {L.dim})",
        f"lower central series dims: {lower}",
        f"upper central series dims: {upper}",
        f"nilindex: {ni if ni is not None else 'not nilpotent'}",
        f"generators: {body['generators']}",
        f"center dim: {body['center_dim']}",
    ]
    if "charseq" in body:
        lines.append(f"characteristic sequence: {tuple(body['charseq'])}")
    _emit(args, _report("info", L, digest, body, t0), "\n".join(lines))


def cmd_symplectic(args, t0):
    L, digest = _load(args.file)
    seed = default_seed() if args.seed is None else args.seed
    cert = decide_symplectic(L, seed=seed)
    body = {
        "decision": cert.label,
        "certificate": cert.proof,
        "closed_space_dim": cert.closed_space_dim,
    }
    if cert.decision:
        body["witness"] = form_terms(cert.witness) if cert.witness is not None else []
    body["seed"] = seed
    human = [f"decision: {cert.label}", f"certificate: {cert.proof}", f"closed_space_dim: {cert.closed_space_dim}"]
    if cert.decision:
        shown = format_two_form(cert.witness) if cert.witness is not None else ""
        human.append(f"witness: {shown or '(empty)'}")
    _emit(args, _report("symplectic", L, digest, body, t0), "\n".join(human))


def cmd_cartan(args, t0):
    L, digest = _load(args.file)
    alpha = parse_one_form(args.form, L.dim)
    if alpha.is_zero():
        raise UsageError("the 1-form is zero")
    cl = cartan_class(L, alpha)
    _emit(args, _report("cartan-class", L, digest, {"form": args.form, "cartan_class": cl}, t0), str(cl))


def cmd_cohomology(args, t0):
    L, digest = _load(args.file)
    b = cohomology_dims(L)
    _emit(args, _report("cohomology", L, digest, {"betti": b}, t0), " ".join(map(str, b)))


def _weights(text: str) -> list[int]:
    try:
        return [int(w) for w in text.split(",")]
    except ValueError:
        raise UsageError(f"bad weights {text!r}") from None


def cmd_contract(args, t0):
    L, digest = _load(args.file)
    s = ContractionScaling(_weights(args.weights))
    limit = contract(L, s)
    body = {"weights": list(s.weights), "limit": serialize_algebra(limit)}
    human = serialize_algebra(limit)
    if args.form:
        theta = parse_two_form(args.form, L.dim)
        tr = transport_symplectic(L, theta, s)
        body["transport"] = {"transports": tr.transports, "k": tr.k, "degrees": list(tr.degrees),
                             "verified_on_limit": tr.verified_on_limit}
        human += f"# transports: {tr.transports} k={tr.k} degrees={list(tr.degrees)}\n"
    _emit(args, _report("contract", L, digest, body, t0), human)


def cmd_deform(args, t0):
    L, digest = _load(args.file)
    raw = _read(args.cocycle)
    phi = parse_cochain(raw.decode("utf-8"))
    t = parse_rational(args.t)
    rep = validate_deformation(L, phi)
    body = {
        "t": format_rational(t),
        "t0_ok": not rep.jacobi_t0,
        "t1_ok": not rep.cocycle_t1,
        "t2_ok": not rep.quadratic_t2,
    }
    if rep.ok:
        out = linear_deformation(L, phi, t)
        body["result"] = serialize_algebra(out)
        human = serialize_algebra(out)
    else:
        human = f"invalid deformation: fails at {rep.first_failure}\n"
    _emit(args, _report("deform", L, digest, body, t0), human)
    if not rep.ok:
        return 2
    return 0


def cmd_double_extend(args, t0):
    L, digest = _load(args.file)
    theta = parse_two_form(args.form, L.dim) if L.dim else None
    D = parse_matrix(_read(args.derivation).decode("utf-8"), L.dim)
    L2, theta1 = double_extension(L, theta, D)
    body = {"result": serialize_algebra(L2), "form": form_terms(theta1)}
    human = serialize_algebra(L2) + f"# form: {format_two_form(theta1)}\n"
    _emit(args, _report("double-extend", L, digest, body, t0), human)


def cmd_catalog(args, t0):
    if args.action == "list":
        rows = [(e.name, e.algebra.dim, e.expected.symplectic, e.provenance) for e in list_entries()]
        if args.json:
            doc = {"tool_version": __version__, "command": "catalog list",
                   "entries": [{"name": n, "dim": d, "symplectic": s, "provenance": p} for n, d, s, p in rows]}
            sys.stdout.write(json.dumps(doc, indent=2) + "\n")
        else:
            for n, d, s, p in rows:
                sys.stdout.write(f"{n:18s} dim {d:2d}  symplectic={s:7s}  {p}\n")
        return 0
    if not args.name:
        raise UsageError(f"catalog {args.action} needs a name")
    try:
        e = named(args.name)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    if args.action == "emit":
        sys.stdout.write(serialize_algebra(e.algebra.renamed(e.name)))
        return 0
    x = e.expected
    info = {
        "name": e.name,
        "dim": e.algebra.dim,
        "symplectic": x.symplectic,
        "charseq": list(x.charseq) if x.charseq else None,
        "nilindex": x.nilindex,
        "field_note": x.field_note,
        "witness": form_terms(x.witness) if x.witness else None,
        "citation": x.citation,
        "provenance": e.provenance,
        "note": e.note,
    }
    if args.json:
        sys.stdout.write(json.dumps(info, indent=2) + "\n")
    else:
        for k, v in info.items():
            if v not in (None, ""):
                sys.stdout.write(f"{k}: {v}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nilsym", description="Exact tools for nilpotent Lie algebras.")
    p.add_argument("--version", action="version", version=f"nilsym {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_text, file_arg=True):
        sp = sub.add_parser(name, help=help_text)
        if file_arg:
            sp.add_argument("file")
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        sp.set_defaults(func=fn)
        return sp

    add("check", cmd_check, "parse and validate an algebra file")
    sp = add("info", cmd_info, "central series, characteristic sequence, generators")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--trials", type=int, default=32)
    sp = add("symplectic", cmd_symplectic, "decide whether a symplectic form exists")
    sp.add_argument("--seed", type=int, default=None)
    sp = add("cartan-class", cmd_cartan, "Cartan class of a 1-form")
    sp.add_argument("--form", required=True, help='1-form as "k:c,..."')
    add("cohomology", cmd_cohomology, "scalar cohomology dimensions")
    sp = add("contract", cmd_contract, "diagonal contraction limit")
    sp.add_argument("--weights", required=True, help="w1,...,wn")
    sp.add_argument("--form", help='2-form "i-j:c,..." to transport')
    sp = add("deform", cmd_deform, "linear deformation by a 2-cochain")
    sp.add_argument("--cocycle", required=True)
    sp.add_argument("--t", required=True)
    sp = add("double-extend", cmd_double_extend, "symplectic double extension")
    sp.add_argument("--form", required=True, help='2-form "i-j:c,..."')
    sp.add_argument("--derivation", required=True, help="matrix file, row i = D(X_i)")
    sp = add("catalog", cmd_catalog, "named algebras", file_arg=False)
    sp.add_argument("action", choices=["list", "show", "emit"])
    sp.add_argument("name", nargs="?")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    t0 = time.perf_counter()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return 1
        if getattr(args, "seed", None) is None and args.command == "info":
            args.seed = default_seed()
        rc = args.func(args, t0)
        return rc or 0
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return 1
    except InvalidAlgebraError as exc:
        sys.stderr.write(f"invalid algebra: {exc}\n")
        return 2
    except NilsymError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except UnicodeDecodeError as exc:
        sys.stderr.write(f"error: input is not UTF-8 ({exc.reason})\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
