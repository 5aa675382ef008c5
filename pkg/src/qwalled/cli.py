"""Command-line surface: build or cache engines, run the verification
suites, and emit tables and reports.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field as dc_field

from .combinat import Bipartition, CombinatError, Partition
from .engine import (
    SCHEMA_VERSION,
    EngineError,
    build_engine,
    engine_from_json,
    engine_to_json,
    verify_relations,
)
from .groundfield import FieldError, OneVarField, fields_from_spec
from .cellular import (
    CellularError,
    _label_text,
    cell_label,
    cell_labels,
    cell_module,
    gram_determinant,
    gram_matrix,
    gram_to_csv,
    gram_to_json,
    module_dimension,
    validate_cell_datum,
)
from .repthy import (
    RepError,
    branching_check,
    central_character,
    central_scalar,
    classify_simples,
    is_quasi_hereditary,
    semisimplicity,
)

import math

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

DEFAULT_MAX_TOTAL = 6


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    r: int
    s: int
    field_spec: str
    command: str
    fmt: str = "json"
    cache_dir: str = None
    max_total: int = DEFAULT_MAX_TOTAL
    args: dict = dc_field(default_factory=dict)


# ---------------------------------------------------------------------------
# parsing helpers

def parse_bipartition(text):
    """Parse "<first>/<second>" with comma-separated parts; "-" or the
    empty string denote the empty partition."""
    if "/" not in text:
        raise UsageError("bipartition must look like 2,1/1 (use - for "
                         "an empty component)")
    first, _, second = text.partition("/")

    def component(part):
        part = part.strip()
        if part in ("", "-"):
            return Partition()
        try:
            return Partition(tuple(int(p) for p in part.split(",")))
        except (ValueError, CombinatError) as exc:
            raise UsageError("bad partition %r: %s" % (part, exc))

    return Bipartition(component(first), component(second))


def _config_label(config, engine):
    f = config.args["f"]
    shape = parse_bipartition(config.args["shape"])
    try:
        return cell_label(engine.r, engine.s, f, shape)
    except CellularError as exc:
        raise UsageError(str(exc))


# ---------------------------------------------------------------------------
# engine cache

def _cache_path(config, field):
    name = "engine-r%d-s%d-%s-v%d.json" % (
        config.r, config.s,
        re.sub(r"[^A-Za-z0-9_.-]", "_", field.spec_string()),
        SCHEMA_VERSION)
    return os.path.join(config.cache_dir, name)


def load_engine(config, field):
    if config.r + config.s > config.max_total:
        raise UsageError(
            "r + s = %d exceeds the size bound %d; raise it with "
            "--max-total if you accept the runtime"
            % (config.r + config.s, config.max_total))
    if config.cache_dir:
        path = _cache_path(config, field)
        if os.path.exists(path):
            with open(path) as handle:
                return engine_from_json(handle.read())
        engine = build_engine(config.r, config.s, field)
        os.makedirs(config.cache_dir, exist_ok=True)
        with open(path, "w") as handle:
            handle.write(engine_to_json(engine))
        return engine
    return build_engine(config.r, config.s, field)


# ---------------------------------------------------------------------------
# output

def emit(config, report, csv_rows=None, csv_columns=None, text_lines=None):
    if config.fmt == "json":
        return json.dumps(report, sort_keys=True, separators=(",", ":"))
    if config.fmt == "csv":
        if csv_rows is None:
            raise UsageError("csv output is not available for this command")
        lines = [",".join(csv_columns)]
        for row in csv_rows:
            lines.append(",".join('"%s"' % row.get(col, "")
                                  for col in csv_columns))
        return "\n".join(lines)
    if text_lines is not None:
        return "\n".join(text_lines)
    return json.dumps(report, sort_keys=True, indent=2)


def _shape_text(label):
    def part(p):
        return ",".join(str(x) for x in p.parts) or "-"
    return "%s/%s" % (part(label.shape.first), part(label.shape.second))


# ---------------------------------------------------------------------------
# subcommands; each returns (exit_code, output string)

def cmd_dims(config, field):
    engine = load_engine(config, field)
    labels = cell_labels(config.r, config.s)
    rows = []
    total = 0
    for label in labels:
        dim = module_dimension(label, config.r, config.s)
        total += dim * dim
        rows.append({"f": label.f, "shape": _shape_text(label),
                     "dim": dim, "square": dim * dim})
    ok = engine.dim == math.factorial(config.r + config.s) == total
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "dims",
        "r": config.r,
        "s": config.s,
        "field": field.spec_string(),
        "dim": engine.dim,
        "factorial": math.factorial(config.r + config.s),
        "modules": rows,
        "sum_of_squares": total,
        "ok": ok,
    }
    text = ["dim B_{%d,%d} = %d" % (config.r, config.s, engine.dim)]
    text += ["  f=%d  %-12s dim %d" % (r["f"], r["shape"], r["dim"])
             for r in rows]
    return (EXIT_OK if ok else EXIT_FAILURE,
            emit(config, report, rows, ["f", "shape", "dim", "square"], text))


def cmd_relations(config, field):
    engine = load_engine(config, field)
    checks = verify_relations(engine)
    rows = [{"name": name, "ok": ok} for name, ok in checks]
    ok = all(r["ok"] for r in rows)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "relations",
        "r": config.r,
        "s": config.s,
        "field": field.spec_string(),
        "checks": rows,
        "ok": ok,
    }
    text = ["%-14s %s" % (r["name"], "ok" if r["ok"] else "FAILED")
            for r in rows]
    return (EXIT_OK if ok else EXIT_FAILURE,
            emit(config, report, rows, ["name", "ok"], text))


def cmd_cellular(config, field):
    engine = load_engine(config, field)
    result = validate_cell_datum(
        engine, alternate_anchors=config.args.get("anchors"))
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "cellular",
        "r": config.r,
        "s": config.s,
        "field": field.spec_string(),
        "basis": result["basis"],
        "involution": result["involution"],
        "triangular": result["triangular"],
        "failures": [str(x) for x in result["failures"]],
        "ok": result["ok"],
    }
    text = ["basis: %s" % result["basis"],
            "involution: %s" % result["involution"],
            "triangular: %s" % result["triangular"]]
    return (EXIT_OK if result["ok"] else EXIT_FAILURE,
            emit(config, report, text_lines=text))


def cmd_gram(config, field):
    engine = load_engine(config, field)
    label = _config_label(config, engine)
    module = cell_module(engine, label)
    gram = gram_matrix(module)
    det = gram_determinant(module)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "gram",
        "r": config.r,
        "s": config.s,
        "field": field.spec_string(),
        "label": _label_text(label),
        "dim": module.dim,
        "entries": json.loads(gram_to_json(module))["entries"],
        "determinant": det.to_text(),
        "determinant_is_zero": det.is_zero(),
    }
    if config.fmt == "csv":
        return EXIT_OK, gram_to_csv(module).rstrip("\n")
    text = ["G_{%d,%s}  (%d x %d)" % (label.f, _shape_text(label),
                                      module.dim, module.dim)]
    text += ["  ".join(e.to_text() for e in row) for row in gram]
    text.append("det = %s" % det.to_text())
    return EXIT_OK, emit(config, report, text_lines=text)


def cmd_central(config, field):
    engine = load_engine(config, field)
    rows = []
    ok = True
    for label in cell_labels(config.r, config.s):
        try:
            cc = central_character(label, field, engine=engine)
            verified = True
            scalar = cc.scalar
        except RepError:
            verified = False
            ok = False
            scalar = central_scalar(label, field)
        rows.append({"f": label.f, "shape": _shape_text(label),
                     "scalar": scalar.to_text(), "verified": verified})
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "central",
        "r": config.r,
        "s": config.s,
        "field": field.spec_string(),
        "characters": rows,
        "ok": ok,
    }
    text = ["f=%d  %-12s %s" % (r["f"], r["shape"], r["scalar"])
            for r in rows]
    return (EXIT_OK if ok else EXIT_FAILURE,
            emit(config, report, rows, ["f", "shape", "scalar", "verified"],
                 text))


def cmd_simples(config, field):
    labels = classify_simples(config.r, config.s, field)
    rows = [{"f": label.f, "shape": _shape_text(label)} for label in labels]
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "simples",
        "r": config.r,
        "s": config.s,
        "field": field.spec_string(),
        "quantum_characteristic": str(field.quantum_characteristic()),
        "quasi_hereditary": is_quasi_hereditary(config.r, config.s, field),
        "simples": rows,
        "count": len(rows),
    }
    text = ["f=%d  %s" % (r["f"], r["shape"]) for r in rows]
    return EXIT_OK, emit(config, report, rows, ["f", "shape"], text)


def cmd_semisimple(config, field):
    mode = config.args.get("mode", "closed_form")
    if mode != "closed_form":
        # the Gram side needs an engine within the size bound
        load_engine(config, field)
    verdict = semisimplicity(config.r, config.s, field, mode=mode)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "semisimple",
        "r": config.r,
        "s": config.s,
        "field": field.spec_string(),
        "mode": mode,
        "semisimple": verdict.verdict,
        "reason": verdict.reason,
        "witnesses": [_label_text(w) for w in verdict.witnesses],
    }
    text = ["semisimple: %s" % verdict.verdict,
            "reason: %s" % verdict.reason]
    text += ["witness: f=%d %s" % (w.f, _shape_text(w))
             for w in verdict.witnesses]
    return EXIT_OK, emit(config, report, text_lines=text)


def cmd_branch(config, field):
    engine = load_engine(config, field)
    label = _config_label(config, engine)
    if engine.r < 2:
        raise UsageError("branch needs r >= 2")
    result = branching_check(engine, label)
    report = dict(result)
    report["schema_version"] = SCHEMA_VERSION
    report["command"] = "branch"
    report["field"] = field.spec_string()
    del report["check"]
    rows = result["sections"]
    text = ["%s -> %d sections, dim %d" % (_shape_text(label),
                                           len(rows), result["dim"])]
    text += ["  %-7s f=%d %-12s dim %d" % (
        r["kind"], r["label"]["f"],
        "%s/%s" % (",".join(map(str, r["label"]["first"])) or "-",
                   ",".join(map(str, r["label"]["second"])) or "-"),
        r["dim"]) for r in rows]
    text.append("ok: %s" % result["ok"])
    return (EXIT_OK if result["ok"] else EXIT_FAILURE,
            emit(config, report, rows, ["kind", "dim", "scalar"], text))


def cmd_sweep(config, field_spec):
    amax = config.args.get("amax") or config.r + config.s
    mode = config.args.get("mode", "both")
    rows = []
    ok = True
    for a in range(-amax, amax + 1):
        for sign in (1, -1):
            point = OneVarField(a, sign)
            try:
                verdict = semisimplicity(config.r, config.s, point, mode=mode)
            except RepError as exc:
                return EXIT_FAILURE, str(exc)
            rows.append({
                "a": a,
                "rho": ("q^%d" % a) if sign > 0 else ("-q^%d" % a),
                "semisimple": verdict.verdict,
                "reason": verdict.reason,
                "witnesses": len(verdict.witnesses),
            })
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "sweep",
        "r": config.r,
        "s": config.s,
        "mode": mode,
        "amax": amax,
        "points": rows,
        "ok": ok,
    }
    text = ["a=%-3d rho=%-6s semisimple=%s (%s)"
            % (r["a"], r["rho"], r["semisimple"], r["reason"]) for r in rows]
    return (EXIT_OK,
            emit(config, report, rows,
                 ["a", "rho", "semisimple", "reason", "witnesses"], text))


COMMANDS = {
    "dims": cmd_dims,
    "relations": cmd_relations,
    "cellular": cmd_cellular,
    "gram": cmd_gram,
    "central": cmd_central,
    "simples": cmd_simples,
    "semisimple": cmd_semisimple,
    "branch": cmd_branch,
}


# ---------------------------------------------------------------------------
# argument plumbing

def build_parser():
    parser = argparse.ArgumentParser(
        prog="qwalled",
        description="Exact computations in the two-parameter quantized "
                    "walled Brauer algebra.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--r", type=int, required=True)
        p.add_argument("--s", type=int, required=True)
        p.add_argument("--field", default="generic",
                       help="generic | q-power:<n>[:neg] | rho2:<a> | "
                            "delta-zero[:neg] | rational:<q>,<rho> | "
                            "gfp:<p>,<q>,<rho>")
        p.add_argument("--format", choices=("json", "csv", "text"),
                       default="json")
        p.add_argument("--cache-dir")
        p.add_argument("--max-total", type=int, default=DEFAULT_MAX_TOTAL,
                       help="largest allowed r+s (default %d)"
                            % DEFAULT_MAX_TOTAL)

    common(sub.add_parser("dims", help="basis and cell-module dimensions"))
    common(sub.add_parser("relations", help="defining relation suite"))
    p = sub.add_parser("cellular", help="cell datum axiom checks")
    common(p)
    p.add_argument("--anchors", type=int,
                   help="alternate anchors per label for axiom (c)")
    p = sub.add_parser("gram", help="Gram matrix and determinant")
    common(p)
    p.add_argument("f", type=int)
    p.add_argument("shape", help="bipartition, e.g. 2,1/1 or 2/-")
    common(sub.add_parser("central", help="central character table"))
    common(sub.add_parser("simples", help="simple-module labels"))
    p = sub.add_parser("semisimple", help="semisimplicity verdict")
    common(p)
    p.add_argument("--mode", choices=("closed_form", "gram", "both"),
                   default="closed_form")
    p = sub.add_parser("branch", help="restriction filtration report")
    common(p)
    p.add_argument("f", type=int)
    p.add_argument("shape", help="bipartition, e.g. 1/- ")
    p = sub.add_parser("sweep", help="rho^2 = q^{2a} verdict grid")
    common(p)
    p.add_argument("--amax", type=int)
    p.add_argument("--mode", choices=("closed_form", "gram", "both"),
                   default="both")
    return parser


def run(config):
    """Execute one subcommand; returns (exit_code, output string)."""
    if config.r < 1 or config.s < 1:
        raise UsageError("r and s must be positive")
    if config.command == "sweep":
        return cmd_sweep(config, config.field_spec)
    try:
        fields = fields_from_spec(config.field_spec)
    except FieldError as exc:
        raise UsageError(str(exc))
    outputs = []
    code = EXIT_OK
    for field in fields:
        c, out = COMMANDS[config.command](config, field)
        code = max(code, c)
        outputs.append(out)
    return code, "\n".join(outputs)


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    extras = {}
    for key in ("f", "shape", "mode", "amax", "anchors"):
        if hasattr(ns, key):
            extras[key] = getattr(ns, key)
    config = RunConfig(r=ns.r, s=ns.s, field_spec=ns.field,
                       command=ns.command, fmt=ns.format,
                       cache_dir=ns.cache_dir, max_total=ns.max_total,
                       args=extras)
    try:
        code, output = run(config)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except (EngineError, CellularError, RepError, FieldError) as exc:
        print("verification failure: %s" % exc, file=sys.stderr)
        return EXIT_FAILURE
    print(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
