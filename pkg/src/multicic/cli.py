"""Command-line interface: ``multicic estimate | simulate | validate``.

Exit codes: 0 success, 2 validation error, 3 parameter not identified,
4 I/O error.
"""
import argparse
import csv
import hashlib
import io
import json
import sys
from dataclasses import replace
from pathlib import Path


from . import __version__
from .dataset import load_csv, support_check
from .errors import CICError, NotIdentified
from .estimators import EffectRequest, estimate, out_of_range_counts
from .inference import BootstrapConfig, bootstrap_many
from .simulation import load_config, simulate, write_csv

SCHEMA_VERSION = "1.0"
EXIT_OK, EXIT_VALIDATION, EXIT_NOT_IDENTIFIED, EXIT_IO = 0, 2, 3, 4
PARAM_NAMES = {
    "qtt": "QTT", "att": "ATT", "qte": "QTE", "ate": "ATE",
    "acr": "ACR", "acrt": "ACRT", "did": "DID_ATT", "did_att": "DID_ATT",
}


class UsageError(CICError):
    pass


def parse_taus(text):
    """``START:STOP:STEP`` (inclusive) or a comma list; every tau in (0, 1)."""
    text = text.strip()
    try:
        if ":" in text:
            parts = [float(x) for x in text.split(":")]
            if len(parts) != 3 or parts[2] <= 0 or parts[1] < parts[0]:
                raise ValueError
            start, stop, step = parts
            count = int(round((stop - start) / step)) + 1
            if start + (count - 1) * step > stop + 1e-9 * step:
                count -= 1
            taus = [round(start + i * step, 12) for i in range(count)]
        else:
            taus = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"malformed tau grid {text!r}; use START:STOP:STEP or a comma list") from None
    if not taus or any(not (0.0 < t < 1.0) for t in taus):
        raise UsageError(f"tau grid {text!r} must be non-empty with every tau in (0, 1)")
    return taus


def _add_input_flags(p):
    p.add_argument("--input", required=True, help="CSV file with a header row")
    p.add_argument("--outcome", default="outcome", help="outcome column name")
    p.add_argument("--treatment", default="treatment", help="treatment-level column name")
    p.add_argument("--period", default="period", help="period column name")
    p.add_argument("--control", default=None, help="control level label (default '0')")
    p.add_argument("--ordered", default=None, help="comma-separated ordering of all levels, control first")
    p.add_argument("--period-labels", default="0,1", help="labels of the pre and post periods")
    p.add_argument("--min-cell-size", type=int, default=2)
    p.add_argument("--mode", choices=("weak", "strong"), required=True)


def build_parser():
    parser = argparse.ArgumentParser(prog="multicic", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"multicic {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="estimate effect parameters from a CSV")
    _add_input_flags(est)
    est.add_argument("--params", default="att", help="comma list of qtt,att,qte,ate,acr,acrt,did")
    est.add_argument("--taus", default="0.1:0.9:0.1", help="START:STOP:STEP or comma list")
    est.add_argument("--d", default=None, help="treatment level (default: every treated level)")
    est.add_argument("--dprime", default=None, help="comparison level (default: control)")
    est.add_argument("--cond", default=None, help="conditioning group (default: --d)")
    est.add_argument("--bootstrap", type=int, default=0, metavar="B", help="bootstrap replicates (0 = none)")
    est.add_argument("--level", type=float, default=0.95)
    est.add_argument("--seed", type=int, default=0)
    est.add_argument("--workers", type=int, default=1, help="bootstrap threads; results do not depend on it")
    est.add_argument("--output", default="-", help="output path, '-' for stdout")
    est.add_argument("--format", choices=("json", "csv"), default="json")

    sim = sub.add_parser("simulate", help="simulate a dataset from a DGP config")
    sim.add_argument("--config", required=True)
    sim.add_argument("--n", type=int, required=True, help="observations per period")
    sim.add_argument("--seed", type=int, required=True)
    sim.add_argument("--output", required=True)

    val = sub.add_parser("validate", help="support and cell diagnostics")
    _add_input_flags(val)
    val.add_argument("--output", default=None, help="also write the diagnostics as JSON")
    return parser


def _load(args):
    labels = [x.strip() for x in args.period_labels.split(",")]
    if len(labels) != 2:
        raise UsageError("--period-labels needs exactly two labels")
    levels = None
    if args.ordered:
        levels = [x.strip() for x in args.ordered.split(",") if x.strip()]
    raw = Path(args.input).read_bytes()
    ds = load_csv(
        io.StringIO(raw.decode("utf-8"), newline=""),
        outcome=args.outcome,
        treatment=args.treatment,
        period=args.period,
        control=args.control,
        levels=levels,
        ordered=levels is not None,
        period_labels=labels,
        min_cell_size=args.min_cell_size,
    )
    return ds, hashlib.sha256(raw).hexdigest()


def _targets(ds, args, parameter):
    if args.d is not None:
        return [ds.levels.check(args.d)]
    return list(ds.levels.treated)


def build_requests(ds, args, taus):
    """Expand CLI flags into (point requests, curve groups)."""
    requests, curves = [], []
    names = [x.strip().lower() for x in args.params.split(",") if x.strip()]
    if not names:
        raise UsageError("--params is empty")
    for name in names:
        if name not in PARAM_NAMES:
            raise UsageError(f"unknown parameter {name!r}; choose from {sorted(set(PARAM_NAMES))}")
        p = PARAM_NAMES[name]
        for d in _targets(ds, args, p):
            dprime = None if args.dprime is None else ds.levels.check(args.dprime)
            cond = None if args.cond is None else ds.levels.check(args.cond)
            if p in ("ACR", "ATE", "QTE", "DID_ATT"):
                cond = None
            if p in ("ACR", "ACRT", "DID_ATT"):
                dprime = None
            if p in ("QTT", "QTE"):
                group = [EffectRequest(p, d=d, d_prime=dprime, cond=cond, tau=t, mode=args.mode) for t in taus]
                curves.append((len(requests), len(group)))
                requests.extend(group)
            else:
                requests.append(EffectRequest(p, d=d, d_prime=dprime, cond=cond, mode=args.mode))
    return requests, curves


def _json_dump(doc):
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _diagnostics(ds, mode):
    return {
        "support_findings": [f.to_dict() for f in support_check(ds, mode)],
        "out_of_range_counts": out_of_range_counts(ds, mode),
        "cell_sizes": [{"period": t, "level": d, "n": n} for (t, d), n in ds.cell_sizes().items()],
        "group_shares": {"period0": ds.p_hat_period0, "period1": ds.p_hat},
    }


def cmd_estimate(args):
    taus = parse_taus(args.taus)
    ds, digest = _load(args)
    requests, curve_groups = build_requests(ds, args, taus)
    if args.bootstrap > 0:
        cfg = BootstrapConfig(B=args.bootstrap, level=args.level, seed=args.seed, workers=max(1, args.workers))
        estimates, _ = bootstrap_many(ds, requests, cfg)
        boot_meta = {"B": cfg.B, "level": cfg.level, "scheme": cfg.scheme, "method": "bootstrap-percentile"}
    else:
        estimates = [estimate(ds, q) for q in requests]
        boot_meta = None
    curves = []
    for start, length in curve_groups:
        block = estimates[start:start + length]
        first = block[0]
        entry = {
            "parameter": first.parameter,
            "args": {k: v for k, v in first.args.items() if k != "tau"},
            "mode": first.mode,
            "tau": [e.request.tau for e in block],
            "value": [e.value for e in block],
        }
        if boot_meta is not None:
            entry["ci_lower"] = [e.ci.lower for e in block]
            entry["ci_upper"] = [e.ci.upper for e in block]
        curves.append(entry)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "metadata": {
            "tool": "multicic",
            "version": __version__,
            "input_sha256": digest,
            "columns": {"outcome": args.outcome, "treatment": args.treatment, "period": args.period},
            "period_labels": args.period_labels,
            "mode": args.mode,
            "control": ds.levels.control,
            "levels": list(ds.levels.levels),
            "ordered": ds.levels.ordered,
            "params": args.params,
            "taus": taus,
            "seed": args.seed if boot_meta is not None else None,
            "bootstrap": boot_meta,
        },
        "estimates": [e.to_dict() for e in estimates],
        "curves": curves,
        "diagnostics": _diagnostics(ds, args.mode),
        "warnings": list(ds.warnings),
    }
    if boot_meta is not None:
        doc["warnings"].append(
            "confidence intervals are bootstrap-percentile, no theoretical guarantee from the identification result"
        )
    if args.format == "json":
        _write(_json_dump(doc), args.output)
    else:
        _write(_estimates_csv(estimates), args.output)
    return EXIT_OK


def _estimates_csv(estimates):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["parameter", "tau", "d", "d_prime", "cond", "mode", "value", "ci_lower", "ci_upper", "ci_level", "ci_B"])
    for e in estimates:
        a = e.args
        ci = e.ci
        w.writerow([
            e.parameter,
            "" if a["tau"] is None else repr(a["tau"]),
            a["d"] or "", a["d_prime"] or "", a["cond"] or "",
            e.mode,
            repr(e.value),
            "" if ci is None else repr(ci.lower),
            "" if ci is None else repr(ci.upper),
            "" if ci is None else repr(ci.level),
            "" if ci is None else ci.B,
        ])
    return buf.getvalue()


def cmd_simulate(args):
    cfg = load_config(args.config)
    sim = simulate(cfg, args.n, args.seed)
    latent = write_csv(sim, args.output)
    print(f"wrote {2 * args.n} rows to {args.output} (latent table: {latent})", file=sys.stderr)
    return EXIT_OK


def cmd_validate(args):
    ds, digest = _load(args)
    diag = _diagnostics(ds, args.mode)
    lines = [f"input sha256: {digest}", f"mode: {args.mode}", "cell sizes:"]
    for c in diag["cell_sizes"]:
        lines.append(f"  period {c['period']}  level {c['level']}  n={c['n']}")
    for key in ("period0", "period1"):
        shares = ", ".join(f"{d}={p:.4f}" for d, p in diag["group_shares"][key].items())
        lines.append(f"group shares {key}: {shares}")
    findings = diag["support_findings"]
    lines.append("support findings:")
    if not findings:
        lines.append("  no findings")
    for f in findings:
        lines.append(f"  {f['severity']}: {f['message']}")
    lines.append("out-of-range compositions:")
    for k, v in diag["out_of_range_counts"].items():
        lines.append(f"  {k}: {v}")
    for w in ds.warnings:
        lines.append(w)
    print("\n".join(lines))
    if args.output:
        _write(_json_dump({"schema_version": SCHEMA_VERSION, "input_sha256": digest, "mode": args.mode,
                           "diagnostics": diag, "warnings": list(ds.warnings)}), args.output)
    return EXIT_OK


COMMANDS = {"estimate": cmd_estimate, "simulate": cmd_simulate, "validate": cmd_validate}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except NotIdentified as exc:
        print(f"error: NotIdentified: {exc}", file=sys.stderr)
        return EXIT_NOT_IDENTIFIED
    except CICError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: I/O: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
