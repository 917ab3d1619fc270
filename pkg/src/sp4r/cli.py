"""Command-line front end.

Subcommands
-----------
``spectrum --config FILE [--cutoff N] [--out FILE] [--dump-config]``
    Closed-form level table with oracle residual columns, emitted as CSV.
``verify algebra [--cutoff N] [--margin M]``
    Canonical commutators, the 45-pair closure audit, and the
    printed-table discrepancy listing.
``verify tilting [--max-xi X]``
    Closed-form conjugation coefficients against the exact displaced
    columns over the magnitude/phase grid, plus the corrected-formula
    listing.
``verify model NAME``
    A preset's closed-form spectrum against dense diagonalization at its
    desk-scale settings.
``coherent --kind {su11,su2} (--k K | --j J) --xi RE,IM [--n N]``
    Displaced-state coefficient table.
``wavefunction --nl N --mn M --rho R --phi P``
    One oscillator eigenfunction evaluation, in both normalization
    conventions.

Exit codes: 0 when every check passed, 1 when a verification failed,
2 for invalid input or an out-of-domain reduction (with a one-line
diagnostic on stderr).

Config files are UTF-8 ``key = value`` lines; ``#`` starts a comment and
blank lines are skipped.  Complex values are written ``re,im``.  Keys
``model``, ``cutoff_a``, ``cutoff_b``, ``margin``, ``n_max``, ``output``
and the ``tolerance.*`` family steer the run; every other key is a model
parameter (the preset's documented free parameters, or the raw coupling
fields for ``model = custom``).  ``--dump-config`` echoes the parsed,
normalized config; feeding that back reproduces the identical run.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, field, replace

from .errors import InvalidArgumentError, Sp4rError
from .hamiltonian import ModelParams, wavefunction
from .models import PRESET_NAMES, preset
from .tilt import perelomov_state
from .verify import (
    MODEL_CHECK_SETTINGS,
    VerificationReport,
    ccr_report,
    closure_report,
    convergence_scan,
    corrected_formula_listing,
    preset_verification,
    spectrum_with_oracle,
    tilting_report,
)

#: Config keys that steer the run rather than parameterize the model.
_RESERVED_KEYS = ("model", "cutoff_a", "cutoff_b", "margin", "n_max", "output")

#: ModelParams fields accepted for ``model = custom``, split by value type.
_REAL_FIELDS = ("omega0", "omega1", "omega2", "hbar", "detuning")
_COMPLEX_FIELDS = ("kappa1", "kappa2", "kappa3", "kappa4",
                   "gamma1", "gamma2", "gamma3", "gamma4")

#: Fallback run settings for custom parameter sets (presets use their
#: verification desk settings instead).
_CUSTOM_DEFAULTS = dict(n_max=10, cutoff_a=40, cutoff_b=None, tol=1e-6,
                        max_index_sum=None, scan=None)

_CSV_HEADER = ("n", "m_n", "E_plus", "E_minus", "oracle_match",
               "abs_err", "flag")


@dataclass
class RunConfig:
    """One parsed spectrum-run description.

    ``parameters`` holds the model's physical inputs exactly as parsed
    (floats, or complex for ``re,im`` values); dimensional settings stay
    ``None`` when the file leaves them to the model's defaults.
    """

    model: str
    parameters: dict = field(default_factory=dict)
    cutoff_a: int | None = None
    cutoff_b: int | None = None
    margin: int | None = None
    n_max: int | None = None
    tolerances: dict = field(default_factory=dict)
    output: str | None = None


# ---------------------------------------------------------------------------
# Config parsing and dumping
# ---------------------------------------------------------------------------


def _parse_number(text, key, lineno):
    """A float, or a complex written ``re,im``."""
    text = text.strip()
    try:
        if "," in text:
            re_s, im_s = text.split(",", 1)
            return complex(float(re_s), float(im_s))
        return float(text)
    except ValueError:
        raise InvalidArgumentError(
            f"config line {lineno}: value for {key!r} is not a number "
            f"(got {text!r}; complex values are written re,im)") from None


def _parse_count(text, key, lineno, minimum):
    try:
        value = int(text.strip(), 10)
    except ValueError:
        raise InvalidArgumentError(
            f"config line {lineno}: {key} must be an integer, "
            f"got {text.strip()!r}") from None
    if value < minimum:
        raise InvalidArgumentError(
            f"config line {lineno}: {key} must be >= {minimum}, got {value}")
    return value


def parse_config(text):
    """Parse ``key = value`` config text into a :class:`RunConfig`.

    Duplicate keys, malformed lines, unknown tolerance entries and
    non-positive counts are rejected with a line-numbered diagnostic.
    """
    model = None
    parameters = {}
    counts = {}
    tolerances = {}
    output = None
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidArgumentError(
                f"config line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise InvalidArgumentError(f"config line {lineno}: empty key")
        if key in seen:
            raise InvalidArgumentError(
                f"config line {lineno}: duplicate key {key!r}")
        seen.add(key)
        if key == "model":
            model = value
        elif key == "output":
            output = value
        elif key in ("cutoff_a", "cutoff_b"):
            counts[key] = _parse_count(value, key, lineno, minimum=1)
        elif key in ("margin", "n_max"):
            counts[key] = _parse_count(value, key, lineno, minimum=0)
        elif key.startswith("tolerance."):
            name = key[len("tolerance."):]
            if not name:
                raise InvalidArgumentError(
                    f"config line {lineno}: empty tolerance name")
            bound = _parse_number(value, key, lineno)
            if isinstance(bound, complex) or bound <= 0:
                raise InvalidArgumentError(
                    f"config line {lineno}: {key} must be a positive real")
            tolerances[name] = float(bound)
        else:
            parameters[key] = _parse_number(value, key, lineno)
    if model is None:
        raise InvalidArgumentError("config must set 'model'")
    return RunConfig(model=model, parameters=parameters,
                     cutoff_a=counts.get("cutoff_a"),
                     cutoff_b=counts.get("cutoff_b"),
                     margin=counts.get("margin"),
                     n_max=counts.get("n_max"),
                     tolerances=tolerances, output=output)


def _dump_value(value):
    if isinstance(value, complex):
        return f"{value.real!r},{value.imag!r}"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dump_config(cfg):
    """Render a :class:`RunConfig` as config text.

    The dump is deterministic (sorted parameter keys) and round-trips:
    ``parse_config(dump_config(cfg)) == cfg``.
    """
    lines = [f"model = {cfg.model}"]
    for key in sorted(cfg.parameters):
        lines.append(f"{key} = {_dump_value(cfg.parameters[key])}")
    for key in ("cutoff_a", "cutoff_b", "margin", "n_max"):
        value = getattr(cfg, key)
        if value is not None:
            lines.append(f"{key} = {value}")
    for name in sorted(cfg.tolerances):
        lines.append(f"tolerance.{name} = {cfg.tolerances[name]!r}")
    if cfg.output is not None:
        lines.append(f"output = {cfg.output}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Model resolution
# ---------------------------------------------------------------------------


def _as_real(value, key):
    if isinstance(value, complex):
        if value.imag != 0.0:
            raise InvalidArgumentError(f"parameter {key} must be real")
        return float(value.real)
    return float(value)


def _custom_params(parameters):
    fields = {}
    for key, value in parameters.items():
        if key in _REAL_FIELDS:
            fields[key] = _as_real(value, key)
        elif key in _COMPLEX_FIELDS:
            fields[key] = complex(value)
        else:
            allowed = ", ".join(_REAL_FIELDS + _COMPLEX_FIELDS)
            raise InvalidArgumentError(
                f"unknown custom parameter {key!r}; expected one of {allowed}")
    return ModelParams(**fields)


def resolve_model(cfg):
    """(ModelParams, run settings dict) for a parsed config.

    Presets take their dimensional defaults from the verification desk
    settings; ``custom`` uses generic fallbacks.  Config counts and the
    ``tolerance.spectrum`` override win over either.
    """
    if cfg.model == "custom":
        params = _custom_params(cfg.parameters)
        settings = dict(_CUSTOM_DEFAULTS)
    else:
        # Zero-imaginary values parsed as complex ("1,0") are demoted so
        # presets with genuinely real parameters accept them.
        cleaned = {
            k: (float(v.real)
                if isinstance(v, complex) and v.imag == 0.0 else v)
            for k, v in cfg.parameters.items()
        }
        params = preset(cfg.model, **cleaned).params
        settings = dict(MODEL_CHECK_SETTINGS[cfg.model])
    if cfg.cutoff_a is not None:
        settings["cutoff_a"] = cfg.cutoff_a
        if cfg.cutoff_b is None:
            settings["cutoff_b"] = None
    if cfg.cutoff_b is not None:
        settings["cutoff_b"] = cfg.cutoff_b
    if cfg.n_max is not None:
        settings["n_max"] = cfg.n_max
    settings["margin"] = 4 if cfg.margin is None else cfg.margin
    settings["tol"] = cfg.tolerances.get("spectrum", settings["tol"])
    return params, settings


# ---------------------------------------------------------------------------
# CSV emission
# ---------------------------------------------------------------------------


def _format_number(value):
    """17-significant-digit text; non-real values as one token ``re+imj``."""
    if isinstance(value, complex):
        if value.imag != 0.0:
            return f"{value.real:.17g}{value.imag:+.17g}j"
        value = value.real
    return f"{float(value):.17g}"


def render_csv(table):
    """The spectrum table in the documented CSV schema, as text.

    Formatting and row order are fixed, so identical inputs produce
    byte-identical output.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_HEADER)
    for e in table.entries:
        writer.writerow([
            str(e.n),
            str(e.m_n),
            _format_number(e.e_plus),
            _format_number(e.e_minus),
            "" if e.oracle_value is None else _format_number(e.oracle_value),
            "" if e.abs_err is None else _format_number(e.abs_err),
            e.flag or "ok",
        ])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _print_report(report):
    for line in report.lines():
        print(line)


def _cmd_spectrum(args):
    try:
        with open(args.config, encoding="utf-8") as fh:
            cfg = parse_config(fh.read())
    except OSError as err:
        raise InvalidArgumentError(f"cannot read config: {err}") from None
    if args.cutoff is not None:
        if args.cutoff < 1:
            raise InvalidArgumentError("--cutoff must be >= 1")
        # The override resizes the whole basis: the second cutoff reverts
        # to its model default (equal for two-mode runs, 1 otherwise).
        cfg = replace(cfg, cutoff_a=args.cutoff, cutoff_b=None)
    if args.dump_config:
        sys.stdout.write(dump_config(cfg))
        return 0
    params, settings = resolve_model(cfg)
    table, report = spectrum_with_oracle(
        params, settings["n_max"], settings["cutoff_a"], settings["cutoff_b"],
        margin=settings["margin"], tol=settings["tol"],
        max_index_sum=settings["max_index_sum"])
    text = render_csv(table)
    out = args.out or cfg.output
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        passed, failed = report.summary
        print(f"wrote {out}: {len(table.entries)} rows, "
              f"{passed} matched checks, {failed} failed")
    else:
        sys.stdout.write(text)
    return 1 if any(e.flag == "unmatched" for e in table.entries) else 0


def _cmd_verify_algebra(args):
    if args.cutoff < 4:
        raise InvalidArgumentError("--cutoff must be >= 4")
    if args.margin < 2:
        raise InvalidArgumentError("--margin must be >= 2")
    ccr = ccr_report(cutoff=(args.cutoff, args.cutoff), margin=args.margin)
    audit, closure = closure_report(cutoff=args.cutoff, margin=args.margin)
    report = VerificationReport.merge([ccr, closure])
    _print_report(report)
    for line in audit.lines():
        print(line)
    return 0 if report.all_passed else 1


def _cmd_verify_tilting(args):
    magnitudes = tuple(m for m in (0.1, 0.3, 0.5) if m <= args.max_xi + 1e-12)
    if args.max_xi > 0.62:
        raise InvalidArgumentError(
            "--max-xi above 0.62 is outside the audited pad-growth range")
    report = tilting_report(magnitudes=magnitudes)
    _print_report(report)
    listing = corrected_formula_listing()
    print("corrected transform columns (legacy printed forms vs verified):")
    if not listing:
        print("  none")
    for kind in sorted(listing):
        for generator in sorted(listing[kind]):
            print(f"  {kind}: {generator} "
                  f"(deviation {listing[kind][generator]:.3e})")
    return 0 if report.all_passed else 1


def _cmd_verify_model(args):
    model, table, report = preset_verification(args.name)
    settings = MODEL_CHECK_SETTINGS[args.name]
    reports = [report]
    if settings["scan"]:
        reports.append(convergence_scan(model.params, settings["scan"]))
    merged = VerificationReport.merge(reports)
    print(f"preset {model.name}: {model.description}")
    print(f"levels checked: {len(table.entries)} "
          f"(cutoffs {table.oracle_cutoffs}, tolerance {settings['tol']:.1e})")
    _print_report(merged)
    return 0 if merged.all_passed else 1


def _cmd_coherent(args):
    xi = _parse_number(args.xi, "--xi", 0)
    if not isinstance(xi, complex):
        xi = complex(xi, 0.0)
    if args.kind == "su11":
        if args.k is None:
            raise InvalidArgumentError("--kind su11 requires --k")
        weight = args.k
        ratio = math.tanh(abs(xi))
        if ratio <= 1e-12:
            length = args.n + 1
        else:
            tail = int(math.ceil(math.log(1e-16) / math.log(ratio))) + 8
            length = args.n + max(16, tail)
        length = min(length, args.n + 512)
        label = f"weight k={weight}"
    else:
        if args.j is None:
            raise InvalidArgumentError("--kind su2 requires --j")
        weight = args.j
        length = None
        label = f"spin j={weight}"
    coeffs = perelomov_state(args.kind, weight, args.n, xi, length)
    print(f"displaced {args.kind} state: {label}, start index {args.n}, "
          f"parameter {xi.real:g}{xi.imag:+g}j")
    print(f"{'index':>6}  {'re':>24}  {'im':>24}  {'abs':>12}")
    omitted = 0
    for t, c in enumerate(coeffs):
        if abs(c) < 1e-14 and t != args.n:
            omitted += 1
            continue
        print(f"{t:6d}  {c.real:+.16e}  {c.imag:+.16e}  {abs(c):.6e}")
    if omitted:
        print(f"({omitted} coefficients below 1e-14 omitted)")
    norm = float(sum(abs(c) ** 2 for c in coeffs))
    print(f"squared norm of listed expansion: {norm:.15f}")
    return 0


def _cmd_wavefunction(args):
    sample = wavefunction(args.nl, args.mn, args.rho, args.phi)
    print(f"value (orthonormal): {_format_number(sample.value)}")
    print(f"value (legacy prefactor): {_format_number(sample.legacy_value)}")
    return 0


# ---------------------------------------------------------------------------
# Parser assembly and entry point
# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sp4r",
        description="Two-mode bosonic operator algebra: spectra, "
                    "verification suites, coherent states, wavefunctions.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser(
        "spectrum", help="closed-form levels with oracle residuals (CSV)")
    sp.add_argument("--config", required=True, metavar="FILE",
                    help="run description (key = value lines)")
    sp.add_argument("--cutoff", type=int, metavar="N",
                    help="override the basis cutoff(s)")
    sp.add_argument("--out", metavar="FILE",
                    help="write the CSV here instead of stdout")
    sp.add_argument("--dump-config", action="store_true",
                    help="echo the parsed config and exit")
    sp.set_defaults(handler=_cmd_spectrum)

    ver = sub.add_parser("verify", help="run a verification suite")
    target = ver.add_subparsers(dest="target", required=True)

    alg = target.add_parser(
        "algebra", help="canonical commutators and the 45-pair closure audit")
    alg.add_argument("--cutoff", type=int, default=12, metavar="N")
    alg.add_argument("--margin", type=int, default=2, metavar="M")
    alg.set_defaults(handler=_cmd_verify_algebra)

    tilt = target.add_parser(
        "tilting", help="closed-form conjugation vs exact displaced columns")
    tilt.add_argument("--max-xi", type=float, default=0.5, metavar="X",
                      help="largest displacement magnitude in the sweep")
    tilt.set_defaults(handler=_cmd_verify_tilting)

    mod = target.add_parser(
        "model", help="preset closed-form spectrum vs dense diagonalization")
    mod.add_argument("name", choices=PRESET_NAMES)
    mod.set_defaults(handler=_cmd_verify_model)

    coh = sub.add_parser("coherent", help="displaced-state coefficients")
    coh.add_argument("--kind", required=True, choices=("su11", "su2"))
    coh.add_argument("--k", type=float, help="discrete-series weight (su11)")
    coh.add_argument("--j", type=float, help="spin (su2)")
    coh.add_argument("--xi", required=True, metavar="RE,IM",
                     help="displacement parameter")
    coh.add_argument("--n", type=int, default=0, metavar="N",
                     help="start index of the displaced basis state")
    coh.set_defaults(handler=_cmd_coherent)

    wf = sub.add_parser("wavefunction", help="oscillator eigenfunction value")
    wf.add_argument("--nl", type=int, required=True)
    wf.add_argument("--mn", type=int, required=True)
    wf.add_argument("--rho", type=float, required=True)
    wf.add_argument("--phi", type=float, required=True)
    wf.set_defaults(handler=_cmd_wavefunction)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except Sp4rError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
