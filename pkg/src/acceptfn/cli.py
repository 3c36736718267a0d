"""Command line interface.

Exit codes: 0 when the checked property holds (or the command only reports),
1 when it fails, 2 on any input, parse or validation error.  Reports go to
stdout, errors to stderr; ``--json`` switches stdout to a JSON payload
carrying the same verdicts and witnesses as the text report.
"""

from __future__ import annotations

import functools
import json
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import acceptance as acc
from . import conditioning as cond
from .core import SetFunction, Universe, dual, moebius
from .errors import AcceptfnError
from .fileformat import MeasureSpec, emit_measure_file, parse_event, parse_measure_file
from .klm import ALL_RULES, KLM_MAX_ATOMS, Rule, check_klm
from .measures import from_mass, from_possibility, from_probability

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

_MEASURES_BY_KIND = {
    "table": ("g",),
    "prob": ("p",),
    "mass": ("bel", "pl"),
    "poss": ("pi", "n"),
}


class InputError(AcceptfnError):
    pass


def fmt(v) -> str:
    return str(Fraction(v))


def load(path: str) -> MeasureSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not UTF-8 text ({exc.reason})") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return parse_measure_file(text)


def select_measure(spec: MeasureSpec, name: str | None) -> tuple[str, SetFunction]:
    allowed = _MEASURES_BY_KIND[spec.kind]
    name = name or allowed[0]
    if name not in allowed:
        raise InputError(
            f"measure {name!r} not available for kind {spec.kind!r}; choose from {', '.join(allowed)}"
        )
    v = spec.value
    if spec.kind == "table":
        return name, v
    if spec.kind == "prob":
        return name, from_probability(v)
    if spec.kind == "mass":
        bel, pl = from_mass(v)
        return name, bel if name == "bel" else pl
    pi, nec = from_possibility(v)
    return name, pi if name == "pi" else nec


def emit(payload: dict, text: str, as_json: bool) -> None:
    if as_json:
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        click.echo(text.rstrip("\n"))


def command(fn):
    """Map library errors to exit code 2 and return codes to process exit."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            code = fn(*args, **kwargs)
        except AcceptfnError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        sys.exit(code or EXIT_OK)

    return wrapper


json_option = click.option("--json", "as_json", is_flag=True, help="Emit a JSON payload.")
measure_option = click.option(
    "--measure",
    type=click.Choice(["g", "p", "bel", "pl", "pi", "n"]),
    default=None,
    help="Which set function of the file to analyze (mass: bel|pl, poss: pi|n).",
)
file_argument = click.argument("file", type=click.Path(dir_okay=False))


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact")
def main():
    """Analyze confidence measures: acceptance, conditioning, KLM rules."""


@main.command()
@file_argument
@measure_option
@json_option
@command
def validate(file, measure, as_json):
    """Check the confidence-measure axioms (exit 1 on violation)."""
    spec = load(file)
    name, f = select_measure(spec, measure)
    report = f.confidence_report
    u = f.universe
    payload = {
        "command": "validate",
        "kind": spec.kind,
        "measure": name,
        "ok": report.ok,
        "violations": [
            {
                "rule": v.rule,
                "events": [u.format(e) for e in v.events],
                "values": [fmt(x) for x in v.values],
            }
            for v in report.violations
        ],
    }
    lines = [f"confidence measure: {'yes' if report.ok else 'no'}"]
    lines += [f"  violation: {v.describe(u)}" for v in report.violations]
    emit(payload, "\n".join(lines), as_json)
    return EXIT_OK if report.ok else EXIT_FAIL


@main.command()
@file_argument
@measure_option
@json_option
@command
def accept(file, measure, as_json):
    """List the accepted events (the belief base)."""
    spec = load(file)
    name, f = select_measure(spec, measure)
    u = f.universe
    base = acc.accepted_set(f)
    payload = {
        "command": "accept",
        "measure": name,
        "count": len(base),
        "accepted": [u.format(e) for e in base],
    }
    lines = [f"accepted events: {len(base)}"] + [f"  {u.format(e)}" for e in base]
    emit(payload, "\n".join(lines), as_json)
    return EXIT_OK


@main.command()
@file_argument
@measure_option
@json_option
@command
def kernel(file, measure, as_json):
    """Intersection of accepted events, and the smallest certain event."""
    spec = load(file)
    name, f = select_measure(spec, measure)
    u = f.universe
    report = acc.is_acceptance(f)
    unit = acc.unit_kernel(f)
    payload = {
        "command": "kernel",
        "measure": name,
        "kernel": u.format(report.kernel),
        "kernel_accepted": report.is_acceptance,
        "unit_kernel": None if unit.event is None else u.format(unit.event),
    }
    lines = [
        f"kernel: {u.format(report.kernel)} ({'accepted' if report else 'not accepted'})",
        "unit kernel: " + ("none" if unit.event is None else u.format(unit.event)),
    ]
    emit(payload, "\n".join(lines), as_json)
    return EXIT_OK


def _classification_payload(spec: MeasureSpec):
    u = spec.universe
    if spec.kind == "mass":
        c = acc.classify_belief(spec.value)
    elif spec.kind == "prob":
        c = acc.classify_probability(spec.value)
    elif spec.kind == "poss":
        return "possibility", None
    else:
        return None, None
    witness = None
    if isinstance(c, acc.NotAcceptance):
        witness = [u.format(e) for e in c.witness]
    return c.label, witness


@main.command()
@file_argument
@measure_option
@json_option
@command
def classify(file, measure, as_json):
    """Decide whether the measure is an acceptance function (exit 1 if not)."""
    spec = load(file)
    name, f = select_measure(spec, measure)
    payload = _classify(spec, name, f)
    emit(payload, _classify_text(payload), as_json)
    return EXIT_OK if payload["acceptance"] else EXIT_FAIL


def _classify(spec, name, f) -> dict:
    u = f.universe
    report = acc.is_acceptance(f)
    label, witness = _classification_payload(spec)
    if witness is None and not report and u.size <= acc.ORACLE_MAX_ATOMS:
        verdict = acc.is_acceptance_bruteforce(f)
        witness = [u.format(e) for e in verdict.witness]
    return {
        "command": "classify",
        "kind": spec.kind,
        "measure": name,
        "acceptance": report.is_acceptance,
        "kernel": u.format(report.kernel),
        "kernel_value": fmt(report.kernel_value),
        "complement_value": fmt(report.complement_value),
        "indifference_level": None
        if report.indifference_level is None
        else fmt(report.indifference_level),
        "accepted_count": report.accepted_count,
        "class": label,
        "witness": witness,
        "failure": report.failure_witness,
    }


def _classify_text(p: dict) -> str:
    head = f"acceptance: {'yes' if p['acceptance'] else 'no'}, kernel {p['kernel']}"
    if p["class"]:
        head += f", class: {p['class']}"
    lines = [head]
    if p["indifference_level"] is not None:
        lines.append(f"indifference level: {p['indifference_level']}")
    lines.append(f"accepted events: {p['accepted_count']}")
    if p["failure"]:
        lines.append(p["failure"])
    if p["witness"]:
        a, b = p["witness"]
        lines.append(f"witness: {a} and {b} accepted, their intersection is not")
    return "\n".join(lines)


@main.command("moebius")
@file_argument
@measure_option
@click.option("--require-belief", is_flag=True, help="Exit 1 if any mass is negative.")
@json_option
@command
def moebius_cmd(file, measure, require_belief, as_json):
    """Möbius inverse of the measure (signed mass)."""
    spec = load(file)
    name, f = select_measure(spec, measure)
    u = f.universe
    m = moebius(f)
    ev, low = m.most_negative()
    is_bel = low >= 0
    payload = {
        "command": "moebius",
        "measure": name,
        "masses": [{"event": u.format(e), "value": fmt(v)} for e, v in m.nonzero().items()],
        "belief_function": is_bel,
        "most_negative": None if is_bel else {"event": u.format(ev), "value": fmt(low)},
    }
    lines = [f"m {u.format(e)} = {v}" for e, v in m.nonzero().items()]
    lines.append(f"belief function: {'yes' if is_bel else 'no'}")
    if not is_bel:
        lines.append(f"most negative: m {u.format(ev)} = {low}")
    emit(payload, "\n".join(lines), as_json)
    return EXIT_FAIL if require_belief and not is_bel else EXIT_OK


@main.command("dual")
@file_argument
@measure_option
@json_option
@command
def dual_cmd(file, measure, as_json):
    """Write the dual measure h(A) = 1 - f(not A) as a table file."""
    spec = load(file)
    name, f = select_measure(spec, measure)
    text = emit_measure_file(dual(f))
    emit({"command": "dual", "measure": name, "file": text}, text, as_json)
    return EXIT_OK


def _context(u: Universe, text: str, option: str) -> int:
    try:
        return parse_event(u, text)
    except AcceptfnError as exc:
        raise InputError(f"{option}: {exc}") from None


@main.command()
@file_argument
@click.option("--context", "context_text", required=True, help='Context event, e.g. "{a,b}".')
@click.option(
    "--rule",
    type=click.Choice(["generic", "bayes", "possibilistic"]),
    default="generic",
    show_default=True,
)
@measure_option
@json_option
@command
def condition(file, context_text, rule, measure, as_json):
    """Conditioned belief base given a context (exit 1 if not a belief set)."""
    spec = load(file)
    name, f = select_measure(spec, measure)
    u = f.universe
    c = _context(u, context_text, "--context")
    if rule == "bayes" and spec.kind != "prob":
        raise InputError("--rule bayes needs a prob file")
    if rule == "possibilistic" and spec.kind != "poss":
        raise InputError("--rule possibilistic needs a poss file")

    base = cond.conditioned_base(f, c)
    report = cond.is_conditioned_base_belief_set(f, c) if u.size <= acc.ORACLE_MAX_ATOMS else None
    conditioned_file = None
    if rule == "bayes":
        conditioned_file = emit_measure_file(cond.condition_probability(spec.value, c))
    elif rule == "possibilistic":
        conditioned_file = emit_measure_file(
            cond.conditional_possibility_distribution(spec.value, c)
        )
    payload = {
        "command": "condition",
        "measure": name,
        "rule": rule,
        "context": u.format(c),
        "base": [u.format(e) for e in base],
        "base_size": len(base),
        "belief_set": None if report is None else report.is_belief_set,
        "witness": None
        if report is None or report.violation_witness is None
        else [u.format(e) for e in report.violation_witness],
        "conditioned_kernel": None
        if report is None or report.conditioned_kernel is None
        else u.format(report.conditioned_kernel),
        "conditioned_measure": conditioned_file,
    }
    lines = [f"context {u.format(c)}: {len(base)} events in the conditioned base"]
    lines += [f"  {u.format(e)}" for e in base]
    if report is not None:
        lines.append(f"belief set: {'yes' if report else 'no'}")
        if report.violation_witness:
            a, b = payload["witness"]
            lines.append(f"witness: {a} and {b} in the base, their intersection is not")
        if report.conditioned_kernel is not None:
            lines.append(f"conditioned kernel: {payload['conditioned_kernel']}")
    if conditioned_file:
        lines.append(f"conditioned measure ({rule}):")
        lines.append(conditioned_file)
    emit(payload, "\n".join(lines), as_json)
    if report is not None and not report:
        return EXIT_FAIL
    return EXIT_OK


_B_LABELS = ("g(A union E)", "g(B)", "g(B union E)", "g(A)", "g(E)", "g(A union B)")
_A_LABELS = (
    "g(S and C)", "g(not S and C)", "g(T and C)", "g(not T and C)",
    "g(S and T and C)", "g(not (S and T) and C)",
)


@main.command()
@file_argument
@click.option("--property", "prop", type=click.Choice(["A", "B"]), default="B", show_default=True)
@click.option("--max-exhaustive", type=int, default=None, help="Largest universe swept exhaustively.")
@click.option("--samples", type=int, default=None, help="Sample count beyond the exhaustive limit.")
@click.option("--seed", type=int, default=0, show_default=True)
@measure_option
@json_option
@command
def tolerant(file, prop, max_exhaustive, samples, seed, measure, as_json):
    """Context tolerance: sweep property (A) or (B) (exit 1 on a counterexample)."""
    spec = load(file)
    name, f = select_measure(spec, measure)
    u = f.universe
    check = cond.check_property_A if prop == "A" else cond.check_property_B
    r = check(f, max_exhaustive=max_exhaustive, samples=samples, seed=seed)
    roles = ("C", "S", "T") if prop == "A" else ("A", "B", "E")
    labels = _A_LABELS if prop == "A" else _B_LABELS
    payload = {
        "command": "tolerant",
        "measure": name,
        "property": prop,
        "status": r.status,
        "mode": r.mode.value,
        "samples": r.samples,
        "counterexample": None
        if r.counterexample is None
        else dict(zip(roles, (u.format(e) for e in r.counterexample))),
        "values": None if r.values is None else dict(zip(labels, (fmt(v) for v in r.values))),
    }
    lines = [f"property {prop}: {r.status} ({r.mode.value}"
             + (f", {r.samples} samples)" if r.samples else ")")]
    if r.counterexample is not None:
        lines.append(
            "counterexample: " + " ".join(f"{k}={v}" for k, v in payload["counterexample"].items())
        )
        v = r.values
        lines.append(f"  {labels[0]} = {v[0]} > {labels[1]} = {v[1]}")
        lines.append(f"  {labels[2]} = {v[2]} > {labels[3]} = {v[3]}")
        lines.append(f"  {labels[4]} = {v[4]} <= {labels[5]} = {v[5]}")
    emit(payload, "\n".join(lines), as_json)
    return EXIT_FAIL if not r.holds else EXIT_OK


def _parse_rules(text: str) -> list[Rule]:
    rules = []
    for part in text.split(","):
        part = part.strip().lower()
        if not part:
            continue
        try:
            rules.append(Rule(part))
        except ValueError:
            raise InputError(f"unknown KLM property {part!r}") from None
    return rules


@main.command()
@file_argument
@click.option("--props", default=",".join(r.value for r in ALL_RULES), show_default=True)
@click.option("--max-exhaustive", type=int, default=KLM_MAX_ATOMS, show_default=True)
@click.option("--samples", type=int, default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@measure_option
@json_option
@command
def klm(file, props, max_exhaustive, samples, seed, measure, as_json):
    """Check KLM rules for A |~ B := f(A and B) > f(A and not B) (exit 1 on failure)."""
    spec = load(file)
    name, f = select_measure(spec, measure)
    u = f.universe
    rules = _parse_rules(props)
    report = check_klm(f, rules, max_exhaustive=max_exhaustive, samples=samples, seed=seed)
    results = {}
    lines = [f"mode: {report.mode.value}"]
    for rule, r in report.results.items():
        results[rule.value] = {
            "status": r.status,
            "counterexample": None
            if r.counterexample is None
            else [u.format(e) for e in r.counterexample],
            "values": None if r.values is None else [fmt(v) for v in r.values],
        }
        line = f"{rule.value.upper()}: {r.status}"
        if r.counterexample is not None:
            line += " at " + ", ".join(u.format(e) for e in r.counterexample)
        lines.append(line)
    payload = {
        "command": "klm",
        "measure": name,
        "mode": report.mode.value,
        "samples": report.samples,
        "results": results,
    }
    emit(payload, "\n".join(lines), as_json)
    return EXIT_OK if report.ok else EXIT_FAIL


@main.command()
@file_argument
@click.option("--event", "event_text", required=True)
@click.option("--context", "context_text", required=True)
@measure_option
@json_option
@command
def independent(file, event_text, context_text, measure, as_json):
    """Is the event accepted, and still accepted given the context? (exit 1 if not)"""
    spec = load(file)
    name, f = select_measure(spec, measure)
    u = f.universe
    a = _context(u, event_text, "--event")
    c = _context(u, context_text, "--context")
    verdict = cond.is_independent(f, a, c)
    full = u.full
    payload = {
        "command": "independent",
        "measure": name,
        "event": u.format(a),
        "context": u.format(c),
        "independent": verdict,
        "accepted": f(a) > f(full ^ a),
        "conditionally_accepted": f(a & c) > f((full ^ a) & c),
    }
    lines = [
        f"{u.format(a)} independent from {u.format(c)}: {'yes' if verdict else 'no'}",
        f"  accepted: {'yes' if payload['accepted'] else 'no'}",
        f"  accepted given context: {'yes' if payload['conditionally_accepted'] else 'no'}",
    ]
    emit(payload, "\n".join(lines), as_json)
    return EXIT_OK if verdict else EXIT_FAIL


@main.command()
@file_argument
@click.option("--context", "context_text", required=True)
@measure_option
@json_option
@command
def update(file, context_text, measure, as_json):
    """Classify conditioning on the context as expansion, revision or undefined."""
    spec = load(file)
    name, f = select_measure(spec, measure)
    u = f.universe
    c = _context(u, context_text, "--context")
    r = cond.classify_update(f, c)
    cand = None if r.kernel_candidate is None else u.format(r.kernel_candidate)
    payload = {
        "command": "update",
        "measure": name,
        "context": u.format(c),
        "kernel": u.format(r.kernel),
        "update": r.update.value,
        "kernel_candidate": cand,
        "candidate_verified": r.candidate_verified,
    }
    lines = [f"update: {r.update.value} (kernel {u.format(r.kernel)}, context {u.format(c)})"]
    if cand is not None:
        status = "confirmed" if r.candidate_verified else "not confirmed"
        lines.append(f"kernel candidate in context: {cand} ({status} on the restriction)")
    emit(payload, "\n".join(lines), as_json)
    return EXIT_OK


REPORT_FIGURE_MAX_ATOMS = 10


@main.command()
@file_argument
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
@click.option("--delimiter", default=",", show_default=True)
@measure_option
@json_option
@command
def report(file, out_dir, delimiter, measure, as_json):
    """Write a per-event table and a bar chart next to the classification."""
    from .plotting import plot_events, write_event_table

    spec = load(file)
    name, f = select_measure(spec, measure)
    f.require_confidence()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = Path(file).stem
    summary = _classify(spec, name, f)
    table_path = write_event_table(f, out / f"{stem}.{name}.csv", delimiter=delimiter)
    figure_path = None
    if f.universe.size <= REPORT_FIGURE_MAX_ATOMS:
        title = f"{stem} ({name}): acceptance {'yes' if summary['acceptance'] else 'no'}, kernel {summary['kernel']}"
        level = summary["indifference_level"]
        figure_path = plot_events(
            f, out / f"{stem}.{name}.png", title, None if level is None else Fraction(level)
        )
    payload = {
        "command": "report",
        "measure": name,
        "table": str(table_path),
        "figure": None if figure_path is None else str(figure_path),
        "classification": summary,
    }
    lines = [_classify_text(summary), f"table: {table_path}"]
    lines.append(f"figure: {figure_path}" if figure_path else "figure: skipped (universe too large)")
    emit(payload, "\n".join(lines), as_json)
    return EXIT_OK


def run(argv=None) -> int:
    """Invoke the CLI without exiting the interpreter; returns the exit code."""
    try:
        main.main(args=argv, standalone_mode=True)
    except SystemExit as exc:
        return int(exc.code or 0)
    return 0


if __name__ == "__main__":
    main()
