"""
Command line interface.

Every command reads an instance (a JSON file or a bundled fixture name), runs
one procedure and prints a report. Exit codes:

    0   the property holds / the verification succeeded
    1   a counterexample was found, the condition fails, or nothing was found
    2   usage, parse, validation or budget error

Witnesses are re-checked with the core predicates before they are printed.

Dependencies:
    - click
"""

import logging
import time
from dataclasses import dataclass
from functools import wraps

import click
import pandas as pd

from krullab import krull, polyring
from krullab.config import create_config
from krullab.errors import KrullabError, TorsionClassGroup
from krullab.forms import RunOptionsForm, validated
from krullab.instances import parse_element, parse_instance, parse_native
from krullab.report_utils import (
    FAILS,
    HOLDS,
    Report,
    atoms_table,
    describe,
    factorizations_table,
    polynomials_table,
    residues_table,
    vector,
)

log = logging.getLogger(__name__)


class ClickHandler(logging.Handler):
    """Send log records to stderr through click."""

    def emit(self, record):
        try:
            click.echo(self.format(record), err=True)
        except Exception:
            self.handleError(record)


def configure_logging(level):
    logger = logging.getLogger("krullab")
    if not any(isinstance(h, ClickHandler) for h in logger.handlers):
        handler = ClickHandler()
        handler.setFormatter(logging.Formatter("[%(levelname)s] %(message)s"))
        logger.addHandler(handler)
    logger.setLevel(str(level).upper())


class InternalCheckFailed(KrullabError):
    """A witness did not survive re-verification."""


def confirm(condition, what):
    if not condition:
        raise InternalCheckFailed(f"witness failed re-verification: {what}")


class KrullabGroup(click.Group):
    """Command group mapping library errors to exit code 2."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except KrullabError as exc:
            click.echo(f"Error: {exc}", err=True)
            ctx.exit(2)


@click.group(cls=KrullabGroup)
@click.option("-v", "--verbose", count=True, help="-v for INFO, -vv for DEBUG logging.")
@click.pass_context
def cli(ctx, verbose):
    """Factorization laboratory for Krull monoids and semigroup rings."""
    ctx.ensure_object(dict)
    config = ctx.obj.setdefault("config", create_config())
    level = {0: config["LOG_LEVEL"], 1: "INFO"}.get(verbose, "DEBUG")
    configure_logging(level)


# -----------------------------------------------------------------------------
# Shared options
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class RunOptions:
    bound: int
    budget: int
    field: polyring.CoefficientField
    json_output: bool
    csv_path: str
    indent: int
    box_factor: int


def resolve_options(ctx, bound=None, budget=None, field=None, json_output=False, csv_path=None):
    """Merge flags over configuration and validate the result."""
    config = ctx.obj["config"]
    form = validated(RunOptionsForm, {
        "bound": config["BOUND"] if bound is None else bound,
        "budget": config["BUDGET"] if budget is None else budget,
        "field_tag": field or config["FIELD"],
    })
    return RunOptions(
        bound=form.bound.data,
        budget=form.budget.data,
        field=polyring.CoefficientField.from_tag(form.field_tag.data),
        json_output=json_output,
        csv_path=csv_path,
        indent=int(config["JSON_INDENT"]),
        box_factor=int(config["SATURATION_BOX_FACTOR"]),
    )


def emit(ctx, report, opts, started):
    report.elapsed = time.perf_counter() - started
    if opts.csv_path:
        report.write_csv(opts.csv_path)
    click.echo(report.to_json(opts.indent) if opts.json_output else report.to_text())
    ctx.exit(report.exit_code)


def output_options(func):
    func = click.option("--csv", "csv_path", type=click.Path(dir_okay=False, writable=True),
                        help="Export the report table as CSV.")(func)
    func = click.option("--json", "json_output", is_flag=True, help="Print the report as JSON.")(func)
    return func


def instance_command(name):
    """Register a command taking an instance, a bound and a budget."""

    def decorator(func):
        @wraps(func)
        def wrapper(instance, bound, budget, json_output, csv_path, **extra):
            ctx = click.get_current_context()
            opts = resolve_options(ctx, bound, budget, extra.pop("field", None), json_output, csv_path)
            started = time.perf_counter()
            parsed = parse_instance(instance, opts.box_factor)
            emit(ctx, func(parsed, opts, **extra), opts, started)

        wrapper = output_options(wrapper)
        wrapper = click.option("--budget", type=int, help="Node budget (default 10^6).")(wrapper)
        wrapper = click.option("--bound", type=int, help="Degree bound (default 8).")(wrapper)
        wrapper = click.option("--instance", "-i", required=True,
                               help="Instance file or bundled fixture name.")(wrapper)
        return cli.command(name)(wrapper)

    return decorator


def _quintuple(names, values, parsed):
    return [f"{n} = {describe(v, parsed)}" for n, v in zip(names, values)]


# -----------------------------------------------------------------------------
# Monoid commands
# -----------------------------------------------------------------------------
@instance_command("classgroup")
def classgroup(parsed, opts):
    """Print the class group and the class of every prime slot."""
    inst = parsed.krull
    table = pd.DataFrame(
        [{"prime": p.name, "class": str(p.cls)} for p in inst.primes], columns=["prime", "class"]
    )
    return Report(
        "classgroup", str(inst.class_group),
        witnesses={
            "free_rank": inst.class_group.free_rank,
            "torsion": list(inst.class_group.torsion_orders),
            "classes": {p.name: {"free": list(p.cls.free_part), "torsion": list(p.cls.torsion_part)}
                        for p in inst.primes},
        },
        table=table,
    )


@instance_command("atoms")
def atoms(parsed, opts):
    """List the atoms of the monoid."""
    found = krull.atoms(parsed.krull, opts.budget)
    return Report(
        "atoms", f"{len(found)} atoms", budget=opts.budget,
        witnesses={"atoms": [vector(a) for a in found]},
        table=atoms_table(found, parsed),
    )


@instance_command("factor")
@click.argument("element")
def factor(parsed, opts, element):
    """List every factorization of ELEMENT into atoms."""
    inst = parsed.krull
    h = parse_element(parsed, element)
    found = krull.factorizations(inst, h, opts.budget)
    atom_list = krull.atoms(inst, opts.budget)
    for f in found:
        confirm(f.product(atom_list) == h, f"factorization {f.indices}")
    return Report(
        "factor", f"{len(found)} factorizations of {describe(h, parsed)}", budget=opts.budget,
        witnesses={
            "element": vector(h),
            "atoms": [vector(a) for a in atom_list],
            "factorizations": [list(f.indices) for f in found],
        },
        table=factorizations_table(found, atom_list, parsed),
    )


@instance_command("lengths")
@click.argument("element")
def lengths(parsed, opts, element):
    """Length set and elasticity of ELEMENT."""
    h = parse_element(parsed, element)
    result = krull.length_set(parsed.krull, h, opts.budget)
    lengths_text = "{" + ", ".join(str(n) for n in result.lengths) + "}"
    return Report(
        "lengths", f"lengths {lengths_text}, elasticity {result.elasticity}",
        budget=opts.budget,
        witnesses={
            "element": vector(h),
            "lengths": list(result.lengths),
            "elasticity": str(result.elasticity),
            "factors_uniquely": result.factors_uniquely,
        },
        lines=["factors uniquely" if result.factors_uniquely else "does not factor uniquely"],
    )


@instance_command("check-hfd")
def check_hfd(parsed, opts):
    """Search for an element with two factorization lengths."""
    inst = parsed.krull
    result = krull.check_hfd(inst, opts.bound, opts.budget)
    if result.holds:
        return Report("check-hfd", "holds", HOLDS, opts.bound, opts.budget)
    confirm(len(krull.length_set(inst, result.element, opts.budget).lengths) > 1, "length set")
    return Report(
        "check-hfd", "counterexample", FAILS, opts.bound, opts.budget,
        witnesses={
            "element": vector(result.element),
            "lengths": [result.shortest, result.longest],
        },
        lines=[
            f"h = {describe(result.element, parsed)}",
            f"has factorizations of lengths {result.shortest} and {result.longest}",
        ],
    )


@instance_command("check-z")
def check_z(parsed, opts):
    """Search for a failure of the Z-property."""
    inst = parsed.krull
    result = krull.check_z_property(inst, opts.bound, opts.budget)
    if result.holds:
        return Report("check-z", "holds", HOLDS, opts.bound, opts.budget)
    _confirm_z_failure(inst, *result.quintuple, budget=opts.budget)
    return Report(
        "check-z", "counterexample", FAILS, opts.bound, opts.budget,
        witnesses=dict(zip("abcde", (vector(v) for v in result.quintuple))),
        lines=_quintuple("abcde", result.quintuple, parsed)
        + ["abc = de, and ab shares no nonunit factor with d or with e"],
    )


def _confirm_z_failure(inst, a, b, c, d, e, budget):
    confirm(all(krull.is_element(inst, v) and not v.is_zero() for v in (a, b, c, d, e)), "elements")
    confirm(a + b + c == d + e, "abc = de")
    confirm(not krull.common_factor_exists(inst, a + b, d, budget), "[ab, d] = 1")
    confirm(not krull.common_factor_exists(inst, a + b, e, budget), "[ab, e] = 1")


@instance_command("check-c")
@click.option("--gen", "-g", "gens", multiple=True, required=True, help="Ideal generator (repeat).")
def check_c(parsed, opts, gens):
    """Condition (C) for the primitive ideal generated by --gen elements."""
    inst = parsed.krull
    ideal = krull.IdealGens(tuple(parse_element(parsed, g) for g in gens))
    result = krull.check_condition_C(inst, ideal, opts.budget)
    witnesses = {"gcd": vector(result.gcd)}
    if not result.holds:
        return Report(
            "check-c", "fails", FAILS, budget=opts.budget, witnesses=witnesses,
            lines=[f"no atom lies above the content {result.gcd}"],
        )
    atom_set = {tuple(a) for a in krull.atoms(inst, opts.budget)}
    confirm(tuple(result.alpha) in atom_set and result.gcd <= result.alpha, "alpha")
    witnesses["alpha"] = vector(result.alpha)
    return Report(
        "check-c", "holds", HOLDS, budget=opts.budget, witnesses=witnesses,
        lines=[f"alpha = {describe(result.alpha, parsed)} lies in the v-closure"],
    )


@instance_command("check-cond3")
@click.option("--left", "-a", multiple=True, required=True, help="Generator of A (repeat).")
@click.option("--right", "-b", multiple=True, required=True, help="Generator of B (repeat).")
def check_cond3(parsed, opts, left, right):
    """Whether every element of (AB)^-1 splits as uv with u in A^-1, v in B^-1."""
    inst = parsed.krull
    A = krull.IdealGens(tuple(parse_element(parsed, g) for g in left))
    B = krull.IdealGens(tuple(parse_element(parsed, g) for g in right))
    result = krull.check_condition_3(inst, A, B, opts.budget)
    witnesses = {
        "residues": [vector(w) for w in result.residues],
        "product_primitive": result.product_primitive,
    }
    lines = [f"AB is {'primitive' if result.product_primitive else 'not primitive'}"]
    table = residues_table(result.residues, result.splittings)
    if result.holds:
        for w, u, v in result.splittings:
            confirm(u + v == w and krull.divisor_class(inst, u).is_identity(), "splitting")
        return Report("check-cond3", "holds", HOLDS, budget=opts.budget,
                      witnesses=witnesses, lines=lines, table=table)
    witnesses["unsplittable"] = vector(result.unsplittable)
    lines.append(f"w = {result.unsplittable} does not split")
    return Report("check-cond3", "counterexample", FAILS, budget=opts.budget,
                  witnesses=witnesses, lines=lines, table=table)


@instance_command("unique-square")
def unique_square(parsed, opts):
    """Find an atom in a nontorsion prime whose square factors uniquely."""
    inst = parsed.krull
    try:
        result = krull.find_unique_square(inst, opts.bound, opts.budget)
    except TorsionClassGroup as exc:
        return Report("unique-square", "torsion class group", FAILS, opts.bound, opts.budget,
                      lines=[str(exc)])
    if result is None:
        return Report("unique-square", "none found", FAILS, opts.bound, opts.budget)
    square = krull.length_set(inst, result.x + result.x, opts.budget)
    confirm(square.factors_uniquely, "unique square")
    return Report(
        "unique-square", "found", HOLDS, opts.bound, opts.budget,
        witnesses={
            "prime": result.prime,
            "primes": list(result.primes),
            "x": vector(result.x),
            "eta": result.eta,
        },
        lines=[
            f"x = {describe(result.x, parsed)} in {result.prime}, eta = {result.eta}",
            f"x^2 factors uniquely (primes {', '.join(result.primes)})",
        ],
    )


@instance_command("z-witness")
@click.argument("element")
def z_witness(parsed, opts, element):
    """Build the Z-property counterexample attached to the atom ELEMENT."""
    inst = parsed.krull
    x = parse_element(parsed, element)
    result = krull.z_witness(inst, x, opts.bound, opts.budget)
    if result is None:
        return Report("z-witness", "no witness found", FAILS, opts.bound, opts.budget)
    _confirm_z_failure(inst, *result.quintuple, budget=opts.budget)
    witnesses = {
        "prime": result.prime,
        "y": vector(result.y),
        "z": vector(result.z),
        "n": result.n,
    }
    witnesses.update(zip("abcde", (vector(v) for v in result.quintuple)))
    return Report(
        "z-witness", "found", HOLDS, opts.bound, opts.budget,
        witnesses=witnesses,
        lines=[
            f"P = {result.prime}, y = {describe(result.y, parsed)}, z = {result.z}, n = {result.n}",
            *_quintuple("abcde", result.quintuple, parsed),
        ],
    )


@instance_command("verify-identity")
@click.option("--field", help="Coefficient field: q or f<p>.")
@click.argument("quintuple", nargs=5)
def verify_identity(parsed, opts, quintuple):
    """Check fg = ab*h for the quintuple A B C D E."""
    if parsed.semigroup is not None:
        source = parsed.semigroup
        values = [parse_native(parsed, text) for text in quintuple]
    else:
        source = parsed.krull
        values = [parse_element(parsed, text) for text in quintuple]
    result = polyring.verify_z_failure_identity(source, *values, field=opts.field, budget=opts.budget)
    return Report(
        "verify-identity", "verified", HOLDS, budget=opts.budget,
        witnesses={
            "f": str(result.f),
            "g": str(result.g),
            "h": str(result.h),
            "fg": str(result.product),
            "f_primitive": result.f_primitive,
            "g_primitive": result.g_primitive,
        },
        lines=[
            f"f  = {result.f}",
            f"g  = {result.g}",
            f"h  = {result.h}",
            f"fg = ({result.ab})*h = {result.product}",
            f"f primitive: {result.f_primitive}, g primitive: {result.g_primitive}",
        ],
    )


# -----------------------------------------------------------------------------
# Semigroup ring pipeline
# -----------------------------------------------------------------------------
@cli.command("section4")
@click.option("--field", help="Coefficient field: q or f<p>.")
@click.option("--budget", type=int, help="Node budget (default 10^6).")
@output_options
@click.pass_context
def section4(ctx, field, budget, json_output, csv_path):
    """Factorizations of (x^2+y^2)(x^2+z^2x^2) in F[x, y, zx, zy]."""
    opts = resolve_options(ctx, None, budget, field, json_output, csv_path)
    started = time.perf_counter()
    result = polyring.sum_of_squares_example(opts.field, budget=opts.budget)
    identity = result.fg_identity
    sets = " and ".join("{" + str(n) + "}" for n in result.lengths)
    if result.hfd_fails:
        verdict = f"length sets {sets}: not HFD"
    else:
        verdict = f"length set {sets}: no length discrepancy"
    condition = result.constant_factor
    lines = [
        f"over {result.field}: (x^2 + y^2)*(x^2 + x^2*z^2) = x*x*(x^2 + y^2 + x^2*z^2 + y^2*z^2)"
        f" {'verified' if result.identity_holds else 'FAILS'}",
        "certificate: " + ", ".join(f"({p})" for p in result.certificate.factors),
        *result.notes,
        f"f = {identity.f}, g = {identity.g}",
        f"fg = ({identity.ab})*({identity.h})",
        "constant factor condition: "
        + ("holds" if condition.holds else f"fails with c = {condition.factor}"),
    ]
    report = Report(
        "section4", verdict, HOLDS if result.identity_holds else FAILS, budget=opts.budget,
        witnesses={
            "field": result.field.tag,
            "identity_holds": result.identity_holds,
            "lengths": list(result.lengths),
            "factorizations": [[str(b) for b in blocks] for blocks in result.factorizations],
            "fg": str(identity.product),
            "h": str(identity.h),
            "constant_factor": None if condition.holds else str(condition.factor),
        },
        lines=lines,
        table=polynomials_table(result.factorizations),
    )
    emit(ctx, report, opts, started)


cli.add_command(section4, "sum-of-squares")


if __name__ == "__main__":
    cli()
