"""``irrtopo`` command line front end.

Exit codes: 0 ok, 2 parse error, 3 validation error, 4 ``--assert`` mismatch,
5 an Unknown verdict (budget exhausted).
"""

from __future__ import annotations

import functools
import sys

import click

from . import __version__
from .derive import DEFAULT_BOUND, has_si_infty_property, si_iterate, si_open, sobriety_spectrum, thm23_crosscheck
from .irr import is_irreducible, sup
from .kelley import SIZES, battery, kelley_check, main_verdict
from .nets import (
    NotASubnet, NotInWitnessFamily, apply_subnet, check_subnet, format_net, irr_converges,
    parse_net, parse_subnet, topo_converges,
)
from .report import (
    ReportDocument, contains_unknown, emit_report, headline, lookup, matches, space_fingerprint, verdict_dict,
)
from .spaces import load_space
from .verdict import (
    EmptySetError, IndexOutOfRange, ParseError, PointNotInCarrier, UnsupportedKind, ValidationError,
)
from .waybelow import interpolate, is_irr_continuous, way_below

EXIT_PARSE, EXIT_VALIDATION, EXIT_ASSERT, EXIT_UNKNOWN = 2, 3, 4, 5

_VALIDATION_ERRORS = (
    ValidationError, PointNotInCarrier, EmptySetError, IndexOutOfRange,
    NotInWitnessFamily, NotASubnet, UnsupportedKind,
)


class _Ctx:
    def __init__(self, path, as_json, seed, budget, asserts):
        self.path = path
        self.as_json = as_json
        self.seed = seed
        self.budget = budget
        self.asserts = asserts
        self.budgets = {}
        self.S = None


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError(0, "a readable UTF-8 space file", str(e)) from e
    return load_space(text)


def command(name: str):
    """Wrap a subcommand body ``fn(ctx, ...) -> results`` with the shared options,
    loading, report emission and exit-code handling."""

    def deco(fn):
        @click.argument("file", type=click.Path(dir_okay=False))
        @click.option("--json", "as_json", is_flag=True, help="Emit the JSON report.")
        @click.option("--seed", type=int, default=0, show_default=True, help="Battery seed.")
        @click.option("--budget", type=int, default=None, help="Cap on sampled configurations.")
        @click.option("--assert", "asserts", multiple=True, metavar="KEY=VALUE",
                      help="Exit 4 unless the named result matches.")
        @functools.wraps(fn)
        def wrapper(file, as_json, seed, budget, asserts, **kw):
            ctx = _Ctx(file, as_json, seed, budget, asserts)
            try:
                ctx.S = _load(file)
                results = fn(ctx, **kw)
            except ParseError as e:
                click.echo(f"parse error: {e}", err=True)
                sys.exit(EXIT_PARSE)
            except _VALIDATION_ERRORS as e:
                click.echo(f"{type(e).__name__}: {e}", err=True)
                sys.exit(EXIT_VALIDATION)
            doc = ReportDocument(
                command=name,
                space={
                    "name": ctx.S.pres.name,
                    "kind": ctx.S.kind,
                    "topology": str(ctx.S.topology),
                    "fingerprint": space_fingerprint(ctx.S.canonical_text()),
                },
                results=results,
                seed=seed,
                budgets=ctx.budgets,
            )
            sys.stdout.buffer.write(emit_report(doc, "json" if as_json else "text"))
            sys.stdout.flush()
            code = 0
            for a in asserts:
                key, sep, want = a.partition("=")
                if not sep:
                    click.echo(f"bad --assert {a!r}: expected KEY=VALUE", err=True)
                    sys.exit(EXIT_PARSE)
                got = lookup(results, key.strip())
                if got is None and key.strip() == name:
                    got = headline(results)
                if got is None or not matches(got, want):
                    click.echo(f"assertion failed: {key.strip()} = {_short(got)}, wanted {want.strip()}", err=True)
                    code = EXIT_ASSERT
            if code == 0 and contains_unknown(results):
                code = EXIT_UNKNOWN
            sys.exit(code)

        return main.command(name)(wrapper)

    return deco


def _short(v) -> str:
    if isinstance(v, dict) and "status" in v:
        return v["status"]
    return str(v)


@click.group()
@click.version_option(__version__, prog_name="irrtopo")
def main():
    """Irreducible sets, SI derivatives and Irr-convergence on presented spaces."""


@command("space")
@click.option("--set", "set_text", default=None, help="Definable set to inspect.")
def _space(ctx, set_text):
    """Describe the space, or one set in it with --set."""
    S = ctx.S
    out = {
        "canonical": S.canonical_text(),
        "topology_fingerprint": list(S.fingerprint()),
        "open_schemas": list(S.open_schemas()),
    }
    if set_text is not None:
        E = S.parse_set(set_text)
        out["set"] = {
            "set": S.fmt_set(E),
            "is_open": S.is_open(E),
            "is_closed": S.is_closed(E),
            "closure": S.fmt_set(S.closure(E)),
            "up": S.fmt_set(S.up_set(E)),
            "down": S.fmt_set(S.down_set(E)),
        }
    return out


def _irr_dict(S, r) -> dict:
    if r.irreducible:
        return {"status": "proven", "certificate": f"{r.rule}: {r.trace}" if r.trace else r.rule}
    return {"status": "refuted", "witness": [S.fmt_set(U) for U in r.opens]}


@command("irr")
@click.option("--set", "set_text", required=True, help="Definable set.")
def _irr(ctx, set_text):
    """Decide whether a set is irreducible."""
    S = ctx.S
    E = S.parse_set(set_text)
    out = {"set": S.fmt_set(E), "irreducible": _irr_dict(S, is_irreducible(S, E))}
    if not S.is_empty(E):
        out["sup"] = sup(S, E).describe(S.fmt_point)
    return out


@command("sup")
@click.option("--set", "set_text", required=True, help="Definable set.")
def _sup(ctx, set_text):
    """Supremum of a set, if it exists."""
    S = ctx.S
    E = S.parse_set(set_text)
    return {"set": S.fmt_set(E), "sup": sup(S, E).describe(S.fmt_point)}


@command("si")
@click.option("--iterate", is_flag=True, help="Iterate the derivative to a fixpoint.")
@click.option("--bound", type=int, default=DEFAULT_BOUND, show_default=True)
@click.option("--set", "set_text", default=None, help="Ask whether this set is SI-open.")
def _si(ctx, iterate, bound, set_text):
    """SI-derived topology: one step, the full iteration, or si-openness of a set."""
    S = ctx.S
    out = {}
    if set_text is not None:
        U = S.parse_set(set_text)
        out["si_open"] = verdict_dict(si_open(S, U))
    if iterate:
        ctx.budgets["bound"] = bound
        trace = si_iterate(S, bound)
        out["iteration"] = trace.as_dict()
        if not trace.fixpoint_reached:
            out["iteration"]["status"] = "unknown"
    if set_text is None and not iterate:
        out["si_infty"] = verdict_dict(has_si_infty_property(S))
        out["derived_schemas"] = list(S.derive().open_schemas())
    return out


@command("sober")
def _sober(ctx):
    """Sober, bounded-sober and k-bounded-sober verdicts."""
    S = ctx.S
    out = sobriety_spectrum(S).as_dict()
    out["thm23_crosscheck"] = verdict_dict(thm23_crosscheck(S))
    return out


@command("waybelow")
@click.argument("x")
@click.argument("y")
def _waybelow(ctx, x, y):
    """Decide X << Y."""
    S = ctx.S
    px, py = S.parse_point(x), S.parse_point(y)
    return {"x": S.fmt_point(px), "y": S.fmt_point(py), "way_below": verdict_dict(way_below(S, px, py).holds)}


@command("belowset")
@click.argument("x")
def _belowset(ctx, x):
    """Points way below X and way above it."""
    S = ctx.S
    p = S.parse_point(x)
    B, A = S.below_set(p), S.above_set(p)
    out = {
        "point": S.fmt_point(p),
        "below_set": S.fmt_set(B),
        "above_set": S.fmt_set(A),
        "above_set_open": S.is_open(A),
        "m_set": S.fmt_set(S.m_set(p)),
    }
    if not S.is_empty(B):
        out["below_sup"] = S.sup(B).describe(S.fmt_point)
        out["below_irreducible"] = S.is_irreducible(B).irreducible
    return out


@command("continuity")
def _continuity(ctx):
    """Decide Irr-continuity."""
    return is_irr_continuous(ctx.S).as_dict()


@command("interpolate")
@click.argument("z")
@click.argument("x")
def _interpolate(ctx, z, x):
    """Find Y with Z << Y << X."""
    S = ctx.S
    pz, px = S.parse_point(z), S.parse_point(x)
    r = interpolate(S, pz, px)
    out = {
        "z": S.fmt_point(pz),
        "x": S.fmt_point(px),
        "hypotheses_met": r.hypotheses_met,
        "note": r.note,
    }
    if r.point is None:
        out["interpolant"] = {"status": "refuted", "witness": "no interpolant among candidates"}
    else:
        out["interpolant"] = {"status": "proven", "point": S.fmt_point(r.point)}
    return out


@command("converge")
@click.option("--net", "net_text", required=True, help="Net specification.")
@click.option("--to", "to", required=True, help="Target point.")
@click.option("--level", type=int, default=0, show_default=True, help="SI level for topological convergence.")
@click.option("--subnet", "sub_text", default=None, help="Reindex by affine(a,b) | parity(even|odd).")
def _converge(ctx, net_text, to, level, sub_text):
    """Irr-convergence and topological convergence of a net."""
    S = ctx.S
    n = parse_net(S, net_text)
    if sub_text:
        sub = parse_subnet(sub_text)
        check_subnet(n, sub)
        n = apply_subnet(n, sub)
    y = S.parse_point(to)
    j = irr_converges(S, n, y)
    irr = verdict_dict(j.verdict)
    irr["eventual_lower_bounds"] = S.fmt_set(j.lower_bounds)
    return {
        "net": format_net(S, n),
        "point": S.fmt_point(y),
        "irr_converges": irr,
        "topo_converges": verdict_dict(topo_converges(S, n, y, level)),
        "level": level,
    }


def _battery(ctx, size):
    bat = battery(ctx.S, size, ctx.seed, ctx.budget)
    ctx.budgets.update({"battery": size, "nets": len(bat.nets), "points": len(bat.points),
                        "iterated_configs": bat.budget})
    return bat


@command("kelley")
@click.option("--battery", "size", type=click.Choice(sorted(SIZES)), default="small", show_default=True)
def _kelley(ctx, size):
    """Run the convergence axioms against a seeded battery of nets."""
    return kelley_check(ctx.S, _battery(ctx, size)).as_dict()


@command("verdict")
@click.option("--battery", "size", type=click.Choice(sorted(SIZES)), default="small", show_default=True)
def _verdict(ctx, size):
    """Whether Irr-convergence is topological, with empirical agreement."""
    return main_verdict(ctx.S, _battery(ctx, size)).as_dict()


if __name__ == "__main__":  # pragma: no cover
    main()
