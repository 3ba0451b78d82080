"""Command-line front end.

Exit codes: 0 success or positive decision, 1 negative decision, 2 input error.
"""

from __future__ import annotations

import functools
import json
import random
import sys
from itertools import product

import click

from . import io
from . import linalg as la
from .algebra import (center, derivations, inner_derivations, reduce_algebra, reduced_derivation_map,
                      validate_algebra)
from .errors import CoisoError, ParseError, ValidationError
from .generators import random_element
from .hochschild import DEFAULT_CAP, Cochain, hochschild_cohomology, reduction_comparison
from .series import DEFAULT_ORDER

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


class Context:
    def __init__(self, as_json: bool, seed: int, cap: int):
        self.as_json = as_json
        self.seed = seed
        self.cap = cap

    def rng(self) -> random.Random:
        return random.Random(self.seed)

    def emit(self, report: dict, lines) -> None:
        if self.as_json:
            click.echo(json.dumps(report, indent=2, sort_keys=True))
        else:
            for line in lines:
                click.echo(line)


def _dims(module) -> dict:
    return {"dim_tot": module.dim_tot, "dim_n": module.dim_N, "dim_zero": module.dim_zero}


def _fmt_dims(d: dict) -> str:
    return f"(tot {d['dim_tot']}, N {d['dim_n']}, 0 {d['dim_zero']})"


def _vec(v) -> list:
    return [io.format_scalar(x) for x in v]


def command(f):
    """Turn package errors into exit codes."""
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            code = f(*args, **kwargs)
        except (ParseError, ValidationError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        except CoisoError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        sys.exit(code or EXIT_OK)
    return wrapper


@click.group()
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for randomized sampling.")
@click.option("--cap", type=int, default=DEFAULT_CAP, show_default=True,
              help="Maximum coefficients per cochain component.")
@click.pass_context
def main(ctx, as_json, seed, cap):
    """Exact computations with coisotropic algebras, their Hochschild
    cohomology and formal deformations."""
    ctx.obj = Context(as_json, seed, cap)


pass_ctx = click.pass_obj


@main.command()
@click.argument("file")
@pass_ctx
@command
def validate(c: Context, file):
    """Validate an algebra document."""
    doc, _ = io.read_document(file)
    A = io.algebra_from_document(doc, validate=False)
    report = {"name": A.name, "dims": {"dim_tot": A.dim_tot, "dim_n": A.dim_N, "dim_zero": A.zero_part.dim}}
    try:
        validate_algebra(A)
    except CoisoError as exc:
        report.update(valid=False, error=f"{type(exc).__name__}: {exc}")
        c.emit(report, [f"{A.name or file}: invalid", f"  {type(exc).__name__}: {exc}"])
        return EXIT_NEGATIVE
    # randomized spot check on non-basis elements
    rng = c.rng()
    full_N, full_tot = la.Subspace.full(A.dim_N), la.Subspace.full(A.dim_tot)
    samples = 10
    for _ in range(samples):
        a, b, x = (random_element(rng, full_N) for _ in range(3))
        if not la.equal(A.mul_N(A.mul_N(a, b), x), A.mul_N(a, A.mul_N(b, x))):
            raise AssertionError("sampled N associativity failed after basis validation")
        if not la.equal(la.mul(A.iota, A.mul_N(a, b)), A.mul_tot(la.mul(A.iota, a), la.mul(A.iota, b))):
            raise AssertionError("sampled iota multiplicativity failed after basis validation")
        t = random_element(rng, full_tot)
        if not la.equal(A.mul_tot(t, A.unit_tot), t):
            raise AssertionError("sampled unit check failed after basis validation")
    report.update(valid=True, samples=samples, seed=c.seed)
    c.emit(report, [f"{A.name or file}: valid {_fmt_dims(report['dims'])}",
                    f"  {samples} random samples passed (seed {c.seed})"])
    return EXIT_OK


@main.command()
@click.argument("file")
@pass_ctx
@command
def reduce(c: Context, file):
    """Print the reduced algebra A_N / A_0."""
    A = io.parse_algebra(file)
    red = reduce_algebra(A)
    entries = [[a, b, k, io.format_scalar(red.mu[a, b, k])]
               for a, b, k in product(range(red.dim), repeat=3) if red.mu[a, b, k] != 0]
    report = {"name": A.name, "dim_red": red.dim, "unit": _vec(red.unit), "mu": entries}
    lines = [f"{A.name or file}: reduced algebra of dimension {red.dim}", f"  unit {json.dumps(report['unit'])}"]
    lines += [f"  e{a} * e{b} -> {v} e{k}" for a, b, k, v in entries]
    c.emit(report, lines)


@main.command(name="center")
@click.argument("file")
@pass_ctx
@command
def center_cmd(c: Context, file):
    """Dimensions of the center."""
    A = io.parse_algebra(file)
    d = _dims(center(A))
    c.emit({"name": A.name, "center": d}, [f"{A.name or file}: center {_fmt_dims(d)}"])


@main.command(name="derivations")
@click.argument("file")
@pass_ctx
@command
def derivations_cmd(c: Context, file):
    """Derivations, inner derivations and the reduced derivation map."""
    A = io.parse_algebra(file)
    der, inn = _dims(derivations(A)), _dims(inner_derivations(A))
    outer = {k: der[k] - inn[k] for k in der}
    m = reduced_derivation_map(A)
    report = {"name": A.name, "derivations": der, "inner": inn, "outer": outer,
              "reduced_map_rank": la.rank(m), "reduced_map_injective": True}
    c.emit(report, [f"{A.name or file}: derivations {_fmt_dims(der)}",
                    f"  inner {_fmt_dims(inn)}", f"  outer {_fmt_dims(outer)}",
                    f"  reduced map to Der(A_red) injective, rank {report['reduced_map_rank']}"])


@main.command(name="cohomology")
@click.argument("file")
@click.option("--max-degree", type=int, default=2, show_default=True)
@pass_ctx
@command
def cohomology_cmd(c: Context, file, max_degree):
    """Hochschild cohomology dimensions in degrees 0..N."""
    if max_degree < 0:
        raise ParseError("--max-degree must be nonnegative")
    A = io.parse_algebra(file)
    rows = []
    for n in range(max_degree + 1):
        rows.append({"degree": n, **_dims(hochschild_cohomology(A, n, c.cap).module)})
    lines = [f"{A.name or file}: Hochschild cohomology"]
    lines += [f"  HH^{r['degree']} {_fmt_dims(r)}" for r in rows]
    c.emit({"name": A.name, "cohomology": rows}, lines)


@main.command(name="compare-reduction")
@click.argument("file")
@click.option("--degree", type=int, required=True)
@pass_ctx
@command
def compare_reduction_cmd(c: Context, file, degree):
    """Compare HH^n(A)_red with HH^n(A_red)."""
    if degree < 0:
        raise ParseError("--degree must be nonnegative")
    A = io.parse_algebra(file)
    r = reduction_comparison(A, degree, c.cap)
    report = {"name": A.name, "degree": degree, "dim_reduced_hh": r.dim_reduced_hh,
              "dim_hh_of_reduced": r.dim_hh_of_reduced, "inequality_holds": r.inequality_holds,
              "cochain_map_injective": r.cochain_eta_injective,
              "cohomology_map_injective": r.cohomology_eta_injective}
    c.emit(report, [
        f"{A.name or file}: degree {degree}",
        f"  dim HH(A)_red = {r.dim_reduced_hh}, dim HH(A_red) = {r.dim_hh_of_reduced}"
        f" ({'<=' if r.inequality_holds else '>'})",
        f"  cochain map injective: {r.cochain_eta_injective}",
        f"  cohomology map injective: {r.cohomology_eta_injective}"])
    ok = r.inequality_holds and r.cochain_eta_injective
    return EXIT_OK if ok else EXIT_NEGATIVE


# --------------------------------------------------------------------------
# deformations

@main.group()
def deform():
    """Formal deformations of an algebra."""


def _terms_report(series, start: int = 1) -> list:
    out = []
    for k in range(start, series.order + 1):
        f = series[k]
        if f.is_zero():
            continue
        out.append({"order": k, "mu_tot": io._sparse(f.tot), "mu_n": io._sparse(f.N)})
    return out


def _random_gauge(rng, A, order: int, cap: int):
    from .deformation import gauge_series
    S1 = A.hochschild.space(1, cap)
    return gauge_series(A, [Cochain.from_vector(A, 1, random_element(rng, S1.N)) for _ in range(order)], order)


@deform.command(name="check")
@click.argument("file")
@click.argument("defm")
@pass_ctx
@command
def deform_check(c: Context, file, defm):
    """Check the Maurer-Cartan equation order by order."""
    from .deformation import HochschildDGLA, gauge_act, is_mc
    A = io.parse_algebra(file)
    D = io.parse_deformation(defm, A)
    res = D.residual()
    bad = [k for k in range(D.order + 1) if not res[k].is_zero()]
    report = {"name": A.name, "order": D.order, "mc": not bad, "failing_orders": bad}
    if bad:
        c.emit(report, [f"MC fails at order {bad[0]} (failing orders {bad})"])
        return EXIT_NEGATIVE
    rng = c.rng()
    samples = 3
    g = HochschildDGLA(A, cap=c.cap)
    for _ in range(samples):
        if not is_mc(g, gauge_act(g, _random_gauge(rng, A, D.order, c.cap), D.xi)):
            raise AssertionError("gauge action left the Maurer-Cartan set")
    report.update(gauge_samples=samples, seed=c.seed)
    c.emit(report, [f"MC holds to order {D.order}",
                    f"  {samples} random gauge transforms stay Maurer-Cartan (seed {c.seed})"])
    return EXIT_OK


@deform.command(name="extend")
@click.argument("file")
@click.argument("defm")
@click.option("--to-order", "to_order", type=int, required=True)
@pass_ctx
@command
def deform_extend(c: Context, file, defm, to_order):
    """Extend a deformation order by order."""
    from .deformation import extend
    from .errors import NotAssociativeToOrder
    A = io.parse_algebra(file)
    D = io.parse_deformation(defm, A)
    start = D.order
    if to_order < start:
        raise ParseError(f"--to-order {to_order} is below the document order {start}")
    try:
        while D.order < to_order:
            r = extend(A, D, c.cap)
            if not r.extended:
                report = {"name": A.name, "from_order": start, "to_order": to_order, "extended": False,
                          "obstructed_at": D.order + 1, "obstruction_class": _vec(r.obstruction_class)}
                c.emit(report, [f"obstructed at order {D.order + 1}: class {json.dumps(report['obstruction_class'])}"
                                f" in HH^3(A)_N"])
                return EXIT_NEGATIVE
            D = r.deformation
    except NotAssociativeToOrder as exc:
        report = {"name": A.name, "from_order": start, "extended": False, "error": str(exc)}
        c.emit(report, [f"cannot extend: {exc}"])
        return EXIT_NEGATIVE
    report = {"name": A.name, "from_order": start, "to_order": to_order, "extended": True,
              "terms": _terms_report(D.mu)}
    lines = [f"extended from order {start} to order {to_order}"]
    lines += [f"  mu_{t['order']}: tot {json.dumps(t['mu_tot'])}, N {json.dumps(t['mu_n'])}" for t in report["terms"]]
    c.emit(report, lines)
    return EXIT_OK


@deform.command(name="equiv")
@click.argument("file")
@click.argument("def1")
@click.argument("def2")
@click.option("--order", type=int, default=None, help="Truncation order (default: common order).")
@pass_ctx
@command
def deform_equiv(c: Context, file, def1, def2, order):
    """Search for a gauge equivalence between two deformations."""
    from .deformation import gauge_equivalence_search
    A = io.parse_algebra(file)
    D1, D2 = io.parse_deformation(def1, A), io.parse_deformation(def2, A)
    K = min(D1.order, D2.order) if order is None else order
    if K < 0 or K > min(D1.order, D2.order):
        raise ParseError(f"--order {K} exceeds the document orders")
    for D in (D1, D2):
        if D.truncate(K).first_failure() is not None:
            raise ValidationError(ValueError("input deformation is not Maurer-Cartan to the requested order"))
    r = gauge_equivalence_search(A, D1.truncate(K), D2.truncate(K), c.cap)
    if r.equivalent:
        report = {"name": A.name, "order": K, "equivalent": True, "gauge": _terms_report(r.gauge)}
        c.emit(report, [f"equivalent to order {K}"] +
               [f"  D_{t['order']}: tot {json.dumps(t['mu_tot'])}, N {json.dumps(t['mu_n'])}" for t in report["gauge"]])
        return EXIT_OK
    cls = _vec(r.obstruction_class) if r.obstruction_class is not None else None
    report = {"name": A.name, "order": K, "equivalent": False, "failed_order": r.failed_order,
              "obstruction_class": cls, "hh2_dim_n": r.hh2_dim, "conclusive": r.conclusive}
    if r.failed_order == 0:
        lines = ["not equivalent: the undeformed products differ"]
    else:
        lines = [f"not equivalent: mismatch at order {r.failed_order} is not exact",
                 f"  class {json.dumps(cls)} in HH^2(A)_N of dimension {r.hh2_dim}"]
        if not r.conclusive:
            lines.append("  (search did not revisit choices below the previous order)")
    c.emit(report, lines)
    return EXIT_NEGATIVE


@main.group()
def dgla():
    """Differential graded Lie algebras."""


@dgla.command(name="validate")
@click.argument("file")
@click.option("--max-degree", type=int, default=1, show_default=True,
              help="Top degree of the window g^0..g^N (g^k = C^(k+1)).")
@pass_ctx
@command
def dgla_validate(c: Context, file, max_degree):
    """Validate the Hochschild DGLA of an algebra on a degree window."""
    from .deformation import (HochschildDGLA, bch_mul, gauge_act, is_mc, validate_dgla, zero_series)
    if max_degree < 0:
        raise ParseError("--max-degree must be nonnegative")
    A = io.parse_algebra(file)
    g = HochschildDGLA(A, cap=c.cap)
    explicit = g.explicit(max_degree)
    dims = [{"degree": k, **_dims(explicit.module(k))} for k in range(max_degree + 1)]
    report = {"name": A.name, "window": dims}
    try:
        validate_dgla(explicit)
    except CoisoError as exc:
        report.update(valid=False, error=f"{type(exc).__name__}: {exc}")
        c.emit(report, [f"{A.name or file}: invalid DGLA", f"  {type(exc).__name__}: {exc}"])
        return EXIT_NEGATIVE
    rng = c.rng()
    samples = 3
    xi0 = zero_series(g, 1, DEFAULT_ORDER)
    for _ in range(samples):
        X = _random_gauge(rng, A, DEFAULT_ORDER, c.cap)
        Y = _random_gauge(rng, A, DEFAULT_ORDER, c.cap)
        lhs = gauge_act(g, bch_mul(g, X, Y), xi0)
        rhs = gauge_act(g, X, gauge_act(g, Y, xi0))
        if not (is_mc(g, lhs) and lhs == rhs):
            raise AssertionError("gauge action is not compatible with the BCH product")
    report.update(valid=True, samples=samples, seed=c.seed)
    lines = [f"{A.name or file}: Hochschild DGLA valid on degrees 0..{max_degree}"]
    lines += [f"  g^{d['degree']} {_fmt_dims(d)}" for d in dims]
    lines.append(f"  {samples} random BCH/gauge compatibility samples passed (seed {c.seed})")
    c.emit(report, lines)
    return EXIT_OK


if __name__ == "__main__":
    main()
