"""Command line front end.

Exit codes: 0 when every check passes, 1 when a check finds a
counterexample, 2 on bad input.
"""

from __future__ import annotations

import csv
import io
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

import click

from . import matroid as mat
from .exact_linalg import RationalMatrix
from .superalgebra import laplace_pair, place_monomial
from .symrep import DEFAULT_N_CAP, multiplicity_table, hook_multiplicity, hook_multiplicity_nbc
from .tableaux import TabPair, Tableau
from .whitney import Bidegree, freedom_basis_check, gamas_check, graded_piece, straighten

GENERIC = "*"
GENERIC_BOUND = 10**6


@dataclass
class RunConfig:
    matroid_file: str | None = None
    circuits: str | None = None
    n: int | None = None
    matrix: str | None = None
    freedom: str | None = None
    seed: int = 0
    fmt: str = "json"
    n_cap: int = DEFAULT_N_CAP


class InputError(click.UsageError):
    """Bad user input; click exits with status 2."""


def generic_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, GENERIC_BOUND), rng.randint(1, GENERIC_BOUND))


def parse_matrix(text: str, seed: int) -> RationalMatrix:
    """JSON rows of integers, "p/q" strings, or "*" for a seeded generic rational."""
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"matrix is not valid JSON: {exc}") from exc
    rng = random.Random(seed)
    try:
        parsed = [[generic_rational(rng) if x == GENERIC else Fraction(x) for x in r] for r in rows]
        return RationalMatrix.from_rows(parsed)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad matrix entry: {exc}") from exc


def load_matroid(cfg: RunConfig) -> tuple[mat.Matroid, RationalMatrix | None]:
    sources = [x for x in (cfg.matroid_file, cfg.circuits, cfg.matrix, cfg.freedom) if x is not None]
    if len(sources) != 1:
        raise InputError("give exactly one of --matroid, --circuits, --matrix, --freedom")
    try:
        if cfg.matroid_file is not None:
            data = json.loads(open(cfg.matroid_file).read())
            if "matrix" in data:
                rows = data["matrix"]["rows"] if isinstance(data["matrix"], dict) else data["matrix"]
                f = parse_matrix(json.dumps(rows), cfg.seed)
                return mat.from_matrix(f), f
            return mat.from_json(data), None
        if cfg.circuits is not None:
            circuits = json.loads(cfg.circuits)
            n = cfg.n if cfg.n is not None else max((max(c) for c in circuits if c), default=0)
            return mat.from_circuits(n, circuits), None
        if cfg.matrix is not None:
            f = parse_matrix(cfg.matrix, cfg.seed)
            return mat.from_matrix(f), f
        return mat.freedom(cfg.freedom), None
    except (OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        raise InputError(str(exc)) from exc


def emit(data, fmt: str) -> None:
    if fmt == "json":
        click.echo(json.dumps(data, indent=2, default=str))
        return
    rows = data if isinstance(data, list) else [data]
    if not rows:
        return
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]))
    writer.writeheader()
    for r in rows:
        writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    click.echo(buf.getvalue().rstrip("\n"))


def _sets(sets) -> list[list[int]]:
    return [sorted(s) for s in sets]


def cmd_matroid_info(cfg: RunConfig) -> dict:
    m, f = load_matroid(cfg)
    report = {
        "n": m.n,
        "rank": m.rank(),
        "circuits": _sets(m.circuits),
        "broken_circuits": _sets(mat.broken_circuits(m)),
        "nbc_counts_with_1": [len(mat.nbc_sets(m, k, True)) for k in range(1, m.n + 1)],
        "rank_partition": list(mat.rank_partition(m)),
    }
    if f is not None:
        report["matrix"] = [[str(x) for x in r] for r in f.to_rows()]
    return report


def cmd_whitney_piece(cfg: RunConfig, bidegree: str) -> dict:
    m, _ = load_matroid(cfg)
    try:
        d = Bidegree.from_json(bidegree)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad bidegree: {exc}") from exc
    return graded_piece(m, d).to_json()


def cmd_um(cfg: RunConfig) -> list[dict]:
    m, _ = load_matroid(cfg)
    try:
        return multiplicity_table(m, cfg.n_cap)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_gamas(cfg: RunConfig, max_boxes: int) -> dict:
    _, f = load_matroid(cfg)
    if f is None:
        raise InputError("the nonvanishing check needs a realization (--matrix or a matrix file)")
    return gamas_check(f, max_boxes).to_json()


# --- click wiring ------------------------------------------------------------------

def source_options(fn):
    opts = [
        click.option("--matroid", "matroid_file", type=click.Path(exists=True, dir_okay=False),
                     help="Matroid JSON file."),
        click.option("--circuits", help="Circuits as JSON, e.g. '[[1,2]]'."),
        click.option("--n", type=int, help="Ground set size for --circuits."),
        click.option("--matrix", help="Matrix rows as JSON; \"*\" entries are seeded generic rationals."),
        click.option("--freedom", help="Binary sequence defining a freedom matroid."),
        click.option("--seed", type=int, default=0, show_default=True),
        click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _cfg(**kw) -> RunConfig:
    return RunConfig(**{k: v for k, v in kw.items() if k in RunConfig.__dataclass_fields__})


@click.group()
def main():
    """Exact computations with Whitney modules of matroids."""


@main.group()
def matroid():
    """Matroid data."""


@matroid.command("info")
@source_options
def matroid_info(**kw):
    """Circuits, broken circuits, nbc counts and rank partition."""
    cfg = _cfg(**kw)
    emit(cmd_matroid_info(cfg), cfg.fmt)


@main.group()
def whitney():
    """Graded pieces of the Whitney module."""


@whitney.command("piece")
@source_options
@click.option("--bidegree", required=True, help='JSON: {"letters": [...], "places": [...]}')
def whitney_piece(bidegree, **kw):
    """Free rank and torsion of one graded piece."""
    cfg = _cfg(**kw)
    emit(cmd_whitney_piece(cfg, bidegree), cfg.fmt)


@whitney.command("freedom-check")
@click.option("--freedom", "bits", required=True, help="Binary sequence.")
@click.option("--max-places", type=click.IntRange(min=1), required=True)
@click.option("--max-degree", type=click.IntRange(min=1), default=None)
@click.option("--all", "show_all", is_flag=True, help="Report every bidegree, not just the summary.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True, help="Process pool size.")
def whitney_freedom_check(bits, max_places, max_degree, show_all, fmt, workers):
    """Check freeness and the standard-pair rank in every bidegree in range."""
    try:
        report = freedom_basis_check(bits, max_places, max_degree, keep_reports=show_all, workers=workers)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if show_all:
        emit([_flat_piece(r) for r in report.reports], fmt)
    else:
        emit(report.to_json(), fmt)
    sys.exit(0 if report.ok else 1)


def _flat_piece(r) -> dict:
    out = r.to_json()
    d = out.pop("bidegree")
    return {"letters": d["letters"], "places": d["places"], **out}


@main.group()
def um():
    """Multiplicities in the doubly multilinear module U(M)."""


@um.command("table")
@source_options
@click.option("--n-cap", type=click.IntRange(min=1), default=DEFAULT_N_CAP, show_default=True)
def um_table(n_cap, **kw):
    """Multiplicity of every irreducible, with nbc and dominance columns."""
    cfg = _cfg(n_cap=n_cap, **kw)
    rows = cmd_um(cfg)
    emit(rows, cfg.fmt)
    sys.exit(0 if all(r["match"] is not False for r in rows) else 1)


@um.command("hook")
@source_options
@click.option("-k", "k", type=click.IntRange(min=1), required=True)
@click.option("--n-cap", type=click.IntRange(min=1), default=DEFAULT_N_CAP, show_default=True)
def um_hook(k, n_cap, **kw):
    """Hook multiplicity by characters and by counting nbc sets."""
    cfg = _cfg(n_cap=n_cap, **kw)
    m, _ = load_matroid(cfg)
    if k > m.n:
        raise InputError(f"k = {k} exceeds n = {m.n}")
    try:
        char = hook_multiplicity(m, k, n_cap)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    nbc = hook_multiplicity_nbc(m, k)
    emit({"k": k, "character": char, "nbc": nbc, "match": char == nbc}, cfg.fmt)
    sys.exit(0 if char == nbc else 1)


@main.command("gamas")
@source_options
@click.option("--max-boxes", type=click.IntRange(min=1), required=True)
def gamas(max_boxes, **kw):
    """Realization images vanish exactly on tableaux with a dependent row."""
    cfg = _cfg(**kw)
    report = cmd_gamas(cfg, max_boxes)
    emit(report, cfg.fmt)
    sys.exit(0 if report["ok"] else 1)


@main.command("straighten")
@click.option("--tableau", "t_rows", required=True, help="Letter tableau T as JSON rows.")
@click.option("--places", "s_rows", required=True, help="Place tableau S as JSON rows.")
@click.option("--matroid", "matroid_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--circuits")
@click.option("--n", type=int)
@click.option("--matrix")
@click.option("--freedom")
@click.option("--seed", type=int, default=0)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
def straighten_cmd(t_rows, s_rows, **kw):
    """Expand tab(T|S) over standard pairs (in W(M) when a matroid is given)."""
    cfg = _cfg(**kw)
    has_source = any(getattr(cfg, k) is not None for k in ("matroid_file", "circuits", "matrix", "freedom"))
    m = load_matroid(cfg)[0] if has_source else None
    try:
        pair = TabPair(Tableau.of(json.loads(t_rows)), Tableau.of(json.loads(s_rows)))
        result = straighten(m, pair)
    except (ValueError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from exc
    data = result.to_json()
    emit(data if cfg.fmt == "json" else data["terms"], cfg.fmt)


@main.command("laplace")
@click.option("--word", required=True, help="Letters as JSON, e.g. [1,2].")
@click.option("--places", required=True, help='Divided powers as JSON, e.g. {"1": 2} or [[1,2]].')
def laplace(word, places):
    """Expand the Laplace pairing (w | q)."""
    try:
        w = json.loads(word)
        q = json.loads(places)
        items = [(int(p), int(k)) for p, k in (q.items() if isinstance(q, dict) else q)]
        elem = laplace_pair(w, place_monomial(items))
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from exc
    click.echo(json.dumps(elem.to_json(), indent=2))


if __name__ == "__main__":
    main()
