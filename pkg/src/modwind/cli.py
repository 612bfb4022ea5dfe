"""Command line interface: enumeration, symbol computations, statistics, verify.

Exit codes: 0 success, 1 usage or validation error, 2 verification failure
(a mathematical disagreement or a failed suite), 3 resource or data error.
Diagnostics go to stderr; stdout carries data only.
"""

from __future__ import annotations

import json
import math
import os
import sys
from typing import List, Optional, Sequence, Tuple

import click

from .errors import (
    CapExceeded,
    InsufficientData,
    ModwindError,
    NotHyperbolic,
    Overflow,
    QuadratureFailure,
)
from .geodesics import (
    EnumerationConfig,
    GeodesicRecord,
    MAX_LENGTH_BOUND,
    CyclicWord,
    canonical_form,
    enumerate_geodesics,
    matrix_to_word,
    word_to_matrix,
)
from .matrices import Mat2
from .rademacher import psi, psi_cf, psi_cocycle
from .stats import (
    cauchy_compare,
    density_table,
    equidistribution,
    twisted_sum,
    winding_histogram,
)
from .verify import run_all
from .winding import e2_period, winding_index

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_RESOURCE = 3

THREADS_ENV = "MODWIND_THREADS"


class VerificationFailure(ModwindError):
    """Methods that must agree did not, or a verify suite failed."""


def _fmt_real(x: float) -> str:
    return "%.12g" % x


def _parse_matrix(text: str) -> Mat2:
    parts = text.split(",")
    if len(parts) != 4:
        raise click.UsageError(f"--matrix wants a,b,c,d, got {text!r}")
    try:
        a, b, c, d = (int(p) for p in parts)
    except ValueError:
        raise click.UsageError(f"non-integer matrix entry in {text!r}")
    try:
        return Mat2(a, b, c, d)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _parse_word(text: str) -> CyclicWord:
    sep = "-" if "-" in text else ","
    try:
        entries = tuple(int(p) for p in text.split(sep))
    except ValueError:
        raise click.UsageError(f"bad word {text!r}")
    try:
        return canonical_form(entries)
    except ModwindError as exc:
        raise click.UsageError(str(exc))


def _parse_range(text: str) -> List[int]:
    """Integer range 'a..b' inclusive."""
    try:
        lo, hi = text.split("..")
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise click.UsageError(f"bad range {text!r} (want a..b)")
    if hi_i < lo_i:
        raise click.UsageError(f"empty range {text!r}")
    return list(range(lo_i, hi_i + 1))


def _parse_grid(text: str) -> List[float]:
    """Real grid 'start:stop:step' inclusive of both ends (within rounding)."""
    try:
        start, stop, step = (float(p) for p in text.split(":"))
    except ValueError:
        raise click.UsageError(f"bad grid {text!r} (want start:stop:step)")
    if step <= 0 or stop < start:
        raise click.UsageError(f"bad grid {text!r}")
    n = int(round((stop - start) / step))
    return [start + k * step for k in range(n + 1)]


def _validate_max_length(t: float, minimum: float = 2.0) -> float:
    if not (minimum <= t <= MAX_LENGTH_BOUND):
        raise click.UsageError(
            f"--max-length {t} outside [{minimum}, {MAX_LENGTH_BOUND}]"
        )
    return t


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _records(t: float, threads: int = 1) -> List[GeodesicRecord]:
    return enumerate_geodesics(EnumerationConfig(max_length=t, thread_count=threads))


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _records_csv(records: Sequence[GeodesicRecord]) -> str:
    lines = ["word,trace,length,psi"]
    for rec in records:
        word = "-".join(str(a) for a in rec.word.entries)
        lines.append(f"{word},{rec.trace},{_fmt_real(rec.length)},{rec.psi}")
    return "\n".join(lines) + "\n"


def _records_json(records: Sequence[GeodesicRecord]) -> str:
    rows = [
        {
            "word": list(rec.word.entries),
            "trace": rec.trace,
            "length": float(_fmt_real(rec.length)),
            "psi": rec.psi,
        }
        for rec in records
    ]
    return json.dumps(rows) + "\n"


def _psi_by_method(gamma: Mat2, method: str):
    """One method's value for the Rademacher symbol of gamma."""
    if method == "dedekind":
        return psi(gamma)
    if method == "cocycle":
        return psi_cocycle(gamma)
    # the remaining methods live on hyperbolic classes; psi(-g) = psi(g)
    g = gamma if gamma.trace > 0 else -gamma
    if g.trace <= 2:
        raise NotHyperbolic(f"method {method} needs |trace| > 2, got {gamma.trace}")
    if method == "cf":
        return psi_cf(matrix_to_word(g))
    if method == "index":
        return winding_index(g).index
    if method == "period":
        return e2_period(g)
    raise click.UsageError(f"unknown method {method!r}")


@click.group()
def cli() -> None:
    """Prime geodesic winding numbers on the modular orbifold."""


@cli.command("enumerate")
@click.option("--max-length", "max_length", type=float, required=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--out", type=str, default=None)
@click.option("--threads", type=int, default=None)
def cmd_enumerate(max_length: float, fmt: str, out: Optional[str], threads: Optional[int]) -> None:
    """All oriented primitive classes with length <= T, one row per class."""
    # short bounds are legal here and just produce a header-only table
    if not (0 < max_length <= MAX_LENGTH_BOUND):
        raise click.UsageError(
            f"--max-length {max_length} outside (0, {MAX_LENGTH_BOUND}]"
        )
    n_threads = threads if threads is not None else _default_threads()
    records = _records(max_length, n_threads)
    _emit(_records_csv(records) if fmt == "csv" else _records_json(records), out)


@cli.command("psi")
@click.option("--matrix", "matrix_text", type=str, default=None)
@click.option("--word", "word_text", type=str, default=None)
@click.option(
    "--method",
    type=click.Choice(["cf", "dedekind", "cocycle", "index", "period", "all"]),
    default="dedekind",
)
def cmd_psi(matrix_text: Optional[str], word_text: Optional[str], method: str) -> None:
    """Rademacher symbol of a matrix or word, by one or all methods."""
    if (matrix_text is None) == (word_text is None):
        raise click.UsageError("give exactly one of --matrix or --word")
    if matrix_text is not None:
        gamma = _parse_matrix(matrix_text)
    else:
        gamma = word_to_matrix(_parse_word(word_text))
    methods = ["cf", "dedekind", "cocycle", "index", "period"] if method == "all" else [method]
    values = {}
    for m in methods:
        try:
            values[m] = _psi_by_method(gamma, m)
        except NotHyperbolic:
            if method == "all":
                continue  # hyperbolic-only method on a non-hyperbolic input
            raise
    for m, v in values.items():
        if isinstance(v, float):
            click.echo(f"{m}: {_fmt_real(v)}")
        else:
            click.echo(f"{m}: {v}")
    if method == "all":
        ints = {m: round(v) for m, v in values.items()}
        ref = next(iter(ints.values()))
        bad = {m for m, v in ints.items() if v != ref}
        bad |= {
            m
            for m, v in values.items()
            if isinstance(v, float) and abs(v - round(v)) > 1e-6
        }
        if bad:
            raise VerificationFailure(f"methods disagree: {values}")


@cli.command("index")
@click.option("--matrix", "matrix_text", type=str, default=None)
@click.option("--word", "word_text", type=str, default=None)
def cmd_index(matrix_text: Optional[str], word_text: Optional[str]) -> None:
    """Winding index of the discriminant form along one closed geodesic."""
    if (matrix_text is None) == (word_text is None):
        raise click.UsageError("give exactly one of --matrix or --word")
    if matrix_text is not None:
        gamma = _parse_matrix(matrix_text)
        if gamma.trace < -2:
            gamma = -gamma
    else:
        gamma = word_to_matrix(_parse_word(word_text))
    result = winding_index(gamma)
    click.echo(json.dumps({"index": result.index, "residual": result.residual}))


@cli.command("stats-density")
@click.option("--max-length", "max_length", type=float, required=True)
@click.option("--n-range", "n_range", type=str, default="-5..5")
@click.option("--csv-out", "csv_out", type=str, default=None)
def cmd_stats_density(max_length: float, n_range: str, csv_out: Optional[str]) -> None:
    """Empirical vs predicted winding densities, one row per n."""
    _validate_max_length(max_length)
    ns = _parse_range(n_range)
    hist = winding_histogram(_records(max_length), max_length)
    lines = ["n,empirical,predicted"]
    for n, emp, pred in density_table(hist, ns):
        lines.append(f"{n},{_fmt_real(emp)},{_fmt_real(pred)}")
    _emit("\n".join(lines) + "\n", csv_out)


@cli.command("stats-cauchy")
@click.option("--max-length", "max_length", type=float, required=True)
@click.option("--csv-out", "csv_out", type=str, default=None)
def cmd_stats_cauchy(max_length: float, csv_out: Optional[str]) -> None:
    """KS comparison of (3/pi) psi/length against the standard Cauchy law."""
    _validate_max_length(max_length)
    records = _records(max_length)
    report = cauchy_compare(records, max_length)
    if csv_out:
        lines = ["u,empirical,predicted"]
        for (u, emp), (_, ref) in zip(report.empirical_cdf, report.reference_cdf):
            lines.append(f"{_fmt_real(u)},{_fmt_real(emp)},{_fmt_real(ref)}")
        _emit("\n".join(lines) + "\n", csv_out)
    click.echo(
        json.dumps(
            {"T": max_length, "count": len(records), "ks_statistic": report.ks_statistic}
        )
    )


@cli.command("stats-equidist")
@click.option("--max-length", "max_length", type=float, required=True)
@click.option("--modulus", type=int, required=True)
@click.option("--csv-out", "csv_out", type=str, default=None)
def cmd_stats_equidist(max_length: float, modulus: int, csv_out: Optional[str]) -> None:
    """Density of each residue class of psi mod q against the flat 1/q."""
    _validate_max_length(max_length)
    if modulus < 1:
        raise click.UsageError(f"--modulus {modulus} < 1")
    table = equidistribution(_records(max_length), max_length, modulus)
    lines = ["residue,empirical,predicted"]
    for a in range(modulus):
        lines.append(f"{a},{_fmt_real(table[a])},{_fmt_real(1.0 / modulus)}")
    _emit("\n".join(lines) + "\n", csv_out)


@cli.command("stats-twisted")
@click.option("--max-length", "max_length", type=float, required=True)
@click.option("--r-grid", "r_grid", type=str, default=None)
@click.option("--r", "r_single", type=float, default=None)
@click.option("--csv-out", "csv_out", type=str, default=None)
def cmd_stats_twisted(
    max_length: float, r_grid: Optional[str], r_single: Optional[float], csv_out: Optional[str]
) -> None:
    """Character-twisted length sums against the exponential main term."""
    _validate_max_length(max_length)
    if (r_grid is None) == (r_single is None):
        raise click.UsageError("give exactly one of --r or --r-grid")
    rs = _parse_grid(r_grid) if r_grid is not None else [r_single]
    records = _records(max_length)
    lines = ["r,abs_sum,main_term,relative_error"]
    for r in rs:
        rep = twisted_sum(records, max_length, r)
        main = _fmt_real(rep.main_term) if rep.main_term is not None else ""
        rel = _fmt_real(rep.relative_error) if rep.relative_error is not None else ""
        lines.append(f"{_fmt_real(r)},{_fmt_real(abs(rep.sum))},{main},{rel}")
    _emit("\n".join(lines) + "\n", csv_out)


@cli.command("verify")
@click.option("--max-length", "max_length", type=float, default=12.0)
@click.option("--sample", type=int, default=500)
@click.option("--seed", type=int, default=0)
def cmd_verify(max_length: float, sample: int, seed: int) -> None:
    """Run every invariant suite; exit 2 if any check fails."""
    _validate_max_length(max_length)
    if sample < 1:
        raise click.UsageError(f"--sample {sample} < 1")
    results = run_all(max_length=max_length, sample=sample, seed=seed)
    click.echo(json.dumps([r.as_dict() for r in results]))
    if any(r.failed for r in results):
        raise VerificationFailure("one or more suites failed")


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cli.main(args=list(argv) if argv is not None else None, standalone_mode=False)
        return EXIT_OK
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except click.exceptions.Abort:
        return EXIT_USAGE
    except VerificationFailure as exc:
        click.echo(f"verification failure: {exc}", err=True)
        return EXIT_VERIFY
    except (CapExceeded, Overflow, InsufficientData, QuadratureFailure) as exc:
        click.echo(f"resource/data error: {exc}", err=True)
        return EXIT_RESOURCE
    except ModwindError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
