"""
Command-line interface for kstruve.

Usage:
    kstruve eval --nu 0 --k 1 --c 1 --x 1                 # one value of S^k_{nu,c}
    kstruve eval --nu 1 --k 2 --x 3 --variant modified    # L^k_nu(3)
    kstruve table --nu 0.5 --k 1 --c 1 --x-start 0 --x-end 2 --x-step 0.5 --out t.csv
    kstruve verify --suite turan                          # JSON report, exit 1 on failure
    kstruve verify --show-grid                            # the compiled-in grids

Exit codes: 0 ok, 1 verification failed, 2 bad flags or domain error, 3 internal
numerical failure, 4 unwritable output path.
"""

# %% IMPORTS
from __future__ import annotations

from collections.abc import Callable
from dataclasses import asdict, dataclass
import functools
import io
import json
import math
from pathlib import Path
import sys

import click
from loguru import logger
import pandas as pd

from kstruve.errors import DomainError, KStruveError, QuadratureError
from kstruve.struve import (
    EvalResult,
    StruveParams,
    modified_struve,
    normalized_struve,
    struve,
)
from kstruve.utils import jsonable
from kstruve.verification import SUITE_NAMES, SuiteRunner, SuiteSelector, default_grids

__all__ = ["cli"]

# %% CONSTANTS
EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_DOMAIN = 2
EXIT_NUMERICAL = 3
EXIT_UNWRITABLE = 4

CSV_COLUMNS = ["x", "value", "err_estimate", "terms"]
CSV_FLOAT_FORMAT = "%.17g"
MAX_TABLE_POINTS = 1_000_000
VARIANTS = ("plain", "modified", "normalized")


# %% TYPES
@dataclass(frozen=True, slots=True)
class OutputRecord:
    """One evaluated point, written identically as a CSV row or a JSON object."""

    x: float
    value: float
    err_estimate: float
    terms: int

    @classmethod
    def from_result(cls, x: float, result: EvalResult) -> OutputRecord:
        """Build a record from an evaluation."""
        return cls(float(x), result.value, result.abs_error_estimate, result.terms_used)

    def to_dict(self) -> dict:
        """Get the record keyed by the CSV column names."""
        return asdict(self)


# %% HELPERS
def _exit_on_error(func: Callable) -> Callable:
    """Map library exceptions onto the documented exit codes."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except DomainError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_DOMAIN)
        except (QuadratureError, OverflowError, KStruveError) as e:
            click.echo(f"Numerical failure: {e}", err=True)
            sys.exit(EXIT_NUMERICAL)
        except (click.ClickException, click.exceptions.Abort, click.exceptions.Exit):
            raise
        except Exception as e:
            logger.exception(f"Unexpected failure in {func.__name__}")
            click.echo(f"Numerical failure: {type(e).__name__}: {e}", err=True)
            sys.exit(EXIT_NUMERICAL)

    return wrapper


def _evaluator(
    variant: str, nu: float, k: float, c: float | None
) -> Callable[[float], EvalResult]:
    """Get x -> EvalResult for the chosen variant, validating the parameters once."""
    match variant:
        case "plain":
            if c is None:
                raise click.UsageError("--c is required for the plain variant")
            params = StruveParams(nu, k, c)
            return lambda x: struve(params, x)
        case "modified" | "normalized":
            if c is not None:
                raise click.UsageError(f"--c is fixed by the {variant} variant")
            StruveParams(nu, k, -1.0)
            if variant == "modified":
                return lambda x: modified_struve(nu, k, x)
            return lambda x: normalized_struve(nu, k, x)
        case _:
            raise click.UsageError(f"Unknown variant {variant!r}")


def _records_csv(records: list[OutputRecord]) -> str:
    """Render records as CSV with 17 significant digits and LF line endings."""
    frame = pd.DataFrame([r.to_dict() for r in records], columns=CSV_COLUMNS)
    frame["terms"] = frame["terms"].astype("int64")
    buffer = io.StringIO()
    frame.to_csv(
        buffer, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n"
    )
    return buffer.getvalue()


def table_grid(x_start: float, x_end: float, x_step: float) -> list[float]:
    """Get the points x_start + i * x_step up to x_end inclusive.

    Args:
        x_start (float): First point.
        x_end (float): Last point bound, at least x_start.
        x_step (float): Positive spacing.

    Returns:
        list[float]: The grid points.

    Raises:
        DomainError: For a nonpositive step, a reversed range or a grid too large.
    """
    if not all(math.isfinite(v) for v in (x_start, x_end, x_step)):
        raise DomainError("Grid bounds and step must be finite")
    if not x_step > 0:
        raise DomainError(f"x_step must be positive, got {x_step}")
    if x_start > x_end:
        raise DomainError(f"x_start={x_start} exceeds x_end={x_end}")

    # Relative slack so that 0..2 step 0.1 still includes 2
    count = math.floor((x_end - x_start) / x_step * (1 + 1e-12) + 1e-9) + 1
    if count > MAX_TABLE_POINTS:
        raise DomainError(f"Grid has {count} points, more than {MAX_TABLE_POINTS}")
    return [x_start + i * x_step for i in range(count)]


def _write_text(text: str, out: Path) -> None:
    try:
        out.write_text(text, encoding="utf-8", newline="\n")
    except OSError as e:
        click.echo(f"Error: cannot write {out}: {e}", err=True)
        sys.exit(EXIT_UNWRITABLE)
    logger.info(f"Wrote {out}")


def _dump_json(data: dict) -> str:
    return json.dumps(jsonable(data), indent=2, allow_nan=False) + "\n"


# %% COMMANDS
@click.group()
@click.option("--verbose", is_flag=True, help="Log debug messages to stderr.")
def cli(verbose: bool):
    """
    Evaluate k-Struve functions and verify their identities and inequalities.

    Examples:

        kstruve eval --nu 0 --k 1 --c 1 --x 1

        kstruve verify --suite recurrence --tol 1e-9
    """
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "WARNING")
    logger.enable("kstruve")


@cli.command(name="eval")
@click.option("--nu", type=float, required=True, help="Order nu > -3k/2.")
@click.option("--k", type=float, required=True, help="Deformation parameter k > 0.")
@click.option("--c", type=float, default=None, help="Parameter c (plain variant only).")
@click.option("--x", type=float, required=True, help="Argument.")
@click.option(
    "--variant",
    type=click.Choice(VARIANTS),
    default="plain",
    show_default=True,
    help="S^k_{nu,c}, the modified L^k_nu or the normalized function.",
)
@click.option("--json", "as_json", is_flag=True, help="Print JSON instead of CSV.")
@_exit_on_error
def eval_command(
    nu: float, k: float, c: float | None, x: float, variant: str, as_json: bool
):
    """Evaluate one point and print x, value, err_estimate and terms."""
    evaluate = _evaluator(variant, nu, k, c)
    record = OutputRecord.from_result(x, evaluate(x))
    if as_json:
        click.echo(_dump_json(record.to_dict()), nl=False)
    else:
        click.echo(_records_csv([record]), nl=False)


@cli.command()
@click.option("--nu", type=float, required=True, help="Order nu > -3k/2.")
@click.option("--k", type=float, required=True, help="Deformation parameter k > 0.")
@click.option("--c", type=float, default=None, help="Parameter c (plain variant only).")
@click.option("--x-start", type=float, required=True, help="First argument.")
@click.option("--x-end", type=float, required=True, help="Last argument, inclusive.")
@click.option("--x-step", type=float, required=True, help="Positive spacing.")
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="CSV file to write; standard output when omitted.",
)
@click.option(
    "--variant", type=click.Choice(VARIANTS), default="plain", show_default=True
)
@_exit_on_error
def table(
    nu: float,
    k: float,
    c: float | None,
    x_start: float,
    x_end: float,
    x_step: float,
    out: Path | None,
    variant: str,
):
    """Tabulate a grid of arguments as CSV with header x,value,err_estimate,terms."""
    evaluate = _evaluator(variant, nu, k, c)
    xs = table_grid(x_start, x_end, x_step)
    logger.debug(f"Tabulating {len(xs)} points of the {variant} variant")
    text = _records_csv([OutputRecord.from_result(x, evaluate(x)) for x in xs])

    if out is None:
        click.echo(text, nl=False)
    else:
        _write_text(text, out)


@cli.command()
@click.option(
    "--suite",
    type=click.Choice(SUITE_NAMES),
    default="all",
    show_default=True,
    help="Suite to run; 'all' runs every suite in a fixed order.",
)
@click.option("--tol", type=float, default=None, help="Replace every check tolerance.")
@click.option(
    "--paper-literal",
    is_flag=True,
    help="Use the printed integral and closed-form constants.",
)
@click.option("--show-grid", is_flag=True, help="Print the default grids and exit.")
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="JSON file to write instead of standard output.",
)
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--progress", is_flag=True, help="Show a progress bar on stderr.")
@_exit_on_error
def verify(
    suite: str,
    tol: float | None,
    paper_literal: bool,
    show_grid: bool,
    out: Path | None,
    jobs: int,
    progress: bool,
):
    """Run a verification suite and emit its JSON report."""
    selector = SuiteSelector(suite, tol)

    if show_grid:
        grids = default_grids()
        text = _dump_json({name: grids[name] for name in selector.suites()})
    else:
        runner = SuiteRunner(
            selector, paper_literal=paper_literal, jobs=jobs, progress=progress
        )
        report = runner.run()
        text = _dump_json(report.to_dict())

    if out is None:
        click.echo(text, nl=False)
    else:
        _write_text(text, out)

    if not show_grid and not report.passed:
        sys.exit(EXIT_VERIFICATION_FAILED)
