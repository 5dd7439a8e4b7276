"""Main CLI entry point for dfrac."""

import sys
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import click
import numpy as np
from numpy.typing import NDArray
from pydantic import ValidationError

from dfrac.bvp.green import (
    green_column_argmax,
    green_diag_max_exhaustive,
    green_kernel,
    green_max_closed_form,
    kernel_sup,
)
from dfrac.bvp.nonlinearity import BaseNonlinearity, LinearNonlinearity
from dfrac.bvp.problem import SOLUTION_BASE, BvpProblem
from dfrac.bvp.solvers import (
    NoConvergence,
    fixed_point_residual,
    resolve_sign,
    solve_linear_bvp_direct,
    solve_linear_bvp_green,
    solve_nonlinear_fixed_point,
)
from dfrac.calculus.gamma import GridValue, falling_factorial
from dfrac.calculus.lattice import GridFunction
from dfrac.cli.output import (
    Cell,
    OutputEnvelope,
    OutputFormat,
    Table,
    render_csv,
    render_json,
)
from dfrac.cli.parsing import (
    ABSCISSA,
    FLOAT_LIST,
    INT_LIST,
    NONLINEARITY,
    parse_numbers,
    resolve_weights,
)
from dfrac.constants import SWEEP_ALPHAS, SWEEP_BS, ExitCode
from dfrac.core.config import config
from dfrac.core.errors import (
    ConfigError,
    DfracError,
    DomainError,
    InconsistentSignError,
    LengthError,
    SingularSystemError,
    ZeroKernelError,
)
from dfrac.lyapunov.bound import check_inequality, kernel_bound, lyapunov_bound
from dfrac.lyapunov.perron import lambda_by_determinant, perron_smallest_lambda
from dfrac.lyapunov.sweep import SweepRow, bound_sweep
from dfrac.type_defs import (
    BoundPayload,
    EigenPayload,
    GreenMaxPayload,
    SolutionPayload,
)
from dfrac.utils.logging import configure_logging
from dfrac.verification.suite import SuiteMode, run_suite

USAGE_ERRORS = (DomainError, LengthError, ConfigError, ValidationError, FileNotFoundError)
NUMERICAL_ERRORS = (SingularSystemError, ZeroKernelError, InconsistentSignError)


@dataclass
class CommandOutput:
    """What a command hands back to :func:`_run` for rendering."""

    results: Any
    table: Table
    warnings: list[str] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    exit_code: ExitCode = ExitCode.OK


def _envelope_sign(output: CommandOutput) -> int | None:
    """
    Global kernel sign for the envelope.

    An unresolved sign is reported as ``None`` and noted in ``output.warnings``.
    """
    try:
        return resolve_sign()
    except DfracError as e:
        output.warnings.append(f"sign_sigma unresolved: {e}")
        return None


def _signed_weight_warnings(h: NDArray[np.float64]) -> list[str]:
    """Note that negative weights enter the left-hand side through |lambda h|."""
    if np.any(h < 0):
        return ["h has negative entries; the left-hand side uses |lambda h|"]
    return []


def _emit(
    command: str,
    params: dict[str, Any],
    fmt: OutputFormat,
    output: CommandOutput,
    sign_sigma: int | None,
) -> None:
    """Print ``output`` as a JSON envelope or a CSV table, then its warnings."""
    if fmt == "csv":
        header, rows = output.table
        with_sign: list[list[Cell]] = [[*row, sign_sigma] for row in rows]
        click.echo(render_csv([*header, "sign_sigma"], with_sign), nl=False)
    else:
        envelope = OutputEnvelope(
            command=command,
            params=params,
            sign_sigma=sign_sigma,
            results=output.results,
            warnings=output.warnings,
            errors=output.errors,
        )
        click.echo(render_json(envelope))
    for warning in output.warnings:
        click.echo(f"⚠ {warning}", err=True)


def _run(
    command: str,
    params: dict[str, Any],
    fmt: OutputFormat,
    compute: Callable[[], CommandOutput],
) -> None:
    """
    Run ``compute`` and map its outcome onto output and exit code.

    Domain and usage problems exit 2, numerical breakdowns exit 3.
    """
    try:
        output = compute()
    except USAGE_ERRORS as e:
        output = CommandOutput(None, ([], []), errors=[str(e)], exit_code=ExitCode.USAGE)
    except NUMERICAL_ERRORS as e:
        output = CommandOutput(
            None, ([], []), errors=[str(e)], exit_code=ExitCode.NO_CONVERGENCE
        )
    except DfracError as e:
        output = CommandOutput(
            None, ([], []), errors=[str(e)], exit_code=ExitCode.NO_CONVERGENCE
        )

    if fmt == "json" or output.table[0]:
        _emit(command, params, fmt, output, _envelope_sign(output))

    for message in output.errors:
        click.echo(f"❌ Error: {message}", err=True)
    if output.exit_code != ExitCode.OK:
        sys.exit(int(output.exit_code))


def _no_convergence(result: NoConvergence) -> CommandOutput:
    """Exit-3 output carrying the diagnostic of a failed iteration."""
    return CommandOutput(
        results=result.model_dump(),
        table=(
            ["method", "iterations", "residual", "detail"],
            [[result.method, result.iterations, result.residual, result.detail]],
        ),
        errors=[f"no convergence: {result.detail}"],
        exit_code=ExitCode.NO_CONVERGENCE,
    )


def _solution_table(y: GridFunction) -> Table:
    """One ``k, t, y`` row per lattice point."""
    rows: list[list[Cell]] = [
        [k, str(y.abscissa(k)), float(value)] for k, value in enumerate(y.values)
    ]
    return ["k", "t", "y"], rows


format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "csv"]),
    default="json",
    show_default=True,
    help="Output format",
)
alpha_option = click.option("--alpha", required=True, type=float, help="Order alpha")
b_option = click.option("--b", "b", required=True, type=int, help="Right end b")
h_option = click.option(
    "--h",
    "h_spec",
    default="ones",
    show_default=True,
    help="Weights h(s + alpha - 1): 'ones', a comma list or @file.csv",
)
f_option = click.option(
    "--f",
    "f",
    type=NONLINEARITY,
    default="linear",
    show_default=True,
    help="Nonlinearity: linear, pow:p, exp or @table.csv",
)


@click.group()
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default="WARNING",
    envvar="DFRAC_LOG_LEVEL",
    show_default=True,
    help="Level of the diagnostics written to stderr",
)
def cli(log_level: str) -> None:
    """Dfrac CLI - discrete fractional calculus and the right-focal problem."""
    configure_logging(log_level)


@cli.command()
@click.option("--t", "t", required=True, type=ABSCISSA, help="Base t as 'm,n' or a real")
@click.option("--nu", required=True, type=ABSCISSA, help="Exponent nu as 'm,n' or a real")
@click.option("--alpha", type=float, default=None, help="Order realizing 'm,n' with m != 0")
@format_option
def ffact(
    t: GridValue | float, nu: GridValue | float, alpha: float | None, fmt: OutputFormat
) -> None:
    """
    Evaluate the falling-factorial power t^(nu) = Gamma(t+1) / Gamma(t+1-nu).

    Examples:

        dfrac ffact --t 1,-2 --nu 1,-1 --alpha 1.5
    """
    exact = isinstance(t, GridValue) and isinstance(nu, GridValue)
    params = {"t": str(t), "nu": str(nu), "alpha": alpha}

    def compute() -> CommandOutput:
        """Evaluate the power and flag real arguments."""
        value = falling_factorial(t, nu, alpha)
        warnings = [] if exact else ["real arguments use the 1e-12 tolerance pole test"]
        return CommandOutput(
            results={"t": str(t), "nu": str(nu), "value": value, "exact": exact},
            table=(["t", "nu", "value", "exact"], [[str(t), str(nu), value, exact]]),
            warnings=warnings,
        )

    _run("ffact", params, fmt, compute)


@cli.command()
@alpha_option
@b_option
@format_option
def green(alpha: float, b: int, fmt: OutputFormat) -> None:
    """Tabulate the Green's kernel G(alpha - 2 + k, s)."""
    params = {"alpha": alpha, "b": b}

    def compute() -> CommandOutput:
        """Build the kernel table."""
        kernel = green_kernel(alpha, b)
        labels = kernel.row_labels()
        rows: list[list[Cell]] = [
            [k, labels[k], *(float(v) for v in kernel.matrix[k])] for k in range(b + 3)
        ]
        return CommandOutput(
            results={
                "rows": labels,
                "columns": list(range(b + 1)),
                "denominator": kernel.denominator,
                "matrix": kernel.matrix,
            },
            table=(["k", "t", *(f"s={s}" for s in range(b + 1))], rows),
        )

    _run("green", params, fmt, compute)


@cli.command(name="green-max")
@alpha_option
@b_option
@format_option
def green_max(alpha: float, b: int, fmt: OutputFormat) -> None:
    """Closed-form and exhaustive maximum of the kernel diagonal."""
    params = {"alpha": alpha, "b": b}

    def compute() -> CommandOutput:
        """Compare the closed form with the exhaustive scan."""
        closed = green_max_closed_form(alpha, b)
        s_star, exhaustive = green_diag_max_exhaustive(alpha, b)
        results: GreenMaxPayload = {
            "closed_form": closed,
            "exhaustive": exhaustive,
            "s_star": s_star,
            "relative_error": abs(closed - exhaustive) / closed,
            "kernel_sup": kernel_sup(alpha, b),
            "column_argmax": green_column_argmax(alpha, b),
        }
        row: list[Cell] = [
            closed,
            exhaustive,
            s_star,
            results["relative_error"],
            results["kernel_sup"],
        ]
        header = ["closed_form", "exhaustive", "s_star", "relative_error", "kernel_sup"]
        return CommandOutput(results=results, table=(header, [row]))

    _run("green-max", params, fmt, compute)


@cli.command()
@alpha_option
@b_option
@format_option
def bound(alpha: float, b: int, fmt: OutputFormat) -> None:
    """Lyapunov constant C(alpha, b) and the kernel constant Gamma(alpha) / max G."""
    params = {"alpha": alpha, "b": b}

    def compute() -> CommandOutput:
        """Evaluate both constants."""
        results: BoundPayload = {
            "bound_C": lyapunov_bound(alpha, b),
            "bound_kernel": kernel_bound(alpha, b),
            "green_max": green_max_closed_form(alpha, b),
            "kernel_sup": kernel_sup(alpha, b),
        }
        header = list(results)
        row: list[Cell] = [
            results["bound_C"],
            results["bound_kernel"],
            results["green_max"],
            results["kernel_sup"],
        ]
        return CommandOutput(results=results, table=(header, [row]))

    _run("bound", params, fmt, compute)


@cli.command()
@alpha_option
@b_option
@h_option
@f_option
@click.option(
    "--lambda", "lam", type=float, default=1.0, show_default=True, help="Parameter lambda"
)
@click.option(
    "--method",
    type=click.Choice(["direct", "green", "picard"]),
    default=None,
    help="Solver; direct for linear f and picard otherwise by default",
)
@click.option("--tol", type=float, default=None, help="Picard tolerance [env DFRAC_TOL]")
@click.option("--max-iter", type=int, default=None, help="Picard cap [env DFRAC_MAX_ITER]")
@click.option("--damping", type=float, default=None, help="Picard damping [env DFRAC_DAMPING]")
@click.option("--initial", default=None, help="Starting iterate: comma list or @file.csv")
@format_option
def solve(
    alpha: float,
    b: int,
    h_spec: str,
    f: BaseNonlinearity,
    lam: float,
    method: str | None,
    tol: float | None,
    max_iter: int | None,
    damping: float | None,
    initial: str | None,
    fmt: OutputFormat,
) -> None:
    """
    Solve the right-focal problem.

    The direct and green methods solve the linear problem -Delta^alpha y = lambda h
    and return the signed solution. The picard method solves
    y = lambda / Gamma(alpha) * G (h * f(y)), whose solutions are nonnegative.
    """
    linear = isinstance(f, LinearNonlinearity)
    method = method or ("direct" if linear else "picard")
    params = {
        "alpha": alpha,
        "b": b,
        "h": h_spec,
        "f": f.tag(),
        "lambda": lam,
        "method": method,
        "tol": config.tol if tol is None else tol,
        "max_iter": config.max_iter if max_iter is None else max_iter,
        "damping": config.damping if damping is None else damping,
        "initial": initial,
    }

    def compute() -> CommandOutput:
        """Run the selected solver."""
        h = resolve_weights(h_spec, b)
        if method in ("direct", "green"):
            if not linear:
                raise DomainError(f"--method {method} needs --f linear, got {f.tag()}")
            solver = solve_linear_bvp_direct if method == "direct" else solve_linear_bvp_green
            y = solver(alpha, b, lam * h)
            signed: SolutionPayload = {
                "representation": "signed",
                "t": [str(y.abscissa(k)) for k in range(len(y))],
                "y": y.values.tolist(),
            }
            return CommandOutput(results=signed, table=_solution_table(y))

        problem = BvpProblem(alpha=alpha, b=b, h=tuple(h), lam=lam, f=f)
        start = None if initial is None else np.asarray(parse_numbers(initial))
        solution = solve_nonlinear_fixed_point(
            problem, tol=tol, max_iter=max_iter, damping=damping, initial=start
        )
        if isinstance(solution, NoConvergence):
            return _no_convergence(solution)
        results: SolutionPayload = {
            "representation": "sign_absorbed",
            "t": [str(solution.abscissa(k)) for k in range(len(solution))],
            "y": solution.values.tolist(),
            "residual": fixed_point_residual(problem, solution),
        }
        return CommandOutput(results=results, table=_solution_table(solution))

    _run("solve", params, fmt, compute)


@cli.command()
@alpha_option
@b_option
@h_option
@click.option(
    "--confirm/--no-confirm", default=True, help="Cross-check lambda* by determinant bisection"
)
@format_option
def eigen(alpha: float, b: int, h_spec: str, confirm: bool, fmt: OutputFormat) -> None:
    """Smallest lambda admitting a nontrivial solution with f(y) = y."""
    params = {
        "alpha": alpha,
        "b": b,
        "h": h_spec,
        "confirm": confirm,
        "drift_tol": config.perron_drift_tol,
        "max_iter": config.perron_max_iter,
    }

    def compute() -> CommandOutput:
        """Find the Perron pair and optionally confirm it."""
        h = resolve_weights(h_spec, b)
        result = perron_smallest_lambda(alpha, b, h)
        if isinstance(result, NoConvergence):
            return _no_convergence(result)
        results: EigenPayload = {
            "lambda_star": result.lambda_star,
            "rho": result.rho,
            "iterations": result.iterations,
            "residual": result.residual,
            "drift": result.drift,
            "t": [str(result.y_star.abscissa(k)) for k in range(len(result.y_star))],
            "y_star": result.y_star.values.tolist(),
        }
        if confirm:
            oracle = lambda_by_determinant(alpha, b, h)
            results["lambda_determinant"] = oracle
            results["relative_difference"] = abs(result.lambda_star - oracle) / oracle
        return CommandOutput(results=results, table=_solution_table(result.y_star))

    _run("eigen", params, fmt, compute)


@cli.command()
@alpha_option
@b_option
@h_option
@f_option
@click.option("--lambda", "lam", type=float, default=None, help="Parameter lambda")
@click.option("--y", "y_spec", default=None, help="Candidate solution: comma list or @file.csv")
@click.option("--initial", default=None, help="Picard starting iterate when --y is absent")
@format_option
def check(
    alpha: float,
    b: int,
    h_spec: str,
    f: BaseNonlinearity,
    lam: float | None,
    y_spec: str | None,
    initial: str | None,
    fmt: OutputFormat,
) -> None:
    """
    Evaluate the Lyapunov-type inequality for a solution.

    Without --y the solution is produced first: the Perron pair for linear f
    (lambda becomes lambda*), the Picard iteration otherwise.
    """
    params = {
        "alpha": alpha,
        "b": b,
        "h": h_spec,
        "f": f.tag(),
        "lambda": lam,
        "y": y_spec,
        "initial": initial,
        "tol": config.tol,
    }

    def compute() -> CommandOutput:
        """Obtain the solution and evaluate the report."""
        h = resolve_weights(h_spec, b)
        warnings = _signed_weight_warnings(h)
        if y_spec is not None:
            problem = BvpProblem(alpha=alpha, b=b, h=tuple(h), lam=1.0 if lam is None else lam, f=f)
            values = np.asarray(parse_numbers(y_spec))
            y = GridFunction(base=SOLUTION_BASE, values=values, alpha=alpha)
        elif isinstance(f, LinearNonlinearity):
            eigen_pair = perron_smallest_lambda(alpha, b, h)
            if isinstance(eigen_pair, NoConvergence):
                return _no_convergence(eigen_pair)
            if lam is not None:
                warnings.append(f"--lambda {lam} replaced by lambda* = {eigen_pair.lambda_star}")
            problem = BvpProblem(alpha=alpha, b=b, h=tuple(h), lam=eigen_pair.lambda_star, f=f)
            y = eigen_pair.y_star
        else:
            problem = BvpProblem(alpha=alpha, b=b, h=tuple(h), lam=1.0 if lam is None else lam, f=f)
            start = None if initial is None else np.asarray(parse_numbers(initial))
            solution = solve_nonlinear_fixed_point(problem, initial=start)
            if isinstance(solution, NoConvergence):
                return _no_convergence(solution)
            y = solution

        report = check_inequality(problem, y)
        if not report.holds:
            warnings.append("closed-form constant C(alpha, b) exceeds the left-hand side")
        results = report.model_dump()
        header = list(results)
        return CommandOutput(
            results=results,
            table=(header, [[results[name] for name in header]]),
            warnings=warnings,
        )

    _run("check", params, fmt, compute)


@cli.command()
@click.option(
    "--alphas",
    type=FLOAT_LIST,
    default=",".join(str(a) for a in SWEEP_ALPHAS),
    show_default=True,
    help="Comma list of orders",
)
@click.option(
    "--bs",
    type=INT_LIST,
    default=f"{SWEEP_BS[0]}-{SWEEP_BS[-1]}",
    show_default=True,
    help="Comma list or range of right ends",
)
@click.option("--workers", type=int, default=None, help="Threads [env DFRAC_SWEEP_WORKERS]")
@format_option
def sweep(
    alphas: tuple[float, ...], bs: tuple[int, ...], workers: int | None, fmt: OutputFormat
) -> None:
    """Bound versus Perron threshold over an (alpha, b) grid with h = 1."""
    params = {
        "alphas": list(alphas),
        "bs": list(bs),
        "workers": config.sweep_workers if workers is None else workers,
    }

    def compute() -> CommandOutput:
        """Run the sweep and collect closed-form violations."""
        rows = bound_sweep(alphas, bs, workers=workers)
        header = list(SweepRow.model_fields)
        table_rows: list[list[Cell]] = [
            [getattr(row, name) for name in header] for row in rows
        ]
        violations = [row for row in rows if row.holds is False]
        warnings = []
        if violations:
            cells = ", ".join(f"({row.alpha}, {row.b})" for row in violations)
            warnings.append(f"closed-form constant violated at {cells}")
        return CommandOutput(
            results=[row.model_dump() for row in rows],
            table=(header, table_rows),
            warnings=warnings,
        )

    _run("sweep", params, fmt, compute)


@cli.command()
@click.option("--quick/--full", default=True, help="Reduced grid or the complete sweep")
@format_option
def verify(quick: bool, fmt: OutputFormat) -> None:
    """
    Run the invariant suite; exit 1 if any check fails.

    Examples:

        dfrac verify --quick
    """
    mode: SuiteMode = "quick" if quick else "full"
    params = {"mode": mode}

    def compute() -> CommandOutput:
        """Run the suite."""
        results = run_suite(mode)
        failed = [result.name for result in results if not result.passed]
        return CommandOutput(
            results=[result.model_dump() for result in results],
            table=(
                ["name", "passed", "detail"],
                [[result.name, result.passed, result.detail] for result in results],
            ),
            errors=[f"check failed: {name}" for name in failed],
            exit_code=ExitCode.VERIFICATION_FAILED if failed else ExitCode.OK,
        )

    _run("verify", params, fmt, compute)


if __name__ == "__main__":
    cli()
