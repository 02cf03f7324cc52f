#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""The hvol computation commands: table, integral, tau1, verify and snf."""

import asyncio
from collections.abc import Callable
import pathlib
import sys
import time
from typing import Any, NoReturn, TypeVar

import click
from provide.foundation import logger
from provide.foundation.errors import error_boundary

from harmvol.commands.logic import (
    JobConfig,
    integral_payload,
    resolve_job_config,
    run_suites,
    snf_payload,
    table_payload,
    tau1_payload,
    verify_payload,
)
from harmvol.commands.reporting import (
    print_failure_report,
    print_rows_table,
    print_summary_panel,
    print_verdict,
)
from harmvol.common.config import HarmVolConfig
from harmvol.common.exceptions import HarmVolConfigError, HarmVolError
from harmvol.common.serialization import write_output
from harmvol.config.defaults import EXIT_CONFIG, EXIT_VERIFICATION, SUITES

F = TypeVar("F", bound=Callable[..., Any])


def _job_options(func: F) -> F:
    """--genus, --parity, --degree, --format and --out, shared by every command."""
    decorators = [
        click.option("--genus", type=int, default=None, help="Curve genus g ≥ 2."),
        click.option("--parity", type=str, default=None, help="even (n = 2g+2) or odd (n = 2g+1)."),
        click.option("--degree", type=int, default=None, help="Truncation degree D of the Magnus expansion."),
        click.option("--format", "output_format", type=str, default=None, help="json, csv or msgpack."),
        click.option(
            "--out",
            type=click.Path(dir_okay=False, writable=True, path_type=pathlib.Path),
            default=None,
            help="Write the export here instead of stdout.",
        ),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


def _resolve(ctx: click.Context, **options: Any) -> JobConfig:
    obj = ctx.obj or {}
    return resolve_job_config(obj.get("HVOL_CONFIG", {}), HarmVolConfig.from_env(), **options)


def _emit(job: JobConfig, payload: dict[str, Any]) -> None:
    rendered = write_output(payload, job.output_format, job.out)
    if job.out is None:
        click.echo(rendered, nl=False)
    else:
        logger.info(f"Wrote {job.output_format} output to {job.out}")


def _fail_config(ctx: click.Context, what: str, e: HarmVolError) -> NoReturn:
    verbose = (ctx.obj or {}).get("VERBOSE", False)
    logger.error(f"{what}: {e}", exc_info=verbose)
    click.echo(f"Error: {e}", err=True)
    sys.exit(EXIT_CONFIG)


@click.command("table")
@_job_options
@click.pass_context
def table_command(ctx: click.Context, **options: Any) -> None:
    """Evaluate every row of the pointed harmonic volume value table."""
    try:
        job = _resolve(ctx, **options)
        payload, table = table_payload(job)
        _emit(job, payload)
    except HarmVolConfigError as e:
        _fail_config(ctx, "Invalid configuration", e)
    except HarmVolError as e:
        _fail_config(ctx, "Error computing the value table", e)

    errata = sum(1 for r in table.rows if r.erratum)
    with error_boundary(Exception, log_errors=True, reraise=False):
        if job.out is not None:
            print_rows_table(f"Value table, {job.curve.describe()}", payload["rows"])
        print_verdict(
            f"{len(table.rows)} rows for n={table.n}",
            table.all_match,
            f"{len(table.mismatches())} mismatches, {errata} printed entries corrected",
        )
    if not table.all_match:
        sys.exit(EXIT_VERIFICATION)


@click.command("integral")
@click.argument("i", type=int)
@click.argument("j", type=int)
@click.argument("k", type=int)
@_job_options
@click.pass_context
def integral_command(ctx: click.Context, i: int, j: int, k: int, **options: Any) -> None:
    """Compute ∫_{ℓ_K} ℓ_I ℓ_J by the closed formula and by the double-sum oracle."""
    try:
        job = _resolve(ctx, **options)
        payload, agree = integral_payload(job, i, j, k)
        _emit(job, payload)
    except HarmVolError as e:
        _fail_config(ctx, "Cannot evaluate the iterated integral", e)

    with error_boundary(Exception, log_errors=True, reraise=False):
        row = payload["rows"][0]
        print_verdict(
            f"∫ℓ{k} ℓ{i}ℓ{j} = {row['closed']} (mod 1: {row['closed_mod1']})",
            agree,
            f"oracle {row['oracle']}",
        )
    if not agree:
        sys.exit(EXIT_VERIFICATION)


@click.command("tau1")
@_job_options
@click.pass_context
def tau1_command(ctx: click.Context, **options: Any) -> None:
    """Write τ₁^std on the reduced index cube, with the S-set verdict in genus 2."""
    try:
        job = _resolve(ctx, **options)
        payload, verdict = tau1_payload(job)
        _emit(job, payload)
    except HarmVolError as e:
        _fail_config(ctx, "Error computing τ₁", e)

    with error_boundary(Exception, log_errors=True, reraise=False):
        detail = ""
        if "s_sets" in payload:
            detail = f"words reproduce the printed S-sets: {payload['s_sets']['words_match']}"
        print_verdict(f"τ₁ for {job.curve.describe()}", verdict, detail)
    if not verdict:
        sys.exit(EXIT_VERIFICATION)


@click.command("verify")
@click.option(
    "--suite",
    "suites",
    multiple=True,
    type=str,
    help=f"Suite to run (repeatable): {', '.join(SUITES)}. Default: all.",
)
@_job_options
@click.pass_context
def verify_command(ctx: click.Context, suites: tuple[str, ...], **options: Any) -> None:
    """Run the verification suites and write a JSON report."""
    try:
        job = _resolve(ctx, suites=suites, **options)
    except HarmVolError as e:
        _fail_config(ctx, "Invalid configuration", e)

    start = time.perf_counter()
    results = asyncio.run(run_suites(job))
    duration = time.perf_counter() - start
    try:
        _emit(job, verify_payload(job, results))
    except HarmVolError as e:
        _fail_config(ctx, "Error writing the verification report", e)

    with error_boundary(Exception, log_errors=True, reraise=False):
        for result in results:
            if not result.success:
                print_failure_report(result)
        print_summary_panel(results, duration)
    if not all(r.success for r in results):
        sys.exit(EXIT_VERIFICATION)


@click.command("snf")
@_job_options
@click.pass_context
def snf_command(ctx: click.Context, **options: Any) -> None:
    """Debug: Smith normal form data of the Gram matrix and the coboundary map."""
    try:
        job = _resolve(ctx, **options)
        _emit(job, snf_payload(job))
    except HarmVolError as e:
        _fail_config(ctx, "Error computing Smith normal forms", e)


# 🌀🧮🔚
