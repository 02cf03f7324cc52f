#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Suite result reporting and display utilities."""

from typing import Any

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from harmvol.commands.logic import SuiteResult
from harmvol.common.rich_utils import build_rows_table
from harmvol.common.serialization import to_plain

# stdout carries the exported payload
console = Console(stderr=True)


def print_failure_report(result: SuiteResult) -> None:
    """Print the failed checks of one suite."""
    title = f"🚨 Failure Report for {result.suite_name} "
    console.print(f"[bold red]{title.center(80, '─')}[/bold red]")
    if not result.failures:
        console.print("[yellow]The suite failed without recording a specific check.[/yellow]")
    for failure in result.failures[:20]:
        console.print(Text(f"  • {failure}"))
    if len(result.failures) > 20:
        console.print(f"[dim]  … {len(result.failures) - 20} more[/dim]")
    console.print("─" * 80)


def print_summary_panel(results: list[SuiteResult], duration: float) -> None:
    """Print a summary panel with one line per suite."""
    success = all(r.success for r in results)
    title = (
        "✨ [bold green]All Suites Passed[/bold green]"
        if success
        else "🔥 [bold red]Some Suites Failed[/bold red]"
    )
    border_style = "green" if success else "red"

    summary_table = Table.grid(padding=(0, 2))
    summary_table.add_column()
    summary_table.add_column(justify="right")
    summary_table.add_column(justify="right")
    for result in results:
        if result.skipped:
            status = "[dim]skipped[/dim]"
        elif result.success:
            status = f"[green]{result.checks} passed[/green]"
        else:
            status = f"[red]{result.failed}/{result.checks} failed[/red]"
        summary_table.add_row(f"{result.suite_name}:", status, f"{result.duration:.2f}s")
    summary_table.add_row("Duration:", "", f"{duration:.2f}s")

    console.print(
        Panel(
            summary_table,
            title=title,
            border_style=border_style,
            expand=False,
            padding=(1, 2),
        )
    )


TABLE_COLUMNS = ("tensor", "condition", "printed", "predicted", "computed_mod1", "match")


def print_rows_table(title: str, rows: list[dict[str, Any]], columns: tuple[str, ...] = TABLE_COLUMNS) -> None:
    """Render exported rows (rationals as p/q) as a Rich table."""
    console.print(build_rows_table(title, columns, [to_plain(r) for r in rows]))


def print_verdict(label: str, ok: bool, detail: str = "") -> None:
    """One-line verdict for the table, integral and tau1 commands."""
    mark = "[green]✔[/green]" if ok else "[red]✘[/red]"
    console.print(f"{mark} {label}" + (f" [dim]({detail})[/dim]" if detail else ""))


# 🌀🧮🔚
