#!/usr/bin/env python3
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#


import pathlib
import sys

from attrs import evolve
import click
from provide.foundation import LoggingConfig, TelemetryConfig, get_hub, logger
from rich import print as rich_print_direct
from rich.tree import Tree

from harmvol.common.config import HarmVolConfig, load_hvol_config
from harmvol.common.exceptions import HarmVolConfigError
from harmvol.common.lazy_group import LazyGroup
from harmvol.common.rich_utils import build_rich_tree_from_dict
from harmvol.config.defaults import EXIT_CONFIG, LOG_LEVELS

# Foundation is initialised in entry_point(); the hub is shared with the root group.
hub = get_hub()

LAZY_COMMANDS = {
    "integral": ("harmvol.commands.cli", "integral_command"),
    "snf": ("harmvol.commands.cli", "snf_command"),
    "table": ("harmvol.commands.cli", "table_command"),
    "tau1": ("harmvol.commands.cli", "tau1_command"),
    "verify": ("harmvol.commands.cli", "verify_command"),
}


def _find_project_root() -> pathlib.Path:
    project_root_path = pathlib.Path.cwd()
    while project_root_path != project_root_path.parent:
        if (project_root_path / "pyproject.toml").exists() or (project_root_path / "hvol.toml").exists():
            return project_root_path
        project_root_path = project_root_path.parent
    logger.debug("No pyproject.toml or hvol.toml found in tree, using current directory as project root")
    return pathlib.Path.cwd()


@click.group(
    name="hvol",
    invoke_without_command=True,
    cls=LazyGroup,
    lazy_commands=LAZY_COMMANDS,
)
@click.pass_context
@click.version_option(package_name="harmvol")
@click.option("--verbose/--no-verbose", default=False, help="Enable verbose output.")
@click.option(
    "--log-level",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    default=None,
    help="Set the logging level.",
)
@click.option(
    "--config-file",
    type=click.Path(exists=True, dir_okay=False, readable=True),
    default=None,
    help="Path to a specific hvol configuration file.",
)
def main_cli(ctx: click.Context, verbose: bool, log_level: str | None, config_file: str | None) -> None:
    """Exact harmonic volumes and Johnson maps of the curves w² = zⁿ − 1."""
    ctx.obj = ctx.obj or {}
    ctx.obj["VERBOSE"] = verbose

    final_log_level = "DEBUG" if verbose else log_level
    if final_log_level:
        updated_config = TelemetryConfig(
            service_name="hvol-cli",
            logging=LoggingConfig(default_level=final_log_level.upper()),
        )
        hub.initialize_foundation(config=updated_config)
        logger.debug(f"Log level set to {final_log_level.upper()} by CLI option.")

    project_root_path = _find_project_root()
    try:
        loaded_config = load_hvol_config(project_root_path, explicit_config_file=config_file)
    except HarmVolConfigError as e:
        logger.error(f"Configuration not loaded: {e}", exc_info=verbose)
        click.echo(f"Error: {e}", err=True)
        sys.exit(EXIT_CONFIG)
    ctx.obj["HVOL_CONFIG"] = loaded_config
    ctx.obj["PROJECT_ROOT"] = project_root_path

    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


@click.group("config")
def config_cli() -> None:
    """Commands for hvol configuration management."""


@config_cli.command("show")
@click.pass_context
def show_config_command(ctx: click.Context) -> None:
    """Displays the currently loaded hvol configuration."""
    loaded_config = ctx.obj.get("HVOL_CONFIG", {})
    if not loaded_config:
        rich_print_direct("[yellow]No hvol configuration loaded or configuration is empty.[/yellow]")
        return

    config_tree = Tree("🌀 [bold green]Loaded hvol Configuration[/bold green]")
    build_rich_tree_from_dict(config_tree, loaded_config, "Config Root")
    rich_print_direct(config_tree)


main_cli.add_command(config_cli)


def entry_point() -> None:
    """CLI entry point: initialise Foundation from the environment, then run the root group."""
    hvol_config = HarmVolConfig.from_env()
    base_telemetry = TelemetryConfig.from_env()
    telemetry_config = evolve(
        base_telemetry,
        service_name="hvol-cli",
        logging=evolve(
            base_telemetry.logging,
            default_level=hvol_config.log_level,
        ),
    )
    hub.initialize_foundation(config=telemetry_config)
    main_cli(obj={})


if __name__ == "__main__":
    entry_point()

# 🌀🧮🔚
