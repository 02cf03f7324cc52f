#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Click group whose subcommands are imported on first use."""

import importlib
from typing import Any

import click


class LazyGroup(click.Group):
    """
    A Click Group that resolves commands from (module, attribute) pairs on demand,
    so `hvol --help` does not import the computation modules.
    """

    def __init__(
        self,
        *args: Any,
        lazy_commands: dict[str, tuple[str, str]] | None = None,
        **kwargs: Any,
    ) -> None:
        super().__init__(*args, **kwargs)
        self.lazy_commands = lazy_commands or {}

    def list_commands(self, ctx: click.Context) -> list[str]:
        base_commands = super().list_commands(ctx)
        return sorted(set(base_commands) | set(self.lazy_commands))

    def get_command(self, ctx: click.Context, cmd_name: str) -> click.Command | None:
        if cmd_name in self.lazy_commands:
            module_path, command_name = self.lazy_commands[cmd_name]
            try:
                module = importlib.import_module(module_path)
                cmd: click.Command | None = getattr(module, command_name)
            except (ImportError, AttributeError) as e:
                raise click.UsageError(f"Error loading command '{cmd_name}': {e}") from e
            return cmd
        return super().get_command(ctx, cmd_name)


# 🌀🧮🔚
