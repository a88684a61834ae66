# Copyright 2024, persistence-erosion contributors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Declarative subcommands for the command line front end.

A handler method is tagged with `command_handler`, passing a `CommandBuilder`
that lists its arguments; the front end collects tagged methods and turns
each builder into an argparse subparser.
"""
import argparse
from typing import Any, Callable, Dict, List, Tuple


class UsageError(ValueError):
    """Raise when the command line cannot be parsed."""
    pass


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


class CommandBuilder:
    """Fluent description of one subcommand.

    Examples:
        CommandBuilder("radius").describe("local isometry radius").require("diagram")
    """

    def __init__(self, name: str):
        self.name = name
        self.help = ""
        self.arguments: List[Tuple[Tuple[str, ...], Dict[str, Any]]] = []

    def describe(self, text: str) -> "CommandBuilder":
        self.help = text
        return self

    def require(self, name: str, **kwargs) -> "CommandBuilder":
        """Add a positional argument."""
        self.arguments.append(((name,), kwargs))
        return self

    def optionally(self, *flags: str, **kwargs) -> "CommandBuilder":
        """Add an option such as ("-o", "--output")."""
        self.arguments.append((flags, kwargs))
        return self

    def build(self, subparsers) -> argparse.ArgumentParser:
        parser = subparsers.add_parser(self.name, help=self.help, description=self.help)
        for flags, kwargs in self.arguments:
            parser.add_argument(*flags, **kwargs)
        return parser


def command_handler(builder: CommandBuilder) -> Callable:
    """Decorator tagging a method as the handler of the builder's subcommand."""

    def decorator(func: Callable) -> Callable:
        func.command = builder
        return func

    return decorator


def collect_handlers(obj) -> Dict[str, Callable]:
    """Map subcommand names to the bound handler methods of obj, in definition order."""
    handlers = {}
    for attr in type(obj).__dict__.values():
        builder = getattr(attr, "command", None)
        if isinstance(builder, CommandBuilder):
            handlers[builder.name] = attr.__get__(obj, type(obj))
    return handlers
