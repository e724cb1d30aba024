# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

"""
Load local configuration options and combine them with command-line flags.

Configuration is optional; when ``chevwidth_config.yml`` is not present
the defaults of :class:`RunConfig` apply. Command-line flags always win
over configured values.
"""

import argparse
import pathlib
import random
from dataclasses import dataclass, fields
from typing import Any, Self

import yaml

try:
    from yaml import CLoader as Loader
except ImportError:  # pragma: no cover
    from yaml import Loader  # pragma: no cover

#: src dir relative to this file (assuming dev environment for now)
CHEVWIDTH_SRC_DIR = pathlib.Path(__file__).parent.parent.absolute()

#: expected path for local config file (non-versioned)
CHEVWIDTH_CONFIG_PATH = CHEVWIDTH_SRC_DIR.parent / "chevwidth_config.yml"
#: expected path for example config file
SAMPLE_CONFIG_PATH = CHEVWIDTH_SRC_DIR.parent / "sample_config.yml"

#: supported output formats
OUTPUT_FORMATS = ("json", "csv")


def get_config(required: bool = False) -> dict:
    """Load the local YAML config file and return its contents as a dict.
    Returns an empty dict when there is no config file, unless ``required``
    is set.

    :raises: SystemExit when the file is required but missing, cannot be
        parsed, or is not a mapping
    """
    # if the config file is not in place
    if not CHEVWIDTH_CONFIG_PATH.exists():
        if not required:
            return {}
        not_found_msg = (
            "Config file not found.\n"
            + f"Copy {SAMPLE_CONFIG_PATH} to {CHEVWIDTH_CONFIG_PATH} and configure for your environment."
        )
        raise SystemExit(not_found_msg)

    with CHEVWIDTH_CONFIG_PATH.open() as cfg_file:
        try:
            config = yaml.load(cfg_file, Loader=Loader)
        except yaml.YAMLError as err:
            raise SystemExit(f"Error parsing config file: {err}")
    if config is None:
        return {}
    if not isinstance(config, dict):
        raise SystemExit("Error parsing config file: expected a mapping of options")
    return config


@dataclass(kw_only=True, frozen=True)
class RunConfig:
    """
    Options shared by every chevwidth command. Two runs with equal
    configuration produce byte-identical artifacts.
    """

    #: seed for the single random generator used by a run
    seed: int = 0
    #: directory for cached structure-constant tables
    cache_dir: pathlib.Path = pathlib.Path(".chevwidth-cache")
    #: enable expensive suites (E-type adjoint, exhaustive SL4(F2), F4)
    expensive: bool = False
    #: output format for tabular results
    format: str = "json"
    #: show progress bars
    progress: bool = True
    #: logging level name
    log_level: str = "WARNING"

    def __post_init__(self):
        if self.format not in OUTPUT_FORMATS:
            raise ValueError(
                f"Unsupported output format '{self.format}'; choose from {', '.join(OUTPUT_FORMATS)}"
            )
        if not 0 <= self.seed < 2**64:
            raise ValueError("Seed must be a non-negative 64-bit integer")
        # normalize cache dir so config strings and paths compare equal
        object.__setattr__(self, "cache_dir", pathlib.Path(self.cache_dir))

    @classmethod
    def option_names(cls) -> list[str]:
        """Names of the supported options, in definition order."""
        return [f.name for f in fields(cls)]

    @classmethod
    def from_sources(
        cls, config: dict | None = None, args: argparse.Namespace | None = None
    ) -> Self:
        """Combine configured values with parsed command-line arguments.
        Arguments that were not given on the command line (``None``) fall
        back to the config; anything else uses the dataclass defaults.

        :raises: SystemExit for unknown config keys
        """
        options: dict[str, Any] = {}
        for key, value in (config or {}).items():
            key = key.replace("-", "_")
            if key not in cls.option_names():
                raise SystemExit(f"Error in config file: unknown option '{key}'")
            options[key] = value
        if args is not None:
            for name in cls.option_names():
                value = getattr(args, name, None)
                if value is not None:
                    options[name] = value
        return cls(**options)

    def rng(self) -> random.Random:
        """Return a fresh random generator seeded from this config."""
        return random.Random(self.seed)

    @property
    def disable_progress(self) -> bool:
        return not self.progress
