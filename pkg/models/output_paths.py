"""Paths for experiment configs and outputs."""

import os
from dataclasses import dataclass
from pathlib import Path

CONFIG_SUFFIXES = (".json",)


@dataclass(frozen=True)
class ConfigPath:
    """An existing experiment config file.

    Attributes:
        path: Location of the config document.
    """

    path: Path

    @classmethod
    def from_str(cls, path_str: str) -> "ConfigPath":
        """Creates a ConfigPath from a string path.

        Raises:
            ValueError: If the suffix is not a config suffix.
            FileNotFoundError: If the file does not exist.
        """
        path = Path(path_str)
        if path.suffix.lower() not in CONFIG_SUFFIXES:
            raise ValueError(
                f"Invalid config file extension: {path_str}. "
                f"Must end in one of {', '.join(CONFIG_SUFFIXES)}"
            )
        if not path.is_file():
            raise FileNotFoundError(f"Config file not found: {path_str}")
        return cls(path)

    def read_text(self) -> str:
        """Contents of the config file."""
        return self.path.read_text(encoding="utf-8")

    def __str__(self) -> str:
        return str(self.path)


@dataclass(frozen=True)
class OutputPath:
    """A path where output will be written.

    Attributes:
        path: The output location.
    """

    path: Path

    @classmethod
    def from_str(cls, path_str: str) -> "OutputPath":
        """Creates an OutputPath from a string path.

        Raises:
            ValueError: If the parent directory doesn't exist or isn't writable.
        """
        path = Path(path_str)
        if not path.parent.exists():
            raise ValueError(f"Output directory doesn't exist: {path.parent}")
        if not os.access(path.parent, os.W_OK):
            raise ValueError(f"Output directory isn't writable: {path.parent}")
        return cls(path)

    @classmethod
    def in_directory(cls, directory: str, stem: str, suffix: str) -> "OutputPath":
        """Creates directory if needed and returns directory/stem + suffix."""
        Path(directory).mkdir(parents=True, exist_ok=True)
        return cls.from_str(os.path.join(directory, stem + suffix))

    def __str__(self) -> str:
        return str(self.path)
