"""Scripted dialogue generation from a fact base and character personas."""

from pathlib import Path

DATA_DIR = Path(__file__).parent / "data"


def data_path(*parts: str) -> Path:
    return DATA_DIR.joinpath(*parts)


__version__ = "0.1.0"
