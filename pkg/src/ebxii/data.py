"""Loading numeric series from text files and the bundled dataset registry."""

from __future__ import annotations

import csv
import math
import os
import warnings
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import DataError, NonPositiveDataWarning

ROLLER_URL = "http://lib.stat.cmu.edu/jasadata/laslett"
DATA_DIR_ENV = "EBXII_DATA_DIR"


@dataclass(frozen=True)
class Series:
    """An immutable labelled sample with a provenance note."""

    label: str
    values: tuple[float, ...]
    provenance: str = ""

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not all(math.isfinite(v) for v in vals):
            raise DataError(f"series {self.label!r} contains non-finite values")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def to_numpy(self) -> np.ndarray:
        return np.array(self.values, dtype=float)


def _parse_number(token: str, lineno: int, path) -> float:
    # float() ignores the process locale, so "1,5" is rejected rather than read as 1.5
    try:
        val = float(token.strip())
    except ValueError:
        raise DataError(f"{path}: line {lineno}: cannot parse {token.strip()!r} as a number") from None
    if not math.isfinite(val):
        raise DataError(f"{path}: line {lineno}: non-finite value {token.strip()!r}")
    return val


def parse_series_text(text: str, column: int | None = None, source: str = "<text>") -> list[float]:
    """Parse one number per line, or a 0-based column of comma-separated rows.

    Blank lines and lines starting with '#' are skipped.
    """
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if column is None:
            token = stripped
        else:
            fields = next(csv.reader([stripped]))
            if column >= len(fields):
                raise DataError(f"{source}: line {lineno}: no column {column} (found {len(fields)} fields)")
            token = fields[column]
        out.append(_parse_number(token, lineno, source))
    return out


def load_series(path, column: int | None = None, label: str | None = None) -> Series:
    """Read a :class:`Series` from a text file.

    Parameters
    ----------
    path : str or Path
        Text file, one value per line or comma-separated rows.
    column : int, optional
        0-based column to read from comma-separated rows.
    label : str, optional
        Defaults to the file stem.

    Raises
    ------
    DataError
        On an unreadable file, a malformed line (the message names the line
        number) or a file with no values.
    """
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {p}: {exc.strerror or exc}") from None
    values = parse_series_text(text, column=column, source=str(p))
    if not values:
        raise DataError(f"{p}: no numeric values found")
    return Series(label or p.stem, tuple(values), f"file:{p}")


def reflect_transform(series: Series, pivot: float) -> Series:
    """Map every value x to ``pivot - x``.

    Warns with :class:`NonPositiveDataWarning` when any output is <= 0.
    """
    pivot = float(pivot)
    vals = tuple(pivot - v for v in series.values)
    if any(v <= 0 for v in vals):
        warnings.warn(
            f"reflection about {pivot:g} gives non-positive values", NonPositiveDataWarning, stacklevel=2
        )
    return Series(series.label, vals, f"{series.provenance}; reflected as {pivot:g} - x")


# -- registry ------------------------------------------------------------------

@dataclass(frozen=True)
class DatasetInfo:
    name: str
    description: str
    resource: str | None
    provenance: str
    fetch_hint: str = ""
    expected_length: int | None = None


DATASETS: dict[str, DatasetInfo] = {
    "strengths": DatasetInfo(
        "strengths",
        "glass fibre strengths, length 1.5 cm, 63 values (unit not given by the source)",
        "strengths.txt",
        "Smith, R.L. and Naylor, J.C. (1987), Applied Statistics 36, 358-369",
    ),
    "strengths51": DatasetInfo(
        "strengths51",
        "51-value subset of the strengths sample matching previously published fits",
        "strengths51.txt",
        "reconstructed from the 63-value strengths sample; see the file header",
    ),
    "rainfall": DatasetInfo(
        "rainfall",
        "annual maximum antecedent 60-day rainfalls, Maple Ridge, British Columbia (mm)",
        None,
        "Chen, Bunce and Jiang (2010)",
        "not bundled; place rainfall.txt in the data directory or load it with load_series",
    ),
    "roller": DatasetInfo(
        "roller",
        "1150 roller surface heights at 1 micron intervals (Laslett 1994)",
        None,
        ROLLER_URL,
        f"not bundled; run scripts/fetch_roller.py to download it from {ROLLER_URL}",
        1150,
    ),
}

PUBLISHED_TABLES = {
    "strengths": "published_strengths.csv",
    "rainfall": "published_rainfall.csv",
    "roller": "published_roller.csv",
    "roller_reflected": "published_roller_reflected.csv",
    "roller_competitors": "published_roller_competitors.csv",
}


def resource_path(name: str):
    """A traversable for a bundled resource file."""
    return resources.files("ebxii").joinpath("resources", name)


def data_dir() -> Path:
    """Directory searched for datasets that are not bundled.

    ``$EBXII_DATA_DIR`` if set, else ``~/.cache/ebxii``.
    """
    env = os.environ.get(DATA_DIR_ENV)
    return Path(env) if env else Path.home() / ".cache" / "ebxii"


def dataset(name: str) -> Series:
    """Load a dataset by registry name.

    Bundled datasets come from the package; the others are read from
    ``data_dir() / f"{name}.txt"`` when present.

    Raises
    ------
    DataError
        For unknown names, for fetch-required datasets that are absent and
        for a local copy of the wrong length.
    """
    try:
        info = DATASETS[name]
    except KeyError:
        raise DataError(f"unknown dataset {name!r}; known: {', '.join(sorted(DATASETS))}") from None
    if info.resource is not None:
        text = resource_path(info.resource).read_text(encoding="utf-8")
        return Series(name, tuple(parse_series_text(text, source=info.resource)), info.provenance)
    local = data_dir() / f"{name}.txt"
    if not local.is_file():
        raise DataError(f"dataset {name!r} is {info.fetch_hint} (looked for {local})")
    series = load_series(local, label=name)
    if info.expected_length is not None and len(series) != info.expected_length:
        raise DataError(f"{local}: expected {info.expected_length} values, found {len(series)}")
    return Series(name, series.values, f"{info.provenance} via {local}")


def published_table_text(name: str) -> str:
    """CSV text of a bundled table of published comparison rows."""
    try:
        fname = PUBLISHED_TABLES[name]
    except KeyError:
        raise DataError(f"unknown published table {name!r}; known: {', '.join(sorted(PUBLISHED_TABLES))}") from None
    return resource_path(fname).read_text(encoding="utf-8")
