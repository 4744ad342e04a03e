"""JSON spec files: parsing, validation and canonical serialization."""

from __future__ import annotations

import json
import logging
import re
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.balgebra.matrix import BMatrix
from src.balgebra.multilinear import MultilinearCoefficient
from src.engine.families import Indices, JointCumulantSpec, JointMomentSpec, JointSpec
from src.errors import AmalgamError, SpecFormatError

logger = logging.getLogger(__name__)

RATIONAL = re.compile(r"^-?(0|[1-9]\d*)/([1-9]\d*)$")
SPEC_INDENT = 2

PathLike = Union[str, Path]


class SparseTerm(BaseModel):
    """One nonzero value of a sparse coefficient: E_out entry of the value at E_in inputs."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    out: tuple[int, int]
    inputs: list[tuple[int, int]] = Field(..., alias="in")
    val: str


class SpecEntryModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    order: int = Field(..., ge=1)
    indices: list[int]
    coefficient: list[Any] = Field(..., description="Dense rows of rationals or a list of sparse terms")


class SpecFileModel(BaseModel):
    """On-disk layout of a truncated joint distribution."""

    model_config = ConfigDict(extra="forbid")

    d: int = Field(..., ge=1)
    s: int = Field(..., ge=1)
    N: int = Field(..., ge=1)
    kind: Literal["cumulant", "moment"]
    entries: list[SpecEntryModel] = Field(default_factory=list)


def parse_rational(text: Any, location: str = "") -> Fraction:
    """Parse "p/q" in lowest terms with positive denominator."""
    if not isinstance(text, str):
        raise SpecFormatError(f"Rationals are written as \"p/q\" strings, got {text!r}", location)
    match = RATIONAL.match(text)
    if match is None:
        raise SpecFormatError(f"Malformed rational {text!r}", location)
    p, q = int(match.group(1)), int(match.group(2))
    if gcd(p, q) != 1 or (p == 0 and text.startswith("-")):
        raise SpecFormatError(f"Rational {text!r} is not in lowest terms", location)
    return Fraction(-p if text.startswith("-") else p, q)


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _location_of(error: ValidationError) -> str:
    loc = error.errors()[0]["loc"]
    parts = []
    for item in loc:
        if isinstance(item, int):
            parts.append(f"[{item}]")
        else:
            parts.append(f".{item}" if parts else str(item))
    return "".join(parts)


def _coefficient(model: SpecFileModel, entry: SpecEntryModel, location: str) -> MultilinearCoefficient:
    d, r = model.d, entry.order - 1
    raw = entry.coefficient
    if all(isinstance(item, dict) for item in raw):
        terms = []
        for j, item in enumerate(raw):
            where = f"{location}.coefficient[{j}]"
            try:
                term = SparseTerm.model_validate(item)
            except ValidationError as e:
                raise SpecFormatError(str(e.errors()[0]["msg"]), where) from e
            terms.append((term.out, tuple(term.inputs), parse_rational(term.val, where)))
        return MultilinearCoefficient.from_sparse(d, r, terms)
    if all(isinstance(row, list) for row in raw):
        rows = [
            [parse_rational(value, f"{location}.coefficient[{i}][{j}]") for j, value in enumerate(row)]
            for i, row in enumerate(raw)
        ]
        return MultilinearCoefficient.from_matrix(d, r, rows)
    raise SpecFormatError("Coefficient must be dense rows or a list of sparse terms", f"{location}.coefficient")


def spec_from_dict(data: Any, source: str = "") -> JointSpec:
    """Validate a parsed spec document and build the in-memory family.

    Raises:
        SpecFormatError: With the offending entry as location
    """
    try:
        model = SpecFileModel.model_validate(data)
    except ValidationError as e:
        raise SpecFormatError(str(e.errors()[0]["msg"]), _location_of(e)) from e

    table: dict[Indices, MultilinearCoefficient] = {}
    for i, entry in enumerate(model.entries):
        location = f"entries[{i}]"
        indices = tuple(entry.indices)
        if entry.order != len(indices):
            raise SpecFormatError(f"order {entry.order} but {len(indices)} indices", location)
        if entry.order > model.N:
            raise SpecFormatError(f"order {entry.order} exceeds N={model.N}", location)
        if any(not 1 <= var <= model.s for var in indices):
            raise SpecFormatError(f"indices {list(indices)} outside 1..{model.s}", location)
        if indices in table:
            raise SpecFormatError(f"duplicate entry for {list(indices)}", location)
        try:
            table[indices] = _coefficient(model, entry, location)
        except SpecFormatError:
            raise
        except AmalgamError as e:
            raise SpecFormatError(str(e), location) from e

    family = JointCumulantSpec if model.kind == "cumulant" else JointMomentSpec
    spec = family(model.s, model.d, model.N, table)
    logger.debug("Loaded %r from %s", spec, source or "<memory>")
    return spec


def _read_json(path: Path) -> Any:
    with open(path, "rb") as handle:
        raw = handle.read()
    try:
        return json.loads(raw.decode("utf-8"))
    except UnicodeDecodeError as e:
        raise SpecFormatError(f"not valid UTF-8 at byte {e.start}", str(path)) from e
    except json.JSONDecodeError as e:
        raise SpecFormatError(f"invalid JSON at line {e.lineno}: {e.msg}", str(path)) from e


def load_spec(path: PathLike) -> JointSpec:
    """Read and validate a spec file.

    Raises:
        SpecFormatError: On unreadable JSON or any invariant violation
        OSError: If the file cannot be read
    """
    path = Path(path)
    data = _read_json(path)
    return spec_from_dict(data, str(path))


def spec_to_dict(spec: JointSpec) -> dict[str, Any]:
    """Canonical document: dense coefficients, entries in (order, tuple) order."""
    return {
        "d": spec.d,
        "s": spec.s,
        "N": spec.N,
        "kind": spec.kind,
        "entries": [
            {
                "order": len(indices),
                "indices": list(indices),
                "coefficient": [[format_rational(x) for x in row] for row in coefficient.to_matrix()],
            }
            for indices, coefficient in spec.items()
        ],
    }


def dumps_canonical(data: Any) -> str:
    return json.dumps(data, indent=SPEC_INDENT, sort_keys=True) + "\n"


def save_spec(spec: JointSpec, path: Optional[PathLike] = None) -> str:
    """Serialize canonically; write to ``path`` when given and return the text."""
    text = dumps_canonical(spec_to_dict(spec))
    if path is not None:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    return text


def load_matrix(path: PathLike) -> BMatrix:
    """Read a B element stored as {"d": d, "matrix": [["p/q", ...], ...]}."""
    path = Path(path)
    data = _read_json(path)
    if not (
        isinstance(data, dict)
        and isinstance(data.get("d"), int)
        and isinstance(data.get("matrix"), list)
    ):
        raise SpecFormatError("expected an object with integer \"d\" and a \"matrix\"", str(path))
    d, rows = data["d"], data["matrix"]
    if len(rows) != d or any(not isinstance(row, list) or len(row) != d for row in rows):
        raise SpecFormatError(f"matrix must be {d}x{d}", f"{path}.matrix")
    return BMatrix(
        [
            [parse_rational(value, f"{path}.matrix[{i}][{j}]") for j, value in enumerate(row)]
            for i, row in enumerate(rows)
        ]
    )


def matrix_to_dict(value: BMatrix) -> dict[str, Any]:
    return {"d": value.d, "matrix": [[format_rational(x) for x in row] for row in value.entries()]}
