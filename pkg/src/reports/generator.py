"""Report generation for lattice dumps, verdicts and harness runs."""

import json
import logging
from pathlib import Path
from typing import Any, Optional, Sequence

from jinja2 import Environment, FileSystemLoader, StrictUndefined
from pydantic import BaseModel, Field

from src import __version__
from src.lattice import enumerate_nc, enumerate_nc_even, kreweras, mobius_to_top

logger = logging.getLogger(__name__)

TOOL_NAME = "amalgam"


class LatticeReport(BaseModel):
    """Dump of NC(n), optionally restricted to even blocks."""

    n: int
    even: bool = False
    count: int
    partitions: list[list[list[int]]]
    kreweras: Optional[list[list[list[int]]]] = Field(
        default=None, description="Kr(π), aligned with partitions"
    )
    mobius: Optional[list[int]] = Field(default=None, description="μ(π, 1_n), aligned with partitions")


class ReportEnvelope(BaseModel):
    """Reproducibility header wrapped around every non-spec report."""

    tool: str = TOOL_NAME
    version: str = __version__
    command: list[str]
    seed: Optional[int] = None
    result: dict[str, Any]


def lattice_report(
    n: int,
    even: bool = False,
    with_kreweras: bool = False,
    with_mobius: bool = False,
) -> LatticeReport:
    """Build the ``nc`` dump for ground set size n."""
    full = enumerate_nc(n)
    partitions = enumerate_nc_even(n) if even else full
    report = LatticeReport(
        n=n,
        even=even,
        count=len(partitions),
        partitions=[p.to_lists() for p in partitions],
    )
    if with_kreweras:
        report.kreweras = [kreweras(p).to_lists() for p in partitions]
    if with_mobius:
        by_partition = dict(zip(full, mobius_to_top(n)))
        report.mobius = [by_partition[p] for p in partitions]
    return report


class ReportGenerator:
    """Renders reports as canonical JSON or jinja2 text."""

    def __init__(self, templates_dir: Path, indent: int = 2):
        """Initialize the report generator.

        Args:
            templates_dir: Directory containing Jinja2 templates
            indent: JSON indentation
        """
        self.templates_dir = templates_dir
        self.indent = indent

        self._env = Environment(
            loader=FileSystemLoader(str(templates_dir)),
            autoescape=False,
            keep_trailing_newline=True,
            undefined=StrictUndefined,
        )

    def envelope(
        self,
        command: Sequence[str],
        result: dict[str, Any],
        seed: Optional[int] = None,
    ) -> ReportEnvelope:
        return ReportEnvelope(command=list(command), seed=seed, result=result)

    def to_json(self, data: Any) -> str:
        """Canonical JSON: sorted keys, fixed indent, trailing newline."""
        if isinstance(data, BaseModel):
            data = data.model_dump(mode="json", by_alias=True)
        return json.dumps(data, indent=self.indent, sort_keys=True) + "\n"

    def render_text(self, template_name: str, **context: Any) -> str:
        """Render ``template_name`` (e.g. "verdict.txt.j2") with ``context``."""
        template = self._env.get_template(template_name)
        logger.debug("Rendering %s", template_name)
        return template.render(tool=TOOL_NAME, version=__version__, **context)
