"""Report rendering."""

from src.reports.generator import LatticeReport, ReportEnvelope, ReportGenerator, lattice_report

__all__ = ["LatticeReport", "ReportEnvelope", "ReportGenerator", "lattice_report"]
