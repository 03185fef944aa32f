"""All-uses data-flow subsumption analysis over annotated control flow graphs."""

from ._core import AnalysisError, analyze, check, duas, export_dot, __version__

__all__ = ["AnalysisError", "analyze", "check", "duas", "export_dot", "__version__"]
