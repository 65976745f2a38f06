# mastergraph/services/__init__.py
from mastergraph.services.analysis import NetworkAnalysisService, infer_format, resolve_p0, resolve_start

__all__ = ["NetworkAnalysisService", "infer_format", "resolve_p0", "resolve_start"]
