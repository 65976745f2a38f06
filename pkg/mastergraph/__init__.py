from mastergraph.config import settings

__version__ = settings.VERSION
