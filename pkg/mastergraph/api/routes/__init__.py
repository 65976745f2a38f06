from mastergraph.api.routes.networks import router as networks_router

__all__ = ["networks_router"]
