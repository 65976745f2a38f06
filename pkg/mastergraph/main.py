# mastergraph/main.py
from contextlib import asynccontextmanager

from fastapi import FastAPI

from mastergraph.api.routes import networks_router
from mastergraph.config import settings


@asynccontextmanager
async def lifespan(app: FastAPI):
    # Startup
    print(f"🚀 Starting {settings.PROJECT_NAME} API...")
    print(f"🧮 Internal threads: {settings.THREADS}, tree cap: {settings.TREE_CAP}")
    yield
    # Shutdown
    print("👋 Shutting down...")

app = FastAPI(
    title=f"{settings.PROJECT_NAME} API",
    description="Stationary states, limit distributions and time evolution of Master equations",
    version=settings.VERSION,
    lifespan=lifespan
)

app.include_router(
    networks_router,
    prefix=f"{settings.API_V1_STR}/networks",
    tags=["networks"]
)


@app.get("/")
async def root():
    return {
        "message": f"{settings.PROJECT_NAME} API",
        "status": "running",
        "commands": ["analyze", "steady", "trees", "evolve", "simulate"],
    }


@app.get("/health")
async def health_check():
    return {"status": "healthy"}
