"""HTTP service layer: pydantic wire models, handlers, FastAPI app."""

from .app import app, create_app

__all__ = ["app", "create_app"]
