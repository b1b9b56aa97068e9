"""HTTP service layer: pydantic schemas, handlers, FastAPI app."""

from . import handlers, schemas

__all__ = ["handlers", "schemas"]
