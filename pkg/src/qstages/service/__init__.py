"""HTTP service wrapping the simulator core."""
from .app import app

__all__ = ["app"]
