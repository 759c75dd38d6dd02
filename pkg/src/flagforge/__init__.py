"""flagforge — Exact flag-algebra certificates for clique density in graphs with
bounded independence number."""

from flagforge.models.certificate import CONVENTION

__version__ = "0.1.0"

__all__ = ["CONVENTION", "__version__"]
