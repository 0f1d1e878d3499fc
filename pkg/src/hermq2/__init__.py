"""Exact Fourier expansions of degree-2 Hermitian modular forms over Q(i)
and Q(sqrt-3), their Siegel restrictions, and mod-p congruence checks."""
from importlib.resources import files

__version__ = "0.1.0"


def example_path(name: str) -> str:
    """Path of a shipped example table, e.g. ``example_path("gauss_CHI8.jsonl")``."""
    return str(files(__package__) / "data" / name)
