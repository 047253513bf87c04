"""SO(3) quantum representation rigidity toolkit."""

__version__ = "0.1.0"
