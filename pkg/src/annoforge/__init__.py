"""annoforge: interactive clustering and tree annotation for crowd workers."""

__version__ = "0.1.0"
