"""tracefix: debugging-driven automated program repair toolchain."""

__version__ = "0.1.0"
