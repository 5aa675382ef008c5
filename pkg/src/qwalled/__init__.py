"""Exact computation in the two-parameter quantized walled Brauer algebra."""

__version__ = "0.1.0"
