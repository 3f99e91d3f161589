"""Polynomial identities of dialgebras and trilinear operations by exact linear algebra."""

__version__ = "0.1.0"
