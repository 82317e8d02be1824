"""Exact Bargmann and Barut-Girardello models of the Racah algebra."""

__version__ = "0.1.0"
