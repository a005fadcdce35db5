"""Degree growth, minimization and singularity confinement for plane birational maps."""

__version__ = "0.1.0"
