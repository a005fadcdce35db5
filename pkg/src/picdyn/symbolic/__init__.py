"""Exact symbolic iteration: rational maps, degree oracles, singularity confinement."""
