"""Green's cells, projective-bimodule 2-categories and graded E/F word rewriting."""

__version__ = "0.1.0"
