"""Game-theoretic cell selection in a two-tier macro/femtocell network."""

__version__ = "0.1.0"
