"""Adversarial channels and adversarial network coding at desk scale."""

__version__ = "0.1.0"
