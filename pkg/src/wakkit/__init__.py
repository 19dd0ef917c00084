"""Wakamatsu's functor between stable categories of trivial extension algebras,
computed over small prime fields."""

__version__ = "0.1.0"
