"""Unoriented Schur and Bogomolov multipliers of finite groups over Z/2."""

__version__ = "0.1.0"
