"""Symbolic dynamics toolkit: subshifts, follower sets, spectra and criteria."""

__version__ = "0.1.0"
