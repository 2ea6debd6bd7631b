"""Fermionic Fock-space toolkit for entanglement produced by accelerated measurements on the Dirac vacuum."""

__version__ = "0.1.0"
