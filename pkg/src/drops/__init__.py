"""Tensor-operator bases and droplet visualizations for coupled spins 1/2."""

from . import cartesian, dropsmap, dynamics, expr, multipole, opalg, scene, symgroup, tensorbasis
from .dropsmap import DropletSpectrum, decompose, reconstruct
from .tensorbasis import DropLabel, LisaBasis, build_lisa_basis

__all__ = [
    "cartesian",
    "dropsmap",
    "dynamics",
    "expr",
    "multipole",
    "opalg",
    "scene",
    "symgroup",
    "tensorbasis",
    "DropletSpectrum",
    "decompose",
    "reconstruct",
    "DropLabel",
    "LisaBasis",
    "build_lisa_basis",
]

__version__ = "0.1.0"
