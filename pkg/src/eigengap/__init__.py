"""Explicit Laplace spectra of model domains and checks of eigenvalue-gap inequalities."""
from __future__ import annotations

from .errors import BudgetError, EigengapError, InsufficientEigenvalues, NumericError, ParameterError
from .exact import PiRational
from .spectra import DomainSpec, EnumerationBudget, Kind, Problem, Spectrum, spectrum_for, weyl_prediction

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "DomainSpec",
    "EigengapError",
    "EnumerationBudget",
    "InsufficientEigenvalues",
    "Kind",
    "NumericError",
    "ParameterError",
    "PiRational",
    "Problem",
    "Spectrum",
    "spectrum_for",
    "weyl_prediction",
]
