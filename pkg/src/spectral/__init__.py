# Spectral: eigensolvers, strongly regular spectra, walk counts and property scores
from .spectrum import (
    Extremal,
    Spectrum,
    SpectralSummary,
    extremal_lambda,
    full_spectrum,
    smallest_eigenvalue,
    spectral_summary,
)
from .srg import SrgSpectrum, srg_detect, srg_spectrum
from .walks import PropertyScores, circuit_count, property_scores, walk_matrix

__all__ = [
    "Extremal",
    "PropertyScores",
    "SpectralSummary",
    "Spectrum",
    "SrgSpectrum",
    "circuit_count",
    "extremal_lambda",
    "full_spectrum",
    "property_scores",
    "smallest_eigenvalue",
    "spectral_summary",
    "srg_detect",
    "srg_spectrum",
    "walk_matrix",
]
