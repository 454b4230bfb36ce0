# Pseudograph - explicit pseudo-random graphs and their spectral audits
__version__ = "0.1.0"
__author__ = "Pseudograph Team"
__description__ = "Build, measure and audit (n, d, lambda)-graphs"
