"""vbgc: batch verification engine for groupoid cohomology with 2-term
coefficients (finite, exact-rational backend) and the matching smooth
infinitesimal identities (forward-mode differentiation backend)."""

__version__ = "0.1.0"
