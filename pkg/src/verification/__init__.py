"""Verification module initialization."""

from .identity_validator import IdentityValidator, sample_phase, sample_polynomial

__all__ = ['IdentityValidator', 'sample_phase', 'sample_polynomial']
