# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

"""
Exception classes raised by chevwidth operations.

Every error derives from :class:`ChevwidthError`, which is a
:class:`ValueError`, so callers that only care about bad input can
catch ``ValueError``.
"""


class ChevwidthError(ValueError):
    """Base class for all chevwidth errors."""


class ParseError(ChevwidthError):
    """Ring descriptor or element text could not be parsed."""


class DescriptorMismatch(ChevwidthError):
    """Operands belong to different rings."""


class NotAUnit(ChevwidthError):
    """Inverse requested for a non-unit."""


class ZeroElement(ChevwidthError):
    """A nonzero element was required."""


class DivisionByZero(ChevwidthError, ZeroDivisionError):
    """Euclidean division by zero."""


class NotEuclidean(ChevwidthError):
    """Euclidean division requested in a ring without one."""


class NonzeroValuation(ChevwidthError):
    """Residue requested for an element that is not a unit at the place."""


class UnsupportedRing(ChevwidthError):
    """Operation is not available for this kind of ring."""


class InvalidType(ChevwidthError):
    """No reduced irreducible root system with this label and rank."""


class OppositeRoots(ChevwidthError):
    """Operation is undefined for a pair of opposite roots."""


class NoSuchEmbedding(ChevwidthError):
    """Target root system does not admit the requested embedding."""


class UnsupportedRepForType(ChevwidthError):
    """Representation kind is not available for this root system."""


class RepMismatch(ChevwidthError):
    """Word and representation disagree on system or ring."""


class MixedSigns(ChevwidthError):
    """Collection requested for a word with positive and negative roots."""


class BudgetExceeded(ChevwidthError):
    """A bounded search ran out of budget."""


class TooLargeForExhaustive(ChevwidthError):
    """Exhaustive enumeration would be too large."""


class CoverageGap(ChevwidthError):
    """Subsystems do not cover every fundamental root."""


class NotUnimodular(ChevwidthError):
    """Matrix does not have determinant 1."""


class VerificationFailure(ChevwidthError):
    """A computed factorization did not evaluate back to its target."""
