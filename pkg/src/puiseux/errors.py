"""Exceptions shared across the package."""


class UnsupportedFamilyError(ValueError):
    """An operation was asked of a descriptor whose family lacks the
    structure the operation needs (e.g. a closed-form decomposition on a
    family without pairwise coprime denominators)."""


class NotInMonoidError(ValueError):
    """An element that was required to lie in the monoid does not."""
