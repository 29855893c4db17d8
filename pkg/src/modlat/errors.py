class UnsupportedCase(Exception):
    """No closed form is known for this input."""


class SizeBoundExceeded(ValueError):
    """Input is beyond the exact solvers' desk-scale caps."""
