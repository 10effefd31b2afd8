class InputError(ValueError):
    """Raised for malformed user input (bad generators, degrees, ranges)."""
