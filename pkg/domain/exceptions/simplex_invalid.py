class SimplexInvalid(ValueError):
    """
    Represents a probability vector that is negative or does not sum to one
    """
    pass
