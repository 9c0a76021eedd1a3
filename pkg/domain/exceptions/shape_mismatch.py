class ShapeMismatch(ValueError):
    """
    Represents matrices or images whose dimensions do not line up
    """
    pass
