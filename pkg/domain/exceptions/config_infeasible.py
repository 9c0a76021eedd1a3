class ConfigInfeasible(ValueError):
    """
    Represents a configuration whose constraints can not all be satisfied
    """
    pass
