class ContractViolation(Exception):
    """
    Represents a call that breaks the documented preconditions of an operation
    """
    pass
