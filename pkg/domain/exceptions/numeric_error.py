class NumericError(ArithmeticError):
    """
    Represents a NaN or infinite value escaping a numeric operation
    """

    def __init__(self, op_name, detail=None):
        self.op_name = op_name
        self.detail = detail
        message = f'Non-finite value produced by {op_name}'
        super().__init__(message + (f': {detail}' if detail else ''))
