class DatasetIOError(Exception):
    """
    Represents a failure to read or write a dataset, checkpoint, or report file
    """

    def __init__(self, path, original_exception):
        self.path = path
        self.original_exception = original_exception
        super().__init__(f'Failed to access {path}: {original_exception}')
