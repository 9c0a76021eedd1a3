class FormatInvalid(ValueError):
    """
    Represents a binary or JSON file that does not match its expected layout
    """

    def __init__(self, path, reason):
        self.path = path
        self.reason = reason
        super().__init__(f'{path} is not a valid file: {reason}')


class UnsupportedVersion(FormatInvalid):
    """
    Represents a file written with a format version this code can not read
    """

    def __init__(self, path, version, supported):
        self.version = version
        self.supported = supported
        super().__init__(path, f'format version {version} is not supported (expected {supported})')
