class ForgeError(Exception):
    """Base class for all toolkit errors."""


class WorkloadError(ForgeError, ValueError):
    pass


class TrafficError(ForgeError, ValueError):
    pass


class TimelineParseError(TrafficError):
    def __init__(self, message: str, row: int | None = None):
        self.row = row
        super().__init__(message if row is None else f"{message} at row {row}")


class ScalingError(ForgeError, ValueError):
    pass


class TopologyError(ForgeError, ValueError):
    pass


class ConfigError(ForgeError, ValueError):
    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")
