class TrafficSimError(ValueError):
    """Base class for every error raised by the simulation toolkit."""


class RoadError(TrafficSimError):
    pass


class WindowError(TrafficSimError):
    pass


class InsufficientJamSignal(TrafficSimError):
    def __init__(self, points: int, required: int):
        super().__init__(f"insufficient jam signal: {points} front points, need at least {required}")
        self.points = points
        self.required = required


class ConfigError(TrafficSimError):
    pass
