class TrackingError(Exception):
    """Base error; carries a user-facing detail and the CLI exit code"""

    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InvalidNumberError(TrackingError):
    pass


class DegenerateMapError(TrackingError):
    pass


class UnboundedSetError(TrackingError):
    pass


class EmptyIntervalError(TrackingError):
    pass


class InvalidInstanceError(TrackingError):
    pass


class InconsistentObservationError(TrackingError):
    pass


class SensorCapabilityError(TrackingError):
    pass


class StrategyFormatError(TrackingError):
    pass


class NotBoundaryError(TrackingError):
    pass


class InfeasibleStartError(TrackingError):
    exit_code = 2


class NoStrategyError(TrackingError):
    exit_code = 2


class UndeterminedError(TrackingError):
    exit_code = 3
