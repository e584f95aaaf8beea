# fairconf/exceptions/instance_exceptions.py
class InstanceException(Exception):
    """Base exception for instance and schedule validation errors."""

    code = "InstanceError"


class DimensionMismatchError(InstanceException):
    """Raised when a matrix shape does not match the declared entities."""

    code = "DimensionMismatch"

    def __init__(self, message: str = "Matrix dimensions do not match the instance"):
        super().__init__(message)


class RangeViolationError(InstanceException):
    """Raised when a probability or weight is outside its allowed range."""

    code = "RangeViolation"

    def __init__(self, message: str = "Value outside [0, 1]"):
        super().__init__(message)


class SlotOverlapError(InstanceException):
    """Raised when slots are unordered or overlap in time."""

    code = "SlotOverlap"

    def __init__(self, message: str = "Slots overlap or are not chronologically ordered"):
        super().__init__(message)


class TooManyTalksError(InstanceException):
    """Raised when there are more talks than slots."""

    code = "TooManyTalks"

    def __init__(self, n_talks: int, n_slots: int):
        self.n_talks = n_talks
        self.n_slots = n_slots
        super().__init__(f"{n_talks} talks cannot fit into {n_slots} slots")


class DuplicateIdError(InstanceException):
    """Raised when participant, talk or slot ids repeat."""

    code = "DuplicateId"

    def __init__(self, kind: str, entity_id: str):
        self.kind = kind
        self.entity_id = entity_id
        super().__init__(f"Duplicate {kind} id {entity_id!r}")


class ParseError(InstanceException):
    """Raised when an input file cannot be parsed."""

    code = "ParseError"

    def __init__(self, message: str = "Failed to parse input file"):
        super().__init__(message)


class UnknownTalkIdError(InstanceException):
    """Raised when a schedule references a talk the instance does not have."""

    code = "UnknownTalkId"

    def __init__(self, talk_id: str):
        self.talk_id = talk_id
        super().__init__(f"Talk with id {talk_id!r} not found in instance")


class UnknownSlotIdError(InstanceException):
    """Raised when a schedule references a slot the instance does not have."""

    code = "UnknownSlotId"

    def __init__(self, slot_id: str):
        self.slot_id = slot_id
        super().__init__(f"Slot with id {slot_id!r} not found in instance")


class InvalidScheduleError(InstanceException):
    """Raised when a schedule is not total or not injective."""

    code = "InvalidSchedule"

    def __init__(self, message: str = "Schedule is not a valid talk-to-slot assignment"):
        super().__init__(message)


class ScheduleIoError(InstanceException):
    """Raised when a schedule file cannot be read or written."""

    code = "IoError"

    def __init__(self, message: str = "Schedule file could not be accessed"):
        super().__init__(message)
