"""Exception hierarchy shared by every module in the package."""


class LectureHallError(ValueError):
    """Base class for all errors raised by this package."""


class NotSymmetric(LectureHallError):
    pass


class DegreeTooHigh(LectureHallError):
    pass


class NotRealRooted(LectureHallError):
    pass


class VolumeTooLarge(LectureHallError):
    """Raised when a parallelepiped would contain more points than the cap."""


class TooLarge(LectureHallError):
    """Raised when a brute-force enumeration exceeds its cap."""


class NotRestricted(LectureHallError):
    pass


class HasFixedPoint(LectureHallError):
    pass


class SingleVertex(LectureHallError):
    pass


class NotPure(LectureHallError):
    pass


class FaceNotInComplex(LectureHallError):
    pass


class NotRanked(LectureHallError):
    pass
