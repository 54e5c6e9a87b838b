"""Exception hierarchy shared by every module."""


class TorricelliError(Exception):
    """Base class for computation errors (CLI exit code 1)."""


class MeshError(TorricelliError, ValueError):
    pass


class NonConvex(MeshError):
    pass


class NonPlanarFace(MeshError):
    pass


class OpenSurface(MeshError):
    pass


class OutOfRange(TorricelliError, ValueError):
    pass


class QuadratureFailure(TorricelliError, ArithmeticError):
    pass


class DegenerateProfile(TorricelliError, ValueError):
    pass


class UnknownProfile(TorricelliError, KeyError):
    pass


class UnknownSolid(TorricelliError, KeyError):
    pass


class NegativeProfile(TorricelliError, ValueError):
    pass


class ZeroVolume(TorricelliError, ZeroDivisionError):
    pass


class NotCentrallySymmetric(TorricelliError, ValueError):
    pass


class CoincidentPoints(TorricelliError, ValueError):
    pass


class EmptyDomain(TorricelliError, ValueError):
    pass


class UnbalancedPerturbation(TorricelliError, ValueError):
    pass


class NonPositiveResult(TorricelliError, ValueError):
    pass


class DiscontinuousJoin(TorricelliError, ValueError):
    pass


class ProfileSyntaxError(TorricelliError, ValueError):
    pass
