"""Exception classes. Each class carries the process exit code used by the CLI."""


class ArtifactError(Exception):
    exit_code = 1


class ParseError(ArtifactError):
    exit_code = 2


class DimensionMismatch(ArtifactError):
    exit_code = 3


class SingularMatrix(ArtifactError):
    exit_code = 4


class ZeroVector(ArtifactError):
    exit_code = 5

    def __init__(self, index):
        super().__init__(f"phi_{index} is the zero vector")
        self.index = index


class NotSpanning(ArtifactError):
    exit_code = 6


class NotSalient(ArtifactError):
    exit_code = 7


class NotRegular(ArtifactError):
    exit_code = 8


class NotAdjacent(ArtifactError):
    exit_code = 9


class Unreachable(ArtifactError):
    exit_code = 10


class InvalidPath(ArtifactError):
    exit_code = 11


class NonIntegral(ArtifactError):
    exit_code = 12


class IrregularXi(ArtifactError):
    exit_code = 13


class InterpolationMismatch(ArtifactError):
    exit_code = 14


class NotGenerating(ArtifactError):
    exit_code = 15


class PointOffSlice(ArtifactError):
    exit_code = 16


class NonSimpleFace(ArtifactError):
    exit_code = 17


class WrongCodimension(ArtifactError):
    exit_code = 18


class TooManyVectors(ArtifactError):
    exit_code = 19
