"""Exception hierarchy shared by all symdg modules."""


class SymdgError(Exception):
    """Base class for every error raised by this package."""


class InvalidCyclesError(SymdgError, ValueError):
    pass


class DegreeMismatchError(SymdgError, ValueError):
    pass


class NotInGroupError(SymdgError, ValueError):
    pass


class NotTransitiveError(SymdgError, ValueError):
    pass


class EnumerationBoundError(SymdgError, RuntimeError):
    """An operation would enumerate more group elements than allowed."""


class ResourceBoundError(SymdgError, RuntimeError):
    """A search would exceed a configured size limit (e.g. number of s-arcs)."""


class InvalidConnectionSetError(SymdgError, ValueError):
    pass


class NotAnAutomorphismError(SymdgError, ValueError):
    def __init__(self, generator_index, arc, image):
        self.generator_index = generator_index
        self.arc = arc
        self.image = image
        super().__init__(
            f"witness generator {generator_index} maps arc {arc[0]}->{arc[1]} "
            f"to non-arc {image[0]}->{image[1]}"
        )


class TransversalError(SymdgError, ValueError):
    def __init__(self, first, second, label):
        self.pair = (first, second)
        super().__init__(
            f"vertices {first} and {second} lie in the same coset (label {label})"
        )


class ConstructionError(SymdgError, RuntimeError):
    pass


class FixtureMismatchError(SymdgError, AssertionError):
    """A transcribed identity failed; carries a located diff."""

    def __init__(self, message, mismatches=()):
        self.mismatches = list(mismatches)
        super().__init__(message)


class ParseError(SymdgError, ValueError):
    pass
