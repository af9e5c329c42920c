"""Exception hierarchy shared by every module of the package."""


class KGraphError(ValueError):
    """Base class for all errors raised by :mod:`kgraph`."""


class BadEdgeEndpoints(KGraphError):
    pass


class MissingSquare(KGraphError):
    def __init__(self, e, f):
        super().__init__(f"no square covers the composable pair ({e}, {f})")
        self.pair = (e, f)


class DuplicateSquare(KGraphError):
    def __init__(self, e, f):
        super().__init__(f"more than one square starts with the pair ({e}, {f})")
        self.pair = (e, f)


class NotBijective(KGraphError):
    def __init__(self, colors, detail=""):
        i, j = colors
        msg = f"squares for colours ({i}, {j}) are not a bijection"
        super().__init__(f"{msg}: {detail}" if detail else msg)
        self.colors = colors


class CubeInconsistent(KGraphError):
    def __init__(self, triple):
        super().__init__(f"the two rewriting routes disagree on edge triple {triple}")
        self.triple = triple


class NotComposable(KGraphError):
    def __init__(self, position):
        super().__init__(f"edge word is not composable at position {position}")
        self.position = position


class SourceRangeMismatch(KGraphError):
    pass


class DegreeOutOfRange(KGraphError):
    pass


class EdgeNotAtVertex(KGraphError):
    pass


class PreconditionViolated(KGraphError):
    pass


class InvalidTag(KGraphError):
    pass


class CyclicGraph(KGraphError):
    def __init__(self, cycle):
        super().__init__("graph has a cycle through " + " -> ".join(cycle))
        self.cycle = list(cycle)


class MissingGenerator(KGraphError):
    pass
