"""Exception types shared across the workbench."""


class WorkbenchError(Exception):
    """Base class for all workbench errors."""


class DivisionByZeroExpr(WorkbenchError):
    """A rational expression acquired an identically-zero denominator."""


class PoleAtPoint(WorkbenchError):
    """A birational map is not regular at the requested torus point."""


class NonMonomialConstant(WorkbenchError):
    """The dual mutation base 1 + z^{e_k,-} degenerated to a constant."""


class LoopAtVertex(WorkbenchError):
    """Quiver mutation requested at a vertex carrying self-loops."""


class NotSimple(WorkbenchError):
    """Curve mutation requested at a self-intersecting curve."""


class NotRegular(WorkbenchError):
    """Local-system mutation blocked: Id minus the holonomy is singular."""


class ZeroMonodromy(WorkbenchError):
    """A local-system object was requested with vanishing monodromy."""


class NotSemisimple(WorkbenchError):
    """The representation contains a non-split extension."""


class NotSplitOverBase(WorkbenchError):
    """A monodromy eigenvalue does not lie in the base field."""


class NonPrimitiveClass(WorkbenchError):
    """A curve class is not a primitive lattice vector."""


class BudgetExceeded(WorkbenchError):
    """Exploration hit a vertex or expression-size cap.

    Carries the partial result in ``partial`` when one is available.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
