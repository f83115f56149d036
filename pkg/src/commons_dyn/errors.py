"""Exception hierarchy shared across the package."""


class CommonsDynError(Exception):
    """Base class for all errors raised by commons_dyn."""


class DimensionMismatch(CommonsDynError):
    """Inputs whose shapes must agree do not."""


# -- network construction ---------------------------------------------------

class NonSquareWeights(CommonsDynError):
    """Weight matrix is not square."""


class NegativeWeight(CommonsDynError):
    """Influence weights must be nonnegative."""


class NonzeroDiagonal(CommonsDynError):
    """Self-influence entries must be zero."""


class ZeroOutDegreeRow(CommonsDynError):
    """An agent with no neighbors cannot carry a row-stochastic weight row."""


class RowSumMismatch(CommonsDynError):
    """A weight row does not sum to one and normalization was not requested."""


# -- dynamics ---------------------------------------------------------------

class NonPositiveResource(CommonsDynError):
    """Resource stock must stay positive for the log transform."""


class InfeasibleEquilibrium(CommonsDynError):
    """The equilibrium system is singular or yields total harvest >= 1."""


# -- stability --------------------------------------------------------------

class NonSymmetric(CommonsDynError):
    """A symmetric matrix was required."""


# -- sustainability ---------------------------------------------------------

class InvalidBox(CommonsDynError):
    """A sustainability box violates its ordering/sign constraints."""


class InitialStateOutsideBox(CommonsDynError):
    """The initial log-resource deviation must lie strictly inside the box."""


class WindowInfeasible(CommonsDynError):
    """The minimal-window fixed point has no positive solution."""


class HorizonNotCovered(CommonsDynError):
    """Trajectory ends before the certification horizon."""


# -- scenario generation ----------------------------------------------------

class NonPositiveTheta(CommonsDynError):
    """Sociability entries must be positive."""


class NonPositiveDelta(CommonsDynError):
    """The sociability scaling factor must be positive."""


class TooFewEdges(CommonsDynError):
    """Fewer edges than nodes cannot give a strongly connected digraph."""


class TooManyEdges(CommonsDynError):
    """More edges than ordered node pairs were requested."""


class ConnectivityResampleExhausted(CommonsDynError):
    """No strongly connected draw found within the attempt cap."""


class AssumptionThreeViolated(CommonsDynError):
    """Sociability vector fails the social-dominance condition on the network."""
