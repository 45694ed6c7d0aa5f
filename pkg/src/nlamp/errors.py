"""Exception taxonomy shared by all nlamp modules."""


class NlampError(Exception):
    """Base class for all nlamp errors."""


class UsageError(NlampError):
    """Bad user input (unknown names, malformed ranges)."""


class NumericalError(NlampError):
    """A computation could not be carried out at the requested accuracy."""


class CutoffTooSmall(NumericalError):
    """Fock truncation leaves non-negligible amplitude in the tail."""


class NotNormalized(NlampError):
    """Operation requires a unit-norm state vector."""


class ZeroNorm(NumericalError):
    """Operator sequence annihilated the state (e.g. subtraction on vacuum)."""


class OddScsAtZero(NlampError):
    """Odd cat state at alpha = 0 has no normalization."""


class NoClosedForm(NlampError):
    """No closed-form expression is tabulated for this operator sequence."""


class ParityMismatch(NlampError):
    """Input parity, sequence shift and target parity give identically zero fidelity."""


class SingularQuadrature(NumericalError):
    """Quadrature mean vanishes at this phase; gain ratio undefined."""


class ZeroFisher(NumericalError):
    """Fisher information is zero (number eigenstate); phase uncertainty diverges."""


class NoSignChange(NumericalError):
    """Curve difference does not change sign on the bracket."""


class NonFinite(NumericalError):
    """Objective returned a non-finite value."""


class UnknownSequence(UsageError):
    """Sequence name not in the catalog."""


class InvalidRange(UsageError):
    """Malformed lo:hi:step or grid specification."""
