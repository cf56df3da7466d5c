class DomainError(ValueError):
    """A mathematical precondition is violated.

    ``precondition`` states what failed; ``theorem`` names the result whose
    hypothesis it is.
    """

    def __init__(self, precondition, theorem=None):
        msg = precondition if theorem is None else f"{precondition} (required by {theorem})"
        super().__init__(msg)
        self.precondition = precondition
        self.theorem = theorem
