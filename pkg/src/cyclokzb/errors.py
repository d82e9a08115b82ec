"""Error types shared across the package."""


class ContractViolation(Exception):
    """An internal consistency check failed.

    Raised when a computation finishes but violates one of its promised
    invariants (e.g. a linear solve that should land in a known basis does
    not, or a closed-form cross-check disagrees with the assembled value).
    The CLI maps this to exit status 1 with the violated invariant named.
    """

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        self.detail = detail
        msg = invariant if not detail else f"{invariant}: {detail}"
        super().__init__(msg)
