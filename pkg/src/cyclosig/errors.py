class ClaimViolation(RuntimeError):
    """A proven statement about circular-unit signatures failed on computed data.

    Raised only when exact computation contradicts a theorem, so it signals
    either a bug upstream or a counterexample worth reporting.
    """
