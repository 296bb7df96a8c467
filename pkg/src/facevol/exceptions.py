class IntegrityError(RuntimeError):
    """An exact certification check failed: a computed quantity violates an
    identity the certificate depends on. Never raised for disagreements with
    claimed reference values (those are recorded, not fatal)."""
