"""Input checks shared by the estimator, the survey runner and the CLI."""

from __future__ import annotations

import numpy as np

from .residues import Conductor, make_conductor


def check_conductors(X) -> np.ndarray:
    """Coerce ``X`` to a 1-d ``int64`` array of valid conductors.

    Accepts a scalar, a sequence, or an array of shape ``(n,)`` or ``(n, 1)``.
    Raises ``ValueError`` on non-integral entries or invalid conductors.
    """
    arr = np.asarray(X)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim == 2:
        if arr.shape[1] != 1:
            raise ValueError(f"expected a single column of conductors, got shape {arr.shape}")
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise ValueError(f"expected 1-d conductors, got {arr.ndim}-d input")
    if arr.size == 0:
        raise ValueError("no conductors given")
    if arr.dtype.kind == "f":
        if not np.all(np.isfinite(arr)) or np.any(arr != np.round(arr)):
            raise ValueError("conductors must be integers")
    elif arr.dtype.kind not in "iu":
        raise ValueError(f"conductors must be integers, got dtype {arr.dtype}")
    out = arr.astype(np.int64)
    for m in out:
        make_conductor(int(m))
    return out


def check_prime_power(m: int | Conductor) -> Conductor:
    c = m if isinstance(m, Conductor) else make_conductor(m)
    if not c.is_prime_power:
        raise ValueError(
            f"composite m={c.m}: matrix construction out of scope; use `bound`"
        )
    return c


def check_dimension(c: Conductor, max_phi_half: int, allow_large: bool = False) -> None:
    if not allow_large and c.phi_half > max_phi_half:
        raise ValueError(
            f"m={c.m}: phi(m)/2={c.phi_half} exceeds the cap {max_phi_half}; "
            "pass allow_large to override"
        )
