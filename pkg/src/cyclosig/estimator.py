"""scikit-learn style transformer over conductors."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .composite import theorem_bound
from .residues import make_conductor
from .signature import RankReport, verify_lower_bound
from .validation import check_conductors, check_dimension, check_prime_power

FEATURES = ("phi_half", "rank", "deficiency", "log_bound", "theorem_bound")


class CircularSignatureRank(TransformerMixin, BaseEstimator):
    """Map prime-power conductors to circular-unit signature statistics.

    ``transform`` returns one row per conductor with columns ``FEATURES``.
    Reports computed during ``fit`` are kept in ``reports_`` and reused.

    Parameters
    ----------
    max_phi_half : int
        Largest matrix dimension ``phi(m)/2`` accepted.
    allow_large : bool
        Lift the ``max_phi_half`` cap.
    """

    def __init__(self, max_phi_half: int = 16384, allow_large: bool = False):
        self.max_phi_half = max_phi_half
        self.allow_large = allow_large

    def _report(self, m: int) -> RankReport:
        c = check_prime_power(make_conductor(m))
        check_dimension(c, self.max_phi_half, self.allow_large)
        return verify_lower_bound(c)

    def fit(self, X, y=None):
        ms = check_conductors(X)
        self.reports_ = {int(m): self._report(int(m)) for m in np.unique(ms)}
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "reports_")
        ms = check_conductors(X)
        out = np.empty((len(ms), len(FEATURES)), dtype=np.int64)
        for i, m in enumerate(ms):
            m = int(m)
            rep = self.reports_.get(m) or self._report(m)
            out[i] = (
                rep.phi_half,
                rep.rank,
                rep.circular_deficiency,
                rep.log_bound,
                theorem_bound(make_conductor(m)).theorem_bound,
            )
        return out

    def get_feature_names_out(self, input_features=None):
        return np.asarray(FEATURES, dtype=object)

    @property
    def ranks_(self) -> dict[int, int]:
        check_is_fitted(self, "reports_")
        return {m: r.rank for m, r in self.reports_.items()}
