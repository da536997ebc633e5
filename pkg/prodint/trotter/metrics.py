import numpy as np
import pandas as pd

__all__ = ["ConvergenceMetrics"]


class ConvergenceMetrics:
    """
    Decay statistics of an error column against a resolution column.

    Parameters
    ----------
    table : pandas.DataFrame or ConvergenceTable
        Rows ordered by the resolution column.
    x : str, optional
        Resolution column (``n`` for Trotter sweeps, ``steps`` for identity
        suites), by default "n".
    y : str, optional
        Error column, by default "sup_error".
    """

    def __init__(self, table, x="n", y="sup_error"):
        frame = getattr(table, "frame", table)
        if not isinstance(frame, pd.DataFrame):
            frame = pd.DataFrame(frame)
        self.frame = frame.sort_values(x).reset_index(drop=True)
        self.x = x
        self.y = y

    def _fit_data(self, top_decade=False):
        data = self.frame[[self.x, self.y]].astype(float)
        data = data[np.isfinite(data[self.y]) & (data[self.y] > 0)]
        if top_decade and len(data):
            data = data[data[self.x] >= data[self.x].max() / 10.0]
        return data

    def slope(self, top_decade=False):
        """
        Least-squares slope of log(error) against log(resolution).

        Infinite and zero errors are left out of the fit.

        Parameters
        ----------
        top_decade : bool, optional
            Fit only the rows within a factor 10 of the finest resolution.

        Returns
        -------
        float
            The slope, NaN with fewer than two usable rows.
        """
        data = self._fit_data(top_decade)
        if len(data) < 2:
            return np.nan
        return float(np.polyfit(np.log(data[self.x]), np.log(data[self.y]), 1)[0])

    def order(self, top_decade=False):
        """
        Observed order of convergence, the negated slope.

        Returns
        -------
        float
            Order.
        """
        return -self.slope(top_decade)

    def is_monotone(self, slack=0.1, atol=1e-15):
        """
        Check that errors do not increase by more than ``slack`` between rows.

        Returns
        -------
        bool
            True if every error is at most (1 + slack) times its predecessor plus ``atol``.
        """
        values = self.frame[self.y].astype(float).to_numpy()
        return bool(np.all(values[1:] <= (1.0 + slack) * values[:-1] + atol))

    def n_eps(self, eps):
        """
        Smallest resolution reaching each threshold.

        Returns
        -------
        dict
            ε ↦ smallest resolution with error ≤ ε, None if never reached.
        """
        out = {}
        for e in eps:
            passing = self.frame.loc[self.frame[self.y] <= e, self.x]
            out[float(e)] = passing.iloc[0].item() if len(passing) else None
        return out

    def left_right_consistent(self, right="right_sup", left="left_sup", right_tol=1e-3, left_tol=1e-2):
        """
        Check that a small right-translated sup never comes with a large left-translated one.

        Returns
        -------
        bool
            False iff some row has ``right <= right_tol`` and ``left > left_tol``.
        """
        bad = (self.frame[right] <= right_tol) & (self.frame[left] > left_tol)
        return not bool(bad.any())

    def summary(self):
        """
        Collect the statistics in one dict.

        Returns
        -------
        dict
            Slopes, monotonicity and the finest error.
        """
        finest = self.frame[self.y].iloc[-1] if len(self.frame) else np.nan
        return {
            "slope": self.slope(),
            "slope_top_decade": self.slope(top_decade=True),
            "monotone": self.is_monotone(),
            "finest_error": float(finest),
        }
