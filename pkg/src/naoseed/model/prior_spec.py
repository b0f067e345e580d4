import math
from dataclasses import dataclass

from scipy.special import gammaln

from ..error.invalid_input_error import InvalidInputError


@dataclass(frozen=True)
class PriorSpec:
    """Constants of the chi distribution with d degrees of freedom"""
    d: int
    log_normalizer: float
    mode_radius: float

    @classmethod
    def for_dimension(cls, d: int) -> "PriorSpec":
        """
        Build the prior for seeds of dimension d.

        The normalizer log(2^(d/2 - 1) * Gamma(d/2)) is evaluated in log space through
        scipy's gammaln, so it stays finite for d far beyond the Gamma overflow point.

        Raises:
            InvalidInputError: If d < 2 (the chi_1 density peaks at the origin)
        """
        if isinstance(d, bool) or not isinstance(d, int) or d < 2:
            raise InvalidInputError(f"Seed dimension must be an integer >= 2, got {d!r}")

        log_normalizer = (d / 2.0 - 1.0) * math.log(2.0) + float(gammaln(d / 2.0))
        return cls(d=d, log_normalizer=log_normalizer, mode_radius=math.sqrt(d - 1.0))
