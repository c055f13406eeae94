"""
Necklace Centres - Theoretical Bounds
Closed-form distance bounds and approximation ratios for both samplers.
"""

import logging
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

from core.errors import InvalidInputError
from core.models import ParikhVector

from .debruijn import choose_lambda

logger = logging.getLogger(__name__)

DEBRUIJN_FACTOR = 8


def _log(x: float, base: int) -> Optional[float]:
    """log_base(x), or None when the bound it feeds is not applicable (x <= 1)."""
    if x <= 1:
        return None
    return math.log(x) / math.log(base)


def coverage_bounds(length: int, lam: int) -> Tuple[Optional[Fraction], Optional[Fraction]]:
    """
    Distance bounds for words of length ``length`` sharing a subword of length lam.

    Returns:
        (2 * length^2 / (lam (lam + 1)), length^2 / (lam (lam + 1))), or (None, None) for lam < 1.
    """
    if lam < 1:
        return None, None
    base = Fraction(length * length, lam * (lam + 1))
    return 2 * base, base


def max_length_bound(length: int, lam: int) -> Optional[Fraction]:
    """
    Distance bound over all lengths up to ``length`` for centres of the top length:
    the loose single-length bound inflated by length - 1.
    """
    loose, _ = coverage_bounds(length, lam)
    if loose is None:
        return None
    return max(length - 1, 1) * loose


@dataclass(frozen=True)
class BoundsReport:
    """Bound values; None marks a bound whose logarithm argument is <= 1."""
    q: int
    length: int
    k: int
    lower: Optional[float]
    lower_squared: Optional[float]
    upper_prefix: Optional[float]
    upper_debruijn: Optional[float]
    ratio_prefix: Optional[float]
    ratio_debruijn: Optional[float]
    debruijn_factor: int
    debruijn_lambda: int
    coverage_debruijn: Optional[float]
    coverage_debruijn_tight: Optional[float]
    fixed_content_lambda: Optional[float] = None
    upper_fixed_content: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def theoretical_bounds(q: int, length: int, k: int,
                       content: Optional[ParikhVector] = None) -> BoundsReport:
    """
    Evaluate the closed-form bounds for (q, length, k).

    - lower: length^2 / (L (L + 1)) with L = log_q(length^2 k)
    - lower_squared: length^2 / log_q^2(k length^2), the denominator of both ratios
    - upper_prefix: 2 length^2 / log_q^2(k)
    - upper_debruijn: 2 length^2 / log_q^2(k length)

    With ``content``, also the fixed-content coverage length log_q(k (q - 1)) - 1
    and its distance bound 2 length^2 / log_q^2(k (q - 1)).
    """
    if q < 2 or length < 1 or k < 1:
        raise InvalidInputError(f"bounds need q >= 2, length >= 1, k >= 1; got q={q}, length={length}, k={k}")
    square = length * length

    big = _log(square * k, q)
    lower = square / (big * (big + 1)) if big else None
    lower_squared = square / big ** 2 if big else None

    log_k = _log(k, q)
    upper_prefix = 2 * square / log_k ** 2 if log_k else None
    log_kl = _log(k * length, q)
    upper_debruijn = 2 * square / log_kl ** 2 if log_kl else None

    ratio_prefix = upper_prefix / lower_squared if upper_prefix and lower_squared else None
    ratio_debruijn = upper_debruijn / lower_squared if upper_debruijn and lower_squared else None

    lam = choose_lambda(q, length, k)
    loose, tight = coverage_bounds(length, lam)

    fixed_lambda = upper_fixed = None
    if content is not None:
        log_fc = _log(k * (q - 1), q)
        if log_fc:
            fixed_lambda = log_fc - 1
            upper_fixed = 2 * square / log_fc ** 2

    report = BoundsReport(
        q=q, length=length, k=k,
        lower=lower,
        lower_squared=lower_squared,
        upper_prefix=upper_prefix,
        upper_debruijn=upper_debruijn,
        ratio_prefix=ratio_prefix,
        ratio_debruijn=ratio_debruijn,
        debruijn_factor=DEBRUIJN_FACTOR,
        debruijn_lambda=lam,
        coverage_debruijn=float(loose) if loose is not None else None,
        coverage_debruijn_tight=float(tight) if tight is not None else None,
        fixed_content_lambda=fixed_lambda,
        upper_fixed_content=upper_fixed,
    )
    logger.debug(f"Bounds for q={q} length={length} k={k}: {report}")
    return report
