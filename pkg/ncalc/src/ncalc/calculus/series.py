"""The exponent as a truncated power series, the commutation test for exp(a + b), and shuffle words."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ncalc.algebra.structure import Algebra, AlgebraElement, commutator, mul, norm
from ncalc.config.series import SeriesConfig
from ncalc.errors import InsufficientTruncation
from ncalc.ncpoly.expression import Const, NcExpression, Prod, X
from ncalc.ncpoly.forms import DirectionSlot, MultilinearForm, Word, eval_form
from ncalc.ncpoly.taylor import TruncatedSeries
from ncalc.utils.rationals import format_scalar

logger = logging.getLogger(__name__)


def remainder_bound(x: AlgebraElement, order: int) -> float:
    """r^(N+1)/(N+1)! e^r with r = K|x|, K the norm constant of the algebra."""

    r = x.algebra.norm_constant * norm(x).value
    if r == 0.0:
        return 0.0
    log_bound = (order + 1) * math.log(r) - math.lgamma(order + 2) + r
    return math.exp(log_bound) if log_bound < 700 else math.inf


@dataclass(frozen=True)
class ExpResult:
    value: AlgebraElement
    order: int
    remainder_bound: float

    def to_json(self) -> Dict[str, object]:
        return {
            "value": [format_scalar(coord) for coord in self.value.coords],
            "order": self.order,
            "remainder_bound": self.remainder_bound,
        }


def exp(
    x: AlgebraElement,
    order: Optional[int] = None,
    *,
    exact: Optional[bool] = None,
    config: Optional[SeriesConfig] = None,
) -> ExpResult:
    """Sum of x^k / k! for k <= order by iterated multiplication, summed by increasing degree."""

    config = config or SeriesConfig()
    order = config.truncation_order if order is None else order
    exact = config.exact if exact is None else exact
    if order < 0:
        raise ValueError(f"Truncation order must be nonnegative, got {order}.")
    point = x if exact and x.is_exact else x.to_real()
    one = x.algebra.one()
    term = one if point.is_exact else one.to_real()
    total = term
    for k in range(1, order + 1):
        term = mul(term, point)
        term = term.scale(Fraction(1, k)) if point.is_exact else term.scale(1.0 / k)
        total = total + term
    bound = remainder_bound(x, order)
    logger.debug("exp of %s at order %d, remainder bound %.3e", x.format(), order, bound)
    return ExpResult(total, order, bound)


def exp_series(algebra: Algebra, order: Optional[int] = None) -> TruncatedSeries:
    """Layers x^k / k! for k = 0..order with the norm-based remainder bound."""

    order = SeriesConfig().truncation_order if order is None else order
    one = algebra.one()
    layers: List[NcExpression] = [Const(one)]
    for k in range(1, order + 1):
        layers.append(Prod((Const(one.scale(Fraction(1, math.factorial(k)))),) + (X,) * k))
    return TruncatedSeries(algebra, order, tuple(layers), lambda x: remainder_bound(x, order))


@dataclass(frozen=True)
class ExpSumReport:
    """exp(a + b) against exp(a) exp(b); unequal results carry the difference norm as witness."""

    equal: bool
    difference_norm: float
    commutator_norm: float
    order: int
    remainder_bounds: Tuple[float, float, float]

    def to_json(self) -> Dict[str, object]:
        return {
            "equal": self.equal,
            "difference_norm": self.difference_norm,
            "commutator_norm": self.commutator_norm,
            "order": self.order,
            "remainder_bounds": list(self.remainder_bounds),
        }


def exp_sum_check(
    a: AlgebraElement,
    b: AlgebraElement,
    order: Optional[int] = None,
    tolerance: Optional[float] = None,
    config: Optional[SeriesConfig] = None,
) -> ExpSumReport:
    config = config or SeriesConfig()
    order = config.truncation_order if order is None else order
    tolerance = config.sum_tolerance if tolerance is None else tolerance
    total = a + b
    bounds = tuple(remainder_bound(value, order) for value in (a, b, total))
    if max(bounds) >= tolerance / 4:
        raise InsufficientTruncation(
            f"Order {order} leaves a remainder bound of {max(bounds):.3e}, above {tolerance / 4:.3e}; "
            "increase the truncation order."
        )
    lhs = exp(total, order, exact=False).value
    rhs = mul(exp(a, order, exact=False).value, exp(b, order, exact=False).value)
    difference = norm(lhs - rhs).value
    commutator_norm = norm(commutator(a.to_real(), b.to_real())).value
    equal = difference <= tolerance * max(1.0, norm(lhs).value)
    logger.info(
        "exp(a+b) %s exp(a)exp(b): difference %.3e, |[a,b]| = %.3e",
        "equals" if equal else "differs from",
        difference,
        commutator_norm,
    )
    return ExpSumReport(equal, difference, commutator_norm, order, bounds)


def _power(x: AlgebraElement, k: int) -> AlgebraElement:
    result = x.algebra.one()
    for _ in range(k):
        result = mul(result, x)
    return result


def exp_layer_discrepancy(a: AlgebraElement, b: AlgebraElement, max_degree: int) -> Tuple[AlgebraElement, ...]:
    """Per degree d: sum over k + l = d of a^k b^l / (k! l!) minus (a + b)^d / d!.

    Degree 2 gives [a, b]/2; all degrees vanish when a and b commute.
    """

    exact = a.is_exact and b.is_exact
    layers = []
    for d in range(max_degree + 1):
        layer = a.algebra.zero(exact=exact)
        for k in range(d + 1):
            weight = Fraction(1, math.factorial(k) * math.factorial(d - k))
            layer = layer + mul(_power(a, k), _power(b, d - k)).scale(weight if exact else float(weight))
        weight = Fraction(1, math.factorial(d))
        layer = layer - _power(a + b, d).scale(weight if exact else float(weight))
        layers.append(layer)
    return tuple(layers)


@dataclass(frozen=True)
class ShuffleWord:
    """The word ascending(S), y, descending(complement of S) over h_1..h_n."""

    order: int
    left: Tuple[int, ...]
    right: Tuple[int, ...]

    @property
    def letters(self) -> Tuple[str, ...]:
        return tuple(f"h{i}" for i in self.left) + ("y",) + tuple(f"h{i}" for i in self.right)

    def format(self) -> str:
        return "·".join(self.letters)

    def __str__(self) -> str:
        return self.format()


def shuffle_words(n: int) -> List[ShuffleWord]:
    """All 2^n shuffle words ordered by the bitmask of S; bit i - 1 set means h_i is left of y."""

    if n < 1:
        raise ValueError(f"Shuffle words need n >= 1, got {n}.")
    words = []
    for mask in range(2**n):
        left = tuple(i for i in range(1, n + 1) if mask >> (i - 1) & 1)
        right = tuple(i for i in range(n, 0, -1) if not mask >> (i - 1) & 1)
        words.append(ShuffleWord(n, left, right))
    return words


def shuffle_form(n: int, y: AlgebraElement) -> MultilinearForm:
    """The order-n form summing every shuffle word, with y as the constant between the two runs."""

    words = []
    for shuffle in shuffle_words(n):
        slots = tuple(DirectionSlot(i) for i in shuffle.left + shuffle.right)
        constants = [None] * (n + 1)
        constants[len(shuffle.left)] = y
        words.append(Word(1, tuple(constants), slots))
    return MultilinearForm(y.algebra, n, tuple(words))


def diagonal_shuffle_value(n: int, h: AlgebraElement) -> AlgebraElement:
    """The shuffle form at y = 1 and h_1 = ... = h_n = h, which is 2^n h^n."""

    algebra = h.algebra
    form = shuffle_form(n, algebra.one())
    return eval_form(form, algebra.zero(exact=h.is_exact), *([h] * n))
