import math
from typing import Callable, Dict, Optional, Tuple

from scipy.special import expit, logit

from unisum.lib.errors import ConstructionError
from unisum.operators.models import Generator, GeneratorKind, UnaryMap

# Each family builder returns (eval, closed_inverse or None) for the given params.
FamilyBuilder = Callable[..., Tuple[UnaryMap, Optional[UnaryMap]]]


def _neg_log(x: float) -> float:
    # -ln(0) is +inf for the generator, not a math domain error
    return math.inf if x <= 0.0 else -math.log(x)


def _check_positive(name: str, value: float) -> float:
    if not value > 0.0:
        raise ConstructionError(f"Generator parameter {name} must be positive, got {value}")
    return float(value)


def _product() -> Tuple[UnaryMap, Optional[UnaryMap]]:
    return _neg_log, lambda s: math.exp(-s)


def _lukasiewicz() -> Tuple[UnaryMap, Optional[UnaryMap]]:
    return lambda x: 1.0 - x, lambda s: 1.0 - s


def _hamacher() -> Tuple[UnaryMap, Optional[UnaryMap]]:
    def t(x: float) -> float:
        return math.inf if x <= 0.0 else (1.0 - x) / x

    return t, lambda s: 1.0 / (1.0 + s)


def _yager(p: float = 2.0) -> Tuple[UnaryMap, Optional[UnaryMap]]:
    p = _check_positive("p", p)
    return lambda x: (1.0 - x) ** p, lambda s: 1.0 - s ** (1.0 / p)


def _aczel_alsina(p: float = 2.0) -> Tuple[UnaryMap, Optional[UnaryMap]]:
    p = _check_positive("p", p)

    def t(x: float) -> float:
        return _neg_log(x) ** p

    return t, lambda s: math.exp(-(s ** (1.0 / p)))


def _log_linear() -> Tuple[UnaryMap, Optional[UnaryMap]]:
    def t(x: float) -> float:
        return (1.0 - x) + _neg_log(x)

    return t, None


def _logistic() -> Tuple[UnaryMap, Optional[UnaryMap]]:
    return lambda x: float(logit(x)), lambda s: float(expit(s))


def _weighted_logistic(w: float = 2.0) -> Tuple[UnaryMap, Optional[UnaryMap]]:
    w = _check_positive("w", w)

    def f(x: float) -> float:
        if x <= 0.0:
            return -math.inf
        if x >= 1.0:
            return math.inf
        return math.log(x) - w * math.log(1.0 - x)

    return f, None


TNORM_FAMILIES: Dict[str, FamilyBuilder] = {
    "product": _product,
    "lukasiewicz": _lukasiewicz,
    "hamacher": _hamacher,
    "yager": _yager,
    "aczel-alsina": _aczel_alsina,
    "log-linear": _log_linear,
}

BIPOLAR_FAMILIES: Dict[str, FamilyBuilder] = {
    "logistic": _logistic,
    "weighted-logistic": _weighted_logistic,
}


def _dual_pair(t: UnaryMap, t_inverse: Optional[UnaryMap]) -> Tuple[UnaryMap, Optional[UnaryMap]]:
    def c(x: float) -> float:
        return t(1.0 - x)

    if t_inverse is None:
        return c, None
    return c, lambda s: 1.0 - t_inverse(s)


def make_generator(kind: GeneratorKind, family: str, **params: float) -> Generator:
    """
    Build a generator from the family catalogue.

    t-conorm generators are the duals c(x) = t(1 - x) of the t-norm families,
    so every t-norm family name is also a valid t-conorm family name.
    """
    kind = GeneratorKind(kind)
    catalogue = BIPOLAR_FAMILIES if kind == GeneratorKind.BIPOLAR else TNORM_FAMILIES
    if family not in catalogue:
        raise ConstructionError(
            f"Unknown {kind.value} generator family {family!r}; expected one of {sorted(catalogue)}"
        )

    try:
        fn, inverse = catalogue[family](**params)
    except TypeError as e:
        raise ConstructionError(f"Bad parameters {params} for generator family {family!r}: {e}") from e

    if kind == GeneratorKind.TCONORM:
        fn, inverse = _dual_pair(fn, inverse)

    return Generator(
        kind=kind,
        eval=fn,
        closed_inverse=inverse,
        family=family,
        params={name: float(value) for name, value in params.items()},
    )


def make_numeric_generator(
    kind: GeneratorKind,
    fn: UnaryMap,
    family: str = "custom",
    params: Optional[Dict[str, float]] = None,
) -> Generator:
    """Wrap a caller-supplied monotone map; its inverse is found by bisection."""
    return Generator(kind=GeneratorKind(kind), eval=fn, family=family, params=params or {})
