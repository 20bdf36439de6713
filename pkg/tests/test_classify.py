import pytest

from unisum.lib.errors import ConstructionError
from unisum.operators.classify import classify_archimedean, classify_c_strict, find_interior_idempotent
from unisum.operators.models import ArchimedeanClass, CompositeClass
from unisum.operators.tnorms import dualize, lukasiewicz_tnorm, minimum, ordinal_sum_tnorm, product


@pytest.mark.parametrize(
    "op, expected",
    [
        (product(), ArchimedeanClass.STRICT),
        (lukasiewicz_tnorm(), ArchimedeanClass.NILPOTENT),
        (dualize(product()), ArchimedeanClass.STRICT),
        (dualize(lukasiewicz_tnorm()), ArchimedeanClass.NILPOTENT),
        (minimum(), ArchimedeanClass.NOT_ARCHIMEDEAN),
        (ordinal_sum_tnorm([(0.0, 0.5, product())]), ArchimedeanClass.NOT_ARCHIMEDEAN),
    ],
)
def test_classify_archimedean(op, expected):
    assert classify_archimedean(op, grid_n=41) == expected


def test_ordinal_sum_with_lukasiewicz_in_the_upper_block_is_c_strict():
    T = ordinal_sum_tnorm([(0.5, 1.0, lukasiewicz_tnorm())])
    assert classify_c_strict(T, grid_n=41) == CompositeClass.C_STRICT


def test_lukasiewicz_in_the_lower_block_is_c_nilpotent():
    T = ordinal_sum_tnorm([(0.0, 0.5, lukasiewicz_tnorm())])
    assert classify_c_strict(T, grid_n=41) == CompositeClass.C_NILPOTENT


def test_interior_idempotent_between_samples():
    # the block border 0.37 is not a sample of a 21-point grid
    T = ordinal_sum_tnorm([(0.0, 0.37, product()), (0.37, 1.0, product())])
    found = find_interior_idempotent(T, grid_n=21)
    assert found == pytest.approx(0.37, abs=1e-6)


def test_uninorm_cannot_be_classified(three_block):
    with pytest.raises(ConstructionError):
        classify_c_strict(three_block)
