import pytest

from conftest import E, g_zero_base, logistic, probabilistic_sum, three_block_spec
from unisum.analysis.verify import check_closure
from unisum.lib.errors import SpecInvalidError
from unisum.operators.tnorms import dualize, lukasiewicz_tnorm, ordinal_sum_tconorm, product
from unisum.ordinal_sum.evaluate import (
    classify_summand,
    derive_B_C_n,
    eval_ordinal_sum_uninorm,
    is_totally_employed,
    ordinal_sum_uninorm,
    resolve_v,
)
from unisum.ordinal_sum.models import OrdinalSumSpec, Summand, SummandShape
from unisum.ordinal_sum.transform import inverse_transform_point, transform_point, transform_uninorm
from unisum.uninorms.construct import make_u_min
from unisum.uninorms.models import AnnihilatorPolicy


def test_transform_point_branches():
    assert transform_point(0.25, 0.5, 0.5, 0.75, 0.5, 0.5, 0.25) == pytest.approx(0.375)
    assert transform_point(0.25, 0.5, 0.5, 0.75, 0.5, 0.6, 0.5) == 0.6
    assert transform_point(0.25, 0.5, 0.5, 0.75, 0.5, 0.5, 1.0) == 0.75


def test_transform_collapses_empty_lower_interval():
    assert transform_point(0.3, 0.3, 0.5, 1.0, 0.5, 0.5, 0.2) == 0.3


def test_inverse_transform():
    y = transform_point(0.25, 0.5, 0.5, 0.75, 0.5, 0.5, 0.8)
    assert inverse_transform_point(0.25, 0.5, 0.5, 0.75, 0.5, 0.5, y) == pytest.approx(0.8)


def test_transformed_product_rescales():
    op = transform_uninorm(product(), 0.0, 0.5, 1.0, 1.0, 0.5)
    assert op(0.25, 0.25) == pytest.approx(0.125)


def test_transformed_neutral():
    op = transform_uninorm(logistic(), 0.25, 0.5, 0.5, 0.75, 0.5)
    for x in (0.3, 0.45, 0.6, 0.7):
        assert op(0.5, x) == pytest.approx(x)


def test_three_block_values():
    spec = three_block_spec()
    assert eval_ordinal_sum_uninorm(spec, 0.1, 0.6) == 0.1
    assert eval_ordinal_sum_uninorm(spec, 0.1, 0.9) == 0.9
    assert eval_ordinal_sum_uninorm(spec, 0.5, 0.3) == 0.3
    # inside the complete summand the sum is the rescaled logistic
    assert eval_ordinal_sum_uninorm(spec, 0.375, 0.625) == pytest.approx(0.5)


def test_single_complete_summand_accumulates_only_at_e():
    spec = OrdinalSumSpec(e=0.5, summands=(Summand(a=0.0, b=0.5, c=0.5, d=1.0, op=logistic()),))
    assert derive_B_C_n(spec)[:2] == ((0.5,), (0.5,))
    assert resolve_v(spec, 0) == 0.5


def test_derived_sets_literal_definition():
    B, C, n = derive_B_C_n(g_zero_base())
    # e is the right end of the only lower interval and starts no lower interval
    assert B == (E,)
    assert C == ()
    assert n == {0: E}


def test_min_band_sets():
    spec = OrdinalSumSpec(
        e=0.5,
        summands=(
            Summand(a=0.5, b=0.5, c=0.5, d=1.0, op=probabilistic_sum()),
            Summand(a=0.0, b=0.5, c=1.0, d=1.0, op=product()),
        ),
    )
    B, C, _ = derive_B_C_n(spec)
    assert B == ()
    assert C == (0.5,)
    U = ordinal_sum_uninorm(spec)
    # matches U_min with the same underlying operations
    reference = make_u_min(product(), probabilistic_sum(), 0.5)
    for x, y in ((0.2, 0.3), (0.2, 0.8), (0.6, 0.9), (0.0, 1.0)):
        assert U(x, y) == pytest.approx(reference(x, y))


def test_v_follows_conjunctive_neighbour():
    spec = three_block_spec()
    # summand 1 ends at 1/4 where the conjunctive logistic block starts
    assert resolve_v(spec, 1) == 0.25


def test_pinned_v_must_agree():
    spec = three_block_spec()
    summands = list(spec.summands)
    summands[1] = summands[1].model_copy(update={"v": 0.75})
    with pytest.raises(SpecInvalidError, match="Pinned"):
        resolve_v(OrdinalSumSpec(e=0.5, summands=tuple(summands)), 1)


def test_rejects_uncovered_lower_side():
    with pytest.raises(SpecInvalidError, match="leave a gap|short of"):
        OrdinalSumSpec(e=0.5, summands=(Summand(a=0.1, b=0.5, c=0.5, d=1.0, op=logistic()),))


def test_rejects_non_anti_comonotone_systems():
    with pytest.raises(SpecInvalidError, match="anti-comonotone"):
        OrdinalSumSpec(
            e=0.5,
            summands=(
                Summand(a=0.0, b=0.25, c=0.5, d=0.75, op=logistic()),
                Summand(a=0.25, b=0.5, c=0.75, d=1.0, op=logistic()),
            ),
        )


def test_complete_summand_needs_proper_uninorm():
    with pytest.raises(SpecInvalidError, match="cannot carry"):
        Summand(a=0.0, b=0.5, c=0.5, d=1.0, op=product())


def test_empty_summand_needs_character():
    with pytest.raises(SpecInvalidError, match="character"):
        Summand(a=0.3, b=0.3, c=0.6, d=0.6)
    empty = Summand(a=0.3, b=0.3, c=0.6, d=0.6, character=AnnihilatorPolicy.DISJUNCTIVE)
    assert not empty.conjunctive


def test_summand_order():
    with pytest.raises(SpecInvalidError, match="not ordered"):
        Summand(a=0.4, b=0.2, c=0.6, d=0.8, op=logistic())


def test_summand_taxonomy():
    spec = three_block_spec()
    shapes = [classify_summand(s) for s in spec.summands]
    assert shapes == [SummandShape.COMPLETE, SummandShape.LOWER, SummandShape.UPPER]
    assert all(is_totally_employed(s) for s in spec.summands)
    # a uninorm carried only on its t-norm side is not totally employed
    assert not is_totally_employed(Summand(a=0.0, b=0.5, c=1.0, d=1.0, op=logistic()))


def test_block_borders_are_idempotent(three_block):
    for p in (0.0, 0.25, 0.5, 0.75, 1.0):
        assert three_block(p, p) == p


def test_closure_of_the_representable_block(three_block):
    finding = check_closure(three_block, 0.25, 0.5, 0.5, 0.75)
    assert finding.passed


def test_summand_carrying_an_ordinal_sum():
    inner = ordinal_sum_tconorm([(0.5, 1.0, dualize(lukasiewicz_tnorm()))])
    spec = OrdinalSumSpec(
        e=0.5,
        summands=(
            Summand(a=0.0, b=0.5, c=1.0, d=1.0, op=product()),
            Summand(a=0.5, b=0.5, c=0.5, d=1.0, op=inner),
        ),
    )
    U = ordinal_sum_uninorm(spec)
    assert U(0.6, 0.7) == pytest.approx(0.7)
    assert U(0.9, 0.95) == pytest.approx(1.0)
    assert U(0.9, 0.65) == pytest.approx(0.9)
