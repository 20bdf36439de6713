import pytest

from conftest import CONSTRUCTIONS, logistic, probabilistic_sum, reflection_internal
from unisum.analysis.verify import (
    check_axioms,
    check_gap_dichotomy,
    check_idempotent_rows,
    in_class_N,
    is_internal,
    is_pseudo_internal,
    max_adjacent_jump,
    search_associativity_witness,
    verify_pointwise,
)
from unisum.operators.tnorms import product
from unisum.ordinal_sum.evaluate import ordinal_sum_uninorm
from unisum.ordinal_sum.models import OrdinalSumSpec, Summand
from unisum.uninorms.construct import make_u_min
from unisum.uninorms.models import OperatorHandle


def test_constructions_satisfy_axioms(construction):
    report = check_axioms(construction, grid_n=21, ternary_n=11)
    assert report.passed, report.findings


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(CONSTRUCTIONS))
def test_constructions_satisfy_axioms_on_full_grids(name):
    U = CONSTRUCTIONS[name]()
    assert check_axioms(U, seed=7).passed


def test_axiom_report_names_the_failure():
    mean = OperatorHandle(eval=lambda x, y: 0.5 * (x + y), neutral=0.5, name="mean")
    report = check_axioms(mean, grid_n=11, ternary_n=5)
    assert not report.passed
    assert report.finding("commutativity").passed
    neutrality = report.finding("neutrality")
    assert not neutrality.passed
    assert neutrality.witness[0] == 0.5


def test_random_associativity_search_is_seeded():
    U = logistic()
    first = search_associativity_witness(U, samples=500, seed=3)
    again = search_associativity_witness(U, samples=500, seed=3)
    assert first == again
    assert first.passed


def test_complete_summand_reproduces_its_uninorm():
    spec = OrdinalSumSpec(e=0.5, summands=(Summand(a=0.0, b=0.5, c=0.5, d=1.0, op=logistic()),))
    diff = verify_pointwise(ordinal_sum_uninorm(spec), logistic(), grid_n=21)
    assert diff.within_tol


def test_pointwise_difference_with_witness():
    diff = verify_pointwise(logistic(), product(), grid_n=21)
    assert not diff.within_tol
    x, y = diff.witness
    assert abs(logistic()(x, y) - product()(x, y)) == pytest.approx(diff.max_difference)


def test_logistic_jumps_only_at_the_corners():
    report = max_adjacent_jump(logistic(), grid_n=21)
    assert report.max_jump < 0.5
    # the annihilator corner is reported separately
    assert report.excluded_max_jump == 1.0


def test_logistic_continuity_on_the_full_grid():
    report = max_adjacent_jump(logistic(), grid_n=401, exclude_radius=0.25)
    assert report.max_jump <= 0.02
    assert report.excluded_max_jump >= 0.9


def test_u_min_jumps_across_e():
    report = max_adjacent_jump(make_u_min(product(), probabilistic_sum(), 0.5), grid_n=21)
    assert report.max_jump > 0.3
    x1, _, x2, _ = report.witness
    assert x1 <= 0.5 <= x2


def test_internal_properties():
    U_min = make_u_min(product(), probabilistic_sum(), 0.5)
    assert is_internal(reflection_internal(), grid_n=21)
    assert not is_internal(logistic(), grid_n=21)
    assert is_pseudo_internal(U_min, grid_n=21)
    assert not is_pseudo_internal(logistic(), grid_n=21)


def test_class_N():
    assert in_class_N(logistic(), grid_n=21)
    assert not in_class_N(make_u_min(product(), probabilistic_sum(), 0.5), grid_n=21)


def test_idempotent_rows_and_gaps(three_block):
    assert check_idempotent_rows(three_block, [0.25, 0.5, 0.75], grid_n=21).passed
    assert check_gap_dichotomy(three_block, 0.25, (0.75, 1.0), grid_n=21).passed
    assert check_gap_dichotomy(three_block, 0.75, (0.0, 0.25), grid_n=21).passed
