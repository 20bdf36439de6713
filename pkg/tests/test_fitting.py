import math

import pytest

from conftest import logistic, probabilistic_sum, reflection_internal
from unisum.analysis.fitting import fit_boundary, fit_generator, generated_operator
from unisum.analysis.verify import verify_pointwise
from unisum.operators.models import GeneratorKind
from unisum.operators.tnorms import lukasiewicz_tnorm, product
from unisum.uninorms.construct import make_s_internal
from unisum.uninorms.models import OperatorHandle, OperatorKind


def test_lukasiewicz_fit_is_exact():
    fitted = fit_generator(lukasiewicz_tnorm())
    assert fitted.kind == GeneratorKind.TNORM
    # t(x) = 2 (1 - x), scaled so that t(1/2) = 1
    assert fitted(0.5) == pytest.approx(1.0)
    assert fitted(0.0) == pytest.approx(2.0)
    assert fitted(0.75) == pytest.approx(0.5)
    assert fitted.residual < 1e-9


def test_product_fit_tracks_the_log():
    fitted = fit_generator(product())
    assert fitted(0.25) == pytest.approx(2.0)
    assert fitted(1.0) == 0.0
    assert fitted.residual < 1e-6


def test_tconorm_fit_is_increasing():
    fitted = fit_generator(probabilistic_sum())
    assert fitted.kind == GeneratorKind.TCONORM
    assert fitted(0.0) == 0.0
    assert fitted(0.5) == pytest.approx(1.0)
    assert fitted(0.3) < fitted(0.6) < fitted(0.9)


def test_bipolar_fit_changes_sign_at_e():
    fitted = fit_generator(logistic())
    assert fitted.kind == GeneratorKind.BIPOLAR
    assert fitted(0.5) == pytest.approx(0.0, abs=1e-12)
    assert fitted(0.25) < 0.0 < fitted(0.75)
    # the logistic generator is odd around e
    assert fitted(0.75) == pytest.approx(-fitted(0.25), rel=1e-6)
    assert fitted.inverse(fitted(0.25)) == pytest.approx(0.25, abs=1e-9)


def test_fitted_ends_are_pinned():
    fitted = fit_generator(product())
    assert fitted(1.0) == 0.0
    assert fitted(0.0) == fitted.values[0]
    assert fitted.inverse(0.0) == 1.0
    nilpotent = fit_generator(lukasiewicz_tnorm())
    assert nilpotent.inverse(nilpotent(0.0) + 1.0) == 0.0


@pytest.mark.parametrize("make", [product, lukasiewicz_tnorm, probabilistic_sum, logistic])
def test_generated_operator_matches_the_source(make):
    op = make()
    fitted = fit_generator(op)
    assert fitted.residual <= 1e-6
    rebuilt = generated_operator(fitted, op)
    assert rebuilt.kind == op.kind
    assert rebuilt.neutral == op.neutral
    assert rebuilt.name.startswith("fitted[")
    assert verify_pointwise(op, rebuilt, grid_n=21, tol=1e-6).within_tol


def test_perturbed_product_leaves_a_residual():
    def evaluate(x, y):
        return x * y * (1.0 + 0.05 * math.sin(math.pi * x) * math.sin(math.pi * y))

    op = OperatorHandle(eval=evaluate, neutral=1.0, kind=OperatorKind.TNORM, name="perturbed-product")
    assert fit_generator(op).residual > 1e-4


def test_traced_boundary_follows_the_curve():
    U = reflection_internal()
    boundary = fit_boundary(U)
    assert boundary.v(0.3) == pytest.approx(0.7, abs=1e-9)
    assert 0.0 < boundary.band < 1e-6
    rebuilt = make_s_internal(boundary)
    assert verify_pointwise(U, rebuilt, grid_n=21, tol=1e-12).within_tol
