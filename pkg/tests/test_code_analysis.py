import numpy as np
import pytest

from app.services.code_analysis import (
    analyze,
    covering_radius,
    design_check,
    distance_classes,
    distance_to_code,
    exact_parameters,
    is_dual_repetition_code,
    is_hamming_code,
    is_perfect,
    min_distance,
    sphere,
    sphere_size,
    weight_enumerator,
)
from app.services.code_builder import (
    LinearCode,
    even_weight_code,
    family_code,
    grm_code,
    repetition_code,
    rm_subfield_code,
)
from app.services.linalg import Matrix
from app.utils.exceptions import CodeParameterError, EnumerationCapError, InexactInputError
from settings import settings


def test_hamming_parameters(binary_hamming):
    delta = min_distance(binary_hamming)
    assert delta.value == 3 and delta.exact
    rho = covering_radius(binary_hamming)
    assert rho.value == 1 and rho.exact
    assert exact_parameters(binary_hamming) == (3, 1)
    assert is_perfect(binary_hamming)
    assert is_hamming_code(binary_hamming)
    assert not is_dual_repetition_code(binary_hamming)


def test_weight_enumerator(binary_hamming):
    enumerator = weight_enumerator(binary_hamming)
    assert enumerator.counts == {0: 1, 3: 7, 4: 7, 7: 1}
    assert enumerator.complete
    assert enumerator.enumerated == 16
    assert enumerator.min_nonzero_weight() == 3


def test_partial_weight_enumerator():
    enumerator = weight_enumerator(grm_code(2, 1, 4), cap=8)
    assert not enumerator.complete
    assert 0 < enumerator.enumerated < 32


@pytest.mark.parametrize(
    "kind, q, t, delta",
    [("affine", 2, 3, 2), ("affine", 3, 3, 6), ("affine", 4, 2, 3), ("affine", 2, 4, 4)],
)
def test_affine_minimum_distances(kind, q, t, delta):
    assert min_distance(family_code(kind, q, 1, t)).value == delta


def test_unital_code_is_even_weight():
    code = family_code("unital", 2, 2)
    assert exact_parameters(code) == (2, 1)
    assert is_dual_repetition_code(code)


def test_suzuki_code():
    code = family_code("ovoid", 8)
    assert (code.n, code.dim) == (65, 4)
    assert min_distance(code).value == 56


@pytest.mark.parametrize(
    "builder, delta",
    [
        (lambda: grm_code(2, 1, 3), 4),
        (lambda: grm_code(2, 1, 4), 8),
        (lambda: rm_subfield_code(2, 2, 1, 2), 16),
        (lambda: rm_subfield_code(2, 2, 2, 2), 8),
    ],
)
def test_reed_muller_distances(builder, delta):
    assert min_distance(builder()).value == delta


def test_repetition_codes():
    rep = repetition_code(2, 5)
    assert exact_parameters(rep) == (5, 2)
    assert is_perfect(rep)
    dual = even_weight_code(2, 6)
    assert exact_parameters(dual) == (2, 1)
    assert is_dual_repetition_code(dual)
    assert not is_perfect(dual)


def test_threaded_enumeration_matches(monkeypatch):
    code = grm_code(2, 2, 4)
    serial = weight_enumerator(code, workers=1)
    monkeypatch.setattr(settings, "enumeration_block", 8)
    threaded = weight_enumerator(code, workers=4)
    assert threaded.counts == serial.counts
    assert min_distance(code, workers=4).value == 4


def test_bounds_past_the_caps():
    code = grm_code(2, 1, 4)
    delta = min_distance(code, enumeration_cap=4)
    assert not delta.exact
    assert delta.bound == "upper"
    assert delta.value >= 8
    assert str(delta) == f"<={delta.value}"
    rho = covering_radius(grm_code(2, 1, 4), vertex_cap=100)
    assert not rho.exact
    assert rho.bound == "lower"
    assert rho.value <= 6
    with pytest.raises(InexactInputError):
        exact_parameters(code)


def test_zero_dimensional_code(gf2):
    code = LinearCode(gf2, (0, 1), Matrix.zeros(gf2, 0, 4))
    with pytest.raises(CodeParameterError):
        min_distance(code)
    assert covering_radius(code).value == 4


def test_sphere():
    ball = sphere(np.zeros(4, dtype=np.int64), 2, 3)
    assert len(ball) == sphere_size(4, 3, 2) == 24
    assert np.all(np.count_nonzero(ball, axis=1) == 2)
    assert ball.tolist() == sorted(ball.tolist())
    shifted = sphere(np.array([1, 0, 2]), 1, 3)
    assert len(shifted) == 6
    with pytest.raises(CodeParameterError):
        sphere(np.zeros(3, dtype=np.int64), 4, 2)


def test_distance_classes(binary_hamming):
    classification = distance_classes(binary_hamming)
    assert classification.exact
    assert classification.covering_radius == 1
    assert classification.sizes() == [16, 112]


def test_restricted_distance_classes():
    classification = distance_classes(repetition_code(2, 5), restricted_radius=2)
    assert classification.restricted
    assert classification.sizes() == [2, 10, 20]
    with pytest.raises(InexactInputError):
        distance_classes(even_weight_code(2, 4), restricted_radius=2)
    with pytest.raises(EnumerationCapError):
        distance_classes(repetition_code(2, 5), vertex_cap=10)


def test_distance_to_code(binary_hamming):
    assert distance_to_code(binary_hamming, [0] * 7) == 0
    assert distance_to_code(binary_hamming, [1, 0, 0, 0, 0, 0, 0]) == 1


def test_design_check(binary_hamming):
    report = design_check(binary_hamming, 3)
    assert report.is_design
    assert report.blocks == 7
    assert report.lam == 1
    assert report.dict(by_alias=True)["lambda"] == 1


def test_design_counterexample(gf2):
    code = LinearCode(gf2, (0, 1), Matrix.from_rows(gf2, [[1, 1, 0, 0], [0, 0, 1, 1]]))
    report = design_check(code, 2)
    assert not report.is_design
    assert report.counterexample == ((0, 2), (1, 1), 0)


def test_analyze(binary_hamming):
    report = analyze(binary_hamming)
    assert (report.q, report.n, report.dim) == (2, 7, 4)
    assert report.min_distance.value == 3
    assert report.covering_radius.value == 1
    assert report.error_capacity == 1
    assert report.perfect is True
    assert report.trivial is False
    assert report.coset_leader_weights == {0: 1, 1: 7}
