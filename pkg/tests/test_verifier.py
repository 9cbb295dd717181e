import pytest

from app.schemas.reports import VerificationReport
from app.services import claim_factory
from app.services.code_builder import even_weight_code, grm_code, repetition_code
from app.services.group_actions import affine_space_generators, symmetric_group_generators, translation_generators
from app.services.verifier import (
    LOCAL_TRANSITIVITY_GRID,
    check_code_preserved,
    check_local_transitivity,
    known_discrepancy,
    min_distance_formula,
    neighbour_transitivity,
    reproduce_designs,
    reproduce_dichotomy,
    reproduce_local_transitivity,
    reproduce_min_distances,
    reproduce_reed_muller,
    reproduce_scalar_twist,
    reproduce_theorem_cases,
    sphere_orbits,
    verify_completely_transitive,
    verify_gcd_obstruction,
    verify_hamming_boundary,
    verify_local_transitivity,
    verify_min_distance,
    verify_neighbour_transitivity,
)
from app.utils.exceptions import (
    AutomorphismMismatchError,
    CodeNotPreservedError,
    EnumerationCapError,
    UnknownClaimError,
)


def by_family(reports):
    return {(r.params["family"], r.params["q"]): r for r in reports}


def test_min_distance_grid():
    reports = reproduce_min_distances()
    assert [r.computed["min_distance"] for r in reports] == [2, 6, 3, 4, 2, 40, 56]
    small, large = reports[4], reports[5]
    assert not small.passed and not large.passed
    assert small.expected_failure and large.expected_failure
    assert not small.unexpected_failure and not large.unexpected_failure
    assert "[9,8,2]" in small.note
    assert "[65,8,40]" in large.note
    assert all(r.passed for i, r in enumerate(reports) if i not in (4, 5))


def test_min_distance_formula():
    assert min_distance_formula("affine", 3, 3) == 6
    assert min_distance_formula("unital", 2) == 4
    assert min_distance_formula("ovoid", 8) == 56
    [report] = verify_min_distance(family="affine", q=4, t=2)
    assert report.passed
    assert report.expected == {"min_distance": 3}


def test_unital_min_distance_over_gf16():
    [report] = verify_min_distance(family="unital", q=4, s=2)
    assert report.computed["min_distance"] == 40
    assert report.expected == {"min_distance": 56}
    assert report.expected_failure
    assert not report.unexpected_failure


def test_unital_local_transitivity_over_gf16():
    [report] = verify_local_transitivity(family="unital", q=4, s=2)
    assert report.passed
    assert report.computed["gamma1_orbit_sizes"] == [195]
    assert report.computed["gamma2_orbit_sizes"] == [18720]


def test_errors_become_failing_reports():
    [report] = verify_min_distance(family="projective", q=6, t=3)
    assert not report.passed
    assert report.note.startswith("error 102")
    [missing] = claim_factory.getClaim("reed-muller")(family="rm", q=2)
    assert missing.unexpected_failure
    assert "needs l, t" in missing.note
    [no_formula] = verify_min_distance(family="projective", q=2, t=3)
    assert no_formula.note.startswith("error 107")


def test_runners_ignore_unknown_parameters():
    [report] = verify_min_distance(family="affine", q=2, t=3, level=2, block_weight=None)
    assert report.passed
    assert "level" not in report.params


def test_local_transitivity_grid():
    # the Suzuki entry is covered by the slow test below
    reports = [r for entry in LOCAL_TRANSITIVITY_GRID[:3] for r in verify_local_transitivity(**entry)]
    reports += verify_gcd_obstruction(q=5, t=2, k=2)
    found = by_family(reports[:3])
    projective = found[("projective", 2)]
    assert projective.passed
    assert projective.computed["gamma1_orbit_sizes"] == [7]
    assert projective.computed["gamma2_orbit_sizes"] == [21]
    affine = found[("affine", 3)]
    assert affine.expected_failure
    assert affine.computed["gamma1_orbit_sizes"] == [18]
    assert affine.computed["gamma2_orbit_sizes"] == [72, 72]
    unital = found[("unital", 2)]
    assert unital.passed
    assert unital.computed["gamma2_orbit_sizes"] == [36]
    obstruction = reports[-1]
    assert obstruction.claim == "gcd-obstruction"
    assert obstruction.passed
    assert obstruction.computed["gamma2_orbits"] >= 2


@pytest.mark.slow
def test_full_local_transitivity_reproduction():
    reports = reproduce_local_transitivity()
    assert [r.passed or r.expected_failure for r in reports] == [True] * 6


@pytest.mark.slow
def test_suzuki_local_transitivity():
    [report] = verify_local_transitivity(family="ovoid", q=8)
    assert report.passed
    assert report.computed["gamma1_orbit_sizes"] == [455]
    assert report.computed["gamma2_orbit_sizes"] == [101920]


def test_gcd_obstruction_needs_a_common_factor():
    [split] = verify_gcd_obstruction(q=5, t=2, k=2)
    assert split.params["gcd"] == 2
    assert split.passed
    [coprime] = verify_gcd_obstruction(q=5, t=2, k=1)
    assert not coprime.passed


def test_reed_muller_grid():
    reports = reproduce_reed_muller()
    assert all(r.passed for r in reports), [r.note for r in reports if not r.passed]
    shapes = [(r.computed["n"], r.computed["dim"], r.computed["min_distance"]) for r in reports[:6]]
    assert shapes == [(8, 4, 4), (16, 5, 8), (16, 1, 16), (16, 5, 8), (13, 3, 9), (21, 10, 5)]
    boundary = reports[-1]
    assert boundary.params["boundary"] is True
    assert (boundary.computed["n"], boundary.computed["dim"]) == (13, 10)
    assert boundary.computed["neighbour_transitive"] is True
    assert boundary.computed["two_neighbour_transitive"] is False


def test_hamming_boundary_over_gf2():
    [report] = verify_hamming_boundary(q=2, t=3)
    assert report.passed
    assert report.computed["covering_radius"] == 1


def test_shortcut_agrees_with_exhaustive_partition():
    code = grm_code(2, 1, 3)
    gens = affine_space_generators(code.field, 3, 2)
    result = neighbour_transitivity(code, gens, 2)
    assert result["shortcut"] is True
    assert result["exhaustive"] is True
    assert result["agreement"] is True
    assert result["class_sizes"] == [16, 128, 112]
    assert result["neighbour_transitive"] is True


def test_neighbour_transitivity_without_shortcut():
    code = even_weight_code(2, 4)
    gens = symmetric_group_generators(2, 4)
    assert neighbour_transitivity(code, gens, 1)["neighbour_transitive"] is True
    second = neighbour_transitivity(code, gens, 2)
    assert second["shortcut"] is None
    assert second["neighbour_transitive"] is False


def test_unital_is_not_two_neighbour_transitive():
    [report] = verify_neighbour_transitivity(family="unital", q=2, s=2)
    assert not report.passed
    assert report.expected_failure
    assert report.computed["covering_radius"] == 1


def test_completely_transitive():
    [report] = verify_completely_transitive(family="rm", q=2, l=1, t=3)
    assert report.passed
    assert report.claim == "completely-transitive"
    assert report.params["family"] == "rm"


def test_theorem_cases():
    reports = reproduce_theorem_cases()
    hamming, dual, unital, reed_muller = reports
    assert hamming.passed and hamming.computed["case"] == "hamming"
    assert dual.passed and dual.computed["case"] == "dual-repetition"
    assert not unital.passed
    assert unital.expected_failure
    assert unital.computed["case"] == "dual-repetition"
    assert reed_muller.passed
    assert reed_muller.computed["case"] == "two-neighbour-transitive"


def test_designs():
    reports = reproduce_designs()
    assert all(r.passed for r in reports)
    assert [r.computed["lambda"] for r in reports] == [1, 21, 55, 1]


def test_dichotomy():
    reports = reproduce_dichotomy()
    assert [r.computed["branch"] for r in reports] == ["large-radius", "hamming", "dual-repetition"]
    assert all(r.computed["hypothesis"] for r in reports)
    assert all(r.passed for r in reports)


def test_scalar_twist_discrepancy():
    [report] = reproduce_scalar_twist()
    assert report.computed["multiplier"] == 3
    assert report.expected["multiplier"] == 2
    assert not report.passed
    assert report.expected_failure


def test_reproduction_is_deterministic():
    first = [r.record(include_timing=False) for r in reproduce_dichotomy()]
    second = [r.record(include_timing=False) for r in reproduce_dichotomy(workers=3)]
    assert first == second


def test_local_transitivity_needs_zero_fixing_generators(binary_hamming):
    with pytest.raises(AutomorphismMismatchError):
        check_local_transitivity(binary_hamming, translation_generators(binary_hamming))


def test_code_not_preserved():
    translations = translation_generators(even_weight_code(2, 4))
    with pytest.raises(CodeNotPreservedError):
        check_code_preserved(repetition_code(2, 4), translations)


def test_sphere_orbit_cap():
    with pytest.raises(EnumerationCapError):
        sphere_orbits(symmetric_group_generators(2, 10), 10, 2, 3, vertex_cap=10)


def test_known_discrepancies():
    assert known_discrepancy("local-transitivity", {"family": "affine", "q": 3})
    assert known_discrepancy("local-transitivity", {"family": "affine", "q": 2}) is None
    assert known_discrepancy("2nt", {"family": "unital", "q": 2, "s": 2})
    assert known_discrepancy("design", {"family": "unital", "q": 2, "s": 2}) is None


def test_inexact_reports_do_not_pass():
    report = VerificationReport(
        claim="min-distance", params={}, computed={}, expected={}, provenance="", passed=True, exact=False
    )
    assert not report.passed
    assert report.note == "inexact computation"
    bound = VerificationReport(
        claim="min-distance", params={}, computed={}, expected={}, provenance="", passed=True, exact=False, bound_claim=True
    )
    assert bound.passed
    assert "pass" in bound.record() and "bound_claim" not in bound.record()
    assert "millis" not in bound.record(include_timing=False)


def test_claim_factory():
    assert claim_factory.getClaim("2nt") is verify_neighbour_transitivity
    with pytest.raises(UnknownClaimError, match="3nt"):
        claim_factory.getClaim("3nt")
    with pytest.raises(UnknownClaimError):
        claim_factory.getReproduction("everything")
