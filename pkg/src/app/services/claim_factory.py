from app.services import verifier
from app.utils.exceptions import UnknownClaimError


def getClaim(claim_id):
    claims = {
        "min-distance": verifier.verify_min_distance,
        "local-transitivity": verifier.verify_local_transitivity,
        "gcd-obstruction": verifier.verify_gcd_obstruction,
        "2nt": verifier.verify_neighbour_transitivity,
        "completely-transitive": verifier.verify_completely_transitive,
        "theorem-case": verifier.verify_theorem_case,
        "dichotomy": verifier.verify_dichotomy,
        "design": verifier.verify_design,
        "scalar-twist": verifier.verify_scalar_twist,
        "reed-muller": verifier.verify_reed_muller,
    }
    claim = claims.get(claim_id)
    if claim is None:
        raise UnknownClaimError(f"Could not find claim '{claim_id}'")
    return claim


def getReproduction(grid_id):
    grids = {
        "min-distance": verifier.reproduce_min_distances,
        "reed-muller": verifier.reproduce_reed_muller,
        "local-transitivity": verifier.reproduce_local_transitivity,
        "theorem-case": verifier.reproduce_theorem_cases,
        "design": verifier.reproduce_designs,
        "dichotomy": verifier.reproduce_dichotomy,
        "scalar-twist": verifier.reproduce_scalar_twist,
    }
    if grid_id == "all":
        return lambda workers=None: [report for grid in grids.values() for report in grid(workers)]
    grid = grids.get(grid_id)
    if grid is None:
        raise UnknownClaimError(f"Could not find reproduction grid '{grid_id}'")
    return grid
