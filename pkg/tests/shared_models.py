"""Cached curve models shared by the fixtures and the acceptance suite."""
from functools import lru_cache

from gonalis import fixtures
from gonalis.curvein import canonical_ideal
from gonalis.scrollar import goneric_pipeline, strand_data

# one summary line per acceptance criterion, printed at the end of the pytest run
ACCEPTANCE_LINES = []


@lru_cache(maxsize=None)
def plane_case(name: str):
    """(plane model, canonical model, linear strand) for a named plane fixture over F_10007."""
    P = {"sextic": lambda: fixtures.nodal_sextic(0),
         "genus10": fixtures.genus10_plane,
         "octic": fixtures.genus9_octic_plane,
         "genus9": lambda: fixtures.genus9_goneric(0),
         "genus12": fixtures.genus12_plane}[name]()
    C = canonical_ideal(P)
    return P, C, (strand_data(C) if name != "genus12" else None)


@lru_cache(maxsize=None)
def general_genus6(seed: int = 0):
    C = fixtures.random_genus6(seed)
    return C, strand_data(C)


@lru_cache(maxsize=None)
def goneric_map(name: str, seed: int = 0):
    _, C, data = plane_case(name)
    return goneric_pipeline(C, seed, data)
