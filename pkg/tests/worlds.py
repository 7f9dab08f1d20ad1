"""Buildings, groups and Levi data shared across test modules, built once."""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from fuchsian_lattices.building import build_projective_plane, build_symplectic_quadrangle
from fuchsian_lattices.graph_of_groups import lemma_data
from fuchsian_lattices.groups import generate_group

BUILDERS = {"A2": build_projective_plane, "C2": build_symplectic_quadrangle}
GONALITY = {"A2": 3, "C2": 4}
MATRIX = [("A2", 2), ("C2", 2), ("A2", 3), ("C2", 3)]
KS = (4, 8, 12)


class World(NamedTuple):
    family: str
    q: int
    graph: object
    gens: list
    G: object


@lru_cache(maxsize=None)
def world(family: str, q: int) -> World:
    graph, gens = BUILDERS[family](q)
    return World(family, q, graph, gens, generate_group(gens, graph.n_vertices, char_p=q))


@lru_cache(maxsize=None)
def levi(family: str, q: int, v: int = 0):
    w = world(family, q)
    return lemma_data(w.graph, w.G, v)


def chevalley_order(family: str, q: int) -> int:
    """|SL3(q)| acting on PG(2,q) (centre trivial for q = 2, 3) and |PSp4(q)|."""
    if family == "A2":
        return q ** 3 * (q ** 2 - 1) * (q ** 3 - 1)
    return q ** 4 * (q ** 2 - 1) * (q ** 4 - 1) // (2 if q % 2 else 1)
