"""Brute-force reference solvers and definition checkers.

Everything here favors being obviously correct over being fast; the
exhaustive solvers refuse instances beyond a small capacity instead of
silently running forever.  Enumeration is in lexicographic order of the
assignment vector, and the first witness found is returned, so outputs are
deterministic and usable as frozen test fixtures.
"""

from __future__ import annotations

from .errors import CapacityError, InputError
from .graph import Coloring, Graph, is_proper

DEFAULT_CAPACITY = 10


def is_b_coloring(g: Graph, c: Coloring) -> bool:
    """True iff c is proper, every class is nonempty, and every class
    contains a vertex with neighbors in all other classes."""
    if c.n != g.n:
        raise InputError(f"coloring covers {c.n} vertices, graph has {g.n}")
    if not is_proper(g, c):
        return False
    classes = c.classes()
    if any(not cls for cls in classes):
        return False
    all_colors = set(range(1, c.k + 1))
    for i, cls in enumerate(classes, start=1):
        others = all_colors - {i}
        if not any(
            others <= {c.colors[u] for u in g.neighbors(v)} for v in cls
        ):
            return False
    return True


def is_fall_coloring(g: Graph, c: Coloring) -> bool:
    """True iff c is proper, every class is nonempty, and every vertex has
    a neighbor in each class other than its own."""
    if c.n != g.n:
        raise InputError(f"coloring covers {c.n} vertices, graph has {g.n}")
    if not is_proper(g, c):
        return False
    if any(not cls for cls in c.classes()):
        return False
    all_colors = set(range(1, c.k + 1))
    for v in g.vertices():
        seen = {c.colors[u] for u in g.neighbors(v)}
        if not (all_colors - {c.colors[v]}) <= seen:
            return False
    return True


def _check_capacity(g: Graph, capacity: int) -> None:
    if g.n > capacity:
        raise CapacityError(
            f"brute force refused: n={g.n} exceeds capacity {capacity}"
        )


def _surjective_colorings(g: Graph, k: int):
    """Yield all proper colorings of g using all k colors, in lexicographic
    order of the assignment vector.

    Backtracking prunes assignments that already break properness or can no
    longer reach every color; neither prune changes the set of complete
    colorings visited.
    """
    n = g.n
    assignment = [0] * n
    adj = [sorted(g.neighbors(v)) for v in range(n)]

    def extend(v: int, used: set[int]):
        if v == n:
            if len(used) == k:
                yield Coloring(tuple(assignment), k)
            return
        if k - len(used) > n - v:
            return
        forbidden = {assignment[u] for u in adj[v] if u < v}
        for color in range(1, k + 1):
            if color in forbidden:
                continue
            assignment[v] = color
            added = color not in used
            if added:
                used.add(color)
            yield from extend(v + 1, used)
            if added:
                used.discard(color)
        assignment[v] = 0

    yield from extend(0, set())


def brute_force_bcoloring(
    g: Graph, k: int, capacity: int = DEFAULT_CAPACITY
) -> Coloring | None:
    """First b-coloring of g with k colors in lexicographic order, or None."""
    _check_capacity(g, capacity)
    if k < 1:
        raise InputError(f"number of colors must be positive, got {k}")
    for c in _surjective_colorings(g, k):
        if is_b_coloring(g, c):
            return c
    return None


def brute_force_fallcoloring(
    g: Graph, k: int, capacity: int = DEFAULT_CAPACITY
) -> Coloring | None:
    """First fall coloring of g with k colors in lexicographic order, or None."""
    _check_capacity(g, capacity)
    if k < 1:
        raise InputError(f"number of colors must be positive, got {k}")
    for c in _surjective_colorings(g, k):
        if is_fall_coloring(g, c):
            return c
    return None


def brute_force_chi_b(g: Graph, capacity: int = DEFAULT_CAPACITY) -> int:
    """The b-chromatic number by probing every k in 1..max_degree+1.

    Existence of a k-b-coloring is not monotone in k, so all candidates are
    tried and the largest feasible one returned.
    """
    _check_capacity(g, capacity)
    if g.n < 1:
        raise InputError("b-chromatic number needs at least one vertex")
    best = 0
    for k in range(1, g.max_degree() + 2):
        if brute_force_bcoloring(g, k, capacity) is not None:
            best = k
    return best
