"""Exact chromatic number, clique number, and the radius-k chromatic measure.

All results here are exact.  Oversized instances are refused with
:class:`InstanceTooLarge`; nothing is silently approximated.  A greedy
DSATUR colouring exists as an internal upper-bound helper only and is
never reported as the chromatic number.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, induced, neighborhood_closed

DEFAULT_SOLVER_LIMIT = 64


class InstanceTooLarge(Exception):
    """Raised when an instance exceeds the exact-solver size limit."""

    def __init__(self, what: str, size: int, limit: int):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: size {size} exceeds solver limit {limit}")


@dataclass(frozen=True)
class Coloring:
    """Per-vertex colours drawn from 0..palette_size-1."""

    colors: tuple[int, ...]
    palette_size: int

    def __post_init__(self):
        if any(c < 0 or c >= self.palette_size for c in self.colors):
            raise ValueError("colour outside palette")


def validate_coloring(g: Graph, c: Coloring) -> bool:
    """True when c assigns every vertex a colour and no edge is monochromatic."""
    if len(c.colors) != g.n:
        raise ValueError(
            f"coloring covers {len(c.colors)} vertices, graph has {g.n}"
        )
    for u in range(g.n):
        for v in g.adj[u]:
            if u < v and c.colors[u] == c.colors[v]:
                return False
    return True


def _check_limit(what: str, size: int, limit: int | None) -> None:
    cap = DEFAULT_SOLVER_LIMIT if limit is None else limit
    if size > cap:
        raise InstanceTooLarge(what, size, cap)


def greedy_coloring(g: Graph) -> Coloring:
    """DSATUR greedy colouring; an upper bound, never reported as chi.

    Ties break toward the highest static degree, then the lowest vertex
    id, so output is reproducible.
    """
    n = g.n
    if n == 0:
        return Coloring((), 0)
    colors = [-1] * n
    neighbor_colors: list[set[int]] = [set() for _ in range(n)]
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] == -1),
            key=lambda u: (len(neighbor_colors[u]), len(g.adj[u]), -u),
        )
        c = 0
        while c in neighbor_colors[v]:
            c += 1
        colors[v] = c
        for w in g.adj[v]:
            if colors[w] == -1:
                neighbor_colors[w].add(c)
    return Coloring(tuple(colors), max(colors) + 1)


def clique_number(
    g: Graph, limit: int | None = None
) -> tuple[int, tuple[int, ...]]:
    """Exact clique number with a witness clique.

    Branch and bound over candidate bitsets with a greedy-colouring
    bound; the search order is fixed, so the witness is deterministic.
    """
    _check_limit("clique_number", g.n, limit)
    n = g.n
    if n == 0:
        return 0, ()
    bits = g.bits
    best_size = 0
    best_set: list[int] = []

    def color_bound(cand: int) -> list[tuple[int, int]]:
        # Greedy colour classes over the candidate set; vertex v may join
        # the first class containing none of its neighbours.  Returns
        # (vertex, colour-count-so-far) in branching order.
        order: list[tuple[int, int]] = []
        classes: list[int] = []
        c = cand
        while c:
            v = (c & -c).bit_length() - 1
            c &= c - 1
            placed = False
            for i, cls in enumerate(classes):
                if not (cls & bits[v]):
                    classes[i] |= 1 << v
                    order.append((v, i + 1))
                    placed = True
                    break
            if not placed:
                classes.append(1 << v)
                order.append((v, len(classes)))
        return order

    def expand(current: list[int], cand: int) -> None:
        nonlocal best_size, best_set
        order = color_bound(cand)
        for v, bound in reversed(order):
            if len(current) + bound <= best_size:
                return
            current.append(v)
            sub = cand & bits[v]
            if not sub:
                if len(current) > best_size:
                    best_size = len(current)
                    best_set = sorted(current)
            else:
                expand(current, sub)
            current.pop()
            cand &= ~(1 << v)

    expand([], (1 << n) - 1)
    return best_size, tuple(best_set)


def _k_colorable(g: Graph, k: int) -> Coloring | None:
    """Backtracking k-colourability with DSATUR branching.

    Symmetry is broken by allowing at most one previously unused colour
    per decision.
    """
    n = g.n
    if k == 0:
        return Coloring((), 0) if n == 0 else None
    colors = [-1] * n
    neighbor_colors: list[set[int]] = [set() for _ in range(n)]

    def pick() -> int | None:
        best = None
        best_key = None
        for u in range(n):
            if colors[u] != -1:
                continue
            key = (len(neighbor_colors[u]), len(g.adj[u]), -u)
            if best_key is None or key > best_key:
                best, best_key = u, key
        return best

    def solve(used: int) -> bool:
        v = pick()
        if v is None:
            return True
        banned = neighbor_colors[v]
        if len(banned) >= k:
            return False
        top = min(used + 1, k)
        for c in range(top):
            if c in banned:
                continue
            colors[v] = c
            touched = []
            for w in g.adj[v]:
                if colors[w] == -1 and c not in neighbor_colors[w]:
                    neighbor_colors[w].add(c)
                    touched.append(w)
            if solve(max(used, c + 1)):
                return True
            colors[v] = -1
            for w in touched:
                neighbor_colors[w].discard(c)
        return False

    if solve(0):
        palette = max(colors) + 1 if colors else 0
        return Coloring(tuple(colors), max(palette, 0))
    return None


def chromatic_number(g: Graph, limit: int | None = None) -> tuple[int, Coloring]:
    """Exact chromatic number with a witness colouring of that size."""
    _check_limit("chromatic_number", g.n, limit)
    if g.n == 0:
        return 0, Coloring((), 0)
    if g.m == 0:
        return 1, Coloring((0,) * g.n, 1)
    lower, _ = clique_number(g, limit=limit)
    upper_col = greedy_coloring(g)
    upper = upper_col.palette_size
    if lower == upper:
        return upper, upper_col
    for k in range(lower, upper):
        col = _k_colorable(g, k)
        if col is not None:
            # Witness palette must be exactly k even when the search used
            # fewer colours than allowed.
            return k, Coloring(col.colors, k)
    return upper, upper_col


def chi_local(g: Graph, k: int, limit: int | None = None) -> int:
    """Maximum chromatic number over all closed distance-k balls.

    The null graph scores 0.  The solver limit applies to the largest
    ball, not to the graph itself.
    """
    if k < 1:
        raise ValueError("radius must be positive")
    if g.n == 0:
        return 0
    balls = [neighborhood_closed(g, v, k) for v in range(g.n)]
    biggest = max(len(b) for b in balls)
    _check_limit(f"chi_local(k={k})", biggest, limit)
    best = 0
    seen: set[frozenset[int]] = set()
    for ball in balls:
        if ball in seen:
            continue
        seen.add(ball)
        sub, _ = induced(g, ball)
        chi, _ = chromatic_number(sub, limit=limit)
        best = max(best, chi)
    return best
