"""Broom-shaped pattern trees and exact induced-containment search.

A broom of length k is a k-edge path with extra leaves at the far end;
the near end is the handle.  Multibrooms glue brooms at a shared handle.
The containment search is exact backtracking: induced tree matching in
general hosts is NP-hard, so candidates are pruned hard by degree and by
non-adjacency against already-placed vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graphs import Graph, check_vertex_set
from .solvers import DEFAULT_SOLVER_LIMIT, InstanceTooLarge


@dataclass(frozen=True)
class BroomTag:
    """Which pattern vertices realize one constituent broom."""

    length: int
    leaf_count: int
    path_vertices: tuple[int, ...]  # handle first
    leaf_vertices: tuple[int, ...]


@dataclass(frozen=True)
class PatternTree:
    tree: Graph
    handle: int
    broom_tags: tuple[BroomTag, ...] | None = None

    def __post_init__(self):
        n = self.tree.n
        if n == 0:
            raise ValueError("pattern tree must be nonempty")
        if self.tree.m != n - 1:
            raise ValueError("pattern is not a tree: wrong edge count")
        if len(_bfs_order(self.tree, self.handle)) != n:
            raise ValueError("pattern is not connected")


@dataclass(frozen=True)
class Embedding:
    """Injective pattern-to-host map preserving edges and non-edges."""

    pairs: tuple[tuple[int, int], ...]  # (pattern vertex, host vertex)

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def host_vertices(self) -> frozenset[int]:
        return frozenset(h for _, h in self.pairs)


def verify_embedding(host: Graph, pattern: PatternTree, emb: Embedding) -> bool:
    """Re-check the induced condition edge by edge; used by tests and audits."""
    m = emb.as_dict()
    if len(m) != pattern.tree.n or len(set(m.values())) != len(m):
        return False
    for p in m:
        if not (0 <= p < pattern.tree.n):
            return False
        host.check_vertex(m[p])
    for u in range(pattern.tree.n):
        for v in range(u + 1, pattern.tree.n):
            if (v in pattern.tree.adj[u]) != (m[v] in host.adj[m[u]]):
                return False
    return True


def _bfs_order(g: Graph, root: int) -> list[int]:
    seen = {root}
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(g.adj[u]):
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


def build_broom(k: int, leaves: int) -> PatternTree:
    """Broom of length k with the given leaf count; handle is vertex 0.

    Vertices 0..k form the path, k+1..k+leaves the pendant leaves at the
    far end.
    """
    if k < 1:
        raise ValueError("broom length must be at least 1")
    if leaves < 0:
        raise ValueError("leaf count must be nonnegative")
    edges = [(i, i + 1) for i in range(k)]
    edges += [(k, k + 1 + j) for j in range(leaves)]
    tree = Graph(k + 1 + leaves, edges)
    tag = BroomTag(
        length=k,
        leaf_count=leaves,
        path_vertices=tuple(range(k + 1)),
        leaf_vertices=tuple(range(k + 1, k + 1 + leaves)),
    )
    return PatternTree(tree=tree, handle=0, broom_tags=(tag,))


def build_multibroom(specs: list[tuple[int, int]]) -> PatternTree:
    """Glue brooms at a common handle (vertex 0)."""
    if not specs:
        raise ValueError("multibroom needs at least one broom")
    edges: list[tuple[int, int]] = []
    tags: list[BroomTag] = []
    nxt = 1
    for k, leaves in specs:
        if k < 1:
            raise ValueError("broom length must be at least 1")
        if leaves < 0:
            raise ValueError("leaf count must be nonnegative")
        path = [0] + list(range(nxt, nxt + k))
        nxt += k
        leaf_ids = list(range(nxt, nxt + leaves))
        nxt += leaves
        edges += [(path[i], path[i + 1]) for i in range(k)]
        edges += [(path[-1], leaf) for leaf in leaf_ids]
        tags.append(
            BroomTag(
                length=k,
                leaf_count=leaves,
                path_vertices=tuple(path),
                leaf_vertices=tuple(leaf_ids),
            )
        )
    tree = Graph(nxt, edges)
    return PatternTree(tree=tree, handle=0, broom_tags=tuple(tags))


def build_T(delta: int) -> PatternTree:
    """The target tree: delta (1,delta)-brooms and delta (2,delta)-brooms
    glued at one handle.  Vertex count is 1 + delta*(2*delta+3)."""
    if delta < 1:
        raise ValueError("delta must be at least 1")
    specs = [(1, delta)] * delta + [(2, delta)] * delta
    return build_multibroom(specs)


def contains_induced(
    host: Graph, pattern: PatternTree, limit: int | None = None
) -> Embedding | None:
    """Find an induced embedding of a tree pattern, or None.

    Pattern vertices are placed in BFS order from the handle, so each new
    vertex has exactly one placed neighbour.  Candidates must match that
    neighbour, avoid all other placed vertices' neighbourhoods, and have
    host degree at least the pattern degree.  Ties break to the lowest
    host id, making the returned witness deterministic.
    """
    cap = DEFAULT_SOLVER_LIMIT if limit is None else limit
    if host.n > cap:
        raise InstanceTooLarge("contains_induced", host.n, cap)
    pn = pattern.tree.n
    if pn > host.n:
        return None
    order = _bfs_order(pattern.tree, pattern.handle)
    pos = {p: i for i, p in enumerate(order)}
    parents: list[int | None] = [None] * pn
    for p in order:
        for q in pattern.tree.adj[p]:
            if pos[q] < pos[p]:
                parents[pos[p]] = pos[q]
    pdeg = [len(pattern.tree.adj[p]) for p in order]
    mapping = [-1] * pn

    root_deg = pdeg[0]
    for h in range(host.n):
        if len(host.adj[h]) < root_deg:
            continue
        mapping[0] = h
        if pn == 1 or _place_rest(
            host, pattern, order, parents, pdeg, mapping, 1, 1 << h
        ):
            pairs = tuple(sorted((order[i], mapping[i]) for i in range(pn)))
            return Embedding(pairs)
        mapping[0] = -1
    return None


def _place_rest(
    host: Graph,
    pattern: PatternTree,
    order: list[int],
    parents: list[int | None],
    pdeg: list[int],
    mapping: list[int],
    i: int,
    used: int,
) -> bool:
    if i == len(order):
        return True
    hbits = host.bits
    par = parents[i]
    assert par is not None
    cand = hbits[mapping[par]] & ~used
    for j in range(i):
        if j != par:
            cand &= ~hbits[mapping[j]]
    while cand:
        h = (cand & -cand).bit_length() - 1
        cand &= cand - 1
        if len(host.adj[h]) < pdeg[i]:
            continue
        mapping[i] = h
        if _place_rest(host, pattern, order, parents, pdeg, mapping, i + 1, used | (1 << h)):
            return True
        mapping[i] = -1
    return False


def is_T_delta_free(host: Graph, delta: int, limit: int | None = None) -> bool:
    """True when the host has no induced copy of the delta target tree."""
    pattern = build_T(delta)
    if pattern.tree.n > host.n:
        return True
    return contains_induced(host, pattern, limit=limit) is None


def find_rooted_broom(
    host: Graph,
    handle: int,
    k: int,
    leaves: int,
    allowed: frozenset[int],
    forbidden: frozenset[int] = frozenset(),
    limit: int | None = None,
) -> Embedding | None:
    """Induced (k, leaves)-broom with a fixed handle.

    All non-handle vertices come from ``allowed``; nothing may touch
    ``forbidden``.  Lowest-id choices first.
    """
    cap = DEFAULT_SOLVER_LIMIT if limit is None else limit
    if host.n > cap:
        raise InstanceTooLarge("find_rooted_broom", host.n, cap)
    host.check_vertex(handle)
    allowed = check_vertex_set(host, allowed)
    forbidden = check_vertex_set(host, forbidden)
    if handle in forbidden:
        raise ValueError("handle may not be forbidden")
    if allowed & forbidden:
        raise ValueError("allowed and forbidden overlap")
    if k < 1:
        raise ValueError("broom length must be at least 1")
    pattern = build_broom(k, leaves)
    pool = allowed - {handle}

    path = [handle]

    def extend_path() -> Embedding | None:
        if len(path) == k + 1:
            return pick_leaves()
        tail = path[-1]
        for v in sorted(host.adj[tail] & pool):
            if v in path:
                continue
            # Induced path: the new vertex may touch only the current tail.
            if any(v in host.adj[p] for p in path[:-1]):
                continue
            path.append(v)
            result = extend_path()
            if result is not None:
                return result
            path.pop()
        return None

    def pick_leaves() -> Embedding | None:
        far = path[-1]
        body = set(path)
        cand = sorted(
            v
            for v in host.adj[far] & pool
            if v not in body and not any(v in host.adj[p] for p in path[:-1])
        )
        chosen: list[int] = []

        def pick(start: int) -> bool:
            if len(chosen) == leaves:
                return True
            for idx in range(start, len(cand)):
                v = cand[idx]
                if any(v in host.adj[c] for c in chosen):
                    continue
                chosen.append(v)
                if pick(idx + 1):
                    return True
                chosen.pop()
            return False

        if not pick(0):
            return None
        hosts = path + chosen
        pairs = tuple((p, hosts[p]) for p in range(len(hosts)))
        emb = Embedding(pairs)
        if not verify_embedding(host, pattern, emb):
            return None
        return emb

    return extend_path()


@dataclass(frozen=True)
class AssembleResult:
    embedding: Embedding | None
    pattern: PatternTree | None
    conflict_edge: tuple[int, int] | None = None
    detail: str = ""


def assemble_T_delta(
    host: Graph,
    handle: int,
    pieces: list[tuple[PatternTree, Embedding]],
) -> AssembleResult:
    """Join broom embeddings sharing one handle into a target-tree witness.

    Pieces must be delta (1,delta)-brooms and delta (2,delta)-brooms, all
    mapped onto the same host handle and otherwise vertex-disjoint
    (overlap is an error, not a search failure).  A cross edge between
    two pieces makes the union non-induced; the offending edge is
    reported as a diagnostic.
    """
    host.check_vertex(handle)
    if not pieces:
        raise ValueError("no pieces supplied")
    shapes: list[tuple[int, int]] = []
    maps: list[dict[int, int]] = []
    for pat, emb in pieces:
        if pat.broom_tags is None or len(pat.broom_tags) != 1:
            raise ValueError("each piece must be a single tagged broom")
        tag = pat.broom_tags[0]
        m = emb.as_dict()
        if m.get(pat.handle) != handle:
            raise ValueError("piece does not map its handle to the shared handle")
        if not verify_embedding(host, pat, emb):
            return AssembleResult(
                None, None, detail="piece fails induced re-verification"
            )
        shapes.append((tag.length, tag.leaf_count))
        maps.append(m)

    body_sets = [
        frozenset(h for p, h in m.items() if p != pat.handle)
        for (pat, _), m in zip(pieces, maps)
    ]
    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            overlap = body_sets[i] & body_sets[j]
            if overlap:
                raise ValueError(
                    f"pieces {i} and {j} overlap outside handle: {sorted(overlap)}"
                )

    leaf_counts = {leaves for _, leaves in shapes}
    if len(leaf_counts) != 1:
        return AssembleResult(None, None, detail="mixed leaf counts")
    delta = leaf_counts.pop()
    ones = [i for i, (k, _) in enumerate(shapes) if k == 1]
    twos = [i for i, (k, _) in enumerate(shapes) if k == 2]
    if len(ones) != delta or len(twos) != delta or delta < 1:
        return AssembleResult(
            None,
            None,
            detail=f"need {delta} one-brooms and {delta} two-brooms, "
            f"got {len(ones)} and {len(twos)}",
        )

    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            for u in sorted(body_sets[i]):
                for v in sorted(body_sets[j]):
                    if v in host.adj[u]:
                        return AssembleResult(
                            None,
                            None,
                            conflict_edge=(u, v),
                            detail=f"cross edge between pieces {i} and {j}",
                        )

    pattern = build_T(delta)
    assert pattern.broom_tags is not None
    pairs: list[tuple[int, int]] = [(pattern.handle, handle)]
    ordered_pieces = ones + twos
    for tag, piece_idx in zip(pattern.broom_tags, ordered_pieces):
        pat, _ = pieces[piece_idx]
        assert pat.broom_tags is not None
        src = pat.broom_tags[0]
        m = maps[piece_idx]
        for a, b in zip(
            tag.path_vertices[1:], src.path_vertices[1:]
        ):
            pairs.append((a, m[b]))
        for a, b in zip(tag.leaf_vertices, src.leaf_vertices):
            pairs.append((a, m[b]))
    emb = Embedding(tuple(sorted(pairs)))
    if not verify_embedding(host, pattern, emb):
        return AssembleResult(
            None, None, detail="assembled union failed induced re-verification"
        )
    return AssembleResult(emb, pattern)
