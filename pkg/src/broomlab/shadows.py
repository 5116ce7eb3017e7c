"""Shadowings of template arrays, daisy and bunch search, the private
cover construction, privatization, and the strong-triple audit.

A shadowing splits U into blocks, one per template, each block attached
to its template.  A daisy is an induced star with its root in some H,
its eye in U, and its petals inside a single foreign block.  The private
cover construction peels off matching-covered layers of a covered set
until every surviving cover vertex owns an exact number of private
clients; privatization applies it to the Z part of an array.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .constants import nested_s_of, shadow_chi_bound_of
from .graphs import Digraph, Graph, check_vertex_set, induced, is_stable
from .solvers import chromatic_number
from .structures import is_matching_covered
from .templates import (
    Template,
    TemplateArray,
    gallai_roy_color,
    is_2_cleaned,
)


@dataclass(frozen=True)
class Shadowing:
    blocks: tuple[frozenset[int], ...]

    def block_of(self) -> dict[int, int]:
        owner: dict[int, int] = {}
        for i, b in enumerate(self.blocks):
            for v in b:
                owner[v] = i
        return owner

    def to_json_dict(self) -> dict:
        return {"blocks": [sorted(b) for b in self.blocks]}


def validate_shadowing(arr: TemplateArray, s: Shadowing) -> list[str]:
    problems = []
    if len(s.blocks) != arr.size:
        problems.append("block count differs from template count")
        return problems
    union: set[int] = set()
    for i, b in enumerate(s.blocks):
        if b & union:
            problems.append(f"block {i} overlaps an earlier block")
        union |= b
        h = arr.templates[i].h
        for v in sorted(b):
            if not arr.graph.adj[v] & h:
                problems.append(f"block {i} vertex {v} misses template {i}")
    if union != set(arr.u):
        problems.append("blocks do not partition U")
    return problems


def build_shadowing(arr: TemplateArray, strategy: str = "least_index") -> Shadowing:
    """Partition U into per-template blocks.

    ``least_index`` sends each vertex to the first template it touches.
    ``high_degree`` sends each vertex to the first template where its
    neighbour count is maximal, which realizes the heavy-attachment
    shadowing; the choice is validated against its defining constraint
    for vertices with at least (beta+1)*gamma*delta H neighbours.
    """
    g, p = arr.graph, arr.params
    n = arr.size
    hs = arr.h_sets()
    blocks: list[set[int]] = [set() for _ in range(n)]
    if strategy == "least_index":
        for u in sorted(arr.u):
            i = min(i for i in range(n) if g.adj[u] & hs[i])
            blocks[i].add(u)
    elif strategy == "high_degree":
        from .constants import epsilon_of

        eps = epsilon_of(p)
        need = (p.beta + 1) * p.delta
        for u in sorted(arr.u):
            counts = [len(g.adj[u] & hs[i]) for i in range(n)]
            best = max(counts)
            i = counts.index(best)
            blocks[i].add(u)
            if sum(counts) >= eps and best < need:
                raise ValueError(
                    f"vertex {u} has {sum(counts)} H neighbours but no "
                    f"template with {need} of them"
                )
    else:
        raise ValueError(f"unknown shadowing strategy {strategy!r}")
    return Shadowing(tuple(frozenset(b) for b in blocks))


def shadowing_degree(
    arr: TemplateArray, s: Shadowing, x: frozenset[int] | None = None
) -> tuple[int, int | None]:
    """Maximum number of blocks (restricted to x) any array vertex
    touches, with the lowest vertex attaining it."""
    g = arr.graph
    xs = arr.u if x is None else check_vertex_set(g, x)
    best, argmax = 0, None
    for v in sorted(arr.vertices()):
        count = sum(
            1 for b in s.blocks if g.adj[v] & (b & xs)
        )
        if count > best:
            best, argmax = count, v
    return best, argmax


@dataclass(frozen=True)
class Daisy:
    root: int
    eye: int
    petals: frozenset[int]
    root_index: int
    petal_index: int

    def vertices(self) -> frozenset[int]:
        return self.petals | {self.root, self.eye}

    def to_json_dict(self) -> dict:
        return {
            "root": self.root,
            "eye": self.eye,
            "petals": sorted(self.petals),
            "root_index": self.root_index,
            "petal_index": self.petal_index,
        }


def validate_daisy(
    arr: TemplateArray,
    s: Shadowing,
    d: Daisy,
    x: frozenset[int] | None = None,
) -> list[str]:
    g, p = arr.graph, arr.params
    problems = []
    if len(d.petals) != p.delta:
        problems.append("petal count is not delta")
    if d.root not in arr.templates[d.root_index].h:
        problems.append("root outside its declared template")
    if d.eye not in arr.u:
        problems.append("eye outside U")
    if d.petal_index == d.root_index:
        problems.append("petal block equals root template")
    if not d.petals <= s.blocks[d.petal_index]:
        problems.append("petals leave their block")
    if x is not None and not (d.petals | {d.eye}) <= x:
        problems.append("daisy leaves the restriction set")
    h_all = arr.h_union()
    if (d.petals | {d.eye}) & h_all:
        problems.append("eye or petal inside H")
    if d.eye not in g.adj[d.root]:
        problems.append("eye not adjacent to root")
    for q in d.petals:
        if q not in g.adj[d.eye]:
            problems.append("petal not adjacent to eye")
        if q in g.adj[d.root]:
            problems.append("petal adjacent to root")
    if not is_stable(g, d.petals):
        problems.append("petals not stable")
    return problems


def find_daisy(
    arr: TemplateArray, s: Shadowing, x: frozenset[int] | None = None
) -> Daisy | None:
    """Exhaustive daisy search inside H union x, lowest choices first."""
    g, p = arr.graph, arr.params
    xs = arr.u if x is None else check_vertex_set(g, x) & arr.u
    owner = s.block_of()
    h_owner: dict[int, int] = {}
    for i, t in enumerate(arr.templates):
        for v in t.h:
            h_owner[v] = i
    for eye in sorted(xs):
        roots = sorted(v for v in g.adj[eye] if v in h_owner)
        petal_pool = sorted(
            v for v in g.adj[eye] if v in xs and v != eye
        )
        for root in roots:
            i = h_owner[root]
            by_block: dict[int, list[int]] = {}
            for q in petal_pool:
                j = owner.get(q)
                if j is None or j == i:
                    continue
                if q in g.adj[root]:
                    continue
                by_block.setdefault(j, []).append(q)
            for j in sorted(by_block):
                cand = by_block[j]
                picked = _stable_subset(g, cand, p.delta)
                if picked is not None:
                    return Daisy(
                        root=root,
                        eye=eye,
                        petals=frozenset(picked),
                        root_index=i,
                        petal_index=j,
                    )
    return None


def _stable_subset(g: Graph, cand: list[int], need: int) -> list[int] | None:
    chosen: list[int] = []

    def grow(start: int) -> bool:
        if len(chosen) == need:
            return True
        for k in range(start, len(cand)):
            v = cand[k]
            if any(v in g.adj[c] for c in chosen):
                continue
            chosen.append(v)
            if grow(k + 1):
                return True
            chosen.pop()
        return False

    return chosen if grow(0) else None


def validate_bunch(
    arr: TemplateArray,
    s: Shadowing,
    daisies: tuple[Daisy, ...],
    x: frozenset[int] | None = None,
) -> list[str]:
    g = arr.graph
    problems = []
    block_ids = [d.petal_index for d in daisies]
    if len(set(block_ids)) != len(block_ids):
        problems.append("petal blocks are not distinct")
    root_indices = {d.root_index for d in daisies}
    if len(root_indices) != 1:
        problems.append("roots do not share a template index")
    elif root_indices & set(block_ids):
        problems.append("root template index collides with a petal block")
    for d in daisies:
        problems += validate_daisy(arr, s, d, x)
    for a, b in combinations(daisies, 2):
        sa = a.petals | {a.eye}
        sb = b.petals | {b.eye}
        if sa & sb:
            problems.append("eye/petal sets intersect")
        if any(q in g.adj[v] for v in sa for q in sb):
            problems.append("edge between eye/petal sets")
        if any(q in g.adj[a.root] for q in b.petals):
            problems.append("root adjacent to a foreign petal")
        if any(q in g.adj[b.root] for q in a.petals):
            problems.append("root adjacent to a foreign petal")
    return problems


def find_bunch(
    arr: TemplateArray,
    s: Shadowing,
    count: int,
    x: frozenset[int] | None = None,
) -> tuple[Daisy, ...] | None:
    """Search for ``count`` daisies with distinct petal blocks, a common
    root template not among those blocks, and full pairwise separation."""
    if count < 1:
        raise ValueError("count must be positive")
    g, p = arr.graph, arr.params
    xs = arr.u if x is None else check_vertex_set(g, x) & arr.u
    owner = s.block_of()
    n = arr.size

    def daisies_for(i: int, j: int) -> list[Daisy]:
        out = []
        for eye in sorted(xs):
            roots = sorted(v for v in g.adj[eye] if v in arr.templates[i].h)
            cand_all = sorted(
                q
                for q in g.adj[eye]
                if q in xs and owner.get(q) == j
            )
            for root in roots:
                cand = [q for q in cand_all if q not in g.adj[root]]
                for petals in combinations(cand, p.delta):
                    if all(
                        b not in g.adj[a] for a, b in combinations(petals, 2)
                    ):
                        out.append(
                            Daisy(root, eye, frozenset(petals), i, j)
                        )
        return out

    def compatible(d: Daisy, chosen: list[Daisy]) -> bool:
        sd = d.petals | {d.eye}
        for c in chosen:
            sc = c.petals | {c.eye}
            if sd & sc:
                return False
            if any(q in g.adj[v] for v in sd for q in sc):
                return False
            if any(q in g.adj[d.root] for q in c.petals):
                return False
            if any(q in g.adj[c.root] for q in d.petals):
                return False
        return True

    for i in range(n):
        blocks = [j for j in range(n) if j != i and s.blocks[j] & xs]
        if len(blocks) < count:
            continue
        chosen: list[Daisy] = []

        def pick(start: int) -> bool:
            if len(chosen) == count:
                return True
            for k in range(start, len(blocks)):
                j = blocks[k]
                for d in daisies_for(i, j):
                    if compatible(d, chosen):
                        chosen.append(d)
                        if pick(k + 1):
                            return True
                        chosen.pop()
            return False

        if pick(0):
            return tuple(chosen)
    return None


# ---------------------------------------------------------------------------
# Private cover and privatization


@dataclass(frozen=True)
class PrivateCover:
    a_prime: frozenset[int]
    b_prime: frozenset[int]
    decomposition: tuple[frozenset[int], ...]


def private_cover(
    g: Graph, a: frozenset[int], b: frozenset[int], d: int
) -> PrivateCover:
    """Peel d matching-covered layers off a covered set.

    Level by level: shrink the cover greedily in increasing vertex order
    while it still covers what remains, then hand every surviving cover
    vertex its lowest private client.  The construction guarantees:
    the shrunken cover still covers b minus the peeled part, each peeled
    vertex keeps at most one cover neighbour, and every cover vertex
    owns exactly d peeled clients.
    """
    a = check_vertex_set(g, a)
    b = check_vertex_set(g, b)
    if a & b:
        raise ValueError("cover and covered sets must be disjoint")
    if d < 0:
        raise ValueError("layer count must be nonnegative")
    for v in sorted(b):
        if not g.adj[v] & a:
            raise ValueError(f"vertex {v} is not covered")

    a_prime = set(a)
    b_prime: set[int] = set()
    layers: list[frozenset[int]] = []
    for _ in range(d):
        remaining = b - b_prime
        # Greedy minimization: drop cover vertices in increasing order
        # whenever the rest still covers the remaining clients.
        for u in sorted(a_prime):
            trial = a_prime - {u}
            if all(g.adj[v] & trial for v in remaining):
                a_prime.discard(u)
        layer = set()
        for u in sorted(a_prime):
            private = sorted(
                v
                for v in g.adj[u] & remaining
                if len(g.adj[v] & a_prime) == 1
            )
            # Minimality guarantees at least one private client.
            layer.add(private[0])
        layers.append(frozenset(layer))
        b_prime |= layer
    return PrivateCover(
        a_prime=frozenset(a_prime),
        b_prime=frozenset(b_prime),
        decomposition=tuple(layers),
    )


def verify_private_cover(
    g: Graph, a: frozenset[int], b: frozenset[int], d: int, pc: PrivateCover
) -> list[str]:
    problems = []
    if not pc.a_prime <= a or not pc.b_prime <= b:
        problems.append("outputs leave their source sets")
    for v in sorted(b - pc.b_prime):
        if not g.adj[v] & pc.a_prime:
            problems.append(f"vertex {v} lost its cover")
    if len(pc.decomposition) != d:
        problems.append("wrong number of layers")
    union: frozenset[int] = frozenset()
    for layer in pc.decomposition:
        union |= layer
        if not is_matching_covered(g, layer).ok:
            problems.append("layer is not matching-covered")
    if union != pc.b_prime:
        problems.append("layers do not union to the peeled set")
    for v in sorted(pc.b_prime):
        if len(g.adj[v] & pc.a_prime) > 1:
            problems.append(f"peeled vertex {v} keeps several cover neighbours")
    for u in sorted(pc.a_prime):
        if len(g.adj[u] & pc.b_prime) != d:
            problems.append(f"cover vertex {u} owns {len(g.adj[u] & pc.b_prime)} != {d} clients")
    return problems


@dataclass(frozen=True)
class Privatization:
    pi: frozenset[int]
    private_neighbor: tuple[tuple[int, int], ...]  # (pi vertex, Z vertex)
    cover_decomposition: tuple[frozenset[int], ...]
    b_source: frozenset[int]

    def neighbor_map(self) -> dict[int, int]:
        return dict(self.private_neighbor)

    def to_json_dict(self) -> dict:
        return {
            "pi": sorted(self.pi),
            "private_neighbor": {str(k): v for k, v in self.private_neighbor},
            "cover_decomposition": [sorted(s) for s in self.cover_decomposition],
            "b_source": sorted(self.b_source),
        }


def validate_privatization(arr: TemplateArray, p: Privatization) -> list[str]:
    g = arr.graph
    z = arr.z_union()
    y = arr.y_union()
    problems = []
    nm = p.neighbor_map()
    for v in sorted(p.pi):
        zn = g.adj[v] & z
        if len(zn) != 1:
            problems.append(f"pi vertex {v} has {len(zn)} Z neighbours")
        elif nm.get(v) not in zn:
            problems.append(f"pi vertex {v} maps to a non-neighbour")
        if g.adj[v] & y:
            problems.append(f"pi vertex {v} touches a core")
    quota = arr.params.delta * arr.params.tau
    for u in sorted(z):
        if len(g.adj[u] & p.pi) != quota:
            problems.append(
                f"Z vertex {u} has {len(g.adj[u] & p.pi)} != {quota} pi neighbours"
            )
    return problems


def privatize(
    arr: TemplateArray, limit: int | None = None
) -> tuple[TemplateArray, Privatization, dict]:
    """Apply the private cover to the Z part of a 2-cleaned array.

    The clients are the U vertices with no core neighbour; peeling
    delta*tau layers leaves a shrunken array whose surviving Z vertices
    each own exactly delta*tau private U vertices.  The chromatic cost
    of the peeled set is recorded exactly when computable.
    """
    if not is_2_cleaned(arr):
        raise ValueError("privatize requires a 2-cleaned array")
    g, p = arr.graph, arr.params
    z = arr.z_union()
    y = arr.y_union()
    b = frozenset(u for u in arr.u if not g.adj[u] & y)
    for v in sorted(b):
        if not g.adj[v] & z:
            raise ValueError(
                f"corrupt array: U vertex {v} has neighbours in neither Y nor Z"
            )
    quota = p.delta * p.tau
    pc = private_cover(g, z, b, quota)
    pi = frozenset(v for v in pc.b_prime if g.adj[v] & pc.a_prime)
    pairs = tuple(
        (v, min(g.adj[v] & pc.a_prime)) for v in sorted(pi)
    )
    new_templates = tuple(
        Template(
            core=t.core,
            h=frozenset((t.h & pc.a_prime) | t.core.vertices()),
        )
        for t in arr.templates
    )
    new_u = (arr.u - pc.b_prime) | pi
    out = TemplateArray(
        graph=g,
        templates=new_templates,
        u=new_u,
        params=p,
        cleanliness=arr.cleanliness,
        partial2_degree=arr.partial2_degree,
    )
    priv = Privatization(
        pi=pi,
        private_neighbor=pairs,
        cover_decomposition=pc.decomposition,
        b_source=pc.b_prime,
    )
    cap = 64 if limit is None else limit

    def chi_or_none(verts: frozenset[int]) -> int | None:
        if len(verts) > cap:
            return None
        sub, _ = induced(g, verts)
        return chromatic_number(sub, limit=limit)[0]

    chi_u_before = chi_or_none(arr.u)
    chi_rest = chi_or_none(out.u - pi)
    chi_peeled = chi_or_none(pc.b_prime)
    report = {
        "pass": "privatize",
        "quota": quota,
        "pi_size": len(pi),
        "peeled": sorted(pc.b_prime),
        "chi_u_before": chi_u_before,
        "chi_u_after_minus_pi": chi_rest,
        "chi_peeled": chi_peeled,
        "claimed_subtraction": p.delta * p.tau * p.tau,
        "unconditional_inequality_holds": (
            None
            if None in (chi_u_before, chi_rest, chi_peeled)
            else chi_rest >= chi_u_before - chi_peeled
        ),
    }
    return out, priv, report


# ---------------------------------------------------------------------------
# Strong triples


@dataclass(frozen=True)
class StrongTripleReport:
    triples_by_base: dict[int, tuple[tuple[int, int, int], ...]]
    packing_by_base: dict[int, int]
    r_bound: int
    chi_unprivatized: int | None
    chi_bound: int
    orientation_palette: int
    orientation_proper: bool

    def to_json_dict(self) -> dict:
        return {
            "triples_by_base": {
                str(i): [list(t) for t in ts]
                for i, ts in self.triples_by_base.items()
            },
            "packing_by_base": {str(i): c for i, c in self.packing_by_base.items()},
            "r_bound": self.r_bound,
            "chi_unprivatized": self.chi_unprivatized,
            "chi_bound": self.chi_bound,
            "orientation_palette": self.orientation_palette,
            "orientation_proper": self.orientation_proper,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def strong_triple_audit(
    arr: TemplateArray,
    s: Shadowing,
    priv: Privatization,
    limit: int | None = None,
) -> StrongTripleReport:
    """Enumerate strong triples over the unprivatized blocks and run the
    earlier-to-later orientation check.

    Base index i is strong to (a, b, c) when i precedes all three,
    a precedes c, some adjacent pair (u, v) sits in blocks i and a, u
    has delta stable block-b neighbours, and v has delta stable block-c
    neighbours avoiding u.  Counts are compared against the (enormous)
    derived bound; the orientation digraph directs cross-block edges
    from earlier to later blocks and must colour properly by longest
    path.
    """
    g, p = arr.graph, arr.params
    n = arr.size
    rest = [b - priv.pi for b in s.blocks]
    delta = p.delta

    def has_stable_neighbors(v: int, pool: frozenset[int], avoid: int | None) -> bool:
        cand = sorted(
            q for q in g.adj[v] & pool if avoid is None or q not in g.adj[avoid]
        )
        return _stable_subset(g, cand, delta) is not None

    triples: dict[int, list[tuple[int, int, int]]] = {}
    for i in range(n):
        found: list[tuple[int, int, int]] = []
        for a in range(i + 1, n):
            pairs = [
                (u, v)
                for u in sorted(rest[i])
                for v in sorted(g.adj[u] & rest[a])
            ]
            if not pairs:
                continue
            for b in range(i + 1, n):
                for c in range(a + 1, n):
                    if any(
                        has_stable_neighbors(u, rest[b], None)
                        and has_stable_neighbors(v, rest[c], u)
                        for u, v in pairs
                    ):
                        found.append((a, b, c))
        if found:
            triples[i] = found

    packing: dict[int, int] = {}
    for i, ts in triples.items():
        used: set[int] = set()
        count = 0
        for a, b, c in sorted(ts):
            if {a, b, c} & used:
                continue
            used |= {a, b, c}
            count += 1
        packing[i] = count

    s_obs = max(shadowing_degree(arr, s, arr.u - priv.pi)[0], 1)
    r_bound = _r_bound(p, max(s_obs, nested_s_of(p)))

    owner = {}
    for i, b in enumerate(rest):
        for v in b:
            owner[v] = i
    arcs = []
    verts = sorted(owner)
    pos = {v: k for k, v in enumerate(verts)}
    for u in verts:
        for v in sorted(g.adj[u]):
            if v in owner and owner[v] > owner[u]:
                arcs.append((pos[u], pos[v]))
    dg = Digraph(len(verts), arcs)
    col = gallai_roy_color(dg)
    proper = all(
        col.colors[pos[u]] != col.colors[pos[v]]
        for u in verts
        for v in g.adj[u]
        if v in owner and owner[v] != owner[u]
    )

    rest_union = arr.u - priv.pi
    cap = 64 if limit is None else limit
    chi_rest = None
    if len(rest_union) <= cap:
        sub, _ = induced(g, rest_union)
        chi_rest = chromatic_number(sub, limit=limit)[0]
    return StrongTripleReport(
        triples_by_base={i: tuple(ts) for i, ts in triples.items()},
        packing_by_base=packing,
        r_bound=r_bound,
        chi_unprivatized=chi_rest,
        chi_bound=shadow_chi_bound_of(p),
        orientation_palette=col.palette_size,
        orientation_proper=proper,
    )


def _r_bound(p, s: int) -> int:
    d, t = p.delta, p.tau
    q = 2 * d + s
    return (
        (4 * (d + 1) * s + 1) * q * p.zeta * p.beta * t
        * (1 + t * ((q + s) * d * d + (2 * s * (d + 1) + 1) * d * t))
    )
