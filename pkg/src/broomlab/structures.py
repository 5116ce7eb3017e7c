"""Complete-multipartite cores, dense/mixed vertex classification, and
matching-covered set machinery, plus the five-condition host checker."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graphs import Graph, check_vertex_set, induced, is_stable
from .solvers import (
    DEFAULT_SOLVER_LIMIT,
    InstanceTooLarge,
    chi_local,
    chromatic_number,
)
from .trees import is_T_delta_free

EXHAUSTIVE_SUBSET_LIMIT = 16


@dataclass(frozen=True)
class CoreWitness:
    """b disjoint stable parts of size a, pairwise completely joined."""

    parts: tuple[frozenset[int], ...]

    @property
    def a(self) -> int:
        return len(self.parts[0]) if self.parts else 0

    @property
    def b(self) -> int:
        return len(self.parts)

    def vertices(self) -> frozenset[int]:
        out: frozenset[int] = frozenset()
        for p in self.parts:
            out |= p
        return out


def verify_core(g: Graph, core: CoreWitness, a: int, b: int) -> bool:
    if core.b != b or any(len(p) != a for p in core.parts):
        return False
    seen: set[int] = set()
    for p in core.parts:
        if p & seen:
            return False
        seen |= p
        if not is_stable(g, p):
            return False
    parts = core.parts
    for i in range(b):
        for j in range(i + 1, b):
            for u in parts[i]:
                if not parts[j] <= g.adj[u]:
                    return False
    return True


@dataclass(frozen=True)
class ThetaTable:
    """Non-decreasing integer function as a finite table.

    Arguments beyond the table extend with the last value.  The default
    identity table is an arbitrary choice for experiments; nothing in
    the bounds depends on it.
    """

    values: tuple[int, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("theta table must be nonempty")
        if any(b < a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("theta table must be non-decreasing")

    def __call__(self, a: int) -> int:
        if a < 0:
            raise ValueError("theta argument must be nonnegative")
        return self.values[min(a, len(self.values) - 1)]

    @staticmethod
    def identity(up_to: int = 16) -> "ThetaTable":
        return ThetaTable(tuple(range(up_to + 1)))


@dataclass(frozen=True)
class Params:
    """Shared parameter bundle for the whole pipeline."""

    delta: int = 1
    tau: int = 1
    alpha: int = 1
    beta: int = 2
    zeta: int = 2
    eta: int = 1
    kappa: int = 0
    theta: ThetaTable = field(default_factory=ThetaTable.identity)

    def __post_init__(self):
        if self.delta < 1:
            raise ValueError("delta must be at least 1")
        if self.alpha < 1:
            raise ValueError("alpha must be at least 1")
        if self.beta < 2:
            raise ValueError("beta must be at least 2")
        if min(self.tau, self.zeta, self.eta, self.kappa) < 0:
            raise ValueError("parameters must be nonnegative")

    @staticmethod
    def with_minimal_sides(
        delta: int = 1,
        tau: int = 1,
        alpha: int = 1,
        beta: int = 2,
        theta: ThetaTable | None = None,
    ) -> "Params":
        """Smallest eta and zeta meeting every cleaning pass's side
        conditions: eta >= max(1, delta) and zeta >= max(eta, alpha) + delta."""
        eta = max(1, delta)
        zeta = max(eta, alpha) + delta
        return Params(
            delta=delta,
            tau=tau,
            alpha=alpha,
            beta=beta,
            zeta=zeta,
            eta=eta,
            theta=theta if theta is not None else ThetaTable.identity(),
        )


def find_core(
    g: Graph, a: int, b: int, limit: int | None = None
) -> CoreWitness | None:
    """Search for an (a,b)-core, lexicographically least parts first.

    Parts are built in increasing order of their minimum vertex;
    candidates for part j must be adjacent to every chosen vertex of
    parts before j (cross-completeness pruning).
    """
    if a < 1 or b < 1:
        raise ValueError("core dimensions must be positive")
    cap = DEFAULT_SOLVER_LIMIT if limit is None else limit
    if g.n > cap:
        raise InstanceTooLarge("find_core", g.n, cap)
    if a * b > g.n:
        return None

    adj = g.adj
    parts: list[list[int]] = []

    def build_part(common: list[int], floor: int) -> CoreWitness | None:
        """Choose the next stable a-subset of ``common`` whose minimum
        exceeds ``floor``, then recurse."""
        part: list[int] = []

        def grow(start: int) -> CoreWitness | None:
            if len(part) == a:
                new_common = [
                    v
                    for v in common
                    if v not in part and all(v in adj[u] for u in part)
                ]
                parts.append(part.copy())
                if len(parts) == b:
                    out = CoreWitness(tuple(frozenset(p) for p in parts))
                    parts.pop()
                    return out
                found = build_part(new_common, part[0])
                parts.pop()
                if found:
                    return found
                return None
            for idx in range(start, len(common)):
                v = common[idx]
                if not part and v <= floor:
                    continue
                if any(v in adj[u] for u in part):
                    continue
                part.append(v)
                found = grow(idx + 1)
                if found:
                    return found
                part.pop()
            return None

        return grow(0)

    return build_part(list(range(g.n)), -1)


def is_dense_to(g: Graph, v: int, core: CoreWitness, alpha: int) -> bool:
    """At least alpha neighbours in every part; undefined for core members."""
    g.check_vertex(v)
    if v in core.vertices():
        raise ValueError(f"vertex {v} belongs to the core")
    return all(len(g.adj[v] & part) >= alpha for part in core.parts)


def is_eta_mixed(
    g: Graph, v: int, core: CoreWitness, eta: int, alpha: int
) -> bool:
    """Core members count as mixed; outside vertices must be non-dense
    with at least eta neighbours in some part."""
    g.check_vertex(v)
    if v in core.vertices():
        return True
    if is_dense_to(g, v, core, alpha):
        return False
    return any(len(g.adj[v] & part) >= eta for part in core.parts)


@dataclass(frozen=True)
class MatchingCoverResult:
    ok: bool
    witnesses: dict[int, int]
    offender: int | None = None


def is_matching_covered(g: Graph, x: frozenset[int] | set[int]) -> MatchingCoverResult:
    """Every member needs a private outside neighbour (adjacent to it and
    to no other member).  Witnesses are the lowest eligible ids."""
    xs = check_vertex_set(g, x)
    witnesses: dict[int, int] = {}
    for v in sorted(xs):
        found = None
        for y in sorted(g.adj[v] - xs):
            if len(g.adj[y] & xs) == 1:
                found = y
                break
        if found is None:
            return MatchingCoverResult(False, {}, offender=v)
        witnesses[v] = found
    return MatchingCoverResult(True, witnesses)


@dataclass(frozen=True)
class MatchingCoveredVerdict:
    status: str  # "pass_exhaustive" | "pass_sampled" | "violation"
    violating_set: frozenset[int] | None = None
    violating_chi: int | None = None
    subsets_checked: int = 0


def max_matching_covered_chi(
    g: Graph,
    tau: int,
    exhaustive_limit: int = EXHAUSTIVE_SUBSET_LIMIT,
    sample_budget: int | None = None,
    seed: int = 0,
    limit: int | None = None,
) -> MatchingCoveredVerdict:
    """Scan matching-covered sets for one of chromatic number above tau.

    Exhaustive up to ``exhaustive_limit`` vertices, with subtree pruning:
    once some member loses all private-witness candidates, no superset
    can recover, so the branch dies.  Larger graphs need an explicit
    sampling budget and only earn a sampled verdict.
    """
    n = g.n
    checked = 0

    def chi_of(xs: frozenset[int]) -> int:
        sub, _ = induced(g, xs)
        value, _ = chromatic_number(sub, limit=limit)
        return value

    if n <= exhaustive_limit:
        adj = g.adj
        violation: list[frozenset[int]] = []

        def witness_counts(xs: set[int]) -> dict[int, int]:
            return {
                v: sum(1 for y in adj[v] - xs if len(adj[y] & xs) == 1)
                for v in xs
            }

        def scan(xs: set[int], start: int) -> bool:
            nonlocal checked
            counts = witness_counts(xs)
            if any(c == 0 for c in counts.values()):
                # A member with no private witness never regains one as
                # the set grows, so the whole subtree is dead.
                return False
            if xs:
                checked += 1
                # chi(X) <= |X|, so only sets larger than tau can violate.
                if len(xs) > tau and chi_of(frozenset(xs)) > tau:
                    violation.append(frozenset(xs))
                    return True
            for v in range(start, n):
                xs.add(v)
                if scan(xs, v + 1):
                    return True
                xs.discard(v)
            return False

        if scan(set(), 0):
            bad = violation[0]
            return MatchingCoveredVerdict(
                "violation", bad, chi_of(bad), checked
            )
        return MatchingCoveredVerdict("pass_exhaustive", subsets_checked=checked)

    if sample_budget is None:
        raise ValueError(
            f"graph has {n} > {exhaustive_limit} vertices; supply a sampling budget"
        )
    rng = random.Random(seed)
    for _ in range(sample_budget):
        size = rng.randint(1, max(1, n // 2))
        xs = frozenset(rng.sample(range(n), size))
        if is_matching_covered(g, xs).ok:
            checked += 1
            if chi_of(xs) > tau:
                return MatchingCoveredVerdict("violation", xs, chi_of(xs), checked)
    return MatchingCoveredVerdict("pass_sampled", subsets_checked=checked)


@dataclass(frozen=True)
class ConditionReport:
    """Per-condition verdicts for one host graph under one parameter set."""

    t_free: bool
    chi2: int
    chi2_ok: bool
    matching_covered: MatchingCoveredVerdict
    core_threshold_ok: bool
    core_threshold_details: tuple[tuple[int, bool, bool], ...]
    no_forbidden_core: bool

    @property
    def all_ok(self) -> bool:
        return (
            self.t_free
            and self.chi2_ok
            and self.matching_covered.status.startswith("pass")
            and self.core_threshold_ok
            and self.no_forbidden_core
        )

    def as_dict(self) -> dict:
        return {
            "t_free": self.t_free,
            "chi2": self.chi2,
            "chi2_ok": self.chi2_ok,
            "matching_covered": {
                "status": self.matching_covered.status,
                "violating_set": sorted(self.matching_covered.violating_set)
                if self.matching_covered.violating_set
                else None,
                "subsets_checked": self.matching_covered.subsets_checked,
            },
            "core_threshold_ok": self.core_threshold_ok,
            "core_threshold_details": [
                {"a": a, "chi_exceeds": ex, "core_found": found}
                for a, ex, found in self.core_threshold_details
            ],
            "no_forbidden_core": self.no_forbidden_core,
            "all_ok": self.all_ok,
        }


def check_conditions(
    g: Graph,
    p: Params,
    exhaustive_limit: int = EXHAUSTIVE_SUBSET_LIMIT,
    sample_budget: int | None = None,
    limit: int | None = None,
) -> ConditionReport:
    """Check the five host conditions.

    The core-threshold condition is checked over the finite theta table
    only (the function is otherwise unconstrained), a documented
    narrowing of a universally quantified statement.
    """
    t_free = is_T_delta_free(g, p.delta, limit=limit)
    chi2 = chi_local(g, 2, limit=limit) if g.n else 0
    mc = max_matching_covered_chi(
        g,
        p.tau,
        exhaustive_limit=exhaustive_limit,
        sample_budget=sample_budget,
        limit=limit,
    )
    chi_g, _ = chromatic_number(g, limit=limit)
    details: list[tuple[int, bool, bool]] = []
    ok = True
    for a in range(1, len(p.theta.values)):
        exceeds = chi_g > p.theta(a)
        found = False
        if exceeds:
            found = find_core(g, a, p.beta, limit=limit) is not None
            if not found:
                ok = False
        details.append((a, exceeds, found))
    no_big = find_core(g, p.alpha, p.beta + 1, limit=limit) is None
    return ConditionReport(
        t_free=t_free,
        chi2=chi2,
        chi2_ok=chi2 <= p.tau,
        matching_covered=mc,
        core_threshold_ok=ok,
        core_threshold_details=tuple(details),
        no_forbidden_core=no_big,
    )
