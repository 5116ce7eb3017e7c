"""Exact arbitrary-precision evaluation of every derived bound constant.

Each ledger entry stores its defining formula as a plain Python
expression over the parameter names and earlier entry names, so an
independent evaluator can re-derive every value from the strings alone.
All arithmetic is exact integer arithmetic; the tower entry
``nested.t1 = t2 ** s2`` overflows any fixed-width type for nontrivial
parameters, which is the whole reason the pipeline never runs at the
true constants.

Exponentiation routes through gmpy2 when available (the pure-int
fallback is exact but slow for the largest grid points).
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from typing import Callable

from .structures import Params

try:  # pragma: no cover - exercised implicitly everywhere
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover
    def _mpz(x):  # type: ignore
        return x


def _ipow(base: int, exp: int) -> int:
    return int(_mpz(base) ** _mpz(exp))


# Decimal rendering of truly enormous entries is quadratic-ish and can
# dwarf every other cost; above this many bits we serialize a summary.
SERIALIZE_BITS_CAP = 1 << 21


@dataclass(frozen=True)
class LedgerEntry:
    key: str      # dotted display name, e.g. "strong_contacts.s2"
    value: int
    rule: str     # bound family the entry belongs to
    formula: str  # expression over params and earlier entries

    @property
    def symbol(self) -> str:
        return self.key.replace(".", "_")


@dataclass(frozen=True)
class ConstantsLedger:
    params: Params
    entries: tuple[LedgerEntry, ...]

    def value(self, key: str) -> int:
        for e in self.entries:
            if e.key == key:
                return e.value
        raise KeyError(key)

    def __contains__(self, key: str) -> bool:
        return any(e.key == key for e in self.entries)

    def to_json_dict(self, bits_cap: int = SERIALIZE_BITS_CAP) -> dict:
        out: dict = {
            "params": {
                "delta": self.params.delta,
                "tau": self.params.tau,
                "alpha": self.params.alpha,
                "beta": self.params.beta,
                "zeta": self.params.zeta,
                "eta": self.params.eta,
            },
            "entries": [],
        }
        for e in self.entries:
            bl = e.value.bit_length()
            item = {"key": e.key, "rule": e.rule, "formula": e.formula}
            if bl <= bits_cap:
                if hasattr(sys, "set_int_max_str_digits"):
                    sys.set_int_max_str_digits(max(20000, bl))
                item["decimal"] = str(_mpz(e.value))
            else:
                item["decimal"] = None
                item["bit_length"] = bl
                item["truncated"] = True
            out["entries"].append(item)
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_json_dict(), indent=2, **kw)


def gamma_of(p: Params) -> int:
    return (2 * p.delta * p.tau + 1) * (2 * p.delta + 1)


def epsilon_of(p: Params) -> int:
    return (p.beta + 1) * gamma_of(p) * p.delta


def dense_bound_of(p: Params) -> int:
    return p.alpha * p.tau * _ipow(2, p.beta * p.zeta)


def strong_s_of(p: Params) -> int:
    g = gamma_of(p)
    s3 = 2 * p.delta * p.tau
    s2 = (2 * (p.delta + 1) * g + 1) * s3
    return p.zeta * p.beta * (s2 + g)


def nested_s_of(p: Params) -> int:
    eps = epsilon_of(p)
    s3 = (p.delta * (p.delta + 1) + 1) * eps + p.delta
    s2 = ((2 * p.delta * eps + 1) * p.delta * p.tau + eps) * s3
    s1 = (2 * eps + 1) * p.tau * s2
    return s1 + eps


def nested_side_conditions_ok(p: Params) -> bool:
    eps = epsilon_of(p)
    eta_floor = p.alpha + 2 * (p.delta + 1) ** 3 * (eps + 1) ** 2
    return p.eta >= eta_floor and p.zeta >= p.eta + p.delta


def shadow_chi_bound_of(p: Params, s: int | None = None) -> int:
    """Final unshadowed chromatic bound; s defaults to the nested value
    but callers may substitute an observed degree."""
    if s is None:
        s = nested_s_of(p)
    d, t = p.delta, p.tau
    q = 2 * d + s
    r = (
        (4 * (d + 1) * s + 1) * q * p.zeta * p.beta * t
        * (1 + t * ((q + s) * d * d + (2 * s * (d + 1) + 1) * d * t))
    )
    return 3 * r * s * p.beta * d * p.zeta * t * t


def ledger(p: Params) -> ConstantsLedger:
    """Evaluate the full constant chain exactly for one parameter set."""
    d, t, al, be, ze = p.delta, p.tau, p.alpha, p.beta, p.zeta
    entries: list[LedgerEntry] = []

    def add(key: str, rule: str, formula: str, value: int) -> int:
        entries.append(LedgerEntry(key=key, value=int(value), rule=rule,
                                   formula=formula))
        return int(value)

    gamma = add(
        "gamma", "gamma",
        "(2*delta*tau + 1)*(2*delta + 1)",
        (2 * d * t + 1) * (2 * d + 1),
    )
    epsilon = add(
        "epsilon", "epsilon",
        "(beta + 1)*gamma*delta",
        (be + 1) * gamma * d,
    )
    add(
        "dense_count.bound", "dense_count",
        "alpha*tau*2**(beta*zeta)",
        al * t * _ipow(2, be * ze),
    )
    add(
        "partial_clean2.d", "partial_clean2",
        "gamma*(delta - 1)",
        gamma * (d - 1),
    )

    sc3 = add("strong_contacts.s3", "strong_contacts",
              "2*delta*tau", 2 * d * t)
    sc2 = add("strong_contacts.s2", "strong_contacts",
              "(2*(delta + 1)*gamma + 1)*strong_contacts_s3",
              (2 * (d + 1) * gamma + 1) * sc3)
    sc1 = add("strong_contacts.s1", "strong_contacts",
              "strong_contacts_s2 + gamma", sc2 + gamma)
    add("strong_contacts.s", "strong_contacts",
        "zeta*beta*strong_contacts_s1", ze * be * sc1)

    hs = add("u_high_degree.s", "u_high_degree",
             "2*(2*gamma + 1)*delta*tau + gamma",
             2 * (2 * gamma + 1) * d * t + gamma)
    hq = add("u_high_degree.q", "u_high_degree",
             "2*delta*(2*gamma*(delta + 1) + 1) + gamma",
             2 * d * (2 * gamma * (d + 1) + 1) + gamma)
    hm = add(
        "u_high_degree.m", "u_high_degree",
        "2*u_high_degree_q*zeta*beta"
        "*(1 + (u_high_degree_q + u_high_degree_s)*(delta**2 + 1)"
        " + 2*delta + delta*tau)*tau",
        2 * hq * ze * be
        * (1 + (hq + hs) * (d * d + 1) + 2 * d + d * t) * t,
    )
    add(
        "u_high_degree.ell", "u_high_degree",
        "2*u_high_degree_s*u_high_degree_m*zeta**2*delta"
        "*(2*(delta + 2)*u_high_degree_s + 3)*beta**2*tau**3",
        2 * hs * hm * ze * ze * d
        * (2 * (d + 2) * hs + 3) * be * be * t * t * t,
    )

    # The common-root size bound textually coincides with the entry
    # above; both live in the ledger under distinct keys on purpose.
    crq = add("common_root.q", "common_root",
              "2*delta*(2*gamma*(delta + 1) + 1) + gamma",
              2 * d * (2 * gamma * (d + 1) + 1) + gamma)
    add(
        "common_root.j_size", "common_root",
        "2*common_root_q*zeta*beta"
        "*(1 + (common_root_q + u_high_degree_s)*(delta**2 + 1)"
        " + 2*delta + delta*tau)*tau",
        2 * crq * ze * be
        * (1 + (crq + hs) * (d * d + 1) + 2 * d + d * t) * t,
    )

    ns3 = add("nested.s3", "nested",
              "(delta*(delta + 1) + 1)*epsilon + delta",
              (d * (d + 1) + 1) * epsilon + d)
    ns2 = add("nested.s2", "nested",
              "((2*delta*epsilon + 1)*delta*tau + epsilon)*nested_s3",
              ((2 * d * epsilon + 1) * d * t + epsilon) * ns3)
    ns1 = add("nested.s1", "nested",
              "(2*epsilon + 1)*tau*nested_s2",
              (2 * epsilon + 1) * t * ns2)
    ns = add("nested.s", "nested", "nested_s1 + epsilon", ns1 + epsilon)
    nt4 = add("nested.t4", "nested", "2*delta", 2 * d)
    nt3 = add("nested.t3", "nested", "2*delta*nested_t4", 2 * d * nt4)
    nt2 = add("nested.t2", "nested",
              "(alpha*tau*2**(beta*zeta) + 1)*nested_t3",
              (al * t * _ipow(2, be * ze) + 1) * nt3)
    nt1 = add("nested.t1", "nested", "nested_t2**nested_s2",
              _ipow(nt2, ns2))
    add("nested.t", "nested",
        "1 + 2**nested_s2*delta*tau + nested_t1",
        1 + _ipow(2, ns2) * d * t + nt1)

    sq = add("shadow_chi.q", "shadow_chi", "2*delta + nested_s", 2 * d + ns)
    sr = add(
        "shadow_chi.r", "shadow_chi",
        "(4*(delta + 1)*nested_s + 1)*shadow_chi_q*zeta*beta*tau"
        "*(1 + tau*((shadow_chi_q + nested_s)*delta**2"
        " + (2*nested_s*(delta + 1) + 1)*delta*tau))",
        (4 * (d + 1) * ns + 1) * sq * ze * be * t
        * (1 + t * ((sq + ns) * d * d + (2 * ns * (d + 1) + 1) * d * t)),
    )
    add("shadow_chi.bound", "shadow_chi",
        "3*shadow_chi_r*nested_s*beta*delta*zeta*tau**2",
        3 * sr * ns * be * d * ze * t * t)

    return ConstantsLedger(params=p, entries=tuple(entries))


def reevaluate(lg: ConstantsLedger) -> dict[str, int]:
    """Independently recompute every entry by evaluating its stored
    formula string over the parameters and earlier entries.

    This shares no arithmetic with :func:`ledger`; it reads the strings.
    Values come back as plain ints keyed like the ledger.
    """
    p = lg.params
    env: dict[str, object] = {
        "delta": _mpz(p.delta),
        "tau": _mpz(p.tau),
        "alpha": _mpz(p.alpha),
        "beta": _mpz(p.beta),
        "zeta": _mpz(p.zeta),
        "eta": _mpz(p.eta),
    }
    out: dict[str, int] = {}
    for e in lg.entries:
        value = eval(e.formula, {"__builtins__": {}}, env)  # noqa: S307
        env[e.symbol] = value
        out[e.key] = int(value)
    return out


# One composable bound-transform per pipeline step: the step's bound
# function is psi(transform(c)) where psi comes from the previous step.
PHI_STEPS: dict[str, Callable[..., int]] = {
    "extract": lambda c, *, theta_zeta: c + theta_zeta,
    "partial_clean1": lambda c, *, t: (2 * t + 1) * c,
    "clean1": lambda c, *, t, tau: c + t * tau,
    "partial_clean2": lambda c, *, s: (2 * s + 1) * c,
    "clean2": lambda c, *, t, beta: (c + beta + 1) * t,
    "clean3": lambda c, *, delta, tau, ell: c + delta * tau * tau + ell,
}

PIPELINE_STEP_ORDER = (
    "clean3",
    "clean2",
    "partial_clean2",
    "clean1",
    "partial_clean1",
    "extract",
)


def phi_step(
    theorem: str, c: int, psi: Callable[[int], int] | None = None, **consts
) -> int:
    """Apply one bound-composition step; psi defaults to the identity."""
    if theorem not in PHI_STEPS:
        raise ValueError(f"unknown bound step {theorem!r}")
    if c < 0:
        raise ValueError("argument must be nonnegative")
    inner = PHI_STEPS[theorem](c, **consts)
    return inner if psi is None else psi(inner)


def compose_phi(p: Params, lg: ConstantsLedger | None = None) -> Callable[[int], int]:
    """The full bound function of the cleaning pipeline, composed
    innermost (clean3) to outermost (extract), exactly in pipeline order.

    The nested tower is excluded: its t-fold composition count is the
    astronomically large ledger entry and is never materialized as a
    function.
    """
    lg = lg if lg is not None else ledger(p)
    dense_bound = lg.value("dense_count.bound")
    strong_s = lg.value("strong_contacts.s")
    d2 = lg.value("partial_clean2.d")
    ell = lg.value("u_high_degree.ell")
    t2 = (d2 + 1) * p.beta * p.zeta * p.tau
    consts: dict[str, dict] = {
        "clean3": {"delta": p.delta, "tau": p.tau, "ell": ell},
        "clean2": {"t": t2, "beta": p.beta},
        "partial_clean2": {"s": strong_s},
        "clean1": {"t": dense_bound, "tau": p.tau},
        "partial_clean1": {"t": dense_bound},
        "extract": {"theta_zeta": p.theta(p.zeta)},
    }

    def phi(c: int) -> int:
        x = c
        for step in PIPELINE_STEP_ORDER:
            x = phi_step(step, x, **consts[step])
        return x

    return phi
