"""End-to-end pipeline: extract, clean, privatize, shadow, audit.

Every intermediate array is validated against its declared cleanliness
predicate and the full structural invariants before the next stage may
consume it; a failure raises :class:`StageError` naming the stage.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, induced
from .shadows import (
    Privatization,
    Shadowing,
    StrongTripleReport,
    build_shadowing,
    privatize,
    strong_triple_audit,
    validate_privatization,
    validate_shadowing,
)
from .structures import Params, find_core
from .templates import (
    AuditReport,
    TemplateArray,
    bound_audit,
    clean1,
    clean2,
    clean3,
    cleanliness_holds,
    extract_template_array,
    validate_template_array,
)


class StageError(RuntimeError):
    def __init__(self, stage: str, problems: list[str]):
        self.stage = stage
        self.problems = problems
        super().__init__(f"stage {stage}: " + "; ".join(problems[:5]))


@dataclass
class PipelineTrace:
    params: Params
    stages: list[tuple[str, TemplateArray, dict]]
    leftover: frozenset[int]
    leftover_core_free: bool
    shadowing: Shadowing
    privatization: Privatization
    audit: AuditReport
    strong_triples: StrongTripleReport

    def final_array(self) -> TemplateArray:
        return self.stages[-1][1]

    def to_json_dict(self) -> dict:
        return {
            "stages": [
                {"name": name, "array": arr.to_json_dict(), "report": report}
                for name, arr, report in self.stages
            ],
            "leftover": sorted(self.leftover),
            "leftover_core_free": self.leftover_core_free,
            "shadowing": self.shadowing.to_json_dict(),
            "privatization": self.privatization.to_json_dict(),
            "audit": self.audit.to_json_dict(),
            "strong_triples": self.strong_triples.to_json_dict(),
        }


def _check_stage(name: str, arr: TemplateArray) -> None:
    problems = validate_template_array(arr)
    if not cleanliness_holds(arr):
        problems.append("declared cleanliness predicate fails")
    if problems:
        raise StageError(name, problems)


def run_pipeline(
    g: Graph, p: Params, limit: int | None = None
) -> PipelineTrace:
    arr, leftover = extract_template_array(g, p, limit=limit)
    _check_stage("extract", arr)
    stages: list[tuple[str, TemplateArray, dict]] = [
        ("extract", arr, {"leftover": sorted(leftover)})
    ]

    arr1, rep1 = clean1(arr, limit=limit)
    _check_stage("clean1", arr1)
    stages.append(("clean1", arr1, rep1))

    arr2, rep2 = clean2(arr1, limit=limit)
    _check_stage("clean2", arr2)
    stages.append(("clean2", arr2, rep2))

    arr3, priv, rep3 = privatize(arr2, limit=limit)
    _check_stage("privatize", arr3)
    priv_problems = validate_privatization(arr3, priv)
    if priv_problems:
        raise StageError("privatize", priv_problems)
    stages.append(("privatize", arr3, rep3))

    arr4, rep4 = clean3(arr3, limit=limit)
    _check_stage("clean3", arr4)
    stages.append(("clean3", arr4, rep4))

    sub, back = induced(g, leftover)
    leftover_core_free = find_core(sub, p.zeta, p.beta, limit=limit) is None

    shadow = build_shadowing(arr4)
    problems = validate_shadowing(arr4, shadow)
    if problems:
        raise StageError("shadow", problems)

    audit = bound_audit(arr4, privatization=priv, limit=limit)
    triples = strong_triple_audit(arr4, shadow, priv, limit=limit)
    return PipelineTrace(
        params=p,
        stages=stages,
        leftover=leftover,
        leftover_core_free=leftover_core_free,
        shadowing=shadow,
        privatization=priv,
        audit=audit,
        strong_triples=triples,
    )
