"""Run a space's full case suite and render the result as JSON or markdown."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np

from .cases import DEFAULT_PHIS, CandidateCase, Manifest, build_manifest, phi_tag
from .cohomone import (
    ActionRecord,
    Verdict,
    build_nilpotent_action,
    compare_actions,
    evaluate_candidate,
    record_ok,
)
from .numlin import is_contained
from .parabolic import centralizer_chain_check
from .roots import root_name
from .spaces import SpaceSpec

FLOAT_DIGITS = 10
LIMITATIONS = (
    "verdicts use connected-group (Lie algebra) data only; K_j versus K_j^0 congruence is not resolved",
    "orbit equivalence is decided by subalgebra or orbit-tangent equality at o",
)


@dataclass
class CandidateResult:
    case: CandidateCase
    verdict: Verdict
    record: ActionRecord | None = None
    checks: dict = field(default_factory=dict)
    mismatches: list = field(default_factory=list)

    @property
    def survivor(self) -> bool:
        return self.verdict.admissible and self.verdict.protohomogeneous


@dataclass
class ClassificationReport:
    space: SpaceSpec
    root_system: dict
    actions: list
    candidates: list
    phis: tuple
    seed: int
    summary: dict = field(default_factory=dict)

    @property
    def mismatches(self) -> list:
        return list(self.summary.get("mismatches", []))

    @property
    def ok(self) -> bool:
        return not self.mismatches


def root_system_summary(man: Manifest) -> dict:
    d = man.space.datum
    g = man.space.algebra
    return {
        "type": d.type_label,
        "rank": d.rank,
        "dim_g": g.dim,
        "dim_p": man.space.split.p.dim,
        "positive_roots": [root_name(l) for l in d.positives],
        "multiplicities": {root_name(l): int(d.multiplicities[l]) for l in d.positives},
        "centralizer_chain": {str(j): centralizer_chain_check(pd) for j, pd in man.parabolics.items()},
    }


def _best_match(record: ActionRecord, actions: list) -> tuple[str | None, str | None]:
    found = None
    for a in actions:
        rel = compare_actions(record, a)
        if rel == "equal_subalgebra":
            return a.id, rel
        if rel == "equal_orbit_tangent" and found is None:
            found = (a.id, rel)
    return found if found else (None, None)


def evaluate_case(man: Manifest, case: CandidateCase, rng: np.random.Generator) -> CandidateResult:
    g = man.space.algebra
    cand = case.candidate
    pd = man.parabolics[cand.j]
    verdict = evaluate_candidate(pd, cand.v, rng)
    res = CandidateResult(case, verdict)
    exp = case.expected
    if exp.admissible is not None and exp.admissible != verdict.admissible:
        res.mismatches.append(f"{cand.label}: admissible {verdict.admissible}, expected {exp.admissible}")
    if exp.protohomogeneous is not None and exp.protohomogeneous != verdict.protohomogeneous:
        res.mismatches.append(
            f"{cand.label}: protohomogeneous {verdict.protohomogeneous}, expected {exp.protohomogeneous}")
    if not res.survivor:
        return res
    v = cand.v
    if case.transport is not None:
        v = g.image(case.transport, cand.v)
        moved = evaluate_candidate(pd, v, rng)
        res.checks["transport_preserves_verdict"] = (
            moved.admissible == verdict.admissible and moved.protohomogeneous == verdict.protohomogeneous)
        res.checks["transport_stays_in_n_j^1"] = is_contained(v, pd.grading[1])
    rec = build_nilpotent_action(pd, v, f"h[{cand.label}]", rng, verdict, cand.params)
    res.record = rec
    res.checks["record_ok"] = record_ok(rec)
    match, rel = _best_match(rec, man.actions)
    res.verdict = replace(verdict, matched_action=match, relation=rel)
    if exp.match is not None and not exp.accepts(match, rel):
        res.mismatches.append(f"{cand.label}: matched {match} by {rel}, expected {exp.match} by {exp.relation}")
    for k, ok in res.checks.items():
        if not ok:
            res.mismatches.append(f"{cand.label}: check {k} failed")
    return res


def run_classification(spec: SpaceSpec | str, phi_samples=DEFAULT_PHIS, seed: int = 0) -> ClassificationReport:
    """Build every action record, evaluate every candidate, and tally the outcome."""
    spec = SpaceSpec.parse(spec) if isinstance(spec, str) else spec
    phis = tuple(float(p) for p in phi_samples)
    man = build_manifest(spec, phis, seed)
    results = []
    for idx, case in enumerate(man.candidates):
        rng = np.random.default_rng([seed, idx])
        results.append(evaluate_case(man, case, rng))
    mismatches = [f"action {a.id}: {k} failed" for a in man.actions
                  for k, v in a.checks.items() if isinstance(v, bool) and not v]
    for r in results:
        mismatches.extend(r.mismatches)
    survivors = [r for r in results if r.survivor]
    unmatched = [r for r in survivors if r.verdict.matched_action is None]
    summary = {
        "actions": len(man.actions),
        "actions_verified": sum(record_ok(a) for a in man.actions),
        "candidates": len(results),
        "admissible_and_protohomogeneous": len(survivors),
        "matched": len(survivors) - len(unmatched),
        "new_actions_from_nilpotent_construction": len(unmatched),
        "mismatches": mismatches,
        "limitations": list(LIMITATIONS),
    }
    return ClassificationReport(spec, root_system_summary(man), list(man.actions), results, phis,
                                seed, summary)


# ----------------------------------------------------------------------------
# rendering


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        v = round(float(x), FLOAT_DIGITS)
        return 0.0 if v == 0 else v
    return x


def action_dict(a: ActionRecord) -> dict:
    return {"id": a.id, "family": a.family, "params": a.params, "singular_codim": a.singular_codim,
            "dim": a.subalgebra.dim, "checks": a.checks}


def candidate_dict(r: CandidateResult) -> dict:
    c = r.case.candidate
    v = r.verdict
    out = {
        "id": c.label,
        "j": c.j,
        "case": c.case,
        "dim": c.v.dim,
        "params": c.params,
        "expected": r.case.expected.as_dict(),
        "verdict": {
            "admissible": v.admissible,
            "protohomogeneous": v.protohomogeneous,
            "normalizer_dim": v.normalizer_dim,
            "projection_dim": v.projection_dim,
            "b_dim": v.b_dim,
        },
        "matched_action": v.matched_action,
        "relation": v.relation,
        "checks": r.checks,
    }
    if r.record is not None:
        out["nilpotent_action"] = {"dim": r.record.subalgebra.dim, "checks": r.record.checks}
    if r.case.note:
        out["note"] = r.case.note
    return out


def report_dict(r: ClassificationReport) -> dict:
    return _plain({
        "space": str(r.space),
        "seed": r.seed,
        "phi_samples": [phi_tag(p) for p in r.phis],
        "root_system": r.root_system,
        "actions": [action_dict(a) for a in r.actions],
        "candidates": [candidate_dict(c) for c in r.candidates],
        "summary": r.summary,
    })


def _yn(b) -> str:
    return "-" if b is None else ("yes" if b else "no")


def _markdown(data: dict) -> str:
    rs = data["root_system"]
    lines = [f"# Cohomogeneity-one classification: {data['space']}", ""]
    lines.append(f"Root system {rs['type']}, rank {rs['rank']}, dim g = {rs['dim_g']}, "
                 f"dim p = {rs['dim_p']}.")
    lines.append("")
    lines.append("| root | multiplicity |")
    lines.append("|---|---|")
    for name, m in rs["multiplicities"].items():
        lines.append(f"| {name} | {m} |")
    lines += ["", "## Actions", "", "| item | family | dim | singular codim | verified |", "|---|---|---|---|---|"]
    for a in data["actions"]:
        ok = all(v for v in a["checks"].values() if isinstance(v, bool))
        codim = "-" if a["singular_codim"] is None else a["singular_codim"]
        lines.append(f"| {a['id']} | {a['family']} | {a['dim']} | {codim} | {_yn(ok)} |")
    lines += ["", "## Nilpotent construction candidates", "",
              "| candidate | j | dim | admissible | protohomogeneous | matched | relation |",
              "|---|---|---|---|---|---|---|"]
    for c in data["candidates"]:
        v = c["verdict"]
        lines.append(f"| {c['id']} | {c['j']} | {c['dim']} | {_yn(v['admissible'])} | "
                     f"{_yn(v['protohomogeneous'])} | {c['matched_action'] or '-'} | "
                     f"{c['relation'] or '-'} |")
    s = data["summary"]
    lines += ["", "## Summary", "",
              f"- new actions from the nilpotent construction: {s['new_actions_from_nilpotent_construction']}",
              f"- actions verified: {s['actions_verified']} of {s['actions']}",
              f"- survivors matched: {s['matched']} of {s['admissible_and_protohomogeneous']}",
              f"- mismatches: {len(s['mismatches'])}"]
    lines += [f"  - {m}" for m in s["mismatches"]]
    lines += [f"- limitation: {t}" for t in s["limitations"]]
    return "\n".join(lines) + "\n"


def emit_report(r: ClassificationReport, format: str = "json") -> str:
    data = report_dict(r)
    if format == "json":
        return json.dumps(data, sort_keys=True, indent=2) + "\n"
    if format in ("md", "markdown"):
        return _markdown(data)
    raise ValueError(f"unknown format {format!r}")


__all__ = [
    "ClassificationReport", "CandidateResult", "run_classification", "emit_report",
    "report_dict", "evaluate_case", "root_system_summary",
]
