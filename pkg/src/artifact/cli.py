"""Command-line driver: ``cohom1 roots|parabolic|classify|check``."""
from __future__ import annotations

import argparse
import json
import os
import re
import sys

import numpy as np

from .cases import DEFAULT_PHIS, build_manifest
from .cohomone import evaluate_candidate
from .numlin import Mat, is_contained
from .parabolic import build_parabolic, centralizer_chain_check
from .report import emit_report, evaluate_case, run_classification
from .roots import root_name
from .spaces import SpaceSpec, build_space

RING_WIDTH = {"R": 1, "C": 2, "H": 4}


PI_ANGLE = re.compile(r"(?:([0-9.]+)\*?)?pi(?:/([0-9.]+))?")


def parse_phis(text: str) -> list[float]:
    """Comma-separated angles such as 'pi/6,2pi/5,0.9'."""
    out = []
    for tok in text.split(","):
        tok = tok.strip().replace(" ", "")
        if not tok:
            continue
        m = PI_ANGLE.fullmatch(tok)
        if m:
            num = float(m.group(1)) if m.group(1) else 1.0
            den = float(m.group(2)) if m.group(2) else 1.0
            out.append(num * np.pi / den)
        else:
            out.append(float(tok))
    return out


def parse_entry(ring: str, tok: str):
    if ring == "R":
        return float(tok)
    if ring == "C":
        return complex(tok.replace("i", "j"))
    parts = [float(x) for x in tok.split(",")]
    if len(parts) != 4:
        raise ValueError(f"quaternion entry needs 4 components: {tok!r}")
    return parts


def read_basis_file(path: str) -> list[Mat]:
    """One matrix per line: '<ring> <rows>x<cols> <entries row-major>'.

    Real entries are plain numbers, complex entries use Python syntax (1+2j,
    'i' also accepted), quaternion entries are four comma-separated reals.
    Blank lines and lines starting with '#' are ignored.
    """
    mats = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            toks = line.split()
            ring, shape, entries = toks[0].upper(), toks[1], toks[2:]
            if ring not in RING_WIDTH:
                raise ValueError(f"line {lineno}: unknown ring {ring!r}")
            r, c = (int(x) for x in shape.lower().split("x"))
            if len(entries) != r * c:
                raise ValueError(f"line {lineno}: expected {r * c} entries, got {len(entries)}")
            vals = [parse_entry(ring, t) for t in entries]
            if ring == "H":
                data = np.array(vals, dtype=float).reshape(r, c, 4)
            elif ring == "C":
                data = np.array(vals, dtype=complex).reshape(r, c)
            else:
                data = np.array(vals, dtype=float).reshape(r, c)
            mats.append(Mat(data, ring))
    if not mats:
        raise ValueError("basis file is empty")
    return mats


def cmd_roots(args) -> int:
    sp = build_space(args.space)
    d = sp.datum
    out = {
        "space": str(SpaceSpec.parse(args.space)),
        "type": d.type_label,
        "dim_g": sp.algebra.dim,
        "dim_p": sp.split.p.dim,
        "simple_roots": [root_name(l) for l in d.simples],
        "roots": {root_name(l): int(d.multiplicities[l]) for l in d.roots},
    }
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def cmd_parabolic(args) -> int:
    sp = build_space(args.space)
    pd = build_parabolic(sp.datum, args.j)
    out = {
        "space": str(SpaceSpec.parse(args.space)),
        "j": args.j,
        "Sigma_j": [root_name(l) for l in pd.Sigma_j],
        "dims": {name: getattr(pd, name).dim for name in
                 ("a_j", "a_upper", "n_j", "l_j", "m_j", "k_j", "z_j", "g_j", "gtilde_j", "b_j",
                  "compact_part", "q_j")},
        "grading": {str(k): v.dim for k, v in pd.grading.items()},
        "centralizer_chain": centralizer_chain_check(pd),
    }
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def cmd_classify(args) -> int:
    phis = parse_phis(args.phi) if args.phi else list(DEFAULT_PHIS)
    rep = run_classification(args.space, phis, args.seed)
    text = emit_report(rep, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for m in rep.mismatches:
        print(f"MISMATCH {m}", file=sys.stderr)
    return 1 if rep.mismatches else 0


def cmd_check(args) -> int:
    man = build_manifest(args.space, seed=args.seed)
    g = man.space.algebra
    if not os.path.exists(args.subspace):
        try:
            case = man.candidate(args.subspace)
        except KeyError:
            names = ", ".join(c.id for c in man.candidates)
            print(f"unknown case {args.subspace!r}; known: {names}", file=sys.stderr)
            return 2
        if args.j is not None and args.j != case.candidate.j:
            print(f"case {case.id} lives in j={case.candidate.j}", file=sys.stderr)
            return 2
        res = evaluate_case(man, case, np.random.default_rng(args.seed))
        v = res.verdict
        out = {"case": case.id, "j": case.candidate.j, "admissible": v.admissible,
               "protohomogeneous": v.protohomogeneous, "matched_action": v.matched_action,
               "relation": v.relation, "expected": case.expected.as_dict(),
               "mismatches": res.mismatches}
        print(json.dumps(out, indent=2, sort_keys=True))
        return 1 if res.mismatches else 0
    if args.j is None:
        print("--j is required with a basis file", file=sys.stderr)
        return 2
    pd = man.parabolics[args.j]
    v = g.span([g.coords(M) for M in read_basis_file(args.subspace)])
    if v.dim < 2 or not is_contained(v, pd.grading[1]):
        print("subspace must have dimension >= 2 and lie in n_j^1", file=sys.stderr)
        return 2
    verdict = evaluate_candidate(pd, v, np.random.default_rng(args.seed))
    out = {"j": args.j, "dim": v.dim, "admissible": verdict.admissible,
           "protohomogeneous": verdict.protohomogeneous, "normalizer_dim": verdict.normalizer_dim,
           "projection_dim": verdict.projection_dim, "b_dim": verdict.b_dim}
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cohom1", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("roots", help="restricted root data of a space")
    r.add_argument("--space", required=True, help="sl3h, so5c or su:n=<N>")
    r.set_defaults(func=cmd_roots)

    q = sub.add_parser("parabolic", help="maximal parabolic data for a simple root")
    q.add_argument("--space", required=True)
    q.add_argument("--j", type=int, required=True, choices=(1, 2))
    q.set_defaults(func=cmd_parabolic)

    c = sub.add_parser("classify", help="run the full case suite of a space")
    c.add_argument("--space", required=True)
    c.add_argument("--phi", default=None, help="comma-separated interior angles, e.g. pi/6,pi/4")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--format", choices=("json", "md"), default="json")
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_classify)

    k = sub.add_parser("check", help="verdict for one candidate subspace")
    k.add_argument("--space", required=True)
    k.add_argument("--j", type=int, default=None)
    k.add_argument("--subspace", required=True, help="named case or path to a basis file")
    k.add_argument("--seed", type=int, default=0)
    k.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
