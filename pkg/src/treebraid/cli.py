"""Command-line front end.  Every subcommand prints one JSON document."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cubes import BudgetExceeded, NotSufficient, default_budget, integral_cohomology
from .interaction import InteractionVertex, f_vector, is_flag, knt_faces, validate_vertex
from .morse import CriticalCell, enumerate_critical
from .ring import ChangedGenerator, evaluate_product, raag_presentation
from .tree import (RootedPlaneTree, TreeError, build_tree, reembed_binary_core,
                   subdivide_for)
from .verify import budget_hit, run_checks

SCHEMA = "treebraid/1"


class InputError(ValueError):
    pass


def _label(tok: str):
    return int(tok) if tok.lstrip("-").isdigit() else tok


def parse_tree_text(text: str) -> tuple[object, dict]:
    """Parse the ``.tree`` format into (root, children map)."""
    root = None
    children: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("root ") or line == "root":
            parts = line.split()
            if len(parts) != 2 or root is not None:
                raise InputError(f"line {lineno}: expected a single 'root <id>' line")
            root = _label(parts[1])
            continue
        head, sep, rest = line.partition(":")
        if not sep or not head.strip():
            raise InputError(f"line {lineno}: expected '<id>: <child> ...'")
        v = _label(head.strip())
        if v in children:
            raise InputError(f"line {lineno}: vertex {v} listed twice")
        children[v] = [_label(t) for t in rest.split()]
    if root is None:
        raise InputError("missing 'root <id>' line")
    return root, children


def load_tree(path: str) -> tuple[RootedPlaneTree, dict]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    root, children = parse_tree_text(text)
    return build_tree(root, children)


class Job:
    """A loaded tree, subdivided for n, with label translation both ways."""

    def __init__(self, path: str, n: int):
        base, relabel = load_tree(path)
        self.tree, sub = subdivide_for(base, n)
        self.n = n
        self.to_id = {lab: sub[i] for lab, i in relabel.items()}
        self.to_label = {i: lab for lab, i in self.to_id.items()}

    def label(self, v: int):
        return self.to_label.get(v, v)

    def vertex(self, lab):
        if lab not in self.to_id:
            raise InputError(f"unknown vertex {lab!r}")
        return self.to_id[lab]

    def cell(self, c: CriticalCell) -> dict:
        return {"k": c.k, "blocks": [{"x": self.label(b.x), "p": list(b.p), "q": list(b.q)}
                                     for b in c.blocks]}

    def gen(self, v: InteractionVertex) -> dict:
        return {"k": v.k, "x": self.label(v.x), "p": list(v.p), "q": list(v.q)}


def _factors(spec: str, job: Job) -> list[ChangedGenerator]:
    if spec.startswith("@"):
        try:
            spec = Path(spec[1:]).read_text()
        except OSError as exc:
            raise InputError(f"cannot read factors: {exc.strerror}") from None
    try:
        records = json.loads(spec)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid factor JSON: {exc}") from None
    if not isinstance(records, list):
        raise InputError("factors must be a JSON list")
    out = []
    for r in records:
        try:
            v = InteractionVertex(int(r["k"]), job.vertex(r["x"]), tuple(map(int, r["p"])),
                                  tuple(map(int, r["q"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"invalid factor record {r!r}") from exc
        validate_vertex(job.tree, v, job.n)
        out.append(ChangedGenerator(v, bool(r.get("rebased", False))))
    return out


def _coefficients(job: Job, elem, mod: int) -> list[dict]:
    if mod:
        elem = elem.mod(mod)
    return [{"cell": job.cell(c), "coeff": v} for c, v in elem.items()]


def cmd_subdivide(args) -> dict:
    job = Job(args.tree, args.n)
    t = job.tree
    return {"vertex_count": t.vertex_count,
            "children": {str(v): list(t.children[v]) for v in range(t.vertex_count)},
            "vertex_map": {str(k): v for k, v in sorted(job.to_id.items(), key=lambda kv: kv[1])}}


def cmd_critical_cells(args) -> dict:
    job = Job(args.tree, args.n)
    top = len(job.tree.essential) if args.dim is None else args.dim
    cells = {str(m): [job.cell(c) for c in enumerate_critical(job.tree, job.n, m)]
             for m in range(min(top, job.n) + 1)}
    return {"cells": cells, "counts": [len(v) for v in cells.values()]}


def cmd_betti(args) -> dict:
    job = Job(args.tree, args.n)
    h = integral_cohomology(job.tree, job.n, args.budget)
    out = {"betti": h["betti"], "torsion": h["torsion"]}
    if args.oracle != "cubical":
        out["critical"] = [len(enumerate_critical(job.tree, job.n, m))
                           for m in range(len(h["betti"]))]
    return out


def cmd_knt(args) -> dict:
    job = Job(args.tree, args.n)
    faces = knt_faces(job.tree, job.n, args.dim)
    return {"faces": [[[job.gen(v) for v in f] for f in layer] for layer in faces],
            "f_vector": [len(layer) for layer in faces] if args.dim is not None
            else f_vector(job.tree, job.n),
            "is_flag": is_flag(job.tree, job.n)}


def cmd_product(args) -> tuple[dict, int]:
    job = Job(args.tree, args.n)
    if args.factors is None:
        raise InputError("product needs --factors")
    gens = _factors(args.factors, job)
    result = evaluate_product(job.tree, job.n, gens)
    out = {"factors": [dict(job.gen(g.vertex), rebased=g.rebased) for g in gens],
           "coefficients": _coefficients(job, result, args.mod)}
    code = 0
    if args.oracle in ("cubical", "both"):
        from .oracle import Oracle
        ref = Oracle.build(job.tree, job.n, args.budget).product(gens)
        out["oracle"] = {"cubical": _coefficients(job, ref, args.mod), "agrees": ref == result}
        code = 0 if ref == result else 3
    return out, code


def cmd_presentation(args) -> dict:
    job = Job(args.tree, args.n)
    pres = raag_presentation(job.tree, job.n)
    return {"generators": [job.gen(v) for v in pres["generators"]],
            "relations": [[job.gen(a), job.gen(b)] for a, b in pres["relations"]]}


def cmd_embed(args) -> dict:
    base, relabel = load_tree(args.tree)
    t, mp = reembed_binary_core(base)
    inv = {mp[i]: lab for lab, i in relabel.items()}
    return {"root": inv[0],
            "children": {str(inv[v]): [inv[c] for c in t.children[v]] for v in range(t.vertex_count)},
            "text": "root {}\n".format(inv[0]) + "".join(
                f"{inv[v]}: {' '.join(str(inv[c]) for c in t.children[v])}\n"
                for v in range(t.vertex_count) if t.children[v])}


def cmd_verify(args) -> tuple[dict, int]:
    job = Job(args.tree, args.n)
    checks = run_checks(job.tree, job.n, args.oracle, args.budget)
    report = [c.to_json() for c in checks]
    ok = all(c.passed is not False for c in checks)
    code = 0 if ok else 3
    if ok and budget_hit(checks):
        code = 2
    return {"checks": report, "passed": ok and code == 0}, code


COMMANDS = {
    "subdivide": cmd_subdivide,
    "critical-cells": cmd_critical_cells,
    "betti": cmd_betti,
    "knt": cmd_knt,
    "product": cmd_product,
    "presentation": cmd_presentation,
    "embed-binary-core": cmd_embed,
    "verify": cmd_verify,
}


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="treebraid",
                                 description="Cohomology rings of tree braid groups.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("tree", help="path to a .tree file")
    ap.add_argument("--n", type=int, default=2, help="number of strands")
    ap.add_argument("--dim", type=int, default=None, help="maximum dimension to report")
    ap.add_argument("--oracle", choices=["cubical", "blocks", "both", "none"], default=None)
    ap.add_argument("--budget", type=int, default=None, help="cell budget")
    ap.add_argument("--mod", type=int, default=0, help="coefficient modulus, 0 for integers")
    ap.add_argument("--out", default=None, help="write JSON here instead of stdout")
    ap.add_argument("--factors", default=None, help="JSON list of factors, or @file")
    return ap


def dump(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def run(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    if args.oracle is None:
        args.oracle = "both" if args.command == "verify" else "none"
    if args.budget is None:
        args.budget = default_budget()
    doc = {"schema": SCHEMA, "command": args.command, "n": args.n}
    code = 0
    try:
        if args.n < 1 or args.budget < 1 or args.mod < 0:
            raise InputError("need n >= 1, budget >= 1 and mod >= 0")
        res = COMMANDS[args.command](args)
        if isinstance(res, tuple):
            res, code = res
        doc.update(res)
    except BudgetExceeded as exc:
        doc["error"] = {"kind": "budget", "message": str(exc)}
        code = 2
    except (InputError, TreeError, NotSufficient) as exc:
        doc["error"] = {"kind": "domain", "message": str(exc)}
        code = 1
    text = dump(doc)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
