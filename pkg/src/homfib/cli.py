"""Command surface and machine-readable reports.

Every command produces a Report whose JSON rendering is the contract:

    {command, params, valid_up_to, checks: [{name, verdict, witnesses}],
     homology: [{space, degree, free_rank, torsion}], timing_ms}

Reports are deterministic given a document and flags; timing_ms is the one
field outside the byte-for-byte guarantee and is zeroed under --stable.
The process exits 0 exactly when every verdict in the report passed.
HOMFIB_JOBS > 1 spreads the fibration checks over a thread pool; it is the
only environment variable read.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field

from . import borel as bor
from . import subdivision as sub
from .dsl import Document, DslError, parse
from .fibration import weak_fibration_check
from .homology import homology, is_acyclic, is_homology_iso
from .sset import (
    SimplicialMap,
    SimplicialSet,
    is_isomorphism,
    standard_simplex,
    validate,
    validate_map,
)

COMMANDS = ("homology", "check-weakfib", "subdivide", "star-lemma", "barycenter",
            "borel", "classify", "group-completion", "validate")


@dataclass
class Report:
    command: str
    params: dict
    valid_up_to: int
    checks: list[dict] = field(default_factory=list)
    homology: list[dict] = field(default_factory=list)
    timing_ms: int = 0

    @property
    def all_pass(self) -> bool:
        return all(c["verdict"] for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "valid_up_to": self.valid_up_to,
            "checks": self.checks,
            "homology": self.homology,
            "timing_ms": self.timing_ms,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        return cls(data["command"], data["params"], data["valid_up_to"],
                   data["checks"], data["homology"], data["timing_ms"])


def emit(report: Report, fmt: str = "json", stable: bool = False) -> str:
    """Render a report; JSON is the machine contract, text is cosmetic."""
    data = report.to_dict()
    if stable:
        data["timing_ms"] = 0
    if fmt == "json":
        return json.dumps(data, sort_keys=True, separators=(",", ":"))
    lines = [f"command: {report.command}"]
    for key in sorted(report.params):
        lines.append(f"  {key} = {report.params[key]}")
    lines.append(f"valid up to degree {report.valid_up_to}")
    for c in report.checks:
        mark = "PASS" if c["verdict"] else "FAIL"
        witness = f"  [{'; '.join(c['witnesses'])}]" if c["witnesses"] else ""
        lines.append(f"  {mark} {c['name']}{witness}")
    for h in report.homology:
        torsion = " + ".join(f"Z/{d}" for d in h["torsion"])
        free = " + ".join(["Z"] * h["free_rank"])
        group = " + ".join(x for x in (free, torsion) if x) or "0"
        lines.append(f"  H_{h['degree']}({h['space']}) = {group}")
    if not stable:
        lines.append(f"took {report.timing_ms} ms")
    return "\n".join(lines)


def parse_report(text: str) -> Report:
    return Report.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

class CommandError(ValueError):
    pass


def _coefficients(flag: str) -> int:
    if flag == "Z":
        return 0
    if flag.startswith("Z") and flag[1:].isdigit():
        p = int(flag[1:])
        if _is_prime(p):
            return p
    raise CommandError(f"bad coefficient ring {flag!r} (use Z or Zp, p prime)")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _homology_rows(space_name: str, X: SimplicialSet, up_to: int,
                   coefficients: int) -> list[dict]:
    """One row per nontrivial group; absent degrees are zero."""
    rows = []
    for k in range(up_to + 1):
        h = homology(X, k, coefficients)
        if h.is_trivial():
            continue
        rows.append({"space": space_name, "degree": k,
                     "free_rank": h.free_rank, "torsion": list(h.torsion)})
    return rows


def _check(name: str, verdict: bool, witnesses=()) -> dict:
    return {"name": name, "verdict": bool(verdict),
            "witnesses": [str(w) for w in witnesses]}


def _need(doc: Document, table: str, name: str):
    pool = getattr(doc, table)
    if name not in pool:
        raise CommandError(f"no {table[:-1]} named {name!r} in the document")
    return pool[name]


def _standardize(f: SimplicialMap) -> SimplicialMap:
    """Compose with the unique vertex-order isomorphism onto Delta[n]."""
    B = f.target
    n = B.max_dim
    delta = standard_simplex(n)
    if B == delta:
        return f
    tops = B.gens(n)
    if len(tops) != 1:
        raise CommandError("target is not a standard simplex (no unique top cell)")
    order = [v.gen for v in B.vertices_of(B.ref(tops[0]))]
    if len(set(order)) != n + 1:
        raise CommandError("target is not a standard simplex (repeated vertices)")
    position = {v: t for t, v in enumerate(order)}
    assignment = {}
    for g in B.all_gens():
        vs = [r.gen for r in B.vertices_of(B.ref(g))]
        if len(set(vs)) != len(vs) or any(v not in position for v in vs):
            raise CommandError("target is not a standard simplex")
        assignment[g] = delta.ref(tuple(sorted(position[v] for v in vs)))
    iso = SimplicialMap(B, delta, assignment)
    if not is_isomorphism(iso):
        raise CommandError("target is not isomorphic to a standard simplex")
    return iso.compose(f)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def run(command: str, doc: Document, flags: dict) -> Report:
    """Execute one pipeline; deterministic for a fixed document and flags."""
    started = time.monotonic()
    n_bound = int(flags.get("max_dim", 4))
    coefficients = _coefficients(flags.get("coefficients", "Z"))
    deep = bool(flags.get("deep_ops", False))
    jobs = int(flags.get("jobs", 1))
    target = flags.get("target", "")
    params = {"target": target, "max_dim": n_bound,
              "coefficients": flags.get("coefficients", "Z"),
              "deep_ops": deep, "seed": flags.get("seed")}
    checks: list[dict] = []
    rows: list[dict] = []

    if command == "validate":
        valid_up_to = n_bound - 1
        if target in doc.ssets:
            report = validate(doc.ssets[target])
            checks.append(_check(f"sset {target} well-formed", report.ok,
                                 report.problems[:5]))
        elif target in doc.maps:
            report = validate_map(doc.maps[target])
            checks.append(_check(f"map {target} simplicial", report.ok,
                                 report.problems[:5]))
        elif target in doc.diagrams:
            problems = bor.validate_diagram(doc.diagrams[target])
            checks.append(_check(f"diagram {target} lawful", not problems,
                                 problems[:5]))
        elif target in doc.categories:
            problems = bor.validate_category(doc.categories[target])
            checks.append(_check(f"monoid {target} lawful", not problems,
                                 problems[:5]))
        else:
            raise CommandError(f"nothing named {target!r} to validate")

    elif command == "homology":
        X = _need(doc, "ssets", target)
        up_to = min(n_bound, X.max_dim)
        valid_up_to = X.max_dim - 1
        rows = _homology_rows(target, X, up_to, coefficients)

    elif command == "check-weakfib":
        f = _need(doc, "maps", target)
        up_to = max(0, min(n_bound, f.source.max_dim))
        valid_up_to = up_to
        report = weak_fibration_check(f, up_to, deep_ops=deep, jobs=jobs)
        checks.append(_check("weak homology fibration", report.verdict,
                             [f"({c.sigma!r}, {c.op}) at degree "
                              f"{[t.degree for t in c.certificates if not t.ok]}"
                              for c in report.failures()[:5]]))

    elif command == "subdivide":
        X = _need(doc, "ssets", target)
        s = sub.sd(X)
        up_to = min(n_bound, X.max_dim)
        valid_up_to = X.max_dim - 1
        ok, certs = is_homology_iso(s.last_vertex, up_to, coefficients)
        checks.append(_check("last-vertex map is a homology isomorphism", ok,
                             [f"degree {c.degree}" for c in certs if not c.ok]))
        checks.append(_check("subdivision validates", validate(s.space).ok))
        rows = _homology_rows(f"Sd {target}", s.space, up_to, coefficients)

    elif command == "star-lemma":
        f = _standardize(_need(doc, "maps", target))
        sf = sub.sd_over_simplex(f)
        up_to = min(n_bound, f.source.max_dim)
        valid_up_to = f.source.max_dim - 1
        import itertools
        for size in range(1, sf.n + 2):
            for alpha in itertools.combinations(range(sf.n + 1), size):
                try:
                    ret = sub.star_retraction(sf, alpha)
                except ValueError:
                    checks.append(_check(f"alpha={alpha}: ESt empty (skipped)", True))
                    continue
                ri = ret.retraction.compose(ret.inclusion)
                exact_r = all(ri.assignment[g] == ret.fiber.ref(g)
                              for g in ret.fiber.all_gens())
                h0 = ret.homotopy.compose(sub.cylinder_end(ret, 0))
                h1 = ret.homotopy.compose(sub.cylinder_end(ret, 1))
                ir = ret.inclusion.compose(ret.retraction)
                exact_h = (h0.assignment == ir.assignment
                           and all(h1.assignment[g] == ret.est_space.ref(g)
                                   for g in ret.est_space.all_gens()))
                iso, certs = is_homology_iso(ret.inclusion, up_to, coefficients)
                checks.append(_check(f"alpha={alpha}: retraction exact", exact_r))
                checks.append(_check(f"alpha={alpha}: homotopy ends exact", exact_h))
                checks.append(_check(f"alpha={alpha}: fiber inclusion homology iso",
                                     iso,
                                     [f"degree {c.degree}" for c in certs if not c.ok]))

    elif command == "barycenter":
        f = _standardize(_need(doc, "maps", target))
        E = f.source
        up_to = min(n_bound, E.max_dim)
        valid_up_to = E.max_dim - 1
        weak = weak_fibration_check(f, up_to, jobs=jobs)
        checks.append(_check("weak homology fibration", weak.verdict,
                             [f"{c.sigma!r},{c.op}" for c in weak.failures()[:5]]))
        sf = sub.sd_over_simplex(f)
        bp = sub.barycenter_preimage(sf)
        same = all(homology(bp, k, coefficients).summary()
                   == homology(E, k, coefficients).summary()
                   for k in range(up_to + 1))
        checks.append(_check("barycenter preimage matches total space homology",
                             same))
        rows = _homology_rows("barycenter preimage", bp, up_to, coefficients)

    elif command == "borel":
        cat = _need(doc, "categories", target)
        diag = bor.restriction_diagram(cat, "1")
        bc = bor.borel_total(cat, diag, n_bound)
        valid_up_to = n_bound - 1
        checks.append(_check("restriction Borel construction is acyclic",
                             is_acyclic(bc.total.space, valid_up_to)))
        rows = _homology_rows(f"E_{target} M_1", bc.total.space, valid_up_to,
                              coefficients)

    elif command == "classify":
        cat = _need(doc, "categories", target)
        r = bor.classifying_space(cat, n_bound)
        valid_up_to = n_bound - 1
        rows = _homology_rows(f"B{target}", r.space, valid_up_to, coefficients)

    elif command == "group-completion":
        cat = _need(doc, "categories", target)
        if flags.get("diagram"):
            diag = _need(doc, "diagrams", flags["diagram"])
        else:
            diag = bor.restriction_diagram(cat, "1")
        valid_up_to = n_bound - 1
        report = bor.group_completion_check(cat, diag, n_bound)
        for gate in report.gates:
            checks.append(_check(f"gate: {gate.name}", gate.ok,
                                 [str(w) for w in gate.witnesses[:5]]))
        rows = _homology_rows(f"B{target}", report.construction.base.space,
                              valid_up_to, coefficients)

    else:
        raise CommandError(f"unknown command {command!r}")

    took = int((time.monotonic() - started) * 1000)
    return Report(command, params, valid_up_to, checks, rows, took)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="homfib",
        description="homology fibration pipelines over a declaration file")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("target", help="declared name the command operates on")
    ap.add_argument("-f", "--file", required=True, help="declaration file")
    ap.add_argument("--max-dim", type=int, default=4, dest="max_dim",
                    help="truncation bound (default 4)")
    ap.add_argument("--coefficients", default="Z",
                    help="Z or Zp for a prime p (default Z)")
    ap.add_argument("--format", default="text", choices=("json", "text"))
    ap.add_argument("--deep-ops", action="store_true", dest="deep_ops",
                    help="audit all operator words, not just generators")
    ap.add_argument("--seed", default=None,
                    help="recorded for reproducibility of sampling audits")
    ap.add_argument("--stable", action="store_true",
                    help="zero out timing for byte-reproducible output")
    ap.add_argument("--diagram", default=None,
                    help="diagram name for group-completion (default: restriction)")
    args = ap.parse_args(argv)

    try:
        with open(args.file, encoding="utf-8") as fh:
            doc = parse(fh.read())
    except FileNotFoundError:
        print(f"homfib: cannot open {args.file!r}", file=sys.stderr)
        return 2
    except DslError as exc:
        print(f"homfib: {args.file}:{exc}", file=sys.stderr)
        return 2

    flags = {
        "target": args.target,
        "max_dim": args.max_dim,
        "coefficients": args.coefficients,
        "deep_ops": args.deep_ops,
        "seed": args.seed,
        "diagram": args.diagram,
        "jobs": max(1, int(os.environ.get("HOMFIB_JOBS", "1"))),
    }
    try:
        report = run(args.command, doc, flags)
    except (CommandError, ValueError) as exc:
        print(f"homfib: {exc}", file=sys.stderr)
        return 2
    print(emit(report, args.format, stable=args.stable))
    return 0 if report.all_pass else 1


if __name__ == "__main__":
    sys.exit(main())
