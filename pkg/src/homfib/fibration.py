"""Simplex preimages and homology-fibration checkers.

For p: E -> B and a simplex sigma of B, the preimage dp(sigma) is the
pullback of the representing map Delta[n] -> B along p.  A map is checked
to be a weak homology fibration by testing, for every nondegenerate simplex
and every generating operator, that the canonical comparison map between
dp(sigma) and dp(theta sigma) induces isomorphisms in homology.  Checking
generators only is enough because homology equivalences compose; a full
operator-word audit sits behind the deep_ops flag.

Homotopy fibres are never computed: known fibres are registered explicitly
and compared against vertex preimages, which is what the weak => strong
theorem licenses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any

from .homology import IsoCertificate, homology, is_acyclic, is_homology_iso
from .sset import (
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    canonical_key,
    degenerate,
    pullback,
    representing_map,
    standard_map,
    standard_simplex,
    tuple_into,
)


@dataclass
class PreimageRecord:
    """dp(sigma): the preimage space with its two structure maps."""

    sigma: SimplexRef
    space: SimplicialSet
    base_map: SimplicialMap   # to Delta[n]
    total_map: SimplicialMap  # to E
    comparisons: dict = field(default_factory=dict)


@dataclass
class KnownFiberSpec:
    """A declared fibre for the component of a base vertex."""

    vertex: Any               # a 0-generator of B
    fiber: SimplicialSet
    note: str = ""


class PreimageCalculator:
    """Computes and caches dp(sigma) for one map at one truncation bound."""

    def __init__(self, p: SimplicialMap, max_dim: int | None = None):
        self.p = p
        self.max_dim = max_dim
        self._records: dict[SimplexRef, PreimageRecord] = {}
        self._simplices: dict[int, SimplicialSet] = {}

    def simplex(self, n: int) -> SimplicialSet:
        if n not in self._simplices:
            self._simplices[n] = standard_simplex(n)
        return self._simplices[n]

    def record(self, sigma: SimplexRef) -> PreimageRecord:
        if sigma in self._records:
            return self._records[sigma]
        if not self.p.target.has_ref(sigma):
            raise ValueError(f"simplex {sigma!r} is not in the base")
        n = sigma.dim
        classifying = representing_map(self.p.target, sigma, self.simplex(n))
        bound = self.max_dim
        if bound is None:
            bound = n + self.p.source.max_dim
        pb = pullback(classifying, self.p, bound)
        rec = PreimageRecord(sigma, pb.space, pb.to_left, pb.to_right)
        self._records[sigma] = rec
        return rec

    def comparison(self, rho: SimplexRef, phi: SimplicialMap) -> SimplicialMap:
        """The map dp(rho . phi) -> dp(rho) over phi: Delta[k] -> Delta[m]."""
        dst = self.record(rho)
        tau = classify_image(self.p.target, rho, phi)
        src = self.record(tau)
        assignment = {}
        for g in src.space.all_gens():
            a, b = g
            assignment[g] = tuple_into(dst.space, (phi(a), b))
        return SimplicialMap(src.space, dst.space, assignment)


def classify_image(B: SimplicialSet, rho: SimplexRef, phi: SimplicialMap) -> SimplexRef:
    """The simplex rho . phi, i.e. the image of phi's top simplex under rho-hat."""
    top = tuple(range(phi.source.max_dim + 1))
    rep = representing_map(B, rho, phi.target)
    return rep(phi.assignment[top])


def dp(p: SimplicialMap, sigma: SimplexRef, max_dim: int | None = None,
       with_comparisons: bool = False) -> PreimageRecord:
    """The preimage of a (possibly degenerate) simplex of the base.

    With with_comparisons the record carries the canonical neighbor maps:
    ('d', i) runs dp(d_i sigma) -> dp(sigma), ('s', i) is the section
    dp(sigma) -> dp(s_i sigma).
    """
    calc = PreimageCalculator(p, max_dim)
    rec = calc.record(sigma)
    if with_comparisons:
        for op, rho, phi in _generating_comparisons(calc, sigma):
            rec.comparisons[op] = calc.comparison(rho, phi)
    return rec


def dp_along(p: SimplicialMap, f: SimplicialMap, max_dim: int | None = None):
    """Preimage of an arbitrary map f: K -> B, as a pullback with projections."""
    if f.target != p.target:
        raise ValueError("dp_along needs f and p to share the base")
    return pullback(f, p, max_dim)


# ---------------------------------------------------------------------------
# weak homology fibrations
# ---------------------------------------------------------------------------

@dataclass
class ComparisonCheck:
    sigma: SimplexRef
    op: tuple[str, int] | str
    target: SimplexRef
    ok: bool
    certificates: list[IsoCertificate]


@dataclass
class WeakFibrationReport:
    verdict: bool
    up_to: int
    checks: list[ComparisonCheck]

    def failures(self) -> list[ComparisonCheck]:
        return [c for c in self.checks if not c.ok]


def _generating_comparisons(calc: PreimageCalculator, sigma: SimplexRef):
    """Yield (op, rho, phi) for faces and degeneracies of a base simplex.

    The comparison map produced from (rho, phi) runs dp(rho.phi) -> dp(rho):
    for a face d_i take rho = sigma, phi = delta_i; for a degeneracy s_i
    take rho = s_i sigma and the section phi = delta_i.
    """
    n = sigma.dim
    if n >= 1:
        for i in range(n + 1):
            phi = standard_map(n - 1, n, [v for v in range(n + 1) if v != i],
                               calc.simplex(n - 1), calc.simplex(n))
            yield ("d", i), sigma, phi
    for i in range(n + 1):
        phi = standard_map(n, n + 1, [v for v in range(n + 2) if v != i],
                           calc.simplex(n), calc.simplex(n + 1))
        yield ("s", i), degenerate(sigma, i), phi


def _operator_word_comparisons(calc: PreimageCalculator, sigma: SimplexRef):
    """All monotone operators into [n] from dimensions <= n+1 (audit mode)."""
    n = sigma.dim
    for k in range(n + 2):
        for values in itertools.combinations_with_replacement(range(n + 1), k + 1):
            phi = standard_map(k, n, values, calc.simplex(k), calc.simplex(n))
            yield ("word", values), sigma, phi


def weak_fibration_check(p: SimplicialMap, up_to: int,
                         deep_ops: bool = False,
                         jobs: int = 1) -> WeakFibrationReport:
    """Test the weak homology fibration property on generating operators.

    For a face operator the canonical comparison runs dp(d_i sigma) ->
    dp(sigma); for a degeneracy it is the canonical section dp(sigma) ->
    dp(s_i sigma).  Both count as the comparison between dp(sigma) and
    dp(theta sigma); the predicate is direction-symmetric.  With jobs > 1
    the per-simplex work runs on a thread pool; certificates are merged in
    canonical simplex order either way.
    """
    calc = PreimageCalculator(p, up_to + 1)
    B = p.target
    sigmas = [B.ref(g) for k in range(B.max_dim + 1)
              for g in sorted(B.gens(k), key=canonical_key)]

    def check_sigma(sigma: SimplexRef) -> list[ComparisonCheck]:
        out = []
        gens = _operator_word_comparisons(calc, sigma) if deep_ops \
            else _generating_comparisons(calc, sigma)
        for op, rho, phi in gens:
            f = calc.comparison(rho, phi)
            tau = classify_image(B, rho, phi)
            ok, certs = is_homology_iso(f, up_to)
            target = rho if op[0] == "s" else tau
            out.append(ComparisonCheck(sigma, op, target, ok, certs))
        return out

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            blocks = list(pool.map(check_sigma, sigmas))
    else:
        blocks = [check_sigma(sigma) for sigma in sigmas]
    checks = [c for block in blocks for c in block]
    verdict = all(c.ok for c in checks)
    return WeakFibrationReport(verdict, up_to, checks)


# ---------------------------------------------------------------------------
# pullbacks of fibrations
# ---------------------------------------------------------------------------

@dataclass
class PulledBackMap:
    map: SimplicialMap        # p': E' -> B'
    top: SimplicialMap        # E' -> E
    base_change: SimplicialMap
    assumed_fibration: bool


def pullback_fibration(p: SimplicialMap, f: SimplicialMap,
                       max_dim: int | None = None,
                       assume_fibration: bool = True) -> PulledBackMap:
    """Pull p back along f; the fibration hypothesis on f is caller-supplied."""
    pb = pullback(f, p, max_dim)
    return PulledBackMap(pb.to_left, pb.to_right, f, assume_fibration)


# ---------------------------------------------------------------------------
# contractible bases and known fibres
# ---------------------------------------------------------------------------

@dataclass
class ContractibleBaseReport:
    verdict: bool
    table: list[tuple[int, tuple[int, ...]]]
    checks: list[ComparisonCheck]
    inclusion_checks: list[tuple[SimplexRef, bool]]
    warnings: list[str]


def fiber_homology_over_contractible(p: SimplicialMap, up_to: int) -> ContractibleBaseReport:
    """Over an asserted-contractible base, all preimages share one homology.

    Verifies connectivity and acyclicity of the base (warning on failure),
    runs the generating comparisons, and tests each projection
    dp(sigma) -> E; the common table is the homology of E.
    """
    B, E = p.target, p.source
    warnings = []
    if homology(B, 0).summary() != (1, ()):
        warnings.append("base is not connected")
    if not is_acyclic(B, B.max_dim):
        warnings.append("base is not acyclic through its computable range")
    weak = weak_fibration_check(p, up_to)
    inclusion_checks = []
    verdict = weak.verdict
    calc = PreimageCalculator(p, up_to + 1)
    for k in range(B.max_dim + 1):
        for g in sorted(B.gens(k), key=canonical_key):
            rec = calc.record(B.ref(g))
            ok, _ = is_homology_iso(rec.total_map, up_to)
            inclusion_checks.append((rec.sigma, ok))
            verdict = verdict and ok
    table = [homology(E, k).summary() for k in range(up_to + 1)]
    return ContractibleBaseReport(verdict, table, weak.checks,
                                  inclusion_checks, warnings)


def vertex_components(B: SimplicialSet) -> dict[Any, int]:
    """Connected-component index for the vertices of B."""
    parent = {v: v for v in B.gens(0)}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in B.gens(1):
        a, b = B.faces[e][0].gen, B.faces[e][1].gen
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    reps = {}
    out = {}
    for v in B.gens(0):
        r = find(v)
        if r not in reps:
            reps[r] = len(reps)
        out[v] = reps[r]
    return out


@dataclass
class StrongFiberReport:
    verdict: bool
    fiber_table_ok: bool
    vertex_comparisons: list[tuple[SimplexRef, bool]]
    declared_table: list[tuple[int, tuple[int, ...]]]
    vertex_table: list[tuple[int, tuple[int, ...]]]


def strong_check_via_known_fiber(p: SimplicialMap, spec: KnownFiberSpec,
                                 up_to: int,
                                 weak_verified: bool = True) -> StrongFiberReport:
    """Compare every preimage in a component against a registered fibre.

    Each dp(sigma) is connected to the preimage of sigma's leading vertex by
    the canonical comparison map, and the vertex preimage is compared with
    the declared fibre by homology table; together with the weak property
    this realizes the conclusion of the weak => strong theorem on instances
    whose homotopy fibre is independently known.
    """
    if not weak_verified:
        raise ValueError("run weak_fibration_check first")
    B = p.target
    components = vertex_components(B)
    if spec.vertex not in components:
        raise ValueError(f"unknown base vertex {spec.vertex!r}")
    comp = components[spec.vertex]
    calc = PreimageCalculator(p, up_to + 1)
    declared = [homology(spec.fiber, k).summary() for k in range(up_to + 1)]
    base_rec = calc.record(B.ref(spec.vertex))
    vertex_table = [homology(base_rec.space, k).summary() for k in range(up_to + 1)]
    table_ok = declared == vertex_table
    comparisons = []
    verdict = table_ok
    for k in range(B.max_dim + 1):
        for g in sorted(B.gens(k), key=canonical_key):
            sigma = B.ref(g)
            first_vertex = B.vertices_of(sigma)[0].gen
            if components[first_vertex] != comp:
                continue
            if k == 0:
                rec = calc.record(sigma)
                ok = [homology(rec.space, d).summary() for d in range(up_to + 1)] == declared
            else:
                phi = standard_map(0, k, [0], calc.simplex(0), calc.simplex(k))
                f = calc.comparison(sigma, phi)
                ok, _ = is_homology_iso(f, up_to)
            comparisons.append((sigma, ok))
            verdict = verdict and ok
    return StrongFiberReport(verdict, table_ok, comparisons, declared, vertex_table)
