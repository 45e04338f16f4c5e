"""Finite truncated simplicial sets in Eilenberg-Zilber normal form.

Every simplex is stored as a nondegenerate generator together with a
degeneracy word.  A word is a strictly decreasing tuple (i_1 > ... > i_k)
standing for the composite s_{i_1} s_{i_2} ... s_{i_k}; the EZ lemma makes
this representation unique, so equality of simplices is equality of
(generator, word) pairs.  All operator arithmetic goes through the
simplicial identities against this single convention.

A SimplicialSet records, per degree 0..max_dim, a finite set of generator
identifiers and, for each generator of positive degree, the tuple of its
faces d_0..d_n as SimplexRefs.  Degrees above max_dim are truncated away;
degenerate simplices above the bound still exist implicitly through words.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator


# ---------------------------------------------------------------------------
# Degeneracy words
# ---------------------------------------------------------------------------

def word_is_normal(word: tuple[int, ...]) -> bool:
    """True if the tuple is strictly decreasing and nonnegative."""
    return all(a > b for a, b in zip(word, word[1:])) and all(a >= 0 for a in word)


def word_insert(word: tuple[int, ...], j: int) -> tuple[int, ...]:
    """Normal form of s_j applied on the outside of the word.

    Uses s_j s_i = s_{i+1} s_j for j <= i to bubble s_j inward.
    """
    out = []
    rest = list(word)
    while rest and j <= rest[0]:
        out.append(rest.pop(0) + 1)
    out.append(j)
    out.extend(rest)
    return tuple(out)


def word_face(word: tuple[int, ...], i: int) -> tuple[tuple[int, ...], int | None]:
    """Push d_i through the word.

    Returns (new_word, residual_face_index).  The residual index is None
    when the face is absorbed by a degeneracy (d_i s_i = d_i s_{i-1}... = id).
    """
    out = []
    rest = list(word)
    while rest:
        j = rest[0]
        if i < j:
            out.append(j - 1)
            rest.pop(0)
        elif i == j or i == j + 1:
            return tuple(out + rest[1:]), None
        else:
            out.append(j)
            rest.pop(0)
            i -= 1
    return tuple(out), i


# ---------------------------------------------------------------------------
# Simplex references
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimplexRef:
    """A simplex: degeneracy word applied to a nondegenerate generator."""

    gen: Any
    word: tuple[int, ...] = ()
    dim: int = 0

    def is_degenerate(self) -> bool:
        return bool(self.word)

    def gen_dim(self) -> int:
        return self.dim - len(self.word)

    def __repr__(self):
        if not self.word:
            return f"<{self.gen}>"
        w = " ".join(f"s{a}" for a in self.word)
        return f"<{w} {self.gen}>"


def canonical_key(x) -> tuple:
    """Total deterministic ordering key across the identifier types we use."""
    if isinstance(x, SimplexRef):
        return (3, canonical_key(x.gen), x.word)
    if isinstance(x, tuple):
        return (2, tuple(canonical_key(t) for t in x))
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, frozenset):
        return (2, tuple(sorted(canonical_key(t) for t in x)))
    return (9, repr(x))


def degenerate(ref: SimplexRef, j: int) -> SimplexRef:
    """Apply s_j to a simplex, keeping normal form."""
    if not 0 <= j <= ref.dim:
        raise IndexError(f"s_{j} out of range for dimension {ref.dim}")
    return SimplexRef(ref.gen, word_insert(ref.word, j), ref.dim + 1)


def apply_degeneracies(ref: SimplexRef, word: Iterable[int]) -> SimplexRef:
    """Apply a (normal) degeneracy word outside an arbitrary simplex."""
    word = tuple(word)
    for a in reversed(word):
        ref = degenerate(ref, a)
    return ref


# ---------------------------------------------------------------------------
# Simplicial sets
# ---------------------------------------------------------------------------

class SimplicialSet:
    """A finite simplicial set truncated at max_dim.

    generators: per-degree tuples of identifiers (canonically sorted).
    faces: generator -> tuple of SimplexRefs (d_0..d_n), degree n >= 1.
    Instances are treated as immutable after construction.
    """

    def __init__(self, max_dim: int,
                 generators: dict[int, Iterable[Any]],
                 faces: dict[Any, tuple[SimplexRef, ...]]):
        self.max_dim = max_dim
        self.generators = {
            k: tuple(sorted(generators.get(k, ()), key=canonical_key))
            for k in range(max_dim + 1)
        }
        self.faces = dict(faces)
        self.dim_of = {}
        for k, gs in self.generators.items():
            for g in gs:
                if g in self.dim_of:
                    raise ValueError(f"duplicate generator identifier {g!r}")
                self.dim_of[g] = k
        self._cache: dict = {}

    # -- basic queries ------------------------------------------------------

    def gens(self, k: int) -> tuple:
        if k < 0 or k > self.max_dim:
            return ()
        return self.generators.get(k, ())

    def all_gens(self) -> Iterator[Any]:
        for k in range(self.max_dim + 1):
            yield from self.gens(k)

    def gen_count(self) -> int:
        return sum(len(self.gens(k)) for k in range(self.max_dim + 1))

    def counts(self) -> tuple[int, ...]:
        return tuple(len(self.gens(k)) for k in range(self.max_dim + 1))

    def ref(self, gen: Any, word: tuple[int, ...] = ()) -> SimplexRef:
        return SimplexRef(gen, word, self.dim_of[gen] + len(word))

    def has_ref(self, ref: SimplexRef) -> bool:
        d = self.dim_of.get(ref.gen)
        return (d is not None and d + len(ref.word) == ref.dim
                and word_is_normal(ref.word)
                and (not ref.word or ref.word[0] <= ref.dim - 1))

    def is_empty(self) -> bool:
        return self.gen_count() == 0

    def refs_of_dim(self, n: int) -> Iterator[SimplexRef]:
        """All simplices (degenerate included) of dimension n."""
        for p in range(min(n, self.max_dim) + 1):
            for word in itertools.combinations(range(n - 1, -1, -1), n - p):
                for g in self.gens(p):
                    yield SimplexRef(g, word, n)

    # -- operators ----------------------------------------------------------

    def face(self, ref: SimplexRef, i: int) -> SimplexRef:
        """d_i of any simplex, in normal form."""
        if ref.dim == 0:
            raise IndexError("a vertex has no faces")
        if not 0 <= i <= ref.dim:
            raise IndexError(f"d_{i} out of range for dimension {ref.dim}")
        word, residual = word_face(ref.word, i)
        if residual is None:
            return SimplexRef(ref.gen, word, ref.dim - 1)
        entry = self.faces[ref.gen][residual]
        return apply_degeneracies(entry, word)

    def apply_word(self, ref: SimplexRef, ops: Iterable[tuple[str, int]]) -> SimplexRef:
        """Apply a sequence of ('d', i) / ('s', i) operators, outermost last."""
        for kind, i in ops:
            ref = self.face(ref, i) if kind == "d" else degenerate(ref, i)
        return ref

    def vertices_of(self, ref: SimplexRef) -> tuple[SimplexRef, ...]:
        """The ordered tuple of vertices of a simplex."""
        out = []
        for v in range(ref.dim + 1):
            r = ref
            for i in range(ref.dim, -1, -1):
                if i != v:
                    r = self.face(r, i)
            out.append(r)
        return tuple(out)

    def __eq__(self, other):
        return (isinstance(other, SimplicialSet)
                and self.max_dim == other.max_dim
                and self.generators == other.generators
                and self.faces == other.faces)

    def __repr__(self):
        return f"SimplicialSet(max_dim={self.max_dim}, counts={self.counts()})"


def apply_operator(X: SimplicialSet, ref: SimplexRef, op: tuple[str, int]) -> SimplexRef:
    """Apply a single generating operator ('d', i) or ('s', i)."""
    kind, i = op
    if kind == "d":
        return X.face(ref, i)
    if kind == "s":
        return degenerate(ref, i)
    raise ValueError(f"unknown operator kind {kind!r}")


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

@dataclass
class ValidationReport:
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __repr__(self):
        if self.ok:
            return "ValidationReport(ok)"
        return "ValidationReport(\n  " + "\n  ".join(self.problems) + "\n)"


def validate(X: SimplicialSet) -> ValidationReport:
    """Check face references and the simplicial identities on every generator."""
    report = ValidationReport()
    for k in range(1, X.max_dim + 1):
        for g in X.gens(k):
            entries = X.faces.get(g)
            if entries is None or len(entries) != k + 1:
                report.problems.append(f"{g!r}: expected {k + 1} faces")
                continue
            for i, r in enumerate(entries):
                if r.dim != k - 1:
                    report.problems.append(f"{g!r}: d_{i} has dimension {r.dim}, want {k - 1}")
                elif not X.has_ref(r):
                    report.problems.append(f"{g!r}: d_{i} dangles ({r!r})")
    if report.problems:
        return report
    for k in range(2, X.max_dim + 1):
        for g in X.gens(k):
            ref = X.ref(g)
            for j in range(1, k + 1):
                for i in range(j):
                    left = X.face(X.face(ref, j), i)
                    right = X.face(X.face(ref, i), j - 1)
                    if left != right:
                        report.problems.append(
                            f"{g!r}: d_{i} d_{j} = {left!r} but d_{j-1} d_{i} = {right!r}")
    return report


# ---------------------------------------------------------------------------
# Simplicial maps
# ---------------------------------------------------------------------------

class SimplicialMap:
    """A map of simplicial sets given by generator-wise SimplexRef images."""

    def __init__(self, source: SimplicialSet, target: SimplicialSet,
                 assignment: dict[Any, SimplexRef]):
        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        for g, r in self.assignment.items():
            if source.dim_of[g] != r.dim:
                raise ValueError(f"image of {g!r} has dimension {r.dim}, want {source.dim_of[g]}")

    def __call__(self, ref: SimplexRef) -> SimplexRef:
        return apply_degeneracies(self.assignment[ref.gen], ref.word)

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """self after other."""
        assignment = {g: self(other.assignment[g]) for g in other.assignment}
        return SimplicialMap(other.source, self.target, assignment)

    def __eq__(self, other):
        return (isinstance(other, SimplicialMap)
                and self.source == other.source and self.target == other.target
                and self.assignment == other.assignment)

    def __repr__(self):
        return f"SimplicialMap({len(self.assignment)} generators)"


def identity_map(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, {g: X.ref(g) for g in X.all_gens()})


def constant_map(X: SimplicialSet, Y: SimplicialSet, vertex: Any) -> SimplicialMap:
    v = Y.ref(vertex)
    assignment = {g: apply_degeneracies(v, tuple(range(X.dim_of[g] - 1, -1, -1)))
                  for g in X.all_gens()}
    return SimplicialMap(X, Y, assignment)


def validate_map(f: SimplicialMap) -> ValidationReport:
    """Check that f commutes with every face operator, generator-wise."""
    report = ValidationReport()
    X, Y = f.source, f.target
    for k in range(1, X.max_dim + 1):
        for g in X.gens(k):
            img = f.assignment.get(g)
            if img is None:
                report.problems.append(f"{g!r}: no image assigned")
                continue
            if not Y.has_ref(img):
                report.problems.append(f"{g!r}: image {img!r} not in target")
                continue
            for i in range(k + 1):
                lhs = f(X.face(X.ref(g), i))
                rhs = Y.face(img, i)
                if lhs != rhs:
                    report.problems.append(
                        f"{g!r}: f(d_{i} x) = {lhs!r} but d_{i} f(x) = {rhs!r}")
    for g in X.gens(0):
        if g not in f.assignment:
            report.problems.append(f"{g!r}: no image assigned")
    return report


def is_isomorphism(f: SimplicialMap) -> bool:
    """True when f is a bijection on nondegenerate generators in each degree.

    Empty degrees beyond either truncation bound are ignored.
    """
    X, Y = f.source, f.target
    top = max(X.max_dim, Y.max_dim)
    cx = X.counts() + (0,) * (top - X.max_dim)
    cy = Y.counts() + (0,) * (top - Y.max_dim)
    if cx != cy:
        return False
    for k in range(X.max_dim + 1):
        images = set()
        for g in X.gens(k):
            r = f.assignment[g]
            if r.is_degenerate():
                return False
            images.add(r.gen)
        if images != set(Y.gens(k)):
            return False
    return validate_map(f).ok


# ---------------------------------------------------------------------------
# Standard simplices
# ---------------------------------------------------------------------------

def standard_simplex(n: int) -> SimplicialSet:
    """Delta[n]: nondegenerate k-simplices are the (k+1)-subsets of {0..n}."""
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    generators = {k: [tuple(c) for c in itertools.combinations(range(n + 1), k + 1)]
                  for k in range(n + 1)}
    faces = {}
    for k in range(1, n + 1):
        for S in generators[k]:
            faces[S] = tuple(SimplexRef(S[:i] + S[i + 1:], (), k - 1)
                             for i in range(k + 1))
    return SimplicialSet(n, generators, faces)


def boundary(n: int) -> SimplicialSet:
    """The boundary of Delta[n]: everything but the top generator."""
    if n < 1:
        raise ValueError("the boundary of a point is empty")
    full = standard_simplex(n)
    generators = {k: full.gens(k) for k in range(n)}
    faces = {g: full.faces[g] for k in range(1, n) for g in full.gens(k)}
    return SimplicialSet(n - 1, generators, faces)


def monotone_of_ref(ref: SimplexRef) -> tuple[int, ...]:
    """Decode a simplex of a standard simplex into its monotone vertex map.

    The generator must be a tuple of vertices (as produced by
    standard_simplex); the word contributes duplications.
    """
    vs = list(ref.gen)
    for a in reversed(ref.word):
        vs = vs[: a + 1] + vs[a:]
    return tuple(vs)


def ref_from_monotone(values: Iterable[int]) -> SimplexRef:
    """Encode a monotone vertex sequence as a standard-simplex SimplexRef."""
    vs = tuple(values)
    gen = tuple(sorted(set(vs)))
    word = tuple(t for t in range(len(vs) - 1) if vs[t] == vs[t + 1])[::-1]
    return SimplexRef(gen, word, len(vs) - 1)


def standard_map(m: int, n: int, values: Iterable[int],
                 source: SimplicialSet | None = None,
                 target: SimplicialSet | None = None) -> SimplicialMap:
    """The simplicial map Delta[m] -> Delta[n] induced by a monotone map."""
    vs = tuple(values)
    if len(vs) != m + 1 or any(a > b for a, b in zip(vs, vs[1:])):
        raise ValueError("need a monotone sequence of length m+1")
    src = source if source is not None else standard_simplex(m)
    tgt = target if target is not None else standard_simplex(n)
    assignment = {}
    for g in src.all_gens():
        assignment[g] = ref_from_monotone(tuple(vs[v] for v in g))
    return SimplicialMap(src, tgt, assignment)


def representing_map(B: SimplicialSet, ref: SimplexRef,
                     domain: SimplicialSet | None = None) -> SimplicialMap:
    """The map Delta[n] -> B classifying a (possibly degenerate) n-simplex."""
    n = ref.dim
    dom = domain if domain is not None else standard_simplex(n)
    assignment = {}
    for g in dom.all_gens():
        r = ref
        for i in range(n, -1, -1):
            if i not in g:
                r = B.face(r, i)
        assignment[g] = r
    return SimplicialMap(dom, B, assignment)


# ---------------------------------------------------------------------------
# Products and pullbacks
# ---------------------------------------------------------------------------

def factor_common(refs: tuple[SimplexRef, ...]) -> tuple[tuple[int, ...], tuple[SimplexRef, ...]]:
    """EZ normal form of a simplex tuple: extract the common outer word.

    A tuple is degenerate exactly when every component word shares an index;
    repeatedly stripping the largest shared index yields the normal form.
    """
    refs = list(refs)
    outer: list[int] = []
    while True:
        common = set(refs[0].word)
        for r in refs[1:]:
            common &= set(r.word)
        if not common:
            break
        c = max(common)
        outer.append(c)
        refs = [SimplexRef(r.gen,
                           tuple(a - 1 if a > c else a for a in r.word if a != c),
                           r.dim - 1)
                for r in refs]
    return tuple(outer), tuple(refs)


@dataclass
class ProductResult:
    space: SimplicialSet
    projections: tuple[SimplicialMap, ...]


def tuple_into(space: SimplicialSet, refs: tuple[SimplexRef, ...],
               component: Any = None) -> SimplexRef:
    """Normalize a simplex tuple into a SimplexRef of a product-style space.

    Generators of such spaces are ref tuples (optionally tagged with a
    disjoint-union component).
    """
    word, core = factor_common(refs)
    gen = core if component is None else (component, core)
    return apply_degeneracies(space.ref(gen), word)


def product_many(spaces: list[SimplicialSet], N: int | None = None) -> ProductResult:
    """Categorical product truncated at N, with projections.

    Nondegenerate n-simplices are tuples of n-simplices of the factors whose
    degeneracy words have no index in common.
    """
    if not spaces:
        pt = SimplicialSet(0, {0: ["*"]}, {})
        return ProductResult(pt, ())
    if N is None:
        N = sum(X.max_dim for X in spaces)
    generators: dict[int, list] = {k: [] for k in range(N + 1)}
    faces = {}
    for n in range(N + 1):
        pools = [list(X.refs_of_dim(n)) for X in spaces]
        for combo in itertools.product(*pools):
            common = set(combo[0].word)
            for r in combo[1:]:
                common &= set(r.word)
            if common:
                continue
            generators[n].append(tuple(combo))
    P = SimplicialSet(N, generators, {})
    for n in range(1, N + 1):
        for gen in P.gens(n):
            entries = []
            for i in range(n + 1):
                pieces = tuple(X.face(r, i) for X, r in zip(spaces, gen))
                entries.append(tuple_into(P, pieces))
            faces[gen] = tuple(entries)
    P.faces.update(faces)
    projections = []
    for t, X in enumerate(spaces):
        projections.append(SimplicialMap(P, X, {g: g[t] for g in P.all_gens()}))
    return ProductResult(P, tuple(projections))


def product(X: SimplicialSet, Y: SimplicialSet, N: int | None = None) -> ProductResult:
    return product_many([X, Y], N)


@dataclass
class PullbackResult:
    space: SimplicialSet
    to_left: SimplicialMap
    to_right: SimplicialMap


def pullback(f: SimplicialMap, g: SimplicialMap, N: int | None = None) -> PullbackResult:
    """Levelwise fiber product of f and g over their common target."""
    if f.target is not g.target and f.target != g.target:
        raise ValueError("pullback legs must share a target")
    X, Y = f.source, g.source
    if N is None:
        N = X.max_dim + Y.max_dim
    generators: dict[int, list] = {k: [] for k in range(N + 1)}
    for n in range(N + 1):
        by_image: dict[SimplexRef, list[SimplexRef]] = {}
        for a in X.refs_of_dim(n):
            by_image.setdefault(f(a), []).append(a)
        for b in Y.refs_of_dim(n):
            for a in by_image.get(g(b), ()):
                if not (set(a.word) & set(b.word)):
                    generators[n].append((a, b))
    P = SimplicialSet(N, generators, {})
    faces = {}
    for n in range(1, N + 1):
        for gen in P.gens(n):
            a, b = gen
            entries = []
            for i in range(n + 1):
                entries.append(tuple_into(P, (X.face(a, i), Y.face(b, i))))
            faces[gen] = tuple(entries)
    P.faces.update(faces)
    to_left = SimplicialMap(P, X, {g: g[0] for g in P.all_gens()})
    to_right = SimplicialMap(P, Y, {g: g[1] for g in P.all_gens()})
    return PullbackResult(P, to_left, to_right)


# ---------------------------------------------------------------------------
# Colimits
# ---------------------------------------------------------------------------

@dataclass
class PushoutResult:
    space: SimplicialSet
    from_left: SimplicialMap   # from the cofibration's codomain X
    from_right: SimplicialMap  # from Y


def pushout(i: SimplicialMap, j: SimplicialMap) -> PushoutResult:
    """Pushout of X <-i- A -j-> Y where i is injective on generators.

    The cofibration leg must send generators to distinct nondegenerate
    generators; the result keeps Y whole and adjoins the generators of X
    outside the image, rerouting faces through j.
    """
    A, X, Y = i.source, i.target, j.target
    if j.source is not A and j.source != A:
        raise ValueError("pushout legs must share a source")
    image = {}
    for a in A.all_gens():
        r = i.assignment[a]
        if r.is_degenerate():
            raise ValueError(f"cofibration leg degenerates generator {a!r}")
        if r.gen in image:
            raise ValueError(f"cofibration leg is not injective at {r.gen!r}")
        image[r.gen] = a
    kept = [g for g in X.all_gens() if g not in image]
    collide = set(kept) & set(Y.all_gens())
    xid = (lambda g: ("x", g)) if collide else (lambda g: g)
    yid = (lambda g: ("y", g)) if collide else (lambda g: g)

    N = max(X.max_dim, Y.max_dim)
    generators: dict[int, list] = {k: [] for k in range(N + 1)}
    for g in Y.all_gens():
        generators[Y.dim_of[g]].append(yid(g))
    for g in kept:
        generators[X.dim_of[g]].append(xid(g))
    P = SimplicialSet(N, generators, {})

    def route_x(r: SimplexRef) -> SimplexRef:
        a = image.get(r.gen)
        if a is None:
            return SimplexRef(xid(r.gen), r.word, r.dim)
        return apply_degeneracies(route_y(j.assignment[a]), r.word)

    def route_y(r: SimplexRef) -> SimplexRef:
        return SimplexRef(yid(r.gen), r.word, r.dim)

    faces = {}
    for g in Y.all_gens():
        if Y.dim_of[g] >= 1:
            faces[yid(g)] = tuple(route_y(r) for r in Y.faces[g])
    for g in kept:
        if X.dim_of[g] >= 1:
            faces[xid(g)] = tuple(route_x(r) for r in X.faces[g])
    P.faces.update(faces)
    from_left = SimplicialMap(X, P, {g: route_x(X.ref(g)) for g in X.all_gens()})
    from_right = SimplicialMap(Y, P, {g: route_y(Y.ref(g)) for g in Y.all_gens()})
    return PushoutResult(P, from_left, from_right)


def disjoint_union(spaces: list[SimplicialSet]) -> tuple[SimplicialSet, list[SimplicialMap]]:
    """Coproduct with injections; component t is tagged (t, generator)."""
    N = max((X.max_dim for X in spaces), default=0)
    generators: dict[int, list] = {k: [] for k in range(N + 1)}
    faces = {}
    for t, X in enumerate(spaces):
        for g in X.all_gens():
            generators[X.dim_of[g]].append((t, g))
        for g in X.all_gens():
            if X.dim_of[g] >= 1:
                faces[(t, g)] = tuple(SimplexRef((t, r.gen), r.word, r.dim)
                                      for r in X.faces[g])
    P = SimplicialSet(N, generators, faces)
    injections = [
        SimplicialMap(X, P, {g: SimplexRef((t, g), (), X.dim_of[g]) for g in X.all_gens()})
        for t, X in enumerate(spaces)
    ]
    return P, injections


def full_subcomplex(X: SimplicialSet, keep: Iterable[Any]) -> SimplicialSet:
    """The subcomplex on a face-closed set of generators (checked)."""
    keep = set(keep)
    for g in keep:
        k = X.dim_of[g]
        if k >= 1:
            for r in X.faces[g]:
                if r.gen not in keep:
                    raise ValueError(f"generator set not face-closed at {g!r}")
    generators = {k: [g for g in X.gens(k) if g in keep] for k in range(X.max_dim + 1)}
    faces = {g: X.faces[g] for g in keep if X.dim_of[g] >= 1}
    return SimplicialSet(X.max_dim, generators, faces)


def inclusion_map(sub: SimplicialSet, X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(sub, X, {g: X.ref(g) for g in sub.all_gens()})


# ---------------------------------------------------------------------------
# Presentation complexes and suspensions
# ---------------------------------------------------------------------------

def presentation_complex(letters: list[str], relators: list[list[str]]) -> SimplicialSet:
    """The 2-complex of a group presentation.

    One vertex, one loop edge per letter.  A relator is a list of tokens,
    a bare letter or letter + '-' for its inverse.  Inverse letters get an
    auxiliary loop edge tied to the original by a triangle through the
    degenerate edge, which identifies its homology class with the negative.
    Each relator of length L >= 1 is filled by a fan of L triangles around a
    hub vertex; lengths 1 and 2 need no special casing because hub spokes
    subdivide the disc (the fan uses L genuine spoke edges even then).
    """
    v = "v"
    generators: dict[int, list] = {0: [v], 1: [], 2: []}
    faces: dict[Any, tuple] = {}
    vertex = SimplexRef(v, (), 0)
    deg_edge = SimplexRef(v, (0,), 1)
    inverses = sorted({tok[:-1] for rel in relators for tok in rel if tok.endswith("-")})
    for a in letters:
        generators[1].append(("e", a))
        faces[("e", a)] = (vertex, vertex)
    for a in inverses:
        if a not in letters:
            raise ValueError(f"unknown letter {a!r} in relator")
        generators[1].append(("einv", a))
        faces[("einv", a)] = (vertex, vertex)
        generators[2].append(("inv", a))
        faces[("inv", a)] = (
            SimplexRef(("e", a), (), 1), deg_edge, SimplexRef(("einv", a), (), 1))
    for r, rel in enumerate(relators):
        if not rel:
            raise ValueError("empty relator")
        L = len(rel)
        hub = ("hub", r)
        generators[0].append(hub)
        hub_ref = SimplexRef(hub, (), 0)
        for t in range(L):
            generators[1].append(("spoke", r, t))
            faces[("spoke", r, t)] = (vertex, hub_ref)
        for t, tok in enumerate(rel):
            if tok.endswith("-"):
                edge = SimplexRef(("einv", tok[:-1]), (), 1)
            else:
                if tok not in letters:
                    raise ValueError(f"unknown letter {tok!r} in relator")
                edge = SimplexRef(("e", tok), (), 1)
            generators[2].append(("tri", r, t))
            faces[("tri", r, t)] = (
                edge,
                SimplexRef(("spoke", r, (t + 1) % L), (), 1),
                SimplexRef(("spoke", r, t), (), 1))
    return SimplicialSet(2, generators, faces)


def suspension(X: SimplicialSet) -> tuple[SimplicialSet, SimplicialMap]:
    """Unreduced suspension: the cylinder on X with each end collapsed.

    Returns the suspension together with its projection to Delta[1]
    (pole 0 to vertex 0, pole 1 to vertex 1).
    """
    if X.is_empty():
        raise ValueError("cannot suspend the empty simplicial set")
    interval = standard_simplex(1)
    cyl = product(X, interval, X.max_dim + 1)
    P, pr_i = cyl.space, cyl.projections[1]

    def end_word(k: int) -> tuple[int, ...]:
        return tuple(range(k - 1, -1, -1))

    poles = {0: "pole0", 1: "pole1"}
    end_gen = {}
    for g in X.all_gens():
        k = X.dim_of[g]
        for e in (0, 1):
            end_gen[(X.ref(g), SimplexRef((e,), end_word(k), k))] = e
    generators: dict[int, list] = {k: [] for k in range(P.max_dim + 1)}
    generators[0] = list(poles.values())
    kept = []
    for g in P.all_gens():
        if g not in end_gen:
            generators[P.dim_of[g]].append(g)
            kept.append(g)
    S = SimplicialSet(P.max_dim, generators, {})

    def route(r: SimplexRef) -> SimplexRef:
        e = end_gen.get(r.gen)
        if e is None:
            return SimplexRef(r.gen, r.word, r.dim)
        pole = SimplexRef(poles[e], (), 0)
        collapsed = apply_degeneracies(pole, end_word(r.dim - len(r.word)))
        return apply_degeneracies(collapsed, r.word)

    faces = {}
    for g in kept:
        if P.dim_of[g] >= 1:
            faces[g] = tuple(route(r) for r in P.faces[g])
    S.faces.update(faces)

    assignment = {poles[0]: SimplexRef((0,), (), 0), poles[1]: SimplexRef((1,), (), 0)}
    for g in kept:
        assignment[g] = pr_i.assignment[g]
    to_interval = SimplicialMap(S, interval, assignment)
    return S, to_interval


def euler_characteristic(X: SimplicialSet) -> int:
    return sum((-1) ** k * len(X.gens(k)) for k in range(X.max_dim + 1))


# ---------------------------------------------------------------------------
# Small stock spaces
# ---------------------------------------------------------------------------

def point() -> SimplicialSet:
    return standard_simplex(0)


def empty_space(max_dim: int = 0) -> SimplicialSet:
    return SimplicialSet(max_dim, {}, {})


def cyclic_graph(m: int) -> SimplicialSet:
    """The circle as an m-gon: vertices 0..m-1, edge t from t to t+1 mod m."""
    if m < 1:
        raise ValueError("need at least one edge")
    generators = {0: [("v", t) for t in range(m)], 1: [("e", t) for t in range(m)]}
    faces = {("e", t): (SimplexRef(("v", (t + 1) % m), (), 0), SimplexRef(("v", t), (), 0))
             for t in range(m)}
    return SimplicialSet(1, generators, faces)


def cyclic_cover_map(m: int, k: int) -> SimplicialMap:
    """The covering of circles C_m -> C_k wrapping m/k times (k divides m)."""
    if m % k:
        raise ValueError("m must be a multiple of k")
    src, tgt = cyclic_graph(m), cyclic_graph(k)
    assignment = {}
    for t in range(m):
        assignment[("v", t)] = SimplexRef(("v", t % k), (), 0)
        assignment[("e", t)] = SimplexRef(("e", t % k), (), 1)
    return SimplicialMap(src, tgt, assignment)
