"""Simplicial categories, Borel constructions and thick realization.

A simplicial category has a fixed finite object set and a simplicial set
of morphisms for each ordered pair, with composition given by simplicial
maps out of the product hom(j,k) x hom(i,j).  A contravariant diagram
attaches a space F(i) to each object and action maps hom(i,j) x F(j) ->
F(i) compatible with composition.

The level-n piece of the Borel construction is the disjoint union over
object tuples (i_0..i_n) of hom(i_n,i_{n-1}) x ... x hom(i_1,i_0) x F(i_0);
the outer face forgets the first factor, the inner faces compose, and d_0
acts on the diagram value.  Realization is the thick (fat) one: stage n is
the pushout of stage n-1 under Delta[n] x X_n along boundary-times-level,
attached through face maps only.  Everything is a strict colimit;
cofibrancy is guaranteed because attachments are generator-injective.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable

from .fibration import (
    KnownFiberSpec,
    PreimageCalculator,
    strong_check_via_known_fiber,
    weak_fibration_check,
)
from .homology import is_homology_iso
from .sset import (
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    apply_degeneracies,
    canonical_key,
    factor_common,
    is_isomorphism,
    product,
    standard_simplex,
    tuple_into,
    validate_map,
)


def _full_word(d: int) -> tuple[int, ...]:
    return tuple(range(d - 1, -1, -1))


# ---------------------------------------------------------------------------
# simplicial categories
# ---------------------------------------------------------------------------

class SimplicialCategory:
    """Finite object set, hom simplicial sets, identities and composition."""

    def __init__(self, objects, homs: dict, identities: dict,
                 compositions: dict[tuple, SimplicialMap],
                 comp_products: dict[tuple, SimplicialSet]):
        self.objects = tuple(sorted(objects, key=canonical_key))
        self.homs = homs
        self.identities = identities
        self.compositions = compositions
        self.comp_products = comp_products

    def hom(self, i, j) -> SimplicialSet:
        return self.homs[(i, j)]

    def identity_ref(self, i, dim: int = 0) -> SimplexRef:
        return apply_degeneracies(
            SimplexRef(self.identities[i], (), 0), _full_word(dim))

    def compose(self, i, j, k, g: SimplexRef, f: SimplexRef) -> SimplexRef:
        """g o f for g: j -> k and f: i -> j, as equal-dimension refs."""
        pair = tuple_into(self.comp_products[(i, j, k)], (g, f))
        return self.compositions[(i, j, k)](pair)


def build_category(objects, homs: dict, identities: dict,
                   compose_gen: Callable[[Any, Any, Any, SimplexRef, SimplexRef], SimplexRef]
                   ) -> SimplicialCategory:
    """Assemble a category from a generator-level composition rule."""
    compositions = {}
    comp_products = {}
    for i in objects:
        for j in objects:
            for k in objects:
                pr = product(homs[(j, k)], homs[(i, j)])
                assignment = {}
                for gen in pr.space.all_gens():
                    g, f = gen
                    assignment[gen] = compose_gen(i, j, k, g, f)
                comp_products[(i, j, k)] = pr.space
                compositions[(i, j, k)] = SimplicialMap(
                    pr.space, homs[(i, k)], assignment)
    return SimplicialCategory(objects, homs, identities, compositions, comp_products)


def discrete_space(elements) -> SimplicialSet:
    return SimplicialSet(0, {0: list(elements)}, {})


def from_monoid(table: dict[tuple, Any], unit: Any) -> SimplicialCategory:
    """One-object simplicial category with a discrete morphism space.

    table maps (a, b) to the product ab; associativity and the unit laws
    are validated before building.
    """
    elements = sorted({a for a, _ in table} | {b for _, b in table}
                      | set(table.values()), key=canonical_key)
    for a in elements:
        for b in elements:
            if (a, b) not in table:
                raise ValueError(f"incomplete multiplication table at ({a!r}, {b!r})")
    for a in elements:
        if table.get((a, unit)) != a or table.get((unit, a)) != a:
            raise ValueError(f"unit law fails at {a!r}")
    for a in elements:
        for b in elements:
            for c in elements:
                if table[(table[(a, b)], c)] != table[(a, table[(b, c)])]:
                    raise ValueError(f"associativity fails at ({a!r}, {b!r}, {c!r})")
    hom = discrete_space(elements)
    obj = "1"

    def compose_gen(i, j, k, g, f):
        # refs over a discrete space always reduce to vertices
        return apply_degeneracies(
            SimplexRef(table[(g.gen, f.gen)], (), 0), _full_word(g.dim))

    return build_category([obj], {(obj, obj): hom}, {obj: unit}, compose_gen)


def validate_category(cat: SimplicialCategory) -> list[str]:
    """Generator-wise unit and associativity laws, within truncation."""
    problems = []
    for (i, j, k), comp in cat.compositions.items():
        report = validate_map(comp)
        if not report.ok:
            problems.append(f"composition {(i, j, k)}: {report.problems[0]}")
    for i in cat.objects:
        for j in cat.objects:
            hom = cat.hom(i, j)
            for g in hom.all_gens():
                d = hom.dim_of[g]
                r = hom.ref(g)
                left = cat.compose(i, j, j, cat.identity_ref(j, d), r)
                right = cat.compose(i, i, j, r, cat.identity_ref(i, d))
                if left != r:
                    problems.append(f"left unit fails at {g!r} in hom{(i, j)}")
                if right != r:
                    problems.append(f"right unit fails at {g!r} in hom{(i, j)}")
    for i in cat.objects:
        for j in cat.objects:
            for k in cat.objects:
                for l in cat.objects:
                    triple = product(cat.hom(k, l),
                                     product(cat.hom(j, k), cat.hom(i, j)).space)
                    for gen in triple.space.all_gens():
                        a, bc = gen
                        b, c = bc.gen
                        b = apply_degeneracies(b, bc.word)
                        c = apply_degeneracies(c, bc.word)
                        left = cat.compose(i, j, l, cat.compose(j, k, l, a, b), c)
                        right = cat.compose(i, k, l, a, cat.compose(i, j, k, b, c))
                        if left != right:
                            problems.append(
                                f"associativity fails at {(a, b, c)} over {(i, j, k, l)}")
    return problems


# ---------------------------------------------------------------------------
# diagrams
# ---------------------------------------------------------------------------

class Diagram:
    """Contravariant space-valued diagram with action maps."""

    def __init__(self, category: SimplicialCategory, values: dict,
                 actions: dict[tuple, SimplicialMap],
                 action_products: dict[tuple, SimplicialSet]):
        self.category = category
        self.values = values
        self.actions = actions
        self.action_products = action_products

    def value(self, i) -> SimplicialSet:
        return self.values[i]

    def act(self, i, j, f: SimplexRef, x: SimplexRef) -> SimplexRef:
        """mu_{i,j}(f, x) in F(i) for f in hom(i,j) and x in F(j)."""
        pair = tuple_into(self.action_products[(i, j)], (f, x))
        return self.actions[(i, j)](pair)

    def morphism_map(self, i, j, f_gen) -> SimplicialMap:
        """F(f): F(j) -> F(i) for a morphism vertex f."""
        src, dst = self.value(j), self.value(i)
        assignment = {}
        for x in src.all_gens():
            d = src.dim_of[x]
            f_ref = apply_degeneracies(SimplexRef(f_gen, (), 0), _full_word(d))
            assignment[x] = self.act(i, j, f_ref, src.ref(x))
        return SimplicialMap(src, dst, assignment)


def build_diagram(cat: SimplicialCategory, values: dict,
                  act_gen: Callable[[Any, Any, SimplexRef, SimplexRef], SimplexRef]) -> Diagram:
    actions = {}
    action_products = {}
    for i in cat.objects:
        for j in cat.objects:
            pr = product(cat.hom(i, j), values[j])
            assignment = {}
            for gen in pr.space.all_gens():
                f, x = gen
                assignment[gen] = act_gen(i, j, f, x)
            action_products[(i, j)] = pr.space
            actions[(i, j)] = SimplicialMap(pr.space, values[i], assignment)
    return Diagram(cat, values, actions, action_products)


def validate_diagram(diag: Diagram) -> list[str]:
    problems = []
    cat = diag.category
    for key, act in diag.actions.items():
        report = validate_map(act)
        if not report.ok:
            problems.append(f"action {key}: {report.problems[0]}")
    for i in cat.objects:
        F = diag.value(i)
        for x in F.all_gens():
            d = F.dim_of[x]
            if diag.act(i, i, cat.identity_ref(i, d), F.ref(x)) != F.ref(x):
                problems.append(f"unit action fails at {x!r} in F({i!r})")
    for i in cat.objects:
        for j in cat.objects:
            for k in cat.objects:
                triple = product(cat.hom(i, j),
                                 product(cat.hom(j, k), diag.value(k)).space)
                for gen in triple.space.all_gens():
                    f, gx = gen
                    g, x = gx.gen
                    g = apply_degeneracies(g, gx.word)
                    x = apply_degeneracies(x, gx.word)
                    left = diag.act(i, j, f, diag.act(j, k, g, x))
                    right = diag.act(i, k, cat.compose(i, j, k, g, f), x)
                    if left != right:
                        problems.append(
                            f"action compatibility fails at {(f, g, x)} over {(i, j, k)}")
    return problems


def trivial_diagram(cat: SimplicialCategory) -> Diagram:
    """T(i) = the one-point space named after the object."""
    values = {i: discrete_space([i]) for i in cat.objects}

    def act_gen(i, j, f, x):
        return apply_degeneracies(SimplexRef(i, (), 0), _full_word(f.dim))

    return build_diagram(cat, values, act_gen)


def restriction_diagram(cat: SimplicialCategory, j) -> Diagram:
    """M_j(i) = hom(i, j) with action by precomposition."""
    if j not in cat.objects:
        raise ValueError(f"unknown object {j!r}")
    values = {i: cat.hom(i, j) for i in cat.objects}

    def act_gen(i, i2, f, g):
        return cat.compose(i, i2, j, g, f)

    return build_diagram(cat, values, act_gen)


def constant_diagram(cat: SimplicialCategory, X: SimplicialSet) -> Diagram:
    """The same space at every object, all morphisms acting by the identity."""
    values = {i: X for i in cat.objects}

    def act_gen(i, j, f, x):
        return x

    return build_diagram(cat, values, act_gen)


# ---------------------------------------------------------------------------
# Borel levels
# ---------------------------------------------------------------------------

def _component_space(components: dict[Any, list[SimplicialSet]], N: int) -> SimplicialSet:
    """Disjoint union over tags of products of factor lists, truncated at N.

    Generators are (tag, refs-tuple) with no degeneracy index shared by all
    components of the tuple.
    """
    generators: dict[int, list] = {d: [] for d in range(N + 1)}
    for tag in sorted(components, key=canonical_key):
        spaces = components[tag]
        for d in range(N + 1):
            pools = [list(X.refs_of_dim(d)) for X in spaces]
            for combo in itertools.product(*pools):
                common = set(combo[0].word) if combo else set()
                for r in combo[1:]:
                    common &= set(r.word)
                if combo and common:
                    continue
                generators[d].append((tag, tuple(combo)))
    S = SimplicialSet(N, generators, {})
    faces = {}
    for d in range(1, N + 1):
        for gen in S.gens(d):
            tag, refs = gen
            spaces = components[tag]
            entries = []
            for t in range(d + 1):
                pieces = tuple(X.face(r, t) for X, r in zip(spaces, refs))
                entries.append(tuple_into(S, pieces, component=tag))
            faces[gen] = tuple(entries)
    S.faces.update(faces)
    return S


def borel_level(cat: SimplicialCategory, diag: Diagram, n: int, N: int) -> SimplicialSet:
    """Level n of the bisimplicial Borel construction, truncated at N."""
    components = {}
    for comp in itertools.product(cat.objects, repeat=n + 1):
        spaces = [cat.hom(comp[n - t], comp[n - t - 1]) for t in range(n)]
        spaces.append(diag.value(comp[0]))
        components[comp] = spaces
    return _component_space(components, N)


def _borel_face(cat, diag, n, k, src: SimplicialSet, dst: SimplicialSet) -> SimplicialMap:
    assignment = {}
    for gen in src.all_gens():
        comp, refs = gen
        if k == n:
            new_comp = comp[:n]
            pieces = refs[1:]
        elif k == 0:
            new_comp = comp[1:]
            acted = diag.act(comp[1], comp[0], refs[n - 1], refs[n])
            pieces = refs[: n - 1] + (acted,)
        else:
            t = n - k  # refs[t-1] in hom(i_{k+1}, i_k), refs[t] in hom(i_k, i_{k-1})
            new_comp = comp[:k] + comp[k + 1:]
            composed = cat.compose(comp[k + 1], comp[k], comp[k - 1],
                                   refs[t], refs[t - 1])
            pieces = refs[: t - 1] + (composed,) + refs[t + 1:]
        assignment[gen] = tuple_into(dst, pieces, component=new_comp)
    return SimplicialMap(src, dst, assignment)


def _borel_degeneracy(cat, diag, n, k, src: SimplicialSet, dst: SimplicialSet) -> SimplicialMap:
    assignment = {}
    for gen in src.all_gens():
        comp, refs = gen
        d = src.dim_of[gen]
        new_comp = comp[: k + 1] + (comp[k],) + comp[k + 1:]
        ident = cat.identity_ref(comp[k], d)
        t = n - k
        pieces = refs[:t] + (ident,) + refs[t:]
        assignment[gen] = tuple_into(dst, pieces, component=new_comp)
    return SimplicialMap(src, dst, assignment)


@dataclass
class SimplicialSpace:
    """Levels with face and degeneracy maps; identities checked on demand."""

    levels: list[SimplicialSet]
    face_maps: list[list[SimplicialMap]]        # [n][i] : X_n -> X_{n-1}
    degeneracy_maps: list[list[SimplicialMap]]  # [n][i] : X_n -> X_{n+1}

    @property
    def top(self) -> int:
        return len(self.levels) - 1


def validate_simplicial_space(space: SimplicialSpace) -> list[str]:
    problems = []
    N = space.top

    def eq(f, g, label):
        if f.assignment != g.assignment:
            problems.append(label)

    for n in range(2, N + 1):
        for j in range(1, n + 1):
            for i in range(j):
                eq(space.face_maps[n - 1][i].compose(space.face_maps[n][j]),
                   space.face_maps[n - 1][j - 1].compose(space.face_maps[n][i]),
                   f"d_{i} d_{j} mismatch at level {n}")
    for n in range(N):
        for j in range(n + 1):
            for i in range(j + 1):
                if n + 2 <= N:
                    eq(space.degeneracy_maps[n + 1][j + 1].compose(space.degeneracy_maps[n][i]),
                       space.degeneracy_maps[n + 1][i].compose(space.degeneracy_maps[n][j]),
                       f"s_{j+1} s_{i} mismatch at level {n}")
    for n in range(1, N):
        for j in range(n + 1):
            for i in range(n + 2):
                left = space.face_maps[n + 1][i].compose(space.degeneracy_maps[n][j])
                if i == j or i == j + 1:
                    ident = {g: space.levels[n].ref(g) for g in space.levels[n].all_gens()}
                    if left.assignment != ident:
                        problems.append(f"d_{i} s_{j} is not the identity at level {n}")
                elif i < j:
                    eq(left, space.degeneracy_maps[n - 1][j - 1].compose(space.face_maps[n][i]),
                       f"d_{i} s_{j} mismatch at level {n}")
                else:
                    eq(left, space.degeneracy_maps[n - 1][j].compose(space.face_maps[n][i - 1]),
                       f"d_{i} s_{j} mismatch at level {n}")
    return problems


def borel_space(cat: SimplicialCategory, diag: Diagram, N: int) -> SimplicialSpace:
    """The Borel construction as a simplicial space with levels 0..N."""
    levels = [borel_level(cat, diag, n, N) for n in range(N + 1)]
    face_maps: list[list[SimplicialMap]] = [[]]
    degeneracy_maps: list[list[SimplicialMap]] = []
    for n in range(1, N + 1):
        face_maps.append([_borel_face(cat, diag, n, k, levels[n], levels[n - 1])
                          for k in range(n + 1)])
    for n in range(N):
        degeneracy_maps.append(
            [_borel_degeneracy(cat, diag, n, k, levels[n], levels[n + 1])
             for k in range(n + 1)])
    degeneracy_maps.append([])
    return SimplicialSpace(levels, face_maps, degeneracy_maps)


# ---------------------------------------------------------------------------
# thick realization
# ---------------------------------------------------------------------------

class ThickRealization:
    """The thick (fat) realization through stage N, with its filtration data.

    A generator is ("c", n, (a, b)) where (a, b) is a product generator of
    Delta[n] x X_n whose simplex part sits on the top face; assembling a
    general pair pushes proper faces of Delta[n] through the level face
    maps, which is exactly the attaching rule of the stage pushouts.
    """

    def __init__(self, source: SimplicialSpace, N: int):
        self.source = source
        self.N = N
        self.simplices = [standard_simplex(n) for n in range(N + 1)]
        self.products = [product(self.simplices[n], source.levels[n], N)
                         for n in range(N + 1)]
        generators: dict[int, list] = {d: [] for d in range(N + 1)}
        self.stage_of = {}
        for n in range(N + 1):
            top = tuple(range(n + 1))
            for pg in self.products[n].space.all_gens():
                if pg[0].gen == top:
                    gen = ("c", n, pg)
                    d = self.products[n].space.dim_of[pg]
                    generators[d].append(gen)
                    self.stage_of[gen] = n
        space = SimplicialSet(N, generators, {})
        faces = {}
        for gen in space.all_gens():
            d = space.dim_of[gen]
            if d == 0:
                continue
            _, n, pg = gen
            a, b = pg
            entries = []
            for i in range(d + 1):
                entries.append(self.assemble(
                    n, self.simplices[n].face(a, i), self.source.levels[n].face(b, i)))
            faces[gen] = tuple(entries)
        space.faces.update(faces)
        self.space = space

    def assemble(self, n: int, a: SimplexRef, b: SimplexRef) -> SimplexRef:
        """The class of a simplex (a, b) of Delta[n] x X_n in the realization."""
        members = set(a.gen)
        m = n
        for v in range(n, -1, -1):
            if v not in members:
                b = self.source.face_maps[m][v](b)
                m -= 1
        a = SimplexRef(tuple(range(m + 1)), a.word, a.dim)
        word, core = factor_common((a, b))
        return SimplexRef(("c", m, core), word, a.dim - len(word))

    def stage_zero_inclusion(self) -> SimplicialMap:
        X = self.source.levels[0]
        assignment = {}
        for g in X.all_gens():
            d = X.dim_of[g]
            a = SimplexRef((0,), _full_word(d), d)
            assignment[g] = self.assemble(0, a, X.ref(g))
        return SimplicialMap(X, self.space, assignment)

    def subspace_at_stage(self, m: int) -> SimplicialSet:
        keep = [g for g, n in self.stage_of.items() if n <= m]
        from .sset import full_subcomplex
        return full_subcomplex(self.space, keep)


def thick_realize(source: SimplicialSpace, N: int | None = None) -> ThickRealization:
    if N is None:
        N = source.top
    if N > source.top:
        raise ValueError("not enough levels for the requested stage")
    return ThickRealization(source, N)


def realize_map(src: ThickRealization, dst: ThickRealization,
                level_maps: list[SimplicialMap]) -> SimplicialMap:
    """Realize a levelwise map of simplicial spaces."""
    assignment = {}
    for gen in src.space.all_gens():
        _, n, pg = gen
        a, b = pg
        assignment[gen] = dst.assemble(n, a, level_maps[n](b))
    return SimplicialMap(src.space, dst.space, assignment)


def constant_space(X: SimplicialSet, N: int) -> SimplicialSpace:
    """The constant simplicial space on X."""
    from .sset import identity_map
    ident = identity_map(X)
    levels = [X for _ in range(N + 1)]
    face_maps = [[]] + [[ident for _ in range(n + 1)] for n in range(1, N + 1)]
    degeneracy_maps = [[ident for _ in range(n + 1)] for n in range(N)] + [[]]
    return SimplicialSpace(levels, face_maps, degeneracy_maps)


# ---------------------------------------------------------------------------
# the total construction and the projection
# ---------------------------------------------------------------------------

@dataclass
class BorelConstruction:
    category: SimplicialCategory
    diagram: Diagram
    total_space: SimplicialSpace
    base_space: SimplicialSpace
    total: ThickRealization
    base: ThickRealization
    pi_levels: list[SimplicialMap]
    pi: SimplicialMap

    def base_vertex_ref(self, i) -> SimplexRef:
        """The realization vertex of the base corresponding to object i."""
        B0 = self.base_space.levels[0]
        level_gen = ((i,), (SimplexRef(i, (), 0),))
        gen = ("c", 0, (SimplexRef((0,), (), 0), B0.ref(level_gen)))
        return self.base.space.ref(gen)

    def fiber_inclusion(self, i) -> SimplicialMap:
        """F(i) -> total realization through level zero."""
        F = self.diagram.value(i)
        E0 = self.total_space.levels[0]
        assignment = {}
        for g in F.all_gens():
            d = F.dim_of[g]
            level_ref = E0.ref(((i,), (F.ref(g),)))
            a = SimplexRef((0,), _full_word(d), d)
            assignment[g] = self.total.assemble(0, a, level_ref)
        return SimplicialMap(F, self.total.space, assignment)


def borel_total(cat: SimplicialCategory, diag: Diagram, N: int) -> BorelConstruction:
    """Realize the Borel construction and the projection to B M = E_M T."""
    total_space = borel_space(cat, diag, N)
    base_space = borel_space(cat, trivial_diagram(cat), N)
    total = thick_realize(total_space, N)
    base = thick_realize(base_space, N)
    pi_levels = []
    for n in range(N + 1):
        src, dst = total_space.levels[n], base_space.levels[n]
        assignment = {}
        for gen in src.all_gens():
            comp, refs = gen
            d = src.dim_of[gen]
            point = apply_degeneracies(SimplexRef(comp[0], (), 0), _full_word(d))
            assignment[gen] = tuple_into(dst, refs[:n] + (point,), component=comp)
        pi_levels.append(SimplicialMap(src, dst, assignment))
    pi = realize_map(total, base, pi_levels)
    return BorelConstruction(cat, diag, total_space, base_space,
                             total, base, pi_levels, pi)


def classifying_space(cat: SimplicialCategory, N: int) -> ThickRealization:
    """The realization of B M = E_M T."""
    return thick_realize(borel_space(cat, trivial_diagram(cat), N), N)


# ---------------------------------------------------------------------------
# mapping telescopes
# ---------------------------------------------------------------------------

class Telescope:
    """Strict mapping telescope of k copies of X along a self-map.

    Pieces 0..k-2 are cylinders X x Delta[1]; the end at 1 of each cylinder
    is glued into the next piece through the step map, and piece k-1 is a
    bare copy of X capping the telescope.
    """

    def __init__(self, X: SimplicialSet, step: SimplicialMap, stages: int):
        if stages < 1:
            raise ValueError("need at least one stage")
        self.X = X
        self.step = step
        self.stages = stages
        self.cylinder = product(X, standard_simplex(1), X.max_dim + 1)
        P = self.cylinder.space
        N = P.max_dim
        generators: dict[int, list] = {d: [] for d in range(N + 1)}
        for t in range(stages - 1):
            for pg in P.all_gens():
                if pg[1].gen != (1,):
                    generators[P.dim_of[pg]].append((t, pg))
        for g in X.all_gens():
            generators[X.dim_of[g]].append((stages - 1, g))
        S = SimplicialSet(N, generators, {})
        faces = {}
        for t in range(stages - 1):
            for pg in P.all_gens():
                if pg[1].gen == (1,) or P.dim_of[pg] == 0:
                    continue
                faces[(t, pg)] = tuple(self._route(t, r) for r in P.faces[pg])
        for g in X.all_gens():
            if X.dim_of[g] >= 1:
                faces[(stages - 1, g)] = tuple(
                    SimplexRef((stages - 1, r.gen), r.word, r.dim) for r in X.faces[g])
        S.faces.update(faces)
        self.space = S

    def _route(self, t: int, ref: SimplexRef) -> SimplexRef:
        a, b = ref.gen
        if b.gen != (1,):
            return SimplexRef((t, ref.gen), ref.word, ref.dim)
        stepped = self.step(a)
        if t == self.stages - 2:
            out = SimplexRef((self.stages - 1, stepped.gen), stepped.word, stepped.dim)
            return apply_degeneracies(out, ref.word)
        zero = SimplexRef((0,), _full_word(stepped.dim), stepped.dim)
        return apply_degeneracies(self.piece_ref(t + 1, stepped, zero), ref.word)

    def piece_ref(self, t: int, a: SimplexRef, b: SimplexRef) -> SimplexRef:
        """Normalize a cylinder simplex of piece t into the telescope."""
        word, core = factor_common((a, b))
        inner = SimplexRef(core, (), a.dim - len(word))
        return apply_degeneracies(self._route(t, inner), word)

    def cap_ref(self, x: SimplexRef) -> SimplexRef:
        return SimplexRef((self.stages - 1, x.gen), x.word, x.dim)

    def stage_inclusion(self, t: int) -> SimplicialMap:
        assignment = {}
        for g in self.X.all_gens():
            d = self.X.dim_of[g]
            if t == self.stages - 1:
                assignment[g] = self.cap_ref(self.X.ref(g))
            else:
                zero = SimplexRef((0,), _full_word(d), d)
                assignment[g] = self.piece_ref(t, self.X.ref(g), zero)
        return SimplicialMap(self.X, self.space, assignment)


def telescope_diagram(cat: SimplicialCategory, alpha, stages: int,
                      base_object=None) -> tuple[Diagram, dict]:
    """The stage-truncated telescope diagram along an endomorphism vertex.

    alpha must be a vertex of hom(1,1) for the chosen base object; values
    are telescopes of hom(i,1) along postcomposition with alpha, with
    actions extended cylinder-wise.
    """
    one = base_object if base_object is not None else cat.objects[0]
    if alpha not in cat.hom(one, one).gens(0):
        raise ValueError(f"{alpha!r} is not an endomorphism vertex of {one!r}")
    telescopes = {}
    for i in cat.objects:
        hom = cat.hom(i, one)
        assignment = {}
        for g in hom.all_gens():
            d = hom.dim_of[g]
            a_ref = apply_degeneracies(SimplexRef(alpha, (), 0), _full_word(d))
            assignment[g] = cat.compose(i, one, one, a_ref, hom.ref(g))
        step = SimplicialMap(hom, hom, assignment)
        telescopes[i] = Telescope(hom, step, stages)
    values = {i: telescopes[i].space for i in cat.objects}

    def act_gen(i, j, h, x):
        tele_j, tele_i = telescopes[j], telescopes[i]
        t = x.gen[0]
        if t == stages - 1:
            inner = SimplexRef(x.gen[1], x.word, x.dim)
            composed = cat.compose(i, j, one, inner, h)
            return tele_i.cap_ref(composed)
        pg = x.gen[1]
        f_part = apply_degeneracies(pg[0], x.word)
        tau_part = apply_degeneracies(pg[1], x.word)
        composed = cat.compose(i, j, one, f_part, h)
        return tele_i.piece_ref(t, composed, tau_part)

    diag = build_diagram(cat, values, act_gen)
    return diag, telescopes


# ---------------------------------------------------------------------------
# the group completion pipeline
# ---------------------------------------------------------------------------

@dataclass
class Gate:
    name: str
    ok: bool
    witnesses: list = field(default_factory=list)


@dataclass
class GroupCompletionReport:
    gates: list[Gate]
    construction: BorelConstruction
    valid_up_to: int

    @property
    def verdict(self) -> bool:
        return all(g.ok for g in self.gates)


def group_completion_check(cat: SimplicialCategory, diag: Diagram, N: int,
                           fibers: list[KnownFiberSpec] | None = None
                           ) -> GroupCompletionReport:
    """The four-gate desk rendering of the generalized group completion.

    1. every morphism vertex acts by homology equivalences on the diagram;
    2. each Borel level projects with constant fiber F(i_0), componentwise;
    3. the d_0-induced fiber maps are homology equivalences;
    4. the realized projection is a weak homology fibration whose vertex
       preimages match the registered fibers.
    """
    up_to = N - 1
    gates = []

    hypothesis_ok = True
    witnesses = []
    morphism_cache: dict[tuple, bool] = {}
    for i in cat.objects:
        for j in cat.objects:
            for f in cat.hom(i, j).gens(0):
                ok, _ = is_homology_iso(diag.morphism_map(i, j, f), up_to)
                morphism_cache[(i, j, f)] = ok
                if not ok:
                    hypothesis_ok = False
                    witnesses.append((i, j, f))
    gates.append(Gate("morphism-actions", hypothesis_ok, witnesses))

    construction = borel_total(cat, diag, N)
    levelwise_ok = True
    witnesses = []
    for n in range(N + 1):
        src = construction.total_space.levels[n]
        dst = construction.base_space.levels[n]
        pi_n = construction.pi_levels[n]
        for comp in itertools.product(cat.objects, repeat=n + 1):
            structural = all(
                pi_n.assignment[g].gen[0] == comp
                for g in src.all_gens() if g[0] == comp)
            fiber_ok = _level_fiber_isomorphic(cat, diag, construction, n, comp)
            if not (structural and fiber_ok):
                levelwise_ok = False
                witnesses.append((n, comp))
    gates.append(Gate("levelwise-projections", levelwise_ok, witnesses))

    d0_ok = True
    witnesses = []
    seen = set()
    for n in range(1, N + 1):
        for comp in itertools.product(cat.objects, repeat=n + 1):
            for f1 in cat.hom(comp[1], comp[0]).gens(0):
                key = (comp[1], comp[0], f1)
                if key in seen:
                    continue
                seen.add(key)
                if not morphism_cache.get(key, True):
                    d0_ok = False
                    witnesses.append(key)
                elif key not in morphism_cache:
                    ok, _ = is_homology_iso(
                        diag.morphism_map(comp[1], comp[0], f1), up_to)
                    if not ok:
                        d0_ok = False
                        witnesses.append(key)
    gates.append(Gate("d0-fiber-maps", d0_ok, witnesses))

    weak = weak_fibration_check(construction.pi, up_to)
    realization_ok = weak.verdict
    witnesses = [(c.sigma, c.op) for c in weak.failures()]
    if fibers is None:
        fibers = [KnownFiberSpec(_vertex_gen(construction, i), diag.value(i),
                                 f"F({i!r})") for i in cat.objects]
    if weak.verdict:
        for spec in fibers:
            strong = strong_check_via_known_fiber(construction.pi, spec, up_to)
            if not strong.verdict:
                realization_ok = False
                witnesses.append(("known-fiber", spec.vertex))
    for i in cat.objects:
        if not vertex_fiber_isomorphic(construction, i):
            realization_ok = False
            witnesses.append(("vertex-fiber-iso", i))
    gates.append(Gate("realized-fibration", realization_ok, witnesses))
    return GroupCompletionReport(gates, construction, up_to)


def _vertex_gen(construction: BorelConstruction, i):
    return construction.base_vertex_ref(i).gen


def _level_fiber_isomorphic(cat, diag, construction, n, comp) -> bool:
    """dp of the level projection over the component's identity vertex."""
    src = construction.total_space.levels[n]
    pi_n = construction.pi_levels[n]
    F = diag.value(comp[0])
    vertex_refs = tuple(cat.identity_ref(comp[t + 1]) for t in range(n))[::-1]
    calc = PreimageCalculator(pi_n, F.max_dim)
    base_gen = None
    dst = construction.base_space.levels[n]
    point = SimplexRef(comp[0], (), 0)
    base_gen = (comp, vertex_refs + (point,))
    rec = calc.record(dst.ref(base_gen))
    assignment = {}
    for x in F.all_gens():
        d = F.dim_of[x]
        homs = tuple(apply_degeneracies(r, _full_word(d)) for r in vertex_refs)
        e_ref = src.ref((comp, homs + (F.ref(x),)))
        a = SimplexRef((0,), _full_word(d), d)
        assignment[x] = tuple_into(rec.space, (a, e_ref))
    return is_isomorphism(SimplicialMap(F, rec.space, assignment))


def vertex_fiber_isomorphic(construction: BorelConstruction, i) -> bool:
    """dp(pi, vertex i) is isomorphic to F(i), not merely equivalent."""
    F = construction.diagram.value(i)
    calc = PreimageCalculator(construction.pi, F.max_dim)
    rec = calc.record(construction.base_vertex_ref(i))
    incl = construction.fiber_inclusion(i)
    assignment = {}
    for x in F.all_gens():
        d = F.dim_of[x]
        a = SimplexRef((0,), _full_word(d), d)
        assignment[x] = tuple_into(rec.space, (a, incl.assignment[x]))
    return is_isomorphism(SimplicialMap(F, rec.space, assignment))
