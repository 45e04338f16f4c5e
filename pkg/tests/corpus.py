"""Shared desk-scale corpus: spaces and maps the property suites run over."""

import homfib as hf
from homfib.sset import SimplexRef, SimplicialMap, SimplicialSet, constant_map


def one_vertex_circle():
    return SimplicialSet(1, {0: ["v"], 1: ["e"]},
                         {"e": (SimplexRef("v", (), 0), SimplexRef("v", (), 0))})


def two_points():
    space, _ = hf.disjoint_union([hf.point(), hf.point()])
    return space


def torus_complex():
    return hf.presentation_complex(["a", "b"], [["a", "b", "a-", "b-"]])


def klein_complex():
    return hf.presentation_complex(["a", "b"], [["a", "b", "a", "b-"]])


def disc_complex():
    return hf.presentation_complex(["a"], [["a"]])


def icosahedral_complex():
    return hf.presentation_complex(
        ["s", "t"],
        [["s", "s", "s", "s-", "t-", "s-", "t-"],
         ["t", "t", "t", "t", "t", "s-", "t-", "s-", "t-"]])


def subdivision_corpus():
    """At least ten spaces of dimension <= 3 for subdivision invariance."""
    return {
        "point": hf.point(),
        "delta1": hf.standard_simplex(1),
        "delta2": hf.standard_simplex(2),
        "delta3": hf.standard_simplex(3),
        "sphere1": hf.boundary(2),
        "sphere2": hf.boundary(3),
        "one_vertex_circle": one_vertex_circle(),
        "hexagon": hf.cyclic_graph(6),
        "two_points": two_points(),
        "square": hf.product(hf.standard_simplex(1), hf.standard_simplex(1), 2).space,
        "torus": torus_complex(),
        "klein": klein_complex(),
    }


def collapse_circle_to_interval():
    """The circle boundary(2) squashed onto an interval; not a fibration."""
    bd2, d1 = hf.boundary(2), hf.standard_simplex(1)
    return SimplicialMap(bd2, d1, {
        (0,): d1.ref((0,)),
        (1,): d1.ref((0,)),
        (2,): d1.ref((1,)),
        (0, 1): SimplexRef((0,), (0,), 1),
        (0, 2): d1.ref((0, 1)),
        (1, 2): d1.ref((0, 1)),
    })


def projection_over_simplex(n, fiber):
    """The product projection Delta[n] x fiber -> Delta[n]."""
    pr = hf.product(hf.standard_simplex(n), fiber)
    return pr.projections[0]


def simplex_maps_small():
    """Maps over Delta[n], n <= 2, for the star-lemma corpus."""
    out = {
        "id_delta1": hf.identity_map(hf.standard_simplex(1)),
        "id_delta2": hf.identity_map(hf.standard_simplex(2)),
        "proj_d1_x_s0": projection_over_simplex(1, two_points()),
        "proj_d2_x_s0": projection_over_simplex(2, two_points()),
        "proj_d1_x_circle": projection_over_simplex(1, hf.boundary(2)),
        "susp_disc": hf.suspension(disc_complex())[1],
    }
    return out
