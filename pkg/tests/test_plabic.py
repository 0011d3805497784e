"""Plabic graphs: moves, fences, gadget attachment, orientations, links."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morsify.braid import beta_of_fence_word
from morsify.divide import (
    apply_yb,
    parse_planar_divide,
    scannable,
    scannable_to_planar,
    wiring_diagram,
    yb_sites,
)
from morsify.link import fingerprint
from morsify.plabic import (
    DisconnectedFence,
    FenceWord,
    IllegalMove,
    MoveDescriptor,
    PlabicGraph,
    SiteNotFound,
    admissible_orientation,
    apply_move,
    attach_plabic,
    canonical_code,
    divide_of_attached,
    enumerate_moves,
    faces,
    fence_of_divide,
    fence_of_word,
    fence_word_of_divide,
    format_fence_word,
    format_plabic,
    link_of_oriented_plabic,
    move_equivalent,
    parse_fence_word,
    parse_plabic,
    quiver_of_plabic,
    transport_orientation,
    validate,
    word_of_fence,
    yb_as_moves,
)
from morsify.agquiver import quiver_of_divide
from morsify.quiver import is_isomorphic, mutate, mutation_equivalent

from test_divide import (
    CHAIN_WITH_LOOPS,
    HYPERBOLIC_NODE,
    TRIANGLE_ARC,
    figure_eight,
)


def fence(*letters, k=None):
    if k is None:
        k = max(i for _, i in letters) + 1
    return fence_of_word(FenceWord(k, letters))


S1, S2, T1, T2 = ("s", 1), ("s", 2), ("t", 1), ("t", 2)

# a graph on which no admissible orientation exists even though the colors
# are balanced: a bicolored square with a doubled side
NO_ORIENTATION = PlabicGraph(
    internal=frozenset({"W", "B", "B2", "W2"}),
    leaves=frozenset({"b1", "w1"}),
    black=frozenset({"b1", "B", "B2"}),
    edges=frozenset(
        {
            frozenset({("b1", 0), ("W", 2)}),
            frozenset({("W", 0), ("B2", 2)}),
            frozenset({("w1", 0), ("B", 1)}),
            frozenset({("B", 0), ("W2", 1)}),
            frozenset({("W", 1), ("B", 2)}),
            frozenset({("B2", 1), ("W2", 2)}),
            frozenset({("B2", 0), ("W2", 0)}),
        }
    ),
    boundary_order=("w1", "b1"),
)


class TestFences:
    def test_single_connector_faces(self):
        p = fence(S1)
        internal, boundary = faces(p)
        assert len(internal) == 0
        assert validate(p) == []

    def test_two_connectors_make_a_square(self):
        p = fence(S1, T1)
        internal, _ = faces(p)
        assert len(internal) == 1
        assert len(internal[0]) == 4

    def test_three_connectors(self):
        internal, _ = faces(fence(S1, T1, S1))
        assert len(internal) == 2

    def test_word_round_trip(self):
        for letters in [
            (S1,),
            (S1, T1),
            (S1, S2, T1, S1),
            (S2, S1, T1, S2, T2, S1, T1, S1),
        ]:
            w = FenceWord(max(i for _, i in letters) + 1, letters)
            assert word_of_fence(fence_of_word(w)) == w

    def test_text_round_trip(self):
        w = FenceWord(3, (S1, T2, S2, S1))
        assert parse_fence_word(format_fence_word(w)) == w

    def test_empty_word_rejected(self):
        with pytest.raises(DisconnectedFence):
            fence_of_word(FenceWord(2, ()))

    def test_unconnected_strand_rejected(self):
        with pytest.raises(DisconnectedFence):
            fence_of_word(FenceWord(3, (S1,)))

    def test_bad_letters_rejected(self):
        with pytest.raises(ValueError):
            FenceWord(2, (("s", 2),))
        with pytest.raises(ValueError):
            FenceWord(2, (("u", 1),))

    def test_fence_word_of_divide(self):
        s = scannable(3, (2,), (1, 2, 1), (1,))
        w = fence_word_of_divide(s)
        assert w.k == 3
        assert w.letters == (S2, S1, T1, S2, T2, S1, T1, S1)

    def test_colors(self):
        p = fence(S1, T1)
        assert "c0.b" in p.black and "c0.t" not in p.black
        assert "c1.t" in p.black and "c1.b" not in p.black
        assert all(v in p.black for v in p.leaves if str(v).startswith("eR"))
        assert all(v not in p.black for v in p.leaves if str(v).startswith("eL"))


class TestAttach:
    def test_single_node_gadget(self):
        p = attach_plabic(parse_planar_divide(HYPERBOLIC_NODE))
        assert len(p.internal) == 4 and len(p.leaves) == 4
        assert len(p.edges) == 8
        internal, _ = faces(p)
        assert len(internal) == 1 and len(internal[0]) == 4
        # the gadget square alternates colors
        assert len(p.black & p.internal) == 2

    def test_bare_circle_rejected(self):
        d = figure_eight()
        circle = type(d)(
            d.nodes, d.endpoints, d.edges, d.boundary_order, 1, d.outer_dart
        )
        with pytest.raises(ValueError):
            attach_plabic(circle)

    def test_round_trip_through_divide(self):
        for d in (
            parse_planar_divide(TRIANGLE_ARC),
            parse_planar_divide(CHAIN_WITH_LOOPS),
            parse_planar_divide(HYPERBOLIC_NODE),
            figure_eight(),
        ):
            assert divide_of_attached(attach_plabic(d)) == d

    def test_tail_colors(self):
        d = parse_planar_divide(HYPERBOLIC_NODE)
        p = attach_plabic(d, tails={"e1": "b"})
        assert "e1" in p.black and "e2" not in p.black

    def test_quiver_matches_divide_quiver(self):
        cases = [
            parse_planar_divide(TRIANGLE_ARC),
            parse_planar_divide(CHAIN_WITH_LOOPS),
            parse_planar_divide(HYPERBOLIC_NODE),
            figure_eight(),
            scannable_to_planar(scannable(2, (), (1, 1), ())),
            scannable_to_planar(wiring_diagram(3)),
        ]
        for d in cases:
            qp = quiver_of_plabic(attach_plabic(d))
            qd = quiver_of_divide(d)
            assert is_isomorphic(qp, qd)


class TestFenceQuivers:
    def test_fence_quiver_mutation_equivalent_to_divide_quiver(self):
        s = scannable(3, (2,), (1, 2, 1), (1,))
        qf = quiver_of_plabic(fence_of_divide(s))
        qd = quiver_of_divide(scannable_to_planar(s))
        assert bool(mutation_equivalent(qf, qd))

    def test_wiring_fence_quiver(self):
        s = wiring_diagram(3)
        qf = quiver_of_plabic(fence_of_divide(s))
        qd = quiver_of_divide(scannable_to_planar(s))
        assert bool(mutation_equivalent(qf, qd))


class TestMoves:
    def test_square_is_involutive(self):
        p = fence(S1, T1)
        sqs = [m for m in enumerate_moves(p) if m.kind == "square"]
        assert len(sqs) == 1
        q = apply_move(p, sqs[0])
        assert q.black != p.black and q.edges == p.edges
        assert apply_move(q, sqs[0]) == p

    def test_flip_returns(self):
        p = fence(S1, S1)
        flips = [m for m in enumerate_moves(p) if m.kind.startswith("flip")]
        assert flips
        q = apply_move(p, flips[0])
        back = [m for m in enumerate_moves(q) if m.kind == flips[0].kind]
        assert any(
            canonical_code(apply_move(q, m)) == canonical_code(p) for m in back
        )

    def test_tail_remove_then_attach(self):
        p = fence(S1, T1)
        rems = [m for m in enumerate_moves(p) if m.kind == "tailRemove"]
        assert rems
        q = apply_move(p, rems[0])
        assert len(q.leaves) == len(p.leaves) - 1
        res = move_equivalent(q, p)
        assert bool(res)
        g = q
        for m in res.witness:
            g = apply_move(g, m)
        assert canonical_code(g) == canonical_code(p)

    def test_illegal_square_rejected(self):
        p = fence(S1, S1)  # the inner face has two same-colored corners
        assert not [m for m in enumerate_moves(p) if m.kind == "square"]
        with pytest.raises(IllegalMove):
            internal, _ = faces(p)
            f = internal[0]
            lo = f.index(min(f))
            apply_move(p, MoveDescriptor("square", tuple(f[lo:] + f[:lo])))

    def test_unknown_kind_rejected(self):
        with pytest.raises(IllegalMove):
            apply_move(fence(S1), MoveDescriptor("twist", ()))

    def test_moves_all_replayable(self):
        p = fence(S1, S2, T1)
        for m in enumerate_moves(p):
            q = apply_move(p, m)
            assert validate(q) == []


class TestMoveEquivalence:
    def test_braid_relation(self):
        left = fence(S1, S2, S1, S1)
        right = fence(S2, S1, S2, S1)
        res = move_equivalent(left, right)
        assert bool(res)
        assert tuple(m.kind for m in res.witness) == (
            "flipBlack",
            "square",
            "flipWhite",
        )

    def test_sigma_tau_swap_at_word_end(self):
        res = move_equivalent(fence(S1, T1), fence(S1, S1))
        assert bool(res)
        kinds = {m.kind for m in res.witness}
        assert {"tailRemove", "tailAttach"} <= kinds

    def test_parity_invariant_distinguishes(self):
        res = move_equivalent(fence(S1), fence(S1, T1))
        assert not bool(res)

    def test_identical_graphs(self):
        p = fence(S1, T1)
        res = move_equivalent(p, p)
        assert bool(res) and res.witness == ()

    def test_canonical_code_relabel_invariant(self):
        p = fence(S1, T1)
        ren = {v: f"z{v}" for v in p.internal | p.leaves}
        q = PlabicGraph(
            frozenset(ren[v] for v in p.internal),
            frozenset(ren[v] for v in p.leaves),
            frozenset(ren[v] for v in p.black),
            frozenset(
                frozenset((ren[v], s) for v, s in e) for e in p.edges
            ),
            tuple(ren[v] for v in p.boundary_order),
        )
        assert canonical_code(q) == canonical_code(p)

    def test_canonical_code_color_swap(self):
        p = fence(S1, S1)
        q = PlabicGraph(
            p.internal,
            p.leaves,
            (p.internal | p.leaves) - p.black,
            p.edges,
            p.boundary_order,
        )
        # the code is minimized over the global color swap
        assert canonical_code(q) == canonical_code(p)
        assert canonical_code(
            q, strict_boundary_colors=True
        ) == canonical_code(p, strict_boundary_colors=True)

    def test_strict_code_sees_leaf_colors(self):
        p = fence(S1, S1)
        q = PlabicGraph(
            p.internal,
            p.leaves,
            p.black ^ {"eR1"},
            p.edges,
            p.boundary_order,
        )
        assert canonical_code(q) == canonical_code(p)
        assert canonical_code(
            q, strict_boundary_colors=True
        ) != canonical_code(p, strict_boundary_colors=True)


class TestQuiverUnderMoves:
    def test_square_move_is_a_mutation(self):
        rng = random.Random(11)
        p = fence(S1, S2, T1, S1)
        for _ in range(30):
            q_before = quiver_of_plabic(p)
            moves = enumerate_moves(p)
            m = rng.choice(moves)
            np_ = apply_move(p, m)
            if len(np_.internal) > 12:
                continue
            q_after = quiver_of_plabic(np_)
            if m.kind == "square":
                internal, _ = faces(p)
                sites = []
                for i, f in enumerate(internal):
                    lo = f.index(min(f))
                    sites.append(tuple(f[lo:] + f[:lo]))
                i = sites.index(m.site)
                got = mutate(q_before, i)
                assert sorted(got.arrows()) == sorted(q_after.arrows())
            else:
                assert is_isomorphic(q_before, q_after)
            p = np_


class TestOrientations:
    def test_fence_orientation(self):
        p = fence(S1, S2, T1)
        o = admissible_orientation(p)
        assert o is not None
        twin = p.twin()
        # boundary edges: into black right ends, out of white left ends
        for v in p.leaves:
            h = (v, 0) if v in p.black else twin[(v, 0)]
            assert o.points_at(h)
        # vertical connector edges point at their black end
        for e in p.edges:
            a, b = sorted(e)
            if str(a[0]).startswith("c") and str(b[0]).startswith("c"):
                ja = str(a[0]).split(".")[0]
                jb = str(b[0]).split(".")[0]
                if ja == jb:  # same connector: the vertical edge
                    black_dart = a if a[0] in p.black else b
                    assert o.points_at(black_dart)

    def test_unbalanced_graph_has_none(self):
        p = attach_plabic(parse_planar_divide(HYPERBOLIC_NODE))
        assert len(p.black) * 2 != len(p.internal | p.leaves)
        assert admissible_orientation(p) is None

    def test_balanced_counterexample_has_none(self):
        assert validate(NO_ORIENTATION) == []
        assert len(NO_ORIENTATION.black) * 2 == 6
        assert admissible_orientation(NO_ORIENTATION) is None

    def test_degree_rule(self):
        p = fence(S1, T1, S1)
        o = admissible_orientation(p)
        twin = p.twin()
        for v in p.internal:
            heads_at_v = sum(
                1 for s in range(3) if o.points_at((v, s))
            )
            assert heads_at_v == (2 if v in p.black else 1)

    def test_transport_is_recomputation(self):
        p = fence(S1, T1)
        o = admissible_orientation(p)
        m = next(m for m in enumerate_moves(p) if m.kind == "square")
        o2 = transport_orientation(p, o, m)
        assert o2 == admissible_orientation(apply_move(p, m))

    def test_transport_rejects_bad_orientation(self):
        p = fence(S1, T1)
        o = admissible_orientation(p)
        bad = type(o)(frozenset(list(o.heads)[:-1]))
        m = enumerate_moves(p)[0]
        with pytest.raises(ValueError):
            transport_orientation(p, bad, m)


class TestLinks:
    def fence_link(self, *letters, k=None):
        p = fence(*letters, k=k)
        o = admissible_orientation(p)
        assert o is not None
        return link_of_oriented_plabic(p, o)

    def test_trefoil_fence(self):
        d = self.fence_link(S1, S1, S1)
        beta = beta_of_fence_word(FenceWord(2, (S1, S1, S1)))
        assert fingerprint(d, include_jones=True) == fingerprint(
            beta.letters, beta.k, include_jones=True
        )

    def test_sigma_tau_fence(self):
        w = FenceWord(2, (S1, T1))
        d = self.fence_link(S1, T1)
        beta = beta_of_fence_word(w)
        assert fingerprint(d) == fingerprint(beta.letters, beta.k)

    def test_random_fences_match_braid_closure(self):
        rng = random.Random(5)
        for _ in range(8):
            k = rng.randint(2, 3)
            letters = tuple(
                (rng.choice("st"), rng.randint(1, k - 1))
                for _ in range(rng.randint(2, 5))
            )
            if len({i for _, i in letters}) < k - 1:
                continue
            w = FenceWord(k, letters)
            try:
                p = fence_of_word(w)
            except DisconnectedFence:
                continue
            o = admissible_orientation(p)
            assert o is not None, letters
            d = link_of_oriented_plabic(p, o)
            beta = beta_of_fence_word(w)
            assert fingerprint(d) == fingerprint(beta.letters, beta.k), letters

    def test_rejects_inadmissible(self):
        p = fence(S1, T1)
        o = admissible_orientation(p)
        bad = type(o)(frozenset(list(o.heads)[:-1]))
        with pytest.raises(ValueError):
            link_of_oriented_plabic(p, bad)


class TestTrianglePush:
    def test_triangle_arc_macro(self):
        d = parse_planar_divide(TRIANGLE_ARC)
        site = yb_sites(d)[0]
        p = attach_plabic(d)
        macro = yb_as_moves(p, site)
        assert macro
        allowed = {f"{n}.{s}" for n in site.region_nodes for s in range(4)}
        for m in macro:
            assert {x[0] for x in m.site} <= allowed
        g = p
        for m in macro:
            g = apply_move(g, m)
        target = attach_plabic(apply_yb(d, site))
        assert canonical_code(g) == canonical_code(target)

    def test_symmetric_triangle_needs_no_moves(self):
        d = scannable_to_planar(wiring_diagram(3))
        site = yb_sites(d)[0]
        assert yb_as_moves(attach_plabic(d), site) == []

    def test_wrong_site_rejected(self):
        d = parse_planar_divide(TRIANGLE_ARC)
        p = attach_plabic(d)
        from morsify.divide import SiteDescriptor

        bogus = SiteDescriptor(("b1", "b2", "zz"), 0, ())
        with pytest.raises(SiteNotFound):
            yb_as_moves(p, bogus)

    def test_non_gadget_graph_rejected(self):
        d = parse_planar_divide(TRIANGLE_ARC)
        site = yb_sites(d)[0]
        with pytest.raises(SiteNotFound):
            yb_as_moves(fence(S1, T1), site)


class TestSerialization:
    def test_round_trip(self):
        for p in (fence(S1, T1), attach_plabic(parse_planar_divide(TRIANGLE_ARC))):
            assert parse_plabic(format_plabic(p)) == p

    def test_rot_remap(self):
        text = """
v a b i
v b w i
v e1 w d
v e2 w d
v e3 w d
v e4 w d
rot a 2 0 1
edge a.2 b.0
edge a.0 e1.0
edge a.1 e2.0
edge b.1 e3.0
edge b.2 e4.0
boundary e1 e2 e3 e4
"""
        p = parse_plabic(text)
        # slot 2 of the rotation line becomes slot 0 and so on
        assert frozenset({("a", 0), ("b", 0)}) in p.edges
        assert validate(p) == []

    def test_errors(self):
        with pytest.raises(ValueError):
            parse_plabic("v a b x\n")
        with pytest.raises(ValueError):
            parse_plabic("v a b i\nedge a.0 a.0\n")
        with pytest.raises(ValueError):
            parse_plabic("v a b i\nedge a.5 a.0\n")
        with pytest.raises(ValueError):
            parse_plabic("boundary ghost\n")


@given(
    st.lists(
        st.tuples(st.sampled_from("st"), st.integers(1, 2)),
        min_size=2,
        max_size=6,
    )
)
@settings(max_examples=25, deadline=None)
def test_fence_words_round_trip_and_validate(letters):
    letters = tuple(letters)
    if {i for _, i in letters} != {1, 2}:
        letters = letters + (("s", 1), ("s", 2))
    w = FenceWord(3, letters)
    try:
        p = fence_of_word(w)
    except DisconnectedFence:
        return  # some words fail the internal-face separation condition
    assert validate(p) == []
    assert word_of_fence(p) == w
