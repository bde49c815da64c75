import random
from itertools import combinations

import pytest

from chamberforms.matroid import uniform_matroid
from chamberforms.oriented_matroid import (AffineOrientedMatroid, Chirotope,
                                           ClosureCapExceeded, FVector,
                                           SignVector, chirotope_sign,
                                           cocircuits_from_chirotope, compose,
                                           conforms, separation)
from conftest import example13_C, line_arrangement, random_arrangement


def sv(text, ground=("1", "2", "3")):
    return SignVector.from_text(ground, text)


class TestSignVector:
    def test_text_round_trip(self):
        ground = tuple(str(i) for i in range(1, 9))
        v = SignVector.from_text(ground, "5 6 -7 -8")
        assert v.text() == "5 6 -7 -8"
        assert v.zero_set() == frozenset({"1", "2", "3", "4"})
        assert v.support() == ("5", "6", "7", "8")
        assert v.sign("7") == -1 and v.sign("1") == 0

    def test_from_signs_and_signs(self):
        v = SignVector.from_signs(("a", "b", "c"), (1, 0, -1))
        assert v.signs() == (1, 0, -1)
        assert v.key() == "+0-"

    def test_unknown_element_rejected(self):
        with pytest.raises(ValueError, match="unknown element"):
            sv("9")

    def test_duplicate_rejected(self):
        with pytest.raises(ValueError, match="twice"):
            sv("1 -1")

    def test_negation(self):
        assert (-sv("1 -2")).signs() == (-1, 1, 0)

    def test_key_order_plus_minus_zero(self):
        # canonical order: + < - < 0
        a, b, c = sv("1 2 3"), sv("1 -2 3"), sv("1 3")
        assert sorted([c, b, a], key=SignVector.key) == [a, b, c]


class TestComposition:
    def test_definition(self):
        assert compose(sv("2"), sv("-1 3")).signs() == (-1, 1, 1)

    def test_idempotent(self):
        x = sv("1 -2")
        assert compose(x, x) == x

    def test_first_wins(self):
        assert compose(sv("1", ("1", "2")), sv("-1 2", ("1", "2"))).signs() == (1, 1)

    def test_ground_mismatch(self):
        with pytest.raises(ValueError):
            compose(sv("1"), sv("1", ("1", "2")))

    def test_associative(self):
        rng = random.Random(3)
        ground = tuple("abcde")
        for _ in range(50):
            x, y, z = (SignVector.from_signs(
                ground, (rng.choice([-1, 0, 1]) for _ in ground))
                for _ in range(3))
            assert compose(compose(x, y), z) == compose(x, compose(y, z))


class TestConforms:
    def test_examples(self):
        assert conforms(sv("2"), sv("-1 2 3"))
        assert not conforms(sv("1", ("1", "2")), sv("-1 2", ("1", "2")))
        x = sv("1 -2 3")
        assert conforms(x, x)


class TestSeparation:
    def test_zero_on_self(self):
        x = sv("1 -2 3")
        assert separation(x, x) == 0

    def test_counts_differing_elements(self):
        assert separation(sv("1 2 3"), sv("1 -2 -3")) == 2
        assert separation(sv("1 2"), sv("1 -2 3")) == 2  # 0 vs + counts


class TestChirotope:
    def test_alternating(self):
        c = Chirotope.from_text(2, ("1", "2", "3"), "+++")
        assert chirotope_sign(c, ("1", "2")) == 1
        assert chirotope_sign(c, ("2", "1")) == -1

    def test_repeat_gives_zero(self):
        c = Chirotope.from_text(2, ("1", "2", "3"), "+++")
        assert chirotope_sign(c, ("1", "1")) == 0

    def test_identity_order_is_stored_sign(self):
        c = Chirotope.from_text(2, ("1", "2", "3"), "+-0")
        assert chirotope_sign(c, ("1", "3")) == -1
        assert chirotope_sign(c, ("2", "3")) == 0

    def test_text_round_trip(self):
        c = Chirotope.from_text(2, ("1", "2", "3"), "+-+")
        assert Chirotope.from_text(2, ("1", "2", "3"), c.text()).text() == c.text()

    def test_identically_zero_rejected(self):
        with pytest.raises(ValueError):
            Chirotope.from_text(2, ("1", "2", "3"), "000")

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError):
            Chirotope.from_text(2, ("1", "2", "3"), "+-")


class TestCocircuitsFromChirotope:
    def test_u23(self):
        c = Chirotope.from_text(2, ("1", "2", "3"), "+++")
        got = {y.key() for y in cocircuits_from_chirotope(c)}
        # one canonical representative per +- pair
        assert got == {"0++", "+0-", "++0"} or got == {"0++", "-0+", "--0"}
        # brute-force support minimality among all six signed cocircuits
        alls = [y for y in cocircuits_from_chirotope(c)] + \
               [-y for y in cocircuits_from_chirotope(c)]
        sups = [frozenset(y.support()) for y in alls]
        assert not any(a < b for a in sups for b in sups)

    def test_u12_parallel(self):
        c = Chirotope.from_text(1, ("1", "2"), "++")
        got = cocircuits_from_chirotope(c)
        assert len(got) == 1 and got[0].key() in ("++", "--")

    def test_rank_one_single_element(self):
        c = Chirotope.from_text(1, ("1",), "+")
        got = cocircuits_from_chirotope(c)
        assert len(got) == 1 and abs(got[0].signs()[0]) == 1


def om_example13() -> AffineOrientedMatroid:
    return example13_C().compile()


class TestBoundedTopes:
    def test_example13_two_chambers(self):
        assert len(om_example13().bounded_topes()) == 2

    def test_generic_eight_lines(self):
        arr = None
        rng = random.Random(4)
        from conftest import uniform_lines
        arr = uniform_lines(rng, 8)
        assert len(arr.compile().bounded_topes()) == 21

    def test_canonical_order_stable_under_reserialization(self):
        om = om_example13()
        om2 = AffineOrientedMatroid.from_json(om.to_json())
        assert [t.key() for t in om2.bounded_topes()] == \
            [t.key() for t in om.bounded_topes()]

    def test_every_tope_is_composition_of_its_cocircuit_faces(self):
        for om in (om_example13(), line_arrangement(4).compile()):
            for t in om.bounded_topes():
                faces = [y for y in om.feasible if conforms(y, t)]
                acc = faces[0]
                for y in faces[1:]:
                    acc = compose(acc, y)
                assert acc == t

    def test_closure_cap(self):
        arr = line_arrangement(5)
        with pytest.raises(ClosureCapExceeded):
            arr.compile(cap=3).bounded_topes()

    def test_closure_matches_geometric_face_count(self):
        # simple 2-dimensional arrangements: #faces = V + sum(k_i + 1) + (1 + n + V)
        rng = random.Random(9)
        for _ in range(5):
            arr = random_arrangement(rng, 2, rng.randint(3, 6))
            if arr is None:
                continue
            om = arr.compile()
            m = om.matroid()
            n = len(arr.ground)
            V = len(m.bases)
            edges = sum(
                sum(1 for b in m.bases if e in b) + 1 for e in arr.ground)
            chambers = 1 + n + V
            assert len(om.affine_covectors()) == V + edges + chambers


class TestCocircuitFaces:
    def test_triangle_has_three_vertices(self):
        om = om_example13()
        t = om.bounded_topes()[0]
        faces = om.cocircuit_faces(t)
        assert len(faces) == 3
        assert all(y.zero_set() in om.matroid().bases for y in faces)

    def test_square_chamber_has_four(self):
        from conftest import example13_Cprime
        om = example13_Cprime().compile()
        counts = sorted(len(om.cocircuit_faces(t)) for t in om.bounded_topes())
        assert counts == [3, 4]

    def test_segment_has_two(self):
        om = line_arrangement(2).compile()
        for t in om.bounded_topes():
            assert len(om.cocircuit_faces(t)) == 2

    def test_bounded_topes_have_only_feasible_faces(self, vamos_om):
        feas = {y.bits for y in vamos_om.feasible}
        for t in vamos_om.bounded_topes()[:5]:
            for y in vamos_om.cocircuit_faces(t):
                assert y.bits in feas


class TestMeetFaces:
    def test_triangle_with_itself(self):
        om = om_example13()
        t = om.bounded_topes()[0]
        fv = om.meet_faces(t, t)
        assert fv == FVector(2, (3, 3, 1))
        assert fv.euler_ok()

    def test_two_chambers_share_a_vertex(self):
        om = om_example13()
        a, b = om.bounded_topes()
        assert om.meet_faces(a, b) == FVector(0, (1,))
        assert separation(a, b) == 2

    def test_shared_edge_in_translated_arrangement(self):
        from conftest import example13_Cprime
        om = example13_Cprime().compile()
        a, b = om.bounded_topes()
        assert om.meet_faces(a, b) == FVector(1, (2, 1))
        assert separation(a, b) == 1

    def test_empty_meet_is_none(self):
        om = line_arrangement(3).compile()
        topes = om.bounded_topes()
        assert om.meet_faces(topes[0], topes[2]) is None

    def test_euler_on_all_pairs(self, vamos_om):
        topes = vamos_om.bounded_topes()
        for i in range(0, len(topes), 7):
            for j in range(i, len(topes), 7):
                fv = vamos_om.meet_faces(topes[i], topes[j])
                assert fv is None or fv.euler_ok()

    def test_diagonal_f0_matches_cocircuit_faces(self, vamos_om):
        for t in vamos_om.bounded_topes()[:6]:
            fv = vamos_om.meet_faces(t, t)
            assert fv.f[0] == len(vamos_om.cocircuit_faces(t))


class TestBasisToCocircuit:
    def test_example13_vertex(self):
        om = om_example13()
        y = om.basis_to_cocircuit({"H3", "H4"})
        # vertex at the origin: below H1, above H2
        assert y.sign("H1") == -1 and y.sign("H2") == 1
        assert y.zero_set() == frozenset({"H3", "H4"})

    def test_count_equals_bases(self):
        om = om_example13()
        assert len(om.feasible) == len(om.matroid().bases)

    def test_missing_basis_rejected(self):
        om = om_example13()
        with pytest.raises(ValueError):
            om.basis_to_cocircuit({"H1", "H2"})


class TestValidation:
    def test_duplicate_zero_set_rejected(self):
        chi = Chirotope.from_text(2, ("1", "2", "3"), "+++")
        dup = [SignVector.from_text(("1", "2", "3"), "3"),
               SignVector.from_text(("1", "2", "3"), "-3"),
               SignVector.from_text(("1", "2", "3"), "2")]
        with pytest.raises(ValueError, match="share a zero set"):
            AffineOrientedMatroid(chi, dup)

    def test_non_basis_zero_set_rejected(self):
        chi = Chirotope.from_text(2, ("1", "2", "3"), "+++")
        bad = [SignVector.from_text(("1", "2", "3"), "1 2")]  # zero set {3}
        with pytest.raises(ValueError, match="genericity"):
            AffineOrientedMatroid(chi, bad)

    def test_count_mismatch_rejected(self):
        chi = Chirotope.from_text(2, ("1", "2", "3"), "+++")
        feas = [SignVector.from_text(("1", "2", "3"), "3")]
        with pytest.raises(ValueError, match="bijectivity"):
            AffineOrientedMatroid(chi, feas)

    def test_genericity_rejected(self):
        chi = Chirotope.from_text(2, ("1", "2", "3"), "++0")
        feas = [SignVector.from_text(("1", "2", "3"), "3"),
                SignVector.from_text(("1", "2", "3"), "1 2"),
                SignVector.from_text(("1", "2", "3"), "-1 2")]
        with pytest.raises(ValueError, match="genericity"):
            AffineOrientedMatroid(chi, feas)
