import random

import pytest

from matchcover.groups import (
    FiniteAction,
    FiniteTableGroup,
    FreeGroup,
    GroupError,
    IntegerLattice,
    cyclic_group,
    group_from_json,
    rotation_action,
    symmetric_group,
)

from oracles import zd_ball_size_oracle


F2 = FreeGroup(2)
Z2 = IntegerLattice(2)


def random_word(rng, rank, max_len):
    model = FreeGroup(rank)
    w = model.identity
    for _ in range(rng.randint(0, max_len)):
        w = model.multiply(w, rng.choice(model.generators()))
    return w


class TestMultiply:
    def test_identity_law(self):
        assert Z2.multiply(Z2.identity, (3, -1)) == (3, -1)
        w = F2.parse_elem("abA")
        assert F2.multiply(F2.identity, w) == w

    def test_free_reduction(self):
        assert F2.multiply((1,), (-1,)) == ()
        assert F2.multiply(F2.parse_elem("ab"), F2.parse_elem("Ba")) == (1, 1)

    def test_lattice_addition(self):
        assert Z2.multiply((1, 0), (0, 1)) == (1, 1)

    def test_mixed_groups_rejected(self):
        with pytest.raises(GroupError):
            Z2.multiply((1, 0), (1,))
        with pytest.raises(GroupError):
            F2.multiply((1,), (1, 0))

    def test_associativity_on_random_words(self):
        rng = random.Random(1)
        for _ in range(200):
            g = random_word(rng, 2, 12)
            h = random_word(rng, 2, 12)
            k = random_word(rng, 2, 12)
            assert F2.multiply(F2.multiply(g, h), k) == F2.multiply(g, F2.multiply(h, k))

    def test_inverse_law(self):
        rng = random.Random(2)
        for _ in range(50):
            g = random_word(rng, 3, 10)
            model = FreeGroup(3)
            assert model.multiply(g, model.inverse(g)) == ()


class TestBall:
    def test_radius_zero(self):
        assert F2.ball(0) == ((),)
        assert Z2.ball(0) == ((0, 0),)

    def test_f2_radius_two(self):
        assert len(F2.ball(2)) == 17

    def test_z2_radius_two(self):
        assert len(Z2.ball(2)) == 13

    def test_free_closed_form(self):
        for rank in (1, 2, 3):
            model = FreeGroup(rank)
            for r in range(0, 4):
                if rank == 1:
                    expected = 2 * r + 1
                else:
                    k = 2 * rank
                    expected = 1 + k * ((k - 1) ** r - 1) // (k - 2)
                assert len(model.ball(r)) == expected

    def test_lattice_against_dp_oracle(self):
        for d in (1, 2, 3):
            model = IntegerLattice(d)
            for r in range(0, 5):
                assert len(model.ball(r)) == zd_ball_size_oracle(d, r)

    def test_ball_cap(self):
        with pytest.raises(GroupError, match="cap"):
            F2.ball(8, max_size=100)

    def test_sorted_output(self):
        b = F2.ball(2)
        assert list(b) == sorted(b, key=F2.sort_key)


class TestTranslate:
    def test_identity_translate(self):
        f = Z2.canon_set([(0, 0), (1, 1)])
        assert Z2.translate(Z2.identity, f) == f

    def test_interval_shift(self):
        z = IntegerLattice(1)
        f = [(i,) for i in range(10)]
        assert z.translate((1,), f) == tuple((i,) for i in range(1, 11))

    def test_free_translate_is_injective(self):
        b2 = F2.ball(2)
        image = F2.translate((1,), b2)
        assert len(image) == 17

    def test_round_trip(self):
        rng = random.Random(3)
        for _ in range(40):
            f = F2.canon_set(random_word(rng, 2, 6) for _ in range(rng.randint(1, 6)))
            g = random_word(rng, 2, 5)
            assert F2.translate(F2.inverse(g), F2.translate(g, f)) == f


class TestFiniteTable:
    def test_cyclic_is_valid(self):
        g = cyclic_group(6)
        assert g.order == 6
        assert g.multiply(4, 5) == 3
        assert g.inverse(2) == 4

    def test_symmetric_group_order(self):
        s3 = symmetric_group(3)
        assert s3.order == 6
        e = s3.identity
        assert all(s3.multiply(x, s3.inverse(x)) == e for x in s3.elements())

    def test_non_associative_rejected(self):
        # 2-element table with a broken product
        with pytest.raises(GroupError):
            FiniteTableGroup(["e", "a"], [[0, 1], [1, 1]])

    def test_no_identity_rejected(self):
        with pytest.raises(GroupError, match="identity"):
            FiniteTableGroup(["a", "b"], [[0, 0], [0, 0]])

    def test_rotation_table_rejected_when_tampered(self):
        g = cyclic_group(4)
        rows = [list(r) for r in g.table]
        rows[1][2] = 0  # break 1+2=3
        with pytest.raises(GroupError):
            FiniteTableGroup(g.names, rows)

    def test_json_round_trip(self):
        g = symmetric_group(3)
        again = group_from_json(g.describe())
        assert again.describe() == g.describe()


class TestElementCodecs:
    def test_zd_round_trip(self):
        assert Z2.parse_elem(Z2.elem_str((4, -7))) == (4, -7)

    def test_free_round_trip(self):
        for s in ("1", "a", "aBa", "Abba"):
            assert F2.elem_str(F2.parse_elem(s)) == s

    def test_free_rejects_unknown_letter(self):
        with pytest.raises(GroupError):
            F2.parse_elem("xyz")

    def test_table_by_name(self):
        g = cyclic_group(3)
        assert g.parse_elem("2") == 2
        assert g.elem_str(1) == "1"


class TestFiniteAction:
    def test_rotation_basics(self):
        act = rotation_action(6)
        assert act.act(act.group.identity, ["0", "3"]) == ("0", "3")
        assert act.act(1, ["0", "1"]) == ("1", "2")

    def test_bijection_preserves_whole_set(self):
        act = rotation_action(5)
        pts = act.points
        for g in act.group.elements():
            assert act.act(g, pts) == pts

    def test_cardinality_preserved(self):
        act = rotation_action(7)
        rng = random.Random(4)
        for _ in range(20):
            subset = rng.sample(act.points, rng.randint(1, 7))
            g = rng.randrange(7)
            assert len(act.act(g, subset)) == len(subset)

    def test_identity_row_validated(self):
        g = cyclic_group(2)
        with pytest.raises(GroupError, match="identity"):
            FiniteAction(g, ["p", "q"], [[1, 0], [0, 1]])

    def test_homomorphism_validated(self):
        g = cyclic_group(3)
        bad = [[0, 1, 2], [1, 2, 0], [1, 2, 0]]  # element 2 copies element 1
        with pytest.raises(GroupError, match="respect"):
            FiniteAction(g, ["p", "q", "r"], bad)

    def test_unknown_point(self):
        act = rotation_action(3)
        with pytest.raises(GroupError, match="point"):
            act.act(1, ["9"])
