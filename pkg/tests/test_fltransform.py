import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flstego.errors import DimensionError, DomainError
from flstego.fltransform import (
    MAX_MAP_INDEX,
    MAX_SEQUENCE_INDEX,
    FLMap,
    apply_point,
    build_map,
    fib,
    lucas,
    parse_map_id,
    period,
    scramble,
    unscramble,
)
from oracles import brute_period, brute_scramble_once


class TestSequences:
    @pytest.mark.parametrize("n, expected", [(1, 1), (6, 8), (11, 89)])
    def test_fib_table_values(self, n, expected):
        assert fib(n) == expected

    @pytest.mark.parametrize("n, expected", [(1, 2), (6, 11), (7, 18)])
    def test_lucas_table_values(self, n, expected):
        assert lucas(n) == expected

    def test_full_table_rows(self):
        assert [fib(n) for n in range(1, 12)] == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]
        assert [lucas(n) for n in range(1, 12)] == [2, 1, 3, 4, 7, 11, 18, 29, 47, 76, 123]

    def test_largest_index_fits_int64(self):
        assert fib(MAX_SEQUENCE_INDEX) < 2**63
        assert lucas(MAX_SEQUENCE_INDEX) < 2**63

    @pytest.mark.parametrize("n", [0, -1, MAX_SEQUENCE_INDEX + 1])
    def test_index_out_of_range(self, n):
        with pytest.raises(DomainError):
            fib(n)
        with pytest.raises(DomainError):
            lucas(n)


class TestBuildMap:
    def test_first_map(self):
        assert build_map(1, 256).entries == (1, 1, 2, 1)

    def test_sixth_map(self):
        assert build_map("FL6", 256).entries == (8, 13, 11, 18)

    def test_sixth_map_reduced_mod_5(self):
        assert build_map(6, 5).entries == (3, 3, 1, 3)

    def test_arnold(self):
        m = build_map("ARNOLD", 7)
        assert m.entries == (1, 1, 1, 2)
        assert m.index is None and m.name == "ARNOLD"
        assert m.det == 1

    def test_arnold_reduced_mod_2(self):
        assert build_map("arnold", 2).entries == (1, 1, 1, 0)

    @pytest.mark.parametrize("text, index", [("FL6", 6), ("fl12", 12), (" FL1 ", 1), (3, 3), ("ARNOLD", None)])
    def test_parse_map_id(self, text, index):
        assert parse_map_id(text) == index

    @pytest.mark.parametrize("bad", ["FL0", "FL", "cat", 0, MAX_MAP_INDEX + 1, f"FL{MAX_MAP_INDEX + 1}", 2.5])
    def test_bad_map_id(self, bad):
        with pytest.raises(DomainError):
            build_map(bad, 16)

    @pytest.mark.parametrize("modulus", [1, 0, -4])
    def test_bad_modulus(self, modulus):
        with pytest.raises(DomainError):
            build_map(6, modulus)

    @pytest.mark.parametrize("i", range(1, 21))
    def test_determinant_law(self, i):
        for n in range(2, 65):
            assert build_map(i, n).det == (-1) ** i % n

    def test_highest_index_builds(self):
        m = build_map(MAX_MAP_INDEX, 1000)
        assert all(0 <= v < 1000 for v in m.entries)

    def test_inverse_entries(self):
        m = build_map(6, 256)
        a, b, c, d = m.entries
        e, f, g, h = m.inverse_entries()
        assert ((a * e + b * g) % 256, (a * f + b * h) % 256) == (1, 0)
        assert ((c * e + d * g) % 256, (c * f + d * h) % 256) == (0, 1)


class TestApplyPoint:
    def test_origin_fixed(self):
        assert apply_point(build_map(1, 2), (0, 0)) == (0, 0)

    def test_fl1_mod2(self):
        assert apply_point(build_map(1, 2), (0, 1)) == (1, 1)

    def test_fl6_column(self):
        assert apply_point(build_map(6, 256), (1, 0)) == (8, 11)

    @pytest.mark.parametrize("p", [(-1, 0), (0, 2), (2, 2)])
    def test_out_of_range(self, p):
        with pytest.raises(DomainError):
            apply_point(build_map(1, 2), p)

    @pytest.mark.parametrize("map_id", ["FL1", "FL2", "FL6", "FL9", "ARNOLD"])
    def test_bijection_on_torus(self, map_id):
        for n in range(2, 65):
            m = build_map(map_id, n)
            images = {apply_point(m, (x, y)) for x in range(n) for y in range(n)}
            assert len(images) == n * n


class TestPeriod:
    def test_fl6_mod_256(self):
        assert period(build_map(6, 256)) == 256

    def test_fl1_mod_2(self):
        assert period(build_map(1, 2)) == 2

    def test_identity_matrix_has_period_one(self):
        # no FL(i) reduces to the identity, so build the matrix directly
        assert period(FLMap(None, 7, (1, 0, 0, 1))) == 1

    @pytest.mark.parametrize("i", range(1, 9))
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 8, 12, 16])
    def test_matches_naive_powering(self, i, n):
        m = build_map(i, n)
        assert period(m) == brute_period(m.entries, n)

    @pytest.mark.parametrize("i", range(1, 13))
    def test_bounded_by_n_squared_minus_one(self, i):
        for n in range(2, 33):
            assert period(build_map(i, n)) <= n * n - 1


class TestScramble:
    def test_zero_iterations_copy(self, rng):
        img = rng.integers(0, 256, (16, 16), dtype=np.uint8)
        out = scramble(img, build_map(6, 16), 0)
        assert np.array_equal(out, img)
        assert out is not img

    def test_two_by_two_hand_example(self):
        # (0,0)->(0,0), (0,1)->(1,1), (1,0)->(1,0), (1,1)->(0,1)
        p, q, r, s = 10, 20, 30, 40
        out = scramble(np.array([[p, q], [r, s]], dtype=np.uint8), build_map(1, 2), 1)
        assert out.tolist() == [[p, s], [r, q]]

    @pytest.mark.parametrize("map_id", ["FL1", "FL6", "ARNOLD"])
    @pytest.mark.parametrize("n", [5, 8, 11])
    def test_single_step_matches_brute_force(self, rng, map_id, n):
        img = rng.integers(0, 256, (n, n), dtype=np.uint8)
        m = build_map(map_id, n)
        assert np.array_equal(scramble(img, m, 1), brute_scramble_once(img, m))

    def test_multi_step_matches_repeated_brute_force(self, rng):
        img = rng.integers(0, 2, (9, 9), dtype=np.uint8)
        m = build_map(4, 9)
        ref = img
        for t in range(1, 15):
            ref = brute_scramble_once(ref, m)
            assert np.array_equal(scramble(img, m, t), ref)

    @pytest.mark.parametrize("n", [2, 4, 8, 16, 32])
    @pytest.mark.parametrize("i", range(1, 9))
    def test_full_period_restores(self, rng, n, i):
        img = rng.integers(0, 256, (n, n), dtype=np.uint8)
        m = build_map(i, n)
        assert np.array_equal(scramble(img, m, period(m)), img)

    def test_fl6_256_full_period_restores(self, rng):
        img = rng.integers(0, 2, (256, 256), dtype=np.uint8)
        m = build_map(6, 256)
        assert np.array_equal(scramble(img, m, 256), img)
        assert not np.array_equal(scramble(img, m, 128), img)

    def test_period_by_image_return(self):
        for i in range(1, 9):
            for n in (2, 4, 8, 16):
                m = build_map(i, n)
                start = np.arange(n * n).reshape(n, n)
                cur = scramble(start, m, 1)
                steps = 1
                while not np.array_equal(cur, start):
                    cur = scramble(cur, m, 1)
                    steps += 1
                assert steps == period(m)

    def test_distinct_maps_scramble_differently(self):
        img = np.arange(256).reshape(16, 16) % 7
        a = scramble(img, build_map(1, 16), 1)
        b = scramble(img, build_map(6, 16), 1)
        assert not np.array_equal(a, b)

    @pytest.mark.parametrize("shape, modulus", [((4, 4), 5), ((4, 5), 4), ((4,), 4)])
    def test_dimension_mismatch(self, shape, modulus):
        with pytest.raises(DimensionError):
            scramble(np.zeros(shape, dtype=np.uint8), build_map(6, modulus), 1)

    def test_negative_iterations(self):
        with pytest.raises(DomainError):
            scramble(np.zeros((4, 4), dtype=np.uint8), build_map(6, 4), -1)

    def test_preserves_dtype(self):
        img = np.eye(4, dtype=np.uint8)
        assert scramble(img, build_map(3, 4), 2).dtype == np.uint8


@st.composite
def map_and_image(draw, max_side=16):
    n = draw(st.integers(2, max_side))
    map_id = draw(st.one_of(st.integers(1, 20).map(lambda i: f"FL{i}"), st.just("ARNOLD")))
    seed = draw(st.integers(0, 2**32 - 1))
    img = np.random.default_rng(seed).integers(0, 256, (n, n), dtype=np.uint8)
    return build_map(map_id, n), img


class TestScrambleProperties:
    @settings(max_examples=60, deadline=None)
    @given(map_and_image(), st.integers(0, 300), st.integers(0, 300))
    def test_iteration_additivity(self, mi, s, t):
        m, img = mi
        assert np.array_equal(scramble(scramble(img, m, s), m, t), scramble(img, m, s + t))

    @settings(max_examples=60, deadline=None)
    @given(map_and_image(), st.integers(0, 300))
    def test_histogram_preserved(self, mi, t):
        m, img = mi
        out = scramble(img, m, t)
        assert np.array_equal(np.bincount(out.ravel(), minlength=256), np.bincount(img.ravel(), minlength=256))

    @settings(max_examples=60, deadline=None)
    @given(map_and_image(), st.integers(0, 300))
    def test_unscramble_inverts(self, mi, t):
        m, img = mi
        assert np.array_equal(unscramble(scramble(img, m, t), m, t), img)
        assert np.array_equal(scramble(unscramble(img, m, t), m, t), img)


class TestUnscramble:
    def test_zero_iterations(self, rng):
        img = rng.integers(0, 2, (8, 8), dtype=np.uint8)
        assert np.array_equal(unscramble(img, build_map(6, 8), 0), img)

    def test_round_trip_fl6_256(self, rng):
        img = rng.integers(0, 2, (256, 256), dtype=np.uint8)
        m = build_map(6, 256)
        assert np.array_equal(unscramble(scramble(img, m, 5), m, 5), img)

    @pytest.mark.parametrize("i", [1, 3, 6, 8])
    def test_equals_complementary_forward_iterations(self, rng, i):
        m = build_map(i, 16)
        p = period(m)
        img = rng.integers(0, 256, (16, 16), dtype=np.uint8)
        for t in range(0, p + 3):
            assert np.array_equal(unscramble(img, m, t), scramble(img, m, (p - t) % p))
