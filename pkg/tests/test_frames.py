import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framescale import (
    ExponentialGuardError,
    Frame,
    HermitianMatrix,
    ScalarField,
    affinely_independent_outer_products,
    build_scaling_matrix,
    complement_property,
    devectorize,
    frame_operator,
    is_full_spark,
    normalize_frame,
    outer_products_independent,
    outer_spark,
    random_frame,
    spark,
    tightness,
    verify_scaling,
)
from golden import onb, spark_inequality_holds
from oracles import brute_complement, brute_outer_spark, brute_spark


C = ScalarField.COMPLEX
R = ScalarField.REAL
seeds = st.integers(0, 2**32 - 1)


class TestFrameType:
    def test_rejects_zero_vector(self):
        with pytest.raises(ValueError, match="zero"):
            Frame(np.array([[1.0, 0.0], [0.0, 0.0]]), R)

    def test_rejects_complex_entries_in_real_frame(self):
        with pytest.raises(ValueError):
            Frame(np.array([[1.0, 1j]]), R)

    def test_non_spanning_sets_are_allowed(self):
        f = Frame(np.array([[1.0, 0.0, 0.0]]), R)
        assert not tightness(f).is_frame

    def test_labels(self):
        f = Frame(np.eye(2), R, ["a", "b"])
        assert f.labels == ("a", "b")
        assert f.subframe([1]).labels == ("b",)
        with pytest.raises(ValueError):
            Frame(np.eye(2), R, ["a"])

    def test_vectors_are_read_only(self, ex1):
        with pytest.raises(ValueError):
            ex1.vectors[0, 0] = 5


class TestFrameOperator:
    def test_orthonormal_basis(self):
        for d in (1, 2, 4):
            np.testing.assert_allclose(frame_operator(onb(d)).entries, np.eye(d))

    def test_example_two(self, ex2):
        # e1e1* + e2e2* = I and the two diagonal vectors contribute 2I
        direct = sum(np.outer(v, v.conj()) for v in ex2.vectors)
        np.testing.assert_allclose(direct, 3 * np.eye(2))
        np.testing.assert_allclose(frame_operator(ex2).entries, 3 * np.eye(2))

    def test_mercedes_benz(self, mercedes):
        direct = sum(np.outer(v, v) for v in mercedes.vectors)
        np.testing.assert_allclose(frame_operator(mercedes).entries, direct, atol=1e-15)
        np.testing.assert_allclose(frame_operator(mercedes).entries, 1.5 * np.eye(2), atol=1e-15)

    @pytest.mark.parametrize("field", [R, C])
    def test_linear_in_weights(self, field):
        rng = np.random.default_rng(4)
        for _ in range(20):
            f = random_frame(int(rng.integers(1, 5)), int(rng.integers(1, 9)), field, int(rng.integers(1 << 30)))
            w = rng.uniform(0, 3, f.n)
            A = build_scaling_matrix(f)
            S = frame_operator(f.scaled(w))
            np.testing.assert_allclose(S.entries, devectorize(A.apply(w), f.vec).entries, atol=1e-11)


class TestTightness:
    def test_orthonormal_basis(self):
        info = tightness(onb(3))
        assert info.is_frame and info.is_tight and info.is_parseval
        assert info.lower_bound == pytest.approx(1.0) and info.upper_bound == pytest.approx(1.0)

    def test_mercedes_tight_not_parseval(self, mercedes):
        info = tightness(mercedes)
        assert info.lower_bound == pytest.approx(1.5) and info.upper_bound == pytest.approx(1.5)
        assert info.is_tight and not info.is_parseval

    def test_two_vectors_not_tight(self, nonscalable):
        info = tightness(nonscalable)
        assert info.is_frame and not info.is_tight
        assert info.lower_bound == pytest.approx(1 - math.sqrt(0.5), abs=1e-12)
        assert info.upper_bound == pytest.approx(1 + math.sqrt(0.5), abs=1e-12)

    def test_non_frame_has_zero_lower_bound(self):
        info = tightness(Frame(np.array([[1.0, 0.0], [2.0, 0.0]]), R))
        assert not info.is_frame and info.lower_bound == 0.0 and info.upper_bound == pytest.approx(5.0)


class TestOuterProductIndependence:
    def test_example_one(self, ex1):
        assert outer_products_independent(ex1)

    def test_example_two(self, ex2):
        assert not outer_products_independent(ex2)

    def test_too_many_vectors(self):
        assert not outer_products_independent(random_frame(2, 5, C, seed=1))
        assert not outer_products_independent(random_frame(2, 4, R, seed=1))

    @given(seeds, st.sampled_from([R, C]))
    def test_three_pairwise_non_parallel_vectors(self, seed, field):
        # exercise: any three pairwise non-parallel vectors in dimension 2
        f = random_frame(2, 3, field, seed)
        assert outer_products_independent(f)

    def test_three_integer_vectors_non_parallel(self):
        f = Frame(np.array([[1, 0], [1, 1], [1, 2]], dtype=complex), C)
        assert outer_products_independent(f)
        assert not outer_products_independent(Frame(np.array([[1, 0], [1, 1], [2, 2]], dtype=complex), C))

    @pytest.mark.parametrize("field", [R, C])
    def test_independent_vectors_give_independent_outer_products(self, field):
        for d in range(1, 7):
            for seed in range(10):
                f = random_frame(d, int(np.random.default_rng(seed).integers(1, d + 1)), field, seed)
                assert outer_products_independent(f)

    @pytest.mark.parametrize("field", [R, C])
    def test_full_spark_and_at_most_2d_minus_1(self, field):
        for d in range(1, 5):
            for seed in range(10):
                f = random_frame(d, 2 * d - 1, field, seed)
                assert is_full_spark(f)
                assert outer_products_independent(f)

    @pytest.mark.parametrize("field", [R, C])
    def test_affine_and_linear_independence_agree_for_unit_norm(self, field):
        rng = np.random.default_rng(9)
        for _ in range(60):
            d = int(rng.integers(1, 4))
            n = int(rng.integers(1, field.real_dim(d) + 3))
            f = random_frame(d, n, field, int(rng.integers(1 << 30)), unit_norm=True)
            assert outer_products_independent(f) == affinely_independent_outer_products(f)

    def test_affine_and_linear_agree_on_dependent_example(self, ex2):
        unit, _ = normalize_frame(ex2)
        assert not affinely_independent_outer_products(unit)


class TestSpark:
    def test_orthonormal_basis_sentinel(self):
        assert spark(onb(3)) == 4
        assert is_full_spark(onb(3))

    def test_example_two(self, ex2):
        assert spark(ex2) == 3
        assert is_full_spark(ex2)

    def test_example_one(self, ex1):
        assert spark(ex1) == 3
        assert not is_full_spark(ex1)

    def test_example_three_five_subsets(self, ex3):
        for subset in combinations(range(6), 5):
            assert not is_full_spark(ex3.subframe(subset))

    def test_parallel_vectors(self):
        f = Frame(np.array([[1.0, 2.0, 0.0], [2.0, 4.0, 0.0], [0.0, 0.0, 1.0]]), R)
        assert spark(f) == 2

    def test_fewer_than_d_vectors_are_not_full_spark(self):
        assert not is_full_spark(Frame(np.array([[1.0, 0.0, 0.0]]), R))

    def test_outer_spark_examples(self, ex1, ex2, ex3):
        assert outer_spark(ex2) == 4
        assert outer_spark(ex1) == 6
        assert outer_spark(ex3) == 7

    def test_against_exact_brute_force(self):
        rng = np.random.default_rng(12)
        for _ in range(25):
            d = int(rng.integers(2, 4))
            n = int(rng.integers(1, 7))
            V = rng.integers(-1, 2, size=(n, d))
            V[np.all(V == 0, axis=1), 0] = 1
            f = Frame(V.astype(float), R)
            rows = V.tolist()
            assert spark(f) == brute_spark(rows)
            assert outer_spark(f) == brute_outer_spark(rows)
            assert spark_inequality_holds(f)

    def test_guard(self):
        f = random_frame(2, 26, R, seed=0)
        for fn in (spark, outer_spark, complement_property, is_full_spark):
            with pytest.raises(ExponentialGuardError):
                fn(f)
        assert spark(f, max_n=24, force=True) == 3
        assert spark(f, max_n=30) == 3


class TestComplementProperty:
    def test_examples(self, ex1, ex2, ex3):
        assert not complement_property(ex1)
        assert complement_property(ex2)
        assert complement_property(ex3)

    def test_short_frames_fail(self):
        assert not complement_property(onb(3))

    def test_against_exact_brute_force(self):
        rng = np.random.default_rng(21)
        for _ in range(25):
            d = int(rng.integers(2, 4))
            n = int(rng.integers(2 * d - 2, 2 * d + 2))
            V = rng.integers(-1, 2, size=(n, d))
            V[np.all(V == 0, axis=1), 0] = 1
            f = Frame(V.astype(float), R)
            assert complement_property(f) == brute_complement(V.tolist(), d)

    @given(seeds)
    @settings(max_examples=30)
    def test_permutation_invariant(self, seed):
        rng = np.random.default_rng(seed)
        d = int(rng.integers(2, 4))
        V = rng.integers(-1, 2, size=(int(rng.integers(2 * d - 1, 2 * d + 2)), d)).astype(float)
        V[np.all(V == 0, axis=1), 0] = 1.0
        f = Frame(V, R)
        g = Frame(V[rng.permutation(len(V))], R)
        assert complement_property(f) == complement_property(g)

    def test_full_spark_2d_minus_1_has_complement_property(self):
        for d in (2, 3):
            f = random_frame(d, 2 * d - 1, C, seed=d)
            assert complement_property(f) == is_full_spark(f) is True


class TestRandomFrame:
    def test_deterministic(self):
        a = random_frame(3, 7, C, seed=42)
        b = random_frame(3, 7, C, seed=42)
        assert np.array_equal(a.vectors, b.vectors)
        assert not np.array_equal(a.vectors, random_frame(3, 7, C, seed=43).vectors)

    def test_unit_norm(self):
        f = random_frame(4, 6, R, seed=0, unit_norm=True)
        np.testing.assert_allclose(f.norms(), 1.0, atol=1e-15)
        assert f.vectors.dtype == np.float64

    def test_complex_field(self):
        f = random_frame(2, 3, C, seed=0)
        assert np.iscomplexobj(f.vectors) and np.any(f.vectors.imag != 0)

    @pytest.mark.parametrize("d,field", [(3, C), (3, R)])
    def test_generic_independence(self, d, field):
        n = field.real_dim(d)
        assert all(outer_products_independent(random_frame(d, n, field, seed)) for seed in range(200))

    def test_invalid_sizes(self):
        with pytest.raises(ValueError):
            random_frame(0, 3)


class TestNormalizeFrame:
    def test_already_unit_norm(self):
        f = random_frame(3, 5, C, seed=1, unit_norm=True)
        unit, norms = normalize_frame(f)
        np.testing.assert_allclose(norms, 1.0, atol=1e-15)
        np.testing.assert_allclose(unit.vectors, f.vectors, atol=1e-15)

    def test_example_two(self, ex2):
        unit, norms = normalize_frame(ex2)
        s = 1 / math.sqrt(2)
        np.testing.assert_allclose(unit.vectors, [[1, 0], [0, 1], [s, s], [s, -s]], atol=1e-15)
        np.testing.assert_allclose(norms, [1, 1, math.sqrt(2), math.sqrt(2)])

    def test_scaling_transfer(self, ex2):
        unit, norms = normalize_frame(ex2)
        w_unit = np.array([0.0, 0.0, 1.0, 1.0])
        assert verify_scaling(unit, w_unit)[1]
        w_orig = w_unit / norms**2
        np.testing.assert_allclose(w_orig, [0, 0, 0.5, 0.5])
        assert verify_scaling(ex2, w_orig)[1]
