import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skmlab.core import (
    CentroidSet,
    Dataset,
    DissimilarityTensor,
    Partition,
    Theta,
    WeightVector,
    hausdorff,
    hausdorff_directed,
    theta_distance,
    weighted_sqdist,
)
from skmlab.rng import stream

finite = st.floats(min_value=-50, max_value=50, allow_nan=False)


class TestWeightedSqdist:
    def test_identity(self):
        x = [1.3, -0.4, 2.0]
        assert weighted_sqdist(x, x, np.array([0.4, 0.3, 0.1])) == 0.0

    def test_unit_coordinate(self):
        assert weighted_sqdist([1.0, 0.0], [0.0, 0.0], np.array([1.0, 0.0])) == 1.0

    def test_hand_summation(self):
        # 0.5 * 1 + 0.5 * 4
        assert weighted_sqdist([1.0, 2.0], [0.0, 0.0], np.array([0.5, 0.5])) == pytest.approx(2.5)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            weighted_sqdist([1.0, 2.0], [0.0], np.array([1.0, 1.0]))

    @given(
        st.lists(finite, min_size=1, max_size=4),
        st.lists(finite, min_size=1, max_size=4),
        st.lists(st.floats(min_value=0, max_value=1), min_size=1, max_size=4),
    )
    @settings(max_examples=60, deadline=None)
    def test_symmetry_and_nonnegativity(self, xs, ys, ws):
        m = min(len(xs), len(ys), len(ws))
        x, y, w = np.array(xs[:m]), np.array(ys[:m]), np.array(ws[:m])
        d = weighted_sqdist(x, y, w)
        assert d >= 0.0
        assert d == pytest.approx(weighted_sqdist(y, x, w))

    def test_zero_iff_equal_on_support(self):
        w = np.array([1.0, 0.0])
        assert weighted_sqdist([1.0, 5.0], [1.0, -3.0], w) == 0.0
        assert weighted_sqdist([1.0, 0.0], [2.0, 0.0], w) > 0.0

    def test_monotone_in_weights(self):
        x, y = np.array([1.0, 2.0]), np.array([0.0, 0.0])
        lo = weighted_sqdist(x, y, np.array([0.2, 0.5]))
        hi = weighted_sqdist(x, y, np.array([0.3, 0.5]))
        assert hi >= lo


class TestHausdorff:
    def test_identical_singletons(self):
        assert hausdorff([[1.0, 2.0]], [[1.0, 2.0]]) == 0.0

    def test_one_dimensional_points(self):
        assert hausdorff([[0.0]], [[1.0]]) == pytest.approx(1.0)

    def test_point_to_set_enumeration(self):
        # directed({0,2}->{1}) = 1 and directed({1}->{0,2}) = 1
        assert hausdorff([[0.0], [2.0]], [[1.0]]) == pytest.approx(1.0)

    def test_empty_set_rejected(self):
        with pytest.raises(ValueError):
            hausdorff(np.empty((0, 2)), [[0.0, 0.0]])

    def test_directed_asymmetry(self):
        A = [[0.0], [10.0]]
        B = [[0.0]]
        assert hausdorff_directed(A, B) == pytest.approx(10.0)
        assert hausdorff_directed(B, A) == pytest.approx(0.0)

    def test_metric_axioms_random_triples(self):
        rng = stream(5, "hausdorff-axioms")
        for _ in range(200):
            p = int(rng.integers(1, 4))
            A = rng.uniform(-2, 2, size=(rng.integers(1, 5), p))
            B = rng.uniform(-2, 2, size=(rng.integers(1, 5), p))
            C = rng.uniform(-2, 2, size=(rng.integers(1, 5), p))
            dab, dba = hausdorff(A, B), hausdorff(B, A)
            assert dab == pytest.approx(dba)
            assert dab >= 0.0
            assert hausdorff(A, A) == 0.0
            assert hausdorff(A, C) <= dab + hausdorff(B, C) + 1e-12


class TestThetaDistance:
    def _theta(self, w, centers, s=2.0):
        return Theta(weights=WeightVector(w=w, s=s), structure=CentroidSet(centers=centers))

    def test_identical(self):
        t = self._theta([0.5, 0.5], [[0.0, 0.0], [1.0, 1.0]])
        assert theta_distance(t, t) == 0.0

    def test_weight_term_only(self):
        a = [[0.0, 0.0], [1.0, 1.0]]
        t1 = self._theta([0.8, 0.0], a)
        t2 = self._theta([0.5, 0.0], a)
        assert theta_distance(t1, t2) == pytest.approx(0.3)

    def test_max_rule(self):
        t1 = self._theta([0.5, 0.0], [[0.0, 0.0]])
        t2 = self._theta([0.4, 0.0], [[0.4, 0.0]])
        assert theta_distance(t1, t2) == pytest.approx(0.4)

    def test_mode_mismatch(self):
        t1 = self._theta([0.5, 0.5], [[0.0, 0.0]])
        t2 = Theta(
            weights=WeightVector(w=[0.5, 0.5], s=2.0),
            structure=Partition(labels=[0, 1], K=2),
        )
        with pytest.raises(ValueError):
            theta_distance(t1, t2)

    def test_metric_axioms_random(self):
        rng = stream(9, "theta-axioms")
        for _ in range(100):
            thetas = []
            for _ in range(3):
                v = np.abs(rng.standard_normal(3))
                w = v / np.linalg.norm(v)
                thetas.append(self._theta(w, rng.uniform(-1, 1, size=(2, 3))))
            t1, t2, t3 = thetas
            d12, d21 = theta_distance(t1, t2), theta_distance(t2, t1)
            assert d12 == pytest.approx(d21)
            assert theta_distance(t1, t1) == 0.0
            assert theta_distance(t1, t3) <= d12 + theta_distance(t2, t3) + 1e-12


class TestTypeInvariants:
    def test_dataset_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            Dataset(values=[[np.nan]])

    def test_dataset_bound_enforced(self):
        with pytest.raises(ValueError):
            Dataset(values=[[2.0]], bound_M=1.0)
        Dataset(values=[[0.5]], bound_M=1.0)

    def test_weight_vector_constraints(self):
        with pytest.raises(ValueError):
            WeightVector(w=[-0.1, 0.5], s=1.0)
        with pytest.raises(ValueError):
            WeightVector(w=[1.0, 1.0], s=3.0)  # L2 violation
        with pytest.raises(ValueError):
            WeightVector(w=[0.6, 0.6], s=1.0)  # L1 violation
        WeightVector(w=[0.6, 0.6], s=1.3)

    def test_weight_vector_allows_feasibility_slack(self):
        WeightVector(w=[1.0 + 5e-10, 0.0], s=1.0)

    def test_partition_label_range_and_nonempty(self):
        with pytest.raises(ValueError):
            Partition(labels=[0, 2], K=2)
        with pytest.raises(ValueError):
            Partition(labels=[0, 0, 0], K=2)
        part = Partition(labels=[0, 1, 0], K=2)
        assert part.counts.tolist() == [2, 1]

    def test_tensor_symmetry_and_diagonal(self):
        good = np.zeros((2, 2, 1))
        good[0, 1, 0] = good[1, 0, 0] = 1.0
        DissimilarityTensor(d=good, bound_M=1.0)
        bad_diag = good.copy()
        bad_diag[0, 0, 0] = 0.5
        with pytest.raises(ValueError):
            DissimilarityTensor(d=bad_diag, bound_M=1.0)
        asym = good.copy()
        asym[0, 1, 0] = 2.0
        with pytest.raises(ValueError):
            DissimilarityTensor(d=asym, bound_M=2.0)
        with pytest.raises(ValueError):
            DissimilarityTensor(d=good, bound_M=0.5)

    def test_centroid_set_degenerate_flag(self):
        assert CentroidSet(centers=[[1.0], [1.0]]).degenerate
        assert not CentroidSet(centers=[[1.0], [2.0]]).degenerate
