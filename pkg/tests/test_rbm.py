"""Restricted Boltzmann machine numerics.

The oracles here enumerate every configuration with explicit Python
loops, independent of the vectorised code under test.
"""

import itertools

import numpy as np
import pytest
from sklearn.base import clone

from sensealign.errors import BadModelFile, TooLargeToEnumerate
from sensealign.rbm import BernoulliRbm, _binary_states


def energy_oracle(model: BernoulliRbm, v, h) -> float:
    e = 0.0
    for i, vi in enumerate(v):
        e -= model.visible_bias_[i] * vi
    for j, hj in enumerate(h):
        e -= model.hidden_bias_[j] * hj
    for i, vi in enumerate(v):
        for j, hj in enumerate(h):
            e -= vi * hj * model.weights_[j, i]
    return e


def joint_oracle(model: BernoulliRbm):
    """(visible states, hidden states, joint table) by brute force."""
    vs = list(itertools.product([0.0, 1.0], repeat=model.n_visible_))
    hs = list(itertools.product([0.0, 1.0], repeat=model.n_hidden))
    unnorm = np.array([[np.exp(-energy_oracle(model, v, h)) for h in hs] for v in vs])
    return vs, hs, unnorm / unnorm.sum()


def random_model(rng: np.random.RandomState, n_visible: int, n_hidden: int) -> BernoulliRbm:
    model = BernoulliRbm(n_hidden=n_hidden)
    model.n_visible_ = n_visible
    model.weights_ = rng.randn(n_hidden, n_visible)
    model.visible_bias_ = rng.randn(n_visible)
    model.hidden_bias_ = rng.randn(n_hidden)
    model.reconstruction_errors_ = []
    return model


BLOCK_DATA = np.array(
    [
        [1, 1, 1, 0, 0, 0],
        [1, 1, 1, 0, 0, 0],
        [1, 1, 0, 0, 0, 0],
        [0, 0, 0, 1, 1, 1],
        [0, 0, 0, 1, 1, 1],
        [0, 0, 0, 0, 1, 1],
    ],
    dtype=np.float64,
)


class TestStateEnumeration:
    def test_counting_order(self):
        expected = np.array(list(itertools.product([0.0, 1.0], repeat=3)))
        np.testing.assert_array_equal(_binary_states(3), expected)

    def test_zero_units(self):
        assert _binary_states(0).shape == (1, 0)


class TestExactQuantities:
    def test_energy_matches_oracle(self):
        rng = np.random.RandomState(67)
        model = random_model(rng, 4, 3)
        for _ in range(50):
            v = rng.randint(0, 2, size=4).astype(float)
            h = rng.randint(0, 2, size=3).astype(float)
            assert model.energy(v, h) == pytest.approx(energy_oracle(model, v, h), abs=1e-12)

    def test_joint_table_sums_to_one(self):
        rng = np.random.RandomState(71)
        for _ in range(50):
            model = random_model(rng, 3, 2)
            _, _, P = model.exact_joint_probabilities()
            assert abs(P.sum() - 1.0) < 1e-9
            assert np.all(P >= 0)

    def test_joint_table_matches_oracle(self):
        rng = np.random.RandomState(73)
        for _ in range(20):
            model = random_model(rng, 3, 2)
            V, H, P = model.exact_joint_probabilities()
            vs, hs, P_oracle = joint_oracle(model)
            np.testing.assert_array_equal(V, np.array(vs))
            np.testing.assert_array_equal(H, np.array(hs))
            np.testing.assert_allclose(P, P_oracle, atol=1e-12)

    def test_partition_matches_oracle(self):
        rng = np.random.RandomState(79)
        for _ in range(20):
            model = random_model(rng, 3, 3)
            vs, hs, _ = joint_oracle(model)
            z = sum(
                np.exp(-energy_oracle(model, v, h)) for v in vs for h in hs
            )
            assert model.exact_partition() == pytest.approx(np.log(z), abs=1e-9)

    def test_conditionals_match_joint_table(self):
        rng = np.random.RandomState(83)
        for _ in range(20):
            model = random_model(rng, 3, 2)
            V, H, P = model.exact_joint_probabilities()
            for vi, v in enumerate(V):
                pv = P[vi].sum()
                cond = model.hidden_probabilities(v)[0]
                for j in range(model.n_hidden):
                    mass = P[vi][H[:, j] == 1].sum()
                    assert cond[j] == pytest.approx(mass / pv, abs=1e-9)

    def test_log_likelihood_matches_oracle(self):
        rng = np.random.RandomState(89)
        model = random_model(rng, 4, 2)
        X = rng.randint(0, 2, size=(6, 4)).astype(float)
        hs = list(itertools.product([0.0, 1.0], repeat=2))
        vs_all = list(itertools.product([0.0, 1.0], repeat=4))
        z = sum(np.exp(-energy_oracle(model, v, h)) for v in vs_all for h in hs)
        expected = np.mean(
            [
                np.log(sum(np.exp(-energy_oracle(model, x, h)) for h in hs) / z)
                for x in X
            ]
        )
        assert model.exact_log_likelihood(X) == pytest.approx(expected, abs=1e-9)

    def test_likelihood_gradient_identity(self):
        # d mean-log-p(v) / d w_ij = <v_i h_j>_data - <v_i h_j>_model,
        # checked against central finite differences
        rng = np.random.RandomState(97)
        model = random_model(rng, 3, 2)
        X = np.array([[1, 0, 1], [0, 1, 1], [1, 1, 0]], dtype=float)
        V, H, P = model.exact_joint_probabilities()
        model_stats = np.zeros((2, 3))
        for vi, v in enumerate(V):
            for hi, h in enumerate(H):
                model_stats += P[vi, hi] * np.outer(h, v)
        data_stats = model.hidden_probabilities(X).T @ X / len(X)
        analytic = data_stats - model_stats
        eps = 1e-5
        for j in range(2):
            for i in range(3):
                model.weights_[j, i] += eps
                up = model.exact_log_likelihood(X)
                model.weights_[j, i] -= 2 * eps
                down = model.exact_log_likelihood(X)
                model.weights_[j, i] += eps
                assert (up - down) / (2 * eps) == pytest.approx(analytic[j, i], abs=1e-6)

    def test_enumeration_guard(self):
        rng = np.random.RandomState(101)
        model = random_model(rng, 15, 15)
        with pytest.raises(TooLargeToEnumerate):
            model.exact_partition()


class TestTraining:
    def test_improves_exact_log_likelihood(self):
        init = BernoulliRbm(n_hidden=3, n_epochs=0, random_state=5).fit(BLOCK_DATA)
        trained = BernoulliRbm(
            n_hidden=3, n_epochs=200, learning_rate=0.2, batch_size=3, random_state=5
        ).fit(BLOCK_DATA)
        assert trained.exact_log_likelihood(BLOCK_DATA) > init.exact_log_likelihood(
            BLOCK_DATA
        )

    def test_reconstruction_error_drops(self):
        model = BernoulliRbm(
            n_hidden=3, n_epochs=200, learning_rate=0.2, batch_size=3, random_state=7
        ).fit(BLOCK_DATA)
        errors = model.reconstruction_errors_
        assert len(errors) == 200
        assert errors[-1] < errors[0]

    def test_deterministic_per_seed(self):
        a = BernoulliRbm(n_hidden=2, n_epochs=5, random_state=3).fit(BLOCK_DATA)
        b = BernoulliRbm(n_hidden=2, n_epochs=5, random_state=3).fit(BLOCK_DATA)
        c = BernoulliRbm(n_hidden=2, n_epochs=5, random_state=4).fit(BLOCK_DATA)
        np.testing.assert_array_equal(a.weights_, b.weights_)
        assert not np.array_equal(a.weights_, c.weights_)

    def test_rejects_out_of_range_data(self):
        model = BernoulliRbm(n_hidden=2)
        with pytest.raises(ValueError):
            model.fit(np.array([[0.0, 2.0]]))
        with pytest.raises(ValueError):
            model.fit(np.array([[-0.5, 0.5]]))

    def test_rejects_bad_hidden_count(self):
        with pytest.raises(ValueError):
            BernoulliRbm(n_hidden=0).fit(BLOCK_DATA)

    def test_transform_is_binary(self):
        model = BernoulliRbm(n_hidden=4, n_epochs=20, random_state=1).fit(BLOCK_DATA)
        codes = model.transform(BLOCK_DATA)
        assert codes.shape == (6, 4)
        assert set(np.unique(codes)) <= {0.0, 1.0}

    def test_separates_block_patterns(self):
        model = BernoulliRbm(
            n_hidden=2, n_epochs=400, learning_rate=0.3, batch_size=6, random_state=11
        ).fit(BLOCK_DATA)
        codes = model.transform(BLOCK_DATA)
        # the two pattern families land on distinct codes
        assert not np.array_equal(codes[0], codes[3])


class TestSklearnApi:
    def test_get_params_round_trip(self):
        model = BernoulliRbm(n_hidden=7, learning_rate=0.05)
        params = model.get_params()
        assert params["n_hidden"] == 7
        assert params["learning_rate"] == 0.05
        rebuilt = BernoulliRbm(**params)
        assert rebuilt.get_params() == params

    def test_clone_is_unfitted(self):
        model = BernoulliRbm(n_hidden=2, n_epochs=2).fit(BLOCK_DATA)
        fresh = clone(model)
        assert not hasattr(fresh, "weights_")
        assert fresh.n_hidden == 2

    def test_fit_transform(self):
        model = BernoulliRbm(n_hidden=2, n_epochs=2, random_state=0)
        codes = model.fit_transform(BLOCK_DATA)
        assert codes.shape == (6, 2)


class TestPersistence:
    def test_round_trip_exact(self, tmp_path):
        model = BernoulliRbm(n_hidden=3, n_epochs=10, random_state=2).fit(BLOCK_DATA)
        path = tmp_path / "model.rbm"
        model.save(path)
        loaded = BernoulliRbm.load(path)
        np.testing.assert_array_equal(loaded.weights_, model.weights_)
        np.testing.assert_array_equal(loaded.visible_bias_, model.visible_bias_)
        np.testing.assert_array_equal(loaded.hidden_bias_, model.hidden_bias_)
        assert loaded.exact_partition() == model.exact_partition()

    def test_wrong_header_rejected(self, tmp_path):
        path = tmp_path / "bad.rbm"
        path.write_text("something else\n", encoding="utf-8")
        with pytest.raises(BadModelFile):
            BernoulliRbm.load(path)

    def test_truncated_file_rejected(self, tmp_path):
        path = tmp_path / "bad.rbm"
        path.write_text("rbm v1\n3 2\n0.0 0.0 0.0\n", encoding="utf-8")
        with pytest.raises(BadModelFile):
            BernoulliRbm.load(path)

    def test_shape_disagreement_rejected(self, tmp_path):
        path = tmp_path / "bad.rbm"
        path.write_text(
            "rbm v1\n2 1\n0.0 0.0 0.0\n0.0\n0.1 0.2\n", encoding="utf-8"
        )
        with pytest.raises(BadModelFile):
            BernoulliRbm.load(path)
