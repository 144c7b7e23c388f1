"""Bernoulli restricted Boltzmann machine trained with one-step
contrastive divergence.

The joint distribution over binary visible units v and hidden units h
is p(v, h) = exp(-E(v, h)) / Z with energy

    E(v, h) = - a.v - b.h - sum_ij v_i h_j w_ij.

Exact quantities (partition function, log-likelihood, the full joint
table) are available by exhaustive enumeration for small models, which
gives the training code an independent check.
"""

from __future__ import annotations

import numpy as np
from scipy.special import expit, logsumexp
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils import check_array, check_random_state

from .errors import BadModelFile, TooLargeToEnumerate

_ENUM_LIMIT = 20


def _binary_states(k: int) -> np.ndarray:
    """All 2**k binary row vectors of length k, in counting order."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.float64)
    grid = np.indices((2,) * k).reshape(k, -1).T
    return grid.astype(np.float64)


class BernoulliRbm(BaseEstimator, TransformerMixin):
    """RBM with CD-1 updates, seeded and fully deterministic.

    Parameters mirror the usual recipe: small Gaussian weight init,
    zero biases, mini-batch updates with the positive phase driven by
    hidden probabilities and the negative phase by one reconstruction
    step from sampled hidden states.
    """

    def __init__(
        self,
        n_hidden: int = 64,
        learning_rate: float = 0.1,
        n_epochs: int = 50,
        batch_size: int = 10,
        random_state: int = 0,
        init_scale: float = 0.01,
    ):
        self.n_hidden = n_hidden
        self.learning_rate = learning_rate
        self.n_epochs = n_epochs
        self.batch_size = batch_size
        self.random_state = random_state
        self.init_scale = init_scale

    def _check_fitted(self) -> None:
        if not hasattr(self, "weights_"):
            raise ValueError("model is not fitted")

    def energy(self, v: np.ndarray, h: np.ndarray) -> float:
        """E(v, h) for one configuration."""
        self._check_fitted()
        v = np.asarray(v, dtype=np.float64)
        h = np.asarray(h, dtype=np.float64)
        return float(
            -np.dot(self.visible_bias_, v)
            - np.dot(self.hidden_bias_, h)
            - float(h @ self.weights_ @ v)
        )

    def hidden_probabilities(self, V: np.ndarray) -> np.ndarray:
        """p(h_j = 1 | v) for every row of V."""
        self._check_fitted()
        V = np.atleast_2d(np.asarray(V, dtype=np.float64))
        return expit(self.hidden_bias_ + V @ self.weights_.T)

    def visible_probabilities(self, H: np.ndarray) -> np.ndarray:
        """p(v_i = 1 | h) for every row of H."""
        self._check_fitted()
        H = np.atleast_2d(np.asarray(H, dtype=np.float64))
        return expit(self.visible_bias_ + H @ self.weights_)

    def fit(self, X: np.ndarray, y=None) -> "BernoulliRbm":
        X = check_array(X, dtype=np.float64)
        if X.min() < 0.0 or X.max() > 1.0:
            raise ValueError("visible data must lie in [0, 1]")
        if self.n_hidden < 1:
            raise ValueError(f"n_hidden must be >= 1, got {self.n_hidden}")
        rng = check_random_state(self.random_state)
        n_samples, n_visible = X.shape
        self.n_visible_ = n_visible
        self.weights_ = rng.normal(0.0, self.init_scale, size=(self.n_hidden, n_visible))
        self.visible_bias_ = np.zeros(n_visible)
        self.hidden_bias_ = np.zeros(self.n_hidden)
        self.reconstruction_errors_ = []
        batch = max(1, self.batch_size)
        for _ in range(self.n_epochs):
            perm = rng.permutation(n_samples)
            for start in range(0, n_samples, batch):
                V = X[perm[start : start + batch]]
                self._cd1_update(V, rng)
            recon = self.visible_probabilities(self.hidden_probabilities(X))
            self.reconstruction_errors_.append(float(np.mean((X - recon) ** 2)))
        return self

    def _cd1_update(self, V: np.ndarray, rng: np.random.RandomState) -> None:
        k = V.shape[0]
        ph = self.hidden_probabilities(V)
        h_sample = (rng.uniform(size=ph.shape) < ph).astype(np.float64)
        v_neg = self.visible_probabilities(h_sample)
        ph_neg = self.hidden_probabilities(v_neg)
        # <v h>_data - <v h>_model, both as (hidden, visible) blocks
        grad_w = (ph.T @ V - ph_neg.T @ v_neg) / k
        self.weights_ += self.learning_rate * grad_w
        self.visible_bias_ += self.learning_rate * np.mean(V - v_neg, axis=0)
        self.hidden_bias_ += self.learning_rate * np.mean(ph - ph_neg, axis=0)

    def transform(self, X: np.ndarray) -> np.ndarray:
        """Binary latent codes: hidden probabilities thresholded at 0.5."""
        return (self.hidden_probabilities(check_array(X, dtype=np.float64)) >= 0.5).astype(
            np.float64
        )

    # ---- exact quantities by enumeration ----

    def _check_enumerable(self) -> None:
        self._check_fitted()
        if self.n_visible_ + self.n_hidden > _ENUM_LIMIT:
            raise TooLargeToEnumerate(
                f"{self.n_visible_} visible + {self.n_hidden} hidden units exceed "
                f"the enumeration limit of {_ENUM_LIMIT}"
            )

    def _energy_table(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Energies of all (v, h) configurations.

        Returns (V states, H states, energy matrix of shape
        (2**n_visible, 2**n_hidden)).
        """
        self._check_enumerable()
        V = _binary_states(self.n_visible_)
        H = _binary_states(self.n_hidden)
        E = (
            -(V @ self.visible_bias_)[:, None]
            - (H @ self.hidden_bias_)[None, :]
            - V @ self.weights_.T @ H.T
        )
        return V, H, E

    def exact_partition(self) -> float:
        """log Z by exhaustive enumeration."""
        _, _, E = self._energy_table()
        return float(logsumexp(-E))

    def exact_joint_probabilities(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """The full joint table p(v, h); sums to one by construction of Z."""
        V, H, E = self._energy_table()
        log_z = float(logsumexp(-E))
        return V, H, np.exp(-E - log_z)

    def exact_log_likelihood(self, X: np.ndarray) -> float:
        """Mean log p(v) over data rows, marginalising h by enumeration."""
        self._check_enumerable()
        X = check_array(X, dtype=np.float64)
        H = _binary_states(self.n_hidden)
        log_z = self.exact_partition()
        # log sum_h exp(-E(v, h)) for each row
        unnorm = (
            (X @ self.visible_bias_)[:, None]
            + (H @ self.hidden_bias_)[None, :]
            + X @ self.weights_.T @ H.T
        )
        return float(np.mean(logsumexp(unnorm, axis=1) - log_z))

    # ---- persistence ----

    def save(self, path: str) -> None:
        self._check_fitted()
        lines = ["rbm v1", f"{self.n_visible_} {self.n_hidden}"]
        lines.append(" ".join(repr(float(x)) for x in self.visible_bias_))
        lines.append(" ".join(repr(float(x)) for x in self.hidden_bias_))
        for row in self.weights_:
            lines.append(" ".join(repr(float(x)) for x in row))
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path: str) -> "BernoulliRbm":
        with open(path, encoding="utf-8") as fh:
            lines = [ln.rstrip("\n") for ln in fh]
        if not lines or lines[0] != "rbm v1":
            raise BadModelFile(f"{path}: not a v1 rbm file")
        try:
            n_visible, n_hidden = (int(x) for x in lines[1].split())
            visible_bias = np.asarray([float(x) for x in lines[2].split()])
            hidden_bias = np.asarray([float(x) for x in lines[3].split()])
            weights = np.asarray(
                [[float(x) for x in lines[4 + j].split()] for j in range(n_hidden)]
            )
        except (IndexError, ValueError) as exc:
            raise BadModelFile(f"{path}: truncated or corrupt rbm file") from exc
        if visible_bias.shape != (n_visible,) or hidden_bias.shape != (n_hidden,):
            raise BadModelFile(f"{path}: bias shapes disagree with the header")
        if weights.shape != (n_hidden, n_visible):
            raise BadModelFile(f"{path}: weight shape disagrees with the header")
        model = cls(n_hidden=n_hidden)
        model.n_visible_ = n_visible
        model.visible_bias_ = visible_bias
        model.hidden_bias_ = hidden_bias
        model.weights_ = weights
        model.reconstruction_errors_ = []
        return model
