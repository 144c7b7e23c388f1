"""One-vs-rest margin classifier over sense pair features.

Three prediction tasks share one implementation and differ only in
their class sets: a binary linked/unlinked decision, the four typed
labels over linked pairs, and the five-way labelling that adds NONE.
Training is stochastic subgradient descent on the hinge loss with L2
regularisation; whenever an epoch fails to lower the full objective
the parameters are rolled back and the step size halved, so the
recorded loss curve never increases.  Scores are turned into a
distribution with a softmax over the per-class decision values.
"""

from __future__ import annotations

from enum import Enum

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils import check_array, check_random_state

from .errors import (
    BadModelFile,
    DimensionMismatch,
    SingleClassData,
    UnknownLabel,
)
from .lexdata import ALL_RELATIONS, SKOS_RELATIONS, SemanticRelation


class Task(Enum):
    BINARY = "binary"
    SKOS = "skos"
    SKOS_PLUS_NONE = "skos_plus_none"


def task_classes(task: Task) -> tuple:
    """Class objects in canonical order; y values index into this."""
    if task is Task.BINARY:
        return (0, 1)
    if task is Task.SKOS:
        return SKOS_RELATIONS
    return ALL_RELATIONS


class RelationClassifier(BaseEstimator, ClassifierMixin):
    """Linear or kernelised one-vs-rest hinge classifier.

    Kernels other than linear are applied through an explicit feature
    map against a capped, seeded subsample of the training rows, so the
    model stays a weight matrix either way.
    """

    def __init__(
        self,
        task: Task = Task.SKOS_PLUS_NONE,
        kernel: str = "linear",
        learning_rate: float = 0.1,
        n_epochs: int = 50,
        l2: float = 1e-4,
        random_state: int = 0,
        rbf_gamma: float = 1.0,
        poly_degree: int = 2,
        support_cap: int = 256,
    ):
        self.task = task
        self.kernel = kernel
        self.learning_rate = learning_rate
        self.n_epochs = n_epochs
        self.l2 = l2
        self.random_state = random_state
        self.rbf_gamma = rbf_gamma
        self.poly_degree = poly_degree
        self.support_cap = support_cap

    # ---- feature maps ----

    def _expand(self, X: np.ndarray) -> np.ndarray:
        if self.kernel == "linear":
            return X
        if self.supports_ is None or len(self.supports_) == 0:
            raise ValueError("kernel model has no support points")
        if self.kernel == "rbf":
            diff = X[:, None, :] - self.supports_[None, :, :]
            return np.exp(-self.rbf_gamma * np.sum(diff**2, axis=2))
        if self.kernel == "poly":
            return (X @ self.supports_.T + 1.0) ** self.poly_degree
        raise ValueError(f"unknown kernel: {self.kernel!r}")

    @staticmethod
    def _augment(Phi: np.ndarray) -> np.ndarray:
        return np.hstack([Phi, np.ones((Phi.shape[0], 1))])

    # ---- training ----

    def _objective(self, Xa: np.ndarray, Y_signs: np.ndarray) -> float:
        decisions = Xa @ self.weights_.T
        hinge = np.maximum(0.0, 1.0 - Y_signs * decisions)
        reg = 0.5 * self.l2 * float(np.sum(self.weights_[:, :-1] ** 2))
        return float(np.mean(np.sum(hinge, axis=1)) + reg)

    def fit(self, X: np.ndarray, y: np.ndarray) -> "RelationClassifier":
        X = check_array(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64).ravel()
        if y.shape[0] != X.shape[0]:
            raise DimensionMismatch("X and y disagree on the number of rows")
        classes = task_classes(self.task)
        k = len(classes)
        if np.any(y < 0) or np.any(y >= k):
            raise UnknownLabel(f"labels must index the {k} classes of task {self.task.value}")
        if np.unique(y).size < 2:
            raise SingleClassData("training data covers a single class")
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        rng = check_random_state(self.random_state)

        if self.kernel == "linear":
            self.supports_ = None
        else:
            pick = rng.permutation(X.shape[0])[: max(1, self.support_cap)]
            self.supports_ = X[np.sort(pick)].copy()
        Phi = self._expand(X)
        Xa = self._augment(Phi)
        n, d = Xa.shape
        Y_signs = np.where(y[:, None] == np.arange(k)[None, :], 1.0, -1.0)

        self.weights_ = np.zeros((k, d))
        lr = self.learning_rate
        best = self.weights_.copy()
        best_obj = self._objective(Xa, Y_signs)
        self.loss_curve_ = [best_obj]
        for _ in range(self.n_epochs):
            order = rng.permutation(n)
            for idx in order:
                x = Xa[idx]
                margins = Y_signs[idx] * (self.weights_ @ x)
                # L2 pull on every step, hinge push only when violated
                self.weights_[:, :-1] *= 1.0 - lr * self.l2
                violated = margins < 1.0
                if np.any(violated):
                    self.weights_[violated] += lr * Y_signs[idx, violated, None] * x[None, :]
            obj = self._objective(Xa, Y_signs)
            if obj <= best_obj:
                best_obj = obj
                best = self.weights_.copy()
            else:
                self.weights_ = best.copy()
                lr *= 0.5
            self.loss_curve_.append(best_obj)
        self.weights_ = best
        return self

    # ---- inference ----

    def _check_ready(self) -> None:
        if not hasattr(self, "weights_"):
            raise ValueError("model is not fitted")

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        self._check_ready()
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise DimensionMismatch(
                f"expected {self.n_features_in_} features, got {X.shape[1]}"
            )
        return self._augment(self._expand(X)) @ self.weights_.T

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        """Softmax over decision values; rows sum to one."""
        d = self.decision_function(X)
        d = d - d.max(axis=1, keepdims=True)
        e = np.exp(d)
        return e / e.sum(axis=1, keepdims=True)

    def predict(self, X: np.ndarray) -> np.ndarray:
        """Argmax class indices; ties resolve to the lowest index."""
        return np.argmax(self.decision_function(X), axis=1)

    def predict_relations(self, X: np.ndarray) -> list:
        """Predictions as class objects instead of indices."""
        self._check_ready()
        return [self.classes_[i] for i in self.predict(X)]

    # ---- persistence ----

    def save(self, path: str) -> None:
        self._check_ready()
        lines = [
            "relation-classifier v1",
            f"task {self.task.value}",
            f"kernel {self.kernel} {repr(self.rbf_gamma)} {self.poly_degree}",
            f"dim {self.n_features_in_}",
            f"classes {len(self.classes_)}",
            f"supports {0 if self.supports_ is None else len(self.supports_)}",
        ]
        for row in self.weights_:
            lines.append("w " + " ".join(repr(float(x)) for x in row))
        if self.supports_ is not None:
            for row in self.supports_:
                lines.append("s " + " ".join(repr(float(x)) for x in row))
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path: str) -> "RelationClassifier":
        with open(path, encoding="utf-8") as fh:
            lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
        if not lines or lines[0] != "relation-classifier v1":
            raise BadModelFile(f"{path}: not a v1 relation-classifier file")
        try:
            header = {ln.split(" ", 1)[0]: ln.split(" ", 1)[1] for ln in lines[1:6]}
            task = Task(header["task"])
            kernel_parts = header["kernel"].split()
            kernel = kernel_parts[0]
            rbf_gamma = float(kernel_parts[1])
            poly_degree = int(kernel_parts[2])
            dim = int(header["dim"])
            n_classes = int(header["classes"])
            n_supports = int(header["supports"])
            body = lines[6:]
            weights = np.asarray(
                [[float(x) for x in ln.split()[1:]] for ln in body[:n_classes]]
            )
            supports = None
            if n_supports:
                supports = np.asarray(
                    [
                        [float(x) for x in ln.split()[1:]]
                        for ln in body[n_classes : n_classes + n_supports]
                    ]
                )
        except (KeyError, IndexError, ValueError) as exc:
            raise BadModelFile(f"{path}: truncated or corrupt model file") from exc
        if weights.shape[0] != n_classes:
            raise BadModelFile(f"{path}: expected {n_classes} weight rows")
        model = cls(task=task, kernel=kernel, rbf_gamma=rbf_gamma, poly_degree=poly_degree)
        model.classes_ = task_classes(task)
        model.n_features_in_ = dim
        model.weights_ = weights
        model.supports_ = supports
        model.loss_curve_ = []
        return model


def relation_to_label(relation: SemanticRelation, task: Task) -> int:
    """Class index of a relation under a task's class set."""
    classes = task_classes(task)
    if task is Task.BINARY:
        return 0 if relation is SemanticRelation.NONE else 1
    try:
        return classes.index(relation)
    except ValueError as exc:
        raise UnknownLabel(f"{relation.value} is not a class of task {task.value}") from exc
