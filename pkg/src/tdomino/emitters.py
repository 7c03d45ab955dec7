"""Solution generators driving the archives: an isotropic Gaussian emitter and
an improvement emitter that adapts a CMA-ES distribution from insertion feedback.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .archive import InsertOutcome, OutcomeKind


@dataclass
class Feedback:
    """Per-sample archive outcome for one emitted batch."""
    genomes: np.ndarray
    outcomes: list[InsertOutcome]


def _uniform(rng, lower, upper, count):
    return rng.uniform(lower, upper, size=(count, lower.shape[0]))


class GaussianEmitter:
    """Perturb uniformly chosen elites with isotropic Gaussian noise."""

    def __init__(self, lower, upper, sigma: float, batch_size: int,
                 rng: np.random.Generator):
        self.lower = np.asarray(lower, dtype=float)
        self.upper = np.asarray(upper, dtype=float)
        self.sigma = sigma
        self.batch_size = batch_size
        self.rng = rng

    def ask(self, archive) -> np.ndarray:
        if len(archive) == 0:
            return _uniform(self.rng, self.lower, self.upper, self.batch_size)
        parents = np.stack([
            archive.random_elite(self.rng).genome for _ in range(self.batch_size)
        ])
        noise = self.rng.normal(0.0, self.sigma, size=parents.shape)
        return np.clip(parents + noise, self.lower, self.upper)

    def tell(self, feedback: Feedback, archive) -> None:
        pass


# Ranking tiers: new bins first, then replacements, rejections last.
_TIER = {OutcomeKind.NEW_BIN: 0, OutcomeKind.REPLACED: 1, OutcomeKind.REJECTED: 2}


def rank_feedback(outcomes: list[InsertOutcome]) -> list[int]:
    """Indices of samples from best to worst: NewBin before Replaced (each by
    descending score delta), Rejected last.  Index order breaks ties."""
    return sorted(range(len(outcomes)),
                  key=lambda i: (_TIER[outcomes[i].kind], -outcomes[i].score_delta, i))


class CmaMeEmitter:
    """Improvement emitter: CMA-ES whose ranking is archive-insertion feedback.

    Restarts (mean moved to a random elite, step size and covariance reset)
    whenever a batch yields no new bin or replacement, or the covariance
    becomes numerically unusable.
    """

    def __init__(self, lower, upper, batch_size: int, rng: np.random.Generator,
                 sigma0: float | None = None):
        self.lower = np.asarray(lower, dtype=float)
        self.upper = np.asarray(upper, dtype=float)
        self.d = self.lower.shape[0]
        self.batch_size = batch_size
        self.rng = rng
        # Conventional default: a tenth of the (mean) parameter range width.
        self.sigma0 = sigma0 if sigma0 is not None else 0.1 * float(
            np.mean(self.upper - self.lower))
        self.restarts = 0
        self._setup_constants()
        self._reset(self.rng.uniform(self.lower, self.upper))

    def _setup_constants(self):
        d, lam = self.d, self.batch_size
        self.mu = lam // 2
        w = np.log(self.mu + 0.5) - np.log(np.arange(1, self.mu + 1))
        self.weights = w / w.sum()
        self.mueff = 1.0 / np.sum(self.weights ** 2)
        self.c_sigma = (self.mueff + 2) / (d + self.mueff + 5)
        self.d_sigma = (1 + 2 * max(0.0, np.sqrt((self.mueff - 1) / (d + 1)) - 1)
                        + self.c_sigma)
        self.c_c = (4 + self.mueff / d) / (d + 4 + 2 * self.mueff / d)
        self.c_1 = 2 / ((d + 1.3) ** 2 + self.mueff)
        self.c_mu = min(1 - self.c_1,
                        2 * (self.mueff - 2 + 1 / self.mueff) / ((d + 2) ** 2 + self.mueff))
        self.chi_n = np.sqrt(d) * (1 - 1 / (4 * d) + 1 / (21 * d ** 2))

    def _reset(self, mean: np.ndarray):
        self.mean = np.array(mean, dtype=float)
        self.sigma = self.sigma0
        self.cov = np.eye(self.d)
        self.p_sigma = np.zeros(self.d)
        self.p_c = np.zeros(self.d)
        self.generation = 0
        self._decompose()

    def _decompose(self) -> bool:
        try:
            eigvals, eigvecs = np.linalg.eigh(self.cov)
        except np.linalg.LinAlgError:
            return False
        if not np.all(np.isfinite(eigvals)) or np.any(eigvals <= 0):
            return False
        self._eigvecs = eigvecs
        self._eigroots = np.sqrt(eigvals)
        self._inv_sqrt = (eigvecs * (1.0 / self._eigroots)) @ eigvecs.T
        return True

    def _restart(self, archive):
        self.restarts += 1
        if len(archive) > 0:
            mean = archive.random_elite(self.rng).genome
        else:
            mean = self.rng.uniform(self.lower, self.upper)
        self._reset(mean)

    def ask(self, archive) -> np.ndarray:
        z = self.rng.standard_normal((self.batch_size, self.d))
        y = z * self._eigroots @ self._eigvecs.T
        return np.clip(self.mean + self.sigma * y, self.lower, self.upper)

    def tell(self, feedback: Feedback, archive) -> None:
        if not any(o.improved for o in feedback.outcomes):
            self._restart(archive)
            return

        order = rank_feedback(feedback.outcomes)
        parents = feedback.genomes[order[: self.mu]]
        old_mean = self.mean
        self.mean = self.weights @ parents
        y_w = (self.mean - old_mean) / self.sigma
        self.generation += 1

        self.p_sigma = ((1 - self.c_sigma) * self.p_sigma
                        + np.sqrt(self.c_sigma * (2 - self.c_sigma) * self.mueff)
                        * (self._inv_sqrt @ y_w))
        norm_ps = np.linalg.norm(self.p_sigma)
        h_sigma = (norm_ps / np.sqrt(1 - (1 - self.c_sigma) ** (2 * self.generation))
                   < (1.4 + 2 / (self.d + 1)) * self.chi_n)
        self.p_c = ((1 - self.c_c) * self.p_c
                    + h_sigma * np.sqrt(self.c_c * (2 - self.c_c) * self.mueff) * y_w)

        ys = (parents - old_mean) / self.sigma
        rank_mu = (ys.T * self.weights) @ ys
        self.cov = ((1 - self.c_1 - self.c_mu) * self.cov
                    + self.c_1 * (np.outer(self.p_c, self.p_c)
                                  + (1 - h_sigma) * self.c_c * (2 - self.c_c) * self.cov)
                    + self.c_mu * rank_mu)
        self.cov = (self.cov + self.cov.T) / 2.0
        self.sigma = self.sigma * np.exp(
            (self.c_sigma / self.d_sigma) * (norm_ps / self.chi_n - 1))

        if (not np.isfinite(self.sigma) or self.sigma <= 0
                or not np.all(np.isfinite(self.cov)) or not self._decompose()):
            self._restart(archive)
