import numpy as np

from conftest import make_solution
from tdomino.archive import InsertOutcome, OutcomeKind, TDominoArchive
from tdomino.core import GridSpec
from tdomino.emitters import CmaMeEmitter, Feedback, GaussianEmitter, rank_feedback

GRID = GridSpec((10, 10), ((-2.0, 2.0), (-2.0, 2.0)))
LOWER = np.full(4, -2.0)
UPPER = np.full(4, 2.0)


def seeded_archive(n=5, seed=0):
    rng = np.random.default_rng(seed)
    archive = TDominoArchive(GRID, 2, neighbor_radius=2, history_capacity=5)
    while len(archive) < n:
        g = rng.uniform(-2, 2, 4)
        archive.try_insert(make_solution(rng.uniform(0, 1, 2), g[:2], genome=g))
    return archive


class TestGaussianEmitter:
    def test_zero_sigma_copies_elites(self):
        archive = seeded_archive()
        em = GaussianEmitter(LOWER, UPPER, 0.0, 8, np.random.default_rng(1))
        samples = em.ask(archive)
        genomes = [e.genome for e in archive.elites()]
        for s in samples:
            assert any(np.array_equal(s, g) for g in genomes)

    def test_empty_archive_uniform_bootstrap(self):
        archive = TDominoArchive(GRID, 2)
        em = GaussianEmitter(LOWER, UPPER, 0.5, 16, np.random.default_rng(1))
        samples = em.ask(archive)
        assert samples.shape == (16, 4)
        assert np.all(samples >= LOWER) and np.all(samples <= UPPER)

    def test_seed_determinism(self):
        archive = seeded_archive()
        a = GaussianEmitter(LOWER, UPPER, 0.3, 8, np.random.default_rng(42)).ask(archive)
        b = GaussianEmitter(LOWER, UPPER, 0.3, 8, np.random.default_rng(42)).ask(archive)
        assert np.array_equal(a, b)

    def test_bounds_respected(self):
        archive = seeded_archive()
        em = GaussianEmitter(LOWER, UPPER, 5.0, 64, np.random.default_rng(2))
        samples = em.ask(archive)
        assert np.all(samples >= LOWER) and np.all(samples <= UPPER)


class TestRanking:
    def test_two_tier_rule(self):
        outcomes = [
            InsertOutcome(OutcomeKind.REPLACED, 7.0),
            InsertOutcome(OutcomeKind.NEW_BIN, 3.0),
            InsertOutcome(OutcomeKind.REJECTED, -1.0),
            InsertOutcome(OutcomeKind.NEW_BIN, 9.0),
        ]
        assert rank_feedback(outcomes) == [3, 1, 0, 2]

    def test_rejected_sorted_by_delta(self):
        outcomes = [
            InsertOutcome(OutcomeKind.REJECTED, -5.0),
            InsertOutcome(OutcomeKind.REJECTED, -1.0),
        ]
        assert rank_feedback(outcomes) == [1, 0]


class TestCmaMeEmitter:
    def test_ask_shape_and_bounds(self):
        archive = seeded_archive()
        lower = np.full(10, -2.0)
        upper = np.full(10, 2.0)
        em = CmaMeEmitter(lower, upper, 200, np.random.default_rng(3))
        samples = em.ask(archive)
        assert samples.shape == (200, 10)
        assert np.all(samples >= lower) and np.all(samples <= upper)

    def test_near_zero_sigma_collapses_to_mean(self):
        em = CmaMeEmitter(LOWER, UPPER, 20, np.random.default_rng(4), sigma0=1e-12)
        samples = em.ask(seeded_archive())
        assert np.allclose(samples, np.clip(em.mean, LOWER, UPPER), atol=1e-9)

    def test_seed_determinism(self):
        a = CmaMeEmitter(LOWER, UPPER, 20, np.random.default_rng(5)).ask(seeded_archive())
        b = CmaMeEmitter(LOWER, UPPER, 20, np.random.default_rng(5)).ask(seeded_archive())
        assert np.array_equal(a, b)

    def test_all_rejected_triggers_restart(self):
        archive = seeded_archive()
        em = CmaMeEmitter(LOWER, UPPER, 10, np.random.default_rng(6))
        genomes = em.ask(archive)
        outcomes = [InsertOutcome(OutcomeKind.REJECTED, -1.0)] * 10
        em.tell(Feedback(genomes, outcomes), archive)
        assert em.restarts == 1
        assert em.sigma == em.sigma0
        assert np.array_equal(em.cov, np.eye(4))

    def test_restart_mean_is_an_elite(self):
        archive = seeded_archive()
        em = CmaMeEmitter(LOWER, UPPER, 10, np.random.default_rng(7))
        em.tell(Feedback(em.ask(archive),
                         [InsertOutcome(OutcomeKind.REJECTED, 0.0)] * 10), archive)
        genomes = [e.genome for e in archive.elites()]
        assert any(np.array_equal(em.mean, g) for g in genomes)

    def test_update_keeps_cov_symmetric_and_state_finite(self):
        archive = seeded_archive()
        rng = np.random.default_rng(8)
        em = CmaMeEmitter(LOWER, UPPER, 20, rng)
        for _ in range(10):
            genomes = em.ask(archive)
            outcomes = [
                InsertOutcome(OutcomeKind.NEW_BIN if rng.random() < 0.3
                              else (OutcomeKind.REPLACED if rng.random() < 0.5
                                    else OutcomeKind.REJECTED),
                              float(rng.normal()))
                for _ in range(20)
            ]
            em.tell(Feedback(genomes, outcomes), archive)
            assert np.max(np.abs(em.cov - em.cov.T)) < 1e-9
            assert em.sigma > 0 and np.isfinite(em.sigma)
            assert np.all(np.isfinite(em.mean))

    def test_batch_budget(self):
        # 2 emitters x batch 200 = 400 solutions per generation
        ems = [CmaMeEmitter(LOWER, UPPER, 200, np.random.default_rng(i))
               for i in range(2)]
        total = sum(len(e.ask(seeded_archive())) for e in ems)
        assert total == 400
