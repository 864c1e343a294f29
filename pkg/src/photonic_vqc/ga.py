"""Gradient-free genetic algorithm with elitism, single-point crossover,
Gaussian mutation, and island-model migration.

Chromosomes are real-valued phase vectors kept in [0, 2*pi). The cost being
minimized is supplied by the caller, so the same engine drives both the mesh
classifier and synthetic benchmark objectives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .mesh import TWO_PI, wrap_phase


@dataclass
class GAConfig:
    population_size: int = 50
    n_generations: int = 100
    crossover_fraction: float = 0.3
    migration_fraction: float = 0.5
    migration_interval: int = 20
    n_islands: int = 2
    elite_count: int = 2
    mutation_sigma: float = 0.3
    rng_seed: int = 0
    # Re-score surviving elites each generation when fitness is stochastic.
    # Off by default so the recorded best cost stays monotone.
    reevaluate_noisy: bool = False

    def validate(self):
        if self.population_size < 2:
            raise ValueError("population_size must be at least 2")
        if self.n_islands < 1:
            raise ValueError("n_islands must be at least 1")
        if self.elite_count >= self.population_size // self.n_islands:
            raise ValueError("elite_count must be below the per-island size")
        if not 0.0 <= self.crossover_fraction <= 1.0:
            raise ValueError("crossover_fraction must lie in [0, 1]")
        if not 0.0 <= self.migration_fraction <= 1.0:
            raise ValueError("migration_fraction must lie in [0, 1]")
        if self.mutation_sigma < 0:
            raise ValueError("mutation_sigma must be non-negative")


@dataclass
class Individual:
    genes: np.ndarray
    cost: float = math.inf
    accuracy: float = math.nan


@dataclass
class TrainingHistory:
    generation: list = field(default_factory=list)
    best_cost: list = field(default_factory=list)
    mean_cost: list = field(default_factory=list)
    best_accuracy: list = field(default_factory=list)
    mean_accuracy: list = field(default_factory=list)

    def record(self, gen, best_cost, mean_cost, best_accuracy, mean_accuracy):
        self.generation.append(gen)
        self.best_cost.append(best_cost)
        self.mean_cost.append(mean_cost)
        self.best_accuracy.append(best_accuracy)
        self.mean_accuracy.append(mean_accuracy)

    def rows(self):
        return list(
            zip(
                self.generation,
                self.best_cost,
                self.mean_cost,
                self.best_accuracy,
                self.mean_accuracy,
            )
        )

    def write_csv(self, path):
        from .io_utils import atomic_write_text

        lines = ["generation,best_cost,mean_cost,best_accuracy,mean_accuracy"]
        for row in self.rows():
            lines.append(",".join(str(v) for v in row))
        atomic_write_text(path, "\n".join(lines) + "\n")


def island_sizes(population_size: int, n_islands: int):
    """Split the population as evenly as possible; remainders go to the
    first islands."""
    base, rem = divmod(population_size, n_islands)
    return [base + (1 if i < rem else 0) for i in range(n_islands)]


def init_population(config: GAConfig, n_genes: int, rng) -> list:
    """Islands of unevaluated individuals with genes uniform in [0, 2*pi)."""
    config.validate()
    islands = []
    for size in island_sizes(config.population_size, config.n_islands):
        islands.append(
            [Individual(genes=rng.uniform(0.0, TWO_PI, n_genes)) for _ in range(size)]
        )
    return islands


def select_parent(island, rng) -> Individual:
    """Size-2 tournament: two uniform draws with replacement, lower cost wins."""
    i, j = rng.integers(0, len(island), size=2)
    a, b = island[i], island[j]
    return a if a.cost <= b.cost else b


def splice(a: np.ndarray, b: np.ndarray, cut: int):
    """Exchange gene tails at position `cut` (genes 0..cut-1 from the first
    parent)."""
    child1 = np.concatenate([a[:cut], b[cut:]])
    child2 = np.concatenate([b[:cut], a[cut:]])
    return child1, child2


def crossover(a: np.ndarray, b: np.ndarray, rng):
    """Single-point crossover at a uniform cut in {1, ..., len-1}."""
    cut = int(rng.integers(1, len(a)))
    return splice(a, b, cut)


def mutate(genes: np.ndarray, sigma: float, rng) -> np.ndarray:
    """Perturb each gene with probability 1/n_genes by Gaussian noise of
    standard deviation sigma, wrapping back into [0, 2*pi)."""
    if sigma < 0:
        raise ValueError("mutation sigma must be non-negative")
    out = np.array(genes, dtype=float, copy=True)
    mask = rng.random(len(out)) < 1.0 / len(out)
    n_hit = int(mask.sum())
    if n_hit:
        out[mask] = wrap_phase(out[mask] + rng.normal(0.0, sigma, n_hit))
    return out


def _evaluate(ind: Individual, eval_fn, eval_seed: int):
    result = eval_fn(ind.genes, eval_seed)
    if isinstance(result, tuple):
        ind.cost, ind.accuracy = float(result[0]), float(result[1])
    else:
        ind.cost = float(result)
        ind.accuracy = math.nan
    return ind


def step_generation(islands, eval_fn, config: GAConfig, rng, generation: int):
    """One generational replacement per island: elites survive unchanged,
    a crossover_fraction of the remaining slots come from crossover of
    tournament-selected parents, the rest are mutated tournament picks."""
    new_islands = []
    eval_index = 0
    for island in islands:
        ranked = sorted(island, key=lambda ind: ind.cost)
        elites = [
            Individual(ind.genes.copy(), ind.cost, ind.accuracy)
            for ind in ranked[: config.elite_count]
        ]
        n_new = len(island) - len(elites)
        n_cross = round(config.crossover_fraction * n_new)

        offspring_genes = []
        while len(offspring_genes) < n_cross:
            p1 = select_parent(island, rng)
            p2 = select_parent(island, rng)
            c1, c2 = crossover(p1.genes, p2.genes, rng)
            offspring_genes.append(c1)
            if len(offspring_genes) < n_cross:
                offspring_genes.append(c2)
        while len(offspring_genes) < n_new:
            parent = select_parent(island, rng)
            offspring_genes.append(mutate(parent.genes, config.mutation_sigma, rng))

        offspring = []
        for genes in offspring_genes:
            seed = config.rng_seed + generation * config.population_size + eval_index
            offspring.append(_evaluate(Individual(genes=genes), eval_fn, seed))
            eval_index += 1

        if config.reevaluate_noisy:
            for ind in elites:
                seed = config.rng_seed + generation * config.population_size + eval_index
                _evaluate(ind, eval_fn, seed)
                eval_index += 1

        new_islands.append(elites + offspring)
    return new_islands


def migrate(islands, config: GAConfig):
    """Ring migration: each island copies its best ceil(fraction * size)
    individuals to the next island, replacing that island's worst."""
    if config.n_islands < 2 or len(islands) < 2:
        return islands
    donors = []
    for island in islands:
        n_mig = math.ceil(config.migration_fraction * len(island))
        ranked = sorted(island, key=lambda ind: ind.cost)
        donors.append(
            [Individual(ind.genes.copy(), ind.cost, ind.accuracy) for ind in ranked[:n_mig]]
        )
    new_islands = []
    for j, island in enumerate(islands):
        incoming = donors[(j - 1) % len(islands)]
        if not incoming:
            new_islands.append(list(island))
            continue
        ranked = sorted(island, key=lambda ind: ind.cost)
        kept = ranked[: len(island) - len(incoming)]
        new_islands.append(kept + incoming)
    return new_islands


def run_ga(eval_fn, n_genes: int, config: GAConfig):
    """Full GA loop. `eval_fn(genes, eval_seed)` returns either a cost or a
    (cost, accuracy) pair; eval seeds are derived deterministically so results
    do not depend on evaluation order.

    Returns (best_genes, TrainingHistory).
    """
    config.validate()
    rng = np.random.default_rng(config.rng_seed)
    islands = init_population(config, n_genes, rng)
    for idx, ind in enumerate(ind for island in islands for ind in island):
        _evaluate(ind, eval_fn, config.rng_seed + idx)

    history = TrainingHistory()
    for gen in range(1, config.n_generations + 1):
        islands = step_generation(islands, eval_fn, config, rng, gen)
        if (
            config.n_islands > 1
            and config.migration_fraction > 0
            and gen % config.migration_interval == 0
        ):
            islands = migrate(islands, config)
        everyone = [ind for island in islands for ind in island]
        costs = np.array([ind.cost for ind in everyone])
        accs = np.array([ind.accuracy for ind in everyone])
        history.record(
            gen,
            float(costs.min()),
            float(costs.mean()),
            float(np.nanmax(accs)) if not np.all(np.isnan(accs)) else math.nan,
            float(np.nanmean(accs)) if not np.all(np.isnan(accs)) else math.nan,
        )

    best = min(
        (ind for island in islands for ind in island), key=lambda ind: ind.cost
    )
    return best.genes.copy(), history
