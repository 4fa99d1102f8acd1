"""Mutation-only genetic algorithm over the 3D positions of all UAVs.

A chromosome is the flat vector ``[x_0, y_0, h_0, x_1, ...]``; its fitness is
the sum-rate returned by the association pipeline. Each generation keeps the
elite fraction unchanged and fills the rest with roulette-selected parents
that are always mutated (there is no crossover).
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .association import AssociationMatrix, associate
from .channel import FadingDraw, LinkTable, compute_link_table
from .scenario import ScenarioConfig, tsbs_arrays


@dataclass(eq=False)
class Chromosome:
    genes: np.ndarray
    fitness: float | None = None

    def positions(self) -> np.ndarray:
        return self.genes.reshape(-1, 3)


def gene_bounds(cfg: ScenarioConfig) -> tuple[np.ndarray, np.ndarray]:
    lo = np.tile([0.0, 0.0, cfg.h_min], cfg.num_uavs)
    hi = np.tile([cfg.area_side, cfg.area_side, cfg.h_max], cfg.num_uavs)
    return lo, hi


class Landscape:
    """Fitness of UAV layouts for one frozen realization (TSBSs + fading)."""

    def __init__(self, tsbs_pos, demand, fading: FadingDraw, cfg: ScenarioConfig):
        self.tsbs_pos = np.asarray(tsbs_pos, dtype=float).reshape(-1, 2)
        self.demand = np.asarray(demand, dtype=float)
        self.fading = fading
        self.cfg = cfg
        self.evaluations = 0

    @classmethod
    def from_tsbss(cls, tsbss, fading: FadingDraw, cfg: ScenarioConfig) -> "Landscape":
        pos, demand = tsbs_arrays(tsbss)
        return cls(pos, demand, fading, cfg)

    def link_table(self, genes) -> LinkTable:
        """Link table for gene vectors of shape ``(..., 3U)``."""
        genes = np.asarray(genes, dtype=float)
        pos = genes.reshape(genes.shape[:-1] + (-1, 3))
        return compute_link_table(self.tsbs_pos, self.demand, pos, self.fading, self.cfg)

    def solve(self, positions) -> tuple[AssociationMatrix, float, LinkTable]:
        table = self.link_table(np.asarray(positions, dtype=float).reshape(-1))
        assoc, f_s = associate(table, self.cfg)
        return assoc, f_s, table

    def fitness(self, genes_batch) -> np.ndarray:
        """Sum-rate of each row of a ``(S, 3U)`` gene matrix."""
        genes_batch = np.atleast_2d(np.asarray(genes_batch, dtype=float))
        self.evaluations += len(genes_batch)
        if len(self.demand) == 0:
            return np.zeros(len(genes_batch))
        tables = self.link_table(genes_batch)
        return np.array([associate(tables[k], self.cfg)[1] for k in range(len(genes_batch))])


def evaluate(chrom: Chromosome, landscape: Landscape) -> float:
    chrom.fitness = float(landscape.fitness(chrom.genes[None, :])[0])
    return chrom.fitness


def init_population(cfg: ScenarioConfig, rng: np.random.Generator) -> list[Chromosome]:
    lo, hi = gene_bounds(cfg)
    genes = rng.uniform(lo, hi, size=(cfg.ga.pop_size, lo.size))
    return [Chromosome(g) for g in genes]


def elite_count(cfg: ScenarioConfig) -> int:
    return int(math.floor(cfg.ga.elite_frac * cfg.ga.pop_size + 1e-9))


def select_elites(pop: list[Chromosome], cfg: ScenarioConfig) -> list[Chromosome]:
    fit = np.array([c.fitness for c in pop], dtype=float)
    order = np.lexsort((np.arange(len(pop)), -fit))
    return [pop[k] for k in order[: elite_count(cfg)]]


def roulette_select(pop: list[Chromosome], count: int, rng: np.random.Generator) -> list[Chromosome]:
    """Fitness-proportional draws with replacement; uniform if all fitness is 0."""
    fit = np.array([c.fitness for c in pop], dtype=float)
    if np.any(fit < 0):
        raise ValueError("roulette selection needs non-negative fitness")
    total = fit.sum()
    p = fit / total if total > 0 else None
    picks = rng.choice(len(pop), size=count, replace=True, p=p)
    return [pop[k] for k in picks]


def mutate(chrom: Chromosome, cfg: ScenarioConfig, rng: np.random.Generator) -> Chromosome:
    """Scale ``genes_mutated`` random genes by ``1 +/- mutation_rate`` and clamp."""
    genes = chrom.genes.copy()
    idx = rng.choice(genes.size, size=cfg.ga.genes_mutated, replace=False)
    sign = np.where(rng.random(idx.size) < 0.5, 1.0, -1.0)
    genes[idx] = genes[idx] + sign * cfg.ga.mutation_rate * genes[idx]
    lo, hi = gene_bounds(cfg)
    genes[idx] = np.clip(genes[idx], lo[idx], hi[idx])
    return Chromosome(genes)


@dataclass
class GaResult:
    best_positions: np.ndarray
    best_assoc: AssociationMatrix
    best_fitness: float
    history: list[float] = field(default_factory=list)
    mean_history: list[float] = field(default_factory=list)

    @property
    def generations(self) -> int:
        return len(self.history)

    def write_history_csv(self, fh) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["generation", "best_fitness", "mean_fitness"])
        for g, (b, m) in enumerate(zip(self.history, self.mean_history)):
            writer.writerow([g, repr(b), repr(m)])


def _score(pop: list[Chromosome], landscape: Landscape) -> None:
    todo = [c for c in pop if c.fitness is None]
    if todo:
        for c, f in zip(todo, landscape.fitness(np.stack([c.genes for c in todo]))):
            c.fitness = float(f)


def run(landscape: Landscape, cfg: ScenarioConfig, rng: np.random.Generator) -> GaResult:
    """Evolve UAV layouts until the best sum-rate stalls or generations run out.

    The generation counter includes the initial population, so at most
    ``max_generations`` populations are scored. The search stops once the
    best fitness has not improved for ``stall_generations`` generations.
    """
    init_rng, select_rng, mutate_rng = rng.spawn(3)
    n_elite = elite_count(cfg)
    pop = init_population(cfg, init_rng)
    _score(pop, landscape)

    best = pop[int(np.argmax([c.fitness for c in pop]))]
    history = [best.fitness]
    mean_history = [float(np.mean([c.fitness for c in pop]))]
    stall = 0
    for _ in range(1, cfg.ga.max_generations):
        elites = select_elites(pop, cfg)
        parents = roulette_select(pop, cfg.ga.pop_size - n_elite, select_rng)
        pop = elites + [mutate(p, cfg, mutate_rng) for p in parents]
        _score(pop, landscape)
        leader = pop[int(np.argmax([c.fitness for c in pop]))]
        if leader.fitness > best.fitness:
            best, stall = leader, 0
        else:
            stall += 1
        history.append(best.fitness)
        mean_history.append(float(np.mean([c.fitness for c in pop])))
        if stall >= cfg.ga.stall_generations:
            break

    assoc, f_s, _ = landscape.solve(best.positions())
    return GaResult(best.positions().copy(), assoc, f_s, history, mean_history)
