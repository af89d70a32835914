use std::collections::HashSet;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{SolverConfig, Variant};
use super::sorting::{crowding_distance, fast_nondominated_sort, pareto_dominates};
use crate::error::Result;
use crate::model::{Chromosome, Instance, PlanTargets, Project};
use crate::operators::{
    bit_flip_mutation, dc_crossover, finish_child, sam_mutation, uniform_crossover, MutationBudget, Preference,
};
use crate::rng::substream;

const INIT_KEY: u64 = 0x1417;
const MATING_KEY: u64 = 0x3a7e;
const OFFSPRING_KEY: u64 = 0x0ff5;

/// Per-generation summary. `archive` holds the canonical `(-emv, risk)`
/// points of every feasible non-dominated solution found so far.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub generation: usize,
    pub feasible: usize,
    pub best_emv: Option<f64>,
    pub archive: Vec<[f64; 2]>,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub config: SolverConfig,
    /// Final population with evaluations.
    pub population: Vec<Chromosome>,
    /// Distinct rank-0 members of the final population. Feasible whenever
    /// any feasible solution survived.
    pub front: Vec<Chromosome>,
    /// False when no feasible solution was ever found; `front` then holds
    /// the least-violating rank-0 solutions.
    pub feasible: bool,
    /// Feasible non-dominated solutions over the whole run.
    pub archive: Vec<Chromosome>,
    /// One record per generation, the initial population being generation 0.
    pub history: Vec<GenerationRecord>,
    pub evaluations: usize,
}

impl RunResult {
    pub fn front_points(&self) -> Vec<[f64; 2]> {
        self.front.iter().map(|c| c.evaluation().canonical()).collect()
    }
}

/// Builds the instance and runs the configured variant.
pub fn solve(projects: Vec<Project>, targets: PlanTargets, config: &SolverConfig) -> Result<RunResult> {
    let instance = Instance::new(projects, targets)?;
    run(&instance, config)
}

/// NSGA-II with feasibility-first dominance and `(mu + lambda)` survival.
pub fn run(instance: &Instance, config: &SolverConfig) -> Result<RunResult> {
    config.validate()?;
    let pref = config.preference();
    let budget = config.budget()?;
    let n = instance.len();

    let mut population: Vec<Chromosome> = (0..config.pop_size)
        .into_par_iter()
        .map(|idx| {
            let mut rng = substream(config.seed, &[INIT_KEY, idx as u64]);
            let bits: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
            let mut c = finish_child(instance, bits, &pref, &mut rng);
            instance.evaluate(&mut c);
            c
        })
        .collect();
    let mut evaluations = population.len();
    let (mut ranks, mut crowding) = rank_and_crowd(&population);
    let mut archive: Vec<Chromosome> = Vec::new();
    update_archive(&mut archive, &population);
    let mut history = vec![record(0, &population, &archive)];

    for generation in 1..=config.generations {
        let mut mating = substream(config.seed, &[MATING_KEY, generation as u64]);
        let parents: Vec<usize> = (0..config.pop_size)
            .map(|_| tournament(&ranks, &crowding, &mut mating))
            .collect();
        let offspring: Vec<Chromosome> = parents
            .par_chunks(2)
            .enumerate()
            .flat_map_iter(|(pair, p)| {
                let mut rng = substream(config.seed, &[OFFSPRING_KEY, generation as u64, pair as u64]);
                let (a, b) = (&population[p[0]].bits, &population[p[1]].bits);
                let children = breed(instance, config, &pref, &budget, a, b, &mut rng);
                children.into_iter().map(|mut c| {
                    instance.evaluate(&mut c);
                    c
                })
            })
            .collect();
        evaluations += offspring.len();

        let mut merged = std::mem::take(&mut population);
        merged.extend(offspring);
        population = survive(merged, config.pop_size, config.eliminate_duplicates);
        (ranks, crowding) = rank_and_crowd(&population);
        update_archive(&mut archive, &population);
        history.push(record(generation, &population, &archive));
    }

    let front = final_front(&population, &ranks);
    let feasible = front.iter().any(|c| c.evaluation().is_feasible());
    Ok(RunResult {
        config: config.clone(),
        population,
        front,
        feasible,
        archive,
        history,
        evaluations,
    })
}

fn breed<R: Rng + ?Sized>(
    instance: &Instance,
    config: &SolverConfig,
    pref: &Preference,
    budget: &MutationBudget,
    a: &[bool],
    b: &[bool],
    rng: &mut R,
) -> [Chromosome; 2] {
    match config.variant {
        Variant::Oe => {
            let (c1, c2) = dc_crossover(instance, a, b, pref, rng).expect("parents come from the same instance");
            [
                sam_mutation(instance, &c1.bits, budget, pref, rng),
                sam_mutation(instance, &c2.bits, budget, pref, rng),
            ]
        }
        Variant::Baseline => {
            let (mut c1, mut c2) = uniform_crossover(a, b, config.crossover_prob, rng);
            bit_flip_mutation(&mut c1, config.mutation_prob, rng);
            bit_flip_mutation(&mut c2, config.mutation_prob, rng);
            [finish_child(instance, c1, pref, rng), finish_child(instance, c2, pref, rng)]
        }
    }
}

/// Rank per individual and crowding distance within its front.
fn rank_and_crowd(pop: &[Chromosome]) -> (Vec<usize>, Vec<f64>) {
    let evals: Vec<_> = pop.iter().map(Chromosome::evaluation).collect();
    let fronts = fast_nondominated_sort(&evals);
    let mut ranks = vec![0; pop.len()];
    let mut crowding = vec![0.0; pop.len()];
    for (r, front) in fronts.iter().enumerate() {
        let pts: Vec<[f64; 2]> = front.iter().map(|&i| evals[i].canonical()).collect();
        for (&i, d) in front.iter().zip(crowding_distance(&pts)) {
            ranks[i] = r;
            crowding[i] = d;
        }
    }
    (ranks, crowding)
}

/// Binary tournament on (rank, crowding); full ties go to a coin flip.
fn tournament<R: Rng + ?Sized>(ranks: &[usize], crowding: &[f64], rng: &mut R) -> usize {
    let a = rng.random_range(0..ranks.len());
    let b = rng.random_range(0..ranks.len());
    match ranks[a].cmp(&ranks[b]) {
        std::cmp::Ordering::Less => a,
        std::cmp::Ordering::Greater => b,
        std::cmp::Ordering::Equal => match crowding[a].partial_cmp(&crowding[b]) {
            Some(std::cmp::Ordering::Greater) => a,
            Some(std::cmp::Ordering::Less) => b,
            _ => {
                if rng.random_bool(0.5) {
                    a
                } else {
                    b
                }
            }
        },
    }
}

/// Elitist truncation of parents plus offspring. Repeated bit strings are
/// only used to fill the population when distinct ones run out.
fn survive(merged: Vec<Chromosome>, size: usize, eliminate_duplicates: bool) -> Vec<Chromosome> {
    let (mut pool, spare): (Vec<Chromosome>, Vec<Chromosome>) = if eliminate_duplicates {
        let mut seen = HashSet::new();
        merged.into_iter().partition(|c| seen.insert(c.bits.clone()))
    } else {
        (merged, Vec::new())
    };
    if pool.len() < size {
        pool.extend(spare.into_iter().take(size - pool.len()));
    }
    let evals: Vec<_> = pool.iter().map(Chromosome::evaluation).collect();
    let fronts = fast_nondominated_sort(&evals);
    let mut keep: Vec<usize> = Vec::with_capacity(size);
    for front in fronts {
        if keep.len() + front.len() <= size {
            keep.extend(front);
            if keep.len() == size {
                break;
            }
            continue;
        }
        let pts: Vec<[f64; 2]> = front.iter().map(|&i| evals[i].canonical()).collect();
        let dist = crowding_distance(&pts);
        let mut order: Vec<usize> = (0..front.len()).collect();
        order.sort_by(|&x, &y| dist[y].total_cmp(&dist[x]).then(front[x].cmp(&front[y])));
        keep.extend(order.into_iter().take(size - keep.len()).map(|k| front[k]));
        break;
    }
    keep.sort_unstable();
    let mut slots: Vec<Option<Chromosome>> = pool.into_iter().map(Some).collect();
    keep.into_iter().map(|i| slots[i].take().expect("index kept once")).collect()
}

fn update_archive(archive: &mut Vec<Chromosome>, pop: &[Chromosome]) {
    let mut candidates: Vec<Chromosome> = std::mem::take(archive);
    let mut seen: HashSet<Vec<bool>> = candidates.iter().map(|c| c.bits.clone()).collect();
    for c in pop {
        if c.evaluation().is_feasible() && seen.insert(c.bits.clone()) {
            candidates.push(c.clone());
        }
    }
    let pts: Vec<[f64; 2]> = candidates.iter().map(|c| c.evaluation().canonical()).collect();
    *archive = candidates
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !pts.iter().any(|q| pareto_dominates(*q, pts[*i])))
        .map(|(_, c)| c)
        .collect();
}

fn record(generation: usize, pop: &[Chromosome], archive: &[Chromosome]) -> GenerationRecord {
    GenerationRecord {
        generation,
        feasible: pop.iter().filter(|c| c.evaluation().is_feasible()).count(),
        best_emv: pop
            .iter()
            .filter(|c| c.evaluation().is_feasible())
            .map(|c| c.evaluation().emv)
            .reduce(f64::max),
        archive: archive.iter().map(|c| c.evaluation().canonical()).collect(),
    }
}

fn final_front(pop: &[Chromosome], ranks: &[usize]) -> Vec<Chromosome> {
    let mut seen = HashSet::new();
    let mut front: Vec<Chromosome> = pop
        .iter()
        .zip(ranks)
        .filter(|(c, r)| **r == 0 && seen.insert(c.bits.clone()))
        .map(|(c, _)| c.clone())
        .collect();
    front.sort_by(|a, b| {
        let (x, y) = (a.evaluation(), b.evaluation());
        x.risk.total_cmp(&y.risk).then(y.emv.total_cmp(&x.emv)).then(a.bits.cmp(&b.bits))
    });
    front
}
