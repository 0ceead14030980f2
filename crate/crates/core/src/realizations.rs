//! Finite truncations of the two realizations of `prod_{q in Lambda} C_(q-1)`,
//! where `Lambda` is the set of primes `q` with `q - 1` squarefree.
//!
//! The unbounded realization is the compositum of the cyclotomic fields
//! `Q(zeta_q)`; it has unbounded local degrees everywhere because it contains
//! ever more roots of unity. The bounded one replaces each `Q(zeta_q)` by a
//! compositum of cyclic fields of prime degree `gamma | q - 1` in which the
//! first `i` target primes split completely, which caps the local degree at
//! the `n`-th target prime by `prod_{m <= n} (q_m - 1)`.
//!
//! `q = 2` is skipped by both builders: `C_1` contributes nothing.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factor, is_prime, next_prime};
use crate::error::{Error, Result};
use crate::fields::AbelianField;
use crate::grunwald::{construct_cyclic, ConstructionTrace, CyclicFieldRequest};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaPrime {
    pub q: u64,
    /// The distinct primes whose product is `q - 1`.
    pub factors_of_q_minus_1: Vec<u64>,
}

/// The first `count` primes `q` with `q - 1` squarefree.
pub fn lambda_primes(count: usize) -> Vec<LambdaPrime> {
    let mut out = Vec::with_capacity(count);
    let mut q = 2u64;
    while out.len() < count {
        let f = factor(q - 1);
        if f.iter().all(|&(_, e)| e == 1) {
            out.push(LambdaPrime {
                q,
                factors_of_q_minus_1: f.into_iter().map(|(p, _)| p).collect(),
            });
        }
        q = next_prime(q);
    }
    out
}

/// The first `k` elements of `Lambda` other than 2.
pub fn nontrivial_lambda_primes(k: usize) -> Vec<LambdaPrime> {
    lambda_primes(k + 1).into_iter().skip(1).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RealizationKind {
    Bounded,
    Unbounded,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentField {
    pub label: String,
    /// Index of the `Lambda` prime, from 1.
    pub i: usize,
    /// Index of the prime factor of `q_i - 1`, from 1 (bounded kind only).
    pub j: Option<usize>,
    /// Order of the cyclic group this component realizes.
    pub group_order: u64,
    pub field: AbelianField,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<ConstructionTrace>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RealizationReport {
    pub kind: RealizationKind,
    pub depth: usize,
    pub lambda_primes: Vec<u64>,
    pub target_primes: Vec<u64>,
    pub components: Vec<ComponentField>,
    pub compositum: AbelianField,
    pub expected_degree: u64,
    pub local_degrees: BTreeMap<u64, u64>,
    pub claimed_bounds: BTreeMap<u64, u64>,
    pub roots_of_unity: u128,
    pub verdicts: BTreeMap<String, bool>,
    pub note: &'static str,
}

impl RealizationReport {
    pub fn all_verdicts_hold(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }
}

const TRUNCATION_NOTE: &str =
    "finite truncation: growth or boundedness of local degrees is witnessed at this depth, not proven in the limit";

/// Compositum of `Q(zeta_q)` over the first `k` nontrivial `Lambda` primes.
pub fn unbounded_realization(k: usize, probe_primes: &[u64], limits: Limits) -> Result<RealizationReport> {
    let lambda = nontrivial_lambda_primes(k);
    let components = lambda
        .iter()
        .enumerate()
        .map(|(idx, lp)| {
            Ok(ComponentField {
                label: format!("Q(zeta_{})", lp.q),
                i: idx + 1,
                j: None,
                group_order: lp.q - 1,
                field: AbelianField::cyclotomic(lp.q, limits)?,
                trace: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = assemble(RealizationKind::Unbounded, k, &lambda, vec![], components, probe_primes, limits)?;
    report.claimed_bounds.clear();
    Ok(report)
}

/// Compositum of cyclic fields `L_(i,j)` of degree `gamma_(i,j) | q_i - 1`
/// in which `p_1, ..., p_i` split completely; `targets` defaults to the first
/// `k` primes when empty.
pub fn bounded_realization(
    k: usize,
    targets: &[u64],
    probe_primes: &[u64],
    limits: Limits,
) -> Result<RealizationReport> {
    let targets: Vec<u64> = if targets.is_empty() {
        let mut v = Vec::with_capacity(k);
        let mut p = 1;
        while v.len() < k {
            p = next_prime(p);
            v.push(p);
        }
        v
    } else {
        targets.to_vec()
    };
    if targets.len() < k {
        return Err(Error::InvalidInput(format!(
            "bounded realization of depth {k} needs {k} target primes, got {}",
            targets.len()
        )));
    }
    if let Some(&bad) = targets.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(bad));
    }
    let targets: Vec<u64> = targets[..k].to_vec();
    let lambda = nontrivial_lambda_primes(k);
    let mut running = AbelianField::rationals(limits);
    let mut components = Vec::new();
    for (idx, lp) in lambda.iter().enumerate() {
        let split = &targets[..=idx];
        for (jdx, &gamma) in lp.factors_of_q_minus_1.iter().enumerate() {
            let req = CyclicFieldRequest {
                q: gamma,
                split_primes: split.to_vec(),
                avoid: running.clone(),
                search_bound: limits.prime_search_bound,
            };
            let (field, trace) = construct_cyclic(&req)?;
            running = running.compositum(&field)?;
            components.push(ComponentField {
                label: format!("L_({},{})", idx + 1, jdx + 1),
                i: idx + 1,
                j: Some(jdx + 1),
                group_order: gamma,
                field,
                trace: Some(trace),
            });
        }
    }
    let mut report = assemble(RealizationKind::Bounded, k, &lambda, targets.clone(), components, probe_primes, limits)?;

    let mut bound = 1u64;
    for (n, &p) in targets.iter().enumerate() {
        bound *= lambda[n].q - 1;
        report.claimed_bounds.insert(p, bound);
        let local = report.local_degrees[&p];
        report
            .verdicts
            .insert(format!("local_degree_at_p{}_within_bound", n + 1), local <= bound);
    }
    for c in &report.components {
        let split = &targets[..c.i];
        let mut ok = c.field.degree() == c.group_order;
        for &p in split {
            ok &= c.field.totally_split(p)?;
        }
        report
            .verdicts
            .insert(format!("component_{}_degree_and_splitting", c.label), ok);
    }
    if let Some(&p1) = targets.first() {
        report
            .verdicts
            .insert("p1_totally_split".into(), report.local_degrees[&p1] == 1);
    }
    Ok(report)
}

fn assemble(
    kind: RealizationKind,
    depth: usize,
    lambda: &[crate::realizations::LambdaPrime],
    targets: Vec<u64>,
    components: Vec<ComponentField>,
    probe_primes: &[u64],
    limits: Limits,
) -> Result<RealizationReport> {
    let mut compositum = AbelianField::rationals(limits);
    for c in &components {
        compositum = compositum.compositum(&c.field)?;
    }
    let expected_degree: u64 = lambda.iter().map(|lp| lp.q - 1).product();
    let mut verdicts = BTreeMap::new();
    let mut disjoint = true;
    for (a, ca) in components.iter().enumerate() {
        for cb in &components[a + 1..] {
            disjoint &= ca.field.linearly_disjoint(&cb.field)?;
        }
    }
    if !components.is_empty() {
        verdicts.insert("pairwise_trivial_intersections".to_string(), disjoint);
        verdicts.insert(
            "compositum_degree_equals_group_order".to_string(),
            compositum.degree() == expected_degree,
        );
    }
    let mut primes: Vec<u64> = probe_primes.iter().chain(&targets).copied().collect();
    primes.sort_unstable();
    primes.dedup();
    if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(bad));
    }
    let local_degrees = primes
        .par_iter()
        .map(|&p| compositum.local_degree(p).map(|d| (p, d)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let roots_of_unity = compositum.roots_of_unity()?;
    Ok(RealizationReport {
        kind,
        depth,
        lambda_primes: lambda.iter().map(|lp| lp.q).collect(),
        target_primes: targets,
        components,
        compositum,
        expected_degree,
        local_degrees,
        claimed_bounds: BTreeMap::new(),
        roots_of_unity,
        verdicts,
        note: TRUNCATION_NOTE,
    })
}

/// Local-degree bound at the `i`-th prime for a compositum of realizations of
/// `G_1, G_2, ...` over the rationals: 1 for `i = 1`, else `prod_{j < i} |G_j|`.
pub fn staged_local_degree_bound(i: usize, orders: &[u64]) -> Result<u64> {
    if i == 0 {
        return Err(Error::InvalidInput("stage index starts at 1".into()));
    }
    if orders.len() < i - 1 {
        return Err(Error::InvalidInput(format!(
            "stage {i} needs {} group orders, got {}",
            i - 1,
            orders.len()
        )));
    }
    Ok(orders[..i - 1].iter().product())
}
