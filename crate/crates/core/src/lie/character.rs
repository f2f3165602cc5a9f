use std::collections::HashMap;

use num_complex::Complex64;

use super::group::GroupData;
use super::weight::{TorusElement, Weight};
use crate::error::Result;

/// Below this modulus of the Weyl denominator the character is evaluated
/// from weight multiplicities instead of the quotient.
const SINGULAR_DENOMINATOR: f64 = 1e-3;

/// Weyl dimension formula, `prod_alpha <lambda + rho, alpha^v> / <rho, alpha^v>`.
pub fn irrep_dimension(g: &GroupData, lambda: &Weight) -> Result<u64> {
    g.check_dominant(lambda)?;
    let shifted = lambda + g.rho();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for root in g.positive_roots() {
        let pair = |w: &Weight| -> u128 {
            w.coords
                .iter()
                .zip(&root.coroot)
                .map(|(a, b)| a * b)
                .sum::<i64>() as u128
        };
        num *= pair(&shifted);
        den *= pair(g.rho());
        let common = gcd(num, den);
        num /= common;
        den /= common;
    }
    debug_assert_eq!(den, 1);
    Ok((num / den) as u64)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `sum_w sign(w) t^{w(mu)}`.
pub fn alternating_sum(g: &GroupData, mu: &Weight, t: &TorusElement) -> Complex64 {
    g.weyl_group()
        .iter()
        .map(|w| t.pow(&w.apply(mu)) * w.sign as f64)
        .sum()
}

/// The Weyl denominator `sum_w sign(w) t^{w rho}`.
pub fn weyl_denominator(g: &GroupData, t: &TorusElement) -> Complex64 {
    alternating_sum(g, g.rho(), t)
}

/// Character of the irreducible representation with highest weight `lambda`.
///
/// Near the Weyl-singular set the character is the finite sum
/// `sum_mu m_lambda(mu) t^mu` over weight multiplicities, which is its exact
/// value everywhere.
pub fn irreducible_character(
    g: &GroupData,
    lambda: &Weight,
    t: &TorusElement,
) -> Result<Complex64> {
    g.check_dominant(lambda)?;
    if g.is_abelian() {
        return Ok(t.pow(lambda));
    }
    let den = weyl_denominator(g, t);
    if den.norm() > SINGULAR_DENOMINATOR {
        return Ok(alternating_sum(g, &(lambda + g.rho()), t) / den);
    }
    Ok(weight_multiplicities(g, lambda)?
        .iter()
        .map(|(mu, m)| t.pow(mu) * *m as f64)
        .sum())
}

/// Weights of `V_lambda` with multiplicities, by Freudenthal's recursion.
pub fn weight_multiplicities(g: &GroupData, lambda: &Weight) -> Result<Vec<(Weight, i64)>> {
    g.check_dominant(lambda)?;
    let shifted = lambda + g.rho();
    let top = g.weight_inner(&shifted, &shifted);
    let roots: Vec<&Weight> = g.positive_roots().iter().map(|r| &r.weight).collect();
    let simple: Vec<&Weight> = g.simple_roots().map(|r| &r.weight).collect();

    let mut mult: HashMap<Weight, i64> = HashMap::new();
    mult.insert(lambda.clone(), 1);
    let mut out = vec![(lambda.clone(), 1)];
    let mut level = vec![lambda.clone()];
    while !level.is_empty() {
        let mut candidates: Vec<Weight> = level
            .iter()
            .flat_map(|mu| simple.iter().map(move |a| mu - a))
            .collect();
        candidates.sort();
        candidates.dedup();
        let mut next = Vec::new();
        for mu in candidates {
            let mu_rho = &mu + g.rho();
            let gap = top - g.weight_inner(&mu_rho, &mu_rho);
            if gap <= 1e-9 {
                continue;
            }
            let mut acc = 0.0;
            for a in &roots {
                let mut k = 1;
                loop {
                    let higher = &mu + &a.scale(k);
                    if !is_below(&higher, lambda, g) {
                        break;
                    }
                    if let Some(&m) = mult.get(&higher) {
                        acc += 2.0 * g.weight_inner(&higher, a) * m as f64;
                    }
                    k += 1;
                }
            }
            let m = (acc / gap).round() as i64;
            if m > 0 {
                mult.insert(mu.clone(), m);
                out.push((mu.clone(), m));
                next.push(mu);
            }
        }
        level = next;
    }
    Ok(out)
}

/// Whether `lambda - mu` has nonnegative height, so that the chain through `mu`
/// can still reach weights of the module.
fn is_below(mu: &Weight, lambda: &Weight, g: &GroupData) -> bool {
    let diff = lambda - mu;
    let rho = g.rho();
    g.weight_inner(&diff, rho) >= -1e-9
}
