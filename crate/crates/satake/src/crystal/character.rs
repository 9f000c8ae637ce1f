//! Weight multiplicities by the Freudenthal recursion — the character
//! oracle the crystal constructions are verified against. Independent of
//! the path model: only root enumeration and exact rational arithmetic.

use crate::lattice::{Coweight, RootDatum, WeightFunctional};
use num_rational::Rational64;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Sum over positive roots of `⟨α, x⟩·⟨α, y⟩`; a W-invariant form, positive
/// definite on the span of the coroots.
fn form(positive_roots: &[WeightFunctional], x: &[Rational64], y: &[Rational64]) -> Rational64 {
    let mut acc = Rational64::zero();
    for f in positive_roots {
        let fx: Rational64 = f.coeffs().iter().zip(x).map(|(a, b)| a * b).sum();
        let fy: Rational64 = f.coeffs().iter().zip(y).map(|(a, b)| a * b).sum();
        acc += fx * fy;
    }
    acc
}

fn to_rational(c: &Coweight) -> Vec<Rational64> {
    c.coords()
        .iter()
        .map(|&x| Rational64::from_integer(x))
        .collect()
}

fn add_vec(a: &[Rational64], b: &[Rational64]) -> Vec<Rational64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// The full weight multiplicity table of `V^λ`. `λ` must be dominant.
pub fn weight_multiplicities(rd: &RootDatum, lambda: &Coweight) -> BTreeMap<Coweight, u64> {
    assert!(
        rd.is_dominant(lambda),
        "weight_multiplicities: {lambda} is not dominant"
    );
    let positive_roots = rd.positive_roots();
    let positive_coroots = rd.positive_coroots();
    let rho_check = rd.half_sum_positive_coroots();
    let two_rho = rd.two_rho();

    // Dominant weights below λ in the coroot dominance order.
    let mut dominant: Vec<Coweight> = Vec::new();
    {
        let mut seen = std::collections::BTreeSet::new();
        let mut queue = vec![lambda.clone()];
        seen.insert(lambda.clone());
        while let Some(x) = queue.pop() {
            if rd.is_dominant(&x) {
                dominant.push(x.clone());
            }
            for c in &rd.simple_coroots {
                let y = x.sub(c);
                // Stay inside the cone of weights: λ − y must remain a
                // non-negative combination, and dominance-reachable weights
                // all satisfy dominant-translate ≤ λ.
                if !seen.contains(&y) && rd.dominance_le(&rd.dominant_translate(&y), lambda) {
                    seen.insert(y.clone());
                    queue.push(y);
                }
            }
        }
    }
    // Highest first.
    dominant.sort_by_key(|x| std::cmp::Reverse(two_rho.pairing(x)));

    let lam_rho = add_vec(&to_rational(lambda), &rho_check);
    let norm_top = form(&positive_roots, &lam_rho, &lam_rho);
    let mut mult: BTreeMap<Coweight, u64> = BTreeMap::new();
    mult.insert(lambda.clone(), 1);

    let max_height = two_rho.pairing(lambda);
    for mu in dominant.iter().filter(|m| *m != lambda) {
        let mut rhs = Rational64::zero();
        for alpha_check in &positive_coroots {
            let mut k = 1i64;
            loop {
                let shifted = mu.add(&alpha_check.scale(k));
                if two_rho.pairing(&shifted) > max_height {
                    break;
                }
                let dom = rd.dominant_translate(&shifted);
                if let Some(&m) = mult.get(&dom) {
                    if m > 0 {
                        let sv = to_rational(&shifted);
                        let av = to_rational(alpha_check);
                        rhs += Rational64::from_integer(m as i64) * form(&positive_roots, &sv, &av);
                    }
                }
                k += 1;
            }
        }
        let mu_rho = add_vec(&to_rational(mu), &rho_check);
        let denom = norm_top - form(&positive_roots, &mu_rho, &mu_rho);
        let value = if denom.is_zero() {
            Rational64::zero()
        } else {
            Rational64::from_integer(2) * rhs / denom
        };
        assert!(
            value.is_integer(),
            "Freudenthal produced a non-integer multiplicity"
        );
        let value = value.to_integer();
        assert!(value >= 0);
        if value > 0 {
            mult.insert(mu.clone(), value as u64);
        }
    }

    // Spread over Weyl orbits.
    let mut table = BTreeMap::new();
    for (mu, m) in mult {
        for w in rd.weyl_orbit(&mu) {
            table.insert(w, m);
        }
    }
    table
}

/// Multiplicity of `μ` in `V^λ`; zero when `μ` is not a weight.
pub fn weight_multiplicity(rd: &RootDatum, lambda: &Coweight, mu: &Coweight) -> u64 {
    weight_multiplicities(rd, lambda)
        .get(mu)
        .copied()
        .unwrap_or(0)
}

/// A cached table of characters, keyed by highest weight.
#[derive(Clone, Debug, Default)]
pub struct CharacterTable {
    table: BTreeMap<Coweight, BTreeMap<Coweight, u64>>,
}

impl CharacterTable {
    pub fn new() -> Self {
        CharacterTable::default()
    }

    pub fn character<'a>(
        &'a mut self,
        rd: &RootDatum,
        lambda: &Coweight,
    ) -> &'a BTreeMap<Coweight, u64> {
        if !self.table.contains_key(lambda) {
            self.table
                .insert(lambda.clone(), weight_multiplicities(rd, lambda));
        }
        self.table.get(lambda).unwrap()
    }

    pub fn multiplicity(&mut self, rd: &RootDatum, lambda: &Coweight, mu: &Coweight) -> u64 {
        self.character(rd, lambda).get(mu).copied().unwrap_or(0)
    }
}
