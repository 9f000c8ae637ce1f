//! Finite seminormal crystals over the dual Lie algebra.
//!
//! A crystal here is a finite set with a weight map into the coweight
//! lattice and partial lowering operators `f̃_i` (raising operators `ẽ_i`
//! are the inverses). String lengths define `ε_i` and `φ_i`, so the axioms
//! reduce to `φ_i(b) = ε_i(b) + ⟨α_i, wt(b)⟩` together with weight
//! compatibility along edges. Irreducible crystal bases are built from the
//! Littelmann path model; weight multiplicities have an independent
//! character oracle ([`weight_multiplicities`], a Freudenthal recursion).

mod character;
mod ls_path;

pub use character::{weight_multiplicities, weight_multiplicity, CharacterTable};

use crate::lattice::{Coweight, RootDatum};
use num_rational::Rational64;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CrystalError {
    #[error("weight {0} is not dominant for the requested indices")]
    NotDominant(Coweight),
    #[error("weight {0} is not antidominant")]
    NotAntidominant(Coweight),
    #[error("root datum mismatch between crystals")]
    RootDatumMismatch,
    #[error("crystal is not seminormal: {0}")]
    NotSeminormal(String),
    #[error("malformed crystal: {0}")]
    Malformed(String),
}

/// A finite crystal over the Levi subalgebra picked out by `indices`.
/// Elements are opaque ids `0..len`; all structural data is tabulated.
#[derive(Clone, Debug)]
pub struct Crystal {
    rd: Arc<RootDatum>,
    /// The simple-root indices this crystal carries operators for.
    indices: Vec<usize>,
    wt: Vec<Coweight>,
    /// `f[k][b]` is `f̃_i b` for `i = indices[k]`.
    f: Vec<Vec<Option<usize>>>,
    /// Inverse maps, derived.
    e: Vec<Vec<Option<usize>>>,
}

impl PartialEq for Crystal {
    fn eq(&self, other: &Self) -> bool {
        *self.rd == *other.rd
            && self.indices == other.indices
            && self.wt == other.wt
            && self.f == other.f
    }
}

impl Crystal {
    /// Assemble a crystal from weight and lowering data. The inverse maps
    /// are derived; injectivity of each `f̃_i` is enforced.
    pub fn from_parts(
        rd: Arc<RootDatum>,
        indices: Vec<usize>,
        wt: Vec<Coweight>,
        f: Vec<Vec<Option<usize>>>,
    ) -> Result<Self, CrystalError> {
        let n = wt.len();
        if f.len() != indices.len() {
            return Err(CrystalError::Malformed(
                "one f̃ table per index required".into(),
            ));
        }
        let mut e = vec![vec![None; n]; indices.len()];
        for (k, fk) in f.iter().enumerate() {
            if fk.len() != n {
                return Err(CrystalError::Malformed("f̃ table has wrong length".into()));
            }
            for (b, target) in fk.iter().enumerate() {
                if let Some(t) = *target {
                    if t >= n {
                        return Err(CrystalError::Malformed(format!(
                            "edge target {t} out of range"
                        )));
                    }
                    if e[k][t].is_some() {
                        return Err(CrystalError::Malformed(format!(
                            "f̃_{} is not injective at element {t}",
                            indices[k]
                        )));
                    }
                    e[k][t] = Some(b);
                }
            }
        }
        Ok(Crystal {
            rd,
            indices,
            wt,
            f,
            e,
        })
    }

    pub fn root_datum(&self) -> &Arc<RootDatum> {
        &self.rd
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.wt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wt.is_empty()
    }

    pub fn weight(&self, b: usize) -> &Coweight {
        &self.wt[b]
    }

    pub fn weights(&self) -> &[Coweight] {
        &self.wt
    }

    fn pos(&self, i: usize) -> Option<usize> {
        self.indices.iter().position(|&j| j == i)
    }

    pub fn f_op(&self, i: usize, b: usize) -> Option<usize> {
        self.pos(i).and_then(|k| self.f[k][b])
    }

    pub fn e_op(&self, i: usize, b: usize) -> Option<usize> {
        self.pos(i).and_then(|k| self.e[k][b])
    }

    /// String length upward: `max { n : ẽ_i^n b defined }`.
    pub fn epsilon(&self, i: usize, b: usize) -> i64 {
        let mut n = 0;
        let mut cur = b;
        while let Some(next) = self.e_op(i, cur) {
            cur = next;
            n += 1;
            assert!(n <= self.len() as i64, "ẽ_{i} cycles");
        }
        n
    }

    /// String length downward: `max { n : f̃_i^n b defined }`.
    pub fn phi(&self, i: usize, b: usize) -> i64 {
        let mut n = 0;
        let mut cur = b;
        while let Some(next) = self.f_op(i, cur) {
            cur = next;
            n += 1;
            assert!(n <= self.len() as i64, "f̃_{i} cycles");
        }
        n
    }

    /// Check the seminormal crystal axioms for every active index.
    pub fn validate_seminormal(&self) -> Result<(), CrystalError> {
        for (k, &i) in self.indices.iter().enumerate() {
            let alpha = &self.rd.simple_roots[i];
            let alpha_check = &self.rd.simple_coroots[i];
            for b in 0..self.len() {
                if let Some(t) = self.f[k][b] {
                    let expected = self.wt[b].sub(alpha_check);
                    if self.wt[t] != expected {
                        return Err(CrystalError::NotSeminormal(format!(
                            "wt(f̃_{i} {b}) = {} ≠ {}",
                            self.wt[t], expected
                        )));
                    }
                }
                let pairing = alpha.pairing(&self.wt[b]);
                if !pairing.is_integer() {
                    return Err(CrystalError::NotSeminormal(format!(
                        "⟨α_{i}, wt({b})⟩ = {pairing} is not an integer"
                    )));
                }
                if self.phi(i, b) != self.epsilon(i, b) + pairing.to_integer() {
                    return Err(CrystalError::NotSeminormal(format!(
                        "φ_{i}({b}) = {} but ε_{i}({b}) + ⟨α_{i}, wt⟩ = {}",
                        self.phi(i, b),
                        self.epsilon(i, b) + pairing.to_integer()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Connected components of the operator graph restricted to `sub`,
    /// each sorted; the list is sorted by first element.
    pub fn components_over(&self, sub: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(b) = stack.pop() {
                for &i in sub {
                    for next in [self.f_op(i, b), self.e_op(i, b)].into_iter().flatten() {
                        if !seen[next] {
                            seen[next] = true;
                            comp.push(next);
                            stack.push(next);
                        }
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_over(&self.indices.clone())
    }

    /// The same elements viewed as a crystal over the Levi given by `sub`.
    pub fn restrict_to_levi(&self, sub: &[usize]) -> Crystal {
        let keep: Vec<usize> = sub.to_vec();
        let mut f = Vec::new();
        for &i in &keep {
            match self.pos(i) {
                Some(k) => f.push(self.f[k].clone()),
                None => f.push(vec![None; self.len()]),
            }
        }
        Crystal::from_parts(self.rd.clone(), keep, self.wt.clone(), f)
            .expect("restriction preserves well-formedness")
    }

    /// Dual crystal: weights negate, `ẽ` and `f̃` swap. Element ids are
    /// preserved, so `b ↦ b` is the defining bijection.
    pub fn dual(&self) -> Crystal {
        Crystal {
            rd: self.rd.clone(),
            indices: self.indices.clone(),
            wt: self.wt.iter().map(|w| w.neg()).collect(),
            f: self.e.clone(),
            e: self.f.clone(),
        }
    }

    /// Signature-rule tensor product. Element `(a, b)` is encoded as
    /// `a * other.len() + b`.
    pub fn tensor(&self, other: &Crystal) -> Result<Crystal, CrystalError> {
        if *self.rd != *other.rd || self.indices != other.indices {
            return Err(CrystalError::RootDatumMismatch);
        }
        let (na, nb) = (self.len(), other.len());
        let n = na * nb;
        let mut wt = Vec::with_capacity(n);
        for a in 0..na {
            for b in 0..nb {
                wt.push(self.wt[a].add(&other.wt[b]));
            }
        }
        let mut f = vec![vec![None; n]; self.indices.len()];
        for (k, &i) in self.indices.iter().enumerate() {
            for a in 0..na {
                for b in 0..nb {
                    let id = a * nb + b;
                    // f̃_i(a ⊗ b) = f̃_i a ⊗ b if φ_i(a) > ε_i(b), else a ⊗ f̃_i b
                    f[k][id] = if self.phi(i, a) > other.epsilon(i, b) {
                        self.f_op(i, a).map(|fa| fa * nb + b)
                    } else {
                        other.f_op(i, b).map(|fb| a * nb + fb)
                    };
                }
            }
        }
        Crystal::from_parts(self.rd.clone(), self.indices.clone(), wt, f)
    }

    /// Disjoint union; returns the combined crystal and the id offset of
    /// each summand.
    pub fn disjoint_union(
        rd: Arc<RootDatum>,
        indices: Vec<usize>,
        parts: &[Crystal],
    ) -> (Crystal, Vec<usize>) {
        let mut wt = Vec::new();
        let mut f: Vec<Vec<Option<usize>>> = vec![Vec::new(); indices.len()];
        let mut offsets = Vec::new();
        for part in parts {
            assert_eq!(part.indices, indices, "disjoint_union: index sets differ");
            let off = wt.len();
            offsets.push(off);
            wt.extend(part.wt.iter().cloned());
            for (k, fk) in part.f.iter().enumerate() {
                f[k].extend(fk.iter().map(|t| t.map(|x| x + off)));
            }
        }
        let c = Crystal::from_parts(rd, indices, wt, f).expect("union of crystals is well-formed");
        (c, offsets)
    }

    /// The `W̃`-generator `s_i`: move `⟨α_i, wt⟩` steps down (or up) the
    /// `i`-string. A weight-level reflection on seminormal crystals.
    pub fn s_op(&self, i: usize, b: usize) -> usize {
        let pairing = self.rd.simple_roots[i].pairing(&self.wt[b]);
        debug_assert!(pairing.is_integer());
        let mut steps = pairing.to_integer();
        let mut cur = b;
        while steps > 0 {
            cur = self
                .f_op(i, cur)
                .expect("seminormal string long enough for s_i");
            steps -= 1;
        }
        while steps < 0 {
            cur = self
                .e_op(i, cur)
                .expect("seminormal string long enough for s_i");
            steps += 1;
        }
        cur
    }

    /// Highest-weight elements for the active indices: no raising operator
    /// applies.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| self.indices.iter().all(|&i| self.e_op(i, b).is_none()))
            .collect()
    }

    /// Extract the sub-crystal on `elems` (which must be operator-closed);
    /// returns it with the id translation table.
    pub fn sub_crystal(&self, elems: &[usize]) -> (Crystal, Vec<usize>) {
        let mut lookup: BTreeMap<usize, usize> = BTreeMap::new();
        for (new, &old) in elems.iter().enumerate() {
            lookup.insert(old, new);
        }
        let wt = elems.iter().map(|&b| self.wt[b].clone()).collect();
        let f = self
            .indices
            .iter()
            .enumerate()
            .map(|(k, _)| {
                elems
                    .iter()
                    .map(|&b| {
                        self.f[k][b].map(|t| {
                            *lookup
                                .get(&t)
                                .expect("sub_crystal: element set not closed under f̃")
                        })
                    })
                    .collect()
            })
            .collect();
        let c = Crystal::from_parts(self.rd.clone(), self.indices.clone(), wt, f)
            .expect("closed subset forms a crystal");
        (c, elems.to_vec())
    }
}

/// The unique crystal basis of the irreducible highest-weight module
/// `V^λ` over the Levi subalgebra cut out by `indices`.
pub fn irreducible_crystal_over(
    lambda: &Coweight,
    rd: &Arc<RootDatum>,
    indices: &[usize],
) -> Result<Crystal, CrystalError> {
    for &i in indices {
        if rd.simple_roots[i].pairing(lambda) < Rational64::zero() {
            return Err(CrystalError::NotDominant(lambda.clone()));
        }
    }
    ls_path::build_crystal(lambda, rd, indices)
}

/// `V^λ` over the full root datum.
pub fn irreducible_crystal(
    lambda: &Coweight,
    rd: &Arc<RootDatum>,
) -> Result<Crystal, CrystalError> {
    let indices: Vec<usize> = (0..rd.num_simple()).collect();
    irreducible_crystal_over(lambda, rd, &indices)
}

/// The crystal basis of the irreducible module of lowest weight `θ`,
/// realized as the dual of `V^{−θ}`.
pub fn lowest_weight_crystal(
    theta: &Coweight,
    rd: &Arc<RootDatum>,
) -> Result<Crystal, CrystalError> {
    if !rd.is_antidominant(theta) {
        return Err(CrystalError::NotAntidominant(theta.clone()));
    }
    Ok(irreducible_crystal(&theta.neg(), rd)?.dual())
}

/// A one-element crystal of the given weight (the weight must be killed by
/// the active operators' axioms only when paired to zero, so this is only a
/// crystal when `⟨α_i, w⟩ = 0` for all active `i`; used for units in tests).
pub fn singleton_crystal(rd: &Arc<RootDatum>, w: Coweight) -> Crystal {
    let indices: Vec<usize> = (0..rd.num_simple()).collect();
    let k = indices.len();
    Crystal::from_parts(rd.clone(), indices, vec![w], vec![vec![None]; k]).unwrap()
}

/// Try to build an isomorphism between two crystals as colored graphs with
/// weights. Returns the element map `a → b` when one exists.
pub fn crystal_isomorphism(a: &Crystal, b: &Crystal) -> Option<Vec<usize>> {
    twisted_isomorphism(a, b, |i| i, |w| w.clone())
}

/// Isomorphism intertwining a Dynkin index map and a weight map:
/// `φ(f̃_i x) = f̃_{index_map(i)} φ(x)` and `wt(φ x) = weight_map(wt x)`.
/// Both crystals must be seminormal for the search to be meaningful.
pub fn twisted_isomorphism(
    a: &Crystal,
    b: &Crystal,
    index_map: impl Fn(usize) -> usize,
    weight_map: impl Fn(&Coweight) -> Coweight,
) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    if a.is_empty() {
        return Some(vec![]);
    }
    let sources_a = a.sources();
    let sources_b = b.sources();
    if sources_a.len() != sources_b.len() {
        return None;
    }
    // Anchor on the components of the first source; try every compatible
    // image and extend rigidly. Component-by-component matching.
    let comps_a = a.components();
    let comps_b = b.components();
    if comps_a.len() != comps_b.len() {
        return None;
    }
    let mut map = vec![usize::MAX; a.len()];
    let mut used_comp_b = vec![false; comps_b.len()];
    for comp_a in &comps_a {
        let seed_a = *comp_a
            .iter()
            .find(|&&x| sources_a.contains(&x))
            .or(comp_a.first())
            .expect("nonempty component");
        let mut matched = false;
        'candidates: for (cb, comp_b) in comps_b.iter().enumerate() {
            if used_comp_b[cb] || comp_b.len() != comp_a.len() {
                continue;
            }
            for &seed_b in comp_b {
                if b.weight(seed_b) != &weight_map(a.weight(seed_a)) {
                    continue;
                }
                if let Some(partial) = extend_rigidly(a, b, seed_a, seed_b, &index_map, &weight_map)
                {
                    for (x, y) in partial {
                        map[x] = y;
                    }
                    used_comp_b[cb] = true;
                    matched = true;
                    break 'candidates;
                }
            }
        }
        if !matched {
            return None;
        }
    }
    Some(map)
}

fn extend_rigidly(
    a: &Crystal,
    b: &Crystal,
    seed_a: usize,
    seed_b: usize,
    index_map: &impl Fn(usize) -> usize,
    weight_map: &impl Fn(&Coweight) -> Coweight,
) -> Option<Vec<(usize, usize)>> {
    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    let mut inverse: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = vec![(seed_a, seed_b)];
    while let Some((x, y)) = queue.pop() {
        match map.get(&x) {
            Some(&prev) => {
                if prev != y {
                    return None;
                }
                continue;
            }
            None => {
                if inverse.contains_key(&y) {
                    return None;
                }
                if b.weight(y) != &weight_map(a.weight(x)) {
                    return None;
                }
                map.insert(x, y);
                inverse.insert(y, x);
            }
        }
        for &i in a.indices() {
            let j = index_map(i);
            match (a.f_op(i, x), b.f_op(j, y)) {
                (Some(fx), Some(fy)) => queue.push((fx, fy)),
                (None, None) => {}
                _ => return None,
            }
            match (a.e_op(i, x), b.e_op(j, y)) {
                (Some(ex), Some(ey)) => queue.push((ex, ey)),
                (None, None) => {}
                _ => return None,
            }
        }
    }
    Some(map.into_iter().collect())
}

/// Outcome of [`check_normality`].
#[derive(Clone, Debug, PartialEq)]
pub enum NormalityReport {
    Normal,
    NotSeminormal(String),
    /// A rank-≤2 restriction has a connected component that is not an
    /// irreducible crystal basis.
    NotNormal {
        indices: Vec<usize>,
        component: Vec<usize>,
        reason: String,
    },
}

impl NormalityReport {
    pub fn is_normal(&self) -> bool {
        matches!(self, NormalityReport::Normal)
    }
}

/// Decide normality by checking every rank-2 (and rank-1) restriction
/// against irreducible crystal bases, component by component.
pub fn check_normality(c: &Crystal) -> NormalityReport {
    if let Err(e) = c.validate_seminormal() {
        return NormalityReport::NotSeminormal(e.to_string());
    }
    let idx = c.indices().to_vec();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for (p, &i) in idx.iter().enumerate() {
        subsets.push(vec![i]);
        for &j in &idx[p + 1..] {
            subsets.push(vec![i, j]);
        }
    }
    for sub in subsets {
        let restricted = c.restrict_to_levi(&sub);
        for comp in restricted.components() {
            let (piece, _) = restricted.sub_crystal(&comp);
            let sources = piece.sources();
            if sources.len() != 1 {
                return NormalityReport::NotNormal {
                    indices: sub.clone(),
                    component: comp,
                    reason: format!("{} highest-weight elements", sources.len()),
                };
            }
            let hw = piece.weight(sources[0]).clone();
            let model = match irreducible_crystal_over(&hw, c.root_datum(), &sub) {
                Ok(m) => m,
                Err(e) => {
                    return NormalityReport::NotNormal {
                        indices: sub.clone(),
                        component: comp,
                        reason: e.to_string(),
                    }
                }
            };
            if crystal_isomorphism(&piece, &model).is_none() {
                return NormalityReport::NotNormal {
                    indices: sub.clone(),
                    component: comp,
                    reason: format!("component with highest weight {hw} is not the crystal basis"),
                };
            }
        }
    }
    NormalityReport::Normal
}

#[cfg(test)]
mod tests;
