//! Graded generating series on the coweight lattice with coefficients in
//! `ℤ[q^{±1/2}]`: the symmetric-algebra series of the plus part, its
//! pushforward and asymptotics forms, the basic function table, the
//! Frobenius-twisted trace, and partition enumeration for the expansion
//! oracle.
//!
//! Every series is truncated by the datum's grading functional; truncated
//! multiplication is exact on all reported keys because all supports have
//! non-negative grading and the denominator factors have strictly positive
//! grading.

use crate::lattice::{apply_matrix, Coweight};
use crate::spherical::SphericalDatum;
use crate::xcrystal::{frobenius_action, XCrystal, XCrystalError};
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("bound must be non-negative, got {0}")]
    NegativeBound(i64),
    #[error(transparent)]
    XCrystal(#[from] XCrystalError),
}

/// An integer Laurent value in `q^{1/2}`: a finite map from half-integer
/// exponents to integer coefficients. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct QLaurent {
    terms: BTreeMap<Rational64, i64>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent::default()
    }

    pub fn one() -> Self {
        QLaurent::monomial(Rational64::zero(), 1)
    }

    /// `c · q^{exp}`; `exp` must be half-integral.
    pub fn monomial(exp: Rational64, coeff: i64) -> Self {
        assert!(
            (exp * Rational64::from_integer(2)).is_integer(),
            "exponent must be half-integral"
        );
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        QLaurent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: Rational64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Rational64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn add_assign(&mut self, other: &QLaurent) {
        for (e, c) in other.terms() {
            let entry = self.terms.entry(e).or_insert(0);
            *entry += c;
            if *entry == 0 {
                self.terms.remove(&e);
            }
        }
    }

    pub fn add_term(&mut self, exp: Rational64, coeff: i64) {
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn mul(&self, other: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn neg(&self) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }

    /// Numeric value at a real `q > 1`.
    pub fn eval(&self, q: f64) -> f64 {
        let mut acc = 0.0;
        for (e, c) in self.terms() {
            let exp = *e.numer() as f64 / *e.denom() as f64;
            acc += c as f64 * q.powf(exp);
        }
        acc
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let sign = if c < &0 {
                "-"
            } else if first {
                ""
            } else {
                "+ "
            };
            if !first {
                write!(f, " ")?;
                if *c >= 0 {
                    // sign printed below
                }
            }
            let mag = c.abs();
            if e.is_zero() {
                write!(f, "{sign}{mag}")?;
            } else if mag == 1 {
                write!(f, "{sign}q^{e}")?;
            } else {
                write!(f, "{sign}{mag}q^{e}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// A finite map from coweights to Laurent values, supported on keys of
/// grading at most `bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedSeries {
    datum_name: String,
    grading: crate::lattice::WeightFunctional,
    bound: i64,
    coeffs: BTreeMap<Coweight, QLaurent>,
}

impl GradedSeries {
    pub fn unit(d: &SphericalDatum, bound: i64) -> GradedSeries {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Coweight::zero(d.root_datum.rank), QLaurent::one());
        GradedSeries {
            datum_name: d.name.clone(),
            grading: d.grading.clone(),
            bound,
            coeffs,
        }
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// The truncated geometric series `(1 − q^{−c} e^{w})^{−1}`.
    pub fn geometric(d: &SphericalDatum, w: &Coweight, c: Rational64, bound: i64) -> GradedSeries {
        let mut s = GradedSeries::unit(d, bound);
        s.mul_geometric(w, c);
        s
    }

    pub fn coeff(&self, key: &Coweight) -> QLaurent {
        self.coeffs.get(key).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = (&Coweight, &QLaurent)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    fn insert(&mut self, key: Coweight, value: QLaurent) {
        if !value.is_zero() {
            self.coeffs.insert(key, value);
        }
    }

    fn within_bound(&self, key: &Coweight) -> bool {
        self.grading.pairing(key) <= Rational64::from_integer(self.bound)
    }

    /// Multiply in place by the geometric series `(1 − q^{−c} e^{w})^{−1}`.
    /// The grading of `w` must be strictly positive.
    fn mul_geometric(&mut self, w: &Coweight, c: Rational64) {
        let step = self.grading.pairing(w);
        assert!(
            step.is_positive(),
            "geometric factor must have positive grading"
        );
        // New coefficient at k is Σ_{j≥0} q^{−jc}·old(k − j·w); process keys
        // in increasing grading so each key can pull from finished ones.
        let mut keys: Vec<Coweight> = self.coeffs.keys().cloned().collect();
        let mut extended: Vec<Coweight> = Vec::new();
        for base in &keys {
            let mut j = 1i64;
            loop {
                let shifted = base.add(&w.scale(j));
                if !self.within_bound(&shifted) {
                    break;
                }
                extended.push(shifted);
                j += 1;
            }
        }
        keys.extend(extended);
        keys.sort_by(|a, b| {
            self.grading
                .pairing(a)
                .cmp(&self.grading.pairing(b))
                .then_with(|| a.cmp(b))
        });
        keys.dedup();
        for key in keys {
            let prev = key.sub(w);
            let mut value = self.coeff(&key);
            let from_prev = self.coeff(&prev).mul(&QLaurent::monomial(-c, 1));
            value.add_assign(&from_prev);
            self.insert(key, value);
        }
    }

    /// Multiply in place by the binomial `1 − q^{−c} e^{w}`, truncating to
    /// the bound.
    fn mul_binomial(&mut self, w: &Coweight, c: Rational64) {
        let mut out: BTreeMap<Coweight, QLaurent> = self.coeffs.clone();
        for (key, val) in &self.coeffs {
            let shifted = key.add(w);
            if self.grading.pairing(&shifted) > Rational64::from_integer(self.bound) {
                continue;
            }
            let term = val.mul(&QLaurent::monomial(-c, -1));
            let entry = out.entry(shifted).or_insert_with(QLaurent::zero);
            entry.add_assign(&term);
        }
        out.retain(|_, v| !v.is_zero());
        self.coeffs = out;
    }

    /// Keep only keys accepted by the filter.
    fn filtered(&self, mut keep: impl FnMut(&Coweight) -> bool) -> GradedSeries {
        GradedSeries {
            datum_name: self.datum_name.clone(),
            grading: self.grading.clone(),
            bound: self.bound,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}

/// `Π_{b ∈ 𝔅⁺} (1 − q^{−c(b)} e^{wt b})^{−1}` truncated at the grading bound.
pub fn sym_series(x: &XCrystal, bound: i64) -> Result<GradedSeries, SeriesError> {
    if bound < 0 {
        return Err(SeriesError::NegativeBound(bound));
    }
    let d = x.datum();
    let mut series = GradedSeries::unit(d, bound);
    let mut factors = x.plus_weights();
    factors.sort();
    for (w, c) in factors {
        series.mul_geometric(&w, c);
    }
    Ok(series)
}

/// `Π_{α̌ > 0} (1 − q^{−1} e^{α̌}) · sym_series`: the normalized pushforward
/// of the basic function.
pub fn pushforward_series(x: &XCrystal, bound: i64) -> Result<GradedSeries, SeriesError> {
    let mut series = sym_series(x, bound)?;
    for alpha in x.datum().root_datum.positive_coroots() {
        series.mul_binomial(&alpha, Rational64::from_integer(1));
    }
    Ok(series)
}

/// `Π_{α̌ > 0} (1 − e^{α̌}) · sym_series`: the asymptotics of the basic
/// function on the full lattice.
pub fn asymptotics_series(x: &XCrystal, bound: i64) -> Result<GradedSeries, SeriesError> {
    let mut series = sym_series(x, bound)?;
    for alpha in x.datum().root_datum.positive_coroots() {
        series.mul_binomial(&alpha, Rational64::zero());
    }
    Ok(series)
}

/// The basic function: asymptotics restricted to Frobenius-fixed
/// antidominant coweights. Keys outside the antidominant monoid are absent.
pub fn basic_function(
    x: &XCrystal,
    bound: i64,
) -> Result<BTreeMap<Coweight, QLaurent>, SeriesError> {
    let d = x.datum();
    let series = asymptotics_series(x, bound)?;
    let restricted = series.filtered(|k| d.root_datum.is_antidominant(k) && d.frobenius_fixes(k));
    Ok(restricted.coeffs)
}

/// Sym-part of the Frobenius-twisted trace: the cycle-index product over
/// Frobenius orbits on the plus part.
pub fn frobenius_sym_series(x: &XCrystal, bound: i64) -> Result<GradedSeries, SeriesError> {
    if bound < 0 {
        return Err(SeriesError::NegativeBound(bound));
    }
    let d = x.datum();
    let perm = frobenius_action(x)?;
    let mut series = GradedSeries::unit(d, bound);
    for (sum, size, twist) in plus_orbits(x, &perm) {
        // One factor (1 − q^{−|o|·c} e^{Σ wt})^{−1} per orbit.
        series.mul_geometric(&sum, twist * Rational64::from_integer(size as i64));
    }
    Ok(series)
}

/// The full Frobenius-twisted trace: the twisted numerator over Frobenius
/// orbits of positive coroots times [`frobenius_sym_series`], supported on
/// the Frobenius-fixed sublattice.
pub fn frobenius_trace(x: &XCrystal, bound: i64) -> Result<GradedSeries, SeriesError> {
    let d = x.datum();
    let mut series = frobenius_sym_series(x, bound)?;
    let fr = d
        .frobenius
        .as_ref()
        .ok_or(XCrystalError::MissingFrobenius)?;
    // Orbits of σ on the positive coroots.
    let mut remaining: Vec<Coweight> = d.root_datum.positive_coroots();
    remaining.sort();
    let mut orbit_data: Vec<(Coweight, usize)> = Vec::new();
    while let Some(start) = remaining.first().cloned() {
        let mut orbit = vec![start.clone()];
        let mut cur = apply_matrix(&fr.lattice_auto, &start);
        while cur != start {
            orbit.push(cur.clone());
            cur = apply_matrix(&fr.lattice_auto, &cur);
        }
        remaining.retain(|c| !orbit.contains(c));
        let mut sum = Coweight::zero(d.root_datum.rank);
        for c in &orbit {
            sum = sum.add(c);
        }
        orbit_data.push((sum, orbit.len()));
    }
    for (sum, size) in orbit_data {
        series.mul_binomial(&sum, Rational64::from_integer(size as i64));
    }
    let fixed = series.filtered(|k| d.frobenius_fixes(k));
    Ok(fixed)
}

/// Frobenius orbits on the plus part: (weight sum, orbit size, per-element
/// twist). Twists are constant along orbits.
fn plus_orbits(x: &XCrystal, perm: &[usize]) -> Vec<(Coweight, usize, Rational64)> {
    let plus = x.plus_elements();
    let mut seen = vec![false; x.len()];
    let mut out = Vec::new();
    for &b in &plus {
        if seen[b] {
            continue;
        }
        let mut orbit = vec![b];
        seen[b] = true;
        let mut cur = perm[b];
        while cur != b {
            seen[cur] = true;
            orbit.push(cur);
            cur = perm[cur];
        }
        let mut sum = Coweight::zero(x.datum().root_datum.rank);
        for &e in &orbit {
            sum = sum.add(x.crystal().weight(e));
        }
        let twist = x.twist(b);
        debug_assert!(orbit.iter().all(|&e| x.twist(e) == twist));
        out.push((sum, orbit.len(), twist));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    out
}

/// All multisets of nonzero monoid elements summing to `λ`, with the
/// refinement relation as index pairs `(finer, coarser)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionSet {
    /// Each partition is a sorted list of (part, multiplicity).
    pub partitions: Vec<Vec<(Coweight, u32)>>,
    /// `(i, j)` when partition `i` strictly refines partition `j`.
    pub refinements: Vec<(usize, usize)>,
}

pub fn partitions(lambda: &Coweight, d: &SphericalDatum) -> PartitionSet {
    let zero = Coweight::zero(d.root_datum.rank);
    if lambda == &zero {
        return PartitionSet {
            partitions: vec![vec![]],
            refinements: vec![],
        };
    }
    if !d.in_monoid(lambda) {
        return PartitionSet {
            partitions: vec![],
            refinements: vec![],
        };
    }
    let budget = d.grading_value(lambda);
    let parts_pool: Vec<Coweight> = d
        .monoid_elements(rational_ceil(budget))
        .into_iter()
        .map(|m| m.coweight)
        .filter(|c| !c.is_zero())
        .collect();
    let mut found: Vec<Vec<Coweight>> = Vec::new();
    let mut current: Vec<Coweight> = Vec::new();
    enumerate_partitions(lambda, &parts_pool, 0, d, &mut current, &mut found);
    let partitions: Vec<Vec<(Coweight, u32)>> = found
        .into_iter()
        .map(|list| {
            let mut counted: Vec<(Coweight, u32)> = Vec::new();
            for part in list {
                match counted.iter_mut().find(|(p, _)| *p == part) {
                    Some((_, m)) => *m += 1,
                    None => counted.push((part, 1)),
                }
            }
            counted.sort();
            counted
        })
        .collect();

    // Refinement: transitive closure of single merges of two parts.
    let index: BTreeMap<Vec<(Coweight, u32)>, usize> = partitions
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (i, p) in partitions.iter().enumerate() {
        let flat = flatten(p);
        for a in 0..flat.len() {
            for b in a + 1..flat.len() {
                let mut merged: Vec<Coweight> = Vec::new();
                for (k, part) in flat.iter().enumerate() {
                    if k != a && k != b {
                        merged.push(part.clone());
                    }
                }
                merged.push(flat[a].add(&flat[b]));
                let mut counted: Vec<(Coweight, u32)> = Vec::new();
                merged.sort();
                for part in merged {
                    match counted.iter_mut().find(|(p, _)| *p == part) {
                        Some((_, m)) => *m += 1,
                        None => counted.push((part, 1)),
                    }
                }
                counted.sort();
                if let Some(&j) = index.get(&counted) {
                    if !edges.contains(&(i, j)) {
                        edges.push((i, j));
                    }
                }
            }
        }
    }
    // Transitive closure.
    let n = partitions.len();
    let mut reach = vec![vec![false; n]; n];
    for &(i, j) in &edges {
        reach[i][j] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let mut refinements = Vec::new();
    for (i, row) in reach.iter().enumerate() {
        for (j, &r) in row.iter().enumerate() {
            if r {
                refinements.push((i, j));
            }
        }
    }
    PartitionSet {
        partitions,
        refinements,
    }
}

fn flatten(p: &[(Coweight, u32)]) -> Vec<Coweight> {
    let mut out = Vec::new();
    for (c, m) in p {
        for _ in 0..*m {
            out.push(c.clone());
        }
    }
    out
}

fn rational_ceil(x: Rational64) -> i64 {
    let n = *x.numer();
    let d = *x.denom();
    if n % d == 0 {
        n / d
    } else if n > 0 {
        n / d + 1
    } else {
        n / d
    }
}

fn enumerate_partitions(
    remaining: &Coweight,
    pool: &[Coweight],
    from: usize,
    d: &SphericalDatum,
    current: &mut Vec<Coweight>,
    found: &mut Vec<Vec<Coweight>>,
) {
    if remaining.is_zero() {
        found.push(current.clone());
        return;
    }
    if d.grading_value(remaining).is_negative() {
        return;
    }
    for k in from..pool.len() {
        let rest = remaining.sub(&pool[k]);
        if d.grading_value(&rest).is_negative() {
            continue;
        }
        current.push(pool[k].clone());
        enumerate_partitions(&rest, pool, k, d, current, found);
        current.pop();
    }
}

/// CSV rows for a graded series: coordinates, q-exponent, coefficient.
/// Stable order: grading, then lexicographic coordinates, then exponent.
pub fn series_to_csv(series: &GradedSeries, datum: &SphericalDatum) -> String {
    let rank = datum.root_datum.rank;
    let mut header: Vec<String> = (0..rank).map(|k| format!("c{k}")).collect();
    header.push("q_exponent".into());
    header.push("coefficient".into());
    let mut rows: Vec<(Rational64, Coweight, Rational64, i64)> = Vec::new();
    for (key, value) in series.support() {
        for (e, c) in value.terms() {
            rows.push((datum.grading_value(key), key.clone(), e, c));
        }
    }
    rows.sort();
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for (_, key, e, c) in rows {
        let mut fields: Vec<String> = key.coords().iter().map(|x| x.to_string()).collect();
        fields.push(format_half(e));
        fields.push(c.to_string());
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Half-integers print as exact decimals.
pub fn format_half(x: Rational64) -> String {
    if x.is_integer() {
        return x.to_string();
    }
    let sign = if x.is_negative() { "-" } else { "" };
    let a = x.abs();
    format!("{sign}{}.5", a.to_integer())
}
