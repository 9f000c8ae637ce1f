//! Spherical-variety combinatorial data on the dual side: colors and their
//! valuations, the generated monoid `𝔠_X`, the orders `≤` and `⪯`, lengths,
//! the saturated antidominant set, and datum validation.
//!
//! The monoid is specified by generators: the color valuations together
//! with optional antidominant extra generators (valuations of extra
//! boundary divisors). Membership and enumeration are decided by bounded
//! search along a grading functional that is strictly positive on every
//! generator; strict positivity is exactly strict convexity of the cone.

use crate::lattice::{
    apply_matrix, identity_matrix, mat_mul, Coweight, Matrix, RootDatum, WeightFunctional,
};
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, PartialEq, Debug)]
pub struct Color {
    pub name: String,
    pub valuation: Coweight,
}

/// Frobenius structure: a lattice automorphism compatible with a
/// permutation of the colors and of the Dynkin diagram.
#[derive(Clone, PartialEq, Debug)]
pub struct FrobeniusDatum {
    pub lattice_auto: Matrix,
    pub color_perm: BTreeMap<String, String>,
    pub dynkin_perm: Vec<usize>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct SphericalDatum {
    pub name: String,
    pub root_datum: RootDatum,
    pub colors: Vec<Color>,
    /// Simple-root index `i` ↦ the unordered pair of color names `𝒟(α_i)`.
    pub color_pairs: BTreeMap<usize, (String, String)>,
    pub extra_generators: Vec<Coweight>,
    pub h_char: WeightFunctional,
    pub grading: WeightFunctional,
    pub frobenius: Option<FrobeniusDatum>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub code: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, code: &str, message: String) {
        self.violations.push(Violation {
            code: code.to_string(),
            message,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid")
        } else {
            for v in &self.violations {
                writeln!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

/// A monoid element together with one witness decomposition into generators,
/// as (generator index, multiplicity) pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct MonoidElement {
    pub coweight: Coweight,
    pub witness: Vec<(usize, u32)>,
}

/// Result of the saturated-set computation.
#[derive(Clone, Debug, PartialEq)]
pub struct SaturatedSet {
    pub elements: Vec<Coweight>,
    /// Set when the caller-supplied bound may truncate the answer.
    pub truncated: bool,
}

/// Which definition of the saturated set to use. The two readings differ in
/// where primitivity is tested and what decompositions are forbidden; they
/// agree on all shipped catalog data except `nfold(2)`-type monoids, where
/// the antidominant-monoid reading admits extra elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaturationRule {
    /// Primitive in the full monoid, and not `θ̌' + λ̌` with `θ̌'`
    /// antidominant nonzero and `λ̌ ≻ 0`. This is the default.
    FullMonoidPrimitive,
    /// Primitive in the antidominant submonoid, and not `θ̌' + ν̌_D` for a
    /// single color valuation `ν̌_D`.
    AntidominantPrimitive,
}

impl SphericalDatum {
    /// All monoid generators: color valuations first (in declaration order),
    /// then the extra generators.
    pub fn generators(&self) -> Vec<Coweight> {
        self.colors
            .iter()
            .map(|c| c.valuation.clone())
            .chain(self.extra_generators.iter().cloned())
            .collect()
    }

    /// Distinct color valuations, sorted.
    pub fn color_valuations(&self) -> Vec<Coweight> {
        let set: BTreeSet<Coweight> = self.colors.iter().map(|c| c.valuation.clone()).collect();
        set.into_iter().collect()
    }

    pub fn color_by_name(&self, name: &str) -> Option<&Color> {
        self.colors.iter().find(|c| c.name == name)
    }

    /// `len(x) = ⟨𝔥 + 2ρ_G, x⟩`; equals 1 on every color valuation.
    pub fn length(&self, x: &Coweight) -> Rational64 {
        self.h_char.add(&self.root_datum.two_rho()).pairing(x)
    }

    pub fn grading_value(&self, x: &Coweight) -> Rational64 {
        self.grading.pairing(x)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        if let Err(e) = self.root_datum.validate() {
            report.push("root-datum", e.to_string());
            return report;
        }
        let rd = &self.root_datum;
        for c in &self.colors {
            if c.valuation.rank() != rd.rank {
                report.push("color-rank", format!("color {} has wrong rank", c.name));
                return report;
            }
        }
        for g in &self.extra_generators {
            if g.rank() != rd.rank {
                report.push(
                    "generator-rank",
                    format!("extra generator {g} has wrong rank"),
                );
                return report;
            }
        }
        if self.h_char.rank() != rd.rank || self.grading.rank() != rd.rank {
            report.push("functional-rank", "h_char or grading has wrong rank".into());
            return report;
        }

        let mut seen_names = BTreeSet::new();
        for c in &self.colors {
            if !seen_names.insert(c.name.clone()) {
                report.push(
                    "color-name-duplicate",
                    format!("color name {} repeats", c.name),
                );
            }
        }

        // Type T: a pair for every simple root, summing to the coroot.
        for i in 0..rd.num_simple() {
            match self.color_pairs.get(&i) {
                None => report.push(
                    "missing-color-pair",
                    format!("simple root {} has no color pair", rd.labels[i]),
                ),
                Some((a, b)) => {
                    let (ca, cb) = (self.color_by_name(a), self.color_by_name(b));
                    match (ca, cb) {
                        (Some(ca), Some(cb)) => {
                            let sum = ca.valuation.add(&cb.valuation);
                            if sum != rd.simple_coroots[i] {
                                report.push(
                                    "pair-sum-not-coroot",
                                    format!("ν̌_{} + ν̌_{} = {} ≠ α̌_{}", a, b, sum, rd.labels[i]),
                                );
                            }
                        }
                        _ => report.push(
                            "unknown-color-in-pair",
                            format!("pair for {} names a missing color", rd.labels[i]),
                        ),
                    }
                }
            }
        }
        for &i in self.color_pairs.keys() {
            if i >= rd.num_simple() {
                report.push(
                    "pair-index-out-of-range",
                    format!("no simple root of index {i}"),
                );
            }
        }

        // D ∈ 𝒟(α) iff ⟨α, ν̌_D⟩ > 0, in which case the pairing is 1.
        for c in &self.colors {
            let mut in_some_pair = false;
            for i in 0..rd.num_simple() {
                let pair = rd.simple_roots[i].pairing(&c.valuation);
                let listed = self
                    .color_pairs
                    .get(&i)
                    .map(|(a, b)| *a == c.name || *b == c.name)
                    .unwrap_or(false);
                if listed {
                    in_some_pair = true;
                    if pair <= Rational64::zero() {
                        report.push(
                            "pair-pairing-not-positive",
                            format!(
                                "⟨{}, ν̌_{}⟩ = {} ≤ 0 but color is in the pair",
                                rd.labels[i], c.name, pair
                            ),
                        );
                    } else if pair != Rational64::from_integer(1) {
                        report.push(
                            "pairing-not-one",
                            format!("⟨{}, ν̌_{}⟩ = {} ≠ 1", rd.labels[i], c.name, pair),
                        );
                    }
                } else if pair > Rational64::zero() {
                    report.push(
                        "positive-pairing-not-in-pair",
                        format!(
                            "⟨{}, ν̌_{}⟩ = {} > 0 but color is not in 𝒟(α)",
                            rd.labels[i], c.name, pair
                        ),
                    );
                }
            }
            if !in_some_pair {
                report.push(
                    "color-in-no-pair",
                    format!("color {} belongs to no 𝒟(α)", c.name),
                );
            }
        }

        for g in &self.extra_generators {
            if !rd.is_antidominant(g) {
                report.push(
                    "extra-generator-not-antidominant",
                    format!("extra generator {g} is not antidominant"),
                );
            }
        }

        // 𝔥 must be W-invariant and normalize colors to length 1.
        for (i, c) in rd.simple_coroots.iter().enumerate() {
            if !self.h_char.pairing(c).is_zero() {
                report.push(
                    "h-char-not-w-invariant",
                    format!("⟨𝔥, α̌_{}⟩ = {} ≠ 0", rd.labels[i], self.h_char.pairing(c)),
                );
            }
        }
        let len_functional = self.h_char.add(&rd.two_rho());
        for c in &self.colors {
            let v = len_functional.pairing(&c.valuation);
            if v != Rational64::from_integer(1) {
                report.push(
                    "color-length-not-one",
                    format!("⟨𝔥 + 2ρ, ν̌_{}⟩ = {} ≠ 1", c.name, v),
                );
            }
        }

        // Strict convexity, encoded by the grading.
        for g in self.generators() {
            if g.is_zero() {
                report.push(
                    "zero-generator",
                    "the zero coweight is listed as a generator".into(),
                );
            } else if !self.grading.pairing(&g).is_positive() {
                report.push(
                    "grading-not-strictly-positive",
                    format!("grading({g}) = {} ≤ 0", self.grading.pairing(&g)),
                );
            }
        }

        if let Some(fr) = &self.frobenius {
            self.validate_frobenius(fr, &mut report);
        }
        report
    }

    fn validate_frobenius(&self, fr: &FrobeniusDatum, report: &mut ValidationReport) {
        let rd = &self.root_datum;
        let n = rd.num_simple();
        if fr.lattice_auto.len() != rd.rank || fr.lattice_auto.iter().any(|r| r.len() != rd.rank) {
            report.push(
                "frobenius-matrix-shape",
                "lattice_auto has wrong shape".into(),
            );
            return;
        }
        if fr.dynkin_perm.len() != n || {
            let mut sorted = fr.dynkin_perm.clone();
            sorted.sort_unstable();
            sorted != (0..n).collect::<Vec<_>>()
        } {
            report.push(
                "frobenius-dynkin-perm",
                "dynkin_perm is not a permutation".into(),
            );
            return;
        }
        for i in 0..n {
            let img = apply_matrix(&fr.lattice_auto, &rd.simple_coroots[i]);
            if img != rd.simple_coroots[fr.dynkin_perm[i]] {
                report.push(
                    "frobenius-coroot-permutation",
                    format!(
                        "σ(α̌_{}) = {} ≠ α̌_{}",
                        rd.labels[i], img, rd.labels[fr.dynkin_perm[i]]
                    ),
                );
            }
            if rd.cartan(i, i) == 2 {
                for j in 0..n {
                    if rd.cartan(fr.dynkin_perm[i], fr.dynkin_perm[j]) != rd.cartan(i, j) {
                        report.push(
                            "frobenius-cartan",
                            format!("dynkin_perm does not preserve the Cartan matrix at ({i},{j})"),
                        );
                    }
                }
            }
        }
        for c in &self.colors {
            match fr
                .color_perm
                .get(&c.name)
                .and_then(|n| self.color_by_name(n))
            {
                None => report.push(
                    "frobenius-color-perm",
                    format!("color_perm misses or mistargets color {}", c.name),
                ),
                Some(target) => {
                    let img = apply_matrix(&fr.lattice_auto, &c.valuation);
                    if img != target.valuation {
                        report.push(
                            "frobenius-color-valuation",
                            format!("σ(ν̌_{}) = {} ≠ ν̌_{}", c.name, img, target.name),
                        );
                    }
                }
            }
        }
        {
            let values: BTreeSet<&String> = fr.color_perm.values().collect();
            if values.len() != fr.color_perm.len() || fr.color_perm.len() != self.colors.len() {
                report.push(
                    "frobenius-color-perm",
                    "color_perm is not a permutation".into(),
                );
            }
        }
        let extras: BTreeSet<Coweight> = self.extra_generators.iter().cloned().collect();
        for g in &self.extra_generators {
            if !extras.contains(&apply_matrix(&fr.lattice_auto, g)) {
                report.push(
                    "frobenius-extra-generators",
                    format!("σ does not preserve the extra generators at {g}"),
                );
            }
        }
        // Finite order.
        let mut m = fr.lattice_auto.clone();
        let id = identity_matrix(rd.rank);
        let mut order = 1;
        while m != id && order <= 1024 {
            m = mat_mul(&fr.lattice_auto, &m);
            order += 1;
        }
        if m != id {
            report.push(
                "frobenius-infinite-order",
                "lattice_auto has order > 1024".into(),
            );
        }
    }

    pub fn frobenius_order(&self) -> usize {
        match &self.frobenius {
            None => 1,
            Some(fr) => {
                let id = identity_matrix(self.root_datum.rank);
                let mut m = fr.lattice_auto.clone();
                let mut order = 1;
                while m != id {
                    m = mat_mul(&fr.lattice_auto, &m);
                    order += 1;
                }
                order
            }
        }
    }

    pub fn frobenius_fixes(&self, x: &Coweight) -> bool {
        match &self.frobenius {
            None => true,
            Some(fr) => apply_matrix(&fr.lattice_auto, x) == *x,
        }
    }

    /// Membership of `x` in the span of the given generators, by bounded
    /// exact search. Each generator has strictly positive grading, so the
    /// recursion descends strictly in grading and the memo is sound.
    fn in_span(&self, x: &Coweight, gens: &[Coweight]) -> bool {
        if x.is_zero() {
            return true;
        }
        let g = self.grading.pairing(x);
        if !g.is_positive() {
            return false;
        }
        let mut memo: BTreeMap<Coweight, bool> = BTreeMap::new();
        self.in_span_memo(x, gens, &mut memo)
    }

    fn in_span_memo(
        &self,
        x: &Coweight,
        gens: &[Coweight],
        memo: &mut BTreeMap<Coweight, bool>,
    ) -> bool {
        if x.is_zero() {
            return true;
        }
        if self.grading.pairing(x).is_negative() {
            return false;
        }
        if let Some(&known) = memo.get(x) {
            return known;
        }
        let result = gens
            .iter()
            .any(|gen| self.in_span_memo(&x.sub(gen), gens, memo));
        memo.insert(x.clone(), result);
        result
    }

    /// `x ⪯ y`: the difference is a non-negative integral combination of
    /// color valuations.
    pub fn preceq(&self, x: &Coweight, y: &Coweight) -> bool {
        self.in_span(&y.sub(x), &self.color_valuations())
    }

    /// Membership in the full monoid `𝔠_X` (colors and extra generators).
    pub fn in_monoid(&self, x: &Coweight) -> bool {
        let gens: BTreeSet<Coweight> = self.generators().into_iter().collect();
        let gens: Vec<Coweight> = gens.into_iter().collect();
        self.in_span(x, &gens)
    }

    /// All monoid elements of grading at most `bound`, each with one witness
    /// decomposition. Deterministic: elements sorted, witnesses fixed by a
    /// breadth-first walk over generators in declaration order.
    pub fn monoid_elements(&self, bound: i64) -> Vec<MonoidElement> {
        let gens = self.generators();
        let bound = Rational64::from_integer(bound);
        let zero = Coweight::zero(self.root_datum.rank);
        let mut found: BTreeMap<Coweight, Vec<(usize, u32)>> = BTreeMap::new();
        found.insert(zero.clone(), vec![]);
        let mut frontier = vec![zero];
        while let Some(cur) = frontier.pop() {
            for (k, gen) in gens.iter().enumerate() {
                let next = cur.add(gen);
                if self.grading.pairing(&next) > bound || found.contains_key(&next) {
                    continue;
                }
                let mut witness = found.get(&cur).unwrap().clone();
                match witness.iter_mut().find(|(i, _)| *i == k) {
                    Some((_, m)) => *m += 1,
                    None => witness.push((k, 1)),
                }
                witness.sort_unstable();
                found.insert(next.clone(), witness);
                frontier.push(next);
            }
        }
        found
            .into_iter()
            .map(|(coweight, witness)| MonoidElement { coweight, witness })
            .collect()
    }

    /// The antidominant monoid elements `𝔠_X⁻` up to the grading bound.
    pub fn antidominant_elements(&self, bound: i64) -> Vec<Coweight> {
        self.monoid_elements(bound)
            .into_iter()
            .map(|m| m.coweight)
            .filter(|c| self.root_datum.is_antidominant(c))
            .collect()
    }

    pub fn saturated_set(&self, bound: i64) -> SaturatedSet {
        self.saturated_set_with_rule(bound, SaturationRule::FullMonoidPrimitive)
    }

    /// The saturated antidominant set: boundary-stratum labels.
    pub fn saturated_set_with_rule(&self, bound: i64, rule: SaturationRule) -> SaturatedSet {
        let max_gen_grading = self
            .generators()
            .iter()
            .map(|g| self.grading.pairing(g))
            .max()
            .unwrap_or_else(Rational64::zero);
        let truncated = match rule {
            // Candidates are always generators, so the bound only truncates
            // when it cannot see all of them.
            SaturationRule::FullMonoidPrimitive => {
                Rational64::from_integer(bound) < max_gen_grading
            }
            // No generator certificate exists for the antidominant submonoid.
            SaturationRule::AntidominantPrimitive => true,
        };
        let monoid = self.monoid_elements(bound);
        let monoid_set: BTreeSet<Coweight> = monoid.iter().map(|m| m.coweight.clone()).collect();
        let anti: Vec<Coweight> = monoid_set
            .iter()
            .filter(|c| self.root_datum.is_antidominant(c))
            .cloned()
            .collect();
        let anti_set: BTreeSet<Coweight> = anti.iter().cloned().collect();
        let nonzero = |c: &Coweight| !c.is_zero();

        let mut elements = Vec::new();
        for theta in anti.iter().filter(|c| nonzero(c)) {
            let ok = match rule {
                SaturationRule::FullMonoidPrimitive => {
                    let primitive = !monoid_set.iter().filter(|m| nonzero(m)).any(|m| {
                        let rest = theta.sub(m);
                        nonzero(&rest) && monoid_set.contains(&rest)
                    });
                    let boundary_plus_positive = anti_set
                        .iter()
                        .filter(|t| nonzero(t) && *t != theta)
                        .any(|t| {
                            let rest = theta.sub(t);
                            nonzero(&rest) && self.preceq(&Coweight::zero(rest.rank()), &rest)
                        });
                    primitive && !boundary_plus_positive
                }
                SaturationRule::AntidominantPrimitive => {
                    let primitive_in_anti = !anti_set.iter().filter(|t| nonzero(t)).any(|t| {
                        let rest = theta.sub(t);
                        nonzero(&rest) && anti_set.contains(&rest)
                    });
                    let color_decomposition = self.color_valuations().iter().any(|nu| {
                        let rest = theta.sub(nu);
                        nonzero(&rest) && anti_set.contains(&rest)
                    });
                    primitive_in_anti && !color_decomposition
                }
            };
            if ok {
                elements.push(theta.clone());
            }
        }
        SaturatedSet {
            elements,
            truncated,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn cw(coords: &[i64]) -> Coweight {
        Coweight::new(coords.to_vec())
    }

    #[test]
    fn catalog_data_validate() {
        for name in catalog::names() {
            let d = catalog::spherical_datum(&name).unwrap();
            let report = d.validate();
            assert!(report.is_valid(), "{name}: {report}");
        }
    }

    #[test]
    fn pairing_two_is_flagged() {
        let mut d = catalog::spherical_datum("hecke-gl2").unwrap();
        // Doubling one valuation breaks the normalized pairing and more.
        d.colors[0].valuation = cw(&[2, 0]);
        let report = d.validate();
        assert!(
            report
                .violations
                .iter()
                .any(|v| v.code == "pairing-not-one"),
            "{report}"
        );
    }

    #[test]
    fn opposite_generators_break_convexity() {
        let mut d = catalog::spherical_datum("hecke-gl2-det").unwrap();
        let theta = d.extra_generators[0].clone();
        d.extra_generators.push(theta.neg());
        let report = d.validate();
        assert!(
            report
                .violations
                .iter()
                .any(|v| v.code == "grading-not-strictly-positive"),
            "{report}"
        );
    }

    #[test]
    fn preceq_examples() {
        let d = catalog::spherical_datum("hecke-gl2").unwrap();
        let zero = cw(&[0, 0]);
        assert!(d.preceq(&zero, &cw(&[1, -1])));
        assert!(d.preceq(&zero, &zero));
        assert!(d.preceq(&zero, &cw(&[1, -2])));
        assert!(!d.preceq(&zero, &cw(&[-1, 0])));
    }

    #[test]
    fn monoid_elements_examples() {
        let d = catalog::spherical_datum("hecke-gl2").unwrap();
        let got: Vec<Coweight> = d
            .monoid_elements(1)
            .into_iter()
            .map(|m| m.coweight)
            .collect();
        assert_eq!(got, vec![cw(&[0, -1]), cw(&[0, 0]), cw(&[1, 0])]);
        let got0: Vec<Coweight> = d
            .monoid_elements(0)
            .into_iter()
            .map(|m| m.coweight)
            .collect();
        assert_eq!(got0, vec![cw(&[0, 0])]);

        let det = catalog::spherical_datum("hecke-gl2-det").unwrap();
        let got: Vec<Coweight> = det
            .monoid_elements(1)
            .into_iter()
            .map(|m| m.coweight)
            .collect();
        assert_eq!(got, vec![cw(&[-1, -1]), cw(&[0, 0]), cw(&[1, 0])]);
    }

    #[test]
    fn monoid_witnesses_reconstruct_elements() {
        let det = catalog::spherical_datum("hecke-gl2-det").unwrap();
        let gens = det.generators();
        for m in det.monoid_elements(4) {
            let mut acc = Coweight::zero(2);
            for (k, mult) in &m.witness {
                acc = acc.add(&gens[*k].scale(i64::from(*mult)));
            }
            assert_eq!(acc, m.coweight);
        }
    }

    #[test]
    fn antidominant_examples() {
        let gl2 = catalog::spherical_datum("hecke-gl2").unwrap();
        assert_eq!(gl2.antidominant_elements(8), vec![cw(&[0, 0])]);
        let det = catalog::spherical_datum("hecke-gl2-det").unwrap();
        assert_eq!(
            det.antidominant_elements(3),
            vec![cw(&[-3, -3]), cw(&[-2, -2]), cw(&[-1, -1]), cw(&[0, 0])]
        );
        let pgl2 = catalog::spherical_datum("hecke-pgl2").unwrap();
        assert_eq!(pgl2.antidominant_elements(6), vec![cw(&[0])]);
    }

    #[test]
    fn saturated_set_examples() {
        let gl2 = catalog::spherical_datum("hecke-gl2").unwrap();
        let s = gl2.saturated_set(6);
        assert!(s.elements.is_empty());
        assert!(!s.truncated);

        let det = catalog::spherical_datum("hecke-gl2-det").unwrap();
        let s = det.saturated_set(6);
        assert_eq!(s.elements, vec![cw(&[-1, -1])]);
        assert!(!s.truncated);

        let nfold1 = catalog::spherical_datum("nfold(1)").unwrap();
        let s = nfold1.saturated_set(6);
        assert!(s.elements.is_empty());
    }

    #[test]
    fn saturation_rules_differ_on_nfold2() {
        // ν̌_1 + ν̌_2 is antidominant in nfold(2); it is a sum of two colors,
        // so the full-monoid rule rejects it, while it is primitive inside
        // the antidominant submonoid.
        let d = catalog::spherical_datum("nfold(2)").unwrap();
        let main = d.saturated_set(8);
        assert!(main.elements.is_empty());
        let variant = d.saturated_set_with_rule(8, SaturationRule::AntidominantPrimitive);
        assert_eq!(variant.elements, vec![cw(&[2, -1, -1])]);
    }

    #[test]
    fn membership_search_agrees_with_enumeration() {
        // Two independent routes to monoid membership: the memoized
        // subtraction search and the breadth-first enumeration.
        for name in [
            "hecke-gl2",
            "hecke-gl2-det",
            "nfold(2)",
            "a1xa1-product",
            "hecke-pgl2",
        ] {
            let d = catalog::spherical_datum(name).unwrap();
            let bound = 5i64;
            let enumerated: std::collections::BTreeSet<Coweight> = d
                .monoid_elements(bound)
                .into_iter()
                .map(|m| m.coweight)
                .collect();
            let r = d.root_datum.rank;
            let mut coords = vec![-5i64; r];
            'grid: loop {
                let x = Coweight::new(coords.clone());
                let in_window = d.grading_value(&x) <= Rational64::from_integer(bound);
                if in_window {
                    assert_eq!(
                        d.in_monoid(&x),
                        enumerated.contains(&x),
                        "{name}: membership mismatch at {x}"
                    );
                }
                let mut axis = 0;
                loop {
                    if axis == r {
                        break 'grid;
                    }
                    coords[axis] += 1;
                    if coords[axis] <= 5 {
                        break;
                    }
                    coords[axis] = -5;
                    axis += 1;
                }
            }
        }
    }

    #[test]
    fn length_examples() {
        let gl2 = catalog::spherical_datum("hecke-gl2").unwrap();
        assert_eq!(gl2.length(&cw(&[1, 0])), Rational64::from_integer(1));
        assert_eq!(gl2.length(&cw(&[1, -1])), Rational64::from_integer(2));
        let det = catalog::spherical_datum("hecke-gl2-det").unwrap();
        assert_eq!(det.length(&cw(&[-1, -1])), Rational64::from_integer(0));
    }

    #[test]
    fn every_color_has_length_one() {
        for name in catalog::names() {
            let d = catalog::spherical_datum(&name).unwrap();
            for c in &d.colors {
                assert_eq!(
                    d.length(&c.valuation),
                    Rational64::from_integer(1),
                    "{name}/{}",
                    c.name
                );
            }
        }
    }

    #[test]
    fn preceq_monotone_in_grading_and_partial_order() {
        let d = catalog::spherical_datum("hecke-gl2-det").unwrap();
        let elements: Vec<Coweight> = d
            .monoid_elements(4)
            .into_iter()
            .map(|m| m.coweight)
            .collect();
        for x in &elements {
            for y in &elements {
                if d.preceq(x, y) {
                    assert!(d.grading_value(x) <= d.grading_value(y));
                    if d.preceq(y, x) {
                        assert_eq!(x, y);
                    }
                }
                for z in &elements {
                    if d.preceq(x, y) && d.preceq(y, z) {
                        assert!(d.preceq(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn saturated_elements_are_antidominant_primitive_incomparable() {
        for name in catalog::names() {
            let d = catalog::spherical_datum(&name).unwrap();
            let s = d.saturated_set(8);
            for theta in &s.elements {
                assert!(d.root_datum.is_antidominant(theta));
                for other in &s.elements {
                    if theta != other {
                        assert!(!d.preceq(theta, other), "{name}: {theta} ⪯ {other}");
                    }
                }
            }
        }
    }

    #[test]
    fn color_orbits_stay_in_signed_color_cone() {
        // W-translates of color valuations lie in 𝔠_X^𝒟 ∪ −𝔠_X^𝒟.
        for name in catalog::names() {
            let d = catalog::spherical_datum(&name).unwrap();
            let zero = Coweight::zero(d.root_datum.rank);
            for c in &d.colors {
                for w in d.root_datum.weyl_orbit(&c.valuation) {
                    let plus = d.preceq(&zero, &w);
                    let minus = d.preceq(&w, &zero);
                    assert!(
                        plus || minus,
                        "{name}: w(ν̌_{}) = {w} escapes both cones",
                        c.name
                    );
                }
            }
        }
    }

    #[test]
    fn frobenius_swap_validates_and_commutes() {
        let d = catalog::spherical_datum("hecke-pgl2").unwrap();
        let fr = d
            .frobenius
            .as_ref()
            .expect("catalog pgl2 carries the color swap");
        assert!(d.validate().is_valid());
        // σ fixes 𝔥 and 2ρ as pulled-back functionals.
        assert_eq!(d.h_char.compose(&fr.lattice_auto), d.h_char);
        let two_rho = d.root_datum.two_rho();
        assert_eq!(two_rho.compose(&fr.lattice_auto), two_rho);
        // σ commutes with the W-action through dynkin_perm.
        for i in 0..d.root_datum.num_simple() {
            let s = d.root_datum.simple_reflection(i);
            let s_perm = d.root_datum.simple_reflection(fr.dynkin_perm[i]);
            assert_eq!(
                mat_mul(&fr.lattice_auto, &s),
                mat_mul(&s_perm, &fr.lattice_auto)
            );
        }
        assert_eq!(d.frobenius_order(), 1); // identity on the PGL2 lattice
    }
}
