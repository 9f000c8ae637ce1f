//! Based root data on explicit coweight lattices.
//!
//! A [`RootDatum`] fixes a basis of the coweight lattice and expresses the
//! simple coroots as integer vectors and the simple roots as linear
//! functionals in the dual basis. Everything downstream (Weyl groups, root
//! enumeration, dominance order, `2ρ`) is derived from these by exact
//! rational arithmetic. Lattices with half-integral coweights (the `PGL_2`
//! lattice spanned by `α̌/2`, say) are handled by choosing a basis of the
//! full lattice, never by global half-integer arithmetic.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Integer matrix acting on coweight coordinates, row-major.
pub type Matrix = Vec<Vec<i64>>;

/// A lattice point of `Λ̌` in the declared basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coweight {
    coords: Vec<i64>,
}

impl Coweight {
    pub fn new(coords: Vec<i64>) -> Self {
        Coweight { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Coweight {
            coords: vec![0; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Coweight) -> Coweight {
        debug_assert_eq!(self.rank(), other.rank());
        Coweight::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Coweight) -> Coweight {
        debug_assert_eq!(self.rank(), other.rank());
        Coweight::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Coweight {
        Coweight::new(self.coords.iter().map(|&a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Coweight {
        Coweight::new(self.coords.iter().map(|&a| k * a).collect())
    }
}

impl fmt::Debug for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.coords
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A linear functional on `Λ̌`, given by rational coefficients against the
/// declared basis. Coefficients may be half-integral (`ρ`, eigencharacters);
/// simple roots must pair integrally with every lattice point.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeightFunctional {
    coeffs: Vec<Rational64>,
}

impl WeightFunctional {
    pub fn new(coeffs: Vec<Rational64>) -> Self {
        WeightFunctional { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        WeightFunctional {
            coeffs: coeffs
                .iter()
                .map(|&c| Rational64::from_integer(c))
                .collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        WeightFunctional {
            coeffs: vec![Rational64::zero(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational64] {
        &self.coeffs
    }

    /// `⟨f, c⟩`, exact.
    pub fn pairing(&self, c: &Coweight) -> Rational64 {
        assert_eq!(self.rank(), c.rank(), "pairing: rank mismatch");
        self.coeffs
            .iter()
            .zip(c.coords())
            .map(|(f, &x)| *f * Rational64::from_integer(x))
            .sum()
    }

    pub fn add(&self, other: &WeightFunctional) -> WeightFunctional {
        debug_assert_eq!(self.rank(), other.rank());
        WeightFunctional::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, k: Rational64) -> WeightFunctional {
        WeightFunctional::new(self.coeffs.iter().map(|a| a * k).collect())
    }

    /// Pull back through an integer matrix: `(f ∘ m)(c) = f(m c)`.
    pub fn compose(&self, m: &Matrix) -> WeightFunctional {
        let n = self.rank();
        let mut out = vec![Rational64::zero(); n];
        for (j, o) in out.iter_mut().enumerate() {
            for i in 0..n {
                *o += self.coeffs[i] * Rational64::from_integer(m[i][j]);
            }
        }
        WeightFunctional::new(out)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootDatumError {
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("Cartan pairing ⟨α_{j}, α̌_{i}⟩ = {value} is not an integer")]
    NonIntegralCartan { i: usize, j: usize, value: String },
    #[error("Cartan matrix diagonal entry a_{0}{0} is not 2")]
    BadDiagonal(usize),
    #[error("Cartan matrix off-diagonal entry a_{i}{j} = {value} is positive")]
    PositiveOffDiagonal { i: usize, j: usize, value: i64 },
    #[error("Cartan matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("Cartan matrix is not of finite type")]
    NotFiniteType,
    #[error("simple coroots are linearly dependent")]
    DependentCoroots,
}

/// Based root datum `(Λ̌, {α̌_i}, {α_i})` of finite type.
#[derive(Clone, PartialEq, Debug)]
pub struct RootDatum {
    pub rank: usize,
    pub simple_coroots: Vec<Coweight>,
    pub simple_roots: Vec<WeightFunctional>,
    pub labels: Vec<String>,
}

impl RootDatum {
    pub fn new(
        rank: usize,
        simple_coroots: Vec<Coweight>,
        simple_roots: Vec<WeightFunctional>,
        labels: Vec<String>,
    ) -> Result<Self, RootDatumError> {
        let rd = RootDatum {
            rank,
            simple_coroots,
            simple_roots,
            labels,
        };
        rd.validate()?;
        Ok(rd)
    }

    pub fn num_simple(&self) -> usize {
        self.simple_coroots.len()
    }

    /// Cartan matrix entry `a_ij = ⟨α_j, α̌_i⟩`. Callers may rely on
    /// integrality after validation.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        let v = self.simple_roots[j].pairing(&self.simple_coroots[i]);
        debug_assert!(v.is_integer());
        v.to_integer()
    }

    pub fn validate(&self) -> Result<(), RootDatumError> {
        let n = self.num_simple();
        if self.simple_roots.len() != n {
            return Err(RootDatumError::RankMismatch(format!(
                "{} simple coroots vs {} simple roots",
                n,
                self.simple_roots.len()
            )));
        }
        if self.labels.len() != n {
            return Err(RootDatumError::RankMismatch(format!(
                "{} labels for {} simple roots",
                self.labels.len(),
                n
            )));
        }
        for c in &self.simple_coroots {
            if c.rank() != self.rank {
                return Err(RootDatumError::RankMismatch(format!(
                    "coroot {c} has wrong rank"
                )));
            }
        }
        for f in &self.simple_roots {
            if f.rank() != self.rank {
                return Err(RootDatumError::RankMismatch(format!(
                    "root {f:?} has wrong rank"
                )));
            }
        }
        // Simple roots must pair integrally with the whole lattice.
        for (j, f) in self.simple_roots.iter().enumerate() {
            for (i, c) in self.coeffs_integrality_probe().iter().enumerate() {
                let v = f.pairing(c);
                if !v.is_integer() {
                    return Err(RootDatumError::NonIntegralCartan {
                        i,
                        j,
                        value: v.to_string(),
                    });
                }
            }
        }
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = self.simple_roots[j].pairing(&self.simple_coroots[i]);
                if !v.is_integer() {
                    return Err(RootDatumError::NonIntegralCartan {
                        i,
                        j,
                        value: v.to_string(),
                    });
                }
                cartan[i][j] = v.to_integer();
            }
        }
        for (i, row) in cartan.iter().enumerate() {
            if row[i] != 2 {
                return Err(RootDatumError::BadDiagonal(i));
            }
            for (j, &a) in row.iter().enumerate() {
                if i != j && a > 0 {
                    return Err(RootDatumError::PositiveOffDiagonal { i, j, value: a });
                }
                if i != j && (a == 0) != (cartan[j][i] == 0) {
                    return Err(RootDatumError::NotSymmetrizable);
                }
            }
        }
        check_finite_type(&cartan)?;
        if rational_rank(&self.simple_coroots) != n {
            return Err(RootDatumError::DependentCoroots);
        }
        Ok(())
    }

    // Basis vectors, for probing integrality of root pairings.
    fn coeffs_integrality_probe(&self) -> Vec<Coweight> {
        (0..self.rank)
            .map(|k| {
                let mut v = vec![0i64; self.rank];
                v[k] = 1;
                Coweight::new(v)
            })
            .collect()
    }

    /// Matrix of the simple reflection `s_i : λ̌ ↦ λ̌ − ⟨α_i, λ̌⟩ α̌_i`.
    pub fn simple_reflection(&self, i: usize) -> Matrix {
        let n = self.rank;
        let mut m = identity_matrix(n);
        for col in 0..n {
            let mut basis = vec![0i64; n];
            basis[col] = 1;
            let pair = self.simple_roots[i].pairing(&Coweight::new(basis));
            debug_assert!(pair.is_integer());
            let pair = pair.to_integer();
            for row in 0..n {
                m[row][col] -= pair * self.simple_coroots[i].coords()[row];
            }
        }
        m
    }

    pub fn reflect(&self, i: usize, c: &Coweight) -> Coweight {
        let pair = self.simple_roots[i].pairing(c);
        debug_assert!(pair.is_integer());
        c.sub(&self.simple_coroots[i].scale(pair.to_integer()))
    }

    pub fn is_dominant(&self, c: &Coweight) -> bool {
        self.simple_roots
            .iter()
            .all(|f| f.pairing(c) >= Rational64::zero())
    }

    pub fn is_antidominant(&self, c: &Coweight) -> bool {
        self.simple_roots
            .iter()
            .all(|f| f.pairing(c) <= Rational64::zero())
    }

    /// The dominant representative of the Weyl orbit of `c`.
    pub fn dominant_translate(&self, c: &Coweight) -> Coweight {
        let mut x = c.clone();
        'outer: loop {
            for i in 0..self.num_simple() {
                if self.simple_roots[i].pairing(&x) < Rational64::zero() {
                    x = self.reflect(i, &x);
                    continue 'outer;
                }
            }
            return x;
        }
    }

    pub fn weyl_orbit(&self, c: &Coweight) -> Vec<Coweight> {
        let mut seen = std::collections::BTreeSet::new();
        let mut queue = vec![c.clone()];
        seen.insert(c.clone());
        while let Some(x) = queue.pop() {
            for i in 0..self.num_simple() {
                let y = self.reflect(i, &x);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// All (root, coroot) pairs, positives first; a pair is positive when the
    /// coroot is a non-negative combination of simple coroots.
    pub fn root_coroot_pairs(&self) -> Vec<(WeightFunctional, Coweight)> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out: Vec<(WeightFunctional, Coweight)> = Vec::new();
        let mut queue: Vec<(WeightFunctional, Coweight)> = self
            .simple_roots
            .iter()
            .cloned()
            .zip(self.simple_coroots.iter().cloned())
            .collect();
        for (_, c) in &queue {
            seen.insert(c.clone());
        }
        while let Some((f, c)) = queue.pop() {
            out.push((f.clone(), c.clone()));
            for i in 0..self.num_simple() {
                let rc = self.reflect(i, &c);
                if !seen.contains(&rc) {
                    seen.insert(rc.clone());
                    let rf = f.compose(&self.simple_reflection(i));
                    queue.push((rf, rc));
                }
            }
        }
        out.sort_by(|a, b| a.1.cmp(&b.1));
        let (pos, neg): (Vec<_>, Vec<_>) = out
            .into_iter()
            .partition(|(_, c)| self.coroot_is_positive(c));
        pos.into_iter().chain(neg).collect()
    }

    fn coroot_is_positive(&self, c: &Coweight) -> bool {
        match self.express_in_simple_coroots(c) {
            Some(coeffs) => coeffs.iter().all(|x| !x.is_negative()),
            None => false,
        }
    }

    pub fn positive_roots(&self) -> Vec<WeightFunctional> {
        self.root_coroot_pairs()
            .into_iter()
            .filter(|(_, c)| self.coroot_is_positive(c))
            .map(|(f, _)| f)
            .collect()
    }

    pub fn positive_coroots(&self) -> Vec<Coweight> {
        self.root_coroot_pairs()
            .into_iter()
            .filter(|(_, c)| self.coroot_is_positive(c))
            .map(|(_, c)| c)
            .collect()
    }

    /// Sum of all positive roots; pairs to 2 with every simple coroot.
    pub fn two_rho(&self) -> WeightFunctional {
        let mut acc = WeightFunctional::zero(self.rank);
        for f in self.positive_roots() {
            acc = acc.add(&f);
        }
        acc
    }

    pub fn rho(&self) -> WeightFunctional {
        self.two_rho().scale(Rational64::new(1, 2))
    }

    /// Half sum of positive coroots, as a rational vector. This is the `ρ`
    /// of the dual Lie algebra, used by the Freudenthal recursion.
    pub fn half_sum_positive_coroots(&self) -> Vec<Rational64> {
        let mut acc = vec![Rational64::zero(); self.rank];
        for c in self.positive_coroots() {
            for (a, &x) in acc.iter_mut().zip(c.coords()) {
                *a += Rational64::new(x, 2);
            }
        }
        acc
    }

    /// Solve `c = Σ x_i α̌_i` exactly; `None` if `c` is outside the span.
    pub fn express_in_simple_coroots(&self, c: &Coweight) -> Option<Vec<Rational64>> {
        let n = self.num_simple();
        if n == 0 {
            return if c.is_zero() { Some(vec![]) } else { None };
        }
        let cols: Vec<Vec<Rational64>> = self
            .simple_coroots
            .iter()
            .map(|a| {
                a.coords()
                    .iter()
                    .map(|&x| Rational64::from_integer(x))
                    .collect()
            })
            .collect();
        let rhs: Vec<Rational64> = c
            .coords()
            .iter()
            .map(|&x| Rational64::from_integer(x))
            .collect();
        solve_columns(&cols, &rhs)
    }

    /// Coroot dominance: `x ≤ y` iff `y − x` is a non-negative integer
    /// combination of simple coroots.
    pub fn dominance_le(&self, x: &Coweight, y: &Coweight) -> bool {
        assert_eq!(x.rank(), y.rank(), "dominance_le: rank mismatch");
        match self.express_in_simple_coroots(&y.sub(x)) {
            Some(coeffs) => coeffs.iter().all(|v| v.is_integer() && !v.is_negative()),
            None => false,
        }
    }

    /// `⟨2ρ, y − x⟩` when `x ≤ y`; the number of lowering steps between them.
    pub fn dominance_height(&self, x: &Coweight, y: &Coweight) -> Option<i64> {
        if !self.dominance_le(x, y) {
            return None;
        }
        let h = self.two_rho().pairing(&y.sub(x));
        debug_assert!(h.is_integer());
        Some(h.to_integer())
    }

    /// Enumerate the full Weyl group as matrices.
    pub fn weyl_group(&self) -> WeylGroup {
        let n = self.rank;
        let gens: Vec<Matrix> = (0..self.num_simple())
            .map(|i| self.simple_reflection(i))
            .collect();
        let mut seen = std::collections::BTreeSet::new();
        let id = identity_matrix(n);
        seen.insert(id.clone());
        let mut queue = vec![id];
        let mut elements = Vec::new();
        while let Some(m) = queue.pop() {
            elements.push(m.clone());
            for g in &gens {
                let prod = mat_mul(g, &m);
                if seen.insert(prod.clone()) {
                    queue.push(prod);
                }
            }
        }
        elements.sort();
        WeylGroup { elements }
    }

    /// The longest element: the unique Weyl element sending every positive
    /// coroot to a negative one.
    pub fn longest_element(&self) -> Matrix {
        // Greedy descent from a regular dominant rational point, tracked as a word.
        let mut word = Vec::new();
        let mut point: Vec<Rational64> = match self.regular_dominant_point() {
            Some(p) => p,
            None => return identity_matrix(self.rank),
        };
        loop {
            let mut moved = false;
            for i in 0..self.num_simple() {
                let pair: Rational64 = self.simple_roots[i]
                    .coeffs()
                    .iter()
                    .zip(&point)
                    .map(|(a, b)| a * b)
                    .sum();
                if pair > Rational64::zero() {
                    // reflect the rational point
                    for (p, &c) in point.iter_mut().zip(self.simple_coroots[i].coords()) {
                        *p -= pair * Rational64::from_integer(c);
                    }
                    word.push(i);
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
        let mut m = identity_matrix(self.rank);
        for &i in word.iter().rev() {
            m = mat_mul(&m, &self.simple_reflection(i));
        }
        // w0 acts on the left: w0 = s_{i_k} ... s_{i_1}
        let mut w0 = identity_matrix(self.rank);
        for &i in &word {
            w0 = mat_mul(&self.simple_reflection(i), &w0);
        }
        w0
    }

    // A rational point with ⟨α_i, x⟩ = 1 for all i, zero component along the
    // center; None when there are no simple roots.
    fn regular_dominant_point(&self) -> Option<Vec<Rational64>> {
        let n = self.num_simple();
        if n == 0 {
            return None;
        }
        // Solve for x = Σ t_j α̌_j with ⟨α_i, x⟩ = 1 for all i.
        let rows: Vec<Vec<Rational64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Rational64::from_integer(self.cartan(j, i)))
                    .collect()
            })
            .collect();
        let rhs = vec![Rational64::one(); n];
        let t = solve_rows(&rows, &rhs)?;
        let mut x = vec![Rational64::zero(); self.rank];
        for (j, tj) in t.iter().enumerate() {
            for (xi, &c) in x.iter_mut().zip(self.simple_coroots[j].coords()) {
                *xi += tj * Rational64::from_integer(c);
            }
        }
        Some(x)
    }

    /// `− w₀ λ`, the highest weight of the dual of `V^λ`.
    pub fn dual_dominant(&self, lambda: &Coweight) -> Coweight {
        apply_matrix(&self.longest_element(), lambda).neg()
    }

    /// Whether `2λ` is a coroot; the multiplicity-two test of the color rule.
    pub fn is_half_coroot(&self, lambda: &Coweight) -> bool {
        let doubled = lambda.scale(2);
        self.root_coroot_pairs().iter().any(|(_, c)| *c == doubled)
    }

    /// `⟨α, λ⟩ ∈ {−1, 0, 1}` for every root `α`.
    pub fn is_minuscule(&self, lambda: &Coweight) -> bool {
        self.root_coroot_pairs().iter().all(|(f, _)| {
            let v = f.pairing(lambda);
            v.is_integer() && v.to_integer().abs() <= 1
        })
    }
}

/// The Weyl group as an explicit list of integer matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylGroup {
    pub elements: Vec<Matrix>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn apply(m: &Matrix, c: &Coweight) -> Coweight {
        apply_matrix(m, c)
    }
}

pub fn identity_matrix(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn apply_matrix(m: &Matrix, c: &Coweight) -> Coweight {
    let n = c.rank();
    let mut out = vec![0i64; n];
    for (i, o) in out.iter_mut().enumerate() {
        for j in 0..n {
            *o += m[i][j] * c.coords()[j];
        }
    }
    Coweight::new(out)
}

fn rational_rank(vectors: &[Coweight]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut rows: Vec<Vec<Rational64>> = vectors
        .iter()
        .map(|v| {
            v.coords()
                .iter()
                .map(|&x| Rational64::from_integer(x))
                .collect()
        })
        .collect();
    let cols = rows[0].len();
    let mut rank = 0;
    for c in 0..cols {
        if let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) {
            rows.swap(rank, p);
            let inv = rows[rank][c].recip();
            for x in rows[rank].clone().iter().enumerate() {
                rows[rank][x.0] = x.1 * inv;
            }
            for r in 0..rows.len() {
                if r != rank && !rows[r][c].is_zero() {
                    let factor = rows[r][c];
                    for j in 0..cols {
                        let v = rows[rank][j];
                        rows[r][j] -= factor * v;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Solve `A x = b` where `A` is given by columns; exact, `None` if inconsistent.
pub(crate) fn solve_columns(
    cols: &[Vec<Rational64>],
    rhs: &[Rational64],
) -> Option<Vec<Rational64>> {
    let n = rhs.len();
    let k = cols.len();
    let rows: Vec<Vec<Rational64>> = (0..n)
        .map(|i| (0..k).map(|j| cols[j][i]).collect())
        .collect();
    solve_rows(&rows, rhs)
}

/// Solve a (possibly overdetermined) exact linear system given by rows.
pub(crate) fn solve_rows(rows: &[Vec<Rational64>], rhs: &[Rational64]) -> Option<Vec<Rational64>> {
    let m = rows.len();
    let k = if m > 0 { rows[0].len() } else { 0 };
    let mut a: Vec<Vec<Rational64>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(*b);
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..k {
        if let Some(p) = (row..m).find(|&r| !a[r][col].is_zero()) {
            a.swap(row, p);
            let inv = a[row][col].recip();
            for j in col..=k {
                let v = a[row][j];
                a[row][j] = v * inv;
            }
            for r in 0..m {
                if r != row && !a[r][col].is_zero() {
                    let factor = a[r][col];
                    for j in col..=k {
                        let v = a[row][j];
                        a[r][j] -= factor * v;
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
    }
    for r in row..m {
        if !a[r][k].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational64::zero(); k];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = a[r][k];
    }
    Some(x)
}

fn check_finite_type(cartan: &[Vec<i64>]) -> Result<(), RootDatumError> {
    let n = cartan.len();
    if n == 0 {
        return Ok(());
    }
    // Symmetrizer: d_i a_ij = d_j a_ji with d_i > 0.
    let mut d: Vec<Option<Rational64>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational64::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].unwrap();
            for j in 0..n {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                let dj = di * Rational64::new(cartan[i][j], cartan[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(prev) => {
                        if prev != dj {
                            return Err(RootDatumError::NotSymmetrizable);
                        }
                    }
                }
            }
        }
    }
    let d: Vec<Rational64> = d.into_iter().map(|x| x.unwrap()).collect();
    if d.iter().any(|x| !x.is_positive()) {
        return Err(RootDatumError::NotSymmetrizable);
    }
    // B = (d_i a_ij) is symmetric; finite type iff positive definite.
    let b: Vec<Vec<Rational64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| d[i] * Rational64::from_integer(cartan[i][j]))
                .collect()
        })
        .collect();
    for size in 1..=n {
        if leading_minor(&b, size) <= Rational64::zero() {
            return Err(RootDatumError::NotFiniteType);
        }
    }
    Ok(())
}

fn leading_minor(b: &[Vec<Rational64>], size: usize) -> Rational64 {
    let mut m: Vec<Vec<Rational64>> = (0..size).map(|i| b[i][..size].to_vec()).collect();
    let mut det = Rational64::one();
    for col in 0..size {
        let Some(p) = (col..size).find(|&r| !m[r][col].is_zero()) else {
            return Rational64::zero();
        };
        if p != col {
            m.swap(col, p);
            det = -det;
        }
        det *= m[col][col];
        let inv = m[col][col].recip();
        for r in col + 1..size {
            let factor = m[r][col] * inv;
            if factor.is_zero() {
                continue;
            }
            for j in col..size {
                let v = m[col][j];
                m[r][j] -= factor * v;
            }
        }
    }
    det
}
