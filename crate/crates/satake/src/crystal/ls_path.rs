//! Littelmann path construction of irreducible crystal bases.
//!
//! A path is a piecewise-linear map `[0,1] → Λ̌ ⊗ ℚ` stored as a list of
//! (direction, duration) segments with positive rational durations summing
//! to 1. The crystal of shape `λ` is generated from the straight path to a
//! dominant `λ` by the lowering root operators; all arithmetic is exact.
//! Path data never escapes this module — the caller receives only the
//! element/weight/operator tables.

use super::{Crystal, CrystalError};
use crate::lattice::{Coweight, RootDatum};
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Path {
    segs: Vec<(Coweight, Rational64)>,
}

impl Path {
    fn straight(lambda: &Coweight) -> Path {
        Path {
            segs: vec![(lambda.clone(), Rational64::one())],
        }
    }

    fn normalize(mut segs: Vec<(Coweight, Rational64)>) -> Path {
        segs.retain(|(_, d)| d.is_positive());
        let mut out: Vec<(Coweight, Rational64)> = Vec::with_capacity(segs.len());
        for (dir, dur) in segs {
            match out.last_mut() {
                Some((last_dir, last_dur)) if *last_dir == dir => *last_dur += dur,
                _ => out.push((dir, dur)),
            }
        }
        Path { segs: out }
    }

    fn endpoint(&self, rank: usize) -> Coweight {
        let mut acc = vec![Rational64::zero(); rank];
        for (dir, dur) in &self.segs {
            for (a, &c) in acc.iter_mut().zip(dir.coords()) {
                *a += *dur * Rational64::from_integer(c);
            }
        }
        let coords = acc
            .into_iter()
            .map(|x| {
                assert!(x.is_integer(), "path endpoint is not a lattice point");
                x.to_integer()
            })
            .collect();
        Coweight::new(coords)
    }

    /// Heights `h(t) = ⟨α_i, π(t)⟩` at the breakpoints, including 0 at t=0.
    fn heights(&self, rd: &RootDatum, i: usize) -> Vec<Rational64> {
        let mut h = vec![Rational64::zero()];
        let mut cur = Rational64::zero();
        for (dir, dur) in &self.segs {
            cur += *dur * rd.simple_roots[i].pairing(dir);
            h.push(cur);
        }
        h
    }

    fn f_op(&self, rd: &RootDatum, i: usize) -> Option<Path> {
        let h = self.heights(rd, i);
        let m = h.iter().min().copied().unwrap();
        let end = *h.last().unwrap();
        debug_assert!(m.is_integer(), "path minima must be integral");
        if end - m < Rational64::one() {
            return None;
        }
        // Last breakpoint attaining the minimum, then the first later time
        // the height reaches m+1 (possibly splitting a segment).
        let j1 = (0..h.len()).rev().find(|&j| h[j] == m).unwrap();
        let target = m + Rational64::one();
        let mut segs: Vec<(Coweight, Rational64)> = self.segs[..j1].to_vec();
        let mut k = j1;
        loop {
            let (dir, dur) = self.segs[k].clone();
            let rise = rd.simple_roots[i].pairing(&dir);
            if h[k + 1] >= target && rise.is_positive() {
                let u = (target - h[k]) / rise;
                debug_assert!(u.is_positive() && u <= dur);
                segs.push((rd.reflect(i, &dir), u));
                if u < dur {
                    segs.push((dir, dur - u));
                }
                segs.extend(self.segs[k + 1..].iter().cloned());
                break;
            }
            segs.push((rd.reflect(i, &dir), dur));
            k += 1;
        }
        Some(Path::normalize(segs))
    }

    // Raising operator; the crystal tables derive `ẽ` by inverting `f̃`, so
    // this is exercised only as a consistency oracle in the tests.
    #[cfg(test)]
    fn e_op(&self, rd: &RootDatum, i: usize) -> Option<Path> {
        let h = self.heights(rd, i);
        let m = h.iter().min().copied().unwrap();
        if m > -Rational64::one() {
            return None;
        }
        // First breakpoint attaining the minimum, then walk backwards to the
        // last earlier time the height was m+1.
        let j0 = (0..h.len()).find(|&j| h[j] == m).unwrap();
        let target = m + Rational64::one();
        let tail: Vec<(Coweight, Rational64)> = self.segs[j0..].to_vec();
        let mut mid: Vec<(Coweight, Rational64)> = Vec::new();
        let mut k = j0;
        loop {
            assert!(k > 0, "height m < 0 must be preceded by height m+1");
            let (dir, dur) = self.segs[k - 1].clone();
            let fall = rd.simple_roots[i].pairing(&dir);
            if h[k - 1] >= target && fall.is_negative() {
                let u = (h[k - 1] - target) / (-fall);
                debug_assert!(!u.is_negative() && u <= dur);
                mid.insert(0, (rd.reflect(i, &dir), dur - u));
                let mut segs = self.segs[..k - 1].to_vec();
                if u.is_positive() {
                    segs.push((dir, u));
                }
                segs.extend(mid);
                segs.extend(tail);
                return Some(Path::normalize(segs));
            }
            mid.insert(0, (rd.reflect(i, &dir), dur));
            k -= 1;
        }
    }
}

pub(super) fn build_crystal(
    lambda: &Coweight,
    rd: &Arc<RootDatum>,
    indices: &[usize],
) -> Result<Crystal, CrystalError> {
    let rank = rd.rank;
    let start = Path::straight(lambda);
    let mut ids: HashMap<Path, usize> = HashMap::new();
    let mut paths: Vec<Path> = vec![start.clone()];
    ids.insert(start, 0);
    let mut edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); indices.len()];
    let mut cursor = 0;
    while cursor < paths.len() {
        let path = paths[cursor].clone();
        for (k, &i) in indices.iter().enumerate() {
            if let Some(next) = path.f_op(rd, i) {
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = paths.len();
                        ids.insert(next.clone(), id);
                        paths.push(next);
                        id
                    }
                };
                edges[k].push((cursor, id));
            }
        }
        cursor += 1;
    }
    let wt: Vec<Coweight> = paths.iter().map(|p| p.endpoint(rank)).collect();
    let mut f = vec![vec![None; paths.len()]; indices.len()];
    for (k, es) in edges.iter().enumerate() {
        for &(from, to) in es {
            f[k][from] = Some(to);
        }
    }
    Crystal::from_parts(rd.clone(), indices.to_vec(), wt, f)
}
