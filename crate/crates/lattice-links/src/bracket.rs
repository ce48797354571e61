//! Kauffman bracket state sum and the Jones polynomial in the variable `A`.
//!
//! The bracket of a diagram `D` is `Σ_states A^(a−b) · δ^(circles−1)` over all
//! `2^c` smoothing states, where `a`/`b` count A/B-smoothed crossings,
//! `δ = −A² − A⁻²`, and circles are counted by merging arc labels. For the PD
//! convention used here (counterclockwise from the incoming under-arc) the
//! A-smoothing joins slots `a`–`b` and `c`–`d` regardless of crossing sign.
//!
//! `jones_a` normalizes by writhe: `V = (−A)^(−3w) · ⟨D⟩`, an invariant of the
//! oriented link. The classical variable is `t = A⁻⁴`; exponents here stay
//! integral.

use crate::pd::PdCode;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Exact Laurent polynomial in `A` with integer coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
pub struct BracketPoly {
    /// exponent -> nonzero coefficient
    coeffs: BTreeMap<i32, i64>,
}

impl BracketPoly {
    pub fn zero() -> BracketPoly {
        BracketPoly::default()
    }

    pub fn one() -> BracketPoly {
        BracketPoly::monomial(0, 1)
    }

    pub fn monomial(exp: i32, coeff: i64) -> BracketPoly {
        let mut coeffs = BTreeMap::new();
        if coeff != 0 {
            coeffs.insert(exp, coeff);
        }
        BracketPoly { coeffs }
    }

    /// `δ = −A² − A⁻²`, the value of a disjoint circle.
    pub fn delta() -> BracketPoly {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(2, -1);
        coeffs.insert(-2, -1);
        BracketPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        let entry = self.coeffs.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn add_assign(&mut self, other: &BracketPoly) {
        for (e, c) in other.terms() {
            self.add_term(e, c);
        }
    }

    /// Adds `other · coeff · A^shift` into `self`.
    pub fn add_scaled(&mut self, other: &BracketPoly, shift: i32, coeff: i64) {
        for (e, c) in other.terms() {
            self.add_term(e + shift, c * coeff);
        }
    }

    pub fn mul(&self, other: &BracketPoly) -> BracketPoly {
        let mut out = BracketPoly::zero();
        for (e, c) in self.terms() {
            out.add_scaled(other, e, c);
        }
        out
    }

    pub fn pow(&self, k: usize) -> BracketPoly {
        let mut out = BracketPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// The image under `A ↔ A⁻¹` (the bracket of the mirror diagram).
    pub fn mirror(&self) -> BracketPoly {
        BracketPoly {
            coeffs: self.terms().map(|(e, c)| (-e, c)).collect(),
        }
    }

    /// The lexicographically smaller of `self` and its mirror: a chirality-free
    /// key for table lookups.
    pub fn mirror_normalized(&self) -> BracketPoly {
        let m = self.mirror();
        if *self <= m {
            self.clone()
        } else {
            m
        }
    }
}

impl fmt::Display for BracketPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&exp, &coeff) in self.coeffs.iter().rev() {
            if first {
                if coeff < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if coeff < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = coeff.unsigned_abs();
            if mag != 1 || exp == 0 {
                write!(f, "{mag}")?;
            }
            if exp != 0 {
                if mag != 1 {
                    write!(f, "·")?;
                }
                if exp == 1 {
                    write!(f, "A")?;
                } else {
                    write!(f, "A^{exp}")?;
                }
            }
        }
        Ok(())
    }
}

/// Largest crossing count the 2^c state sum will attempt.
pub const CROSSING_BUDGET: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Error)]
pub enum BracketError {
    #[error("diagram has {count} crossings; the state-sum budget is {budget}")]
    TooManyCrossings { count: usize, budget: usize },
}

/// Exact Kauffman bracket of a PD code. Errors when the crossing count
/// exceeds [`CROSSING_BUDGET`].
pub fn kauffman_bracket(pd: &PdCode) -> Result<BracketPoly, BracketError> {
    let c = pd.crossings.len();
    if c > CROSSING_BUDGET {
        return Err(BracketError::TooManyCrossings {
            count: c,
            budget: CROSSING_BUDGET,
        });
    }
    let n = pd.num_edges as usize;
    assert!(
        n > 0 || pd.free_loops > 0,
        "bracket of an empty diagram is undefined"
    );
    // Highest possible circle count: one per edge plus the free loops.
    let delta = BracketPoly::delta();
    let mut delta_pows = Vec::with_capacity(n + pd.free_loops);
    delta_pows.push(BracketPoly::one());
    for _ in 1..n + pd.free_loops {
        let next = delta_pows.last().unwrap().mul(&delta);
        delta_pows.push(next);
    }

    let mut total = BracketPoly::zero();
    let mut parent: Vec<u32> = vec![0; n + 1];
    for state in 0..(1u32 << c) {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u32;
        }
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                let up = parent[parent[x as usize] as usize];
                parent[x as usize] = up;
                x = up;
            }
            x
        }
        let union = |parent: &mut [u32], a: u32, b: u32| {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                parent[ra as usize] = rb;
            }
        };
        for (i, x) in pd.crossings.iter().enumerate() {
            let [a, b, cc, d] = x.arcs;
            if state >> i & 1 == 0 {
                union(&mut parent, a, b);
                union(&mut parent, cc, d);
            } else {
                union(&mut parent, a, d);
                union(&mut parent, b, cc);
            }
        }
        let mut circles = pd.free_loops;
        for e in 1..=n as u32 {
            if find(&mut parent, e) == e {
                circles += 1;
            }
        }
        let b_count = state.count_ones() as i32;
        let exp = c as i32 - 2 * b_count;
        total.add_scaled(&delta_pows[circles - 1], exp, 1);
    }
    Ok(total)
}

/// Writhe-normalized Jones polynomial in `A`: `(−A)^(−3w) · ⟨D⟩`.
/// `w` must be the writhe of the same PD (`pd.writhe()`).
pub fn jones_a(pd: &PdCode, w: i64) -> Result<BracketPoly, BracketError> {
    let bracket = kauffman_bracket(pd)?;
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    let shift = i32::try_from(-3 * w).expect("writhe in range");
    let mut out = BracketPoly::zero();
    out.add_scaled(&bracket, shift, sign);
    Ok(out)
}
