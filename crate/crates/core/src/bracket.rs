//! Kauffman bracket by brute-force state sum.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{DiagramError, PlanarDiagram, SmoothingConvention};
use crate::par;

pub const DEFAULT_MAX_CROSSINGS: usize = 18;

/// Sparse Laurent polynomial in `A` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// `max_exp - min_exp`, or 0 for the zero polynomial.
    pub fn span(&self) -> u32 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (hi - lo) as u32,
            _ => 0,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, k: i64, shift: i32) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            out.add_term(e + shift, c * k);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let sign = if *c < 0 { "-" } else { "+" };
            if first {
                if *c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (*e, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "A^{e}")?,
                _ => write!(f, "{a}*A^{e}")?,
            }
        }
        Ok(())
    }
}

/// Largest crossing count the state sum accepts. `ADG_MAX_STATES` caps
/// the number of states; the crossing limit is its floor log2.
pub fn crossing_limit() -> usize {
    std::env::var("ADG_MAX_STATES")
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .map(|states| if states == 0 { 0 } else { states.ilog2() as usize })
        .unwrap_or(DEFAULT_MAX_CROSSINGS)
        .min(63)
}

/// Histogram of states by (number of B-smoothings, circle count).
fn state_histogram(d: &PlanarDiagram) -> Vec<Vec<u64>> {
    let n = d.crossing_count();
    let width = n + d.free_loops() + 2;
    let init = || (vec![0u64; (n + 1) * width], vec![false; 4 * n]);
    let (flat, _) = par::fold_range(
        1u64 << n,
        init,
        |(hist, seen), mask| {
            let circles = d.circles_mask_with(mask, SmoothingConvention::Standard, seen);
            hist[mask.count_ones() as usize * width + circles] += 1;
        },
        |(mut a, s), (b, _)| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            (a, s)
        },
    );
    flat.chunks(width).map(|r| r.to_vec()).collect()
}

/// Unnormalized bracket `<D>` with `<O> = 1`.
pub fn kauffman_bracket(d: &PlanarDiagram) -> Result<LaurentPoly, DiagramError> {
    let n = d.crossing_count();
    let limit = crossing_limit();
    if n > limit {
        return Err(DiagramError::TooLarge { crossings: n, limit });
    }
    let delta = LaurentPoly::monomial(-1, 2).add(&LaurentPoly::monomial(-1, -2));
    let hist = state_histogram(d);
    let max_circles = hist.iter().map(|r| r.len()).max().unwrap_or(1);
    let delta_pows: Vec<LaurentPoly> = (0..max_circles as u32).map(|k| delta.pow(k)).collect();
    let mut out = LaurentPoly::zero();
    for (b, row) in hist.iter().enumerate() {
        let exp = n as i32 - 2 * b as i32;
        for (circles, &count) in row.iter().enumerate() {
            if count > 0 {
                let term = delta_pows[circles - 1].scale(count as i64, exp);
                out = out.add(&term);
            }
        }
    }
    Ok(out)
}

/// Bracket times `(-A^3)^(-w)`; the Jones polynomial after `A = t^(-1/4)`.
pub fn normalized_bracket(d: &PlanarDiagram) -> Result<LaurentPoly, DiagramError> {
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Ok(kauffman_bracket(d)?.scale(sign, -3 * w as i32))
}

/// Span of the Jones polynomial in `t` for a connected diagram.
pub fn bracket_span(d: &PlanarDiagram) -> Result<u32, DiagramError> {
    if d.split_components() > 1 {
        return Err(DiagramError::Disconnected {
            components: d.split_components(),
        });
    }
    let p = normalized_bracket(d)?;
    let span = p.span();
    debug_assert_eq!(span % 4, 0, "bracket exponents agree mod 4");
    Ok(span / 4)
}
