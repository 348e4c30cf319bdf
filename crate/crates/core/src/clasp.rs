//! Lower bounds for the clasp number from the Conway polynomial.
//!
//! A knot bounding a clasp disk with at most two clasps has a genus-two
//! Seifert surface whose Seifert matrix takes the block form built by
//! [`two_clasp_matrix`]. Its Conway polynomial is then
//!
//! ```text
//! ∇(z) = (b1·b2 + ε·b3·(b3+δ))·z⁴ + (b1 + b2 − ε·δ)·z² + 1
//! ```
//!
//! for integers `b1, b2, b3`, `ε = ±1` and `δ ∈ {0, 1}`. [`two_clasp_realizable`]
//! decides exactly whether a given `m4·z⁴ + m2·z² + 1` has this shape; when it
//! does not, the clasp number is at least 3. The converse gives nothing: a
//! realizable polynomial says nothing about the clasp number.

use num_integer::Roots;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::invariants::SeifertMatrix;
use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClaspError {
    #[error("expected m4*z^4 + m2*z^2 + 1, got {0}")]
    NotGenus2Shape(String),
    #[error("Conway polynomial {0} has odd degree")]
    OddDegree(String),
}

/// `m4·z⁴ + m2·z² + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ConwayGenus2 {
    pub m4: i64,
    pub m2: i64,
}

impl ConwayGenus2 {
    pub fn new(m4: i64, m2: i64) -> Self {
        Self { m4, m2 }
    }

    pub fn to_poly(self) -> LaurentPoly {
        LaurentPoly::from_int_terms([(4, self.m4), (2, self.m2), (0, 1)])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TwoClaspWitness {
    pub b1: i64,
    pub b2: i64,
    pub b3: i64,
    pub eps: i64,
    pub delta: i64,
}

impl TwoClaspWitness {
    pub fn conway(&self) -> ConwayGenus2 {
        ConwayGenus2 {
            m4: self.b1 * self.b2 + self.eps * self.b3 * (self.b3 + self.delta),
            m2: self.b1 + self.b2 - self.eps * self.delta,
        }
    }

    pub fn magnitude(&self) -> i64 {
        self.b1.abs().max(self.b2.abs()).max(self.b3.abs())
    }

    pub fn as_array(&self) -> [i64; 5] {
        [self.b1, self.b2, self.b3, self.eps, self.delta]
    }
}

/// `max(g, u) ≤ c`.
pub fn shibuya_lower(g_lb: u32, u_lb: u32) -> u32 {
    g_lb.max(u_lb)
}

pub fn conway_genus2_of(p: &LaurentPoly) -> Result<ConwayGenus2, ClaspError> {
    let shape_err = || ClaspError::NotGenus2Shape(p.render("z"));
    if p.terms().any(|(h, _)| !matches!(h, 0 | 4 | 8)) || !p.coeff(0).is_one() {
        return Err(shape_err());
    }
    let m4 = p.coeff(4).to_i64().ok_or_else(shape_err)?;
    let m2 = p.coeff(2).to_i64().ok_or_else(shape_err)?;
    Ok(ConwayGenus2 { m4, m2 })
}

/// `m4 ≡ 3 (mod 8)` and `m2 ≡ 2 (mod 4)`; when it holds the clasp number is at least 3.
pub fn mod8_obstruction(c: ConwayGenus2) -> bool {
    c.m4.rem_euclid(8) == 3 && c.m2.rem_euclid(4) == 2
}

/// `Some(b1)` when `p = b1·z² + 1`, the only shape possible for clasp number ≤ 1.
pub fn one_clasp_form(p: &LaurentPoly) -> Option<i64> {
    let c = conway_genus2_of(p).ok()?;
    (c.m4 == 0).then_some(c.m2)
}

/// The genus-two Seifert matrix of a two-clasp disk, with `a21 = a12 + δ`.
pub fn two_clasp_matrix(a11: i64, a12: i64, a22: i64, eps1: i64, eps2: i64, delta: i64) -> SeifertMatrix {
    let a21 = a12 + delta;
    SeifertMatrix::new(vec![vec![a11, a12, 0, 0], vec![a21, a22, 0, 0], vec![-1, 0, -eps1, 0], vec![0, -1, 0, -eps2]])
        .expect("4x4 is square")
}

/// Parameters of [`two_clasp_matrix`] in witness form.
pub fn witness_of_matrix(a11: i64, a12: i64, a22: i64, eps1: i64, eps2: i64, delta: i64) -> TwoClaspWitness {
    TwoClaspWitness { b1: -eps1 * a11, b2: -eps2 * a22, b3: a12, eps: -eps1 * eps2, delta }
}

pub fn two_clasp_closed_form(w: &TwoClaspWitness) -> LaurentPoly {
    w.conway().to_poly()
}

/// `deg ∇ / 2`, a lower bound for the genus.
pub fn genus_lower_from_conway(p: &LaurentPoly) -> Result<u32, ClaspError> {
    let Some(top) = p.max_half_exp() else { return Ok(0) };
    if top % 4 != 0 {
        return Err(ClaspError::OddDegree(p.render("z")));
    }
    Ok((top / 4) as u32)
}

const BRANCHES: [(i64, i64); 4] = [(1, 0), (1, 1), (-1, 0), (-1, 1)];

/// Decides whether `m4·z⁴ + m2·z² + 1` has the two-clasp shape.
///
/// With `S = m2 + εδ`, `Y = b1 − b2` and `X = 2·b3 + δ` the coefficient
/// equations become `Y² − X² = S² − 4m4 − δ` for `ε = +1` and
/// `Y² + X² = S² − 4m4 + δ` for `ε = −1`, with `Y ≡ S` and `X ≡ δ (mod 2)`.
/// The first is solved by divisor pairs (and `X = ±Y` when the right side
/// vanishes), the second by scanning `X² ≤` right side.
///
/// Among all solutions the witness with the smallest `max(|b1|,|b2|,|b3|)` is
/// returned; ties go to the earlier `(ε, δ)` in the order
/// `(+1,0), (+1,1), (−1,0), (−1,1)`, then to smaller `|X|`, `X ≥ 0`, smaller
/// `|Y|`, `Y ≥ 0`.
pub fn two_clasp_realizable(c: ConwayGenus2) -> Option<TwoClaspWitness> {
    // magnitude, branch, |X|, X < 0, |Y|, Y < 0
    type Rank = (i64, usize, i64, bool, i64, bool);
    let mut best: Option<(Rank, TwoClaspWitness)> = None;
    for (branch, &(eps, delta)) in BRANCHES.iter().enumerate() {
        let s = c.m2 + eps * delta;
        for (x, y) in solutions(s, c.m4, eps, delta) {
            if (y - s).rem_euclid(2) != 0 || (x - delta).rem_euclid(2) != 0 {
                continue;
            }
            let w = TwoClaspWitness { b1: (s + y) / 2, b2: (s - y) / 2, b3: (x - delta) / 2, eps, delta };
            debug_assert_eq!(w.conway(), c);
            let key = (w.magnitude(), branch, x.abs(), x < 0, y.abs(), y < 0);
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, w));
            }
        }
    }
    best.map(|(_, w)| w)
}

/// Integer points `(X, Y)` on the conic for one `(ε, δ)` branch, before the
/// parity filter. The degenerate hyperbola `Y² = X²` is cut to a window that
/// always contains the minimal witness.
fn solutions(s: i64, m4: i64, eps: i64, delta: i64) -> Vec<(i64, i64)> {
    let rhs = s * s - 4 * m4 - eps * delta;
    let mut out = Vec::new();
    if eps == 1 {
        if rhs == 0 {
            let window = 2 * s.abs() + 4;
            for x in -window..=window {
                out.push((x, x));
                out.push((x, -x));
            }
        } else {
            // (Y − X)(Y + X) = rhs
            for p in divisors(rhs.unsigned_abs()) {
                for p in [p as i64, -(p as i64)] {
                    let q = rhs / p;
                    if (p + q) % 2 == 0 {
                        out.push(((q - p) / 2, (p + q) / 2));
                    }
                }
            }
        }
    } else if rhs >= 0 {
        let mut x = 0i64;
        while x * x <= rhs {
            let r = rhs - x * x;
            let y = r.sqrt();
            if y * y == r {
                for (sx, sy) in [(x, y), (-x, y), (x, -y), (-x, -y)] {
                    out.push((sx, sy));
                }
            }
            x += 1;
        }
    }
    out
}

/// Positive divisors by trial division.
fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// Brute-force search over `|b1|, |b2|, |b3| ≤ bound`. `None` means no
/// witness within the bound.
pub fn two_clasp_oracle(c: ConwayGenus2, bound: i64) -> Option<TwoClaspWitness> {
    for &(eps, delta) in &BRANCHES {
        let s = c.m2 + eps * delta;
        for b1 in -bound..=bound {
            let b2 = s - b1;
            if b2.abs() > bound {
                continue;
            }
            for b3 in -bound..=bound {
                if b1 * b2 + eps * b3 * (b3 + delta) == c.m4 {
                    return Some(TwoClaspWitness { b1, b2, b3, eps, delta });
                }
            }
        }
    }
    None
}

/// Why a clasp bound holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundRule {
    /// Conway degree bounds the genus, and the genus bounds `c`.
    GenusFromConway,
    /// `max(g, u) ≤ c`.
    Shibuya,
    /// Congruence obstruction on `(m4, m2)`.
    Mod8,
    /// No two-clasp witness exists.
    NotTwoClaspRealizable,
    /// Upper bound from an explicit clasp disk, taken as given.
    ClaspDisk,
    /// Value known exactly for this knot.
    Known,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaspBounds {
    pub lower: u32,
    pub upper: Option<u32>,
    pub provenance: Vec<BoundRule>,
}

/// Lower bound on the clasp number from a knot's Conway polynomial alone.
pub fn clasp_lower_from_conway(p: &LaurentPoly) -> Result<ClaspBounds, ClaspError> {
    let g = genus_lower_from_conway(p)?;
    let mut bounds = ClaspBounds { lower: g, upper: None, provenance: vec![BoundRule::GenusFromConway] };
    if let Ok(c) = conway_genus2_of(p) {
        if mod8_obstruction(c) {
            bounds.provenance.push(BoundRule::Mod8);
        }
        if two_clasp_realizable(c).is_none() {
            bounds.lower = bounds.lower.max(3);
            bounds.provenance.push(BoundRule::NotTwoClaspRealizable);
        }
    } else if g <= 2 {
        // degree ≤ 4 but not of the form m4 z^4 + m2 z^2 + 1 cannot be a knot's ∇
        return Err(ClaspError::NotGenus2Shape(p.render("z")));
    }
    if let Some(b) = one_clasp_form(p) {
        if b != 0 {
            bounds.lower = bounds.lower.max(1);
        }
    } else {
        bounds.lower = bounds.lower.max(2);
    }
    Ok(bounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::conway_from_seifert;

    fn z(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(terms.iter().copied())
    }

    fn w(b1: i64, b2: i64, b3: i64, eps: i64, delta: i64) -> TwoClaspWitness {
        TwoClaspWitness { b1, b2, b3, eps, delta }
    }

    #[test]
    fn shibuya() {
        assert_eq!(shibuya_lower(2, 2), 2);
        assert_eq!(shibuya_lower(0, 0), 0);
        assert_eq!(shibuya_lower(4, 4), 4);
    }

    #[test]
    fn genus2_shape() {
        assert_eq!(conway_genus2_of(&z(&[(4, -5), (2, 2), (0, 1)])).unwrap(), ConwayGenus2::new(-5, 2));
        assert_eq!(conway_genus2_of(&LaurentPoly::one()).unwrap(), ConwayGenus2::new(0, 0));
        assert_eq!(conway_genus2_of(&z(&[(4, -1), (0, 1)])).unwrap(), ConwayGenus2::new(-1, 0));
        assert!(conway_genus2_of(&z(&[(6, 1), (0, 1)])).is_err());
        assert!(conway_genus2_of(&z(&[(2, 1), (0, 2)])).is_err());
        assert!(conway_genus2_of(&z(&[(3, 1), (0, 1)])).is_err());
    }

    #[test]
    fn mod8() {
        assert!(mod8_obstruction(ConwayGenus2::new(-5, 2)));
        assert!(!mod8_obstruction(ConwayGenus2::new(-1, 0)));
        assert!(mod8_obstruction(ConwayGenus2::new(3, 2)));
        assert!(mod8_obstruction(ConwayGenus2::new(11, -2)));
    }

    #[test]
    fn one_clasp() {
        assert_eq!(one_clasp_form(&z(&[(2, 1), (0, 1)])), Some(1));
        assert_eq!(one_clasp_form(&z(&[(4, -1), (0, 1)])), None);
        assert_eq!(one_clasp_form(&LaurentPoly::one()), Some(0));
    }

    #[test]
    fn matrix_examples() {
        let conway = |a11, a12, a22| conway_from_seifert(&two_clasp_matrix(a11, a12, a22, 1, 1, 0)).unwrap();
        assert!(conway(0, 0, 0).is_one());
        assert_eq!(conway(-1, 0, 0), z(&[(2, 1), (0, 1)]));
        assert_eq!(conway(-1, 0, -1), z(&[(4, 1), (2, 2), (0, 1)]));
    }

    #[test]
    fn closed_form_examples() {
        assert!(two_clasp_closed_form(&w(0, 0, 0, 1, 0)).is_one());
        assert_eq!(two_clasp_closed_form(&w(1, -1, 0, 1, 0)), z(&[(4, -1), (0, 1)]));
    }

    #[test]
    fn decision_examples() {
        assert_eq!(two_clasp_realizable(ConwayGenus2::new(-1, 0)), Some(w(1, -1, 0, 1, 0)));
        assert_eq!(two_clasp_realizable(ConwayGenus2::new(-5, 2)), None);
        assert_eq!(two_clasp_realizable(ConwayGenus2::new(0, 0)), Some(w(0, 0, 0, 1, 0)));
    }

    #[test]
    fn oracle_examples() {
        assert!(two_clasp_oracle(ConwayGenus2::new(-1, 0), 2).is_some());
        assert_eq!(two_clasp_oracle(ConwayGenus2::new(-5, 2), 50), None);
        assert_eq!(two_clasp_oracle(ConwayGenus2::new(3, 2), 50), None);
    }

    #[test]
    fn genus_bound() {
        assert_eq!(genus_lower_from_conway(&z(&[(4, -1), (0, 1)])).unwrap(), 2);
        assert_eq!(genus_lower_from_conway(&LaurentPoly::one()).unwrap(), 0);
        assert_eq!(genus_lower_from_conway(&z(&[(2, 1), (0, 1)])).unwrap(), 1);
        assert!(genus_lower_from_conway(&z(&[(3, -4), (1, 2)])).is_err());
    }

    #[test]
    fn lower_bounds_from_conway() {
        let b = clasp_lower_from_conway(&z(&[(4, -5), (2, 2), (0, 1)])).unwrap();
        assert_eq!(b.lower, 3);
        assert!(b.provenance.contains(&BoundRule::Mod8));
        assert_eq!(clasp_lower_from_conway(&z(&[(4, -1), (0, 1)])).unwrap().lower, 2);
        assert_eq!(clasp_lower_from_conway(&z(&[(2, 1), (0, 1)])).unwrap().lower, 1);
        assert_eq!(clasp_lower_from_conway(&LaurentPoly::one()).unwrap().lower, 0);
    }
}
