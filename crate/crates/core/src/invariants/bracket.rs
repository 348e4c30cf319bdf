use std::collections::BTreeMap;

use crate::diagram::{Diagram, Shadow, Smoothing};
use crate::laurent::LaurentPoly;

/// State tallies keyed by `(#A − #B, loops)`.
type Tally = BTreeMap<(i64, usize), u64>;

fn tally_range(shadow: &Shadow, n: usize, states: std::ops::Range<u64>) -> Tally {
    let mut tally = Tally::new();
    for mask in states {
        // bit i set = B-smoothing at crossing i
        let loops = shadow.loops(|i| if mask >> i & 1 == 1 { Smoothing::B } else { Smoothing::A });
        let a_minus_b = n as i64 - 2 * i64::from(mask.count_ones());
        *tally.entry((a_minus_b, loops)).or_default() += 1;
    }
    tally
}

#[cfg(feature = "parallel")]
fn tally(shadow: &Shadow) -> Tally {
    use rayon::prelude::*;
    let n = shadow.len();
    let total = 1u64 << n;
    let chunk = (total / 64).max(1 << 10);
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    starts.into_par_iter().map(|s| tally_range(shadow, n, s..(s + chunk).min(total))).reduce(Tally::new, |mut a, b| {
        for (k, v) in b {
            *a.entry(k).or_default() += v;
        }
        a
    })
}

#[cfg(not(feature = "parallel"))]
fn tally(shadow: &Shadow) -> Tally {
    let n = shadow.len();
    tally_range(shadow, n, 0..1u64 << n)
}

/// Kauffman bracket `⟨D⟩` in the variable `A` (integer exponents), with
/// `⟨O⟩ = 1` and loop value `−A² − A⁻²`.
pub fn kauffman_bracket(d: &Diagram) -> LaurentPoly {
    let shadow = Shadow::of(d);
    assert!(shadow.len() < 63, "state sum over {} crossings is out of reach", shadow.len());
    let mut by_loops: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
    for ((k, loops), count) in tally(&shadow) {
        *by_loops.entry(loops).or_default() += &LaurentPoly::int_monomial(count, k);
    }
    let loop_value = LaurentPoly::from_int_terms([(2, -1), (-2, -1)]);
    let mut out = LaurentPoly::zero();
    for (loops, p) in by_loops {
        out += &(&p * &loop_value.pow(loops as u32 - 1));
    }
    out
}

/// Jones polynomial `(−A³)^(−w)·⟨D⟩` with `t = A⁻⁴`.
pub fn jones(d: &Diagram) -> LaurentPoly {
    let w = d.writhe();
    let bracket = kauffman_bracket(d);
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let terms = bracket.terms().map(|(half, c)| {
        let e = half / 2 - 3 * w;
        assert!(e % 2 == 0, "bracket exponent parity is fixed by the component count");
        (-e / 2, c * sign)
    });
    LaurentPoly::from_half_terms(terms)
}
