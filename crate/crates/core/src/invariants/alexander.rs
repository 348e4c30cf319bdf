use crate::diagram::{Diagram, Sign};
use crate::laurent::LaurentPoly;
use crate::unionfind::UnionFind;

use super::{determinant, InvariantError};

/// Normalized Alexander polynomial of a knot diagram from the Fox Jacobian of
/// its Wirtinger presentation.
pub fn alexander(d: &Diagram) -> Result<LaurentPoly, InvariantError> {
    if !d.is_knot() {
        return Err(InvariantError::NotAKnot(d.component_count()));
    }
    let n = d.crossing_count();
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    // over-arcs: labels joined through over-passages
    let labels = d.arc_count() as usize;
    let mut uf = UnionFind::new(labels + 1);
    for c in d.crossings() {
        uf.union(c.over_in() as usize, c.over_out() as usize);
    }
    let mut index = vec![usize::MAX; labels + 1];
    let mut gens = 0;
    for l in 1..=labels {
        let r = uf.find(l);
        if index[r] == usize::MAX {
            index[r] = gens;
            gens += 1;
        }
        index[l] = index[r];
    }
    debug_assert_eq!(gens, n);
    let one_minus_t = LaurentPoly::from_int_terms([(0, 1), (1, -1)]);
    let t = LaurentPoly::int_monomial(1, 1);
    let minus_one = LaurentPoly::constant(-1);
    let mut rows = vec![vec![LaurentPoly::zero(); gens]; n];
    for (row, c) in rows.iter_mut().zip(d.crossings()) {
        let (over, inc, out) =
            (index[c.over_in() as usize], index[c.under_in() as usize], index[c.under_out() as usize]);
        let (in_coeff, out_coeff) = match c.sign {
            Sign::Positive => (&t, &minus_one),
            Sign::Negative => (&minus_one, &t),
        };
        row[over] += &one_minus_t;
        row[inc] += in_coeff;
        row[out] += out_coeff;
    }
    let minor: Vec<Vec<LaurentPoly>> = rows[..n - 1].iter().map(|r| r[..n - 1].to_vec()).collect();
    Ok(determinant(&minor).normalize_alexander()?)
}

/// Conway polynomial of a knot diagram.
pub fn conway(d: &Diagram) -> Result<LaurentPoly, InvariantError> {
    Ok(alexander(d)?.conway_from_alexander()?)
}
