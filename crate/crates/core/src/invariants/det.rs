use crate::laurent::LaurentPoly;

/// Determinant of a square matrix over the Laurent ring. Small matrices use
/// cofactor expansion, larger ones fraction-free elimination.
pub fn determinant(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    if m.len() < 5 {
        det_cofactor(m)
    } else {
        det_bareiss(m)
    }
}

pub fn det_cofactor(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    match n {
        0 => LaurentPoly::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = LaurentPoly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<LaurentPoly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][j] * &det_cofactor(&minor);
                if j % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            acc
        }
    }
}

/// Bareiss elimination: every intermediate division is exact.
pub fn det_bareiss(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut a: Vec<Vec<LaurentPoly>> = m.to_vec();
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return LaurentPoly::zero();
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<LaurentPoly>> {
        (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        if rng.gen_bool(0.3) {
                            LaurentPoly::zero()
                        } else {
                            LaurentPoly::from_int_terms((0..2).map(|_| (rng.gen_range(-2..=2), rng.gen_range(-3..=3))))
                        }
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 0..7 {
            for _ in 0..20 {
                let m = random_matrix(&mut rng, n);
                assert_eq!(det_bareiss(&m), det_cofactor(&m), "n = {n}");
            }
        }
    }

    #[test]
    fn integer_examples() {
        let c = |v: i64| LaurentPoly::constant(v);
        let m = vec![vec![c(2), c(1)], vec![c(1), c(3)]];
        assert_eq!(determinant(&m), c(5));
        let singular = vec![vec![c(0); 5]; 5];
        assert!(det_bareiss(&singular).is_zero());
    }
}
