use super::{Crossing, Diagram, DiagramError, PdCode};

/// Largest DT code accepted; realization tries `2^(n-1)` embeddings.
const MAX_DT_CROSSINGS: usize = 24;

/// Parses a Dowker–Thistlethwaite code (whitespace-separated even integers,
/// negative entries marking crossings where the even passage is over) and
/// returns a planar realization. The realization is fixed up to mirror image
/// by choosing the first crossing's handedness.
pub fn parse_dt(text: &str) -> Result<PdCode, DiagramError> {
    let mut evens = Vec::new();
    for token in text.split_whitespace() {
        let v: i64 = token.parse().map_err(|_| DiagramError::Dt(format!("`{token}` is not an integer")))?;
        if v % 2 != 0 {
            return Err(DiagramError::Dt(format!("odd entry {v}")));
        }
        evens.push(v);
    }
    let n = evens.len();
    if n == 0 {
        return Ok(PdCode::default());
    }
    if n > MAX_DT_CROSSINGS {
        return Err(DiagramError::Dt(format!("{n} crossings exceeds the limit of {MAX_DT_CROSSINGS}")));
    }
    let mut sorted: Vec<i64> = evens.iter().map(|e| e.abs()).collect();
    sorted.sort_unstable();
    if sorted != (1..=n as i64).map(|k| 2 * k).collect::<Vec<_>>() {
        return Err(DiagramError::Dt(format!("entries must be a permutation of ±2..±{}", 2 * n)));
    }
    let total = 2 * n as u32;
    // arc p runs from passage p to passage p+1
    let arc_into = |p: u32| if p == 1 { total } else { p - 1 };
    for choice in 0u64..(1 << (n - 1)) {
        let crossings: Vec<Crossing> = evens
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let odd = 2 * i as u32 + 1;
                let even = e.unsigned_abs() as u32;
                let (under, over) = if e > 0 { (even, odd) } else { (odd, even) };
                let flip = i > 0 && choice >> (i - 1) & 1 == 1;
                // cycle: under-in, x, under-out, y with the over-strand on x/y
                let (x, y) = if flip { (arc_into(over), over) } else { (over, arc_into(over)) };
                Crossing::from_cycle([arc_into(under), x, under, y], 0, if flip { 1 } else { 3 })
            })
            .collect();
        let Ok(d) = Diagram::from_crossings(crossings, 0) else { continue };
        if d.is_knot() && d.is_planar_connected() {
            return Ok(d.to_pd());
        }
    }
    Err(DiagramError::Dt("no planar realization".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_and_figure_eight() {
        let t = Diagram::orient(&parse_dt("4 6 2").unwrap()).unwrap();
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.writhe().abs(), 3);
        let f = Diagram::orient(&parse_dt("4 6 8 2").unwrap()).unwrap();
        assert_eq!(f.crossing_count(), 4);
        assert_eq!(f.writhe(), 0);
    }

    #[test]
    fn rejects_bad_codes() {
        assert!(matches!(parse_dt("3 5"), Err(DiagramError::Dt(_))));
        assert!(parse_dt("4 4 2").is_err());
        assert!(parse_dt("a").is_err());
        assert!(parse_dt("").unwrap().is_empty());
    }
}
