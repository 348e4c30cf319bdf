//! Diagram builders shared by the integration tests. Braid closures give
//! diagrams that are independent of the bundled PD data.

#![allow(dead_code)]

use std::collections::BTreeMap;

use knot_clasp::{Diagram, PdCode};

/// Closure of a braid word on `strands` strands. Generator `i` (1-based) is
/// `σ_i`, `-i` is `σ_i⁻¹`. Every strand must be touched by the word.
pub fn braid_closure(strands: usize, word: &[i32]) -> Diagram {
    try_braid_closure(strands, word).unwrap_or_else(|| panic!("braid {word:?} has a one-crossing loop"))
}

/// `None` when some crossing meets the same arc twice, which PD codes reject.
pub fn try_braid_closure(strands: usize, word: &[i32]) -> Option<Diagram> {
    let mut cur: Vec<u32> = (0..strands as u32).collect();
    let mut fresh = strands as u32;
    // (slots, positive) with provisional labels
    let mut raw: Vec<([u32; 4], bool)> = Vec::new();
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        assert!(i + 1 < strands, "generator {g} out of range");
        let (a, b) = (cur[i], cur[i + 1]);
        let (out_l, out_r) = (fresh, fresh + 1);
        fresh += 2;
        if g > 0 {
            raw.push(([b, out_r, out_l, a], true));
        } else {
            raw.push(([a, b, out_r, out_l], false));
        }
        cur[i] = out_l;
        cur[i + 1] = out_r;
    }
    // close up: the last label at each position is the first one
    let close: BTreeMap<u32, u32> = cur.iter().enumerate().map(|(p, &l)| (l, p as u32)).collect();
    let id = |l: u32| close.get(&l).copied().unwrap_or(l);
    let raw: Vec<([u32; 4], bool)> = raw.into_iter().map(|(s, p)| (s.map(id), p)).collect();

    let mut next = BTreeMap::new();
    for (s, positive) in &raw {
        next.insert(s[0], s[2]);
        if *positive {
            next.insert(s[3], s[1]);
        } else {
            next.insert(s[1], s[3]);
        }
    }
    let mut relabel = BTreeMap::new();
    let mut n = 1u32;
    for &start in next.keys() {
        if relabel.contains_key(&start) {
            continue;
        }
        let mut arc = start;
        loop {
            relabel.insert(arc, n);
            n += 1;
            arc = next[&arc];
            if arc == start {
                break;
            }
        }
    }
    let pd = PdCode::new(raw.iter().map(|(s, _)| s.map(|l| relabel[&l])).collect()).ok()?;
    Some(Diagram::orient(&pd).expect("braid closure orients"))
}

/// Random braid word touching every generator at least once.
pub fn random_braid<R: rand::Rng>(rng: &mut R, strands: usize, extra: usize) -> Vec<i32> {
    let mut word: Vec<i32> = (1..strands as i32).map(|g| if rng.gen() { g } else { -g }).collect();
    for _ in 0..extra {
        let g = rng.gen_range(1..strands as i32);
        word.insert(rng.gen_range(0..=word.len()), if rng.gen() { g } else { -g });
    }
    word
}
