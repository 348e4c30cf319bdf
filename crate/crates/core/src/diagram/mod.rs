//! Oriented knot and link diagrams.
//!
//! A [`Diagram`] stores each crossing as its PD tuple (arc labels
//! counterclockwise from the incoming under-strand) together with its sign.
//! The sign fixes the direction of the over-strand: for a positive crossing
//! the over-strand enters at slot 3 and leaves at slot 1, for a negative one
//! it enters at slot 1 and leaves at slot 3. Crossingless unknotted
//! components are kept as a count of free loops.
//!
//! Every constructor relabels arcs canonically: components are ordered by
//! their smallest incoming label and numbered consecutively along the
//! orientation, starting from that label. A PD code that already satisfies
//! the numbering convention is therefore left untouched.

mod dt;
mod pd;
mod planar;
mod surgery;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

pub use dt::parse_dt;
pub use pd::PdCode;
pub use planar::Face;
pub use surgery::{Shadow, Smoothing, TwistSite};

use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed token `{token}` at byte {position}")]
    MalformedToken { position: usize, token: String },
    #[error("arc label 0 in crossing {crossing}; labels are 1-based")]
    ZeroLabel { crossing: usize },
    #[error("arc label {label} appears twice in crossing {crossing}")]
    LabelRepeatedInCrossing { label: u32, crossing: usize },
    #[error("arc label {label} appears {count} times, expected 2")]
    LabelMultiplicity { label: u32, count: usize },
    #[error("arc labels are not 1..={expected_max}: found {label}")]
    NonContiguousLabels { label: u32, expected_max: u32 },
    #[error("arc numbering is inconsistent with any orientation: {0}")]
    InconsistentNumbering(String),
    #[error("DT code: {0}")]
    Dt(String),
    #[error("crossing index {index} out of range for a diagram with {len} crossings")]
    CrossingIndex { index: usize, len: usize },
    #[error("operation requires a knot diagram, found {0} components")]
    NotAKnot(usize),
    #[error("arc {0} is not an arc of the diagram")]
    UnknownArc(u32),
    #[error("invalid twist site: {0}")]
    InvalidTwistSite(String),
    #[error("twist count {0} must be even to keep the diagram orientable")]
    OddTwistCount(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub slots: [u32; 4],
    pub sign: Sign,
}

impl Crossing {
    /// Slot where the over-strand enters.
    pub fn over_in_slot(&self) -> usize {
        match self.sign {
            Sign::Positive => 3,
            Sign::Negative => 1,
        }
    }

    pub fn over_out_slot(&self) -> usize {
        match self.sign {
            Sign::Positive => 1,
            Sign::Negative => 3,
        }
    }

    pub fn under_in(&self) -> u32 {
        self.slots[0]
    }

    pub fn under_out(&self) -> u32 {
        self.slots[2]
    }

    pub fn over_in(&self) -> u32 {
        self.slots[self.over_in_slot()]
    }

    pub fn over_out(&self) -> u32 {
        self.slots[self.over_out_slot()]
    }

    /// True when the arc in `slot` ends at this crossing.
    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in_slot()
    }

    /// Builds a crossing from a counterclockwise cycle of arcs, the index of
    /// the incoming under-arc and the index of the incoming over-arc.
    pub(crate) fn from_cycle(cycle: [u32; 4], under_in: usize, over_in: usize) -> Self {
        let slots = std::array::from_fn(|k| cycle[(under_in + k) % 4]);
        let sign = match (over_in + 4 - under_in) % 4 {
            3 => Sign::Positive,
            1 => Sign::Negative,
            _ => panic!("over-strand must be perpendicular to the under-strand"),
        };
        Crossing { slots, sign }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
    components: Vec<Vec<u32>>,
}

impl Diagram {
    /// The crossingless one-component diagram.
    pub fn unknot() -> Self {
        Self::from_crossings(Vec::new(), 1).expect("empty diagram is valid")
    }

    /// Infers orientations from the arc numbering and assigns crossing signs.
    pub fn orient(pd: &PdCode) -> Result<Self, DiagramError> {
        let crossings = infer_orientation(pd)?;
        let free = usize::from(pd.is_empty());
        let d = Self::from_crossings(crossings, free)?;
        check_numbering(pd, &d)?;
        Ok(d)
    }

    pub fn from_pd_text(text: &str) -> Result<Self, DiagramError> {
        Self::orient(&PdCode::parse(text)?)
    }

    /// Builds from oriented crossings whose labels may be arbitrary, then
    /// relabels canonically.
    pub(crate) fn from_crossings(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self, DiagramError> {
        let mut heads: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        let mut tails: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for (i, c) in crossings.iter().enumerate() {
            for slot in 0..4 {
                let map = if c.is_incoming(slot) { &mut heads } else { &mut tails };
                if map.insert(c.slots[slot], (i, slot)).is_some() {
                    return Err(DiagramError::InconsistentNumbering(format!(
                        "arc {} has two {}",
                        c.slots[slot],
                        if c.is_incoming(slot) { "heads" } else { "tails" }
                    )));
                }
            }
        }
        if heads.keys().ne(tails.keys()) {
            return Err(DiagramError::InconsistentNumbering("arc missing a head or tail".into()));
        }
        let next = |arc: u32| {
            let (i, slot) = heads[&arc];
            crossings[i].slots[(slot + 2) % 4]
        };
        let mut relabel: BTreeMap<u32, u32> = BTreeMap::new();
        let mut components = Vec::new();
        let mut fresh = 1u32;
        for &start in heads.keys() {
            if relabel.contains_key(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut arc = start;
            loop {
                relabel.insert(arc, fresh);
                comp.push(fresh);
                fresh += 1;
                arc = next(arc);
                if arc == start {
                    break;
                }
            }
            components.push(comp);
        }
        let crossings =
            crossings.into_iter().map(|c| Crossing { slots: c.slots.map(|l| relabel[&l]), sign: c.sign }).collect();
        components.extend((0..free_loops).map(|_| Vec::new()));
        Ok(Self { crossings, free_loops, components })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// Arc labels of each component in orientation order; free loops are empty.
    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_knot(&self) -> bool {
        self.components.len() == 1
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    pub fn arc_count(&self) -> u32 {
        2 * self.crossings.len() as u32
    }

    pub fn to_pd(&self) -> PdCode {
        PdCode::from_tuples_unchecked(self.crossings.iter().map(|c| c.slots).collect())
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<(), DiagramError> {
        if index >= self.crossings.len() {
            return Err(DiagramError::CrossingIndex { index, len: self.crossings.len() });
        }
        Ok(())
    }

    /// Number of Seifert circles: loops left after smoothing every crossing
    /// along the orientation.
    pub fn seifert_circles(&self) -> usize {
        let n = self.arc_count() as usize;
        let mut uf = UnionFind::new(n + 1);
        for c in &self.crossings {
            uf.union(c.under_in() as usize, c.over_out() as usize);
            uf.union(c.over_in() as usize, c.under_out() as usize);
        }
        let circles = if n == 0 { 0 } else { uf.count_roots(1..=n) };
        circles + self.free_loops
    }

    /// Genus of the canonical Seifert surface, `(c − s + 1) / 2`; an upper
    /// bound for the knot genus.
    pub fn seifert_genus(&self) -> Result<usize, DiagramError> {
        if !self.is_knot() {
            return Err(DiagramError::NotAKnot(self.component_count()));
        }
        let c = self.crossings.len();
        let s = self.seifert_circles();
        debug_assert!((c + 1 - s).is_multiple_of(2));
        Ok((c + 1 - s) / 2)
    }

    /// True when every component alternates over and under.
    pub fn is_alternating(&self) -> bool {
        let mut role: BTreeMap<u32, (bool, bool)> = BTreeMap::new();
        for c in &self.crossings {
            for slot in 0..4 {
                let over = slot % 2 == 1;
                let e = role.entry(c.slots[slot]).or_default();
                if c.is_incoming(slot) {
                    e.0 = over;
                } else {
                    e.1 = over;
                }
            }
        }
        // an arc leaves one crossing and enters the next: roles must differ
        role.values().all(|(head_over, tail_over)| head_over != tail_over)
    }
}

/// Solves for the over-strand direction at every crossing: each arc needs one
/// head and one tail. Undetermined groups fall back to the numbering rule
/// (over-out = over-in + 1, with wrap-around).
fn infer_orientation(pd: &PdCode) -> Result<Vec<Crossing>, DiagramError> {
    let tuples = pd.crossings();
    let n = tuples.len();
    // occurrence id = 4*crossing + slot
    let mut occ: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, t) in tuples.iter().enumerate() {
        for (s, &l) in t.iter().enumerate() {
            occ.entry(l).or_default().push(4 * i + s);
        }
    }
    // Some(true) = incoming
    let mut incoming: Vec<Option<bool>> = vec![None; 4 * n];
    for i in 0..n {
        incoming[4 * i] = Some(true);
        incoming[4 * i + 2] = Some(false);
    }
    let partner = |o: usize| -> usize {
        let l = tuples[o / 4][o % 4];
        let v = &occ[&l];
        if v[0] == o {
            v[1]
        } else {
            v[0]
        }
    };
    let opposite = |o: usize| -> usize { 4 * (o / 4) + (o % 4 + 2) % 4 };

    let mut queue: Vec<usize> = (0..4 * n).filter(|o| incoming[*o].is_some()).collect();
    let propagate = |queue: &mut Vec<usize>, incoming: &mut Vec<Option<bool>>| -> Result<(), DiagramError> {
        while let Some(o) = queue.pop() {
            let v = incoming[o].expect("queued occurrences are assigned");
            for (other, want) in [(partner(o), !v), (opposite(o), !v)] {
                // opposite slots of an over-strand: one in, one out; under slots are fixed
                if other % 4 % 2 == 0 && other == opposite(o) {
                    continue;
                }
                match incoming[other] {
                    None => {
                        incoming[other] = Some(want);
                        queue.push(other);
                    }
                    Some(x) if x != want => {
                        return Err(DiagramError::InconsistentNumbering(format!(
                            "arc {} cannot be oriented consistently",
                            tuples[other / 4][other % 4]
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    };
    propagate(&mut queue, &mut incoming)?;
    for i in 0..n {
        if incoming[4 * i + 1].is_some() {
            continue;
        }
        let (b, d) = (tuples[i][1], tuples[i][3]);
        let b_in = if d == b + 1 {
            true
        } else if b == d + 1 {
            false
        } else {
            b > d
        };
        incoming[4 * i + 1] = Some(b_in);
        queue.push(4 * i + 1);
        propagate(&mut queue, &mut incoming)?;
    }
    Ok(tuples
        .iter()
        .enumerate()
        .map(|(i, t)| Crossing {
            slots: *t,
            sign: if incoming[4 * i + 1] == Some(true) { Sign::Negative } else { Sign::Positive },
        })
        .collect())
}

/// Arc labels must increase by one along each component, cyclically within
/// the component's contiguous block.
fn check_numbering(pd: &PdCode, d: &Diagram) -> Result<(), DiagramError> {
    if d.to_pd() != *pd {
        return Err(DiagramError::InconsistentNumbering("labels do not increase by one along each component".into()));
    }
    Ok(())
}
