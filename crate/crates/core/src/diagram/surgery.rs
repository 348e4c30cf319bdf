use std::collections::BTreeSet;

use super::{Crossing, Diagram, DiagramError, Sign};
use crate::unionfind::UnionFind;

/// Kauffman smoothing of an unoriented crossing `[s0,s1,s2,s3]`:
/// `A` joins `s0–s1` and `s2–s3`, `B` joins `s0–s3` and `s1–s2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothing {
    A,
    B,
}

/// The unoriented projection of a diagram, used by the bracket state sum.
#[derive(Debug, Clone)]
pub struct Shadow {
    crossings: Vec<[u32; 4]>,
    arcs: usize,
    labels: Vec<u32>,
    free_loops: usize,
}

impl Shadow {
    pub fn of(d: &Diagram) -> Self {
        Self {
            crossings: d.crossings.iter().map(|c| c.slots).collect(),
            arcs: d.arc_count() as usize,
            labels: (1..=d.arc_count()).collect(),
            free_loops: d.free_loops,
        }
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Number of loops once every crossing is smoothed according to `state`.
    pub fn loops(&self, state: impl Fn(usize) -> Smoothing) -> usize {
        let mut uf = UnionFind::new(self.arcs + 1);
        for (i, s) in self.crossings.iter().enumerate() {
            let (p, q) = match state(i) {
                Smoothing::A => ((s[0], s[1]), (s[2], s[3])),
                Smoothing::B => ((s[0], s[3]), (s[1], s[2])),
            };
            uf.union(p.0 as usize, p.1 as usize);
            uf.union(q.0 as usize, q.1 as usize);
        }
        uf.count_roots(self.labels.iter().map(|&l| l as usize)) + self.free_loops
    }

    /// Smooths crossing `i`, leaving a shadow with one crossing fewer.
    pub fn smooth(&self, i: usize, kind: Smoothing) -> Result<Self, DiagramError> {
        if i >= self.crossings.len() {
            return Err(DiagramError::CrossingIndex { index: i, len: self.crossings.len() });
        }
        let s = self.crossings[i];
        let joins = match kind {
            Smoothing::A => [(s[0], s[1]), (s[2], s[3])],
            Smoothing::B => [(s[0], s[3]), (s[1], s[2])],
        };
        let mut uf = UnionFind::new(self.arcs + 1);
        for (a, b) in joins {
            uf.union(a as usize, b as usize);
        }
        let crossings: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, t)| t.map(|l| uf.find(l as usize) as u32))
            .collect();
        let used: BTreeSet<u32> = crossings.iter().flatten().copied().collect();
        let closed: BTreeSet<usize> =
            s.iter().map(|&l| uf.find(l as usize)).filter(|r| !used.contains(&(*r as u32))).collect();
        Ok(Self {
            crossings,
            arcs: self.arcs,
            labels: used.into_iter().collect(),
            free_loops: self.free_loops + closed.len(),
        })
    }
}

/// A corner of a crossing: the region between slot `corner` and slot
/// `corner + 1` (mod 4). Twists are inserted between the two arcs bounding it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct TwistSite {
    pub crossing: usize,
    pub corner: usize,
}

impl Diagram {
    /// Swaps the over- and under-strand at crossing `i`.
    pub fn crossing_change(&self, i: usize) -> Result<Self, DiagramError> {
        self.check_index(i)?;
        let mut crossings = self.crossings.clone();
        crossings[i] = changed(crossings[i]);
        Ok(Self { crossings, free_loops: self.free_loops, components: self.components.clone() })
    }

    /// Changes every crossing in `indices` (duplicates cancel).
    pub fn crossing_changes(&self, indices: &[usize]) -> Result<Self, DiagramError> {
        indices.iter().try_fold(self.clone(), |d, &i| d.crossing_change(i))
    }

    /// Planar reflection: reverses the cyclic order at every crossing.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, e, f] = c.slots;
                Crossing { slots: [a, f, e, b], sign: c.sign.flip() }
            })
            .collect();
        Self { crossings, free_loops: self.free_loops, components: self.components.clone() }
    }

    /// Orientation-respecting smoothing of crossing `i` (the `L0` of a skein triple).
    pub fn smooth_oriented(&self, i: usize) -> Result<Self, DiagramError> {
        self.check_index(i)?;
        let c = self.crossings[i];
        self.excise(&[i], &[(c.under_in(), c.over_out()), (c.over_in(), c.under_out())])
    }

    /// Deletes the listed crossings and joins the arc pairs `(incoming, outgoing)`.
    /// Closed chains become free loops.
    fn excise(&self, remove: &[usize], joins: &[(u32, u32)]) -> Result<Self, DiagramError> {
        let mut uf = UnionFind::new(self.arc_count() as usize + 1);
        for &(a, b) in joins {
            uf.union(a as usize, b as usize);
        }
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(j, _)| !remove.contains(j))
            .map(|(_, c)| Crossing { slots: c.slots.map(|l| uf.find(l as usize) as u32), sign: c.sign })
            .collect();
        let used: BTreeSet<u32> = crossings.iter().flat_map(|c| c.slots).collect();
        let closed: BTreeSet<usize> = remove
            .iter()
            .flat_map(|&j| self.crossings[j].slots)
            .map(|l| uf.find(l as usize))
            .filter(|r| !used.contains(&(*r as u32)))
            .collect();
        Diagram::from_crossings(crossings, self.free_loops + closed.len())
    }

    /// Removes crossings by letting both strands pass straight through.
    /// Only an isotopy when the crossings form a kink or a bigon.
    fn excise_straight(&self, remove: &[usize]) -> Result<Self, DiagramError> {
        let joins: Vec<(u32, u32)> = remove
            .iter()
            .flat_map(|&j| {
                let c = self.crossings[j];
                [(c.under_in(), c.under_out()), (c.over_in(), c.over_out())]
            })
            .collect();
        self.excise(remove, &joins)
    }

    /// Adds `k` half twists (k even) to the twist region containing the
    /// crossing of `site`, growing it on the side of `site.corner`. Negative
    /// `k` first reverses the crossing itself. Original crossings keep their
    /// indices; new crossings are appended.
    pub fn insert_twists(&self, site: TwistSite, k: i64) -> Result<Self, DiagramError> {
        self.check_index(site.crossing)?;
        if site.corner > 3 {
            return Err(DiagramError::InvalidTwistSite(format!("corner {} is not in 0..4", site.corner)));
        }
        if k % 2 != 0 {
            return Err(DiagramError::OddTwistCount(k));
        }
        let c = self.crossings[site.crossing];
        if c.slots[site.corner] == c.slots[(site.corner + 1) % 4] {
            return Err(DiagramError::InvalidTwistSite(format!(
                "corner {} of crossing {} is a kink",
                site.corner, site.crossing
            )));
        }
        let h = 1 + k;
        let (mut d, mut at) = if h > 0 {
            (self.clone(), site)
        } else {
            // the change rotates the slots; follow the corner's first arc
            let d = self.crossing_change(site.crossing)?;
            let a = c.slots[site.corner];
            let corner = (0..4).find(|&p| d.crossings[site.crossing].slots[p] == a).expect("arc survives the change");
            (d, TwistSite { crossing: site.crossing, corner })
        };
        for _ in 0..(h.unsigned_abs() - 1) / 2 {
            let (next, outer) = d.add_corner_pair(at, true);
            d = next;
            at = outer;
        }
        Ok(d)
    }

    /// Inserts two crossings between the arcs at a corner: a full twist when
    /// `alternate` is set, a Reidemeister II bigon otherwise. Returns the new
    /// diagram and the outer corner of the farther new crossing.
    fn add_corner_pair(&self, site: TwistSite, alternate: bool) -> (Self, TwistSite) {
        let j = site.corner;
        let c = self.crossings[site.crossing];
        let (a, b) = (c.slots[j], c.slots[(j + 1) % 4]);
        let a_in = c.is_incoming(j);
        let b_in = c.is_incoming((j + 1) % 4);
        let a_over_at_c = j % 2 == 1;
        // a under at the near crossing iff over at c (twist), or same role (bigon)
        let a_over_near = if alternate { !a_over_at_c } else { a_over_at_c };
        let a_over_far = if alternate { !a_over_near } else { a_over_near };

        let top = self.arc_count();
        let (a1, ma, b1, mb) = (top + 1, top + 2, top + 3, top + 4);
        let mut crossings = self.crossings.clone();
        crossings[site.crossing].slots[j] = a1;
        crossings[site.crossing].slots[(j + 1) % 4] = b1;

        // near: (a1, mb, ma, b1); a on positions 0/2, b on 1/3
        let near_cycle = [a1, mb, ma, b1];
        let (a_near_in, b_near_in) = (if a_in { 2 } else { 0 }, if b_in { 1 } else { 3 });
        let near = if a_over_near {
            Crossing::from_cycle(near_cycle, b_near_in, a_near_in)
        } else {
            Crossing::from_cycle(near_cycle, a_near_in, b_near_in)
        };
        // far: (mb, a, b, ma); b on positions 0/2, a on 1/3
        let far_cycle = [mb, a, b, ma];
        let (a_far_in, b_far_in) = (if a_in { 1 } else { 3 }, if b_in { 2 } else { 0 });
        let far = if a_over_far {
            Crossing::from_cycle(far_cycle, b_far_in, a_far_in)
        } else {
            Crossing::from_cycle(far_cycle, a_far_in, b_far_in)
        };
        crossings.push(near);
        crossings.push(far);
        let far_index = crossings.len() - 1;
        let d = Diagram::from_crossings(crossings, self.free_loops).expect("twist insertion keeps arcs paired");
        // relabeling preserves slot order, so locate a by position
        let corner = (0..4).find(|&p| far.slots[p] == a).expect("far crossing contains a");
        (d, TwistSite { crossing: far_index, corner })
    }

    /// Reidemeister II: pushes the arcs of a corner across each other,
    /// creating a bigon whose new crossings are appended.
    pub fn add_bigon(&self, site: TwistSite) -> Result<Self, DiagramError> {
        self.check_index(site.crossing)?;
        let c = self.crossings[site.crossing];
        if site.corner > 3 || c.slots[site.corner] == c.slots[(site.corner + 1) % 4] {
            return Err(DiagramError::InvalidTwistSite(format!("corner {}", site.corner)));
        }
        Ok(self.add_corner_pair(site, false).0)
    }

    /// Reidemeister I: adds a kink to `arc`. `positive` picks the sign of the
    /// new crossing and `over_first` whether the strand passes over first.
    pub fn add_kink(&self, arc: u32, positive: bool, over_first: bool) -> Result<Self, DiagramError> {
        if arc == 0 || arc > self.arc_count() {
            return Err(DiagramError::UnknownArc(arc));
        }
        let top = self.arc_count();
        let (f, g) = (top + 1, top + 2);
        let mut crossings = self.crossings.clone();
        // the head of `arc` now belongs to g
        'outer: for c in crossings.iter_mut() {
            for s in 0..4 {
                if c.slots[s] == arc && c.is_incoming(s) {
                    c.slots[s] = g;
                    break 'outer;
                }
            }
        }
        let e = arc;
        let kink = match (over_first, positive) {
            (false, true) => Crossing { slots: [e, g, f, f], sign: Sign::Positive },
            (false, false) => Crossing { slots: [e, f, f, g], sign: Sign::Negative },
            (true, true) => Crossing { slots: [f, f, g, e], sign: Sign::Positive },
            (true, false) => Crossing { slots: [f, e, g, f], sign: Sign::Negative },
        };
        crossings.push(kink);
        Diagram::from_crossings(crossings, self.free_loops)
    }

    /// Connected sum along arc 1 of each knot.
    pub fn connected_sum(&self, other: &Diagram) -> Result<Self, DiagramError> {
        self.connected_sum_at(other, 1, 1)
    }

    /// Connected sum splicing `arc1` of `self` with `arc2` of `other`.
    pub fn connected_sum_at(&self, other: &Diagram, arc1: u32, arc2: u32) -> Result<Self, DiagramError> {
        for d in [self, other] {
            if !d.is_knot() {
                return Err(DiagramError::NotAKnot(d.component_count()));
            }
        }
        if other.crossings.is_empty() {
            return Ok(self.clone());
        }
        if self.crossings.is_empty() {
            return Ok(other.clone());
        }
        for (d, a) in [(self, arc1), (other, arc2)] {
            if a == 0 || a > d.arc_count() {
                return Err(DiagramError::UnknownArc(a));
            }
        }
        let shift = self.arc_count();
        let e2 = arc2 + shift;
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|c| Crossing { slots: c.slots.map(|l| l + shift), sign: c.sign }));
        let mut swapped = [false, false];
        for c in crossings.iter_mut() {
            for s in 0..4 {
                if !c.is_incoming(s) {
                    continue;
                }
                if c.slots[s] == arc1 && !swapped[0] {
                    c.slots[s] = e2;
                    swapped[0] = true;
                } else if c.slots[s] == e2 && !swapped[1] {
                    c.slots[s] = arc1;
                    swapped[1] = true;
                }
            }
        }
        Diagram::from_crossings(crossings, 0)
    }

    /// Greedily removes Reidemeister I kinks and II bigons until none remain.
    pub fn simplify(&self) -> Self {
        let mut d = self.clone();
        loop {
            if let Some(i) = d.find_kink() {
                d = d.excise_straight(&[i]).expect("kink removal keeps arcs paired");
            } else if let Some((i, j)) = d.find_bigon() {
                d = d.excise_straight(&[i, j]).expect("bigon removal keeps arcs paired");
            } else {
                return d;
            }
        }
    }

    fn find_kink(&self) -> Option<usize> {
        self.crossings.iter().position(|c| (0..4).any(|s| c.slots[s] == c.slots[(s + 1) % 4]))
    }

    fn find_bigon(&self) -> Option<(usize, usize)> {
        let n = self.crossings.len();
        for i in 0..n {
            for j in i + 1..n {
                let (x, y) = (&self.crossings[i], &self.crossings[j]);
                for s in 0..4 {
                    let (e, f) = (x.slots[s], x.slots[(s + 1) % 4]);
                    if e == f {
                        continue;
                    }
                    let Some(t) = (0..4).find(|&t| y.slots[t] == e) else { continue };
                    let adjacent = y.slots[(t + 1) % 4] == f || y.slots[(t + 3) % 4] == f;
                    if !adjacent {
                        continue;
                    }
                    // strand through e is over at both or under at both
                    if s % 2 == t % 2 {
                        return Some((i, j));
                    }
                }
            }
        }
        None
    }
}

fn changed(c: Crossing) -> Crossing {
    let [t0, t1, t2, t3] = c.slots;
    let slots = match c.sign {
        Sign::Positive => [t3, t0, t1, t2],
        Sign::Negative => [t1, t2, t3, t0],
    };
    Crossing { slots, sign: c.sign.flip() }
}
