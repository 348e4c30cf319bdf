use super::Diagram;

/// A face of the diagram's projection, as the crossing corners it touches.
/// Corner `k` of crossing `i` lies between slots `k` and `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub corners: Vec<(usize, usize)>,
}

impl Diagram {
    /// Faces of the projection, traced as orbits of "follow the arc, then
    /// turn to the next slot counterclockwise".
    pub fn faces(&self) -> Vec<Face> {
        let n = self.crossings.len();
        let mut partner = vec![0usize; 4 * n];
        let mut first: Vec<Option<usize>> = vec![None; self.arc_count() as usize + 1];
        for (i, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                let dart = 4 * i + s;
                let l = c.slots[s] as usize;
                match first[l] {
                    None => first[l] = Some(dart),
                    Some(o) => {
                        partner[o] = dart;
                        partner[dart] = o;
                    }
                }
            }
        }
        let mut seen = vec![false; 4 * n];
        let mut faces = Vec::new();
        for start in 0..4 * n {
            if seen[start] {
                continue;
            }
            let mut corners = Vec::new();
            let mut dart = start;
            while !seen[dart] {
                seen[dart] = true;
                corners.push((dart / 4, (dart % 4 + 3) % 4));
                let other = partner[dart];
                dart = 4 * (other / 4) + (other % 4 + 1) % 4;
            }
            faces.push(Face { corners });
        }
        faces
    }

    /// True when the projection is a connected planar map: `F = c + 2`.
    pub fn is_planar_connected(&self) -> bool {
        self.crossings.is_empty() || self.faces().len() == self.crossings.len() + 2
    }

    /// A crossing is nugatory when two opposite corners lie on the same face.
    pub fn nugatory_crossings(&self) -> Vec<usize> {
        let mut face_of = vec![[0usize; 4]; self.crossings.len()];
        for (f, face) in self.faces().iter().enumerate() {
            for &(i, k) in &face.corners {
                face_of[i][k] = f;
            }
        }
        face_of.iter().enumerate().filter(|(_, c)| c[0] == c[2] || c[1] == c[3]).map(|(i, _)| i).collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.nugatory_crossings().is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_faces() {
        let d = Diagram::from_pd_text("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let faces = d.faces();
        assert_eq!(faces.len(), 5);
        let mut sizes: Vec<usize> = faces.iter().map(|f| f.corners.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 2, 2, 3, 3]);
        assert!(d.is_planar_connected());
        assert!(d.is_reduced());
    }

    #[test]
    fn kink_is_nugatory() {
        let d = Diagram::from_pd_text("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let k = d.add_kink(3, true, false).unwrap();
        assert!(k.is_planar_connected());
        assert_eq!(k.nugatory_crossings(), vec![3]);
    }
}
