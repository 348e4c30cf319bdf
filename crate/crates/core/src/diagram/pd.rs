use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::DiagramError;

/// Planar-diagram code: one 4-tuple of arc labels per crossing, listed
/// counterclockwise starting from the incoming under-strand (`X[a,b,c,d]`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PdCode {
    crossings: Vec<[u32; 4]>,
}

impl PdCode {
    /// Validates label multiplicity and contiguity. Orientation consistency is
    /// checked by [`super::Diagram::orient`].
    pub fn new(crossings: Vec<[u32; 4]>) -> Result<Self, DiagramError> {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for (i, t) in crossings.iter().enumerate() {
            for (k, &l) in t.iter().enumerate() {
                if l == 0 {
                    return Err(DiagramError::ZeroLabel { crossing: i });
                }
                if t[..k].contains(&l) {
                    return Err(DiagramError::LabelRepeatedInCrossing { label: l, crossing: i });
                }
                *counts.entry(l).or_default() += 1;
            }
        }
        if let Some((&label, &count)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(DiagramError::LabelMultiplicity { label, count });
        }
        let expected = 2 * crossings.len() as u32;
        if let Some((&label, _)) = counts.keys().zip(1u32..).find(|(&l, i)| l != *i) {
            return Err(DiagramError::NonContiguousLabels { label, expected_max: expected });
        }
        Ok(Self { crossings })
    }

    pub(crate) fn from_tuples_unchecked(crossings: Vec<[u32; 4]>) -> Self {
        Self { crossings }
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Parses whitespace-separated `X[a,b,c,d]` tokens with 1-based labels.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let mut crossings = Vec::new();
        let mut offset = 0;
        for token in text.split_whitespace() {
            let pos = text[offset..].find(token).map_or(offset, |p| p + offset);
            offset = pos + token.len();
            crossings.push(
                parse_token(token)
                    .ok_or_else(|| DiagramError::MalformedToken { position: pos, token: token.to_string() })?,
            );
        }
        Self::new(crossings)
    }
}

fn parse_token(token: &str) -> Option<[u32; 4]> {
    let inner = token.strip_prefix("X[")?.strip_suffix(']')?;
    let mut out = [0u32; 4];
    let mut parts = inner.split(',');
    for slot in &mut out {
        *slot = parts.next()?.trim().parse().ok()?;
    }
    parts.next().is_none().then_some(out)
}

impl FromStr for PdCode {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, [a, b, c, d]) in self.crossings.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "X[{a},{b},{c},{d}]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_trefoil() {
        let pd = PdCode::parse("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        assert_eq!(pd.len(), 3);
        assert_eq!(pd.crossings()[1], [3, 6, 4, 1]);
        assert_eq!(pd.to_string(), "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]");
    }

    #[test]
    fn empty_text_is_empty_code() {
        assert!(PdCode::parse("").unwrap().is_empty());
        assert!(PdCode::parse("  \n").unwrap().is_empty());
    }

    #[test]
    fn distinct_errors() {
        assert!(matches!(PdCode::parse("X[1,1,2,2]"), Err(DiagramError::LabelRepeatedInCrossing { label: 1, .. })));
        assert!(matches!(PdCode::parse("X[1,4,2,5] X[3,6,4,1]"), Err(DiagramError::LabelMultiplicity { .. })));
        assert!(matches!(
            PdCode::parse("X[1,4,2,5] X[3,7,4,1] X[5,2,7,3]"),
            Err(DiagramError::NonContiguousLabels { label: 7, .. })
        ));
        match PdCode::parse("X[1,4,2,5] Y[3,6,4,1]") {
            Err(DiagramError::MalformedToken { position, token }) => {
                assert_eq!(position, 11);
                assert_eq!(token, "Y[3,6,4,1]");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(PdCode::parse("X[1,2,3]").is_err());
        assert!(PdCode::parse("X[0,1,2,3]").is_err());
    }
}
