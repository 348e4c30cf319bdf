//! The twist family `K_n`: `10_97` with its twist region of `2n − 1` half
//! twists (so `K_1 = 10_97`, and `K_0` is the connected sum of the
//! trefoil with `V = t + t³ − t⁴` and the figure-eight knot).
//!
//! The diagram is recovered by calibration: every crossing corner of `10_97`
//! (and of its mirror) is tried as a twist site, and the first one whose
//! twisted neighbours `K_2`, `K_0` have the expected Conway polynomials and
//! whose oriented smoothing has the Jones polynomial of the link `J` is kept.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::sync::OnceLock;

use num_integer::Roots;
use serde::Serialize;
use thiserror::Error;

use crate::clasp::{conway_genus2_of, genus_lower_from_conway, mod8_obstruction, BoundRule, ClaspBounds};
use crate::diagram::{Diagram, DiagramError, PdCode, TwistSite};
use crate::invariants::{conway, jones, unknot_certificate, InvariantError};
use crate::laurent::LaurentPoly;
use crate::tables::Table;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("no twist site reproduces the family invariants: {0}")]
    Calibration(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// `V_J`, the Jones polynomial of the two-component link `J`.
pub fn v_j() -> LaurentPoly {
    LaurentPoly::from_half_terms([
        (-3, -1),
        (-1, 2),
        (1, -4),
        (3, 6),
        (5, -6),
        (7, 5),
        (9, -6),
        (11, 3),
        (13, -2),
        (15, 1),
    ])
}

/// `∇_J = −4z³ + 2z`.
pub fn nabla_j() -> LaurentPoly {
    LaurentPoly::from_int_terms([(3, -4), (1, 2)])
}

/// `V_{K_0} = (t + t³ − t⁴)·V(figure-eight)`, as printed.
pub fn v_k0() -> LaurentPoly {
    LaurentPoly::from_int_terms([(-1, 1), (0, -1), (1, 2), (2, -3), (3, 3), (4, -2), (5, 2), (6, -1)])
}

/// `t^(1/2) − t^(−1/2)`.
fn root_difference() -> LaurentPoly {
    LaurentPoly::from_half_terms([(1, 1), (-1, -1)])
}

/// `−(4n+1)z⁴ + 2nz² + 1`.
pub fn conway_closed(n: i64) -> LaurentPoly {
    LaurentPoly::from_int_terms([(4, -(4 * n + 1)), (2, 2 * n), (0, 1)])
}

/// `t^(2n)·V_{K_0} + σ·t^σ·(t^(1/2) − t^(−1/2))·V_J·Σ_{k<|n|} t^(2σk)` with `σ = sign n`.
pub fn jones_closed(n: i64) -> LaurentPoly {
    let base = v_k0().shift(4 * n);
    if n == 0 {
        return base;
    }
    let sigma = n.signum();
    let geometric = LaurentPoly::from_int_terms((0..n.abs()).map(|k| (2 * sigma * k, 1)));
    let correction = &(&root_difference() * &v_j()) * &geometric;
    &base + &correction.shift(2 * sigma).scale(&sigma.into())
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyConfig {
    /// PD code of `K_1` as used (possibly the mirror of the bundled code).
    pub base_pd: String,
    pub mirrored: bool,
    pub twist_site: TwistSite,
    /// Crossing of `K_1` whose oriented smoothing is `J`.
    pub j_smoothing_index: usize,
    #[serde(skip)]
    base: Diagram,
}

impl FamilyConfig {
    pub fn base(&self) -> &Diagram {
        &self.base
    }

    /// Diagram of `K_n`: `2n + 8` crossings for `n ≥ 1`, `10 − 2n` for `n ≤ 0`.
    pub fn kn_diagram(&self, n: i64) -> Diagram {
        self.base.insert_twists(self.twist_site, 2 * (n - 1)).expect("calibrated site accepts even twists")
    }
}

/// Searches `base` and its mirror for a twist site satisfying the family
/// contract. Sites are tried in order of mirror flag, crossing, corner.
pub fn calibrate_with(base: &PdCode) -> Result<FamilyConfig, FamilyError> {
    let plain = Diagram::orient(base)?;
    if !plain.is_knot() || conway(&plain)? != conway_closed(1) {
        return Err(FamilyError::Calibration("base diagram is not K_1".into()));
    }
    let (k2, k0, vj) = (conway_closed(2), conway_closed(0), v_j());
    for (mirrored, d) in [(false, plain.clone()), (true, plain.mirror())] {
        for crossing in 0..d.crossing_count() {
            for corner in 0..2 {
                let site = TwistSite { crossing, corner };
                let fits = |k: i64, want: &LaurentPoly| {
                    d.insert_twists(site, k).ok().and_then(|t| conway(&t).ok()).is_some_and(|c| &c == want)
                };
                if !fits(2, &k2) || !fits(-2, &k0) {
                    continue;
                }
                if jones(&d.smooth_oriented(crossing)?) != vj {
                    continue;
                }
                return Ok(FamilyConfig {
                    base_pd: d.to_pd().to_string(),
                    mirrored,
                    twist_site: site,
                    j_smoothing_index: crossing,
                    base: d,
                });
            }
        }
    }
    Err(FamilyError::Calibration("no crossing corner matches".into()))
}

/// Calibration on the bundled `10_97` code, computed once.
pub fn calibrate() -> Result<&'static FamilyConfig, FamilyError> {
    static CONFIG: OnceLock<Result<FamilyConfig, FamilyError>> = OnceLock::new();
    CONFIG
        .get_or_init(|| {
            let record = Table::bundled().lookup("10_97").expect("10_97 is in the table");
            calibrate_with(record.pd.as_ref().expect("10_97 has a PD code"))
        })
        .as_ref()
        .map_err(Clone::clone)
}

pub fn kn_diagram(n: i64) -> Result<Diagram, FamilyError> {
    Ok(calibrate()?.kn_diagram(n))
}

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub n: i64,
    pub what: String,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SkeinReport {
    pub checked: Vec<i64>,
    pub skipped: Vec<(i64, String)>,
    pub failures: Vec<Mismatch>,
}

impl SkeinReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn compare(&mut self, n: i64, what: &str, var: &str, expected: &LaurentPoly, found: &LaurentPoly) {
        if expected != found {
            self.failures.push(Mismatch {
                n,
                what: what.into(),
                expected: expected.render(var),
                found: found.render(var),
            });
        }
    }
}

/// Checks the Conway and Jones skein recursions on the closed forms:
/// `∇_n = ∇_(n−1) + z∇_J`, and `V_n = t²V_(n−1) + t(t^(1/2) − t^(−1/2))V_J`
/// for `n ≥ 1` with its mirror `V_n = t⁻²V_(n+1) − t⁻¹(…)V_J` for `n ≤ −1`.
pub fn verify_skein_recursions(range: RangeInclusive<i64>) -> SkeinReport {
    let mut report = SkeinReport::default();
    let z_nabla_j = &LaurentPoly::int_monomial(1, 1) * &nabla_j();
    let jones_step = &root_difference() * &v_j();
    for n in range {
        let nabla_rec = &conway_closed(n - 1) + &z_nabla_j;
        report.compare(n, "conway recursion", "z", &conway_closed(n), &nabla_rec);
        let v_rec = match n.signum() {
            1 => &jones_closed(n - 1).shift(4) + &jones_step.shift(2),
            -1 => &jones_closed(n + 1).shift(-4) - &jones_step.shift(-2),
            _ => {
                report.skipped.push((0, "Jones recursion starts at n = 0".into()));
                report.checked.push(n);
                continue;
            }
        };
        report.compare(n, "jones recursion", "t", &jones_closed(n), &v_rec);
        report.checked.push(n);
    }
    report
}

/// `(∇_{K_1} − ∇_{K_0}) / z` from engine-computed diagrams.
pub fn rederive_nabla_j() -> Result<LaurentPoly, FamilyError> {
    let diff = &conway(&kn_diagram(1)?)? - &conway(&kn_diagram(0)?)?;
    Ok(diff.div_exact(&LaurentPoly::int_monomial(1, 1)).expect("skein difference is divisible by z"))
}

/// `(V_{K_1} − t²V_{K_0}) / (t(t^(1/2) − t^(−1/2)))` from engine-computed diagrams.
pub fn rederive_v_j() -> Result<LaurentPoly, FamilyError> {
    let diff = &jones(&kn_diagram(1)?) - &jones(&kn_diagram(0)?).shift(4);
    Ok(diff.div_exact(&root_difference().shift(2)).expect("skein difference is divisible"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Primeness {
    /// `∇` does not split as `(pz² + 1)(qz² + 1)`, so `K_n` is prime.
    PrimeByConway,
    CompositePossible,
}

/// A factorization `(pz² + 1)(qz² + 1)` of `∇_{K_n}` needs `p + q = 2n` and
/// `pq = −(4n+1)`, i.e. `n² + 4n + 1` a perfect square.
pub fn primeness_test(n: i64) -> Primeness {
    let disc = i128::from(n) * i128::from(n) + 4 * i128::from(n) + 1;
    if disc >= 0 && disc.sqrt() * disc.sqrt() == disc {
        Primeness::CompositePossible
    } else {
        Primeness::PrimeByConway
    }
}

pub fn clasp_bounds_family(n: i64) -> ClaspBounds {
    match n {
        0 => ClaspBounds { lower: 2, upper: Some(2), provenance: vec![BoundRule::Known] },
        1 => ClaspBounds { lower: 3, upper: Some(3), provenance: vec![BoundRule::Known] },
        _ => {
            let c = conway_genus2_of(&conway_closed(n)).expect("closed form has genus-2 shape");
            let mut provenance = vec![BoundRule::GenusFromConway, BoundRule::ClaspDisk];
            let lower = if mod8_obstruction(c) {
                provenance.push(BoundRule::Mod8);
                3
            } else {
                2
            };
            ClaspBounds { lower, upper: Some(4), provenance }
        }
    }
}

/// `(lower, upper)` for the crossing number. The lower bound is the span of
/// the Jones polynomial; the upper bound is the crossing count of a diagram
/// (the seven-crossing connected sum for `n = 0`).
pub fn crossing_bounds(n: i64) -> (u32, u32) {
    let span = jones_closed(n).span().expect("nonzero").as_integer().expect("knot Jones has integer span") as u32;
    let upper = match n {
        1.. => 2 * n + 8,
        0 => 7,
        _ => 10 - 2 * n,
    };
    (span, upper as u32)
}

/// `c(K_n) ≤ ⌊(cr(K_n) − 1)/2⌋` from the clasp upper bound and crossing lower bound.
pub fn question2_check(n: i64) -> bool {
    let upper = clasp_bounds_family(n).upper.expect("family has a clasp upper bound");
    let (cr_lower, _) = crossing_bounds(n);
    upper <= (cr_lower - 1) / 2
}

/// Tries all single, then all pairs of crossing changes (up to `k`) and
/// returns the first set after which the knot looks trivial.
pub fn unknotting_search(d: &Diagram, k: usize) -> Result<Option<Vec<usize>>, FamilyError> {
    let n = d.crossing_count();
    if unknot_certificate(d)?.is_trivial() {
        return Ok(Some(Vec::new()));
    }
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    if k >= 1 {
        candidates.extend((0..n).map(|i| vec![i]));
    }
    if k >= 2 {
        candidates.extend((0..n).flat_map(|i| (i + 1..n).map(move |j| vec![i, j])));
    }
    for set in candidates {
        if unknot_certificate(&d.crossing_changes(&set)?)?.is_trivial() {
            return Ok(Some(set));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremRow {
    pub n: i64,
    pub genus_from_conway: u32,
    pub canonical_genus: usize,
    pub unknotting: String,
    pub unknotting_set: Option<Vec<usize>>,
    pub clasp_lower: u32,
    pub primeness: Primeness,
    /// `max(g, u) ≤ 2 < 3 ≤ c` is established.
    pub holds: bool,
    pub notes: Vec<String>,
}

/// Genus, unknotting evidence, clasp obstruction and primeness for one `n`.
pub fn theorem1_row(n: i64) -> Result<TheoremRow, FamilyError> {
    let d = kn_diagram(n)?;
    let nabla = conway_closed(n);
    let genus_from_conway = genus_lower_from_conway(&nabla).expect("even degree");
    let canonical_genus = d.seifert_genus()?;
    let found = unknotting_search(&d, 2)?;
    let unknotting = match &found {
        Some(_) => "u ≤ 2 (polynomial evidence)".to_string(),
        None => "inconclusive".to_string(),
    };
    let clasp_lower = clasp_bounds_family(n).lower;
    let primeness = primeness_test(n);
    let mut notes = Vec::new();
    if n % 2 == 0 {
        notes.push("even n: congruence obstruction absent, statement does not apply".into());
    }
    if primeness == Primeness::CompositePossible {
        notes.push("Conway polynomial factors; primeness not established".into());
    }
    if canonical_genus > 2 {
        notes.push(format!("canonical Seifert surface of this diagram has genus {canonical_genus}"));
    }
    let holds = n % 2 != 0
        && genus_from_conway == 2
        && canonical_genus == 2
        && found.is_some()
        && clasp_lower >= 3
        && primeness == Primeness::PrimeByConway;
    Ok(TheoremRow {
        n,
        genus_from_conway,
        canonical_genus,
        unknotting,
        unknotting_set: found,
        clasp_lower,
        primeness,
        holds,
        notes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyCheck {
    Conway,
    Jones,
    Skein,
    Prime,
    Clasp,
    Crossing,
    Q2,
    Theorem1,
}

impl FamilyCheck {
    pub const ALL: [FamilyCheck; 8] = [
        FamilyCheck::Conway,
        FamilyCheck::Jones,
        FamilyCheck::Skein,
        FamilyCheck::Prime,
        FamilyCheck::Clasp,
        FamilyCheck::Crossing,
        FamilyCheck::Q2,
        FamilyCheck::Theorem1,
    ];
}

/// Largest `|n|` for which diagrams are run through the engines.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EngineLimits {
    pub conway: i64,
    pub jones: i64,
}

impl Default for EngineLimits {
    fn default() -> Self {
        Self { conway: 6, jones: 3 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyRow {
    pub n: i64,
    pub checks: BTreeMap<FamilyCheck, CheckOutcome>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub pass: bool,
    pub rows: Vec<FamilyRow>,
}

fn outcome(pass: bool, detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome { pass, detail: detail.into() }
}

fn run_check(n: i64, check: FamilyCheck, limits: EngineLimits) -> Result<CheckOutcome, FamilyError> {
    Ok(match check {
        FamilyCheck::Conway => {
            let want = conway_closed(n);
            if n.abs() <= limits.conway {
                let got = conway(&kn_diagram(n)?)?;
                outcome(got == want, format!("engine {} vs closed form {}", got.render("z"), want.render("z")))
            } else {
                outcome(true, format!("closed form {} (outside engine range)", want.render("z")))
            }
        }
        FamilyCheck::Jones => {
            let want = jones_closed(n);
            if n.abs() <= limits.jones {
                let got = jones(&kn_diagram(n)?);
                outcome(got == want, format!("engine {got} vs closed form {want}"))
            } else {
                let ok = want.eval_at_one() == 1.into();
                outcome(ok, format!("closed form {want} (outside engine range)"))
            }
        }
        FamilyCheck::Skein => {
            let r = verify_skein_recursions(n..=n);
            outcome(r.passed(), if r.passed() { "recursions hold".to_string() } else { format!("{:?}", r.failures) })
        }
        FamilyCheck::Prime => {
            let p = primeness_test(n);
            let expected = if n == 0 || n == -4 { Primeness::CompositePossible } else { Primeness::PrimeByConway };
            outcome(p == expected, format!("{p:?}"))
        }
        FamilyCheck::Clasp => {
            let b = clasp_bounds_family(n);
            let fires = mod8_obstruction(conway_genus2_of(&conway_closed(n)).expect("genus-2 shape"));
            let ok = fires == (n % 2 != 0) && b.upper.is_some_and(|u| b.lower <= u);
            outcome(ok, format!("{} ≤ c ≤ {}", b.lower, b.upper.map_or("?".into(), |u| u.to_string())))
        }
        FamilyCheck::Crossing => {
            let (lo, hi) = crossing_bounds(n);
            let want_lo = match n {
                1.. => 2 * n + 8,
                0 => 7,
                _ => 7 - 2 * n,
            };
            outcome(i64::from(lo) == want_lo && lo <= hi, format!("{lo} ≤ cr ≤ {hi}"))
        }
        FamilyCheck::Q2 => outcome(question2_check(n), "c ≤ ⌊(cr − 1)/2⌋"),
        FamilyCheck::Theorem1 => {
            if n % 2 == 0 {
                outcome(true, "even n: not covered")
            } else {
                let row = theorem1_row(n)?;
                let detail = format!(
                    "g = {} (Conway degree, canonical genus {}), {}, c ≥ {}, {:?}",
                    row.genus_from_conway, row.canonical_genus, row.unknotting, row.clasp_lower, row.primeness
                );
                outcome(row.holds, detail)
            }
        }
    })
}

pub fn family_report(range: RangeInclusive<i64>, checks: &[FamilyCheck], limits: EngineLimits) -> FamilyReport {
    let ns: Vec<i64> = range.collect();
    let row_for = |&n: &i64| FamilyRow {
        n,
        checks: checks
            .iter()
            .map(|&c| (c, run_check(n, c, limits).unwrap_or_else(|e| outcome(false, e.to_string()))))
            .collect(),
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<FamilyRow> = {
        use rayon::prelude::*;
        ns.par_iter().map(row_for).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<FamilyRow> = ns.iter().map(row_for).collect();
    let pass = rows.iter().all(|r| r.checks.values().all(|c| c.pass));
    FamilyReport { pass, rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(conway_closed(0), LaurentPoly::from_int_terms([(4, -1), (0, 1)]));
        assert_eq!(conway_closed(1), LaurentPoly::from_int_terms([(4, -5), (2, 2), (0, 1)]));
        assert_eq!(conway_closed(-1), LaurentPoly::from_int_terms([(4, 3), (2, -2), (0, 1)]));
        assert_eq!(jones_closed(0), v_k0());
        let step = &(&root_difference() * &v_j()).shift(2) + &v_k0().shift(4);
        assert_eq!(jones_closed(1), step);
        for n in -10..=10 {
            assert_eq!(jones_closed(n).eval_at_one(), 1.into());
        }
    }

    #[test]
    fn calibration_finds_a_site() {
        let cfg = calibrate().unwrap();
        assert_eq!(cfg.base().crossing_count(), 10);
        assert!(std::ptr::eq(cfg, calibrate().unwrap()));
        let j = cfg.base().smooth_oriented(cfg.j_smoothing_index).unwrap();
        assert_eq!(j.component_count(), 2);
    }

    #[test]
    fn trefoil_cannot_be_calibrated() {
        let pd = PdCode::parse("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        assert!(matches!(calibrate_with(&pd), Err(FamilyError::Calibration(_))));
    }

    #[test]
    fn crossing_counts() {
        let cfg = calibrate().unwrap();
        assert_eq!(cfg.kn_diagram(1).crossing_count(), 10);
        for n in [-3, -1, 0, 2, 4] {
            let want = if n >= 1 { 2 * n + 8 } else { 10 - 2 * n };
            assert_eq!(cfg.kn_diagram(n).crossing_count() as i64, want);
        }
    }

    #[test]
    fn small_examples() {
        assert_eq!(primeness_test(1), Primeness::PrimeByConway);
        assert_eq!(primeness_test(0), Primeness::CompositePossible);
        assert_eq!(primeness_test(-4), Primeness::CompositePossible);
        assert_eq!(clasp_bounds_family(1).lower, 3);
        assert_eq!((clasp_bounds_family(2).lower, clasp_bounds_family(2).upper), (2, Some(4)));
        assert_eq!((clasp_bounds_family(3).lower, clasp_bounds_family(3).upper), (3, Some(4)));
        assert_eq!(crossing_bounds(1), (10, 10));
        assert_eq!(crossing_bounds(0), (7, 7));
        assert_eq!(crossing_bounds(-2), (11, 14));
        assert!(question2_check(1) && question2_check(0) && question2_check(-1));
    }
}
