//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with
//! status 1 if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::ExitCode;
use std::time::Instant;

use knot_clasp::clasp::{
    conway_genus2_of, genus_lower_from_conway, mod8_obstruction, two_clasp_closed_form, two_clasp_matrix,
    two_clasp_oracle, two_clasp_realizable, witness_of_matrix, ConwayGenus2, TwoClaspWitness,
};
use knot_clasp::diagram::TwistSite;
use knot_clasp::family::{
    calibrate, conway_closed, jones_closed, kn_diagram, primeness_test, question2_check, rederive_nabla_j,
    rederive_v_j, unknotting_search, verify_skein_recursions, Primeness,
};
use knot_clasp::invariants::{alexander, conway, conway_from_seifert, jones};
use knot_clasp::tables::{audit, equality_census, Table, EXPECTED_RECORDS};
use knot_clasp::{Diagram, LaurentPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn poly(text: &str, var: &str) -> LaurentPoly {
    LaurentPoly::parse(text, var).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn expect_eq(what: &str, found: &LaurentPoly, want: &LaurentPoly, var: &str) -> Result<(), String> {
    if found == want {
        Ok(())
    } else {
        Err(format!("{what}: got {}, want {}", found.render(var), want.render(var)))
    }
}

/// The positive trefoil, written `3̄₁` in the family's description of `K_0`.
fn trefoil_bar() -> Diagram {
    common::braid_closure(2, &[1, 1, 1])
}

fn trefoil() -> Diagram {
    common::braid_closure(2, &[-1, -1, -1])
}

fn figure_eight() -> Diagram {
    common::braid_closure(3, &[1, -2, 1, -2])
}

/// `−(4n+1)z⁴ + 2nz² + 1`, written out independently of the library.
fn conway_oracle(n: i64) -> LaurentPoly {
    LaurentPoly::from_int_terms([(4, -(4 * n + 1)), (2, 2 * n), (0, 1)])
}

fn nabla_j_printed() -> LaurentPoly {
    poly("-4*z^3 + 2*z", "z")
}

fn v_j_printed() -> LaurentPoly {
    poly(
        "-t^(-3/2) + 2*t^(-1/2) - 4*t^(1/2) + 6*t^(3/2) - 6*t^(5/2) + 5*t^(7/2) - 6*t^(9/2) + 3*t^(11/2) - 2*t^(13/2) + t^(15/2)",
        "t",
    )
}

fn criterion_1() -> Outcome {
    let lt = trefoil_bar();
    let fe = figure_eight();
    let k0 = lt.connected_sum(&fe).map_err(|e| e.to_string())?;
    let cases = [
        ("conway(3_1 bar)", conway(&lt).map_err(|e| e.to_string())?, poly("z^2 + 1", "z"), "z"),
        ("conway(figure-eight)", conway(&fe).map_err(|e| e.to_string())?, poly("-z^2 + 1", "z"), "z"),
        ("conway(K_0)", conway(&k0).map_err(|e| e.to_string())?, poly("-z^4 + 1", "z"), "z"),
        ("jones(3_1 bar)", jones(&lt), poly("t + t^3 - t^4", "t"), "t"),
        ("jones(figure-eight)", jones(&fe), poly("t^-2 - t^-1 + 1 - t + t^2", "t"), "t"),
        ("jones(K_0)", jones(&k0), poly("t^-1 - 1 + 2*t - 3*t^2 + 3*t^3 - 2*t^4 + 2*t^5 - t^6", "t"), "t"),
    ];
    for (what, found, want, var) in &cases {
        expect_eq(what, found, want, var)?;
    }
    let cfg = calibrate().map_err(|e| e.to_string())?;
    expect_eq("rederived nabla_J", &rederive_nabla_j().map_err(|e| e.to_string())?, &nabla_j_printed(), "z")?;
    expect_eq("rederived V_J", &rederive_v_j().map_err(|e| e.to_string())?, &v_j_printed(), "t")?;
    Ok(format!(
        "8 constants exact; twist site crossing {} corner {} (mirrored: {})",
        cfg.twist_site.crossing, cfg.twist_site.corner, cfg.mirrored
    ))
}

fn criterion_2() -> Outcome {
    for n in -6..=6 {
        let d = kn_diagram(n).map_err(|e| e.to_string())?;
        let found = conway(&d).map_err(|e| e.to_string())?;
        expect_eq(&format!("engine conway(K_{n})"), &found, &conway_oracle(n), "z")?;
    }
    let z_nabla_j = &poly("z", "z") * &nabla_j_printed();
    for n in -50..=50 {
        let rec = &conway_oracle(n - 1) + &z_nabla_j;
        expect_eq(&format!("conway recursion at {n}"), &rec, &conway_oracle(n), "z")?;
        expect_eq(&format!("conway_closed({n})"), &conway_closed(n), &conway_oracle(n), "z")?;
    }
    let report = verify_skein_recursions(-50..=50);
    if !report.passed() {
        return Err(format!("library skein report: {:?}", report.failures));
    }
    Ok("engine agrees for n in [-6,6]; recursion holds for n in [-50,50]".into())
}

fn criterion_3() -> Outcome {
    for n in -3..=3 {
        let d = kn_diagram(n).map_err(|e| e.to_string())?;
        expect_eq(&format!("engine jones(K_{n})"), &jones(&d), &jones_closed(n), "t")?;
    }
    let step = &poly("t^(1/2) - t^(-1/2)", "t") * &v_j_printed();
    for n in 1..=50 {
        let rec = &(&poly("t^2", "t") * &jones_closed(n - 1)) + &(&poly("t", "t") * &step);
        expect_eq(&format!("jones recursion at {n}"), &rec, &jones_closed(n), "t")?;
    }
    for n in -50..=-1 {
        let rec = &(&poly("t^-2", "t") * &jones_closed(n + 1)) - &(&poly("t^-1", "t") * &step);
        expect_eq(&format!("jones recursion at {n}"), &rec, &jones_closed(n), "t")?;
    }
    Ok("engine agrees for n in [-3,3]; recursion holds on [1,50] and [-50,-1]".into())
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2c1a5);
    let trials = 1500;
    for _ in 0..trials {
        let [a11, a12, a22] = [(); 3].map(|_| rng.gen_range(-50..=50));
        let eps1 = if rng.gen() { 1 } else { -1 };
        let eps2 = if rng.gen() { 1 } else { -1 };
        let delta = rng.gen_range(0..=1);
        let v = two_clasp_matrix(a11, a12, a22, eps1, eps2, delta);
        let from_matrix = conway_from_seifert(&v).map_err(|e| e.to_string())?;
        let w = witness_of_matrix(a11, a12, a22, eps1, eps2, delta);
        let closed = two_clasp_closed_form(&w);
        let (b1, b2, b3, eps) = (w.b1, w.b2, w.b3, w.eps);
        let oracle =
            LaurentPoly::from_int_terms([(4, b1 * b2 + eps * b3 * (b3 + delta)), (2, b1 + b2 - eps * delta), (0, 1)]);
        let params = (a11, a12, a22, eps1, eps2, delta);
        expect_eq(&format!("seifert route {params:?}"), &from_matrix, &closed, "z")?;
        expect_eq(&format!("closed form {params:?}"), &closed, &oracle, "z")?;
    }
    Ok(format!("{trials} random tuples with |a| <= 50 agree exactly"))
}

fn grid() -> impl Iterator<Item = ConwayGenus2> {
    (-20..=20).flat_map(|m4| (-20..=20).map(move |m2| ConwayGenus2::new(m4, m2)))
}

fn criterion_5() -> Outcome {
    for n in -1000..=1000i64 {
        let c = conway_genus2_of(&conway_closed(n)).map_err(|e| e.to_string())?;
        if mod8_obstruction(c) != (n % 2 != 0) {
            return Err(format!("mod 8 obstruction wrong at n = {n}"));
        }
    }
    let mut fired = 0;
    for c in grid() {
        if mod8_obstruction(c) {
            fired += 1;
            if let Some(w) = two_clasp_realizable(c) {
                return Err(format!("{c:?} obstructed yet realized by {w:?}"));
            }
        }
    }
    Ok(format!("fires exactly on odd n in [-1000,1000]; {fired} obstructed grid points all unrealizable"))
}

fn reconstructs(c: ConwayGenus2, w: &TwoClaspWitness) -> bool {
    let m4 = w.b1 * w.b2 + w.eps * w.b3 * (w.b3 + w.delta);
    let m2 = w.b1 + w.b2 - w.eps * w.delta;
    (m4, m2) == (c.m4, c.m2) && w.eps.abs() == 1 && (0..=1).contains(&w.delta)
}

fn criterion_6() -> Outcome {
    let bound = 50;
    let mut disagree = Vec::new();
    for c in grid() {
        let decided = two_clasp_realizable(c);
        if let Some(w) = &decided {
            if !reconstructs(c, w) {
                return Err(format!("witness {w:?} does not reconstruct {c:?}"));
            }
        }
        let brute = two_clasp_oracle(c, bound);
        if let Some(w) = &brute {
            if !reconstructs(c, w) {
                return Err(format!("oracle witness {w:?} does not reconstruct {c:?}"));
            }
        }
        if decided.is_some() != brute.is_some() {
            let size = decided.map(|w| w.magnitude());
            disagree.push(format!("({},{}) minimal witness size {size:?}", c.m4, c.m2));
        }
    }
    if disagree.is_empty() {
        Ok(format!("1681 grid points agree with the B={bound} oracle"))
    } else {
        Err(format!("{} points disagree with the B={bound} oracle: {}", disagree.len(), disagree.join(", ")))
    }
}

/// Not a criterion: the same comparison at the bound that covers every minimal witness on the grid.
fn supplementary_b75() -> Outcome {
    for c in grid() {
        if two_clasp_realizable(c).is_some() != two_clasp_oracle(c, 75).is_some() {
            return Err(format!("({},{}) disagrees at B=75", c.m4, c.m2));
        }
    }
    Ok("1681 grid points agree with the B=75 oracle".into())
}

fn is_trivial(d: &Diagram) -> Result<bool, String> {
    let delta = alexander(d).map_err(|e| e.to_string())?;
    Ok(delta.is_one() && jones(d).is_one())
}

fn criterion_7() -> Outcome {
    for n in 1..=6 {
        let d = kn_diagram(n).map_err(|e| e.to_string())?;
        let nabla = conway(&d).map_err(|e| e.to_string())?;
        let g = genus_lower_from_conway(&nabla).map_err(|e| e.to_string())?;
        if g != 2 {
            return Err(format!("K_{n}: deg conway / 2 = {g}"));
        }
        if !d.is_alternating() || !d.is_reduced() {
            return Err(format!("K_{n}: generated diagram is not reduced alternating"));
        }
        let canonical = d.seifert_genus().map_err(|e| e.to_string())?;
        if canonical != 2 {
            return Err(format!("K_{n}: canonical Seifert genus {canonical}"));
        }
    }
    for n in -2..=2 {
        let d = kn_diagram(n).map_err(|e| e.to_string())?;
        let set = unknotting_search(&d, 2)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("K_{n}: no unknotting set of size <= 2"))?;
        let changed = d.crossing_changes(&set).map_err(|e| e.to_string())?;
        if set.len() > 2 || !is_trivial(&changed)? {
            return Err(format!("K_{n}: set {set:?} does not trivialise both polynomials"));
        }
    }
    let composite: Vec<i64> =
        (-10_000..=10_000).filter(|&n| primeness_test(n) == Primeness::CompositePossible).collect();
    if composite != [-4, 0] {
        return Err(format!("CompositePossible at {composite:?}"));
    }
    Ok("genus 2 on [1,6]; unknotting sets on [-2,2]; composite only at n = -4, 0".into())
}

fn criterion_8() -> Outcome {
    for n in -20..=20i64 {
        let span = jones_closed(n).span().map_err(|e| e.to_string())?.as_integer();
        let want = match n {
            1.. => 2 * n + 8,
            0 => 7,
            _ => 7 - 2 * n,
        };
        if span != Some(want) {
            return Err(format!("span of V_(K_{n}) is {span:?}, want {want}"));
        }
    }
    if let Some(n) = (-50..=50).find(|&n| !question2_check(n)) {
        return Err(format!("question2_check fails at {n}"));
    }
    Ok("spans match on [-20,20]; question2_check holds on [-50,50]".into())
}

fn criterion_9() -> Outcome {
    let table = Table::bundled();
    if table.records().len() != EXPECTED_RECORDS {
        return Err(format!("{} records loaded", table.records().len()));
    }
    for r in table.records() {
        if r.g.lo.max(r.u.lo) > r.c.hi {
            return Err(format!("{}: max(g, u) exceeds c", r.name));
        }
    }
    let report = audit(table);
    if let Some(row) = report.rows.iter().find(|r| r.shibuya != knot_clasp::tables::Check::Pass) {
        return Err(format!("{}: audit Shibuya check {:?}", row.name, row.shibuya));
    }
    let census = equality_census(table.records());
    if census.strict != ["10_97"] {
        return Err(format!("census {:?}", census.strict));
    }
    let mut realized = 0;
    for r in table.records().iter().filter(|r| r.c.hi <= 2) {
        let Some(pd) = &r.pd else { continue };
        let d = Diagram::orient(pd).map_err(|e| e.to_string())?;
        let nabla = conway(&d).map_err(|e| e.to_string())?;
        let c = conway_genus2_of(&nabla).map_err(|e| format!("{}: {e}", r.name))?;
        match two_clasp_realizable(c) {
            Some(w) if reconstructs(c, &w) => realized += 1,
            other => return Err(format!("{}: no valid witness ({other:?})", r.name)),
        }
    }
    let k = table.lookup("10_97").map_err(|e| e.to_string())?;
    let d = Diagram::orient(k.pd.as_ref().ok_or("10_97 has no PD")?).map_err(|e| e.to_string())?;
    let c = conway_genus2_of(&conway(&d).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    if !mod8_obstruction(c) {
        return Err("obstruction does not fire for 10_97".into());
    }
    Ok(format!("{EXPECTED_RECORDS} rows; census {{10_97}}; {realized} rows with c <= 2 realized; 10_97 obstructed"))
}

/// `t⁻¹V₊ − tV₋ − (t^(1/2) − t^(−1/2))V₀`.
fn skein_defect(d: &Diagram, i: usize) -> Result<LaurentPoly, String> {
    let positive = d.crossings()[i].sign.value() > 0;
    let other = d.crossing_change(i).map_err(|e| e.to_string())?;
    let smoothed = d.smooth_oriented(i).map_err(|e| e.to_string())?;
    let (plus, minus) = if positive { (jones(d), jones(&other)) } else { (jones(&other), jones(d)) };
    let lhs = &(&poly("t^-1", "t") * &plus) - &(&poly("t", "t") * &minus);
    Ok(&lhs - &(&poly("t^(1/2) - t^(-1/2)", "t") * &jones(&smoothed)))
}

fn invariants_agree(a: &Diagram, b: &Diagram, what: &str) -> Result<(), String> {
    expect_eq(what, &jones(a), &jones(b), "t")?;
    if a.is_knot() {
        let (ca, cb) = (conway(a).map_err(|e| e.to_string())?, conway(b).map_err(|e| e.to_string())?);
        expect_eq(what, &ca, &cb, "z")?;
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut triples = 0;
    while triples < 30 {
        let strands = rng.gen_range(2..=4);
        let extra = rng.gen_range(1..=5);
        let word = common::random_braid(&mut rng, strands, extra);
        let Some(d) = common::try_braid_closure(strands, &word) else { continue };
        let i = rng.gen_range(0..d.crossing_count());
        let defect = skein_defect(&d, i)?;
        if !defect.is_zero() {
            return Err(format!("skein fails for braid {word:?} at crossing {i}"));
        }
        triples += 1;
    }

    let knots = [("3_1", trefoil()), ("3_1 bar", trefoil_bar()), ("4_1", figure_eight())];
    let mut sums = 0;
    for (na, a) in &knots {
        for (nb, b) in &knots {
            let s = a.connected_sum(b).map_err(|e| e.to_string())?;
            let conway_product = &conway(a).map_err(|e| e.to_string())? * &conway(b).map_err(|e| e.to_string())?;
            expect_eq(&format!("conway({na} # {nb})"), &conway(&s).map_err(|e| e.to_string())?, &conway_product, "z")?;
            expect_eq(&format!("jones({na} # {nb})"), &jones(&s), &(&jones(a) * &jones(b)), "t")?;
            sums += 1;
        }
    }

    let mut moves = 0;
    let bases = [trefoil(), figure_eight(), common::braid_closure(3, &[1, 1, -2, 1, -2, -2])];
    for d in &bases {
        for arc in [1, d.arc_count()] {
            for (positive, over_first) in [(true, true), (true, false), (false, true), (false, false)] {
                let kinked = d.add_kink(arc, positive, over_first).map_err(|e| e.to_string())?;
                invariants_agree(d, &kinked, &format!("R1 on arc {arc}"))?;
                moves += 1;
            }
        }
        for crossing in 0..d.crossing_count() {
            for corner in 0..4 {
                if let Ok(pushed) = d.add_bigon(TwistSite { crossing, corner }) {
                    invariants_agree(d, &pushed, &format!("R2 at {crossing}/{corner}"))?;
                    moves += 1;
                }
            }
        }
    }
    let r3_pairs: [(usize, &[i32], &[i32]); 4] = [
        (3, &[1, 2, 1, 2, -1], &[2, 1, 2, 2, -1]),
        (3, &[-1, -2, -1, 2, 1, 2, 2], &[-2, -1, -2, 2, 1, 2, 2]),
        (4, &[1, 2, 1, 3, -2, 3, -1], &[2, 1, 2, 3, -2, 3, -1]),
        (4, &[3, 2, 3, -1, 2, 1, 3], &[2, 3, 2, -1, 2, 1, 3]),
    ];
    for (strands, left, right) in r3_pairs {
        let a = common::braid_closure(strands, left);
        let b = common::braid_closure(strands, right);
        invariants_agree(&a, &b, &format!("R3 {left:?} ~ {right:?}"))?;
        moves += 1;
    }
    Ok(format!("{triples} skein triples, {sums} connected sums, {moves} Reidemeister moves"))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    for (id, check) in criteria {
        let t = Instant::now();
        let outcome = check();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:>2}: PASS ({secs:.2}s) {detail}"),
            Err(why) => {
                println!("criterion {id:>2}: FAIL ({secs:.2}s) {why}");
                failed.push(id);
            }
        }
    }
    match supplementary_b75() {
        Ok(detail) => println!("supplementary: PASS {detail}"),
        Err(why) => println!("supplementary: FAIL {why}"),
    }
    println!("acceptance: {} of 10 criteria pass in {:.2}s", 10 - failed.len(), start.elapsed().as_secs_f64());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
