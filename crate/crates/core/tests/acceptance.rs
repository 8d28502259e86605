//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use arrcheck::catalog;
use arrcheck::cone::{strict_cone_feasible, verify_answer, FeasibilityAnswer};
use arrcheck::cordovil::{cordovil_summary_in, is_cordovil_quadratic};
use arrcheck::formality::is_formal;
use arrcheck::matroid::{circuits, is_chordal};
use arrcheck::report::{analyze, AnalysisReport, AnalyzeOptions};
use arrcheck::signgeo::{
    count_sigma, enumerate_chambers, yoshinaga, SearchLimits, Sign, DEFAULT_CHAMBER_CAP,
};
use arrcheck::vg::{dim_vg_k_in, is_vg_quadratic};
use arrcheck::{Arrangement, FieldKind};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS_SEED: u64 = 20_240_601;
const CORPUS_SIZE: usize = 200;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn report_for(name: &str) -> (AnalysisReport, Duration) {
    let arr = catalog::get(name).expect("catalog entry");
    let start = Instant::now();
    let report = analyze(&arr, name, &AnalyzeOptions::default()).expect("analysis succeeds");
    (report, start.elapsed())
}

fn integer_normals(arr: &Arrangement) -> Normals {
    arr.normals()
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| i64::try_from(x.numer()).expect("small integer"))
                .collect()
        })
        .collect()
}

fn remark13() -> Outcome {
    let (r, took) = report_for("remark13");
    let pass = !r.yoshinaga && !r.vg_quadratic && took <= Duration::from_secs(60);
    outcome(
        pass,
        format!(
            "yoshinaga = {}, vg_quadratic = {}, sigma_2 = {}, chambers = {}, {:.2} s",
            r.yoshinaga,
            r.vg_quadratic,
            r.sigma2,
            r.chamber_count,
            took.as_secs_f64()
        ),
    )
}

fn d4() -> Outcome {
    let (r, _) = report_for("d4");
    let oracle = zaslavsky(&integer_normals(&catalog::get("d4").unwrap()));
    let degrees: BTreeSet<usize> = [2, 4].into();
    let pass = r.yoshinaga
        && !r.cordovil.quadratic
        && r.cordovil.min_generator_degrees == degrees
        && r.chamber_count == 192
        && oracle == 192;
    outcome(
        pass,
        format!(
            "yoshinaga = {}, cordovil quadratic = {} in degrees {:?}, chambers = {} (oracle {oracle})",
            r.yoshinaga, r.cordovil.quadratic, r.cordovil.min_generator_degrees, r.chamber_count
        ),
    )
}

fn x2() -> Outcome {
    let (r, _) = report_for("x2");
    let census = &r.circuit_census;
    let total: usize = census.values().sum();
    let pass = r.yoshinaga
        && !r.chordal.verdict
        && census.get(&3) == Some(&5)
        && census.get(&4) == Some(&15)
        && total == 20
        && r.cordovil.quadratic
        && r.formal.verdict;
    outcome(
        pass,
        format!(
            "yoshinaga = {}, chordal = {}, census = {census:?}, cordovil quadratic = {}, formal = {}",
            r.yoshinaga, r.chordal.verdict, r.cordovil.quadratic, r.formal.verdict
        ),
    )
}

fn edelman_reiner() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (t, cordovil_expected) in [("-1", true), ("0", false), ("1", false)] {
        let name = format!("er({t})");
        let (r, _) = report_for(&name);
        let ok = r.vg_quadratic && r.cordovil.quadratic == cordovil_expected;
        pass &= ok;
        parts.push(format!(
            "t = {t}: n = {}, vg_quadratic = {}, cordovil quadratic = {} (want {cordovil_expected}){}",
            r.n,
            r.vg_quadratic,
            r.cordovil.quadratic,
            if ok { "" } else { " MISMATCH" }
        ));
    }
    outcome(pass, parts.join("; "))
}

fn bracelet() -> Outcome {
    let (r, _) = report_for("bracelet");
    outcome(r.vg_quadratic, format!("vg_quadratic = {}", r.vg_quadratic))
}

fn primegap() -> Outcome {
    let (r, took) = report_for("primegap6");
    let pass = !r.vg_quadratic && took <= Duration::from_secs(120);
    outcome(
        pass,
        format!(
            "vg_quadratic = {}, dims {:?}, {:.2} s",
            r.vg_quadratic,
            r.vg_dims,
            took.as_secs_f64()
        ),
    )
}

fn ziegler() -> Outcome {
    let special = catalog::get("ziegler(special)").unwrap();
    let general = catalog::get("ziegler(general)").unwrap();
    let supports =
        |a: &Arrangement| -> BTreeSet<u64> { circuits(a).iter().map(|c| c.support).collect() };
    let same = supports(&special) == supports(&general);
    let (fs, _) = is_formal(&special);
    let (fg, _) = is_formal(&general);
    let (cs, _) = is_cordovil_quadratic(&special, FieldKind::Rationals).unwrap();
    let (cg, _) = is_cordovil_quadratic(&general, FieldKind::Rationals).unwrap();
    let pass = same && fg && !fs && !cs && !cg;
    outcome(
        pass,
        format!(
            "same circuits = {same}, formal general = {fg}, formal special = {fs}, cordovil quadratic = ({cg}, {cs})"
        ),
    )
}

fn oracle_suite() -> Outcome {
    let limits = SearchLimits::default();
    let corpus = corpus(CORPUS_SEED, CORPUS_SIZE, 10, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED + 1);
    let (mut sigma_bad, mut zas_bad, mut hilb_bad, mut cert_bad, mut certs) = (0, 0, 0, 0, 0usize);
    for normals in &corpus {
        let a = arrangement(normals);
        let r = a.rank();
        for k in 1..=r {
            if count_sigma(&a, k, &limits).unwrap() != brute_sigma(normals, k) {
                sigma_bad += 1;
            }
        }
        let chambers = enumerate_chambers(&a, DEFAULT_CHAMBER_CAP).unwrap();
        if chambers.len() as u128 != zaslavsky(normals) {
            zas_bad += 1;
        }
        let whitney: Vec<usize> = whitney_numbers(normals)
            .iter()
            .map(|w| w.unsigned_abs() as usize)
            .collect();
        let hilbert = cordovil_summary_in(&a, FieldKind::Rationals)
            .unwrap()
            .hilbert;
        if hilbert != whitney || hilbert.iter().sum::<usize>() != chambers.len() {
            hilb_bad += 1;
        }
        for c in &chambers.chambers {
            certs += 1;
            let answer = FeasibilityAnswer::Nonempty {
                witness: c.witness.clone(),
            };
            if !verify_answer(a.normals(), &c.signs.signs(), &answer) {
                cert_bad += 1;
            }
        }
        for _ in 0..20 {
            let size = rng.gen_range(1..=a.len());
            let mut subset: Vec<usize> = (0..a.len()).collect();
            while subset.len() > size {
                subset.remove(rng.gen_range(0..subset.len()));
            }
            let normals_s: Vec<_> = subset.iter().map(|&h| a.normal(h).to_vec()).collect();
            let signs: Vec<Sign> = subset.iter().map(|_| Sign::from_bool(rng.gen())).collect();
            let answer = strict_cone_feasible(&normals_s, &signs).unwrap();
            certs += 1;
            if !verify_answer(&normals_s, &signs, &answer) {
                cert_bad += 1;
            }
        }
    }
    let pass = corpus.len() >= 200 && sigma_bad + zas_bad + hilb_bad + cert_bad == 0;
    outcome(
        pass,
        format!(
            "{} arrangements: sigma mismatches {sigma_bad}, chamber mismatches {zas_bad}, \
             Cordovil dimension mismatches {hilb_bad}, bad certificates {cert_bad} of {certs}",
            corpus.len()
        ),
    )
}

struct Verdicts {
    yoshinaga: bool,
    vg_quadratic: bool,
    cordovil: bool,
    formal: bool,
    chordal: bool,
}

fn verdicts(a: &Arrangement) -> Verdicts {
    let limits = SearchLimits::default();
    Verdicts {
        yoshinaga: yoshinaga(a, &limits).unwrap(),
        vg_quadratic: is_vg_quadratic(a, FieldKind::Rationals, &limits).unwrap(),
        cordovil: is_cordovil_quadratic(a, FieldKind::Rationals).unwrap().0,
        formal: is_formal(a).0,
        chordal: is_chordal(a).verdict,
    }
}

fn implication_violations(v: &Verdicts) -> Vec<&'static str> {
    let mut bad = Vec::new();
    if v.cordovil && !v.yoshinaga {
        bad.push("cordovil => yoshinaga");
    }
    if v.yoshinaga != v.vg_quadratic {
        bad.push("yoshinaga <=> vg_quadratic");
    }
    if v.yoshinaga && !v.formal {
        bad.push("yoshinaga => formal");
    }
    if v.chordal && !v.yoshinaga {
        bad.push("chordal => yoshinaga");
    }
    bad
}

fn implication_suite() -> Outcome {
    let mut checked = 0;
    let mut violations: Vec<String> = Vec::new();
    let mut record = |label: String, v: &Verdicts, graphic: bool| {
        checked += 1;
        let mut bad: Vec<String> = implication_violations(v)
            .into_iter()
            .map(String::from)
            .collect();
        if graphic && !(v.chordal == v.yoshinaga && v.yoshinaga == v.formal) {
            bad.push(format!(
                "graphic three-way (chordal {}, yoshinaga {}, formal {})",
                v.chordal, v.yoshinaga, v.formal
            ));
        }
        for b in bad {
            violations.push(format!("{b} on {label}"));
        }
    };
    for name in catalog::FIXED {
        record(
            name.to_string(),
            &verdicts(&catalog::get(name).unwrap()),
            false,
        );
    }
    for normals in corpus(CORPUS_SEED, CORPUS_SIZE, 10, 4) {
        record(
            format!("{normals:?}"),
            &verdicts(&arrangement(&normals)),
            false,
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED + 2);
    for _ in 0..100 {
        let v = rng.gen_range(3..=7);
        let edges = random_graph(&mut rng, v, 21);
        let a = catalog::graphic(v, &edges).unwrap();
        let label = edges
            .iter()
            .map(|(a, b)| format!("{}-{}", a + 1, b + 1))
            .collect::<Vec<_>>()
            .join(",");
        record(format!("graphic({label})"), &verdicts(&a), true);
    }
    let shown: Vec<&String> = violations.iter().collect();
    outcome(
        violations.is_empty(),
        format!(
            "{checked} arrangements, {} violations{}",
            violations.len(),
            if shown.is_empty() {
                String::new()
            } else {
                format!(": {shown:?}")
            }
        ),
    )
}

fn field_independence() -> Outcome {
    let limits = SearchLimits::default();
    let names = catalog::FIXED
        .iter()
        .copied()
        .chain(["boolean(5)", "braid(5)", "typeD(4)"]);
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for name in names {
        let a = catalog::get(name).unwrap();
        for k in 1..=a.rank() {
            let q = dim_vg_k_in(&a, k, FieldKind::Rationals, &limits).unwrap();
            for p in [2, 3, 5] {
                checked += 1;
                let fp = dim_vg_k_in(&a, k, FieldKind::Prime(p), &limits).unwrap();
                if fp != q {
                    mismatches.push(format!("{name} k={k} F_{p}: {fp} vs {q}"));
                }
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        format!("{checked} comparisons, mismatches {mismatches:?}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("remark13 is not Yoshinaga, within 60 s", remark13),
        ("D4 verdicts and 192 chambers", d4),
        ("X2 verdicts and circuit census", x2),
        ("Edelman-Reiner family t in {-1, 0, 1}", edelman_reiner),
        ("bracelet is VG-quadratic", bracelet),
        (
            "prime-gap R^6 example is not VG-quadratic, within 120 s",
            primegap,
        ),
        ("Ziegler pair", ziegler),
        ("oracle suite on the random corpus", oracle_suite),
        ("implication suite", implication_suite),
        ("field independence of dim VG_k", field_independence),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} criterion {:>2}: {title}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
