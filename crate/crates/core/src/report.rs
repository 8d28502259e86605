//! The aggregated analysis report and the benchmark record.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::cordovil::cordovil_summary_in;
use crate::error::{Error, Result};
use crate::field::FieldKind;
use crate::formality::is_formal;
use crate::matroid::{
    characteristic_polynomial, circuit_census, circuits, is_chordal_with, zaslavsky_chamber_count,
};
use crate::signgeo::{count_sigma, SearchLimits};
use crate::vg::dim_vg_k_in;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AnalyzeOptions {
    pub field: FieldKind,
    /// Also compute `sigma_3 .. sigma_{r-1}`.
    pub sigma_chain: bool,
    pub limits: SearchLimits,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CordovilReport {
    pub field: FieldKind,
    pub quadratic: bool,
    pub min_generator_degrees: BTreeSet<usize>,
    pub hilbert: Vec<usize>,
    pub j2_dims: Vec<usize>,
    pub jr_dims: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordalReport {
    pub verdict: bool,
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalReport {
    pub verdict: bool,
    pub defect: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub source: String,
    pub n: usize,
    pub ambient_dim: usize,
    pub rank: usize,
    pub sigma2: u128,
    /// `[sigma_1, ..., sigma_r]` when requested.
    pub sigma_chain: Option<Vec<u128>>,
    pub chamber_count: u128,
    pub yoshinaga: bool,
    pub vg_dims: BTreeMap<usize, u128>,
    pub vg_quadratic: bool,
    pub cordovil: CordovilReport,
    pub chordal: ChordalReport,
    pub formal: FormalReport,
    /// Circuit size to count.
    pub circuit_census: BTreeMap<usize, usize>,
    /// Highest degree first.
    pub characteristic_polynomial: Vec<i128>,
    /// Stage name to wall-clock microseconds; not part of the determinism contract.
    pub timings_us: BTreeMap<String, u64>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with timings cleared, for cross-run comparison.
    pub fn deterministic_json(&self) -> String {
        let mut r = self.clone();
        r.timings_us.clear();
        r.to_json()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("bad report JSON: {e}")))
    }

    /// The implications that must hold between verdicts.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::InvariantViolated(m.to_string()));
        if self.vg_quadratic != self.yoshinaga {
            return fail("vg_quadratic differs from yoshinaga");
        }
        if self.cordovil.quadratic && !self.yoshinaga {
            return fail("Cordovil quadratic but Yoshinaga's test fails");
        }
        if self.yoshinaga && !self.formal.verdict {
            return fail("Yoshinaga's test passes but the arrangement is not formal");
        }
        if self.chordal.verdict && !self.yoshinaga {
            return fail("chordal but Yoshinaga's test fails");
        }
        let zaslavsky = zaslavsky_chamber_count(&self.characteristic_polynomial);
        if zaslavsky < 0 || zaslavsky as u128 != self.chamber_count {
            return fail("chamber count disagrees with the characteristic polynomial");
        }
        let total: u128 = self.cordovil.hilbert.iter().map(|&h| h as u128).sum();
        if total != self.chamber_count {
            return fail("Cordovil algebra dimension differs from the chamber count");
        }
        Ok(())
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let yes = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(s, "arrangement     {}", self.source);
        let _ = writeln!(
            s,
            "hyperplanes     {} in dimension {}, rank {}",
            self.n, self.ambient_dim, self.rank
        );
        let _ = writeln!(s, "chambers        {}", self.chamber_count);
        let _ = writeln!(s, "sigma_2         {}", self.sigma2);
        if let Some(chain) = &self.sigma_chain {
            let c: Vec<String> = chain.iter().map(u128::to_string).collect();
            let _ = writeln!(s, "sigma chain     [{}]", c.join(", "));
        }
        let _ = writeln!(s, "yoshinaga       {}", yes(self.yoshinaga));
        let _ = writeln!(s, "vg quadratic    {}", yes(self.vg_quadratic));
        let degs: Vec<String> = self
            .cordovil
            .min_generator_degrees
            .iter()
            .map(usize::to_string)
            .collect();
        let _ = writeln!(
            s,
            "cordovil        quadratic {} over {}, generators in degrees {{{}}}",
            yes(self.cordovil.quadratic),
            self.cordovil.field,
            degs.join(",")
        );
        let h: Vec<String> = self.cordovil.hilbert.iter().map(usize::to_string).collect();
        let _ = writeln!(s, "hilbert         {}", h.join(" "));
        match &self.chordal.witness {
            Some(w) => {
                let w: Vec<String> = w.iter().map(usize::to_string).collect();
                let _ = writeln!(s, "chordal         no (circuit {{{}}})", w.join(","));
            }
            None => {
                let _ = writeln!(s, "chordal         yes");
            }
        }
        let _ = writeln!(
            s,
            "formal          {} (defect {})",
            yes(self.formal.verdict),
            self.formal.defect
        );
        let census: Vec<String> = self
            .circuit_census
            .iter()
            .map(|(k, v)| format!("{v}x{k}"))
            .collect();
        let _ = writeln!(s, "circuits        {}", census.join(" "));
        let chi: Vec<String> = self
            .characteristic_polynomial
            .iter()
            .map(i128::to_string)
            .collect();
        let _ = writeln!(s, "char. poly      [{}]", chi.join(", "));
        s
    }
}

fn timed<T>(
    timings: &mut BTreeMap<String, u64>,
    stage: &str,
    f: impl FnOnce() -> Result<T>,
) -> Result<T> {
    let start = Instant::now();
    let out = f()?;
    timings.insert(stage.to_string(), start.elapsed().as_micros() as u64);
    Ok(out)
}

pub fn analyze(arr: &Arrangement, source: &str, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let r = arr.rank();
    let limits = &opts.limits;
    let mut t = BTreeMap::new();
    let chamber_count = timed(&mut t, "chambers", || count_sigma(arr, r, limits))?;
    let sigma2 = timed(&mut t, "sigma2", || count_sigma(arr, 2.min(r), limits))?;
    let sigma_chain = if opts.sigma_chain {
        Some(timed(&mut t, "sigma_chain", || {
            (1..=r)
                .map(|k| match k {
                    1 => Ok(1u128 << arr.len()),
                    2 => Ok(sigma2),
                    _ if k == r => Ok(chamber_count),
                    _ => count_sigma(arr, k, limits),
                })
                .collect::<Result<Vec<_>>>()
        })?)
    } else {
        None
    };
    let yoshinaga = sigma2 == chamber_count;
    let vg_dims = timed(&mut t, "vg", || {
        let mut dims = BTreeMap::new();
        for k in [2.min(r), r] {
            dims.insert(k, dim_vg_k_in(arr, k, opts.field, limits)?);
        }
        Ok(dims)
    })?;
    let vg_quadratic = vg_dims[&2.min(r)] == vg_dims[&r];
    let cordovil = timed(&mut t, "cordovil", || cordovil_summary_in(arr, opts.field))?;
    let circ = timed(&mut t, "circuits", || Ok(circuits(arr)))?;
    let chordality = timed(&mut t, "chordality", || Ok(is_chordal_with(arr, &circ)))?;
    let (formal, defect) = timed(&mut t, "formality", || Ok(is_formal(arr)))?;
    let chi = timed(&mut t, "characteristic_polynomial", || {
        Ok(characteristic_polynomial(arr))
    })?;
    let report = AnalysisReport {
        schema: SCHEMA,
        source: source.to_string(),
        n: arr.len(),
        ambient_dim: arr.ambient_dim(),
        rank: r,
        sigma2,
        sigma_chain,
        chamber_count,
        yoshinaga,
        vg_dims,
        vg_quadratic,
        cordovil: CordovilReport {
            field: cordovil.field,
            quadratic: cordovil.quadratic,
            min_generator_degrees: cordovil.min_generator_degrees,
            hilbert: cordovil.hilbert,
            j2_dims: cordovil.j2_dims,
            jr_dims: cordovil.jr_dims,
        },
        chordal: ChordalReport {
            verdict: chordality.verdict,
            witness: chordality.witness,
        },
        formal: FormalReport {
            verdict: formal,
            defect,
        },
        circuit_census: circuit_census(&circ),
        characteristic_polynomial: chi,
        timings_us: t,
    };
    report.check_invariants()?;
    Ok(report)
}

/// Timings for the Yoshinaga pipeline on one arrangement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub name: String,
    pub n: usize,
    pub rank: usize,
    pub sigma2: u128,
    pub chamber_count: u128,
    pub yoshinaga: bool,
    pub vg_quadratic: bool,
    pub sigma2_us: u64,
    pub chambers_us: u64,
    pub vg_us: u64,
    pub total_us: u64,
}

pub fn bench(
    arr: &Arrangement,
    name: &str,
    field: FieldKind,
    limits: &SearchLimits,
) -> Result<BenchRecord> {
    let r = arr.rank();
    let start = Instant::now();
    let mut t = BTreeMap::new();
    let sigma2 = timed(&mut t, "sigma2", || count_sigma(arr, 2.min(r), limits))?;
    let chamber_count = timed(&mut t, "chambers", || count_sigma(arr, r, limits))?;
    let vg_quadratic = timed(&mut t, "vg", || {
        Ok(dim_vg_k_in(arr, 2.min(r), field, limits)? == dim_vg_k_in(arr, r, field, limits)?)
    })?;
    let yoshinaga = sigma2 == chamber_count;
    if yoshinaga != vg_quadratic {
        return Err(Error::InvariantViolated(
            "vg_quadratic differs from yoshinaga".into(),
        ));
    }
    Ok(BenchRecord {
        name: name.to_string(),
        n: arr.len(),
        rank: r,
        sigma2,
        chamber_count,
        yoshinaga,
        vg_quadratic,
        sigma2_us: t["sigma2"],
        chambers_us: t["chambers"],
        vg_us: t["vg"],
        total_us: start.elapsed().as_micros() as u64,
    })
}
