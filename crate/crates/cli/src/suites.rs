//! Verification suites. Each one checks a family of statements on seeded
//! or fixed curves and returns a verdict together with its evidence.

use std::sync::Arc;

use bincurve_core::algebra::{PrimeField, Rationals, Rng};
use bincurve_core::brill_noether::{
    assemble_wbar, bn_enumerate_with, bn_suite, estimate_dim, fit_exponent, martens_bound, predicted_empty,
    verify_canonical_very_ample, BnQuery, DimValue, MartensBound, ScanOptions, SuiteConfig, Verdict, DEFAULT_WITNESS_CAP,
};
use bincurve_core::bundle::{BundleTorus, LineBundle, Multidegree};
use bincurve_core::cohomology::{h0, SectionSystem};
use bincurve_core::curve::{random_curve, random_curve_unmarked, random_hyperelliptic_curve, BinaryCurve, ProjPoint};
use bincurve_core::json::curve_to_json;
use bincurve_core::picard::{balanced_set, enumerate_strata, picard_type, PicardType, StratumEntry};
use bincurve_core::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Riemann,
    Clifford,
    Serre,
    Empty,
    LemmaE,
    Hyperelliptic,
    Martens,
    Theta,
    Bn,
    VeryAmple,
    Wbar,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Riemann,
        Suite::Clifford,
        Suite::Serre,
        Suite::Empty,
        Suite::LemmaE,
        Suite::Hyperelliptic,
        Suite::Martens,
        Suite::Theta,
        Suite::Bn,
        Suite::VeryAmple,
        Suite::Wbar,
    ];

    /// The statements a suite checks, as they appear in reports.
    pub fn statements(self) -> &'static [&'static str] {
        match self {
            Suite::Riemann => &["riemann: h0(L) = d - g + 1 for balanced L of degree d >= 2g - 1"],
            Suite::Clifford => &[
                "clifford: h0(L) <= d/2 + 1 for balanced L of degree 0 <= d <= 2g",
                "clifford: equality in degree 0 only for O_X",
                "clifford: equality in degree 2g - 2 only for the dualizing sheaf",
            ],
            Suite::Serre => &["serre duality: h0(omega (x) L^-1) = h0(L) - d + g - 1"],
            Suite::Empty => &[
                "emptiness: W^r_md is empty when d1 < 0 and d <= g + r",
                "emptiness: W^r_md is empty when 0 <= d1 <= r - 1 and d <= g + r - 1",
            ],
            Suite::LemmaE => &[
                "section bound: h0(L) <= d1 + d2 + 1 - min(d2, g) for -1 <= d1 <= d2",
                "section bound: for d2 < g the bound is attained by at most one class",
            ],
            Suite::Hyperelliptic => &[
                "hyperelliptic: X is hyperelliptic iff W^1_(1,1) is nonempty",
                "hyperelliptic: W^1_(1,1) is the single class H_X",
            ],
            Suite::Martens => &[
                "martens: dim W^r_md = d - 2r on hyperelliptic curves",
                "martens: dim W^r_md <= d - 2r - 1 on non-hyperelliptic curves",
            ],
            Suite::Theta => &[
                "theta: W^1_(1,1) of a hyperelliptic genus 3 curve is one point, of dimension g - 3",
                "theta: W^1_(1,1) of a non-hyperelliptic genus 3 curve is empty",
            ],
            Suite::Bn => &[
                "brill-noether: W^r_d is empty on a general curve when rho < 0",
                "brill-noether: W^r_d is nonempty when rho >= 1",
                "brill-noether: W^2_(2,2) in genus 3 is the dualizing sheaf",
            ],
            Suite::VeryAmple => &["very ample: the dualizing sheaf separates points and tangents iff X is not hyperelliptic"],
            Suite::Wbar => &[
                "compactified picard: strata of type N and D, with l0 in type D",
                "compactified picard: l0 is not in the closure of W^r_d when d <= r + g - 1",
                "compactified picard: the closure relation on strata is a partial order",
            ],
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub genera: Option<Vec<i64>>,
    pub primes: Option<Vec<u64>>,
    pub r: Option<u32>,
    pub curves: Option<usize>,
    pub trials: Option<usize>,
    pub seed: u64,
    pub jobs: usize,
    pub witness_cap: usize,
}

impl SuiteParams {
    pub fn new(seed: u64) -> Self {
        Self {
            genera: None,
            primes: None,
            r: None,
            curves: None,
            trials: None,
            seed,
            jobs: 1,
            witness_cap: DEFAULT_WITNESS_CAP,
        }
    }

    fn genera(&self, default: &[i64]) -> Vec<i64> {
        self.genera.clone().unwrap_or_else(|| default.to_vec())
    }

    fn primes(&self, default: &[u64]) -> Vec<u64> {
        self.primes.clone().unwrap_or_else(|| default.to_vec())
    }

    fn scan(&self) -> ScanOptions {
        ScanOptions { jobs: 1, witness_cap: self.witness_cap }
    }

    fn wide_scan(&self) -> ScanOptions {
        ScanOptions { jobs: self.jobs, witness_cap: self.witness_cap }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub pass: bool,
    pub details: Value,
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<SuiteOutcome> {
    let (pass, details) = match suite {
        Suite::Riemann => riemann(params)?,
        Suite::Clifford => clifford(params)?,
        Suite::Serre => serre(params)?,
        Suite::Empty => empty(params)?,
        Suite::LemmaE => lemma_e(params)?,
        Suite::Hyperelliptic => hyperelliptic(params)?,
        Suite::Martens => martens(params)?,
        Suite::Theta => theta(params)?,
        Suite::Bn => brill_noether(params)?,
        Suite::VeryAmple => very_ample(params)?,
        Suite::Wbar => wbar(params)?,
    };
    Ok(SuiteOutcome { suite, pass, details })
}

/// Independent random stream for one `(g, p, purpose)` cell of a suite.
fn stream(seed: u64, g: i64, p: u64, salt: u64) -> Rng {
    Rng::new(
        seed ^ p.wrapping_mul(0x9e37_79b9_7f4a_7c15)
            ^ (g as u64).wrapping_mul(0xc2b2_ae3d_27d4_eb4f)
            ^ salt.wrapping_mul(0x1656_67b1_9e37_79f9),
    )
}

/// Marked sampler when the field is large enough, unmarked otherwise.
pub fn sample_curve(g: i64, f: &PrimeField, rng: &mut Rng) -> Result<BinaryCurve<PrimeField>> {
    if g >= 2 && f.p() >= g as u64 + 3 {
        random_curve(g, f, rng)
    } else {
        random_curve_unmarked(g, f, rng)
    }
}

/// Map in input order on a pool of `jobs` threads.
fn fan_out<T: Sync, R: Send>(jobs: usize, items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    if jobs <= 1 || items.len() < 2 {
        return items.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    pool.install(|| items.par_iter().map(f).collect())
}

fn curve_value(x: &BinaryCurve<PrimeField>) -> Value {
    serde_json::from_str(&curve_to_json(x)).expect("curve JSON")
}

fn fp(p: u64) -> Result<PrimeField> {
    PrimeField::new(p)
}

/// Integral curve from `(p_j, q_j)` pairs, `None` standing for infinity.
pub fn integer_curve(pairs: &[(Option<i64>, Option<i64>)]) -> BinaryCurve<Rationals> {
    let q = Rationals;
    let pt = |a: Option<i64>| a.map_or(ProjPoint::Infinity, |v| ProjPoint::Finite(bincurve_core::algebra::Field::from_i64(&q, v)));
    BinaryCurve::from_pairs(q, pairs.iter().map(|&(a, b)| (pt(a), pt(b))).collect()).expect("fixed curve")
}

/// `ψ(x) = −x` matches the branches, so this genus 3 curve is hyperelliptic
/// modulo every prime `p >= 7`.
pub fn hyperelliptic_genus3() -> BinaryCurve<Rationals> {
    integer_curve(&[(Some(0), Some(0)), (None, None), (Some(1), Some(-1)), (Some(2), Some(-2))])
}

pub fn hyperelliptic_genus4() -> BinaryCurve<Rationals> {
    integer_curve(&[(Some(0), Some(0)), (None, None), (Some(1), Some(-1)), (Some(2), Some(-2)), (Some(3), Some(-3))])
}

/// `0, 1, ∞` are fixed, forcing `ψ = id`, which `2 ↦ 3` rules out mod any prime.
pub fn general_genus3() -> BinaryCurve<Rationals> {
    integer_curve(&[(Some(0), Some(0)), (Some(1), Some(1)), (None, None), (Some(2), Some(3))])
}

pub fn general_genus4() -> BinaryCurve<Rationals> {
    integer_curve(&[(Some(0), Some(0)), (Some(1), Some(1)), (None, None), (Some(2), Some(3)), (Some(3), Some(5))])
}

/// Constant in the bound `#W^r_md(F_p) <= C p^(d - 2r - 1)` on the
/// non-hyperelliptic curve.
pub const MARTENS_COUNT_CONSTANT: u64 = 2;

const MAX_EXAMPLES: usize = 10;

#[derive(Debug, Clone, Serialize)]
struct Exception {
    md: Multidegree,
    gluing: Vec<u64>,
    h0: usize,
    expected: String,
}

struct Case {
    g: i64,
    p: u64,
    index: usize,
    x: Arc<BinaryCurve<PrimeField>>,
}

/// `curves` seeded curves for every `(g, p)`. The three exhaustive grid
/// suites share these, so they examine the same bundles.
fn grid_cases(params: &SuiteParams, genera: &[i64], primes: &[u64]) -> Result<Vec<Case>> {
    let n = params.curves.unwrap_or(1);
    let mut cases = Vec::new();
    for &g in genera {
        for &p in primes {
            let f = fp(p)?;
            let mut rng = stream(params.seed, g, p, 0);
            for index in 0..n {
                cases.push(Case { g, p, index, x: Arc::new(sample_curve(g, &f, &mut rng)?) });
            }
        }
    }
    Ok(cases)
}

fn for_each_class(x: &Arc<BinaryCurve<PrimeField>>, d: i64, mut visit: impl FnMut(Multidegree, &[u64], usize)) {
    let mut scratch = Vec::new();
    for md in balanced_set(d, x.genus()) {
        let sys = SectionSystem::new(x, md);
        let torus = BundleTorus::new(x.clone(), md);
        for i in 0..torus.count() {
            let c = torus.gluing_at(i);
            let h = sys.h0_with(&c, &mut scratch);
            visit(md, &c, h);
        }
    }
}

struct Tally {
    classes: u64,
    exceptions: u64,
    examples: Vec<Exception>,
}

impl Tally {
    fn new() -> Self {
        Self { classes: 0, exceptions: 0, examples: Vec::new() }
    }

    fn record(&mut self, ok: bool, md: Multidegree, c: &[u64], h0: usize, expected: impl FnOnce() -> String) {
        self.classes += 1;
        if !ok {
            self.exceptions += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(Exception { md, gluing: c.to_vec(), h0, expected: expected() });
            }
        }
    }

    fn row(&self, case: &Case) -> Value {
        json!({
            "g": case.g,
            "p": case.p,
            "curve_index": case.index,
            "curve": curve_value(&case.x),
            "classes": self.classes,
            "exceptions": self.exceptions,
            "examples": self.examples,
        })
    }
}

fn collect_rows(rows: Vec<Result<(bool, Value)>>) -> Result<(bool, Value)> {
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let pass = rows.iter().all(|(ok, _)| *ok);
    Ok((pass, Value::Array(rows.into_iter().map(|(_, v)| v).collect())))
}

fn riemann(params: &SuiteParams) -> Result<(bool, Value)> {
    let cases = grid_cases(params, &params.genera(&[1, 2, 3]), &params.primes(&[5, 7]))?;
    let rows = fan_out(params.jobs, &cases, |case| {
        let g = case.g;
        let mut t = Tally::new();
        for d in 2 * g - 1..=2 * g + 2 {
            let want = (d - g + 1) as usize;
            for_each_class(&case.x, d, |md, c, h| t.record(h == want, md, c, h, || format!("h0 = {want}")));
        }
        Ok((t.exceptions == 0, t.row(case)))
    });
    let (pass, rows) = collect_rows(rows)?;
    Ok((pass, json!({ "rows": rows })))
}

fn clifford(params: &SuiteParams) -> Result<(bool, Value)> {
    let cases = grid_cases(params, &params.genera(&[1, 2, 3]), &params.primes(&[5, 7]))?;
    let rows = fan_out(params.jobs, &cases, |case| {
        let g = case.g;
        let mut t = Tally::new();
        let mut degree_zero = Vec::new();
        let mut canonical_degree = Vec::new();
        for d in 0..=2 * g {
            for_each_class(&case.x, d, |md, c, h| {
                t.record(2 * h as i64 <= d + 2, md, c, h, || format!("h0 <= {}", d / 2 + 1));
                if d == 0 && h == 1 {
                    degree_zero.push((md, c.to_vec()));
                }
                if d == 2 * g - 2 && h as i64 == g {
                    canonical_degree.push((md, c.to_vec()));
                }
            });
        }
        let trivial = LineBundle::trivial(case.x.clone());
        let omega = LineBundle::canonical(case.x.clone())?;
        let unique_trivial = degree_zero == [(trivial.md(), trivial.gluing().to_vec())];
        let unique_canonical = canonical_degree == [(omega.md(), omega.gluing().to_vec())];
        let mut row = t.row(case);
        row["degree_zero_equality"] = json!(degree_zero);
        row["canonical_degree_equality"] = json!(canonical_degree);
        row["canonical_gluing"] = json!(omega.gluing());
        Ok((t.exceptions == 0 && unique_trivial && unique_canonical, row))
    });
    let (pass, rows) = collect_rows(rows)?;
    Ok((pass, json!({ "rows": rows })))
}

fn serre(params: &SuiteParams) -> Result<(bool, Value)> {
    let cases = grid_cases(params, &params.genera(&[1, 2, 3]), &params.primes(&[5, 7]))?;
    let rows = fan_out(params.jobs, &cases, |case| {
        let g = case.g;
        let x = &case.x;
        let omega = LineBundle::canonical(x.clone())?;
        let mut t = Tally::new();
        let mut failure = None;
        for d in 0..=2 * g + 2 {
            for_each_class(x, d, |md, c, h| {
                let dual = LineBundle::new(x.clone(), md, c.to_vec()).and_then(|l| omega.tensor(&l.dual()));
                match dual {
                    Ok(dual) => {
                        let want = h as i64 - d + g - 1;
                        let got = h0(&dual);
                        t.record(got as i64 == want, md, c, got, || format!("h0(omega (x) L^-1) = {want}"));
                    }
                    Err(e) => failure = Some(e),
                }
            });
        }
        if let Some(e) = failure {
            return Err(e);
        }
        Ok((t.exceptions == 0, t.row(case)))
    });
    let (pass, rows) = collect_rows(rows)?;
    Ok((pass, json!({ "rows": rows })))
}

fn empty(params: &SuiteParams) -> Result<(bool, Value)> {
    let cases = grid_cases(params, &params.genera(&[0, 1, 2, 3, 4]), &params.primes(&[7]))?;
    let ranks: Vec<u32> = params.r.map_or_else(|| vec![0, 1, 2], |r| vec![r]);
    let tasks: Vec<(&Case, u32)> = cases.iter().flat_map(|c| ranks.iter().map(move |&r| (c, r))).collect();
    let opts = params.scan();
    let rows = fan_out(params.jobs, &tasks, |&(case, r)| {
        let g = case.g;
        let mut checked = Vec::new();
        let mut nonempty = Vec::new();
        for d in -1..=g + r as i64 {
            for md in balanced_set(d, g) {
                if !predicted_empty(md, r as i64, g) {
                    continue;
                }
                let count = bn_enumerate_with(&case.x, BnQuery::new(md, r), opts).count;
                checked.push(json!({ "md": md, "count": count }));
                if count > 0 {
                    nonempty.push(md);
                }
            }
        }
        let row = json!({
            "g": g,
            "p": case.p,
            "r": r,
            "curve_index": case.index,
            "curve": curve_value(&case.x),
            "checked": checked,
            "exceptions": nonempty,
        });
        Ok((nonempty.is_empty(), row))
    });
    let (pass, rows) = collect_rows(rows)?;
    Ok((pass, json!({ "rows": rows })))
}

fn lemma_e(params: &SuiteParams) -> Result<(bool, Value)> {
    let cases = grid_cases(params, &params.genera(&[3]), &params.primes(&[5, 7]))?;
    let rows = fan_out(params.jobs, &cases, |case| {
        let g = case.g;
        let x = &case.x;
        let mut mds = Vec::new();
        let mut violations = Vec::new();
        let mut scratch = Vec::new();
        for d1 in -1..g {
            for d2 in d1..g {
                let md = Multidegree::new(d1, d2);
                let bound = d1 + d2 + 1 - d2.min(g);
                let sys = SectionSystem::new(x, md);
                let torus = BundleTorus::new(x.clone(), md);
                let (mut attaining, mut above) = (0u64, 0u64);
                for i in 0..torus.count() {
                    let h = sys.h0_with(&torus.gluing_at(i), &mut scratch) as i64;
                    attaining += u64::from(h == bound);
                    above += u64::from(h > bound);
                }
                if attaining > 1 || above > 0 {
                    violations.push(md);
                }
                mds.push(json!({ "md": md, "bound": bound, "classes": torus.count(), "attaining": attaining, "above": above }));
            }
        }
        let row = json!({
            "g": g,
            "p": case.p,
            "curve_index": case.index,
            "curve": curve_value(x),
            "multidegrees": mds,
            "violations": violations,
        });
        Ok((violations.is_empty(), row))
    });
    let (pass, rows) = collect_rows(rows)?;
    Ok((pass, json!({ "rows": rows })))
}

fn hyperelliptic(params: &SuiteParams) -> Result<(bool, Value)> {
    let n = params.curves.unwrap_or(200);
    let q = BnQuery::new(Multidegree::new(1, 1), 1);
    let opts = params.scan();
    let mut rows = Vec::new();
    let mut pass = true;
    for g in params.genera(&[3, 4]) {
        for p in params.primes(&[7, 11]) {
            let f = fp(p)?;
            let mut rng = stream(params.seed, g, p, 1);
            // every fourth sample is hyperelliptic by construction
            let curves = (0..n)
                .map(|i| {
                    let x = if i % 4 == 3 { random_hyperelliptic_curve(g, &f, &mut rng)? } else { sample_curve(g, &f, &mut rng)? };
                    Ok(Arc::new(x))
                })
                .collect::<Result<Vec<_>>>()?;
            let indexed: Vec<_> = curves.iter().enumerate().collect();
            let checks = fan_out(params.jobs, &indexed, |&(i, x)| -> Result<(bool, bool, Value)> {
                let fast = x.is_hyperelliptic()?;
                let rep = bn_enumerate_with(x, q, opts);
                let witness_ok = if fast {
                    let h = LineBundle::hyperelliptic_class(x.clone())?;
                    rep.count == 1 && rep.witnesses.first().map(Vec::as_slice) == Some(h.gluing())
                } else {
                    rep.count == 0
                };
                let agree = fast == (rep.count > 0) && witness_ok;
                let detail = json!({ "index": i, "curve": curve_value(x), "fast": fast, "count": rep.count, "witnesses": rep.witnesses });
                Ok((agree, fast, detail))
            });
            let checks = checks.into_iter().collect::<Result<Vec<_>>>()?;
            let hyp = checks.iter().filter(|c| c.1).count();
            let disagreements: Vec<Value> = checks.into_iter().filter(|c| !c.0).map(|c| c.2).collect();
            pass &= disagreements.is_empty();
            rows.push(json!({ "g": g, "p": p, "curves": n, "hyperelliptic": hyp, "disagreements": disagreements }));
        }
    }
    Ok((pass, json!({ "rows": rows })))
}

fn martens(params: &SuiteParams) -> Result<(bool, Value)> {
    let primes = params.primes(&[23, 47]);
    let md = Multidegree::new(1, 2);
    let r = 1;
    let q = BnQuery::new(md, r);
    let g = 4;
    let d = md.total();

    let hyp = hyperelliptic_genus4();
    let hyp_mod_p = primes
        .iter()
        .map(|&p| hyp.reduce_mod(&fp(p)?)?.is_hyperelliptic())
        .collect::<Result<Vec<_>>>()?;
    let hyp_est = estimate_dim(&hyp, q, &primes, params.wide_scan())?;
    let hyp_bound = martens_bound(g, md, r as i64, true)?;
    let hyp_ok = hyp_mod_p.iter().all(|&h| h)
        && matches!(hyp_est.estimate, DimValue::Fit { rounded, residual, .. } if rounded == d - 2 * r as i64 && residual <= 0.35)
        && hyp_bound == MartensBound::Exact(d - 2 * r as i64);

    let gen = general_genus4();
    let gen_mod_p = primes
        .iter()
        .map(|&p| gen.reduce_mod(&fp(p)?)?.is_hyperelliptic())
        .collect::<Result<Vec<_>>>()?;
    let gen_est = estimate_dim(&gen, q, &primes, params.wide_scan())?;
    let gen_bound = martens_bound(g, md, r as i64, false)?;
    let exponent = (d - 2 * r as i64 - 1) as u32;
    let limits: Vec<u64> = primes.iter().map(|&p| MARTENS_COUNT_CONSTANT * p.pow(exponent)).collect();
    let gen_ok = gen_mod_p.iter().all(|&h| !h)
        && gen_est.counts.iter().zip(&limits).all(|(n, lim)| n <= lim)
        && gen_est.dimension().is_some_and(|dim| dim <= d - 2 * r as i64 - 1)
        && gen_bound == MartensBound::AtMost(d - 2 * r as i64 - 1);

    let details = json!({
        "query": q,
        "hyperelliptic": {
            "curve": curve_to_json(&hyp),
            "hyperelliptic_mod_p": hyp_mod_p,
            "estimate": hyp_est,
            "bound": hyp_bound,
            "pass": hyp_ok,
        },
        "general": {
            "curve": curve_to_json(&gen),
            "hyperelliptic_mod_p": gen_mod_p,
            "estimate": gen_est,
            "count_limits": limits,
            "bound": gen_bound,
            "pass": gen_ok,
        },
    });
    Ok((hyp_ok && gen_ok, details))
}

fn theta(params: &SuiteParams) -> Result<(bool, Value)> {
    let primes = params.primes(&[7, 11, 23]);
    let q = BnQuery::new(Multidegree::new(1, 1), 1);
    let opts = params.wide_scan();
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, curve, hyperelliptic) in [("hyperelliptic", hyperelliptic_genus3(), true), ("general", general_genus3(), false)] {
        let mut rows = Vec::new();
        let mut counts = Vec::new();
        for &p in &primes {
            let x = Arc::new(curve.reduce_mod(&fp(p)?)?);
            let is_hyp = x.is_hyperelliptic()?;
            let rep = bn_enumerate_with(&x, q, opts);
            let ok = if hyperelliptic {
                let h = LineBundle::hyperelliptic_class(x.clone())?;
                is_hyp && rep.count == 1 && rep.witnesses.first().map(Vec::as_slice) == Some(h.gluing())
            } else {
                !is_hyp && rep.count == 0
            };
            pass &= ok;
            counts.push(rep.count);
            rows.push(json!({ "p": p, "hyperelliptic": is_hyp, "count": rep.count, "witnesses": rep.witnesses, "pass": ok }));
        }
        let fit = fit_exponent(&primes, &counts);
        let fit_ok = if hyperelliptic {
            matches!(fit, DimValue::Fit { rounded: 0, inconclusive: false, .. })
        } else {
            fit == DimValue::Empty
        };
        pass &= fit_ok;
        parts.push(json!({ "name": name, "curve": curve_to_json(&curve), "primes": rows, "fit": fit }));
    }
    Ok((pass, json!({ "query": q, "curves": parts })))
}

fn brill_noether(params: &SuiteParams) -> Result<(bool, Value)> {
    let p = params.primes(&[11]).first().copied().ok_or_else(|| Error::Precondition("needs a prime".into()))?;
    let n = params.curves.unwrap_or(100);
    let opts = params.wide_scan();

    let mut negative = SuiteConfig::new(4, 1, vec![p], n, params.seed);
    negative.d_min = 2;
    negative.d_max = 2;
    let negative = bn_suite(&negative, opts)?;
    let target = negative.rows.iter().find(|row| row.md == Some(Multidegree::new(1, 1)));
    let negative_ok = negative.pass && target.is_some_and(|row| row.verdict == Verdict::Pass);

    let mut positive = SuiteConfig::new(3, 1, vec![p], n, params.seed ^ 1);
    positive.d_min = 3;
    positive.d_max = 3;
    let positive = bn_suite(&positive, opts)?;
    let positive_ok = positive.rows.iter().any(|row| row.md.is_none() && row.verdict == Verdict::Pass)
        && positive.rows.iter().all(|row| row.verdict != Verdict::Fail);

    let nets = SuiteConfig::new(3, 2, vec![p], n, params.seed ^ 2);
    let curves = nets.curves(p)?;
    let q = BnQuery::new(Multidegree::new(2, 2), 2);
    let checks = fan_out(params.jobs, &curves, |x| -> Result<(bool, u64)> {
        let rep = bn_enumerate_with(x, q, params.scan());
        let omega = LineBundle::canonical(x.clone())?;
        Ok((rep.count == 1 && rep.witnesses.first().map(Vec::as_slice) == Some(omega.gluing()), rep.count))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let nets_ok = checks.iter().all(|c| c.0);
    let net_counts: Vec<u64> = checks.iter().map(|c| c.1).collect();

    let details = json!({
        "negative_rho": { "report": negative, "pass": negative_ok },
        "positive_rho": { "report": positive, "pass": positive_ok },
        "canonical_net": {
            "g": 3,
            "p": p,
            "query": q,
            "seed": nets.seed,
            "counts": net_counts,
            "matches_canonical": checks.iter().filter(|c| c.0).count(),
            "pass": nets_ok,
        },
    });
    Ok((negative_ok && positive_ok && nets_ok, details))
}

fn very_ample(params: &SuiteParams) -> Result<(bool, Value)> {
    let n = params.curves.unwrap_or(10);
    let trials = params.trials.unwrap_or(20);
    let mut rows = Vec::new();
    let mut pass = true;
    for g in params.genera(&[4]) {
        for p in params.primes(&[11]) {
            let f = fp(p)?;
            let mut rng = stream(params.seed, g, p, 2);
            let curves = (0..n)
                .map(|i| {
                    let x = if i % 4 == 3 { random_hyperelliptic_curve(g, &f, &mut rng)? } else { sample_curve(g, &f, &mut rng)? };
                    Ok((i, Arc::new(x), rng.fork()))
                })
                .collect::<Result<Vec<_>>>()?;
            let reports = fan_out(params.jobs, &curves, |(i, x, r)| {
                let mut r = r.clone();
                verify_canonical_very_ample(x, &mut r, trials).map(|rep| (*i, rep))
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
            for (i, rep) in reports {
                pass &= rep.pass;
                rows.push(json!({
                    "g": g,
                    "p": p,
                    "curve_index": i,
                    "curve": curve_value(&curves[i].1),
                    "hyperelliptic": rep.hyperelliptic,
                    "checks": rep.checks.len(),
                    "failures": rep.failures,
                    "pass": rep.pass,
                }));
            }
        }
    }
    Ok((pass, json!({ "trials": trials, "rows": rows })))
}

fn wbar(params: &SuiteParams) -> Result<(bool, Value)> {
    let mut pass = true;
    let mut rows = Vec::new();
    let mut listings = Vec::new();
    for p in params.primes(&[7]) {
        let f = fp(p)?;
        for g in params.genera(&[2, 3]) {
            let mut rng = stream(params.seed, g, p, 3);
            let x = Arc::new(sample_curve(g, &f, &mut rng)?);
            if g == 2 {
                let two = enumerate_strata(x.as_ref(), 2)?;
                let one = enumerate_strata(x.as_ref(), 1)?;
                let n_type = picard_type(2, g) == PicardType::Neron && two.len() == 12;
                let d_type = picard_type(1, g) == PicardType::Degeneration && one.iter().any(|e| matches!(e, StratumEntry::Ell0(_)));
                pass &= n_type && d_type;
                listings.push(json!({
                    "p": p,
                    "g": g,
                    "degree_two": { "type": "N", "strata": two.len(), "pass": n_type },
                    "degree_one": { "type": "D", "strata": one.len(), "pass": d_type },
                }));
            }
            for r in params.r.map_or_else(|| vec![0, 1, 2], |r| vec![r]) {
                for d in 0..=r as i64 + g - 1 {
                    let rep = assemble_wbar(&x, d, r, params.wide_scan())?;
                    let ell0_out = rep.ell0.as_ref().map_or(true, |e| !e.in_wbar);
                    let ok = ell0_out && rep.order_consistent;
                    pass &= ok;
                    rows.push(json!({
                        "p": p,
                        "g": g,
                        "d": d,
                        "r": r,
                        "strata": rep.strata.len(),
                        "nonempty_strata": rep.strata.iter().filter(|s| s.count > 0).count(),
                        "ell0": rep.ell0,
                        "order_consistent": rep.order_consistent,
                        "pass": ok,
                    }));
                }
            }
        }
    }
    Ok((pass, json!({ "listings": listings, "rows": rows })))
}
