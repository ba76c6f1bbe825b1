//! Regression checks for every reproduced numerical claim.
//!
//! Each check is a named group of rows. A row compares a computed scalar to
//! an expected one; verdict-style claims are encoded as counts (expected
//! number of cases where the claim holds) or as worst-case errors with an
//! expected value of zero.

use std::fmt;

use biso::applications::{
    f_divergence_output_bounds, fi_curve_bounds, secrecy_capacity_vs_bec, secrecy_capacity_vs_bsc, Bound,
};
use biso::coefficients::{
    alpha_max, capacity_biso, doeblin_alpha, eta_kl_binary, eta_kl_binary_argmax, eta_kl_biso, eta_tv, h2, h2_inv,
    maximal_leakage, mutual_information,
};
use biso::divergence::{f_divergence, FDivergenceGenerator};
use biso::extremal::{
    dim3_degrading_map, dim3_less_noisy_compare, match_extremal, reverse_coefficients, search_reverse_alpha,
    search_reverse_beta, theorem2_degrading_map, ClassKind,
};
use biso::orders::{
    guessing_probability, is_degraded, is_less_noisy, is_less_noisy_binary, is_more_capable, less_noisy_criterion_biso,
    z_less_noisy_margin, Relation, DEFAULT_GRID,
};
use biso::sample::{
    random_binary_channel, random_biso, random_biso_degradation, random_dim3_equal_alpha, random_dim3_equal_eta,
};
use biso::{BisoChannel, Channel, InputDistribution, Result, Witness};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// A published reference value, compared at its printed precision.
    Reference,
    /// A value computed independently of this crate.
    Oracle,
    /// A count or worst-case error encoding a verdict.
    Property,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Reference => "reference",
            Source::Oracle => "oracle",
            Source::Property => "property",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PaperCheckResult {
    pub check_id: String,
    pub anchor: &'static str,
    pub expected: f64,
    pub source: Source,
    pub computed: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl PaperCheckResult {
    fn new(
        check_id: String,
        anchor: &'static str,
        expected: f64,
        source: Source,
        computed: f64,
        tolerance: f64,
    ) -> Self {
        PaperCheckResult {
            passed: (expected - computed).abs() <= tolerance,
            check_id,
            anchor,
            expected,
            source,
            computed,
            tolerance,
        }
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub id: &'static str,
    pub title: &'static str,
    pub rows: Vec<PaperCheckResult>,
    /// Set when the computation itself failed.
    pub error: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && !self.rows.is_empty() && self.rows.iter().all(|r| r.passed)
    }
}

pub struct Check {
    pub id: &'static str,
    pub title: &'static str,
    run: fn(&mut Rows) -> Result<()>,
}

/// Row collector for one check.
pub struct Rows {
    id: &'static str,
    anchor: &'static str,
    rows: Vec<PaperCheckResult>,
}

impl Rows {
    fn value(&mut self, name: &str, expected: f64, source: Source, computed: f64, tolerance: f64) {
        let id = format!("{}/{}", self.id, name);
        self.rows.push(PaperCheckResult::new(
            id,
            self.anchor,
            expected,
            source,
            computed,
            tolerance,
        ));
    }

    fn count(&mut self, name: &str, expected: usize, computed: usize) {
        self.value(name, expected as f64, Source::Property, computed as f64, 0.0);
    }

    /// A non-negative worst-case error that must not exceed `tolerance`.
    fn max_error(&mut self, name: &str, computed: f64, tolerance: f64) {
        self.value(name, 0.0, Source::Property, computed, tolerance);
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The two four-output channels with η_KL = 0.194.
pub fn eta_pair() -> (BisoChannel, BisoChannel) {
    let t = 17.0 / 997.0;
    (
        BisoChannel::new(vec![(0.32, 0.48), (0.19, 0.01)]).expect("valid channel"),
        BisoChannel::new(vec![(0.0, t), (0.7, 0.3 - t)]).expect("valid channel"),
    )
}

/// The two four-output channels with Doeblin coefficient 0.48.
pub fn alpha_pair() -> (BisoChannel, BisoChannel) {
    (
        BisoChannel::new(vec![(0.05, 0.345), (0.19, 0.415)]).expect("valid channel"),
        BisoChannel::new(vec![(0.221, 0.515), (0.019, 0.245)]).expect("valid channel"),
    )
}

/// BSC crossover with the same capacity as `Z(q)`.
pub fn z_matched_bsc(q: f64) -> Result<f64> {
    let c = (1.0 + 2f64.powf(-h2(q) / (1.0 - q))).log2();
    h2_inv(1.0 - c)
}

fn eta_closed_form(r: &mut Rows) -> Result<()> {
    let (w, v) = eta_pair();
    r.value("first", 0.194, Source::Reference, eta_kl_biso(&w), 1e-12);
    r.value("second", 0.194, Source::Reference, eta_kl_biso(&v), 1e-12);
    Ok(())
}

fn eta_optimizer(r: &mut Rows) -> Result<()> {
    let mut g = rng(2);
    let (mut err, mut arg) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let w = random_biso(&mut g, 6);
        let (eta, q) = eta_kl_binary_argmax(&w.to_channel());
        err = err.max((eta - eta_kl_biso(&w)).abs());
        arg = arg.max((q - 0.5).abs());
    }
    r.max_error("optimizer-vs-closed-form", err, 1e-8);
    r.max_error("argmax-offset", arg, 1e-4);
    Ok(())
}

fn bsc_bec_identities(r: &mut Rows) -> Result<()> {
    let (mut eta_err, mut alpha_err) = (0.0f64, 0.0f64);
    for k in 0..=100 {
        let p = 0.5 * k as f64 / 100.0;
        eta_err = eta_err.max((eta_kl_biso(&BisoChannel::bsc(p)?) - (1.0 - 2.0 * p).powi(2)).abs());
        alpha_err = alpha_err.max((doeblin_alpha(&Channel::bsc(p)?) - 2.0 * p).abs());
    }
    let (mut bec_alpha, mut bec_eta) = (0.0f64, 0.0f64);
    for k in 0..=100 {
        let e = k as f64 / 100.0;
        bec_alpha = bec_alpha.max((doeblin_alpha(&Channel::bec(e)?) - e).abs());
        bec_eta = bec_eta.max((eta_kl_biso(&BisoChannel::bec(e)?) - (1.0 - e)).abs());
    }
    r.max_error("bsc-eta", eta_err, 1e-12);
    r.max_error("bsc-alpha", alpha_err, 1e-12);
    r.max_error("bec-alpha", bec_alpha, 1e-12);
    r.max_error("bec-eta", bec_eta, 1e-12);
    Ok(())
}

fn observation_chain(r: &mut Rows) -> Result<()> {
    let mut g = rng(4);
    let mut err = [0.0f64; 3];
    for _ in 0..1000 {
        let c = random_binary_channel(&mut g, 8);
        let tv = eta_tv(&c);
        err[0] = err[0].max((tv - (1.0 - doeblin_alpha(&c))).abs());
        err[1] = err[1].max((tv - (alpha_max(&c) - 1.0)).abs());
        err[2] = err[2].max((tv - (maximal_leakage(&c).exp() - 1.0)).abs());
    }
    r.max_error("tv-vs-doeblin", err[0], 1e-12);
    r.max_error("tv-vs-alpha-max", err[1], 1e-12);
    r.max_error("tv-vs-leakage", err[2], 1e-12);
    Ok(())
}

fn eta_extremality(r: &mut Rows) -> Result<()> {
    let mut g = rng(5);
    let (mut bec_ok, mut bsc_ok) = (0, 0);
    for _ in 0..100 {
        let f = random_biso(&mut g, 6);
        let m = match_extremal(&f.to_channel(), ClassKind::EtaKl)?;
        bec_ok += usize::from(is_less_noisy(&m.bec(), &f, DEFAULT_GRID)?.holds());
        bsc_ok += usize::from(is_less_noisy(&f, &m.bsc(), DEFAULT_GRID)?.holds());
    }
    r.count("bec-dominates", 100, bec_ok);
    r.count("bsc-dominated", 100, bsc_ok);
    Ok(())
}

fn eta_counterexample(r: &mut Rows) -> Result<()> {
    let (w, v) = eta_pair();
    r.value(
        "q=0.001",
        -14.44,
        Source::Reference,
        less_noisy_criterion_biso(&w, &v, 0.001)?,
        0.15,
    );
    r.value(
        "q=0.02",
        0.9,
        Source::Reference,
        less_noisy_criterion_biso(&w, &v, 0.02)?,
        0.1,
    );
    Ok(())
}

fn alpha_extremality(r: &mut Rows) -> Result<()> {
    let mut g = rng(7);
    let (mut bec_ok, mut bsc_ok) = (0, 0);
    let mut err = 0.0f64;
    for _ in 0..100 {
        let f = random_biso(&mut g, 6);
        let fc = f.to_channel();
        let alpha = doeblin_alpha(&fc);
        let bec = Channel::bec(alpha)?;
        if let Some(Witness::Map(m)) = is_degraded(&bec, &fc)?.witness {
            bec_ok += usize::from(bec.compose(&m)?.max_abs_diff(&fc).is_some_and(|e| e <= 1e-8));
        }
        let target = fc.compose(&theorem2_degrading_map(&f))?;
        let bsc = Channel::bsc(alpha / 2.0)?;
        if let Some(Witness::Map(m)) = is_degraded(&fc, &bsc)?.witness {
            bsc_ok += 1;
            err = err.max(fc.compose(&m)?.max_abs_diff(&target).unwrap_or(f64::INFINITY));
        } else {
            err = f64::INFINITY;
        }
    }
    r.count("bec-degrades-to-channel", 100, bec_ok);
    r.count("channel-degrades-to-bsc", 100, bsc_ok);
    r.max_error("witness-vs-indicator-target", err, 1e-10);
    Ok(())
}

fn alpha_counterexample(r: &mut Rows) -> Result<()> {
    let (f, g) = alpha_pair();
    let (fc, gc) = (f.to_channel(), g.to_channel());
    let fails = usize::from(is_degraded(&fc, &gc)?.fails()) + usize::from(is_degraded(&gc, &fc)?.fails());
    r.count("not-degradable", 2, fails);
    r.value(
        "first@x=0.12",
        0.88,
        Source::Reference,
        guessing_probability(&f, 0.12),
        5e-6,
    );
    r.value(
        "second@x=0.12",
        0.89268,
        Source::Reference,
        guessing_probability(&g, 0.12),
        5e-6,
    );
    r.value(
        "first@x=0.29",
        0.775,
        Source::Reference,
        guessing_probability(&f, 0.29),
        5e-6,
    );
    r.value(
        "second@x=0.29",
        0.76756,
        Source::Reference,
        guessing_probability(&g, 0.29),
        5e-6,
    );
    Ok(())
}

fn dimension_three(r: &mut Rows) -> Result<()> {
    let mut g = rng(9);
    let mut agree = 0;
    for _ in 0..100 {
        let (f, h) = random_dim3_equal_eta(&mut g);
        let (fb, hb) = (f.to_biso(), h.to_biso());
        let cmp = dim3_less_noisy_compare(&fb, &hb)?;
        let forward = is_less_noisy(&fb, &hb, DEFAULT_GRID)?.holds();
        let backward = is_less_noisy(&hb, &fb, DEFAULT_GRID)?.holds();
        agree += usize::from(cmp.first_over_second.holds() == forward && cmp.second_over_first.holds() == backward);
    }
    r.count("ratio-test-matches-grid", 100, agree);
    let mut stochastic = 0;
    let mut err = 0.0f64;
    for _ in 0..100 {
        let (f, h) = random_dim3_equal_alpha(&mut g);
        let deg = dim3_degrading_map(&f.to_biso(), &h.to_biso())?;
        let ok =
            deg.map.rows().iter().all(|row| {
                row.iter().all(|v| (0.0..=1.0).contains(v)) && (row.iter().sum::<f64>() - 1.0).abs() <= 1e-9
            });
        stochastic += usize::from(ok);
        err = err.max(deg.composition_error);
    }
    r.count("maps-row-stochastic", 100, stochastic);
    r.max_error("composition-error", err, 1e-10);
    Ok(())
}

fn reverse(r: &mut Rows) -> Result<()> {
    let mut g = rng(10);
    let (mut ea, mut eb) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let w = random_biso(&mut g, 6);
        let rc = reverse_coefficients(&w);
        ea = ea.max((search_reverse_alpha(&w)? - rc.alpha).abs());
        eb = eb.max((search_reverse_beta(&w, DEFAULT_GRID)? - rc.beta).abs());
    }
    r.max_error("alpha-search", ea, 1e-6);
    r.max_error("beta-search", eb, 1e-6);
    Ok(())
}

fn z_channel(r: &mut Rows) -> Result<()> {
    let mut err = 0.0f64;
    for k in 0..=50 {
        let p = 0.5 * k as f64 / 50.0;
        let z = Channel::z(4.0 * p * (1.0 - p))?;
        err = err.max((eta_kl_binary(&z) - (1.0 - 2.0 * p).powi(2)).abs());
    }
    r.max_error("eta-of-matched-z", err, 1e-8);

    // positive part of I_Z - I_BSC over the capacity-matched family
    let mut excess = 0.0f64;
    for k in 1..=20 {
        let q = k as f64 / 21.0;
        let z = Channel::z(q)?;
        let bsc = Channel::bsc(z_matched_bsc(q)?)?;
        for j in 1..=DEFAULT_GRID {
            let x = InputDistribution::new(j as f64 / (DEFAULT_GRID + 1) as f64)?;
            excess = excess.max(mutual_information(&z, x) - mutual_information(&bsc, x));
        }
    }
    r.max_error("mi-difference-excess", excess, 1e-9);

    let (mut violated, mut fd_fails) = (0, 0);
    for k in 1..=20 {
        let eta = k as f64 / 21.0;
        let below: Vec<f64> = (1..=DEFAULT_GRID)
            .map(|j| j as f64 / (DEFAULT_GRID + 1) as f64)
            .filter(|&q| q < 0.75)
            .collect();
        violated += usize::from(below.iter().any(|&q| z_less_noisy_margin(eta, q) < 0.0));
        let p = 0.5 * (1.0 - eta.sqrt());
        let z = Channel::z(1.0 - eta)?;
        let bsc = Channel::bsc(p)?;
        fd_fails += usize::from(is_less_noisy_binary(&z, &bsc, DEFAULT_GRID)?.fails());
    }
    r.count("z-inequality-violated", 20, violated);
    r.count("z-not-less-noisy-than-bsc", 20, fd_fails);
    Ok(())
}

fn hierarchy(r: &mut Rows) -> Result<()> {
    let mut g = rng(12);
    let (mut deg_not_ln, mut ln_not_mc) = (0, 0);
    for k in 0..500 {
        let p = random_biso(&mut g, 6);
        let q = if k < 250 {
            random_biso(&mut g, 6)
        } else {
            random_biso_degradation(&mut g, &p, 6)
        };
        let (pc, qc) = (p.to_channel(), q.to_channel());
        let deg = is_degraded(&pc, &qc)?.relation;
        let ln = is_less_noisy(&p, &q, DEFAULT_GRID)?.relation;
        let mc = is_more_capable(&pc, &qc, DEFAULT_GRID)?.relation;
        deg_not_ln += usize::from(deg == Relation::Holds && ln == Relation::Fails);
        ln_not_mc += usize::from(ln == Relation::Holds && mc == Relation::Fails);
    }
    r.count("degraded-but-not-less-noisy", 0, deg_not_ln);
    r.count("less-noisy-but-not-more-capable", 0, ln_not_mc);
    Ok(())
}

fn applications(r: &mut Rows) -> Result<()> {
    let mut g = rng(13);
    let generators = [
        FDivergenceGenerator::total_variation(),
        FDivergenceGenerator::chi_squared(),
        FDivergenceGenerator::kl(),
    ];
    let (mut cases, mut sandwiched) = (0, 0);
    while cases < 100 {
        let w = random_biso(&mut g, 6);
        let c = w.to_channel();
        let l = maximal_leakage(&c);
        let e = l.exp();
        if !(e > 1.0 && e < 2.0) {
            continue;
        }
        cases += 1;
        let ok = generators.iter().all(|gen| {
            let Ok(b) = f_divergence_output_bounds(gen, l) else {
                return false;
            };
            match f_divergence(gen, c.row(0), c.row(1)) {
                Ok(d) => {
                    b.lower.value().is_some_and(|lo| lo - 1e-9 <= d)
                        && match b.upper {
                            Bound::Finite(u) => d <= u + 1e-9,
                            Bound::Unbounded => true,
                        }
                }
                Err(_) => b.upper == Bound::Unbounded,
            }
        });
        sandwiched += usize::from(ok);
    }
    r.count("f-divergence-sandwich", 100, sandwiched);

    let mut fi_ok = 0;
    for _ in 0..100 {
        let w = random_biso(&mut g, 6);
        let bounds: Vec<_> = (0..=150)
            .map(|k| fi_curve_bounds(&w, k as f64 / 100.0))
            .collect::<Result<_>>()?;
        let eta = eta_kl_biso(&w);
        let ordered = bounds.iter().all(|b| b.lower >= -1e-12 && b.lower <= b.upper + 1e-9);
        let monotone = bounds
            .windows(2)
            .all(|p| p[1].lower >= p[0].lower - 1e-12 && p[1].upper >= p[0].upper);
        let flat = bounds.iter().filter(|b| b.t >= 1.0).all(|b| b.upper == eta);
        fi_ok += usize::from(ordered && monotone && flat);
    }
    r.count("fi-bounds-shape", 100, fi_ok);

    let bsc = BisoChannel::bsc(0.25)?;
    let bec = BisoChannel::bec(0.5)?;
    r.value(
        "bec-secrecy@bsc0.25",
        0.06127812445913283,
        Source::Oracle,
        secrecy_capacity_vs_bec(&bsc),
        1e-5,
    );
    r.value(
        "bsc-secrecy@bsc0.25",
        0.0,
        Source::Oracle,
        secrecy_capacity_vs_bsc(&bsc),
        1e-5,
    );
    r.value(
        "bec-secrecy@bec0.5",
        0.0,
        Source::Oracle,
        secrecy_capacity_vs_bec(&bec),
        1e-5,
    );
    r.value(
        "bsc-secrecy@bec0.5",
        0.10087603669285616,
        Source::Oracle,
        secrecy_capacity_vs_bsc(&bec),
        1e-5,
    );
    r.value(
        "capacity@bsc0.25",
        0.18872187554086717,
        Source::Oracle,
        capacity_biso(&bsc),
        1e-12,
    );
    Ok(())
}

static REGISTRY: [Check; 13] = [
    Check {
        id: "eta-closed-form",
        title: "closed-form η_KL of the two equal-η channels",
        run: eta_closed_form,
    },
    Check {
        id: "eta-optimizer",
        title: "χ² optimizer agrees with the BISO closed form, maximum at q = 1/2",
        run: eta_optimizer,
    },
    Check {
        id: "bsc-bec-identities",
        title: "η_KL and α of BSC and BEC",
        run: bsc_bec_identities,
    },
    Check {
        id: "observation-chain",
        title: "η_TV = 1 - α = α_max - 1 = e^L - 1",
        run: observation_chain,
    },
    Check {
        id: "eta-extremality",
        title: "BEC ⪰ F ⪰ BSC in the less-noisy order within an η class",
        run: eta_extremality,
    },
    Check {
        id: "eta-counterexample",
        title: "less-noisy criterion changes sign for the equal-η pair",
        run: eta_counterexample,
    },
    Check {
        id: "alpha-extremality",
        title: "BEC ⪰ F ⪰ BSC in the degradation order within an α class",
        run: alpha_extremality,
    },
    Check {
        id: "alpha-counterexample",
        title: "equal-α pair is not degradable; guessing probabilities",
        run: alpha_counterexample,
    },
    Check {
        id: "dimension-three",
        title: "three-output channels: ratio test and explicit degrading maps",
        run: dimension_three,
    },
    Check {
        id: "reverse-coefficients",
        title: "reverse coefficients 1 - η_TV and 1 - η_KL are tight",
        run: reverse,
    },
    Check {
        id: "z-channel",
        title: "Z channel: contraction, capacity-matched MI difference, less-noisy inequality",
        run: z_channel,
    },
    Check {
        id: "order-hierarchy",
        title: "degraded ⟹ less noisy ⟹ more capable on random pairs",
        run: hierarchy,
    },
    Check {
        id: "applications",
        title: "f-divergence bounds, F_I bounds and secrecy capacities",
        run: applications,
    },
];

pub fn registry() -> &'static [Check] {
    &REGISTRY
}

impl Check {
    pub fn run(&self) -> CheckReport {
        let mut rows = Rows {
            id: self.id,
            anchor: self.title,
            rows: Vec::new(),
        };
        let error = (self.run)(&mut rows).err().map(|e| e.to_string());
        CheckReport {
            id: self.id,
            title: self.title,
            rows: rows.rows,
            error,
        }
    }
}

/// Runs one check by id.
pub fn run_check(id: &str) -> Option<CheckReport> {
    registry().iter().find(|c| c.id == id).map(Check::run)
}
