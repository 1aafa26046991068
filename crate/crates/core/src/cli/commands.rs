//! The subcommands behind `dfock`.

use std::path::PathBuf;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolean::{
    boolean_invariant_state, conditional_expectation, e_mixing_curve, fixed_point_membership,
    permutation_op, shift_op, verify_boolrel, BooleanOp, Site,
};
use crate::catalog::{
    build_standard, commutant_residual, transposition, translation_covariance_residual,
    verify_braid, verify_bounded_below, verify_hecke, Kind, ModeWindow, YangBaxterOp,
};
use crate::cli::config::ExperimentConfig;
use crate::cli::expr::{parse_expression, parse_polynomial, parse_word};
use crate::cli::report::{Check, Report};
use crate::ergodic::{cesaro_distance, unique_mixing_curve, MixingCurve};
use crate::error::{Error, Result};
use crate::fock::gram::level_is_empty;
use crate::fock::tensor::check_psquare;
use crate::fock::{
    bogoliubov_covariance_check, build_fock, creator_norm_check, intertwining,
    specialized_boolean_fock, specialized_monotone_fock, wick_residual, FockModel,
    FockOperator,
};
use crate::linalg::{c64, ComplexVector, C64};
use crate::symbolic::coefficient::{Coefficient, Exact};
use crate::symbolic::oracle::{infinity_witness, vacuum_expectation};
use crate::symbolic::polynomial::{infinity_state, invariant_state, vacuum_state};

pub const PSQUARE_TOL: f64 = 1e-8;
pub const NORM_TOL: f64 = 1e-6;
pub const RANK_TOL: f64 = 1e-9;
/// Largest `d^n` for which verify builds `P^(n)`.
pub const SYMMETRIZER_CAP: usize = 4096;

const DEFAULT_VERIFY_WINDOW: ModeWindow = ModeWindow { lo: 0, hi: 2 };
const DEFAULT_VERIFY_NMAX: usize = 3;
const DEFAULT_ERGODIC_NMAX: usize = 2;
const DEFAULT_GAMMAS: [&str; 4] = ["0", "0.25", "0.5", "1"];

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of level `n` for `d` modes.
pub fn expected_level_dim(kind: Kind, d: usize, n: usize) -> usize {
    match kind {
        Kind::Free => d.pow(n as u32),
        Kind::Bose => binomial(d + n - 1, n),
        Kind::Fermi | Kind::Monotone | Kind::Antimonotone => binomial(d, n),
        Kind::Boolean => [1, d].get(n).copied().unwrap_or(0),
    }
}

fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> ComplexVector {
    let v = ComplexVector::from_fn(d, |_, _| c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let n = v.norm();
    v / c64(n, 0.0)
}

fn symmetrizer_checks(report: &mut Report, t: &YangBaxterOp, nmax: usize, note: &str) -> Result<()> {
    let d = t.d();
    for n in 2..=nmax {
        let dim = d.pow(n as u32);
        if dim > SYMMETRIZER_CAP {
            report
                .values
                .insert(format!("P^({n}){note}"), format!("skipped: tensor dimension {dim}"));
            continue;
        }
        let p = check_psquare(t, n)?;
        if level_is_empty(t.kind, d, n) {
            report.push(Check::equals(format!("P^({n})=0{note}"), p.norm, 0.0, PSQUARE_TOL));
        } else {
            report.push(Check::equals(
                format!("‖P^({n})‖ = {}{note}", p.factorial),
                p.norm,
                p.factorial,
                NORM_TOL,
            ));
        }
        report.push(Check::vanishes(
            format!("‖(P^({n}))² − {}·P^({n})‖{note}", p.factorial),
            p.idempotency,
            PSQUARE_TOL,
        ));
    }
    Ok(())
}

/// Residual suite for one model.
pub fn verify(cfg: &ExperimentConfig) -> Result<Report> {
    let window = cfg.window.unwrap_or(DEFAULT_VERIFY_WINDOW);
    let nmax = cfg.nmax.unwrap_or(DEFAULT_VERIFY_NMAX);
    let tol = cfg.tol;
    let kind = cfg.model;
    let d = window.dim();
    let mut summary = cfg.summary();
    summary.insert("window".into(), window.to_string());
    summary.insert("nmax".into(), nmax.to_string());
    let mut report = Report::new("verify", cfg.seed, summary);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let t = build_standard(kind, window);
    report.push(Check::vanishes("braid relation", verify_braid(&t), tol));
    report.push(Check::vanishes(
        format!("Hecke relation (q = {})", t.hecke_q),
        verify_hecke(&t, t.hecke_q),
        tol,
    ));
    report.push(Check::vanishes("T selfadjoint", t.selfadjoint_residual(), tol));
    report.push(Check::vanishes("T ≥ −I", verify_bounded_below(&t)?, tol));

    symmetrizer_checks(&mut report, &t, nmax, "")?;
    if kind == Kind::Fermi && level_is_empty(kind, d, nmax) && nmax.pow(nmax as u32) <= SYMMETRIZER_CAP {
        // Level nmax vanishes on this window; evaluate on nmax modes instead.
        let wide = build_standard(kind, ModeWindow::new(0, nmax as i64 - 1)?);
        let p = check_psquare(&wide, nmax)?;
        report.push(Check::equals(
            format!("‖P^({nmax})‖ = {} on {nmax} modes", p.factorial),
            p.norm,
            p.factorial,
            NORM_TOL,
        ));
    }

    let fock = build_fock(&t, nmax)?;
    for n in 0..=nmax {
        report.push(Check::equals(
            format!("rank of level {n}"),
            fock.level_dims()[n] as f64,
            expected_level_dim(kind, d, n) as f64,
            RANK_TOL,
        ));
    }
    let mut wick: f64 = 0.0;
    for i in window.modes() {
        for j in window.modes() {
            wick = wick.max(wick_residual(&fock, &t, i, j)?);
        }
    }
    report.push(Check::vanishes("Wick identity", wick, tol));

    let m = fock.m_t_estimate();
    match kind {
        Kind::Bose | Kind::Fermi => {
            report.values.insert("M_T".into(), format!("{m:.12}"));
        }
        _ => report.push(Check::at_most("M_T ≤ 1", m, 1.0, tol)),
    }
    for n in 0..nmax {
        let f = random_unit(&mut rng, d);
        let c = creator_norm_check(&fock, &f, n)?;
        report.push(Check::at_most(
            format!("‖a†(f)‖ on level {n} ≤ ‖R^({})‖^½", n + 1),
            c.lhs,
            c.bound,
            tol,
        ));
    }

    if d >= 2 {
        let u = transposition(window, window.lo, window.lo + 1)?;
        let label = format!("({} {})", window.lo, window.lo + 1);
        match kind {
            Kind::Monotone | Kind::Antimonotone => {
                report.push(Check::vanishes(
                    "translation covariance",
                    translation_covariance_residual(&t)?,
                    tol,
                ));
                report.push(Check::at_least(
                    format!("permutation commutant residual {label} > 0.5"),
                    commutant_residual(&t, &u)?,
                    0.5,
                    0.0,
                ));
            }
            _ => report.push(Check::vanishes(
                format!("Bogoliubov covariance {label}"),
                bogoliubov_covariance_check(&fock, &u)?,
                tol,
            )),
        }
    }
    match kind {
        Kind::Monotone => {
            let explicit = specialized_monotone_fock(window, Some(nmax))?;
            let r = intertwining(&explicit, &fock)?;
            report.push(Check::vanishes("explicit basis isometry", r.isometry, tol));
            report.push(Check::vanishes("explicit basis creators", r.creators, tol));
        }
        Kind::Boolean => {
            let r = intertwining(&specialized_boolean_fock(window), &fock)?;
            report.push(Check::vanishes("explicit basis isometry", r.isometry, tol));
            report.push(Check::vanishes("explicit basis creators", r.creators, tol));
            report.push(Check::vanishes("Boolean relations", verify_boolrel(window)?.max(), tol));
        }
        _ => {}
    }
    Ok(report)
}

fn required(cfg: &ExperimentConfig) -> Result<&str> {
    cfg.observable
        .as_deref()
        .ok_or_else(|| Error::Invalid("an observable is required (--observable)".into()))
}

fn default_ns(cfg: &ExperimentConfig) -> Vec<usize> {
    cfg.n.clone().unwrap_or_else(|| (1..=20).collect())
}

fn fock_model(kind: Kind, window: ModeWindow, nmax: usize) -> Result<Box<dyn FockModel>> {
    Ok(match kind {
        Kind::Monotone => Box::new(specialized_monotone_fock(window, Some(nmax))?),
        Kind::Boolean => Box::new(specialized_boolean_fock(window)),
        _ => Box::new(build_fock(&build_standard(kind, window), nmax)?),
    })
}

/// Cesàro curve of an observable under the shift.
pub fn ergodic(cfg: &ExperimentConfig) -> Result<MixingCurve> {
    let obs = required(cfg)?;
    let ns = default_ns(cfg);
    let top = *ns.iter().max().expect("nonempty list");
    if cfg.model == Kind::Boolean {
        return boolean_ergodic(cfg, obs, &ns, top);
    }
    let word = parse_word(obs)?;
    let (lo, hi) = word.support().unwrap_or((0, 0));
    let window = match cfg.window {
        Some(w) => w,
        // Every shift plus one spare mode above them.
        None => ModeWindow::new(lo, hi + top as i64)?,
    };
    let model = fock_model(cfg.model, window, cfg.nmax.unwrap_or(DEFAULT_ERGODIC_NMAX))?;
    let dims = model.level_dims().to_vec();
    match cfg.target.as_deref().unwrap_or("omega") {
        "omega" => unique_mixing_curve(model.as_ref(), &word, &ns),
        "vacuum-projection" => {
            cesaro_distance(model.as_ref(), &word, &FockOperator::vacuum_projection(&dims), &ns)
        }
        "zero" => cesaro_distance(model.as_ref(), &word, &FockOperator::zero(&dims), &ns),
        "identity" => cesaro_distance(model.as_ref(), &word, &FockOperator::identity(&dims), &ns),
        other => Err(Error::Invalid(format!(
            "unknown target `{other}`; use omega, vacuum-projection, zero or identity"
        ))),
    }
}

fn parse_site(text: &str) -> Result<Site> {
    let bad = || Error::Invalid(format!("`{text}` is not a site; use e_# or e_<mode>"));
    let rest = text.trim().strip_prefix("e_").ok_or_else(bad)?;
    if rest == "#" {
        Ok(Site::Vacuum)
    } else {
        rest.parse().map(Site::Mode).map_err(|_| bad())
    }
}

/// A Boolean observable: `rank-one e_X,e_Y` for `|e_X⟩⟨e_Y|`, or a polynomial in letters.
enum BooleanObservable {
    RankOne(Site, Site),
    Polynomial(Vec<(C64, crate::word::ObservableWord)>),
}

impl BooleanObservable {
    fn parse(text: &str) -> Result<Self> {
        if let Some(rest) = text.trim().strip_prefix("rank-one") {
            let (a, b) = rest
                .split_once(',')
                .ok_or_else(|| Error::Invalid("rank-one needs two sites `e_X,e_Y`".into()))?;
            return Ok(Self::RankOne(parse_site(a)?, parse_site(b)?));
        }
        Ok(Self::Polynomial(parse_expression::<C64>(text)?.terms))
    }

    fn support(&self) -> Option<(i64, i64)> {
        let modes: Vec<i64> = match self {
            Self::RankOne(a, b) => [a, b]
                .into_iter()
                .filter_map(|s| match s {
                    Site::Mode(m) => Some(*m),
                    Site::Vacuum => None,
                })
                .collect(),
            Self::Polynomial(terms) => terms
                .iter()
                .filter_map(|(_, w)| w.support())
                .flat_map(|(a, b)| [a, b])
                .collect(),
        };
        Some((*modes.iter().min()?, *modes.iter().max()?))
    }

    fn build(&self, window: ModeWindow) -> Result<BooleanOp> {
        match self {
            Self::RankOne(a, b) => BooleanOp::rank_one(window, *a, *b),
            Self::Polynomial(terms) => {
                let fock = specialized_boolean_fock(window);
                let mut x = BooleanOp::zero(window);
                for (c, w) in terms {
                    if w.is_identity() {
                        x.scalar += c;
                    } else {
                        x.compact += fock.word_operator(w)?.to_dense() * *c;
                    }
                }
                Ok(x)
            }
        }
    }
}

fn boolean_ergodic(cfg: &ExperimentConfig, obs: &str, ns: &[usize], top: usize) -> Result<MixingCurve> {
    if let Some(t) = cfg.target.as_deref() {
        if t != "expectation" {
            return Err(Error::Invalid(format!(
                "the Boolean model averages towards E(X); target `{t}` is not supported"
            )));
        }
    }
    let x = BooleanObservable::parse(obs)?;
    let subseq = cfg.subseq.clone().unwrap_or_else(|| (1..=top as i64).collect());
    if subseq.len() < top {
        return Err(Error::Invalid(format!(
            "subsequence has {} terms, {top} are needed",
            subseq.len()
        )));
    }
    let used = &subseq[..top];
    let (lo, hi) = x.support().unwrap_or((0, 0));
    let window = match cfg.window {
        Some(w) => w,
        None => ModeWindow::new(
            lo + used.iter().copied().min().unwrap_or(0).min(0),
            hi + used.iter().copied().max().unwrap_or(0).max(0),
        )?,
    };
    e_mixing_curve(&x.build(window)?, used, ns)
}

fn parse_gamma<C: Coefficient>(g: &str) -> Result<C> {
    let (neg, digits) = match g.trim().strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, g.trim()),
    };
    let v = C::from_decimal(digits).ok_or_else(|| Error::Invalid(format!("bad γ `{g}`")))?;
    Ok(if neg { -v } else { v })
}

/// Normal form and state values of a monotone expression.
pub fn reduce(expr: &str, gamma: Option<&str>) -> Result<String> {
    let p = parse_polynomial(expr)?;
    let mut line = format!(
        "{p}; ω={}; ω_∞={}",
        vacuum_state(&p).render(),
        infinity_state(&p).render()
    );
    if let Some(g) = gamma {
        let g: Exact = parse_gamma(g)?;
        line += &format!("; φ={}", invariant_state(&g, &p)?.render());
    }
    Ok(line)
}

/// Invariant-state checks on the monotone or Boolean model.
pub fn states(cfg: &ExperimentConfig) -> Result<Report> {
    let obs = required(cfg)?;
    let gammas: Vec<String> = cfg
        .gamma
        .clone()
        .unwrap_or_else(|| DEFAULT_GAMMAS.iter().map(|s| s.to_string()).collect());
    let mut report = Report::new("states", cfg.seed, cfg.summary());
    match cfg.model {
        Kind::Monotone => monotone_states(&mut report, obs, &gammas, cfg.tol)?,
        Kind::Boolean => boolean_states(&mut report, cfg, obs, &gammas)?,
        other => {
            return Err(Error::Invalid(format!(
                "states supports the monotone and boolean models, not {other}"
            )))
        }
    }
    Ok(report)
}

fn monotone_states(report: &mut Report, obs: &str, gammas: &[String], tol: f64) -> Result<()> {
    let p = parse_polynomial(obs)?;
    let (lo, hi) = p.support().unwrap_or((0, 0));
    let window = ModeWindow::new(lo - 1, hi + 1)?;
    let at_infinity = infinity_witness(&p, window)?;
    let at_vacuum = vacuum_expectation(&p)?;
    let square = p.adjoint().mul(&p);
    report.values.insert("normal form".into(), p.to_string());
    report.values.insert("ω".into(), vacuum_state(&p).render());
    report.values.insert("ω_∞".into(), infinity_state(&p).render());
    for g in gammas {
        let gamma: Exact = parse_gamma(g)?;
        let phi = invariant_state(&gamma, &p)?;
        report.values.insert(format!("φ_{g}"), phi.render());
        let shifted = invariant_state(&gamma, &p.shift(1))?;
        report.push(Check::vanishes(
            format!("φ_{g} shift invariance"),
            (shifted - phi.clone()).to_c64().norm(),
            0.0,
        ));
        let gf = gamma.to_c64();
        let numeric = at_infinity * (1.0 - gf) + at_vacuum * gf;
        report.push(Check::vanishes(
            format!("φ_{g} against matrices"),
            (phi.to_c64() - numeric).norm(),
            tol,
        ));
        report.push(Check::at_least(
            format!("φ_{g}(p*p) ≥ 0"),
            invariant_state(&gamma, &square)?.to_c64().re,
            0.0,
            tol,
        ));
    }
    Ok(())
}

fn boolean_states(report: &mut Report, cfg: &ExperimentConfig, obs: &str, gammas: &[String]) -> Result<()> {
    let tol = cfg.tol;
    let x = BooleanObservable::parse(obs)?;
    let (lo, hi) = x.support().unwrap_or((0, 0));
    let window = match cfg.window {
        Some(w) => w,
        None => ModeWindow::new(lo, hi.max(lo + 1) + 1)?,
    };
    let op = x.build(window)?;
    let shifted = shift_op(&op, 1)?;
    let mut g: Vec<usize> = (0..window.dim()).collect();
    g.swap(0, 1);
    let permuted = permutation_op(&op, &g)?;
    let e = conditional_expectation(&op);
    report.push(Check::vanishes(
        "E idempotent",
        (&conditional_expectation(&e) - &e).norm(),
        tol,
    ));
    report.push(Check::vanishes("E(X) is a fixed point", fixed_point_membership(&e), tol));
    let fock = specialized_boolean_fock(window);
    let vacuum = fock.vacuum();
    let direct = op.to_dense();
    let on_vacuum = (direct.adjoint() * &vacuum).dotc(&vacuum).conj();
    let fock_side = match &x {
        BooleanObservable::Polynomial(terms) => terms.iter().try_fold(c64(0.0, 0.0), |acc, (c, w)| {
            Ok::<_, Error>(acc + fock.word_operator(w)?.expectation(&vacuum) * c)
        })?,
        BooleanObservable::RankOne(..) => on_vacuum,
    };
    report.push(Check::vanishes(
        "ω_# against Fock vacuum",
        (boolean_invariant_state(1.0, &op)? - fock_side).norm(),
        tol,
    ));
    for gs in gammas {
        let gamma: f64 = parse_gamma::<C64>(gs)?.re;
        let v = boolean_invariant_state(gamma, &op)?;
        report.values.insert(format!("φ_{gs}"), format!("{:.12}", v.re));
        report.push(Check::vanishes(
            format!("φ_{gs} shift invariance"),
            (boolean_invariant_state(gamma, &shifted)? - v).norm(),
            tol,
        ));
        report.push(Check::vanishes(
            format!("φ_{gs} permutation invariance"),
            (boolean_invariant_state(gamma, &permuted)? - v).norm(),
            tol,
        ));
    }
    Ok(())
}

/// One check per input report: the number of failed checks it contains.
pub fn aggregate(files: &[PathBuf]) -> Result<Report> {
    let mut summary = Report::new("report", 0, Default::default());
    summary
        .config
        .insert("files".into(), files.iter().map(|p| p.display().to_string()).join(","));
    for path in files {
        let text = std::fs::read_to_string(path)?;
        let r: Report = serde_json::from_str(&text)?;
        if r.schema != crate::cli::report::SCHEMA {
            return Err(Error::Invalid(format!(
                "{} has schema {}, expected {}",
                path.display(),
                r.schema,
                crate::cli::report::SCHEMA
            )));
        }
        let failed = r.failures() as f64;
        summary.push(Check {
            name: format!("{} ({})", path.display(), r.command),
            value: failed,
            expected: 0.0,
            residual: failed,
            tolerance: 0.0,
            pass: r.pass && failed == 0.0,
        });
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::from_map;
    use std::collections::BTreeMap;

    fn cfg(pairs: &[(&str, &str)]) -> ExperimentConfig {
        let m: BTreeMap<String, String> = pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        from_map(&m).unwrap()
    }

    #[test]
    fn level_counts() {
        assert_eq!(expected_level_dim(Kind::Bose, 3, 2), 6);
        assert_eq!(expected_level_dim(Kind::Fermi, 3, 4), 0);
        assert_eq!(expected_level_dim(Kind::Boolean, 3, 1), 3);
        assert_eq!(expected_level_dim(Kind::Boolean, 3, 2), 0);
        assert_eq!(expected_level_dim(Kind::Free, 3, 3), 27);
    }

    #[test]
    fn verify_suites_pass() {
        for kind in Kind::ALL {
            let r = verify(&cfg(&[("model", kind.name())])).unwrap();
            assert!(r.pass, "{kind}: {:?}", r.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
        }
    }

    #[test]
    fn verify_names() {
        let r = verify(&cfg(&[("model", "boolean")])).unwrap();
        assert!(r.checks.iter().any(|c| c.name == "P^(2)=0"));
        let r = verify(&cfg(&[("model", "fermi"), ("nmax", "5")])).unwrap();
        let c = r.checks.iter().find(|c| c.name.starts_with("‖P^(5)‖ = 120")).unwrap();
        assert!(c.pass && c.expected == 120.0);
    }

    #[test]
    fn reduce_lines() {
        assert_eq!(reduce("a(1)c(1)a(3)", None).unwrap(), "a(3); ω=0; ω_∞=0");
        assert!(reduce("2*1 + 3*a(5)c(5)", Some("0.5")).unwrap().ends_with("φ=3.5"));
        assert!(reduce("c(2)c(1)", None).unwrap().starts_with("0;"));
        assert!(matches!(reduce("1", Some("-0.5")), Err(Error::GammaOutOfRange(_))));
    }

    #[test]
    fn ergodic_curves() {
        let c = ergodic(&cfg(&[("model", "monotone"), ("observable", "a(0)c(0)"), ("target", "vacuum-projection"), ("n", "1..25")])).unwrap();
        assert!(c.entries.iter().all(|e| (e.distance - 1.0).abs() < 1e-12));
        let c = ergodic(&cfg(&[("model", "boolean"), ("observable", "rank-one e_0,e_#"), ("n", "1,4,100")])).unwrap();
        for e in &c.entries {
            assert!((e.distance - 1.0 / (e.n as f64).sqrt()).abs() < 1e-12);
        }
        let c = ergodic(&cfg(&[("model", "free"), ("observable", "c(0)a(1)"), ("n", "1..8")])).unwrap();
        assert!(c.within_bounds(1e-10));
        let err = ergodic(&cfg(&[("observable", "a(0)c(0)"), ("window", "0..3"), ("n", "1..10")])).unwrap_err();
        assert!(err.to_string().contains("0..9"), "{err}");
    }

    #[test]
    fn states_reports() {
        let r = states(&cfg(&[("model", "monotone"), ("observable", "2 + 3*a(5)c(5) + c(1)a(0)")])).unwrap();
        assert!(r.pass);
        assert_eq!(r.values["φ_0.5"], "3.5");
        let r = states(&cfg(&[("model", "boolean"), ("observable", "2 + a(0)c(0)"), ("gamma", "0.3")])).unwrap();
        assert!(r.pass, "{:?}", r.checks);
        assert_eq!(r.values["φ_0.3"], "2.300000000000");
        assert!(states(&cfg(&[("model", "bose"), ("observable", "1")])).is_err());
    }
}
