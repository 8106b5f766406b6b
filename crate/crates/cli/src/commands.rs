use std::fmt;
use std::path::Path;

use ordinarity_core::artin_schreier::{census_analytic, census_enumerated, ASCover};
use ordinarity_core::dirichlet::{constants_report_with, table1};
use ordinarity_core::prank_oracle::{cross_validate, Cover, CrossReport};
use ordinarity_core::superelliptic::{
    census_se_analytic, census_se_enumerated, compare_routes, random_covers,
    symmetry_criterion_exact, verify_kernel_lemma, SECover,
};
use ordinarity_core::{CensusTable, Error, FieldSpec};
use serde::Serialize;

use crate::output::{Format, Report};
use crate::{Bound, CensusFamily, Command, Mode};

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(s) => write!(f, "{s}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Io(_) => 1,
        CliError::Core(Error::Domain(_) | Error::Parse(_)) => 2,
        CliError::Core(Error::Resource { .. }) => 3,
        CliError::Core(Error::Invariant(_)) => 4,
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Core(Error::Domain(msg.into())))
}

pub fn run(cmd: &Command, _format: Format) -> Result<Report> {
    match cmd {
        Command::Constants {
            q,
            p,
            truncation_degree,
        } => constants(*q, *p, *truncation_degree),
        Command::Census { family } => match family {
            CensusFamily::As {
                q,
                p,
                bound,
                include_infinity,
                mode,
            } => census_as(*q, *p, *bound, *include_infinity, *mode),
            CensusFamily::Se {
                q,
                n,
                bound,
                mode,
                routes,
            } => {
                if *routes {
                    se_routes(*q, *n, *bound)
                } else {
                    census_se(*q, *n, *bound, *mode)
                }
            }
        },
        Command::Classify { cover } => classify(cover),
        Command::Oracle { cover } => oracle(cover),
        Command::Sample {
            q,
            n,
            count,
            max_degree,
            seed,
            oracle,
        } => sample(*q, *n, *count, *max_degree, *seed, *oracle),
        Command::VerifyKernel { n } => verify_kernel(*n),
        Command::ReportTable1 => report_table1(),
    }
}

fn field_for(q: u64, p: u32) -> Result<FieldSpec> {
    let f = FieldSpec::from_q(q)?;
    if f.p() != p {
        return usage(format!("q = {q} is not a power of p = {p}"));
    }
    Ok(f)
}

/// Largest `m` with `q^m < X`, or the explicit `--max-m`.
fn m_max(q: u64, b: Bound) -> Result<Option<u32>> {
    match (b.max_m, b.x_bound) {
        (Some(m), None) => Ok(Some(m)),
        (None, Some(x)) => {
            if !(x.is_finite() && x > 0.0) {
                return usage(format!("--x-bound must be positive, got {x}"));
            }
            let mut m: Option<u32> = None;
            let mut qm = 1.0f64;
            while qm < x {
                m = Some(m.map_or(0, |v| v + 1));
                qm *= q as f64;
            }
            Ok(m)
        }
        _ => usage("give exactly one of --max-m and --x-bound"),
    }
}

fn num(v: f64) -> String {
    format!("{v}")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or(String::new(), T::to_string)
}

fn constants(q: u64, p: u32, d: Option<u32>) -> Result<Report> {
    let r = constants_report_with(q, p, d)?;
    let header = [
        "q",
        "p",
        "phi1",
        "psi_p1",
        "zeta2",
        "P_AS_unramified",
        "P_AS_modified",
        "P_AS_modified_census",
        "cezb",
        "truncation_degree",
        "error_bound",
    ];
    let row = vec![
        r.q.to_string(),
        r.p.to_string(),
        r.phi1.map_or(String::new(), num),
        num(r.psi_p1),
        num(r.zeta2),
        num(r.p_as_unramified),
        num(r.p_as_modified),
        num(r.p_as_modified_census),
        num(r.cezb),
        r.truncation_degree.to_string(),
        num(r.error_bound),
    ];
    Ok(Report::new(&r, &header, vec![row]))
}

#[derive(Serialize)]
struct CensusRowOut {
    m: u32,
    genus: Option<u64>,
    a_m: String,
    b_m: String,
    cumulative_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a_m_enumerated: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b_m_enumerated: Option<String>,
}

#[derive(Serialize)]
struct CensusOut {
    family: String,
    q: u64,
    /// `p` for Artin-Schreier, `n` for superelliptic.
    degree: u32,
    mode: &'static str,
    m_max: Option<u32>,
    rows: Vec<CensusRowOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    routes_agree: Option<bool>,
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Analytic => "analytic",
        Mode::Enumerate => "enumerate",
        Mode::Both => "both",
    }
}

/// `m = 2g/(k-1) + 2` inverted, for `k` the cover degree.
fn genus_at(m: u32, k: u32) -> Option<u64> {
    if m < 2 {
        return None;
    }
    let twice = (k as u64 - 1) * (m as u64 - 2);
    (twice % 2 == 0).then_some(twice / 2)
}

fn census_report(
    family: &str,
    q: u64,
    degree: u32,
    mode: Mode,
    m_max: Option<u32>,
    primary: Option<CensusTable>,
    secondary: Option<CensusTable>,
) -> Report {
    let rows: Vec<CensusRowOut> = primary
        .as_ref()
        .map(|t| {
            t.rows
                .iter()
                .enumerate()
                .map(|(i, r)| CensusRowOut {
                    m: r.m,
                    genus: genus_at(r.m, degree),
                    a_m: r.a.to_string(),
                    b_m: r.b.to_string(),
                    cumulative_ratio: t.cumulative_ratio(r.m),
                    a_m_enumerated: secondary.as_ref().map(|s| s.rows[i].a.to_string()),
                    b_m_enumerated: secondary.as_ref().map(|s| s.rows[i].b.to_string()),
                })
                .collect()
        })
        .unwrap_or_default();
    let agree = secondary
        .as_ref()
        .map(|s| primary.as_ref().is_some_and(|p| p.same_counts(s)));
    let mut header = vec!["m", "a_m", "b_m", "cumulative_ratio"];
    if mode == Mode::Both {
        header.extend(["a_m_enumerated", "b_m_enumerated"]);
    }
    let csv_rows = rows
        .iter()
        .map(|r| {
            let mut v = vec![r.m.to_string(), r.a_m.clone(), r.b_m.clone(), opt(&r.cumulative_ratio)];
            if mode == Mode::Both {
                v.push(opt(&r.a_m_enumerated));
                v.push(opt(&r.b_m_enumerated));
            }
            v
        })
        .collect();
    let out = CensusOut {
        family: family.to_string(),
        q,
        degree,
        mode: mode_name(mode),
        m_max,
        rows,
        routes_agree: agree,
    };
    Report::new(&out, &header, csv_rows).failing_if(
        agree == Some(false),
        "analytic and enumerated censuses disagree",
    )
}

fn census_as(q: u64, p: u32, bound: Bound, inf: bool, mode: Mode) -> Result<Report> {
    let f = field_for(q, p)?;
    let m = m_max(q, bound)?;
    let family = if inf {
        "artin-schreier-modified"
    } else {
        "artin-schreier"
    };
    // No cover has fewer than two branch points; below that the table is empty.
    let (primary, secondary) = match m.filter(|&m| m >= 2) {
        None => (None, None),
        Some(m) => match mode {
            Mode::Analytic => (Some(census_analytic(q, m, inf)?), None),
            Mode::Enumerate => (Some(census_enumerated(&f, m, inf)?), None),
            Mode::Both => (
                Some(census_analytic(q, m, inf)?),
                Some(census_enumerated(&f, m, inf)?),
            ),
        },
    };
    Ok(census_report(family, q, p, mode, m, primary, secondary))
}

fn census_se(q: u64, n: u32, bound: Bound, mode: Mode) -> Result<Report> {
    let f = FieldSpec::from_q(q)?;
    let m = m_max(q, bound)?;
    let (primary, secondary) = match m {
        None => (None, None),
        Some(m) => match mode {
            Mode::Analytic => (Some(census_se_analytic(q, n, m)?), None),
            Mode::Enumerate => (Some(census_se_enumerated(&f, n, m)?), None),
            Mode::Both => (
                Some(census_se_analytic(q, n, m)?),
                Some(census_se_enumerated(&f, n, m)?),
            ),
        },
    };
    Ok(census_report("superelliptic", q, n, mode, m, primary, secondary))
}

fn se_routes(q: u64, n: u32, bound: Bound) -> Result<Report> {
    let f = FieldSpec::from_q(q)?;
    let Some(m) = m_max(q, bound)? else {
        return usage("--x-bound leaves no m to tabulate");
    };
    let r = compare_routes(&f, n, m)?;
    let rows = r
        .rows
        .iter()
        .map(|x| vec![x.m.to_string(), x.tuples.to_string(), x.omega.to_string(), x.euler.to_string()])
        .collect();
    Ok(Report::new(&r, &["m", "tuples", "omega", "euler"], rows)
        .failing_if(!r.agree, "the three Dirichlet-coefficient routes disagree"))
}

enum LoadedCover {
    As(ASCover),
    Se(SECover),
}

fn load_cover(path: &Path) -> Result<LoadedCover> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if value.get("n").is_some() {
        Ok(LoadedCover::Se(SECover::from_json(&text)?))
    } else {
        Ok(LoadedCover::As(ASCover::from_json(&text)?))
    }
}

#[derive(Serialize)]
struct AsClassification {
    family: &'static str,
    q: u64,
    p: u32,
    m: u64,
    genus: u64,
    ordinary: bool,
    pole_orders: Vec<(String, usize)>,
    pole_order_at_infinity: Option<usize>,
}

#[derive(Serialize)]
struct SeClassification {
    family: &'static str,
    q: u64,
    n: u32,
    m: u64,
    genus: u64,
    degrees: Vec<usize>,
    n_infinity: u32,
    epsilon: u32,
    eigen_degrees: Vec<u64>,
    a_number: Option<u64>,
    ordinary_by_criterion: Option<bool>,
    criterion_exact: bool,
}

fn classify_se(c: &SECover) -> Result<SeClassification> {
    let p = c.field().p();
    Ok(SeClassification {
        family: "superelliptic",
        q: c.field().q() as u64,
        n: c.n(),
        m: c.m(),
        genus: c.genus()?,
        degrees: c.degrees(),
        n_infinity: c.n_infinity(),
        epsilon: c.epsilon(),
        eigen_degrees: c.eigen_degrees()?.d,
        a_number: (p == 2).then(|| c.a_number()).transpose()?,
        ordinary_by_criterion: (p == 2).then(|| c.is_ordinary()).transpose()?,
        criterion_exact: symmetry_criterion_exact(c.n(), p),
    })
}

fn classify(path: &Path) -> Result<Report> {
    match load_cover(path)? {
        LoadedCover::As(c) => {
            let out = AsClassification {
                family: if c.infinity().is_some() {
                    "artin-schreier-modified"
                } else {
                    "artin-schreier"
                },
                q: c.field().q() as u64,
                p: c.p(),
                m: c.m_invariant(),
                genus: c.genus(),
                ordinary: c.is_ordinary(),
                pole_orders: c.pole_orders().map(|(q, d)| (q.to_string(), d)).collect(),
                pole_order_at_infinity: c.pole_order_at_infinity(),
            };
            let row = vec![
                out.family.to_string(),
                out.q.to_string(),
                out.p.to_string(),
                out.m.to_string(),
                out.genus.to_string(),
                out.ordinary.to_string(),
            ];
            Ok(Report::new(&out, &["family", "q", "p", "m", "genus", "ordinary"], vec![row]))
        }
        LoadedCover::Se(c) => {
            let out = classify_se(&c)?;
            let row = vec![
                out.family.to_string(),
                out.q.to_string(),
                out.n.to_string(),
                out.m.to_string(),
                out.genus.to_string(),
                opt(&out.a_number),
                opt(&out.ordinary_by_criterion),
            ];
            Ok(Report::new(
                &out,
                &["family", "q", "n", "m", "genus", "a_number", "ordinary"],
                vec![row],
            ))
        }
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

const ORACLE_HEADER: [&str; 7] = [
    "family",
    "genus",
    "counts",
    "l_coefficients",
    "p_rank",
    "ordinary_by_criterion",
    "agree",
];

fn oracle_row(r: &CrossReport) -> Vec<String> {
    vec![
        r.family.to_string(),
        r.genus.to_string(),
        join(&r.counts),
        join(&r.l_coefficients),
        r.p_rank.to_string(),
        r.ordinary_by_criterion.to_string(),
        r.agree.to_string(),
    ]
}

fn oracle(path: &Path) -> Result<Report> {
    let cover = match load_cover(path)? {
        LoadedCover::As(c) => Cover::ArtinSchreier(c),
        LoadedCover::Se(c) => Cover::Superelliptic(c),
    };
    let r = cross_validate(&cover)?;
    let msg = format!("oracle disagrees with the classification of {}", r.cover);
    Ok(Report::new(&r, &ORACLE_HEADER, vec![oracle_row(&r)]).failing_if(!r.agree, msg))
}

#[derive(Serialize)]
struct Sampled {
    parts: Vec<String>,
    classification: SeClassification,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<CrossReport>,
}

#[derive(Serialize)]
struct SampleOut {
    q: u64,
    n: u32,
    seed: u64,
    covers: Vec<Sampled>,
}

fn sample(q: u64, n: u32, count: usize, max_degree: usize, seed: u64, run_oracle: bool) -> Result<Report> {
    let f = FieldSpec::from_q(q)?;
    let covers = random_covers(&f, n, max_degree, count, seed)?;
    let mut out = Vec::with_capacity(covers.len());
    let mut disagreements = 0;
    for c in covers {
        let classification = classify_se(&c)?;
        let oracle = if run_oracle {
            let r = cross_validate(&Cover::Superelliptic(c.clone()))?;
            disagreements += (!r.agree) as usize;
            Some(r)
        } else {
            None
        };
        out.push(Sampled {
            parts: c.parts().iter().map(|p| p.to_text()).collect(),
            classification,
            oracle,
        });
    }
    let rows = out
        .iter()
        .map(|s| {
            vec![
                s.parts.join(";"),
                s.classification.m.to_string(),
                s.classification.genus.to_string(),
                opt(&s.classification.a_number),
                opt(&s.classification.ordinary_by_criterion),
                s.oracle.as_ref().map_or(String::new(), |r| r.p_rank.to_string()),
            ]
        })
        .collect();
    let report = SampleOut {
        q,
        n,
        seed,
        covers: out,
    };
    Ok(Report::new(&report, &["parts", "m", "genus", "a_number", "ordinary", "p_rank"], rows)
        .failing_if(disagreements > 0, format!("{disagreements} oracle disagreements")))
}

fn verify_kernel(n: u32) -> Result<Report> {
    let r = verify_kernel_lemma(n)?;
    let row = vec![
        r.n.to_string(),
        r.rank.to_string(),
        r.expected_rank.to_string(),
        r.kernel_dimension.to_string(),
        r.basis_in_kernel.to_string(),
        r.kernel_symmetric.to_string(),
        r.passed.to_string(),
    ];
    let header = [
        "n",
        "rank",
        "expected_rank",
        "kernel_dimension",
        "basis_in_kernel",
        "kernel_symmetric",
        "passed",
    ];
    Ok(Report::new(&r, &header, vec![row]).failing_if(!r.passed, format!("kernel check failed for n = {n}")))
}

fn report_table1() -> Result<Report> {
    let rows = table1()?;
    let header = [
        "q",
        "phi1",
        "phi1_published",
        "phi1_deviation",
        "P_AS",
        "P_AS_published",
        "P_AS_deviation",
        "cezb",
        "cezb_published",
        "cezb_deviation",
    ];
    let csv = rows
        .iter()
        .map(|r| {
            vec![
                r.q.to_string(),
                num(r.phi1),
                num(r.phi1_published),
                num(r.phi1_deviation),
                num(r.p_as),
                num(r.p_as_published),
                num(r.p_as_deviation),
                num(r.cezb),
                num(r.cezb_published),
                num(r.cezb_deviation),
            ]
        })
        .collect();
    Ok(Report::new(&rows, &header, csv))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bound(max_m: Option<u32>, x: Option<f64>) -> Bound {
        Bound { max_m, x_bound: x }
    }

    #[test]
    fn x_bound_conversion() {
        assert_eq!(m_max(2, bound(None, Some(1025.0))).unwrap(), Some(10));
        assert_eq!(m_max(2, bound(None, Some(1024.0))).unwrap(), Some(9));
        assert_eq!(m_max(3, bound(None, Some(1.0))).unwrap(), None);
        assert_eq!(m_max(3, bound(Some(7), None)).unwrap(), Some(7));
        assert!(m_max(3, bound(None, Some(-1.0))).is_err());
    }

    #[test]
    fn genus_columns() {
        assert_eq!(genus_at(2, 2), Some(0));
        assert_eq!(genus_at(6, 2), Some(2));
        assert_eq!(genus_at(5, 2), None);
        assert_eq!(genus_at(5, 3), Some(3));
        assert_eq!(genus_at(0, 3), None);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&CliError::Core(Error::Domain("x".into()))), 2);
        assert_eq!(
            exit_code(&CliError::Core(Error::Resource {
                what: "x".into(),
                requested: 2,
                limit: 1
            })),
            3
        );
        assert_eq!(exit_code(&CliError::Core(Error::Invariant("x".into()))), 4);
    }
}
