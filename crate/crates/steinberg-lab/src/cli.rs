//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on a usage or
//! input error. JSON output has sorted keys and is byte-identical across
//! runs with the same arguments.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::Error;
use crate::functor::{derived_limit_dims, make_standard_functor, PosetFunctor, StandardKind};
use crate::pf::{ephi_doubling_check, generation_check, m_of_v_capped, steinberg_dual_intertwiner};
use crate::resolutions::{
    be1_check, bicomplex_i, ext_dims, inj_resolution_simple, klim_bridge, oliver_complex, proj_resolution_simple,
};
use crate::steenrod::{a_stability_check, serre_radical_check, FormProduct, GradedIdeal, TruncatedPolyAlgebra};
use crate::steinberg::{euler_recursion_dims, lusztig_complex, mutate, steinberg_capped, LusztigComplex, LusztigVariant};
use crate::subspace::{enumerate_subspaces, Poset, PosetKind};

/// Default cap on `n`.
pub const N_CAP: usize = 3;
/// Default cap on the polynomial degree.
pub const DEGREE_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "steinberg-lab", version, about = "Steinberg modules, derived limits and M(V;h) over F2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Dimension of V = F2^n.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Power h in c_V^h.
    #[arg(long, global = true)]
    pub h: Option<usize>,
    /// Cohomological degree.
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Largest polynomial degree.
    #[arg(long, global = true)]
    pub maxdeg: Option<usize>,
    /// Lusztig complex variant (1 or 2).
    #[arg(long, global = true)]
    pub variant: Option<u8>,
    /// Functor file (JSON).
    #[arg(long, global = true)]
    pub functor: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Lift the caps n <= 3 and maxdeg <= 12.
    #[arg(long, global = true)]
    pub unsafe_caps: bool,
    /// Flip one seeded entry of a Lusztig differential before checking.
    #[arg(long, global = true)]
    pub mutate: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Dimension of the Steinberg module of F2^n.
    Steinberg,
    /// Acyclicity and d∘d = 0 for a Lusztig complex.
    LusztigCheck,
    /// Derived limits of a functor.
    Limk,
    /// Ext^k(S_0, F) for a functor on the full lattice.
    Ext,
    /// Resolutions of a functor (or of all simples when no functor is given).
    Resolve,
    /// Bicomplex identities and the E_1 comparison.
    BicomplexCheck,
    /// Graded dimensions of M(V;h).
    Mvh,
    /// Generation, doubling and Steinberg-dual checks for M(V;h).
    VerifyMv,
    /// Structural checks up to n.
    Verify,
    /// Radical and Steenrod-stability checks for products of forms.
    RadicalCheck,
}

/// What a command produced.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) | Error::NotAComplex(_) => Self::Verification(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }
}

struct Report {
    value: Value,
    ok: bool,
    csv: Option<String>,
}

impl Report {
    fn new(value: Value, ok: bool) -> Self {
        Self { value, ok, csv: None }
    }
}

type Handled = std::result::Result<Report, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    execute(&cli)
}

/// Runs an already parsed command line.
#[must_use]
pub fn execute(cli: &Cli) -> Outcome {
    let result = match cli.command {
        Command::Steinberg => steinberg_cmd(cli),
        Command::LusztigCheck => lusztig_cmd(cli),
        Command::Limk => limk_cmd(cli),
        Command::Ext => ext_cmd(cli),
        Command::Resolve => resolve_cmd(cli),
        Command::BicomplexCheck => bicomplex_cmd(cli),
        Command::Mvh => mvh_cmd(cli),
        Command::VerifyMv => verify_mv_cmd(cli),
        Command::Verify => verify_cmd(cli),
        Command::RadicalCheck => radical_cmd(cli),
    };
    let (code, body) = match result {
        Ok(report) => {
            if cli.format == Format::Csv && report.csv.is_none() {
                return usage("--format csv is only available for mvh");
            }
            let body = match (&cli.format, report.csv) {
                (Format::Csv, Some(csv)) => csv,
                _ => serde_json::to_string_pretty(&report.value).expect("serializable") + "\n",
            };
            (i32::from(!report.ok), body)
        }
        Err(Failure::Usage(msg)) => return usage(&msg),
        Err(Failure::Verification(msg)) => (1, serde_json::to_string_pretty(&json!({ "error": msg })).expect("json") + "\n"),
    };
    match &cli.out {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => usage(&format!("cannot write {}: {e}", path.display())),
        },
        None => Outcome { code, stdout: body, stderr: String::new() },
    }
}

fn usage(msg: &str) -> Outcome {
    Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    }
}

fn require_n(cli: &Cli, default: Option<usize>) -> std::result::Result<usize, Failure> {
    let n = cli.n.or(default).ok_or_else(|| Failure::Usage("--n is required".into()))?;
    if n > N_CAP && !cli.unsafe_caps {
        return Err(Failure::Usage(format!("--n {n} exceeds the cap {N_CAP}; pass --unsafe-caps")));
    }
    Ok(n)
}

fn require_maxdeg(cli: &Cli, default: usize) -> std::result::Result<usize, Failure> {
    let d = cli.maxdeg.unwrap_or(default);
    if d > DEGREE_CAP && !cli.unsafe_caps {
        return Err(Failure::Usage(format!("--maxdeg {d} exceeds the cap {DEGREE_CAP}; pass --unsafe-caps")));
    }
    Ok(d)
}

fn load_functor(cli: &Cli) -> std::result::Result<PosetFunctor, Failure> {
    let path = cli.functor.as_ref().ok_or_else(|| Failure::Usage("--functor is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let f = PosetFunctor::from_json(&value).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if f.poset().n() > N_CAP && !cli.unsafe_caps {
        return Err(Failure::Usage(format!("functor has n = {} above the cap {N_CAP}", f.poset().n())));
    }
    Ok(f)
}

fn steinberg_cmd(cli: &Cli) -> Handled {
    let n = require_n(cli, None)?;
    let st = steinberg_capped(n, if cli.unsafe_caps { n } else { N_CAP })?;
    Ok(Report::new(json!({ "n": n, "st_dim": st.dim() }), true))
}

fn lusztig_summary(lu: &LusztigComplex) -> (Value, bool) {
    let (squares, homology) = match lu.homology_dims() {
        Ok(h) => (true, Some(h)),
        Err(_) => (false, None),
    };
    let acyclic = homology.as_ref().is_some_and(|h| h.iter().all(|&x| x == 0));
    (
        json!({
            "n": lu.n,
            "variant": lu.variant as u8,
            "dims": lu.dims(),
            "d_squared_zero": squares,
            "homology": homology,
            "acyclic": acyclic,
        }),
        squares && acyclic,
    )
}

/// Flips one seeded entry of a nonempty boundary.
fn seeded_mutation(lu: &LusztigComplex, seed: u64) -> (LusztigComplex, Value) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates: Vec<usize> = (0..lu.boundaries.len())
        .filter(|&b| lu.boundaries[b].rows() > 0 && lu.boundaries[b].cols() > 0)
        .collect();
    let b = candidates[rng.gen_range(0..candidates.len())];
    let row = rng.gen_range(0..lu.boundaries[b].rows());
    let col = rng.gen_range(0..lu.boundaries[b].cols());
    (mutate(lu, b, row, col), json!({ "boundary_degree": b + 1, "row": row, "col": col }))
}

fn lusztig_cmd(cli: &Cli) -> Handled {
    let n = require_n(cli, None)?;
    let variant = LusztigVariant::from_index(cli.variant.unwrap_or(1))?;
    let mut lu = lusztig_complex(n, variant)?;
    let mut mutation = Value::Null;
    if let Some(seed) = cli.mutate {
        (lu, mutation) = seeded_mutation(&lu, seed);
    }
    let (mut v, ok) = lusztig_summary(&lu);
    if !mutation.is_null() {
        v["mutation"] = mutation;
    }
    Ok(Report::new(v, ok))
}

fn limk_cmd(cli: &Cli) -> Handled {
    let f = load_functor(cli)?;
    let dims = derived_limit_dims(&f);
    let mut v = json!({
        "poset": f.poset().kind().label(),
        "n": f.poset().n(),
        "dims": dims,
    });
    let mut ok = true;
    if f.poset().kind() == PosetKind::NonZero {
        let oliver = oliver_complex(&f)?.homology_dims();
        let at = |x: &[usize], k: usize| x.get(k).copied().unwrap_or(0);
        ok = (0..dims.len().max(oliver.len())).all(|k| at(&dims, k) == at(&oliver, k));
        v["oliver_dims"] = json!(oliver);
        v["agree"] = json!(ok);
    }
    if let Some(k) = cli.k {
        v["k"] = json!(k);
        v["dim"] = json!(dims.get(k).copied().unwrap_or(0));
    }
    Ok(Report::new(v, ok))
}

fn ext_cmd(cli: &Cli) -> Handled {
    let f = load_functor(cli)?;
    let dims = ext_dims(&f)?;
    let mut v = json!({ "n": f.poset().n(), "dims": dims });
    if let Some(k) = cli.k {
        v["k"] = json!(k);
        v["dim"] = json!(dims.get(k).copied().unwrap_or(0));
    }
    Ok(Report::new(v, true))
}

fn resolve_cmd(cli: &Cli) -> Handled {
    if cli.functor.is_some() {
        let f = load_functor(cli)?;
        let tot = bicomplex_i(&f)?.total;
        let natural = tot.check_natural().is_ok();
        let exact = tot.check_exact();
        let table: serde_json::Map<String, Value> = tot
            .poset()
            .elements()
            .iter()
            .zip(tot.dim_table())
            .map(|(w, dims)| (w.key(), json!(dims)))
            .collect();
        let ok = natural && exact.is_ok();
        return Ok(Report::new(
            json!({
                "n": f.poset().n(),
                "natural": natural,
                "exact": exact.is_ok(),
                "failure": exact.err().map(|e| e.to_string()),
                "dims": table,
            }),
            ok,
        ));
    }
    let n = require_n(cli, None)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for w in enumerate_subspaces(n, None)? {
        for (kind, c) in [("projective", proj_resolution_simple(&w)?), ("injective", inj_resolution_simple(&w)?)] {
            let good = c.check_natural().is_ok() && c.check_exact().is_ok();
            ok &= good;
            rows.push(json!({ "simple": w.key(), "resolution": kind, "length": c.len(), "exact": good }));
        }
    }
    Ok(Report::new(json!({ "n": n, "resolutions": rows }), ok))
}

fn bicomplex_cmd(cli: &Cli) -> Handled {
    let f = load_functor(cli)?;
    let report = be1_check(&f)?;
    let ok = report.ok();
    Ok(Report::new(
        json!({ "n": f.poset().n(), "bicomplex": true, "e1": report, "agree": ok }),
        ok,
    ))
}

fn mvh_cmd(cli: &Cli) -> Handled {
    let n = require_n(cli, None)?;
    let h = cli.h.unwrap_or(1);
    let cap = require_maxdeg(cli, 8)?;
    let table = m_of_v_capped(n, h, cap, if cli.unsafe_caps { n } else { N_CAP })?;
    let mut csv = String::from("degree,dim\n");
    for (d, x) in table.dims.iter().enumerate() {
        csv.push_str(&format!("{d},{x}\n"));
    }
    Ok(Report {
        value: json!({ "n": n, "h": h, "dims": table.dims, "checks": {} }),
        ok: true,
        csv: Some(csv),
    })
}

fn verify_mv_cmd(cli: &Cli) -> Handled {
    let n = require_n(cli, None)?;
    let h = cli.h.unwrap_or(1);
    let cap = require_maxdeg(cli, 6)?;
    let table = m_of_v_capped(n, h, cap, N_CAP)?;
    let generation = generation_check(n, h, cap)?;
    let doubling = ephi_doubling_check(n, h, cap)?;
    let st = steinberg_capped(n, N_CAP)?.dim();
    let intertwiner = steinberg_dual_intertwiner(n, h).is_ok();
    let checks = json!({
        "generation": generation.ok(),
        "doubling": doubling.ok(),
        "m0_equals_st": table.dims[0] == st,
        "intertwiner": intertwiner,
    });
    let ok = generation.ok() && doubling.ok() && table.dims[0] == st && intertwiner;
    Ok(Report::new(json!({ "n": n, "h": h, "dims": table.dims, "checks": checks }), ok))
}

fn verify_cmd(cli: &Cli) -> Handled {
    let n_max = require_n(cli, Some(N_CAP))?;
    let mut checks = serde_json::Map::new();
    let euler = euler_recursion_dims(n_max);
    let dims_ok = (0..=n_max).all(|n| steinberg_capped(n, n_max.max(N_CAP)).map(|s| s.dim() as i64) .ok() == Some(euler[n]));
    checks.insert("steinberg_dims".into(), json!(dims_ok));
    let mut lusztig_ok = true;
    for n in 1..=n_max {
        for variant in [LusztigVariant::Subspaces, LusztigVariant::Quotients] {
            let mut lu = lusztig_complex(n, variant)?;
            if let (Some(seed), 2, LusztigVariant::Subspaces) = (cli.mutate, n, variant) {
                lu = seeded_mutation(&lu, seed).0;
            }
            lusztig_ok &= lusztig_summary(&lu).1;
        }
    }
    checks.insert("lusztig_acyclic".into(), json!(lusztig_ok));
    let mut ext_ok = true;
    let mut klim_ok = true;
    let mut oliver_ok = true;
    for n in 1..=n_max.min(N_CAP) {
        let lattice = Arc::new(Poset::lattice(n)?);
        let nonzero = Arc::new(Poset::nonzero(n)?);
        for w in enumerate_subspaces(n, None)? {
            let s = make_standard_functor(&lattice, &StandardKind::Simple(w.clone()))?;
            let e = ext_dims(&s)?;
            let st = steinberg_capped(w.dim(), N_CAP)?.dim();
            ext_ok &= e.iter().enumerate().all(|(k, &x)| x == if k == w.dim() { st } else { 0 });
            klim_ok &= klim_bridge(&s)?.ok();
            if w.dim() > 0 {
                let s0 = make_standard_functor(&nonzero, &StandardKind::Simple(w))?;
                let a = oliver_complex(&s0)?.homology_dims();
                let b = derived_limit_dims(&s0);
                oliver_ok &= (0..a.len().max(b.len())).all(|k| a.get(k).unwrap_or(&0) == b.get(k).unwrap_or(&0));
            }
        }
    }
    checks.insert("ext_of_simples".into(), json!(ext_ok));
    checks.insert("klim_bridge".into(), json!(klim_ok));
    checks.insert("oliver_vs_limits".into(), json!(oliver_ok));
    let ok = checks.values().all(|v| v == &json!(true));
    Ok(Report::new(json!({ "n": n_max, "checks": checks }), ok))
}

fn radical_cmd(cli: &Cli) -> Handled {
    let n = require_n(cli, Some(2))?;
    let dmax = require_maxdeg(cli, 3)?;
    let m_max = cli.k.unwrap_or(2) as u32;
    let forms: Vec<u32> = (1..1u32 << n).collect();
    let mut cases = Vec::new();
    let mut ok = true;
    let mut subsets: Vec<Vec<u32>> = Vec::new();
    for mask in 1u32..1 << forms.len() {
        if mask.count_ones() <= 3 {
            subsets.push(forms.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &u)| u).collect());
        }
    }
    for s in subsets {
        let e = FormProduct::new(n, s)?;
        let alg = TruncatedPolyAlgebra::new(n, dmax.max(e.degree()) + 2);
        let ideal = GradedIdeal::principal(&alg, &e)?;
        let stable = a_stability_check(&alg, &ideal, alg.cap())?.is_empty();
        ok &= stable;
        for d in 1..=dmax {
            let r = serre_radical_check(&e, d, m_max)?;
            ok &= r.equal;
            cases.push(json!({ "forms": e.forms(), "stable": stable, "report": r }));
        }
    }
    Ok(Report::new(json!({ "n": n, "m_max": m_max, "cases": cases, "all_equal": ok }), ok))
}
