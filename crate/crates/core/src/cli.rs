//! The `freelie` command line.
//!
//! Exit codes: 0 on success, 1 when a certificate fails verification, 2 on
//! usage errors and invalid input.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebra::{normalize, parse_expr, Bidegree};
use crate::dims::{bigraded_records, dim_i, dim_i_bigraded, dim_l, render_rows, weight_table};
use crate::error::{Error, Result};
use crate::families::{i2_certificate, i33n_certificate, qbad_certificate};
use crate::oracle::{oracle_check, OracleReport, DEFAULT_DIM, DEFAULT_TRIALS};
use crate::theta::{
    certificate_lattice, kernel_certificates, kernel_lattice, theta_matrix, verify_certificate, CertificateRecord,
    KernelCertificate,
};
use crate::words::{lyndon_bracket, lyndon_words};
use crate::zlinalg::lattice_equal;

#[derive(Debug, Parser)]
#[command(name = "freelie", version, about = "Exact computations in the free Lie ring L(a,b)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension tables for L_n and the kernels I_n
    Dims {
        #[arg(long)]
        max_weight: u64,
        /// Also list every bidegree (k,l)
        #[arg(long)]
        bigraded: bool,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Lyndon basis of L_{k,l}
    Basis {
        k: usize,
        l: usize,
        #[arg(long, value_enum, default_value_t = BasisFormat::Text)]
        format: BasisFormat,
    },
    /// Matrix of Θ_{k,l} in canonical bases
    Theta {
        k: usize,
        l: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Kernel lattice I_{k,l}
    Kernel {
        k: usize,
        l: usize,
        /// Emit one verified certificate per basis vector
        #[arg(long)]
        certify: bool,
    },
    /// Closed-form kernel elements
    Family {
        name: FamilyName,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value_t = CertFormat::Json)]
        format: CertFormat,
    },
    /// Re-verify certificates from a JSON file (one object or an array)
    Verify {
        file: PathBuf,
        /// Also evaluate in random integer matrices
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_DIM)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Evaluate modulo a prime instead of exactly
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Normal form of a bracket expression, e.g. "[a,b,b,a] - [a,b,a,b]"
    Normalize {
        expr: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisFormat {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CertFormat {
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyName {
    Qbad,
    I2,
    I33,
}

/// Runs the command line with explicit output streams; returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Internal(_) => 1,
                _ => 2,
            }
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    match cmd {
        Command::Dims { max_weight, bigraded, format } => dims(max_weight, bigraded, format, out),
        Command::Basis { k, l, format } => basis(k, l, format, out),
        Command::Theta { k, l, out: path } => theta(k, l, path, out),
        Command::Kernel { k, l, certify } => kernel(k, l, certify, out, err),
        Command::Family { name, n, m, format } => family(name, n, m, format, out),
        Command::Verify { file, oracle, trials, dim, seed, modulus } => {
            let opts = oracle.then_some(OracleOpts { trials, dim, seed, modulus });
            verify(&file, opts, out)
        }
        Command::Normalize { expr, format } => {
            let x = normalize(&parse_expr(&expr)?)?;
            match format {
                TableFormat::Json => writeln!(out, "{}", serde_json::to_string(&x)?)?,
                TableFormat::Text => writeln!(out, "{x}")?,
            }
            Ok(true)
        }
    }
}

fn dims(max_weight: u64, bigraded: bool, format: TableFormat, out: &mut dyn Write) -> Result<bool> {
    if max_weight == 0 {
        return Err(Error::InvalidInput("--max-weight must be at least 1".into()));
    }
    match format {
        TableFormat::Text => {
            write!(out, "{}", weight_table(max_weight)?)?;
            if max_weight >= 2 {
                writeln!(out)?;
                let ns: Vec<i64> = (2..=max_weight as i64).collect();
                let row = |f: &dyn Fn(i64) -> String| ns.iter().map(|&n| f(n)).collect::<Vec<_>>();
                let rows = [
                    ("n", row(&|n| n.to_string())),
                    ("dim I_{2,n-2}", row(&|n| dim_i_bigraded(2, n - 2).to_string())),
                    ("dim I_{3,n-3}", row(&|n| dim_i_bigraded(3, n - 3).max(0).to_string())),
                    ("dim I_n", row(&|n| dim_i(n).map(|d| d.to_string()).unwrap_or_default())),
                ];
                write!(out, "{}", render_rows(&rows))?;
            }
            if bigraded {
                writeln!(out)?;
                writeln!(out, "{:>6} {:>3} {:>3} {:>8} {:>8}", "weight", "k", "l", "dimL", "dimI")?;
                for r in bigraded_records(max_weight) {
                    writeln!(out, "{:>6} {:>3} {:>3} {:>8} {:>8}", r.weight, r.k, r.l, r.dim_l, r.dim_i)?;
                }
            }
        }
        TableFormat::Json => {
            let weights = (1..=max_weight as i64)
                .map(|n| {
                    Ok(json!({
                        "weight": n,
                        "dimL": dim_l(n)?,
                        "dimI": if n >= 2 { Some(dim_i(n)?) } else { None },
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut doc = json!({ "weights": weights });
            if bigraded {
                doc["bigraded"] = serde_json::to_value(bigraded_records(max_weight))?;
            }
            writeln!(out, "{}", serde_json::to_string(&doc)?)?;
        }
    }
    Ok(true)
}

fn basis(k: usize, l: usize, format: BasisFormat, out: &mut dyn Write) -> Result<bool> {
    let words = lyndon_words(k, l)?;
    match format {
        BasisFormat::Text => {
            for w in &words {
                writeln!(out, "{w}\t{}", lyndon_bracket(w))?;
            }
        }
        BasisFormat::Json => {
            let entries: Vec<_> = words
                .iter()
                .map(|w| json!({ "word": w.to_string(), "bracket": lyndon_bracket(w).to_string() }))
                .collect();
            writeln!(out, "{}", json!({ "k": k, "l": l, "basis": entries }))?;
        }
        BasisFormat::Latex => {
            for w in &words {
                writeln!(out, "[{w}] = {}", lyndon_bracket(w))?;
            }
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct ThetaRecord {
    k: usize,
    l: usize,
    domain_a: Vec<String>,
    domain_b: Vec<String>,
    codomain: Vec<String>,
    matrix: crate::zlinalg::MatrixRecord,
}

fn theta(k: usize, l: usize, path: Option<PathBuf>, out: &mut dyn Write) -> Result<bool> {
    let t = theta_matrix(k, l)?;
    let names = |ws: &[crate::words::LyndonWord]| ws.iter().map(|w| w.to_string()).collect();
    let rec = ThetaRecord {
        k,
        l,
        domain_a: names(&t.domain_a),
        domain_b: names(&t.domain_b),
        codomain: names(&t.codomain),
        matrix: t.matrix.to_record(),
    };
    let text = serde_json::to_string(&rec)?;
    match path {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => writeln!(out, "{text}")?,
    }
    Ok(true)
}

/// The closed-form generator this bidegree is known to have, if any.
fn reference_generator(bd: Bidegree) -> Result<Option<KernelCertificate>> {
    Ok(match (bd.a, bd.b) {
        (2, m) if m >= 2 && m % 2 == 0 => Some(i2_certificate(m)?),
        (3, m) if m >= 3 && m % 3 == 0 && crate::dims::dim_i3(m as u64)? == 1 => Some(i33n_certificate(m / 3)?),
        _ => None,
    })
}

fn kernel(k: usize, l: usize, certify: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    if !certify {
        let (theta, lattice) = kernel_lattice(k, l)?;
        writeln!(out, "I_({k},{l}) rank {} in a domain of dimension {}", lattice.rank(), theta.domain_dim())?;
        for v in lattice.basis() {
            let row: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            writeln!(out, "[{}]", row.join(", "))?;
        }
        return Ok(true);
    }
    let certs = kernel_certificates(k, l)?;
    let records: Vec<CertificateRecord> = certs.iter().map(|c| c.to_record()).collect();
    writeln!(out, "{}", serde_json::to_string(&records)?)?;
    let bd = Bidegree::new(k, l);
    if let Some(reference) = reference_generator(bd)? {
        let computed = certificate_lattice(bd, &certs)?;
        let stated = certificate_lattice(bd, std::slice::from_ref(&reference))?;
        let same = lattice_equal(&computed, &stated)?;
        writeln!(err, "lattice-equal to {}: {}", reference.source, if same { "yes" } else { "no" })?;
    }
    Ok(certs.iter().all(|c| c.verified))
}

fn family(
    name: FamilyName,
    n: Option<usize>,
    m: Option<usize>,
    format: CertFormat,
    out: &mut dyn Write,
) -> Result<bool> {
    let need = |x: Option<usize>, flag: &str| x.ok_or_else(|| Error::InvalidInput(format!("this family needs {flag}")));
    let cert = match name {
        FamilyName::Qbad => qbad_certificate(need(n, "--n")?)?,
        FamilyName::I2 => i2_certificate(need(m.or(n), "--m")?)?,
        FamilyName::I33 => i33n_certificate(need(n, "--n")?)?,
    };
    match format {
        CertFormat::Json => writeln!(out, "{}", cert.to_json()?)?,
        CertFormat::Latex => writeln!(out, "{}", cert.to_latex())?,
    }
    Ok(cert.verified)
}

struct OracleOpts {
    trials: usize,
    dim: usize,
    seed: u64,
    modulus: Option<u64>,
}

/// Reads one certificate object or an array of them.
pub fn read_certificates(text: &str) -> Result<Vec<KernelCertificate>> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let records: Vec<CertificateRecord> =
        if value.is_array() { serde_json::from_value(value)? } else { vec![serde_json::from_value(value)?] };
    records.iter().map(KernelCertificate::from_record).collect()
}

#[derive(Serialize)]
struct VerifyLine {
    certificate: CertificateRecord,
    oracle: Option<OracleReport>,
}

fn verify(path: &PathBuf, oracle: Option<OracleOpts>, out: &mut dyn Write) -> Result<bool> {
    let text = std::fs::read_to_string(path)?;
    let mut all_ok = true;
    for mut cert in read_certificates(&text)? {
        let ok = verify_certificate(&mut cert)?;
        let report = match &oracle {
            Some(o) => Some(oracle_check(&cert, o.trials, o.dim, o.seed, o.modulus)?),
            None => None,
        };
        all_ok &= ok && report.as_ref().is_none_or(|r| r.passed());
        let line = VerifyLine { certificate: cert.to_record(), oracle: report };
        writeln!(out, "{}", serde_json::to_string(&line)?)?;
    }
    Ok(all_ok)
}
