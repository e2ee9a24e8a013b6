use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use cpcode::analysis::{
    comparator_bounds, exact_profile, field_requirements, gamma_sys_asymptotic, msr_bound,
    optimal_l, render_decimal, RatioKind,
};
use cpcode::decode::{decode_generic, decode_structured, verify_mds, DecodeOptions, Shares};
use cpcode::format::{
    bytes_to_symbols, read_stripe, symbols_to_bytes, write_repair_report, write_stripe,
};
use cpcode::sim::{
    simulate as run_sim, sweep_rate, sweep_to_csv, table3_grid, to_csv, GridEntry, SimConfig,
    SimMode,
};
use cpcode::{
    encode as encode_stripe, repair_node, CodeParams, CodeShape, DataMatrix, Error, GaloisField,
    Stage,
};

use crate::CodeArgs;

pub const USAGE: u8 = 2;
pub const DATA: u8 = 3;
pub const MATH: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> CliError {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match e {
            Error::DegreeOutOfRange(_)
            | Error::PolynomialDegree { .. }
            | Error::ReduciblePolynomial(_)
            | Error::NotPrimitive(_)
            | Error::InvalidParams(_)
            | Error::IndexOutOfRange { .. }
            | Error::GroupsDoNotDivide { .. }
            | Error::EnumerationCap { .. }
            | Error::ErasureCount { .. } => USAGE,
            Error::Format(_)
            | Error::DimensionMismatch(_)
            | Error::InsufficientShares { .. }
            | Error::UnreadableNode(_)
            | Error::WrongStage { .. } => DATA,
            Error::DivisionByZero
            | Error::ZeroPower(_)
            | Error::SingularMatrix { .. }
            | Error::NotDecodable { .. }
            | Error::FieldTooSmall { .. } => MATH,
        };
        CliError::new(code, e.to_string())
    }
}

type CliResult = Result<(), CliError>;

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::new(DATA, format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> CliResult {
    let result = match out {
        Some(path) => fs::write(path, bytes),
        None => io::stdout().write_all(bytes),
    };
    result.map_err(|e| CliError::new(DATA, format!("write failed: {e}")))
}

fn parse_poly(text: &str) -> Result<u32, CliError> {
    let digits = text.trim_start_matches("0x").trim_start_matches("0X");
    u32::from_str_radix(digits, 16)
        .map_err(|_| CliError::new(USAGE, format!("bad polynomial {text:?}")))
}

fn params(code: &CodeArgs) -> Result<CodeParams, CliError> {
    let poly = code.poly.as_deref().map(parse_poly).transpose()?;
    let field = GaloisField::new(code.m, poly)?;
    Ok(CodeParams::new(code.n, code.k, code.l, field)?)
}

fn describe(p: &CodeParams) -> String {
    let bound = p.k() * p.r() * p.r();
    format!(
        "(n={}, k={}, L={}) over GF(2^{}) poly {:#x}; field bound k*r^2 = {bound} {} {}",
        p.n(),
        p.k(),
        p.groups(),
        p.field().m(),
        p.field().reduction_poly(),
        if p.meets_field_bound() { "<" } else { ">=" },
        p.field().order(),
    )
}

fn load_stripe(path: &Path) -> Result<(usize, CodeParams, cpcode::CodedStripe), CliError> {
    let text = String::from_utf8(read(path)?)
        .map_err(|_| CliError::new(DATA, "stripe file is not UTF-8"))?;
    let (header, p, stripe) = read_stripe(&text)?;
    if stripe.stage() != Stage::G3 {
        return Err(Error::WrongStage {
            expected: Stage::G3.name(),
            found: stripe.stage().name(),
        }
        .into());
    }
    Ok((header.original_len, p, stripe))
}

pub fn encode(code: &CodeArgs, input: &Path, out: Option<&Path>, pad: bool) -> CliResult {
    let p = params(code)?;
    let bytes = read(input)?;
    let count = p.k() * p.r();
    let symbols = bytes_to_symbols(p.field(), &bytes, count, pad)?;
    let stripe = encode_stripe(&p, &DataMatrix::new(p.k(), p.r(), symbols)?)?;
    emit(out, write_stripe(&p, &stripe, bytes.len()).as_bytes())?;
    eprintln!("encoded {} bytes: {}", bytes.len(), describe(&p));
    Ok(())
}

pub fn decode(
    stripe: &Path,
    erase: &[usize],
    out: Option<&Path>,
    generic: bool,
    fallback: bool,
) -> CliResult {
    let (len, p, stripe) = load_stripe(stripe)?;
    for &node in erase {
        p.check_node(node)?;
    }
    let shares = Shares::from_stripe(&stripe, erase);
    let missing = shares.missing().len();
    let data = if generic || missing != p.r() {
        decode_generic(&p, &shares)?
    } else {
        decode_structured(
            &p,
            &shares,
            DecodeOptions {
                fallback_to_generic: fallback,
            },
        )?
    };
    let bytes = symbols_to_bytes(p.field(), data.as_slice(), len)?;
    emit(out, &bytes)?;
    eprintln!("decoded {len} bytes with {missing} nodes erased");
    Ok(())
}

pub fn repair(stripe: &Path, fail: usize, out: Option<&Path>) -> CliResult {
    let (_, p, stripe) = load_stripe(stripe)?;
    let report = repair_node(&p, &stripe, fail)?;
    if let Some(path) = out {
        emit(Some(path), write_repair_report(&p, &report).as_bytes())?;
    }
    let matches = report.recovered == stripe.row(fail);
    println!(
        "node {fail}: bandwidth {} symbols, predicted {}, MSR bound {}, conventional {}",
        report.bandwidth,
        report.predicted,
        msr_bound(p.shape()),
        p.k() * p.r()
    );
    println!(
        "rebuilt row matches stored row: {}",
        if matches { "yes" } else { "no" }
    );
    if report.bandwidth != report.predicted {
        return Err(CliError::new(
            MATH,
            "measured bandwidth differs from the prediction",
        ));
    }
    if !matches {
        return Err(CliError::new(
            MATH,
            "rebuilt row differs from the stored row",
        ));
    }
    Ok(())
}

pub fn verify(code: &CodeArgs, cap: u128) -> CliResult {
    let p = params(code)?;
    let report = verify_mds(&p, cap)?;
    println!("{}", describe(&p));
    println!(
        "{} patterns, {} failures",
        report.patterns_checked,
        report.failures.len()
    );
    for f in report.failures.iter().take(20) {
        println!("not recoverable: erase {:?}", f.erased);
    }
    if report.is_mds() {
        Ok(())
    } else {
        Err(CliError::new(MATH, "code is not MDS over this field"))
    }
}

pub fn analyze(r: usize, k: Option<usize>, l: Option<usize>) -> CliResult {
    let best = optimal_l(r, k)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "r = {r}, k = {}",
        k.map_or("infinity".to_string(), |k| k.to_string())
    );
    let _ = writeln!(out, "optimal L = {best}");
    let root = ((2 * r - 1) as f64).sqrt();
    let mut candidates = vec![
        (root.floor() as usize).clamp(2, r),
        (root.ceil() as usize).clamp(2, r),
    ];
    candidates.dedup();
    for c in candidates {
        let _ = writeln!(
            out,
            "  L = {c}: asymptotic data-node ratio {:.4}",
            gamma_sys_asymptotic(r as f64, c as f64)
        );
    }
    if let Some(k) = k {
        let l = l.unwrap_or(best);
        let shape = CodeShape::new(k + r, k, l)?;
        let p = exact_profile(&shape);
        let _ = writeln!(out, "profile at L = {l}:");
        let _ = writeln!(out, "  per-node bandwidth {:?}", p.per_node);
        let _ = writeln!(out, "  MSR bound {}", msr_bound(&shape));
        let _ = writeln!(
            out,
            "  gamma_sys {}  gamma_par {}  gamma_all {}  reduction {}%",
            render_decimal(p.gamma_sys, 4),
            render_decimal(p.gamma_par, 4),
            render_decimal(p.gamma_all, 4),
            render_decimal(p.rs_reduction * 100, 1)
        );
        let _ = writeln!(out, "field size requirements:");
        for req in field_requirements(k + r, k)? {
            let _ = writeln!(
                out,
                "  {:<14} q >= {:<12} {}",
                req.scheme, req.min_field, req.sub_packetization
            );
        }
    }
    let table = comparator_bounds(k, r)?;
    let _ = writeln!(out, "lower bounds on repair-bandwidth ratios:");
    let _ = writeln!(
        out,
        "  {:<12} {:>8} {:>8} {:>8}",
        "code", "data", "parity", "all"
    );
    let mut codes: Vec<_> = table.bounds.iter().map(|b| b.code).collect();
    codes.dedup();
    for code in codes {
        let cell = |kind| {
            table
                .get(code, kind)
                .map_or("-".to_string(), |v| format!("{v:.4}"))
        };
        let _ = writeln!(
            out,
            "  {:<12} {:>8} {:>8} {:>8}",
            code.label(),
            cell(RatioKind::Data),
            cell(RatioKind::Parity),
            cell(RatioKind::All)
        );
    }
    for o in &table.omitted {
        let _ = writeln!(
            out,
            "  {} {} omitted: {}",
            o.code.label(),
            o.kind.label(),
            o.reason
        );
    }
    print!("{out}");
    Ok(())
}

pub struct SimulateArgs {
    pub table3: bool,
    pub grid: Vec<String>,
    pub sweep: Option<String>,
    pub execute: bool,
    pub trials: usize,
    pub seed: u64,
    pub m: u32,
    pub verify: bool,
    pub out: Option<PathBuf>,
}

fn parse_usize(s: &str) -> Result<usize, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::new(USAGE, format!("bad number {s:?}")))
}

fn parse_grid(items: &[String], m: u32) -> Result<Vec<GridEntry>, CliError> {
    items
        .iter()
        .map(|item| {
            let parts: Vec<&str> = item.split(':').collect();
            if parts.len() != 3 {
                return Err(CliError::new(
                    USAGE,
                    format!("grid row {item:?} is not k:r:L"),
                ));
            }
            let e = GridEntry::new(
                parse_usize(parts[0])?,
                parse_usize(parts[1])?,
                parse_usize(parts[2])?,
                m,
            );
            e.shape()?;
            Ok(e)
        })
        .collect()
}

pub fn simulate(args: SimulateArgs) -> CliResult {
    if let Some(spec) = &args.sweep {
        let parts: Vec<&str> = spec.split(':').collect();
        let range: Vec<&str> = parts.get(1).map_or(vec![], |p| p.split('-').collect());
        if parts.len() != 3 || range.len() != 2 {
            return Err(CliError::new(
                USAGE,
                format!("sweep {spec:?} is not r:kmin-kmax:L"),
            ));
        }
        let r = parse_usize(parts[0])?;
        let rows = sweep_rate(
            r,
            parse_usize(range[0])?..=parse_usize(range[1])?,
            parse_usize(parts[2])?,
        )?;
        return emit(args.out.as_deref(), sweep_to_csv(&rows).as_bytes());
    }
    let mut grid = if args.table3 { table3_grid() } else { vec![] };
    for e in grid.iter_mut() {
        e.m = args.m;
    }
    grid.extend(parse_grid(&args.grid, args.m)?);
    if grid.is_empty() {
        return Err(CliError::new(
            USAGE,
            "nothing to simulate: pass --table3, --grid or --sweep",
        ));
    }
    let mut config = SimConfig::new(
        grid,
        if args.execute {
            SimMode::Execute
        } else {
            SimMode::Formula
        },
    );
    config.trials = args.trials;
    config.seed = args.seed;
    config.verify = args.verify;
    let rows = run_sim(&config)?;
    emit(args.out.as_deref(), to_csv(&rows, args.seed).as_bytes())?;
    if rows.iter().any(|r| !r.consistent) {
        return Err(CliError::new(
            MATH,
            "some rows are inconsistent; see the trailing comments",
        ));
    }
    Ok(())
}
