use std::fmt::Write as _;
use std::path::PathBuf;

use beatty_core::beatty::{k_window, mismatch_set};
use beatty_core::cutproject::sigma_points;
use beatty_core::{BigInt, GFib, KIndex, Window};

use crate::config::{
    check_range, parse_zbeta, Command, CutArgs, Format, FreqArgs, MismatchArgs, PlotArgs, RunConfig, SeqArgs,
    VerifyArgs,
};
use crate::error::CliError;
use crate::plot::PlotData;
use crate::table::{Cell, Table};
use crate::verify::{frequency_scan_par, Suite, Verifier, VerifyConfig};

/// A rendered document and where it goes.
#[derive(Debug)]
pub struct Rendered {
    pub body: String,
    pub out: Option<PathBuf>,
    /// Set when a verification suite failed; the report is still written.
    pub failed: bool,
}

impl Rendered {
    fn ok(body: String, out: Option<PathBuf>) -> Self {
        Rendered { body, out, failed: false }
    }
}

pub fn execute(command: &Command) -> Result<Rendered, CliError> {
    match command {
        Command::Seq(a) => seq(a),
        Command::Mismatch(a) => mismatch(a),
        Command::Plot(a) => plot(a),
        Command::Freq(a) => freq(a),
        Command::Cut(a) => cut(a),
        Command::Verify(a) => verify(a),
    }
}

fn table_format(requested: Option<Format>) -> Result<Format, CliError> {
    match requested.unwrap_or(Format::Csv) {
        f @ (Format::Csv | Format::Json) => Ok(f),
        other => Err(CliError::Usage(format!("format {other:?} is not available for tables; use csv or json"))),
    }
}

fn render_table(table: &Table, config: &RunConfig) -> Result<String, CliError> {
    match config.format {
        Format::Json => Ok(table.to_json(config)),
        _ => table.to_csv(),
    }
}

/// Table length needed for shift index `i`.
fn gfib_for(unit: beatty_core::QuadraticUnit, i: usize) -> Result<GFib, CliError> {
    if i == 0 {
        return Err(CliError::Usage("--i must be at least 1".into()));
    }
    Ok(GFib::build(unit, (i + 1).max(beatty_core::gfib::DEFAULT_LEN))?)
}

fn seq(a: &SeqArgs) -> Result<Rendered, CliError> {
    let unit = a.unit.unit()?;
    check_range(a.from, a.to, "j")?;
    let mut config = RunConfig::new("seq", &a.unit, table_format(a.output.format)?);
    config.from = Some(a.from);
    config.to = Some(a.to);
    let mut t = Table::new(vec!["j", "floor"]);
    for j in a.from..=a.to {
        t.push(vec![Cell::from(j), Cell::from(unit.floor_mul_i64(j))]);
    }
    Ok(Rendered::ok(render_table(&t, &config)?, a.output.out.clone()))
}

fn mismatch(a: &MismatchArgs) -> Result<Rendered, CliError> {
    let unit = a.unit.unit()?;
    let g = gfib_for(unit, a.i)?;
    let mut config = RunConfig::new("mismatch", &a.unit, table_format(a.output.format)?);
    config.i = Some(a.i);
    let j_range = match (a.from, a.to) {
        (Some(lo), Some(hi)) => {
            check_range(lo, hi, "j")?;
            Some((lo, hi))
        }
        (None, None) => None,
        _ => return Err(CliError::Usage("--from and --to must be given together".into())),
    };
    let k_range = match (a.k_from, a.k_to, j_range) {
        (Some(lo), Some(hi), _) => {
            check_range(lo, hi, "k")?;
            (lo, hi)
        }
        (None, None, Some((lo, hi))) => {
            let k = k_window(&g, a.i, lo.unsigned_abs().max(hi.unsigned_abs()))?;
            (-k, k)
        }
        (None, None, None) => return Err(CliError::Usage("give a j-range (--from/--to) or a k-range".into())),
        _ => return Err(CliError::Usage("--k-from and --k-to must be given together".into())),
    };
    if a.k_from.is_some() {
        config.k_from = Some(k_range.0);
        config.k_to = Some(k_range.1);
    }
    if let Some((lo, hi)) = j_range {
        config.from = Some(lo);
        config.to = Some(hi);
    }
    let mut t = Table::new(vec!["j", "k", "epsilon"]);
    for r in mismatch_set(&g, a.i, k_range.0, k_range.1)? {
        if let Some((lo, hi)) = j_range {
            if r.j < BigInt::from(lo) || r.j > BigInt::from(hi) {
                continue;
            }
        }
        let k = match r.k {
            KIndex::K(k) => Cell::from(k),
            KIndex::Special => Cell::Text("special".into()),
        };
        t.push(vec![Cell::from(r.j), k, Cell::from(i64::from(r.epsilon))]);
    }
    Ok(Rendered::ok(render_table(&t, &config)?, a.output.out.clone()))
}

fn plot(a: &PlotArgs) -> Result<Rendered, CliError> {
    let unit = a.unit.unit()?;
    let g = gfib_for(unit, a.i)?;
    check_range(a.from, a.to, "j")?;
    let format = a.output.format.unwrap_or(Format::Svg);
    let mut config = RunConfig::new("plot", &a.unit, format);
    config.i = Some(a.i);
    config.from = Some(a.from);
    config.to = Some(a.to);
    let data = PlotData::build(&g, a.i, a.from, a.to)?;
    let body = match format {
        Format::Svg => data.svg(),
        Format::Ascii => data.ascii(),
        Format::Csv | Format::Json => render_table(&data.table(), &config)?,
    };
    Ok(Rendered::ok(body, a.output.out.clone()))
}

fn freq(a: &FreqArgs) -> Result<Rendered, CliError> {
    let unit = a.unit.unit()?;
    let g = gfib_for(unit, a.i)?;
    if i64::try_from(a.n).is_err() {
        return Err(CliError::Usage("--n is too large".into()));
    }
    let format = a.output.format.unwrap_or(Format::Ascii);
    let mut config = RunConfig::new("freq", &a.unit, format);
    config.i = Some(a.i);
    config.n = Some(a.n);
    let s = frequency_scan_par(&g, a.i, a.n);
    let (count, size) = s.frequency();
    let body = match format {
        Format::Ascii => {
            let mut b = String::new();
            let _ = writeln!(b, "window    [-{n}, {n}]", n = a.n);
            let _ = writeln!(b, "count     {count}");
            let _ = writeln!(b, "frequency {count}/{size}");
            let _ = writeln!(b, "decimal   {:.6}", s.frequency_approx());
            let _ = writeln!(b, "target    {:.6}", s.target);
            b
        }
        Format::Csv | Format::Json => {
            let mut t = Table::new(vec!["i", "n", "count", "window", "frequency", "decimal", "target"]);
            t.push(vec![
                Cell::from(a.i as i64),
                Cell::Int(a.n.into()),
                Cell::Int(count.into()),
                Cell::Int(size.into()),
                Cell::Text(format!("{count}/{size}")),
                Cell::Text(format!("{:.6}", s.frequency_approx())),
                Cell::Text(format!("{:.6}", s.target)),
            ]);
            render_table(&t, &config)?
        }
        Format::Svg => return Err(CliError::Usage("freq does not render svg".into())),
    };
    Ok(Rendered::ok(body, a.output.out.clone()))
}

fn cut(a: &CutArgs) -> Result<Rendered, CliError> {
    let unit = a.unit.unit()?;
    check_range(a.from, a.to, "b")?;
    let lo = parse_zbeta(unit, &a.lo)?;
    let hi = parse_zbeta(unit, &a.hi)?;
    let window = Window::new(lo.clone(), hi.clone()).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut config = RunConfig::new("cut", &a.unit, table_format(a.output.format)?);
    config.from = Some(a.from);
    config.to = Some(a.to);
    config.lo = Some(lo.to_string());
    config.hi = Some(hi.to_string());
    let mut t = Table::new(vec!["a", "b"]);
    for p in sigma_points(&window, a.from, a.to)? {
        t.push(vec![Cell::from(p.a), Cell::from(p.b)]);
    }
    Ok(Rendered::ok(render_table(&t, &config)?, a.output.out.clone()))
}

fn verify(a: &VerifyArgs) -> Result<Rendered, CliError> {
    let suites = if a.suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        a.suites
            .iter()
            .map(|s| Suite::from_name(s).ok_or_else(|| CliError::Usage(format!("unknown suite {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?
    };
    if a.max_i == 0 || a.freq_max_i == 0 || a.window < 0 {
        return Err(CliError::Usage("grid bounds must be positive".into()));
    }
    let v = Verifier::new(VerifyConfig {
        max_i: a.max_i,
        window: a.window,
        n: a.n,
        freq_max_i: a.freq_max_i,
        fault: a.inject_fault,
    });
    let mut body = String::new();
    let mut failed = false;
    for suite in suites {
        let r = v.run(suite);
        let status = if r.passed() { "PASS" } else { "FAIL" };
        failed |= !r.passed();
        let _ = writeln!(body, "{status} {suite:<14} checks={} failures={}", r.checks, r.failures);
        for d in &r.details {
            let _ = writeln!(body, "     {d}");
        }
    }
    Ok(Rendered { body, out: a.out.clone(), failed })
}
