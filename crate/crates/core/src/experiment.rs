//! Sweep configuration, the row builders behind the `max`, `witness` and
//! `random` commands, and CSV input/output.
//!
//! A configuration is a plain `key = value` file:
//!
//! ```text
//! # lines starting with '#' are ignored
//! primes = 499..20011     # or a list: 499,1009,4999
//! per_decade = 2          # primes sampled per decade of a range
//! chars = order-2,3,4     # all | legendre | sample-N | order-D[,D...]
//! intervals = 0:1,0.25:0.75
//! eps = 0.0625
//! seed = 7
//! out = results
//! ```

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::charcore::{build_modulus, is_prime, DirichletCharacter, PrimeModulus};
use crate::error::{Error, Result};
use crate::lowerbound::{lower_bound_witness, representative, LowerBoundWitness};
use crate::maxsearch::{certified_max_sum, DEFAULT_EPS};
use crate::randmodels::RandomMaxStats;
use crate::sums::SumSpec;

#[derive(Debug, Clone, PartialEq)]
pub enum PrimeSelection {
    List(Vec<u64>),
    /// Primes in `[lo, hi]`, `per_decade` of them in each decade, spread
    /// log-uniformly.
    Range { lo: u64, hi: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum CharPolicy {
    /// Every non-principal character.
    All,
    Legendre,
    /// `n` distinct non-principal characters drawn with the sweep seed.
    Sample(usize),
    /// The smallest-index character of each listed order; orders not
    /// dividing `p - 1` are skipped.
    Orders(Vec<u64>),
}

impl CharPolicy {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParameter(format!("unknown character policy '{s}'"));
        match s {
            "all" => return Ok(CharPolicy::All),
            "legendre" => return Ok(CharPolicy::Legendre),
            _ => {}
        }
        if let Some(n) = s.strip_prefix("sample-") {
            let n: usize = n.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            return Ok(CharPolicy::Sample(n));
        }
        if let Some(list) = s.strip_prefix("order-") {
            let orders = parse_list::<u64>(list).map_err(|_| bad())?;
            if orders.is_empty() || orders.iter().any(|&d| d < 2) {
                return Err(bad());
            }
            return Ok(CharPolicy::Orders(orders));
        }
        Err(bad())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub primes: PrimeSelection,
    pub chars: CharPolicy,
    pub per_decade: usize,
    pub intervals: Vec<(f64, f64)>,
    pub eps: f64,
    pub seed: u64,
    /// Output directory; `None` writes to standard output.
    pub out_dir: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            primes: PrimeSelection::List(vec![499]),
            chars: CharPolicy::Legendre,
            per_decade: 1,
            intervals: vec![(0.0, 1.0)],
            eps: DEFAULT_EPS,
            seed: 0,
            out_dir: None,
        }
    }
}

fn parse_list<T: std::str::FromStr>(s: &str) -> std::result::Result<Vec<T>, ()> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<T>().map_err(|_| ()))
        .collect()
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("cannot parse {key} = '{v}'")))
}

impl ExperimentConfig {
    /// The sweep behind the sandwich plots: the Legendre symbol and one
    /// character of order 3 and 4 where they exist, four intervals.
    pub fn standard() -> Self {
        Self {
            primes: PrimeSelection::List(vec![499, 1009, 4999, 10007]),
            chars: CharPolicy::Orders(vec![2, 3, 4]),
            per_decade: 1,
            intervals: vec![(0.0, 1.0), (0.0, 0.5), (0.25, 1.0), (1.0, 2.0)],
            eps: DEFAULT_EPS,
            seed: 0,
            out_dir: None,
        }
    }

    /// Sets one key; the same keys are accepted in files and as overrides.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "primes" | "p" => {
                self.primes = if let Some((lo, hi)) = value.split_once("..") {
                    PrimeSelection::Range {
                        lo: parse_value("primes", lo)?,
                        hi: parse_value("primes", hi.trim_start_matches('='))?,
                    }
                } else {
                    PrimeSelection::List(
                        parse_list(value)
                            .map_err(|_| Error::InvalidParameter(format!("cannot parse primes = '{value}'")))?,
                    )
                };
            }
            "per_decade" => self.per_decade = parse_value("per_decade", value)?,
            "chars" => self.chars = CharPolicy::parse(value)?,
            "intervals" => {
                let mut out = Vec::new();
                for part in value.split(',').map(str::trim).filter(|x| !x.is_empty()) {
                    let (a, b) = part.split_once(':').ok_or_else(|| {
                        Error::InvalidParameter(format!("interval '{part}' must be alpha:beta"))
                    })?;
                    out.push((parse_value("alpha", a)?, parse_value("beta", b)?));
                }
                self.intervals = out;
            }
            "eps" => self.eps = parse_value("eps", value)?,
            "seed" => self.seed = parse_value("seed", value)?,
            "out" => self.out_dir = Some(PathBuf::from(value)),
            other => {
                return Err(Error::InvalidParameter(format!("unknown configuration key '{other}'")))
            }
        }
        Ok(())
    }

    /// Applies `key = value` lines on top of `self`.
    pub fn apply_str(&mut self, text: &str) -> Result<()> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::InvalidParameter(format!("line {}: expected key = value", lineno + 1))
            })?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn parse_str(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_str(text)?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
        Self::parse_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.intervals.is_empty() {
            return Err(Error::InvalidParameter("no (alpha, beta) intervals given".into()));
        }
        for &(alpha, beta) in &self.intervals {
            if !(alpha.is_finite() && beta.is_finite() && alpha >= 0.0 && beta > alpha) {
                return Err(Error::InvalidInterval { alpha, beta });
            }
        }
        if !(self.eps > 0.0 && self.eps < 0.5) {
            return Err(Error::InvalidParameter(format!("eps={} must lie in (0, 1/2)", self.eps)));
        }
        self.prime_list().map(|_| ())
    }

    /// The primes swept, ascending and without repeats.
    pub fn prime_list(&self) -> Result<Vec<u64>> {
        let mut out = match &self.primes {
            PrimeSelection::List(ps) => {
                for &p in ps {
                    if p < 3 || !is_prime(p) {
                        return Err(Error::InvalidModulus {
                            p,
                            reason: "not an odd prime".into(),
                        });
                    }
                }
                ps.clone()
            }
            &PrimeSelection::Range { lo, hi } => sample_range(lo, hi, self.per_decade)?,
        };
        out.sort_unstable();
        out.dedup();
        if out.is_empty() {
            return Err(Error::InvalidParameter("the prime selection is empty".into()));
        }
        Ok(out)
    }
}

fn next_prime(mut n: u64) -> u64 {
    while !is_prime(n) {
        n += 1;
    }
    n
}

fn sample_range(lo: u64, hi: u64, per_decade: usize) -> Result<Vec<u64>> {
    if lo > hi || per_decade == 0 {
        return Err(Error::InvalidParameter(format!(
            "bad prime range {lo}..{hi} with {per_decade} per decade"
        )));
    }
    let lo = lo.max(3);
    let mut out = Vec::new();
    let mut decade = 1u64;
    while decade <= hi {
        let a = decade.max(lo);
        let b = (decade.saturating_mul(10) - 1).min(hi);
        if a <= b {
            let (la, lb) = ((a as f64).ln(), (b as f64 + 1.0).ln());
            for i in 0..per_decade {
                let x = (la + (lb - la) * (i as f64 + 0.5) / per_decade as f64).exp();
                let q = next_prime((x as u64).max(a));
                if q <= b {
                    out.push(q);
                }
            }
        }
        decade = decade.saturating_mul(10);
    }
    Ok(out)
}

/// Characters mod `p` chosen by `policy`, ordered by index.
pub fn select_characters(
    modulus: &Arc<PrimeModulus>,
    policy: &CharPolicy,
    seed: u64,
) -> Vec<DirichletCharacter> {
    let p = modulus.p();
    let ch = |c: u64| DirichletCharacter::new(modulus.clone(), c).expect("index in range");
    match policy {
        CharPolicy::All => (1..p - 1).map(ch).collect(),
        CharPolicy::Legendre => vec![modulus.legendre()],
        CharPolicy::Sample(n) => {
            let pool = (p - 2) as usize;
            if *n >= pool {
                return (1..p - 1).map(ch).collect();
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(p);
            let mut idx: Vec<u64> = rand::seq::index::sample(&mut rng, pool, *n)
                .into_iter()
                .map(|i| i as u64 + 1)
                .collect();
            idx.sort_unstable();
            idx.into_iter().map(ch).collect()
        }
        CharPolicy::Orders(orders) => {
            let mut out: Vec<DirichletCharacter> =
                orders.iter().filter_map(|&d| representative(modulus, d)).collect();
            out.sort_by_key(|c| c.index());
            out.dedup_by_key(|c| c.index());
            out
        }
    }
}

/// `(character, alpha, beta)` jobs in sweep order.
fn jobs(cfg: &ExperimentConfig) -> Result<Vec<(DirichletCharacter, f64, f64)>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for p in cfg.prime_list()? {
        let modulus = build_modulus(p)?;
        for chi in select_characters(&modulus, &cfg.chars, cfg.seed) {
            for &(a, b) in &cfg.intervals {
                out.push((chi.clone(), a, b));
            }
        }
    }
    Ok(out)
}

/// Nine significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.8e}")
}

/// A CSV file: header plus string cells.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.header.iter().position(|h| h == name).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "no column '{name}' (have: {})",
                self.header.join(", ")
            ))
        })
    }

    /// Numeric values of a column; empty or non-numeric cells become `None`.
    pub fn column(&self, name: &str) -> Result<Vec<Option<f64>>> {
        let i = self.column_index(name)?;
        Ok(self
            .rows
            .iter()
            .map(|r| r.get(i).and_then(|s| s.trim().parse::<f64>().ok()))
            .collect())
    }

    /// Writes `# <invocation>`, the header and the rows.
    pub fn write_to<W: Write>(&self, mut w: W, invocation: &str) -> Result<()> {
        writeln!(w, "# {invocation}")?;
        let mut cw = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
        let csv_err = |e: csv::Error| Error::Io(e.to_string());
        cw.write_record(&self.header).map_err(csv_err)?;
        for row in &self.rows {
            cw.write_record(row).map_err(csv_err)?;
        }
        cw.flush()?;
        Ok(())
    }

    pub fn to_string_with(&self, invocation: &str) -> Result<String> {
        let mut buf = Vec::new();
        self.write_to(&mut buf, invocation)?;
        String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
    }

    /// Parses CSV text, skipping `#` comment lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .flexible(false)
            .from_reader(text.as_bytes());
        let bad = |e: csv::Error| Error::InvalidParameter(format!("malformed CSV: {e}"));
        let header: Vec<String> = rdr.headers().map_err(bad)?.iter().map(String::from).collect();
        if header.is_empty() || header.iter().all(|h| h.is_empty()) {
            return Err(Error::InvalidParameter("CSV has no header".into()));
        }
        let mut rows = Vec::new();
        for rec in rdr.records() {
            rows.push(rec.map_err(bad)?.iter().map(String::from).collect());
        }
        Ok(Self { header, rows })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

pub const MAX_COLUMNS: [&str; 8] = ["p", "c", "d", "lo", "hi", "argmax", "lo_lnln", "hi_ln"];

/// One certified maximum. `argmax` is the grid point `theta` attaining `lo`;
/// `lo_lnln = lo/(sqrt(p) ln ln p)` and `hi_ln = hi/(sqrt(p) ln p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxRow {
    pub p: u64,
    pub c: u64,
    pub d: u64,
    pub lo: f64,
    pub hi: f64,
    pub argmax: f64,
    pub lo_lnln: f64,
    pub hi_ln: f64,
}

pub fn max_row(s: &SumSpec, eps: f64) -> Result<MaxRow> {
    let cm = certified_max_sum(s, eps)?;
    let p = s.p();
    let (sp, lp) = ((p as f64).sqrt(), (p as f64).ln());
    Ok(MaxRow {
        p,
        c: s.character().index(),
        d: s.character().order(),
        lo: cm.lo,
        hi: cm.hi,
        argmax: cm.theta(),
        lo_lnln: cm.lo / (sp * lp.ln()),
        hi_ln: cm.hi / (sp * lp),
    })
}

/// Certified maxima for every selected character; needs a single interval.
pub fn max_sweep(cfg: &ExperimentConfig) -> Result<Vec<MaxRow>> {
    if cfg.intervals.len() != 1 {
        return Err(Error::InvalidParameter(
            "max takes a single (alpha, beta) interval".into(),
        ));
    }
    let jobs = jobs(cfg)?;
    jobs.par_iter()
        .map(|(chi, a, b)| max_row(&SumSpec::new(chi.clone(), *a, *b)?, cfg.eps))
        .collect()
}

pub fn max_table(rows: &[MaxRow]) -> CsvTable {
    let mut t = CsvTable::new(&MAX_COLUMNS);
    for r in rows {
        t.rows.push(vec![
            r.p.to_string(),
            r.c.to_string(),
            r.d.to_string(),
            fmt_float(r.lo),
            fmt_float(r.hi),
            fmt_float(r.argmax),
            fmt_float(r.lo_lnln),
            fmt_float(r.hi_ln),
        ]);
    }
    t
}

pub const WITNESS_COLUMNS: [&str; 18] = [
    "p",
    "c",
    "d",
    "alpha",
    "beta",
    "t",
    "k0",
    "k",
    "theta",
    "set_size",
    "predicted_set_size",
    "residual",
    "tilde_abs",
    "minorant",
    "lower_ratio",
    "value_abs",
    "final_ratio",
    "status",
];

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessRow {
    pub p: u64,
    pub c: u64,
    pub d: u64,
    pub alpha: f64,
    pub beta: f64,
    pub outcome: Result<LowerBoundWitness>,
}

/// Lower-bound witnesses; failures are kept per row.
pub fn witness_sweep(cfg: &ExperimentConfig) -> Result<Vec<WitnessRow>> {
    let jobs = jobs(cfg)?;
    Ok(jobs
        .par_iter()
        .map(|(chi, a, b)| WitnessRow {
            p: chi.p(),
            c: chi.index(),
            d: chi.order(),
            alpha: *a,
            beta: *b,
            outcome: SumSpec::new(chi.clone(), *a, *b).and_then(|s| lower_bound_witness(&s)),
        })
        .collect())
}

pub fn witness_table(rows: &[WitnessRow]) -> CsvTable {
    let mut t = CsvTable::new(&WITNESS_COLUMNS);
    for r in rows {
        let mut row = vec![
            r.p.to_string(),
            r.c.to_string(),
            r.d.to_string(),
            fmt_float(r.alpha),
            fmt_float(r.beta),
        ];
        match &r.outcome {
            Ok(w) => row.extend([
                fmt_float(w.t),
                w.targets.k0().to_string(),
                w.k.to_string(),
                fmt_float(w.theta(r.p)),
                w.set_size.to_string(),
                fmt_float(w.predicted_set_size),
                fmt_float(w.residual),
                fmt_float(w.tilde_value.norm()),
                fmt_float(w.minorant),
                fmt_float(w.lower_ratio),
                fmt_float(w.value.norm()),
                fmt_float(w.final_ratio),
                "ok".to_string(),
            ]),
            Err(e) => {
                row.extend(std::iter::repeat(String::new()).take(WITNESS_COLUMNS.len() - 6));
                row.push(e.to_string());
            }
        }
        t.rows.push(row);
    }
    t
}

pub const RANDOM_COLUMNS: [&str; 6] = ["model", "n", "trial", "lo", "hi", "normalized"];

pub fn random_table(stats: &RandomMaxStats) -> CsvTable {
    let mut t = CsvTable::new(&RANDOM_COLUMNS);
    for r in &stats.trials {
        t.rows.push(vec![
            stats.model.name().to_string(),
            stats.n.to_string(),
            r.trial.to_string(),
            fmt_float(r.lo),
            fmt_float(r.hi),
            fmt_float(r.normalized),
        ]);
    }
    t
}

/// Writes `table` to `<out_dir>/<name>` or, without a directory, to stdout.
pub fn emit(table: &CsvTable, out_dir: Option<&Path>, name: &str, invocation: &str) -> Result<Option<PathBuf>> {
    match out_dir {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let path = dir.join(name);
            let file = fs::File::create(&path)?;
            table.write_to(std::io::BufWriter::new(file), invocation)?;
            Ok(Some(path))
        }
        None => {
            let stdout = std::io::stdout();
            table.write_to(stdout.lock(), invocation)?;
            Ok(None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_config_text() {
        let cfg = ExperimentConfig::parse_str(
            "# sweep\nprimes = 100..10000\nper_decade = 2\nchars = order-2,3\nintervals = 0:1, 0.25:0.75\neps=0.1\nseed = 5 # trailing\nout = results\n",
        )
        .unwrap();
        assert_eq!(
            cfg.primes,
            PrimeSelection::Range { lo: 100, hi: 10000 }
        );
        assert_eq!(cfg.per_decade, 2);
        assert_eq!(cfg.chars, CharPolicy::Orders(vec![2, 3]));
        assert_eq!(cfg.intervals, vec![(0.0, 1.0), (0.25, 0.75)]);
        assert_eq!(cfg.eps, 0.1);
        assert_eq!(cfg.seed, 5);
        assert_eq!(cfg.out_dir, Some(PathBuf::from("results")));
        let ps = cfg.prime_list().unwrap();
        assert_eq!(ps.len(), 4);
        assert!(ps.iter().all(|&p| is_prime(p) && (100..=10000).contains(&p)));
    }

    #[test]
    fn overrides_replace_file_values() {
        let mut cfg = ExperimentConfig::parse_str("primes = 499\nseed = 1\n").unwrap();
        cfg.set("seed", "9").unwrap();
        cfg.set("primes", "1009,499").unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.prime_list().unwrap(), vec![499, 1009]);
    }

    #[test]
    fn config_validation() {
        assert!(ExperimentConfig::parse_str("bogus = 1").is_err());
        assert!(ExperimentConfig::parse_str("chars = maybe").is_err());
        assert!(ExperimentConfig::parse_str("no equals sign").is_err());
        let cfg = ExperimentConfig::parse_str("intervals = 0.5:0.5").unwrap();
        assert!(matches!(cfg.validate(), Err(Error::InvalidInterval { .. })));
        let cfg = ExperimentConfig::parse_str("primes = 499,500").unwrap();
        assert!(matches!(cfg.validate(), Err(Error::InvalidModulus { p: 500, .. })));
    }

    #[test]
    fn character_policies() {
        let m = build_modulus(31).unwrap();
        assert_eq!(select_characters(&m, &CharPolicy::All, 0).len(), 29);
        let leg = select_characters(&m, &CharPolicy::Legendre, 0);
        assert_eq!(leg.len(), 1);
        assert_eq!(leg[0].order(), 2);
        let a = select_characters(&m, &CharPolicy::Sample(5), 3);
        let b = select_characters(&m, &CharPolicy::Sample(5), 3);
        assert_eq!(a.len(), 5);
        assert_eq!(
            a.iter().map(|c| c.index()).collect::<Vec<_>>(),
            b.iter().map(|c| c.index()).collect::<Vec<_>>()
        );
        assert!(a.iter().all(|c| !c.is_principal()));
        let o = select_characters(&m, &CharPolicy::Orders(vec![3, 4, 5]), 0);
        assert_eq!(o.iter().map(|c| c.order()).collect::<Vec<_>>(), vec![5, 3]);
    }

    #[test]
    fn csv_round_trip() {
        let mut t = CsvTable::new(&["x", "y", "note"]);
        t.rows.push(vec!["1".into(), fmt_float(2.5), "a, b".into()]);
        t.rows.push(vec!["2".into(), String::new(), "ok".into()]);
        let text = t.to_string_with("mixsum test").unwrap();
        assert!(text.starts_with("# mixsum test\nx,y,note\n"));
        let back = CsvTable::parse(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.column("y").unwrap(), vec![Some(2.5), None]);
        assert!(back.column("z").is_err());
    }

    #[test]
    fn float_format_has_nine_digits() {
        assert_eq!(fmt_float(std::f64::consts::PI), "3.14159265e0");
        assert_eq!(fmt_float(-0.000123456789123), "-1.23456789e-4");
    }

    #[test]
    fn max_row_ratios() {
        let m = build_modulus(499).unwrap();
        let s = SumSpec::new(m.legendre(), 0.0, 1.0).unwrap();
        let r = max_row(&s, DEFAULT_EPS).unwrap();
        assert!(r.lo <= r.hi);
        assert!(r.hi_ln.is_finite() && r.hi_ln > 0.0);
        let sp = 499f64.sqrt();
        assert!((r.lo_lnln * sp * 499f64.ln().ln() - r.lo).abs() < 1e-9 * r.lo);
    }

    #[test]
    fn witness_errors_recorded_per_row() {
        let cfg = ExperimentConfig::parse_str("primes = 13,499\nchars = legendre\n").unwrap();
        let rows = witness_sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].outcome.is_err());
        assert!(rows[1].outcome.is_ok());
        let t = witness_table(&rows);
        assert!(t.rows[0].last().unwrap() != "ok");
        assert_eq!(t.rows[1].last().unwrap(), "ok");
        assert!(t.rows.iter().all(|r| r.len() == WITNESS_COLUMNS.len()));
    }
}
