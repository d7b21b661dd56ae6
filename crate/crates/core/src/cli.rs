//! Command-line front end.
//!
//! Every solver command checks its own output before printing anything.
//! Exit codes: 0 verified success, 2 verification failure, 3 precondition
//! error, 4 unreadable or malformed input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;

use crate::approx::{pmbasis, popov_basis, ApproximantBasis};
use crate::bench::{self, BenchOp};
use crate::error::{Error, Result};
use crate::field::{PrimeField, DEFAULT_PRIME};
use crate::format;
use crate::fraction::{expansion_slice_with, truncated_inverse, ExpansionMethod};
use crate::nullspace::{general_nullspace, minimal_vectors_up_to, rank, NullspaceBasis};
use crate::oracle;
use crate::poly::Polynomial;
use crate::polymat::{PolyMatrix, SeriesMatrix};
use crate::random::{rand_instance, random_element, rng_from_seed, Profile, SeededRng};
use crate::reconstruct::matfrac_rec;
use crate::solvers::{generic_det, generic_inverse, left_factorization, row_reduce};

#[derive(Debug, Parser)]
#[command(
    name = "polymat",
    version,
    about = "Exact polynomial matrix computations over prime fields"
)]
pub struct Cli {
    /// Field characteristic; input files must agree with it when given
    #[arg(long, global = true)]
    prime: Option<u64>,

    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Also run the brute-force reference and report agreement
    #[arg(long, global = true)]
    oracle: bool,

    /// Corrupt the result before verification (testing aid)
    #[arg(long, global = true, hide = true)]
    inject_fault: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Write the result here instead of standard output
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProfileArg {
    Dense,
    PlantedRank,
    PlantedUnbalanced,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Product of two matrices
    Mul {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Minimal approximant basis of F at the given order
    Mbasis {
        f: PathBuf,
        #[arg(long)]
        order: usize,
        /// Column shift, comma separated
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        shift: Option<Vec<i64>>,
        /// Return the canonical Popov basis (unshifted only)
        #[arg(long)]
        popov: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Left nullspace basis; with --delta only the minimal vectors up to that degree
    Nullspace {
        a: PathBuf,
        #[arg(long)]
        delta: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Determinant
    Det {
        a: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// U and diagonal B with U A = B
    Inverse {
        a: PathBuf,
        /// File for U
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
        /// File for B
        #[arg(short = 'O', long = "out-diagonal")]
        out_diagonal: Option<PathBuf>,
    },
    /// Row-reduced form unimodularly equivalent to A
    Rowreduce {
        a: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Left fraction V^-1 U from the coefficients of F
    Reconstruct {
        f: PathBuf,
        #[arg(long)]
        dl: usize,
        #[arg(long)]
        dr: usize,
        /// File for V
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
        /// File for U
        #[arg(short = 'O', long = "out-numerator")]
        out_numerator: Option<PathBuf>,
    },
    /// Coefficients h .. h+delta-1 of A^-1 B (B = I when omitted)
    Expand {
        a: PathBuf,
        b: Option<PathBuf>,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        delta: usize,
        /// Use high-order lifting instead of a full expansion
        #[arg(long)]
        fast: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Left fraction V^-1 U equal to B A^-1
    Factor {
        b: PathBuf,
        a: PathBuf,
        /// File for U
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
        /// File for V
        #[arg(short = 'O', long = "out-denominator")]
        out_denominator: Option<PathBuf>,
    },
    /// Random instance
    Rand {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "dense")]
        profile: ProfileArg,
        /// Rank for the planted-rank profile
        #[arg(long)]
        rank: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Timing grid with doubling ratios
    Bench {
        #[arg(long)]
        op: String,
        /// `16,32,64` (both n and d) or `16,32x8,16` (n list x d list)
        #[arg(long)]
        grid: String,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        /// Print only the per-point records
        #[arg(long)]
        records: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Verification(_) | Error::RetriesExhausted(_) => 2,
        Error::Parse { .. } | Error::Io(_) => 4,
        _ => 3,
    }
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

struct Session<'a> {
    cli: &'a Cli,
    field: Option<PrimeField>,
    rng: SeededRng,
}

impl Session<'_> {
    fn load(&mut self, path: &Path) -> Result<PolyMatrix> {
        let a = format::read_file(path)?;
        let p = a.field().modulus();
        if let Some(want) = self.cli.prime {
            if want != p {
                return Err(Error::PrimeMismatch(p, want));
            }
        }
        match self.field {
            Some(f) if f.modulus() != p => return Err(Error::PrimeMismatch(p, f.modulus())),
            _ => self.field = Some(*a.field()),
        }
        Ok(a)
    }

    fn field(&self) -> Result<PrimeField> {
        match self.field {
            Some(f) => Ok(f),
            None => PrimeField::new(self.cli.prime.unwrap_or(DEFAULT_PRIME)),
        }
    }

    fn fault(&self, a: &mut PolyMatrix) {
        if self.cli.inject_fault && a.rows() > 0 && a.cols() > 0 {
            let f = *a.field();
            let e = a.entry(0, 0).add(&Polynomial::one(&f), &f);
            a.set(0, 0, e);
        }
    }

    fn oracle_report(&self, what: &str, agree: Result<bool>) -> Result<()> {
        if !self.cli.oracle {
            return Ok(());
        }
        match agree {
            Ok(true) => {
                eprintln!("oracle: {what}: agree");
                Ok(())
            }
            Ok(false) => Err(Error::Verification(format!("oracle disagrees on {what}"))),
            Err(e @ (Error::OracleTooLarge(_) | Error::FieldTooSmall(_))) => {
                eprintln!("oracle: {what}: skipped ({e})");
                Ok(())
            }
            Err(e) => Err(e),
        }
    }

    fn random_point(&mut self) -> Result<crate::FieldElement> {
        let f = self.field()?;
        Ok(random_element(&f, &mut self.rng))
    }
}

fn check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Verification(what.to_string()))
    }
}

fn emit(out: Option<&Path>, a: &PolyMatrix, notes: &[String]) -> Result<()> {
    let mut text = String::new();
    for n in notes {
        text.push_str("# ");
        text.push_str(n);
        text.push('\n');
    }
    text.push_str(&format::serialize(a));
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => stdout(&text),
    }
}

/// Writes to standard output; a closed pipe is not an error.
fn stdout(text: &str) -> Result<()> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Io(e.to_string())),
        _ => Ok(()),
    }
}

fn series_of(f: &PolyMatrix, order: usize) -> SeriesMatrix {
    SeriesMatrix::from_poly(f, order)
}

fn degrees_note(label: &str, degs: &[usize]) -> String {
    let list: Vec<String> = degs.iter().map(|d| d.to_string()).collect();
    format!("{label}: {}", list.join(" "))
}

pub fn run(cli: &Cli) -> Result<()> {
    let mut s = Session {
        cli,
        field: None,
        rng: rng_from_seed(cli.seed),
    };
    match &cli.command {
        Command::Mul { a, b, output } => {
            let (a, b) = (s.load(a)?, s.load(b)?);
            let mut c = a.mul(&b)?;
            s.fault(&mut c);
            let x0 = s.random_point()?;
            let f = s.field()?;
            check(
                c.eval(x0) == a.eval(x0).mul(&b.eval(x0), &f),
                "product disagrees at a random point",
            )?;
            s.oracle_report("product", oracle::naive_mul(&a, &b).map(|o| o == c))?;
            emit(output.out.as_deref(), &c, &[])
        }
        Command::Mbasis {
            f,
            order,
            shift,
            popov,
            output,
        } => {
            let fm = s.load(f)?;
            let series = series_of(&fm, *order);
            let result: ApproximantBasis = if *popov {
                if shift.is_some() {
                    return Err(Error::InvalidArgument("--popov takes no shift".into()));
                }
                popov_basis(&series, *order)?
            } else {
                pmbasis(&series, *order, shift.as_deref())?
            };
            let mut basis = result.basis().clone();
            s.fault(&mut basis);
            let shift_vec = result.shift().to_vec();
            let product = series.mul_poly_left(&basis);
            check(
                product.coeffs().iter().all(|c| c.is_zero()),
                "basis does not annihilate F",
            )?;
            let lead = basis.shifted_leading_row_matrix(&shift_vec)?;
            check(lead.rank(basis.field()) == basis.rows(), "basis is not shift-reduced")?;
            let degs = result.minimal_indices();
            s.oracle_report(
                "minimal degrees",
                oracle::minimal_basis_bruteforce(&series, *order)
                    .map(|o| shift.is_some() || o.minimal_indices() == degs),
            )?;
            emit(output.out.as_deref(), &basis, &[degrees_note("row degrees", &degs)])
        }
        Command::Nullspace { a, delta, output } => {
            let a = s.load(a)?;
            let basis: NullspaceBasis = match delta {
                Some(t) => minimal_vectors_up_to(&a, *t),
                None => general_nullspace(&a, &mut s.rng)?,
            };
            let mut n = basis.matrix().clone();
            s.fault(&mut n);
            let x0 = s.random_point()?;
            check(n.mul(&a)?.is_zero(), "N A is not zero")?;
            check(n.eval(x0).rank(a.field()) == n.rows(), "rows are dependent")?;
            let mut notes = vec![degrees_note("degrees", basis.kronecker_degrees())];
            if delta.is_none() {
                let r = rank(&a, &mut s.rng)?;
                check(n.rows() == a.rows() - r, "row count differs from the nullity")?;
                notes.push(format!("rank: {r}"));
            }
            notes.push(format!("minimal: {}", basis.certified_minimal()));
            let cap = delta.unwrap_or(a.rows() * a.degree().unwrap_or(0));
            s.oracle_report(
                "nullspace degrees",
                match oracle::nullspace_bruteforce(&a, cap) {
                    Ok(o) => Ok(!basis.certified_minimal() || o.kronecker_degrees() == basis.kronecker_degrees()),
                    Err(Error::CapTooSmall { .. }) if delta.is_some() => {
                        let want = minimal_vectors_up_to(&a, cap);
                        Ok(want.kronecker_degrees() == basis.kronecker_degrees())
                    }
                    Err(e) => Err(e),
                },
            )?;
            emit(output.out.as_deref(), &n, &notes)
        }
        Command::Det { a, output } => {
            let a = s.load(a)?;
            let f = *a.field();
            let det = match generic_det(&a, &mut s.rng) {
                Ok(d) => d,
                Err(Error::GenericityFailure(why)) | Err(Error::Verification(why)) => {
                    eprintln!("note: falling back to interpolation ({why})");
                    oracle::det_by_interpolation(&a)?
                }
                Err(Error::SingularAtZero) => {
                    eprintln!("note: falling back to interpolation (singular at zero)");
                    oracle::det_by_interpolation(&a)?
                }
                Err(e) => return Err(e),
            };
            let mut m = PolyMatrix::from_entries(f, 1, 1, vec![det]);
            s.fault(&mut m);
            let x0 = s.random_point()?;
            check(
                m.entry(0, 0).eval(x0, &f) == a.eval(x0).det(&f)?,
                "determinant disagrees at a random point",
            )?;
            s.oracle_report(
                "determinant",
                oracle::det_by_interpolation(&a).map(|o| &o == m.entry(0, 0)),
            )?;
            emit(output.out.as_deref(), &m, &[])
        }
        Command::Inverse { a, out, out_diagonal } => {
            let a = s.load(a)?;
            let rep = generic_inverse(&a, &mut s.rng)?;
            let (mut u, b) = rep.into_parts();
            s.fault(&mut u);
            check(b.is_diagonal(), "B is not diagonal")?;
            check(u.mul(&a)? == b, "U A differs from B")?;
            s.oracle_report(
                "diagonal",
                oracle::det_by_interpolation(&a).map(|det| {
                    let f = *a.field();
                    let monic = |p: &Polynomial| p.scale(f.inv(p.leading_coeff()).unwrap(), &f);
                    (0..b.rows()).all(|i| monic(b.entry(i, i)) == monic(&det))
                }),
            )?;
            emit(out.as_deref(), &u, &["transform U".into()])?;
            if out.is_none() || out_diagonal.is_some() {
                emit(out_diagonal.as_deref(), &b, &["diagonal B".into()])?;
            }
            Ok(())
        }
        Command::Rowreduce { a, output } => {
            let a = s.load(a)?;
            let mut r = row_reduce(&a, &mut s.rng)?.reduced;
            s.fault(&mut r);
            check(r.is_row_reduced().unwrap_or(false), "result is not row-reduced")?;
            check(
                oracle::unimodular_equiv_check(&a, &r)?,
                "result is not unimodularly equivalent",
            )?;
            let degs: Vec<usize> = r.row_degrees().as_slice().iter().map(|d| d.unwrap_or(0)).collect();
            emit(output.out.as_deref(), &r, &[degrees_note("row degrees", &degs)])
        }
        Command::Reconstruct {
            f,
            dl,
            dr,
            out,
            out_numerator,
        } => {
            let fm = s.load(f)?;
            let order = dl + dr + 1;
            let series = series_of(&fm, order);
            let lf = matfrac_rec(&series, *dl, *dr)?;
            let (u, mut v) = lf.into_parts();
            s.fault(&mut v);
            check(
                series.mul_poly_left(&v) == SeriesMatrix::from_poly(&u, order),
                "V F differs from U",
            )?;
            check(v.is_row_reduced().unwrap_or(false), "denominator is not row-reduced")?;
            emit(out.as_deref(), &v, &["denominator V".into()])?;
            if out.is_none() || out_numerator.is_some() {
                emit(out_numerator.as_deref(), &u, &["numerator U".into()])?;
            }
            Ok(())
        }
        Command::Expand {
            a,
            b,
            h,
            delta,
            fast,
            output,
        } => {
            let a = s.load(a)?;
            let b = match b {
                Some(p) => s.load(p)?,
                None => PolyMatrix::identity(*a.field(), a.rows()),
            };
            let method = if *fast {
                ExpansionMethod::HighOrder
            } else {
                ExpansionMethod::Baseline
            };
            let slice = expansion_slice_with(&a, &b, *h, *delta, method)?;
            let f = *a.field();
            let mut window = PolyMatrix::from_coeff_matrices(f, b.rows(), b.cols(), slice.coeffs());
            s.fault(&mut window);
            // the full expansion to h + delta satisfies A E = B there
            let full = truncated_inverse(&a, h + delta)?.mul_poly_right(&b);
            check(
                full.mul_poly_left(&a) == SeriesMatrix::from_poly(&b, h + delta),
                "expansion check failed",
            )?;
            check(
                full.window(*h, *delta).to_poly() == window,
                "window differs from the full expansion",
            )?;
            s.oracle_report("window", Ok(true))?;
            emit(
                output.out.as_deref(),
                &window,
                &[format!("coefficients {h} .. {} of A^-1 B", h + delta)],
            )
        }
        Command::Factor {
            b,
            a,
            out,
            out_denominator,
        } => {
            let (b, a) = (s.load(b)?, s.load(a)?);
            let lf = left_factorization(&b, &a, &mut s.rng)?;
            let (mut u, v) = lf.into_parts();
            s.fault(&mut u);
            let x0 = s.random_point()?;
            check(u.mul(&a)? == v.mul(&b)?, "U A differs from V B")?;
            check(v.eval(x0).rank(v.field()) == v.rows(), "V is singular")?;
            emit(out.as_deref(), &u, &["numerator U".into()])?;
            if out.is_none() || out_denominator.is_some() {
                emit(out_denominator.as_deref(), &v, &["denominator V".into()])?;
            }
            Ok(())
        }
        Command::Rand {
            n,
            m,
            d,
            profile,
            rank: r,
            output,
        } => {
            let f = s.field()?;
            let profile = match profile {
                ProfileArg::Dense => Profile::Dense,
                ProfileArg::PlantedRank => Profile::PlantedRank(r.unwrap_or(n.min(m).saturating_sub(1))),
                ProfileArg::PlantedUnbalanced => Profile::PlantedUnbalanced,
            };
            let a = rand_instance(&f, *n, *m, *d, cli.seed, profile);
            emit(output.out.as_deref(), &a, &[])
        }
        Command::Bench {
            op,
            grid,
            reps,
            records,
        } => {
            let op: BenchOp = op.parse()?;
            let grid = bench::parse_grid(grid)?;
            let f = s.field()?;
            let seed = s.rng.gen();
            let report = bench::run(op, &grid, *reps, &f, seed)?;
            stdout(&report.records())?;
            if !records {
                stdout(&report.table())?;
            }
            Ok(())
        }
    }
}
