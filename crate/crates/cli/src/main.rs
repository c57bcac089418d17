use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use weyl_core::exactnum::{Rat, TruncSeries, UniPoly};
use weyl_core::hcp::qp_tail;
use weyl_core::newton::{corners, is_subrectangular, polygon_data, Weight};
use weyl_core::normalform::{normal_form, schur, tail_report};
use weyl_core::pipeline::{decompose_automorphism, fi_recursion, lemma_suite, ode_report, poly_ode_solve, poly_ode_solve_dense, SuiteBounds};
use weyl_core::weyl::{parse_weyl, weyl_from_json_str, weyl_to_json, D1Op, WeylOp};

#[derive(Parser)]
#[command(name = "weylc", version, about = "Exact computations with Weyl-algebra operators")]
struct Cli {
    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Series precision for operators with series coefficients
    #[arg(long, global = true, env = "WEYL_PRECISION", default_value_t = 16)]
    precision: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Arithmetic on operators in x and d
    #[command(subcommand)]
    Op(OpCmd),
    /// Newton polygon data
    #[command(subcommand)]
    Newton(NewtonCmd),
    /// Schur operator of a normalised operator
    #[command(subcommand)]
    Schur(SchurCmd),
    /// Normal form S Q S^-1 of Q with respect to P, and the structure of its tail
    NormalForm {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Closed-form tail of order -p
    QpTail { p: u32 },
    /// Polynomial ODE  c g^A = H' g - kappa H g',  kappa = (z + 1) / d
    #[command(subcommand)]
    Ode(OdeCmd),
    /// Order-reduction recursion Q_{k+1} = Q_k^n - c P^m
    Recurse {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 16)]
        max_steps: usize,
    },
    /// Tame word for the endomorphism x -> P, d -> Q
    Decompose {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = weyl_core::pipeline::DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Run the verification suite
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// e.g. k=4,idx=4,a=3,cases=30
        #[arg(long)]
        bounds: Option<String>,
    },
}

#[derive(Subcommand)]
enum OpCmd {
    /// Apply P to a polynomial or truncated series in x
    Eval {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    Mul {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// [P, Q] = PQ - QP
    Comm {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
}

#[derive(Subcommand)]
enum NewtonCmd {
    Report {
        #[arg(allow_hyphen_values = true)]
        p: String,
        /// sigma,rho; repeatable
        #[arg(long = "weight", default_values_t = ["1,0".to_string(), "0,1".to_string(), "1,1".to_string()])]
        weights: Vec<String>,
    },
}

#[derive(Subcommand)]
enum SchurCmd {
    Compute {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
}

#[derive(Subcommand)]
enum OdeCmd {
    Solve {
        /// g as a polynomial in x
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        d: i64,
        /// defaults to (A - 1) d
        #[arg(long, allow_hyphen_values = true)]
        z: Option<i64>,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        c: String,
        /// also solve the dense linear system and compare
        #[arg(long)]
        dense: bool,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<weyl_core::Error> for Failure {
    fn from(e: weyl_core::Error) -> Failure {
        match e {
            weyl_core::Error::Parse { .. } | weyl_core::Error::Precondition(_) => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

fn out(text: String, json: Value) -> Output {
    Output { text, json, ok: true }
}

/// Operator from text, or from a file given as `@path` (JSON when it starts with `[` or `{`).
fn operator(arg: &str) -> Result<WeylOp<Rat>, Failure> {
    let Some(path) = arg.strip_prefix('@') else {
        return Ok(parse_weyl(arg)?);
    };
    let s = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    let t = s.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        Ok(weyl_from_json_str(t)?)
    } else {
        Ok(parse_weyl(s.trim())?)
    }
}

fn x_poly(arg: &str) -> Result<UniPoly<Rat>, Failure> {
    let op = operator(arg)?;
    if op.ord().unwrap_or(0) > 0 {
        return Err(Failure::Usage(format!("{arg}: expected a polynomial in x")));
    }
    Ok(UniPoly::new(&(), op.d_coeff(0)))
}

fn series(arg: &str, precision: usize) -> Result<TruncSeries<Rat>, Failure> {
    if arg.contains("O(") {
        return Ok(TruncSeries::parse(arg)?);
    }
    let p = x_poly(arg)?;
    Ok(TruncSeries::from_coeffs(&(), p.coeffs().to_vec(), precision))
}

fn weyl_out(op: &WeylOp<Rat>) -> Output {
    out(op.to_string(), weyl_to_json(op))
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let prec = cli.precision;
    Ok(match cli.cmd {
        Cmd::Op(OpCmd::Eval { p, f }) => {
            let p = operator(&p)?;
            let f = series(&f, prec)?;
            let r = D1Op::from_weyl(&p, f.precision()).apply(&f);
            out(r.to_string(), json!({"result": r.to_string()}))
        }
        Cmd::Op(OpCmd::Mul { p, q }) => weyl_out(&operator(&p)?.mul(&operator(&q)?)),
        Cmd::Op(OpCmd::Comm { p, q }) => weyl_out(&operator(&p)?.commutator(&operator(&q)?)),
        Cmd::Newton(NewtonCmd::Report { p, weights }) => {
            let p = operator(&p)?;
            let ws = weights.iter().map(|w| w.parse::<Weight>()).collect::<weyl_core::Result<Vec<_>>>()?;
            let poly = polygon_data(&p, &ws)?;
            let c = corners(&p)?;
            let sub = is_subrectangular(&p);
            let mut text = poly.to_string();
            let _ = writeln!(text, "corners en10 {:?} st10 {:?} en01 {:?} st01 {:?}", c.en10, c.st10, c.en01, c.st01);
            let _ = write!(text, "subrectangular {sub}");
            out(text, json!({"polygon": poly, "corners": c, "subrectangular": sub}))
        }
        Cmd::Schur(SchurCmd::Compute { p, depth }) => {
            let p = D1Op::from_weyl(&operator(&p)?, prec);
            let sd = schur(&p, depth)?;
            let text = format!("S    = {}\nS^-1 = {}", sd.s.to_text(), sd.s_inv.to_text());
            out(text, json!({"p": sd.p, "s": sd.s.to_json(), "s_inv": sd.s_inv.to_json()}))
        }
        Cmd::NormalForm { p, q, depth } => {
            let p = D1Op::from_weyl(&operator(&p)?, prec);
            let q = D1Op::from_weyl(&operator(&q)?, prec);
            let sd = schur(&p, depth)?;
            let nf = normal_form(&q, &sd)?;
            // the tail statement is about partners with [Q, P] = 1
            let unit = q.commutator(&p).to_weyl() == WeylOp::one(&());
            let tail = if unit && nf.low() < -(sd.p as i64) { Some(tail_report(&nf, sd.p)?) } else { None };
            let mut text = format!("normal form = {}", nf.to_text());
            if let Some(t) = &tail {
                let _ = write!(text, "\nnon-central orders {:?}\ntail matches {}", t.non_central, t.tail_ok);
            }
            out(text, json!({"normal_form": nf.to_json(), "commutator_is_one": unit, "tail": tail}))
        }
        Cmd::QpTail { p } => {
            let h = qp_tail(p)?.to_hcpc();
            out(h.to_text(), h.to_json())
        }
        Cmd::Ode(OdeCmd::Solve { g, a, d, z, c, dense }) => {
            let g = x_poly(&g)?;
            let z = z.unwrap_or((a as i64 - 1) * d);
            let c: Rat = c.parse()?;
            let sol = poly_ode_solve(&g, a, d, z, &c)?;
            let rep = ode_report(&g, &sol);
            let mut text = match &sol {
                None => "no polynomial solution".to_string(),
                Some(s) => match &s.kernel {
                    None => format!("H = {}", s.particular.text("x")),
                    Some(k) => format!("H = {} + t*({})", s.particular.text("x"), k.text("x")),
                },
            };
            let mut val = json!(rep);
            let mut ok = true;
            if dense {
                let other = poly_ode_solve_dense(&g, a, d, z, &c)?;
                let agree = match (&sol, &other) {
                    (None, None) => true,
                    (Some(x), Some(y)) => x.same_set(y),
                    _ => false,
                };
                let _ = write!(text, "\ndense solve agrees {agree}");
                val["dense_agrees"] = json!(agree);
                ok = agree;
            }
            Output { text, json: val, ok }
        }
        Cmd::Recurse { p, q, max_steps } => {
            let t = fi_recursion(&operator(&p)?, &operator(&q)?, max_steps, None)?;
            let mut text = format!("{:>3} {:>5} {:>3} {:>3} {:>8} {:>8}  Q_k\n", "k", "ord", "n", "m", "c", "eps");
            let show = |v: &Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
            for (k, s) in t.steps.iter().enumerate() {
                let r = |v: &Option<Rat>| v.as_ref().map_or("-".to_string(), |x| x.to_string());
                let _ = writeln!(text, "{k:>3} {:>5} {:>3} {:>3} {:>8} {:>8}  {}", show(&s.ord), show(&s.n), show(&s.m), r(&s.c), r(&s.eps), s.q);
            }
            let _ = write!(text, "stop {:?}", t.stop);
            out(text, json!(t))
        }
        Cmd::Decompose { p, q, max_steps } => match decompose_automorphism(&operator(&p)?, &operator(&q)?, max_steps) {
            Ok(word) => {
                let w: Vec<String> = word.iter().map(|g| g.to_string()).collect();
                let text = if w.is_empty() { "identity".to_string() } else { w.join(" ") };
                out(text, json!({"word": w}))
            }
            Err(f) => Output {
                text: format!("not decomposed: {}\nstuck at P = {}, Q = {}", f.reason, f.p, f.q),
                json: json!(f),
                ok: false,
            },
        },
        Cmd::Verify { seed, bounds } => {
            let b = match bounds {
                Some(s) => s.parse::<SuiteBounds>()?,
                None => SuiteBounds::default(),
            };
            let r = lemma_suite(seed, &b);
            let ok = r.all_pass();
            Output { text: r.to_string().trim_end().to_string(), json: json!(r), ok }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(o) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&o.json).expect("serialisable"));
            } else {
                println!("{}", o.text);
            }
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("weylc: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("weylc: {m}");
            ExitCode::from(1)
        }
    }
}
