//! Command-line interface for the Jacobian gate.

use clap::{Parser, Subcommand};
use jacgate::exit_codes;
use jacgate::{calibrate, classify_periods, classify_tau, klein_check, modular_value};
use periods::{curve, periods as compute_periods, PeriodMatrix, PrecisionMode};
use std::path::PathBuf;
use std::process::ExitCode;
use ternary::ciani::CianiMatrix;
use ternary::{discriminant, macaulay_resultant, rat_from_str, rat_to_str, TernaryForm};
use theta::{chi_product, sigma140, theta_constants_all, SiegelPoint, ThetaCharacteristic};

#[derive(Parser)]
#[command(name = "jacgate", about = "Jacobian recognition for abelian threefolds", version)]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 212)]
    prec: u32,
    /// Tolerance override for reporting (diagnostics only).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Discriminant of a ternary form (JSON file).
    Disc {
        #[arg(long)]
        quartic: PathBuf,
    },
    /// Normalized resultant of three ternary forms (JSON files).
    Resultant {
        f1: PathBuf,
        f2: PathBuf,
        f3: PathBuf,
    },
    /// Ciani quartic of a symmetric matrix: form and closed-form
    /// discriminant, cross-checked against the resultant path.
    Ciani {
        /// a1,a2,a3,b1,b2,b3 (rationals).
        #[arg(long, value_delimiter = ',')]
        matrix: Vec<String>,
    },
    /// Theta constants at a Siegel point (JSON tau file).
    Theta {
        #[arg(long)]
        tau: PathBuf,
        /// Restrict to one characteristic, as e1bits,e2bits.
        #[arg(long, value_delimiter = ',')]
        char_bits: Option<Vec<u32>>,
    },
    /// The raw even-theta product P(tau).
    ChiProduct {
        #[arg(long)]
        tau: PathBuf,
    },
    /// Sigma_140 at a Siegel point.
    Sigma140 {
        #[arg(long)]
        tau: PathBuf,
    },
    /// Period matrix of a smooth plane quartic or hyperelliptic curve.
    Periods {
        #[arg(long)]
        quartic: Option<PathBuf>,
        /// Coefficients c0,c1,...,cd of y^2 = f(x), degree 7 or 8.
        #[arg(long, value_delimiter = ',')]
        hyperelliptic: Option<Vec<String>>,
        /// Re-integrate at the working precision along certified paths.
        #[arg(long)]
        high: bool,
    },
    /// Klein ratio of a smooth quartic: must equal the calibration constant.
    KleinCheck {
        #[arg(long)]
        quartic: PathBuf,
        #[arg(long)]
        high: bool,
    },
    /// Determine the calibration constant from the Ciani family and persist it.
    Calibrate {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify: Decomposable / HyperellipticJacobian / Jacobian / Twist.
    Classify {
        #[arg(long)]
        quartic: Option<PathBuf>,
        #[arg(long)]
        periods: Option<PathBuf>,
        #[arg(long)]
        tau: Option<PathBuf>,
        /// Calibration file from `calibrate` (defaults to the built-in c0).
        #[arg(long)]
        calibration: Option<PathBuf>,
    },
}

fn read_json(path: &PathBuf) -> Result<serde_json::Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_form(path: &PathBuf) -> Result<TernaryForm, String> {
    TernaryForm::from_json(&read_json(path)?).map_err(|e| e.to_string())
}

fn invalid(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(exit_codes::INVALID_INPUT as u8)
}

fn indeterminate(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("indeterminate: {msg}");
    ExitCode::from(exit_codes::INDETERMINATE as u8)
}

fn inconsistent(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("inconsistency: {msg}");
    ExitCode::from(exit_codes::INCONSISTENT as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let prec = cli.prec;
    match run(cli) {
        Ok(code) => code,
        Err(e) => match e {
            jacgate::Error::InvalidInput(_) | jacgate::Error::Exact(_) => invalid(e),
            jacgate::Error::Indeterminate(_) => indeterminate(e),
            jacgate::Error::Theta(theta::Error::InvalidInput(_)) => invalid(e),
            jacgate::Error::Periods(periods::Error::InvalidInput(_))
            | jacgate::Error::Periods(periods::Error::SingularCurve) => invalid(e),
            _ => {
                let _ = prec;
                inconsistent(e)
            }
        },
    }
}

fn mode_of(high: bool, prec: u32) -> PrecisionMode {
    if high {
        PrecisionMode::High(prec)
    } else {
        PrecisionMode::Double
    }
}

fn parse_hyperelliptic(coeffs: &[String]) -> Result<periods::AffineCurve, jacgate::Error> {
    let cs: Result<Vec<_>, _> = coeffs.iter().map(|s| rat_from_str(s)).collect();
    let f = periods::UniPoly::new(cs.map_err(jacgate::Error::Exact)?);
    curve::hyperelliptic_curve(&f).map_err(jacgate::Error::Periods)
}

fn run(cli: Cli) -> Result<ExitCode, jacgate::Error> {
    let prec = cli.prec;
    let json = cli.json;
    match cli.cmd {
        Cmd::Disc { quartic } => {
            let form = read_form(&quartic).map_err(jacgate::Error::InvalidInput)?;
            let disc = discriminant(&form)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "disc": rat_to_str(&disc.value),
                        "degree": disc.degree,
                        "weight": disc.weight,
                    })
                );
            } else {
                println!("Disc = {}", rat_to_str(&disc.value));
                println!("degree {}  weight {}", disc.degree, disc.weight);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Resultant { f1, f2, f3 } => {
            let a = read_form(&f1).map_err(jacgate::Error::InvalidInput)?;
            let b = read_form(&f2).map_err(jacgate::Error::InvalidInput)?;
            let c = read_form(&f3).map_err(jacgate::Error::InvalidInput)?;
            let r = macaulay_resultant(&a, &b, &c)?;
            if json {
                println!("{}", serde_json::json!({ "resultant": rat_to_str(&r) }));
            } else {
                println!("Res = {}", rat_to_str(&r));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Ciani { matrix } => {
            if matrix.len() != 6 {
                return Err(jacgate::Error::InvalidInput(
                    "--matrix needs a1,a2,a3,b1,b2,b3".into(),
                ));
            }
            let vals: Result<Vec<_>, _> = matrix.iter().map(|s| rat_from_str(s)).collect();
            let vals = vals?;
            let m = CianiMatrix::new(
                [vals[0].clone(), vals[1].clone(), vals[2].clone()],
                [vals[3].clone(), vals[4].clone(), vals[5].clone()],
            );
            let form = m.form();
            let closed = m.discriminant();
            let via_resultant = if form.is_zero() {
                None
            } else {
                Some(discriminant(&form)?.value)
            };
            let agree = via_resultant.as_ref().map(|v| *v == closed);
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "form": form.to_json(),
                        "disc_closed_form": rat_to_str(&closed),
                        "disc_resultant": via_resultant.as_ref().map(rat_to_str),
                        "agree": agree,
                    })
                );
            } else {
                println!("F_m = {}", form.to_json());
                println!("Disc (closed form) = {}", rat_to_str(&closed));
                if let Some(v) = via_resultant {
                    println!("Disc (resultant)   = {}", rat_to_str(&v));
                }
            }
            if agree == Some(false) {
                return Err(jacgate::Error::Internal("Ciani paths disagree".into()));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Theta { tau, char_bits } => {
            let sp = SiegelPoint::from_json(&read_json(&tau).map_err(jacgate::Error::InvalidInput)?, prec)?;
            let table = theta_constants_all(&sp, prec)?;
            let err = mpnum::float_to_dec(&table.error_bound());
            let render = |ch: &ThetaCharacteristic| {
                let v = table.value(ch);
                serde_json::json!({
                    "eps1": ch.eps1,
                    "eps2": ch.eps2,
                    "even": ch.is_even(),
                    "re": mpnum::float_to_dec(v.real()),
                    "im": mpnum::float_to_dec(v.imag()),
                })
            };
            let list: Vec<_> = match char_bits {
                Some(bits) if bits.len() == 2 => {
                    vec![render(&ThetaCharacteristic::from_bits(sp.g, bits[0], bits[1]))]
                }
                Some(_) => {
                    return Err(jacgate::Error::InvalidInput("--char-bits needs e1,e2".into()))
                }
                None => theta::enumerate_characteristics(sp.g).iter().map(&render).collect(),
            };
            println!(
                "{}",
                serde_json::json!({ "g": sp.g, "error_bound": err, "theta": list })
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::ChiProduct { tau } => {
            let sp = SiegelPoint::from_json(&read_json(&tau).map_err(jacgate::Error::InvalidInput)?, prec)?;
            let p = chi_product(&sp, prec)?;
            println!(
                "{}",
                serde_json::json!({
                    "re": mpnum::float_to_dec(p.value.real()),
                    "im": mpnum::float_to_dec(p.value.imag()),
                    "error_bound": mpnum::float_to_dec(&p.error_bound()),
                    "is_zero": p.is_zero(),
                    "margin_bits": p.zero_margin_bits(),
                })
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sigma140 { tau } => {
            let sp = SiegelPoint::from_json(&read_json(&tau).map_err(jacgate::Error::InvalidInput)?, prec)?;
            let s = sigma140(&sp, prec)?;
            println!(
                "{}",
                serde_json::json!({
                    "re": mpnum::float_to_dec(s.value.real()),
                    "im": mpnum::float_to_dec(s.value.imag()),
                    "error_bound": mpnum::float_to_dec(&s.error_bound()),
                    "is_zero": s.is_zero(),
                    "margin_bits": s.zero_margin_bits(),
                })
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Periods { quartic, hyperelliptic, high } => {
            let mode = mode_of(high, prec);
            let pm = match (quartic, hyperelliptic) {
                (Some(q), None) => {
                    let form = read_form(&q).map_err(jacgate::Error::InvalidInput)?;
                    let (c, _) = curve::from_quartic(&form)?;
                    compute_periods(&c, mode)?
                }
                (None, Some(cs)) => compute_periods(&parse_hyperelliptic(&cs)?, mode)?,
                _ => {
                    return Err(jacgate::Error::InvalidInput(
                        "need exactly one of --quartic / --hyperelliptic".into(),
                    ))
                }
            };
            println!("{}", pm.to_json());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::KleinCheck { quartic, high } => {
            let form = read_form(&quartic).map_err(jacgate::Error::InvalidInput)?;
            let (c, u) = curve::from_quartic(&form)?;
            let g = u.act(&form);
            let pm = compute_periods(&c, mode_of(high, prec))?;
            let kr = klein_check(&g, &pm, prec)?;
            let modulus = mpnum::cabs(&kr).to_f64();
            println!(
                "{}",
                serde_json::json!({
                    "kr_re": mpnum::float_to_dec(kr.real()),
                    "kr_im": mpnum::float_to_dec(kr.imag()),
                    "abs": modulus,
                    "abs_deviation": (modulus - 1.0).abs(),
                })
            );
            if (modulus - 1.0).abs() > 1e-4 {
                return Err(jacgate::Error::Internal("Klein ratio is not of modulus 1".into()));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Calibrate { out } => {
            let family = calibrate::standard_calibration_family();
            let cal = calibrate::calibrate(&family, prec)?;
            let rendered = cal.to_json();
            if let Some(path) = out {
                std::fs::write(&path, serde_json::to_string_pretty(&rendered).unwrap())
                    .map_err(|e| jacgate::Error::InvalidInput(e.to_string()))?;
            }
            println!("{rendered}");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Classify { quartic, periods: pfile, tau, calibration } => {
            let cal = match calibration {
                Some(path) => calibrate::CalibrationConstant::from_json(
                    &read_json(&path).map_err(jacgate::Error::InvalidInput)?,
                )?,
                None => calibrate::default_calibration(),
            };
            let result = match (quartic, pfile, tau) {
                (Some(q), None, None) => {
                    let form = read_form(&q).map_err(jacgate::Error::InvalidInput)?;
                    let (c, _) = curve::from_quartic(&form)?;
                    let pm = compute_periods(&c, PrecisionMode::High(prec))?;
                    classify_periods(&pm, prec, &cal)?
                }
                (None, Some(p), None) => {
                    let pm = PeriodMatrix::from_json(
                        &read_json(&p).map_err(jacgate::Error::InvalidInput)?,
                        prec,
                    )?;
                    classify_periods(&pm, prec, &cal)?
                }
                (None, None, Some(t)) => {
                    let sp = SiegelPoint::from_json(
                        &read_json(&t).map_err(jacgate::Error::InvalidInput)?,
                        prec,
                    )?;
                    classify_tau(&sp, prec, 40.0)?
                }
                _ => {
                    return Err(jacgate::Error::InvalidInput(
                        "need exactly one of --quartic / --periods / --tau".into(),
                    ))
                }
            };
            println!("{}", serde_json::to_string_pretty(&result.to_json()).unwrap());
            if result.verdict == jacgate::Verdict::Indeterminate {
                return Ok(ExitCode::from(exit_codes::INDETERMINATE as u8));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
