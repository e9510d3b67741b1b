mod reproduce;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use abelian_codes::apparent::{msd, sd_star_at, DEFAULT_MSD_CAP};
use abelian_codes::fourier::parse_multiplier;
use abelian_codes::oracle::{certify_distance_with, DEFAULT_ENUMERATION_CAP};
use abelian_codes::{
    bch_bivariate, code_from_defining_set, detect_bch_parameters, minimum_distance_exhaustive, multiply_dimension,
    orbit_matrix, reed_solomon, AbelianCode, BchSpec, Field, Moduli, OrbitPartition, OrbitSet, Strategy,
};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "abcodes",
    version,
    about = "Build, inspect, multiply and certify bivariate abelian codes"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct Input {
    /// Code file; `-` reads standard input.
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    #[arg(value_name = "PATH", conflicts_with = "input")]
    path: Option<PathBuf>,
}

#[derive(Args)]
struct Output {
    /// Write the code file here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Verb {
    /// Canonical construction of GF(q).
    Field {
        #[arg(long, value_name = "p^m")]
        q: String,
    },
    /// q-orbits of Z_r1 x Z_r2.
    Orbits {
        #[arg(long, value_name = "p^m")]
        q: String,
        #[arg(long, value_name = "r1,r2")]
        r: String,
    },
    /// Code from a set of index pairs (closed under q).
    Construct {
        #[arg(long, value_name = "p^m")]
        q: String,
        #[arg(long, value_name = "r1,r2")]
        r: String,
        /// Points whose q-closure is the defining set, e.g. `[[0,1],[0,5]]`.
        #[arg(long, value_name = "PAIRS")]
        set: String,
        #[arg(long, value_name = "u,v")]
        multiplier: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Bivariate (or cyclic, with a single r) BCH code.
    Bch {
        #[arg(long, value_name = "p^m")]
        q: String,
        #[arg(long, value_name = "r1,r2")]
        r: String,
        /// Axes in {1,2}; defaults to 2.
        #[arg(long, value_delimiter = ',')]
        gamma: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        delta: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Reed-Solomon code of length q - 1.
    Rs {
        #[arg(long, value_name = "p^m")]
        q: String,
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = 0)]
        b: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Multiply the dimension of a cyclic code by n.
    Multiply {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_MSD_CAP)]
        cap: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Strong apparent distance of a code and its orbit matrix.
    SdStar {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_MSD_CAP)]
        cap: u32,
    },
    /// msd of the orbit matrix, at the stored root or a given twist.
    Msd {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_MSD_CAP)]
        cap: u32,
        /// Twist relative to the stored root.
        #[arg(long, value_name = "u,v")]
        multiplier: Option<String>,
    },
    /// BCH descriptions of a cyclic code.
    DetectBch {
        #[command(flatten)]
        input: Input,
    },
    /// Exhaustive minimum distance.
    Mindist {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Distance certificate.
    Certify {
        #[command(flatten)]
        input: Input,
        /// exhaustive, witness+sdstar or both.
        #[arg(long, default_value = "both")]
        strategy: String,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Rerun the three worked examples and compare against expected values.
    Reproduce {
        /// 1, 2 or 3; all when omitted.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        example: Option<u8>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Algebra(#[from] abelian_codes::Error),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0} checks failed")]
    ChecksFailed(usize),
}

impl CliError {
    fn name(&self) -> &'static str {
        match self {
            CliError::Algebra(e) => e.name(),
            CliError::Io(_) => "IoError",
            CliError::ChecksFailed(_) => "ChecksFailed",
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn parse_field(q: &str) -> CliResult<Field> {
    let bad = || abelian_codes::Error::Parse(format!("bad field size `{q}`"));
    let (p, m) = match q.split_once('^') {
        Some((p, m)) => (
            p.trim().parse().map_err(|_| bad())?,
            m.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let n: u64 = q.trim().parse().map_err(|_| bad())?;
            let p = (2..=n).find(|d| n.is_multiple_of(*d)).ok_or_else(bad)?;
            let mut m = 0u32;
            let mut rest = n;
            while rest.is_multiple_of(p) {
                rest /= p;
                m += 1;
            }
            if rest != 1 {
                return Err(bad().into());
            }
            (p, m)
        }
    };
    Ok(Field::new(p, m)?)
}

fn parse_moduli(r: &str) -> CliResult<Moduli> {
    let bad = || abelian_codes::Error::Parse(format!("bad moduli `{r}`"));
    let parts: Vec<usize> = r
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    match parts.as_slice() {
        [r2] if *r2 > 0 => Ok(Moduli::cyclic(*r2)),
        [r1, r2] if *r1 > 0 && *r2 > 0 => Ok(Moduli::new(*r1, *r2)),
        _ => Err(bad().into()),
    }
}

fn parse_points(s: &str) -> CliResult<Vec<(usize, usize)>> {
    serde_json::from_str(s).map_err(|e| abelian_codes::Error::Parse(format!("bad point list: {e}")).into())
}

fn read_code(input: &Input) -> CliResult<AbelianCode> {
    let path = input.input.as_ref().or(input.path.as_ref());
    let text = match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)?,
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(AbelianCode::from_file_str(&text)?)
}

fn emit_code(code: &AbelianCode, out: &Output) -> CliResult<String> {
    let text = code.to_file_string();
    match &out.out {
        Some(p) if p.as_os_str() != "-" => {
            fs::write(p, &text)?;
            let m = code.moduli();
            Ok(format!(
                "length\tdimension\tr1\tr2\tmultiplier\tpath\n{}\t{}\t{}\t{}\t{},{}\t{}\n",
                code.length(),
                code.dimension(),
                m.r1,
                m.r2,
                code.multiplier().0,
                code.multiplier().1,
                p.display()
            ))
        }
        _ => Ok(text),
    }
}

fn run(verb: Verb) -> CliResult<String> {
    match verb {
        Verb::Field { q } => {
            let f = parse_field(&q)?;
            let modulus: Vec<String> = f.modulus().iter().map(u64::to_string).collect();
            Ok(format!(
                "p\tm\tsize\tmodulus\tgenerator\n{}\t{}\t{}\t[{}]\t{}\n",
                f.characteristic(),
                f.degree(),
                f.size(),
                modulus.join(","),
                f.generator_code()
            ))
        }
        Verb::Orbits { q, r } => {
            let f = parse_field(&q)?;
            let part = OrbitPartition::new(parse_moduli(&r)?, f.size())?;
            let mut s = String::from("rep\tsize\tmembers\n");
            for (k, orbit) in part.orbits().iter().enumerate() {
                let (a, b) = part.rep(k);
                let members: Vec<String> = orbit.iter().map(|(a, b)| format!("({a},{b})")).collect();
                s += &format!("({a},{b})\t{}\t{}\n", orbit.len(), members.join(" "));
            }
            Ok(s)
        }
        Verb::Construct {
            q,
            r,
            set,
            multiplier,
            out,
        } => {
            let f = parse_field(&q)?;
            let moduli = parse_moduli(&r)?;
            for (a, b) in parse_points(&set)? {
                moduli.check((a, b))?;
            }
            let d = OrbitSet::closure(moduli, f.size(), parse_points(&set)?)?;
            let code = match multiplier {
                Some(m) => AbelianCode::new(&f, &d, parse_multiplier(&m)?)?,
                None => code_from_defining_set(&f, &d)?,
            };
            emit_code(&code, &out)
        }
        Verb::Bch {
            q,
            r,
            gamma,
            delta,
            b,
            out,
        } => {
            let f = parse_field(&q)?;
            let moduli = parse_moduli(&r)?;
            let gamma = if gamma.is_empty() { vec![2] } else { gamma };
            let spec = BchSpec::new(&gamma, &delta, &b)?;
            emit_code(&bch_bivariate(&f, moduli, &spec)?, &out)
        }
        Verb::Rs { q, delta, b, out } => emit_code(&reed_solomon(&parse_field(&q)?, delta, b)?, &out),
        Verb::Multiply { input, n, cap, out } => {
            let code = read_code(&input)?;
            emit_code(&multiply_dimension(&code, n, cap)?, &out)
        }
        Verb::SdStar { input, cap } => {
            let code = read_code(&input)?;
            let sd = code.sd_star(cap)?;
            let twists: Vec<String> = sd.optimized.iter().map(|(u, v)| format!("({u},{v})")).collect();
            Ok(format!(
                "{}\ncode_sd*\t{}\noptimized\t{}\n",
                code.sd_report(),
                sd.value,
                twists.join(" ")
            ))
        }
        Verb::Msd { input, cap, multiplier } => {
            let code = read_code(&input)?;
            let value = match multiplier {
                Some(m) => sd_star_at(code.defining_set(), parse_multiplier(&m)?, cap)?,
                None => msd(&orbit_matrix(code.defining_set()), cap)?,
            };
            Ok(format!("msd\n{value}\n"))
        }
        Verb::DetectBch { input } => {
            let code = read_code(&input)?;
            let mut s = String::from("delta\tb\tmultiplier\n");
            for m in detect_bch_parameters(&code)? {
                s += &format!("{}\t{}\t{}\n", m.delta, m.offset, m.twist);
            }
            Ok(s)
        }
        Verb::Mindist { input, cap } => {
            let code = read_code(&input)?;
            Ok(format!("min_distance\n{}\n", minimum_distance_exhaustive(&code, cap)?))
        }
        Verb::Certify { input, strategy, cap } => {
            let code = read_code(&input)?;
            let strategy: Strategy = strategy.parse()?;
            Ok(certify_distance_with(&code, strategy, cap, DEFAULT_MSD_CAP)?.to_string())
        }
        Verb::Reproduce { example } => {
            let examples = match example {
                Some(e) => vec![e],
                None => vec![1, 2, 3],
            };
            let table = reproduce::run(&examples)?;
            let failed = table.iter().filter(|row| !row.pass()).count();
            let text = reproduce::render(&table);
            if failed > 0 {
                print!("{text}");
                return Err(CliError::ChecksFailed(failed));
            }
            Ok(text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.verb) {
        Ok(text) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()).is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::FAILURE
        }
    }
}
