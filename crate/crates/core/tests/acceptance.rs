//! Acceptance criteria 1-8. Runs as a plain binary so every PASS/FAIL line
//! reaches stdout; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use abelian_codes::apparent::msd_exhaustive;
use abelian_codes::{
    bch_bivariate, bch_univariate, certify_distance, code_from_defining_set, detect_bch_parameters,
    minimum_distance_exhaustive, msd, multiply_dimension, orbit_matrix, reed_solomon, BchSpec, BivariatePolynomial,
    Field, Fourier, Moduli, OrbitPartition, OrbitSet, Strategy, DEFAULT_ENUMERATION_CAP, DEFAULT_MSD_CAP,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = std::result::Result<(), String>;

struct Criterion {
    name: &'static str,
    run: fn() -> Check,
    limit: Duration,
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn field(p: u64, m: u32) -> Field {
    Field::new(p, m).expect("field")
}

fn err(e: abelian_codes::Error) -> String {
    format!("{}: {e}", e.name())
}

/// Every orbit-closed subset of I, in bitmask order over the orbit list.
fn all_orbit_sets(moduli: Moduli, q: u64) -> Vec<OrbitSet> {
    let part = OrbitPartition::new(moduli, q).expect("partition");
    let k = part.len();
    (0u64..1 << k)
        .map(|mask| {
            let pts = (0..k)
                .filter(|&i| mask >> i & 1 == 1)
                .flat_map(|i| part.orbits()[i].clone());
            OrbitSet::closure(moduli, q, pts).expect("closure")
        })
        .collect()
}

fn criterion_1() -> Check {
    let f4 = field(2, 2);
    let m = Moduli::new(7, 9);
    let orbits = |pts: &[(usize, usize)]| -> OrbitSet {
        pts.iter()
            .map(|&pt| OrbitSet::q_orbit(m, 4, pt).unwrap())
            .reduce(|a, b| a.union(&b).unwrap())
            .unwrap()
    };
    let mut listed = vec![(0, 0), (1, 0), (3, 0)];
    listed.extend((0..7).map(|t| (t, 1)));
    let d1_expected = orbits(&listed);
    let d2_expected = d1_expected.union(&orbits(&[(0, 2), (0, 3), (0, 6)])).unwrap();

    let c1 = bch_bivariate(&f4, m, &BchSpec::new(&[2], &[3], &[0]).unwrap()).map_err(err)?;
    let c2 = bch_bivariate(&f4, m, &BchSpec::new(&[1, 2], &[2, 3], &[0, 0]).unwrap()).map_err(err)?;
    ensure!(c1.defining_set() == &d1_expected, "D(C1) = {:?}", c1.defining_set());
    ensure!(c2.defining_set() == &d2_expected, "D(C2) = {:?}", c2.defining_set());

    let r1 = c1.sd_report();
    ensure!(r1.sd_star == 3, "sd*(M(D(C1))) = {}", r1.sd_star);
    ensure!(r1.shortcut_applicable, "shortcut did not fire on M(D(C1))");
    let r2 = c2.sd_report();
    ensure!(r2.sd_star == 6, "sd*(M(D(C2))) = {}", r2.sd_star);
    ensure!(r2.sd_star >= 2 * 3, "sd*(M(D(C2))) below delta_1 delta_2");
    Ok(())
}

fn criterion_2() -> Check {
    let f2 = field(2, 1);
    let m = Moduli::cyclic(55);
    let d = OrbitSet::closure(m, 2, [(0, 1), (0, 5)]).unwrap();
    let c = code_from_defining_set(&f2, &d).map_err(err)?;
    ensure!(c.dimension() == 25, "dim(C) = {}", c.dimension());
    let bch = bch_univariate(&f2, 55, 7, 13).map_err(err)?;
    ensure!(bch == c, "B_2(55; 7, 13) differs from C");
    let found = detect_bch_parameters(&c).map_err(err)?;
    ensure!(
        found.iter().any(|x| (x.delta, x.offset, x.twist) == (7, 13, 1)),
        "(delta=7, b=13) not detected: {found:?}"
    );
    let c3 = multiply_dimension(&c, 3, DEFAULT_MSD_CAP).map_err(err)?;
    ensure!(c3.dimension() == 75, "dim(C_3) = {}", c3.dimension());
    let sd = c3.sd_star(DEFAULT_MSD_CAP).map_err(err)?;
    ensure!(sd.value == 7, "sd*(C_3) = {}", sd.value);
    Ok(())
}

fn criterion_3() -> Check {
    let f256 = field(2, 8);
    let rs = reed_solomon(&f256, 33, 0).map_err(err)?;
    ensure!(rs.dimension() == 223, "dim(RS) = {}", rs.dimension());
    let c5 = multiply_dimension(&rs, 5, DEFAULT_MSD_CAP).map_err(err)?;
    ensure!(c5.dimension() == 1115, "dim(C_5) = {}", c5.dimension());
    ensure!(c5.defining_set().is_column_constant(), "D(C_5) is not column-constant");
    let report = c5.sd_report();
    ensure!(report.shortcut_applicable, "shortcut did not fire on M(D(C_5))");
    let sd = c5.sd_star(DEFAULT_MSD_CAP).map_err(err)?;
    ensure!(sd.value == 33, "sd*(C_5) = {}", sd.value);
    let cert = certify_distance(&c5, Strategy::WitnessSdStar).map_err(err)?;
    ensure!(cert.exact() == Some(33), "certificate verdict {:?}", cert.verdict);
    Ok(())
}

fn criterion_4() -> Check {
    let f2 = field(2, 1);
    let m = Moduli::new(3, 7);
    let mut checked = 0;
    for d in all_orbit_sets(m, 2).into_iter().filter(|d| !d.is_full()) {
        let c = code_from_defining_set(&f2, &d).map_err(err)?;
        let sd = c.sd_star(DEFAULT_MSD_CAP).map_err(err)?.value;
        let dist = minimum_distance_exhaustive(&c, DEFAULT_ENUMERATION_CAP).map_err(err)?;
        ensure!(sd <= dist, "sd* {sd} > d {dist} for D = {:?}", d);
        checked += 1;
    }
    ensure!(checked == 63, "checked {checked} codes");
    Ok(())
}

fn criterion_5() -> Check {
    let f2 = field(2, 1);
    let mut multiplied = 0;
    for r in [7usize, 15] {
        for d in all_orbit_sets(Moduli::cyclic(r), 2)
            .into_iter()
            .filter(|d| !d.is_full())
        {
            let c = code_from_defining_set(&f2, &d).map_err(err)?;
            let sd = c.sd_star(DEFAULT_MSD_CAP).map_err(err)?;
            if sd.value <= 1 {
                continue;
            }
            let matches = detect_bch_parameters(&c).map_err(err)?;
            for n in [2usize, 3, 5].into_iter().filter(|&n| n % 2 == 1) {
                let cn = multiply_dimension(&c, n, DEFAULT_MSD_CAP).map_err(err)?;
                ensure!(cn.dimension() == n * c.dimension(), "dim mismatch r={r} n={n} D={d:?}");
                let sdn = cn.sd_star(DEFAULT_MSD_CAP).map_err(err)?.value;
                ensure!(sdn == sd.value, "sd* {sdn} != {} for r={r} n={n} D={d:?}", sd.value);
                for x in matches.iter().filter(|x| sd.optimized.contains(&(0, x.twist))) {
                    let at = c.retwisted((0, x.twist)).map_err(err)?;
                    let cn = multiply_dimension(&at, n, DEFAULT_MSD_CAP).map_err(err)?;
                    let spec = BchSpec::new(&[2], &[x.delta], &[x.offset]).unwrap();
                    let b = bch_bivariate(&f2, Moduli::new(n, r), &spec).map_err(err)?;
                    ensure!(
                        cn.defining_set() == b.defining_set(),
                        "BCH form differs: r={r} n={n} {x:?}"
                    );
                }
                multiplied += 1;
            }
        }
    }
    ensure!(multiplied > 0, "no code exercised");
    Ok(())
}

fn criterion_6() -> Check {
    let f2 = field(2, 1);
    let h = bch_univariate(&f2, 7, 3, 1).map_err(err)?;
    let h3 = multiply_dimension(&h, 3, DEFAULT_MSD_CAP).map_err(err)?;
    ensure!(
        (h3.length(), h3.dimension()) == (21, 12),
        "[{}, {}]",
        h3.length(),
        h3.dimension()
    );
    let d = minimum_distance_exhaustive(&h3, DEFAULT_ENUMERATION_CAP).map_err(err)?;
    let sd = h3.sd_star(DEFAULT_MSD_CAP).map_err(err)?.value;
    ensure!(d == 3 && sd == 3, "d = {d}, sd* = {sd}");
    Ok(())
}

fn random_poly(rng: &mut StdRng, f: &Field, m: Moduli) -> BivariatePolynomial {
    let coeffs = (0..m.size()).map(|_| rng.gen_range(0..f.size())).collect();
    BivariatePolynomial::from_coeffs(f, m, coeffs).unwrap()
}

fn criterion_7() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    for (p, deg, m) in [(2u64, 1u32, Moduli::new(3, 7)), (2, 2, Moduli::new(7, 9))] {
        let f = field(p, deg);
        let fourier = Fourier::new(&f, m).map_err(err)?;
        let ext = fourier.ext().clone();
        let mult = (1, 1);
        for _ in 0..500 {
            let a = random_poly(&mut rng, &f, m);
            let b = random_poly(&mut rng, &f, m);
            let sa = fourier.dft(&a, mult).map_err(err)?;
            let back = fourier
                .restrict_to_base(&fourier.inverse_dft(&sa).map_err(err)?)
                .map_err(err)?;
            ensure!(back == a, "round trip failed over {f:?} {m:?}");
            let sb = fourier.dft(&b, mult).map_err(err)?;
            let sab = fourier.dft(&a.mul(&b).map_err(err)?, mult).map_err(err)?;
            let pointwise = sa.values().iter().zip(sb.values()).map(|(&x, &y)| ext.mul(x, y));
            ensure!(
                sab.values().iter().copied().eq(pointwise),
                "convolution theorem failed over {f:?}"
            );
        }
        let part = OrbitPartition::new(m, f.size()).unwrap();
        for _ in 0..50 {
            let pts = (0..part.len())
                .filter(|_| rng.gen_bool(0.5))
                .flat_map(|i| part.orbits()[i].clone());
            let d = OrbitSet::closure(m, f.size(), pts).unwrap();
            let e = fourier.idempotent(&d, mult).map_err(err)?;
            ensure!(e.field().same_field(&f), "idempotent left the base field");
            ensure!(e.mul(&e).map_err(err)? == e, "e^2 != e for D = {d:?}");
            ensure!(fourier.defining_set_of(&e, mult).map_err(err)? == d, "D(e) != D");
        }
    }
    Ok(())
}

fn criterion_8() -> Check {
    let mut fired = 0;
    for d in all_orbit_sets(Moduli::new(3, 7), 2) {
        let om = orbit_matrix(&d);
        if !om.sd_star().shortcut_applicable {
            continue;
        }
        fired += 1;
        let fast = msd(&om, DEFAULT_MSD_CAP).map_err(err)?;
        let slow = msd_exhaustive(&om, DEFAULT_MSD_CAP).map_err(err)?;
        ensure!(fast == slow, "msd {fast} vs exhaustive {slow} for D = {d:?}");
    }
    ensure!(fired > 0, "shortcut never fired");
    Ok(())
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            name: "example 1: bivariate BCH orbits and sd*",
            run: criterion_1,
            limit: Duration::from_secs(1),
        },
        Criterion {
            name: "example 2: binary length-55 BCH times 3",
            run: criterion_2,
            limit: Duration::from_secs(30),
        },
        Criterion {
            name: "example 3: RS(255,223) times 5",
            run: criterion_3,
            limit: Duration::from_secs(60),
        },
        Criterion {
            name: "sd* <= d over every (3,7) binary code",
            run: criterion_4,
            limit: Duration::from_secs(120),
        },
        Criterion {
            name: "multiplication preserves sd*, r in {7,15}",
            run: criterion_5,
            limit: Duration::from_secs(120),
        },
        Criterion {
            name: "Hamming [21,12] exhaustive d = sd* = 3",
            run: criterion_6,
            limit: Duration::from_secs(5),
        },
        Criterion {
            name: "transform identities on random inputs",
            run: criterion_7,
            limit: Duration::from_secs(60),
        },
        Criterion {
            name: "msd shortcut agrees with exhaustive msd",
            run: criterion_8,
            limit: Duration::from_secs(120),
        },
    ];
    let mut failed = 0;
    for (i, Criterion { name, run, limit }) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed <= *limit {
                Ok(())
            } else {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(()) => println!("PASS criterion {} ({name}) in {elapsed:.2?}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}) in {elapsed:.2?}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
