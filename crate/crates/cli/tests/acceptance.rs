//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use popdyn_cli::config::{ExperimentConfig, ExperimentKind};
use popdyn_cli::experiment::{hamiltonian_h2, run, ExperimentOutput};
use popdyn_core::dynamics::{
    build_dynamical_matrix, check_conservation, check_translation_invariance, ChipState,
    EvolutionMode, Rounding,
};
use popdyn_core::oracle::{dense_eigenvalues, dft_eigensystem, multiset_distance, to_dense};
use popdyn_core::semiring::{chi_quad, section_scalar};
use popdyn_core::{
    cayley_digraph, chi_elem, decorate, make_cyclic, section_elem, AlgebraElement, Complex64,
    GeneratorSet, GroupElement, PosQuad, SemiringElement,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const CASES: usize = 1000;
const LAW_TOL: f64 = 1e-12;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(cfg: &ExperimentConfig) -> Result<(ExperimentOutput, Duration), String> {
    let start = Instant::now();
    let out = run(cfg).map_err(|e| e.to_string())?;
    Ok((out, start.elapsed()))
}

fn stationary_exact() -> Outcome {
    let cfg = ExperimentConfig::new(ExperimentKind::StationaryH1);
    let (out, elapsed) = timed(&cfg)?;
    let eps = out.expected_epsilon.unwrap();
    let target = (std::f64::consts::PI / 10.0).cos();
    ensure((eps - target).abs() < 1e-15, || {
        format!("eps = {eps}, want {target}")
    })?;
    let ratios = out
        .reports
        .iter()
        .skip(1)
        .map(|r| r.ratios.iter().flatten().count())
        .sum::<usize>();
    ensure(ratios == 10 * 20, || {
        format!("only {ratios} ratios defined")
    })?;
    let dev = out.max_ratio_deviation().unwrap();
    ensure(dev < 1e-10, || format!("max deviation {dev:.3e}"))?;
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("max deviation {dev:.2e}, {elapsed:.2?}"))
}

fn stationary_chips() -> Outcome {
    let mut cfg = ExperimentConfig::new(ExperimentKind::StationaryH1);
    cfg.mode = EvolutionMode::Chip;
    cfg.initial_chips = 1_000_000;
    let mut summary = Vec::new();
    for rounding in [Rounding::Floor, Rounding::LargestRemainder] {
        cfg.rounding = rounding;
        let (out, elapsed) = timed(&cfg)?;
        let rel = out.max_relative_ratio_deviation().unwrap();
        let lost = out.trajectory.ledger().unwrap().total_lost();
        let frac = lost as f64 / cfg.initial_chips as f64;
        ensure(rel < 0.02, || {
            format!("{rounding:?}: ratio off by {:.3}%", rel * 100.0)
        })?;
        ensure(frac < 0.005, || format!("{rounding:?}: lost {lost} chips"))?;
        ensure(elapsed < Duration::from_secs(1), || {
            format!("{rounding:?}: took {elapsed:?}")
        })?;
        summary.push(format!(
            "{rounding:?}: ratio {:.1e} rel, lost {lost}, {elapsed:.2?}",
            rel
        ));
    }
    Ok(summary.join("; "))
}

fn complex_hamiltonian() -> Outcome {
    let mut cfg = ExperimentConfig::new(ExperimentKind::StationaryH2);
    let group = make_cyclic(20).unwrap();
    let dense = dense_eigenvalues(&to_dense(&hamiltonian_h2(&group).unwrap()).unwrap())
        .map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    let mut saw_negative = false;
    for k in [1usize, 3, 11] {
        cfg.k = k;
        let (out, _) = timed(&cfg)?;
        let theta = 2.0 * std::f64::consts::PI * k as f64 / 20.0;
        let formula = 0.5 * (theta.cos() + theta.sin());
        let eps = out.expected_epsilon.unwrap();
        ensure((eps - formula).abs() < 1e-12, || {
            format!("k={k}: eps {eps} vs {formula}")
        })?;
        saw_negative |= formula < 0.0;
        let dev = out.max_ratio_deviation().unwrap();
        ensure(dev < 1e-10, || format!("k={k}: ratio deviation {dev:.3e}"))?;
        let nearest = dense
            .iter()
            .map(|v| (v - Complex64::new(formula, 0.0)).norm())
            .fold(f64::INFINITY, f64::min);
        ensure(nearest < 1e-9, || {
            format!("k={k}: no dense eigenvalue near eps ({nearest:.2e})")
        })?;
        worst = worst.max(dev);
    }
    ensure(saw_negative, || "no negative eigenvalue among k".into())?;
    Ok(format!("max ratio deviation {worst:.2e}"))
}

fn time_evolution() -> Outcome {
    let mut cfg = ExperimentConfig::new(ExperimentKind::TimeEvolution);
    let (exact, _) = timed(&cfg)?;
    let fe = exact.fidelity.unwrap();
    ensure(
        (fe.relative_l2_difference - fe.truncation_error).abs() < 1e-10,
        || {
            format!(
                "exact difference {:.3e} vs truncation {:.3e}",
                fe.relative_l2_difference, fe.truncation_error
            )
        },
    )?;
    ensure(fe.relative_l2_difference < 0.01, || {
        format!("exact difference {:.3e}", fe.relative_l2_difference)
    })?;

    cfg.mode = EvolutionMode::Chip;
    let (chips, _) = timed(&cfg)?;
    let fc = chips.fidelity.unwrap();
    cfg.rounding = Rounding::Floor;
    let (floor, _) = timed(&cfg)?;
    let ff = floor.fidelity.unwrap();
    println!(
        "      info: floor rounding gives {:.3}% with {} chips lost",
        ff.relative_l2_difference * 100.0,
        floor.trajectory.ledger().unwrap().total_lost()
    );
    ensure(fc.relative_l2_difference < 0.01, || {
        format!("chip difference {:.3}%", fc.relative_l2_difference * 100.0)
    })?;
    Ok(format!(
        "chips (largest remainder) {:.3}%, exact {:.3}% = truncation",
        fc.relative_l2_difference * 100.0,
        fe.relative_l2_difference * 100.0
    ))
}

fn random_quad(rng: &mut ChaCha8Rng) -> PosQuad {
    PosQuad::new([0; 4].map(|_: i32| rng.gen_range(0.0..1.0))).unwrap()
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_semiring(rng: &mut ChaCha8Rng, n: usize) -> SemiringElement {
    let g = make_cyclic(n).unwrap();
    let terms: Vec<_> = (0..rng.gen_range(0..=3))
        .map(|_| (GroupElement(rng.gen_range(0..n)), random_quad(rng)))
        .collect();
    SemiringElement::from_terms(&g, terms).unwrap()
}

fn random_algebra(rng: &mut ChaCha8Rng, n: usize) -> AlgebraElement {
    let g = make_cyclic(n).unwrap();
    let terms: Vec<_> = (0..rng.gen_range(0..=3))
        .map(|_| (GroupElement(rng.gen_range(0..n)), random_complex(rng)))
        .collect();
    AlgebraElement::from_terms(&g, terms).unwrap()
}

fn semiring_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    let mut check = |err: f64, law: &str| -> Result<(), String> {
        worst = worst.max(err);
        ensure(err <= LAW_TOL, || format!("{law}: error {err:.3e}"))
    };
    for _ in 0..CASES {
        let (a, b) = (random_quad(&mut rng), random_quad(&mut rng));
        check(
            (chi_quad(a.add(b)) - (chi_quad(a) + chi_quad(b))).norm(),
            "chi additive",
        )?;
        check(
            (chi_quad(a.mul(b)) - chi_quad(a) * chi_quad(b)).norm(),
            "chi multiplicative",
        )?;

        let n = rng.gen_range(1..=12);
        let (x, y) = (random_semiring(&mut rng, n), random_semiring(&mut rng, n));
        let sum = chi_elem(&x.add(&y).unwrap());
        check(
            sum.max_abs_diff(&chi_elem(&x).add(&chi_elem(&y)).unwrap()),
            "chi additive on elements",
        )?;
        let prod = chi_elem(&x.mul(&y).unwrap());
        check(
            prod.max_abs_diff(&chi_elem(&x).mul(&chi_elem(&y)).unwrap()),
            "chi multiplicative on elements",
        )?;
    }
    for _ in 0..CASES {
        let z = random_complex(&mut rng);
        check((chi_quad(section_scalar(z)) - z).norm(), "chi of section")?;
        let n = rng.gen_range(1..=12);
        let q = random_algebra(&mut rng, n);
        check(
            chi_elem(&section_elem(&q)).max_abs_diff(&q),
            "chi of section on elements",
        )?;
    }
    for i in 0..CASES {
        let mut beta = random_quad(&mut rng).beta();
        let in_kernel = i % 2 == 0;
        if in_kernel {
            beta[2] = beta[0];
            beta[3] = beta[1];
        }
        let kernel = beta[0] == beta[2] && beta[1] == beta[3];
        let vanishes = chi_quad(PosQuad::new(beta).unwrap()).norm() <= LAW_TOL;
        ensure(kernel == vanishes, || {
            format!("kernel mismatch at {beta:?}")
        })?;
        ensure(kernel == in_kernel, || {
            format!("unexpected kernel element {beta:?}")
        })?;
    }
    for _ in 0..CASES {
        let z = random_complex(&mut rng);
        let r = rng.gen_range(0.0..10.0);
        let lhs = section_scalar(z * r).beta();
        let rhs = section_scalar(z).scale(r).unwrap().beta();
        let err = lhs
            .iter()
            .zip(rhs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        check(err, "section homogeneity")?;
    }
    for _ in 0..CASES {
        let n = rng.gen_range(1..=12);
        let (x, y) = (random_algebra(&mut rng, n), random_algebra(&mut rng, n));
        check(x.star().star().max_abs_diff(&x), "star involution")?;
        let lhs = x.mul(&y).unwrap().star();
        let rhs = y.star().mul(&x.star()).unwrap();
        check(lhs.max_abs_diff(&rhs), "star antimultiplicative")?;
        let tr = x.star().mul(&x).unwrap().trace();
        ensure(tr.re >= -LAW_TOL, || format!("negative trace {tr}"))?;
        check(tr.im.abs(), "trace of x* x is real")?;
        check((tr.re - x.norm_sqr()).abs(), "trace of x* x is the norm")?;
    }
    Ok(format!("{CASES} cases per law, worst error {worst:.2e}"))
}

fn subsets(items: &[usize], max: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for &x in items {
        let extended: Vec<Vec<usize>> = out
            .iter()
            .filter(|s| s.len() < max)
            .map(|s| s.iter().copied().chain([x]).collect())
            .collect();
        out.extend(extended);
    }
    out.retain(|s| !s.is_empty());
    out
}

fn random_weights(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..len).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut w: Vec<f64> = raw.iter().map(|r| r / total).collect();
    let rest: f64 = w[1..].iter().sum();
    w[0] = 1.0 - rest;
    w
}

fn dynamics_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut sets = 0;
    let mut lost_total = 0u64;
    for n in 4..=12 {
        let group = make_cyclic(n).unwrap();
        let nonidentity: Vec<usize> = (1..n).collect();
        for set in subsets(&nonidentity, 3) {
            let weights = random_weights(&mut rng, set.len());
            let gens = GeneratorSet::new(set.iter().map(|&s| GroupElement(s)).collect(), weights)
                .map_err(|e| e.to_string())?;
            let d = build_dynamical_matrix(&group, &gens).map_err(|e| e.to_string())?;
            let report = check_conservation(&d);
            ensure(report.conserved, || {
                format!(
                    "Z_{n} {set:?}: not conserved ({:.2e})",
                    report.max_deviation
                )
            })?;
            let invariant =
                check_translation_invariance(&d.to_sparse(), &group).map_err(|e| e.to_string())?;
            ensure(invariant, || {
                format!("Z_{n} {set:?}: not translation invariant")
            })?;
            let mut state =
                ChipState::new(&group, (0..n).map(|_| rng.gen_range(0..10_000)).collect())
                    .map_err(|e| e.to_string())?;
            for rounding in [Rounding::Floor, Rounding::LargestRemainder] {
                for _ in 0..3 {
                    let (next, lost) = d
                        .apply_chip_with(&state, rounding)
                        .map_err(|e| e.to_string())?;
                    ensure(state.total() == next.total() + lost, || {
                        format!(
                            "Z_{n} {set:?}: {} != {} + {lost}",
                            state.total(),
                            next.total()
                        )
                    })?;
                    lost_total += lost;
                    state = next;
                }
            }
            sets += 1;
        }
    }
    Ok(format!(
        "{sets} generator sets, accounting exact ({lost_total} chips lost overall)"
    ))
}

fn oracle_cross_validation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for case in 0..20 {
        let n = rng.gen_range(1..=32);
        let group = make_cyclic(n).unwrap();
        let terms: Vec<_> = (0..rng.gen_range(1..=4))
            .map(|_| (GroupElement(rng.gen_range(0..n)), random_complex(&mut rng)))
            .collect();
        let h = AlgebraElement::from_terms(&group, terms).unwrap();
        let dft: Vec<Complex64> = dft_eigensystem(&h)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|p| p.value)
            .collect();
        let dense = dense_eigenvalues(&to_dense(&h).unwrap()).map_err(|e| e.to_string())?;
        let dist = multiset_distance(&dft, &dense)
            .ok_or_else(|| format!("case {case}: spectrum sizes differ"))?;
        ensure(dist < 1e-9, || {
            format!("case {case} (N={n}): distance {dist:.3e}")
        })?;
        worst = worst.max(dist);
    }
    Ok(format!("20 circulants, worst distance {worst:.2e}"))
}

fn graph_structure() -> Outcome {
    let dec = decorate(&make_cyclic(8).unwrap()).unwrap();
    let s = dec.compose(GroupElement(0), GroupElement(1)).unwrap();
    let xi_s = dec.compose(GroupElement(1), GroupElement(1)).unwrap();

    let single = cayley_digraph(&dec, &GeneratorSet::uniform(vec![s]).unwrap()).unwrap();
    ensure(single.vertices.len() == 32, || {
        format!("{} vertices", single.vertices.len())
    })?;
    ensure(single.arcs.len() == 32 && single.colors == 1, || {
        format!("{} arcs in {} colors", single.arcs.len(), single.colors)
    })?;
    let cycles = single.color_cycles(0).ok_or("S is not a permutation")?;
    ensure(
        cycles.len() == 4 && cycles.iter().all(|c| c.len() == 8),
        || {
            format!(
                "cycle lengths {:?}",
                cycles.iter().map(Vec::len).collect::<Vec<_>>()
            )
        },
    )?;

    let double = cayley_digraph(&dec, &GeneratorSet::uniform(vec![s, xi_s]).unwrap()).unwrap();
    ensure(double.arcs.len() == 64 && double.colors == 2, || {
        format!("{} arcs in {} colors", double.arcs.len(), double.colors)
    })?;
    ensure(
        (0..2).all(|c| double.arcs_of_color(c).count() == 32),
        || "uneven colors".into(),
    )?;
    Ok("32 arcs as 4 disjoint 8-cycles; 64 arcs in 2 colors with xi S".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("stationary state, exact mode", stationary_exact),
        ("stationary state, chip mode", stationary_chips),
        ("complex hamiltonian", complex_hamiltonian),
        ("time evolution", time_evolution),
        ("semiring laws", semiring_laws),
        ("dynamics laws", dynamics_laws),
        ("oracle cross-validation", oracle_cross_validation),
        ("graph structure", graph_structure),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
