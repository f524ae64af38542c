//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use rand::Rng;

use qprep::cli;
use qprep::coexistence::{
    coexist_commuting, coexist_feasibility, combine_coexistent, neighborhood_probes, theorem5_experiment,
    triple_effects, triple_witness, CoexistenceCertificate, DykstraConfig, Status, EPSILON,
};
use qprep::frame::gram_rank;
use qprep::operator::basis_vector;
use qprep::random;
use qprep::{eig, hs_inner, is_psd, Effect, Frame, HermitianOperator, Matrix, QPRepresentation};

type Check = fn() -> Result<String, String>;

fn main() {
    let criteria: [(&str, Duration, Check); 9] = [
        ("1 dual-frame biorthogonality", Duration::from_secs(10), dual_biorthogonality),
        ("2 reconstruction identity and round trips", Duration::from_secs(10), reconstruction),
        ("3 negativity of dual for positive bases", Duration::from_secs(10), negativity_necessity),
        ("4 pairwise-but-not-jointly coexistent triple", Duration::from_secs(5), triple),
        ("5 approximation lower bound 1/64", Duration::from_secs(60), approximation_bound),
        ("6 coexistence decisions on analytic corpus", Duration::from_secs(120), decision_corpus),
        ("7 convex combination certificates", Duration::from_secs(10), combiner),
        ("8 dyadic POVM from effects", Duration::from_secs(10), dyadic_construction),
        ("9 CLI byte determinism", Duration::from_secs(120), cli_determinism),
    ];
    let mut failures = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; runtime {elapsed:.2?} exceeds {limit:?}")),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({elapsed:.2?})"),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {name}: {detail} ({elapsed:.2?})");
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn test_frames() -> Result<Vec<(String, Frame)>, String> {
    let mut frames = vec![("tetrahedral".to_string(), Frame::tetrahedral())];
    for n in [2, 3] {
        for seed in 0..50 {
            let f = Frame::random_positive_basis(n, seed).map_err(|e| e.to_string())?;
            frames.push((format!("n={n} seed={seed}"), f));
        }
    }
    Ok(frames)
}

fn dual_biorthogonality() -> Result<String, String> {
    let mut worst_bio: f64 = 0.0;
    let mut worst_trace: f64 = 0.0;
    let frames = test_frames()?;
    for (label, frame) in &frames {
        let dual = frame.dual().map_err(|e| format!("{label}: {e}"))?;
        for (i, f) in frame.elements().iter().enumerate() {
            for (j, d) in dual.elements().iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst_bio = worst_bio.max((hs_inner(f, d).unwrap() - target).abs());
            }
        }
        for d in dual.elements() {
            worst_trace = worst_trace.max((d.trace() - 1.0).abs());
        }
    }
    ensure(worst_bio <= 1e-8 && worst_trace <= 1e-8, || {
        format!("biorthogonality {worst_bio:e}, trace {worst_trace:e}")
    })?;
    Ok(format!(
        "{} frames, max |tr(F_i D_j) - δ_ij| = {worst_bio:.1e}, max |tr D_j - 1| = {worst_trace:.1e}",
        frames.len()
    ))
}

fn reconstruction() -> Result<String, String> {
    let mut worst: f64 = 0.0;
    let mut worst_round: f64 = 0.0;
    let mut reps = vec![Frame::tetrahedral()];
    for n in [2, 3] {
        reps.push(Frame::random_positive_basis(n, 1000 + n as u64).unwrap());
    }
    for frame in reps {
        let rep = QPRepresentation::new(frame).map_err(|e| e.to_string())?;
        let n = rep.dim();
        for k in 0..200u64 {
            let w = random::random_state(n, 1 + (k as usize % n), 2 * k).unwrap().into_op();
            let a = random::random_effect(n, 2 * k + 1).unwrap().into_op();
            let p = rep.t_map(&w).unwrap();
            let q = rep.s_map(&a).unwrap();
            worst = worst.max((hs_inner(&w, &a).unwrap() - p.dot(&q)).abs());
            // T′S = id on effects, S′T = id on states.
            let a_back = rep.t_adjoint(q.values()).unwrap();
            let w_back = rep.inverse_t(p.values()).unwrap();
            worst_round = worst_round.max(a_back.max_abs_diff(&a)).max(w_back.max_abs_diff(&w));
        }
    }
    ensure(worst <= 1e-9 && worst_round <= 1e-9, || format!("reconstruction {worst:e}, round trip {worst_round:e}"))?;
    Ok(format!("600 pairs, max |tr WA - <TW,SA>| = {worst:.1e}, max round-trip error = {worst_round:.1e}"))
}

fn negativity_necessity() -> Result<String, String> {
    let mut least_negative = f64::NEG_INFINITY;
    for n in [2, 3] {
        for seed in 0..50 {
            let frame = Frame::random_positive_basis(n, seed).unwrap();
            let dual = frame.dual().unwrap();
            let min = dual.elements().iter().map(|d| eig(d).unwrap().min()).fold(f64::INFINITY, f64::min);
            ensure(min < -1e-10, || format!("n={n} seed={seed}: dual is positive (min eigenvalue {min:e})"))?;
            least_negative = least_negative.max(min);
        }
    }
    Ok(format!("100 bases, every dual has a negative element; weakest min eigenvalue {least_negative:.4}"))
}

fn triple() -> Result<String, String> {
    let r = triple_witness(&basis_vector(2, 0), &basis_vector(2, 1), &DykstraConfig::default())
        .map_err(|e| e.to_string())?;
    // G1 + G2 + G3 = 3/4 I + 1/4 (r1 + r2 + r3)·σ with unit Bloch vectors at
    // 0°, 60°, 120° in one plane.
    let r3 = 3f64.sqrt();
    let bloch = [(1.0, 0.0), (0.5, r3 / 2.0), (-0.5, r3 / 2.0)];
    let (x, y) = bloch.iter().fold((0.0, 0.0), |(x, y), (a, b)| (x + a, y + b));
    let oracle = 0.75 + 0.25 * (x * x + y * y).sqrt();
    ensure((oracle - 1.25).abs() < 1e-15, || "oracle".into())?;
    ensure((r.joint_sum_max_eigenvalue - oracle).abs() <= 1e-10, || {
        format!("max eigenvalue {} vs {oracle}", r.joint_sum_max_eigenvalue)
    })?;
    ensure(r.pair_status.iter().all(|s| s == "feasible"), || format!("pair status {:?}", r.pair_status))?;
    ensure(r.pair_iterations.iter().all(|&i| i <= 20_000), || format!("iterations {:?}", r.pair_iterations))?;
    ensure(r.common_lower_bounds_zero && r.joint_sum_exceeds_identity, || "lower-bound check failed".into())?;
    Ok(format!("λmax(G1+G2+G3) = {:.12}, pairs feasible in {:?} cycles", r.joint_sum_max_eigenvalue, r.pair_iterations))
}

/// Brute-force minimax over a 51-point grid per coefficient.
fn grid_oracle(frame: &Frame, probes: &[HermitianOperator], target: &HermitianOperator) -> f64 {
    let c: Vec<Vec<f64>> =
        probes.iter().map(|w| frame.elements().iter().map(|f| hs_inner(w, f).unwrap()).collect()).collect();
    let b: Vec<f64> = probes.iter().map(|w| hs_inner(w, target).unwrap()).collect();
    let n = frame.len();
    let steps = 51usize;
    let mut idx = vec![0usize; n];
    let mut best = f64::INFINITY;
    loop {
        let worst = (0..probes.len())
            .map(|i| {
                let s: f64 = (0..n).map(|j| c[i][j] * idx[j] as f64 / (steps - 1) as f64).sum();
                (s - b[i]).abs()
            })
            .fold(0.0, f64::max);
        best = best.min(worst);
        let mut k = 0;
        loop {
            if k == n {
                return best;
            }
            idx[k] += 1;
            if idx[k] < steps {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn approximation_bound() -> Result<String, String> {
    let (phi, psi) = (basis_vector(2, 0), basis_vector(2, 1));
    let probes = neighborhood_probes(&phi, &psi);
    let named = [
        ("tetrahedral", Frame::tetrahedral()),
        ("projective", Frame::projective(&[phi.clone(), psi.clone()]).unwrap()),
    ];
    let mut detail = Vec::new();
    for (name, frame) in &named {
        let r = theorem5_experiment(frame, &phi, &psi).map_err(|e| e.to_string())?;
        ensure(r.bound_check, || format!("{name}: bound fails"))?;
        let g_phi = grid_oracle(frame, &probes, &probes[0]);
        let g_chi = grid_oracle(frame, &probes, &probes[2]);
        ensure((r.delta_phi - g_phi).abs() <= 2e-2 && (r.delta_chi - g_chi).abs() <= 2e-2, || {
            format!("{name}: LP ({}, {}) vs grid ({g_phi}, {g_chi})", r.delta_phi, r.delta_chi)
        })?;
        detail.push(format!("{name} δφ={:.4} δχ={:.4}", r.delta_phi, r.delta_chi));
    }
    let mut smallest = f64::INFINITY;
    for seed in 0..50 {
        let frame = Frame::random_positive_basis(2, 5000 + seed).unwrap();
        let r = theorem5_experiment(&frame, &phi, &psi).map_err(|e| e.to_string())?;
        ensure(r.bound_check, || format!("seed {seed}: max δ = {}", r.delta_phi.max(r.delta_chi)))?;
        smallest = smallest.min(r.delta_phi.max(r.delta_chi));
    }
    ensure(smallest >= EPSILON - 1e-6, || format!("smallest {smallest}"))?;
    Ok(format!("{}; 50 random bases, smallest max(δφ, δχ) = {smallest:.4}", detail.join(", ")))
}

fn commuting_pair(rng: &mut rand_chacha::ChaCha8Rng, dim: usize) -> (Matrix, Vec<f64>, Vec<f64>) {
    let u = random::unitary(dim, rng);
    let a: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>()).collect();
    let b: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>()).collect();
    (u, a, b)
}

fn effect(op: HermitianOperator) -> Effect {
    Effect::new(op, 1e-10).expect("valid effect")
}

fn decision_corpus() -> Result<String, String> {
    let config = DykstraConfig::default();
    let mut worst_residual: f64 = 0.0;
    for seed in 0..100 {
        let mut rng = random::rng(seed);
        let dim = 2 + (seed as usize % 3);
        let (u, a, b) = commuting_pair(&mut rng, dim);
        let f = HermitianOperator::from_spectral(&a, &u);
        let g = HermitianOperator::from_spectral(&b, &u);
        let out = coexist_feasibility(&effect(f.clone()), &effect(g.clone()), &config).map_err(|e| e.to_string())?;
        let cert = out.status.certificate().ok_or_else(|| format!("commuting seed {seed}: {}", out.status.name()))?;
        let res = cert.residual(&f, &g).unwrap().max();
        ensure(res <= 1e-7, || format!("commuting seed {seed}: residual {res:e}"))?;
        worst_residual = worst_residual.max(res);
    }
    let (mut infeasible, mut undecided) = (0, 0);
    for seed in 0..100 {
        let mut rng = random::rng(seed);
        let p = HermitianOperator::projector(&random::unit_vector(2, &mut rng));
        let q = HermitianOperator::projector(&random::unit_vector(2, &mut rng));
        ensure(p.commutator_norm(&q) > 1e-6, || format!("seed {seed} draws a commuting pair"))?;
        let out = coexist_feasibility(&effect(p), &effect(q), &config).map_err(|e| e.to_string())?;
        match out.status {
            Status::Feasible(_) => return Err(format!("non-commuting seed {seed} decided feasible")),
            Status::Infeasible { .. } => infeasible += 1,
            Status::Undecided => undecided += 1,
        }
    }
    ensure(infeasible >= 90, || format!("only {infeasible}% infeasible"))?;
    Ok(format!(
        "100 commuting feasible (max residual {worst_residual:.1e}); non-commuting {infeasible} infeasible, {undecided} undecided"
    ))
}

fn weights(rng: &mut rand_chacha::ChaCha8Rng, k: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| rng.gen::<f64>() + 1e-3).collect();
    let s: f64 = raw.iter().sum();
    raw.iter().map(|x| x / s).collect()
}

fn combiner() -> Result<String, String> {
    let triple = triple_effects(&basis_vector(2, 0), &basis_vector(2, 1));
    let mut worst: f64 = 0.0;
    let mut worst_sum: f64 = 0.0;
    for seed in 0..100u64 {
        let mut rng = random::rng(seed);
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=3);
        let (f_list, g_list, certs): (
            Vec<HermitianOperator>,
            Vec<HermitianOperator>,
            Vec<Vec<Option<CoexistenceCertificate>>>,
        ) = if seed % 2 == 0 {
            // Half-projectors: any two satisfy G_i + G_j ≤ I, so H = 0.
            let f: Vec<_> = (0..m).map(|_| triple[rng.gen_range(0..3)].clone()).collect();
            let g: Vec<_> = (0..n).map(|_| triple[rng.gen_range(0..3)].clone()).collect();
            let c = f
                .iter()
                .map(|fi| {
                    g.iter()
                        .map(|gj| Some(CoexistenceCertificate::from_h(fi, gj, HermitianOperator::zeros(2))))
                        .collect()
                })
                .collect();
            (f, g, c)
        } else {
            let dim = 3;
            let u = random::unitary(dim, &mut rng);
            let mut diag = || -> HermitianOperator {
                let d: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>()).collect();
                HermitianOperator::from_spectral(&d, &u)
            };
            let f: Vec<_> = (0..m).map(|_| diag()).collect();
            let g: Vec<_> = (0..n).map(|_| diag()).collect();
            let c = f
                .iter()
                .map(|fi| {
                    g.iter().map(|gj| coexist_commuting(&effect(fi.clone()), &effect(gj.clone())).unwrap()).collect()
                })
                .collect();
            (f, g, c)
        };
        let alpha = weights(&mut rng, m);
        let beta = weights(&mut rng, n);
        let (cert, segs) =
            combine_coexistent(&f_list, &alpha, &g_list, &beta, &certs).map_err(|e| format!("seed {seed}: {e}"))?;
        let f = HermitianOperator::linear_combination(&alpha, &f_list);
        let g = HermitianOperator::linear_combination(&beta, &g_list);
        let res = cert.residual(&f, &g).unwrap().max();
        ensure(res <= 1e-10, || format!("seed {seed}: residual {res:e}"))?;
        let s: f64 = segs.iter().map(|s| s.delta).sum();
        ensure((s - 1.0).abs() <= 1e-12, || format!("seed {seed}: Σδ = {s}"))?;
        worst = worst.max(res);
        worst_sum = worst_sum.max((s - 1.0).abs());
    }
    Ok(format!("100 combinations, max invariant violation {worst:.1e}, max |Σδ - 1| = {worst_sum:.1e}"))
}

/// Rank of a list of real vectors by Gaussian elimination with partial
/// pivoting.
fn elimination_rank(mut rows: Vec<Vec<f64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let scale = rows.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    let tol = 1e-9 * scale.max(1.0);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).max_by(|&a, &b| rows[a][c].abs().total_cmp(&rows[b][c].abs())) else { break };
        if rows[p][c].abs() <= tol {
            continue;
        }
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank {
                let factor = rows[r][c] / rows[rank][c];
                for k in c..cols {
                    rows[r][k] -= factor * rows[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

fn dyadic_construction() -> Result<String, String> {
    let mut complete = 0;
    let mut total = 0;
    for n in [2usize, 3] {
        for seed in 0..20u64 {
            // Lists of length n² − 1 span together with I; shorter ones do not.
            let len = if seed % 4 == 3 { n * n - 2 } else { n * n - 1 + (seed as usize % 3) };
            let effects: Vec<Effect> =
                (0..len).map(|k| random::random_effect(n, 100 * seed + k as u64).unwrap()).collect();
            let frame = Frame::dyadic_from_effects(&effects, n).map_err(|e| format!("n={n} seed={seed}: {e}"))?;
            let residual = frame.normalization_residual();
            ensure(residual <= 1e-10, || format!("n={n} seed={seed}: normalization {residual:e}"))?;
            ensure(frame.elements().iter().all(|e| is_psd(e, 1e-10)), || {
                format!("n={n} seed={seed}: element not PSD")
            })?;
            let mut span: Vec<Vec<f64>> = vec![HermitianOperator::identity(n).real_coordinates()];
            span.extend(effects.iter().map(|e| e.op().real_coordinates()));
            let oracle = elimination_rank(span);
            let report = frame.completeness();
            let rank = gram_rank(frame.elements()).unwrap().rank;
            ensure(report.gram_rank == oracle && rank == oracle, || {
                format!("n={n} seed={seed}: gram rank {} vs oracle {oracle}", report.gram_rank)
            })?;
            ensure(report.is_complete == (oracle == n * n), || format!("n={n} seed={seed}: completeness flag"))?;
            complete += report.is_complete as usize;
            total += 1;
        }
    }
    Ok(format!("{total} lists, {complete} informationally complete, ranks match elimination oracle"))
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("qprep").chain(args.iter().copied()), &mut out, &mut err);
    (code, out)
}

fn cli_session(dir: &Path) -> Result<Vec<(String, Vec<u8>)>, String> {
    let p = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let (t, d, r, rd, phi, chi, cert, eff, pf, pg) = (
        p("t.json"),
        p("d.json"),
        p("r.json"),
        p("rd.json"),
        p("phi.json"),
        p("chi.json"),
        p("cert.json"),
        p("effects.json"),
        p("f.json"),
        p("g.json"),
    );

    let ops = neighborhood_probes(&basis_vector(2, 0), &basis_vector(2, 1));
    cli::write_operator(Path::new(&phi), &ops[0]).unwrap();
    cli::write_operator(Path::new(&chi), &ops[2]).unwrap();
    let fj = HermitianOperator::diagonal(&[0.7, 0.2]);
    let gj = HermitianOperator::diagonal(&[0.6, 0.9]);
    cli::write_operator(Path::new(&pf), &fj).unwrap();
    cli::write_operator(Path::new(&pg), &gj).unwrap();
    let effects: Vec<_> = (0..3).map(|k| random::random_effect(2, k).unwrap().into_op().to_json()).collect();
    std::fs::write(&eff, serde_json::to_string(&serde_json::json!({"dim": 2, "elements": effects})).unwrap()).unwrap();

    let commands: Vec<Vec<&str>> = vec![
        vec!["frame", "build-tetrahedral", "--out", &t],
        vec!["frame", "build-random", "--dim", "3", "--seed", "7", "--out", &r],
        vec!["frame", "build-theorem1", "--effects", &eff],
        vec!["frame", "validate", "--frame", &r],
        vec!["frame", "completeness", "--frame", &t],
        vec!["frame", "dual", "--frame", &t, "--out", &d],
        vec!["frame", "dual", "--frame", &r, "--out", &rd],
        vec!["rep", "map-state", "--frame", &t, "--dual", &d, "--op", &phi],
        vec!["rep", "map-effect", "--frame", &t, "--dual", &d, "--op", &chi],
        vec!["rep", "reconstruct", "--frame", &r, "--dual", &rd, "--seed", "11"],
        vec!["rep", "negativity", "--frame", &r, "--trials", "100", "--seed", "3"],
        vec!["coexist", "pair", "--f", &phi, "--g", &chi],
        vec!["coexist", "pair", "--f", &pf, "--g", &pg, "--out", &cert],
        vec!["coexist", "verify", "--cert", &cert],
        vec!["coexist", "triple"],
        vec!["experiment", "theorem5", "--frame", &t],
        vec!["--format", "text", "experiment", "theorem5", "--frame", &r],
    ];
    let mut outputs = Vec::new();
    for args in &commands {
        let (code, out) = run_cli(args);
        if code != 0 {
            return Err(format!("`{}` exited {code}", args.join(" ")));
        }
        outputs.push((args.join(" "), out));
    }
    for f in [&t, &r, &d, &rd, &cert] {
        outputs.push((f.clone(), std::fs::read(f).unwrap()));
    }
    Ok(outputs)
}

fn cli_determinism() -> Result<String, String> {
    let dir = tempfile::tempdir().unwrap();
    let first = cli_session(dir.path())?;
    let second = cli_session(dir.path())?;
    for ((name, a), (_, b)) in first.iter().zip(&second) {
        ensure(a == b, || format!("output of `{name}` differs between runs"))?;
    }
    let dir2 = tempfile::tempdir().unwrap();
    let third = cli_session(dir2.path())?;
    let artifacts_equal = first.iter().rev().take(5).zip(third.iter().rev().take(5)).all(|((_, a), (_, b))| a == b);
    ensure(artifacts_equal, || "artifact files depend on the output directory".into())?;
    Ok(format!("{} outputs byte-identical across runs", first.len()))
}
