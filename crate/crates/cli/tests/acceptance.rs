//! Acceptance suite: one PASS/FAIL line per criterion, each under its time
//! budget. Run with `cargo test -p schur-cli --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use schur_core::algebra::{identity, multiply, theta_coefficient};
use schur_core::boltje_hartmann::compare_with_schur_functor;
use schur_core::combinatorics::{
    enumerate_compositions, enumerate_partitions, enumerate_weight_matrices, enumerate_weight_tensors,
    max_chain_length, MatrixConstraints,
};
use schur_core::divided_powers::verify_equivariance;
use schur_core::homology::{homology_all, rank_mod_p, HomologyGroup};
use schur_core::oracle::{decode, endomorphism_product, rho, tensor_action, GreenConvolution};
use schur_core::schur_functor::{omega_of_permutation, Permutation};
use schur_core::{
    build_borel_resolution, build_weyl_resolution, multiply_basis, AlgebraElement, ChainComplex,
    GroupMatrix, IntMatrix, WeightMatrix,
};

type Outcome = Result<String, String>;

/// (number, name, time budget in seconds, check).
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn all_matrices(n: usize, r: u32) -> Vec<WeightMatrix> {
    enumerate_weight_matrices(n, r, &MatrixConstraints::none()).unwrap()
}

/// Column-strict, row-weak fillings of `shape` with entries in `1..=max`,
/// built row by row from every weakly increasing row.
fn semistandard_count(shape: &[u32], max: u32) -> usize {
    fn rows(len: usize, lo: &[u32], max: u32) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for q in 0..len {
            let mut next = Vec::new();
            for row in out {
                let start = row.last().copied().unwrap_or(1).max(lo.get(q).map_or(1, |&above| above + 1));
                for v in start..=max {
                    let mut r = row.clone();
                    r.push(v);
                    next.push(r);
                }
            }
            out = next;
        }
        out
    }
    fn go(shape: &[u32], above: &[u32], max: u32) -> usize {
        match shape.split_first() {
            None => 1,
            Some((&len, rest)) => rows(len as usize, above, max).iter().map(|row| go(rest, row, max)).sum(),
        }
    }
    let shape: Vec<u32> = shape.iter().copied().filter(|&l| l > 0).collect();
    go(&shape, &[], max)
}

/// Standard tableaux, counted by placing the largest entry in a corner.
fn standard_count(shape: &[u32]) -> usize {
    let shape: Vec<u32> = shape.iter().copied().filter(|&l| l > 0).collect();
    if shape.is_empty() {
        return 1;
    }
    let mut total = 0;
    for i in 0..shape.len() {
        let is_corner = i + 1 == shape.len() || shape[i + 1] < shape[i];
        if is_corner {
            let mut smaller = shape.clone();
            smaller[i] -= 1;
            total += standard_count(&smaller);
        }
    }
    total
}

fn random_group_matrix(rng: &mut ChaCha8Rng, n: usize) -> GroupMatrix {
    GroupMatrix::new(n, (0..n * n).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect()).unwrap()
}

fn criterion_1() -> Outcome {
    let mut pairs = 0;
    for (n, r) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let basis = all_matrices(n, r);
        let green = GreenConvolution::new(n, r).map_err(err)?;
        for a in &basis {
            for b in &basis {
                let formula = multiply_basis(a, b).map_err(err)?;
                let endo = endomorphism_product(a, b).map_err(err)?;
                let conv = green.product(a, b).map_err(err)?;
                ensure(formula == endo && endo == conv, || format!("{a} * {b}: {formula} | {endo} | {conv}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs agree across three products"))
}

fn associative(a: &WeightMatrix, b: &WeightMatrix, c: &WeightMatrix) -> Result<(), String> {
    let (x, y, z) = (AlgebraElement::basis(a.clone()), AlgebraElement::basis(b.clone()), AlgebraElement::basis(c.clone()));
    let left = multiply(&multiply(&x, &y).map_err(err)?, &z).map_err(err)?;
    let right = multiply(&x, &multiply(&y, &z).map_err(err)?).map_err(err)?;
    ensure(left == right, || format!("({a} {b}) {c} != {a} ({b} {c})"))
}

fn units(n: usize, r: u32) -> Result<(), String> {
    let one = identity(n, r);
    for w in all_matrices(n, r) {
        let x = AlgebraElement::basis(w.clone());
        ensure(multiply(&one, &x).map_err(err)? == x && multiply(&x, &one).map_err(err)? == x, || format!("unit fails at {w}"))?;
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let mut triples = 0;
    for (n, r) in [(2, 2), (2, 3)] {
        let basis = all_matrices(n, r);
        for a in &basis {
            for b in &basis {
                for c in &basis {
                    associative(a, b, c)?;
                    triples += 1;
                }
            }
        }
        units(n, r)?;
    }
    let basis = all_matrices(3, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut composable = 0;
    for _ in 0..1000 {
        // Half the draws are chained so the products are nonzero.
        let a = &basis[rng.gen_range(0..basis.len())];
        let b = if rng.gen_bool(0.5) {
            let fits: Vec<&WeightMatrix> = basis.iter().filter(|b| b.row_sums() == a.column_sums()).collect();
            composable += 1;
            fits[rng.gen_range(0..fits.len())]
        } else {
            &basis[rng.gen_range(0..basis.len())]
        };
        let fits: Vec<&WeightMatrix> = basis.iter().filter(|c| c.row_sums() == b.column_sums()).collect();
        let c = fits[rng.gen_range(0..fits.len())];
        associative(a, b, c)?;
        triples += 1;
    }
    units(3, 3)?;
    Ok(format!("{triples} triples ({composable} sampled composable on S(3,3)); unit laws hold"))
}

fn criterion_3() -> Outcome {
    let mut summary = Vec::new();
    for n in 1..=3 {
        for r in 1..=4 {
            let upper = enumerate_weight_matrices(n, r, &MatrixConstraints::none().upper_triangular()).map_err(err)?;
            for a in &upper {
                for b in &upper {
                    let bound = a.filtration_degree().map_err(err)? + b.filtration_degree().map_err(err)?;
                    for (key, _) in multiply_basis(a, b).map_err(err)?.terms() {
                        let ok = key.is_upper_triangular() && key.filtration_degree().map_err(err)? >= bound;
                        ensure(ok, || format!("{a} * {b} contains {key}, below degree {bound}"))?;
                    }
                }
            }
            // Coefficients are nonnegative, so the power of the sum of all
            // basis elements of J vanishes exactly when every product does.
            let j = enumerate_weight_matrices(n, r, &MatrixConstraints::none().with_min_degree(1)).map_err(err)?;
            let sum = j.iter().fold(AlgebraElement::zero(n, r), |acc, w| &acc + &AlgebraElement::basis(w.clone()));
            let big_n = max_chain_length(n, r);
            let mut power = sum.clone();
            for _ in 0..big_n {
                power = multiply(&power, &sum).map_err(err)?;
            }
            ensure(power.is_zero(), || format!("J^{} != 0 in S({n},{r})", big_n + 1))?;
            summary.push(format!("({n},{r}):N={big_n}"));
        }
    }
    Ok(format!("filtration holds, J^(N+1) = 0 for {}", summary.join(" ")))
}

fn check_homotopy(x: &ChainComplex) -> Result<(), String> {
    for k in x.degrees() {
        if k < x.hi() {
            let dd = x.differential(k).mul(&x.differential(k + 1)).map_err(err)?;
            ensure(dd.is_zero(), || format!("d_{k} d_{} != 0", k + 1))?;
        }
        let s = |j: i64| x.homotopy(j).ok_or_else(|| "missing homotopy".to_string());
        let up = x.differential(k + 1).mul(&s(k)?).map_err(err)?;
        let down = s(k - 1)?.mul(&x.differential(k)).map_err(err)?;
        let total = up.add(&down).map_err(err)?;
        ensure(total == IntMatrix::identity(x.rank(k)), || format!("d s + s d != 1 in degree {k}"))?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let mut complexes = 0;
    for n in 1..=3 {
        for r in 1..=4 {
            for lambda in enumerate_compositions(n, r) {
                let x = build_borel_resolution(&lambda).map_err(err)?;
                check_homotopy(&x).map_err(|e| format!("{lambda}: {e}"))?;
                complexes += 1;
            }
        }
    }
    Ok(format!("{complexes} augmented complexes contractible"))
}

const WEYL_SIZES: [(usize, u32); 5] = [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4)];

fn criterion_5() -> Outcome {
    let mut checked = Vec::new();
    for (n, r) in WEYL_SIZES {
        for lambda in enumerate_partitions(n, r) {
            let x = build_weyl_resolution(&lambda).map_err(err)?;
            let expected = semistandard_count(lambda.parts(), n as u32);
            for (k, h) in homology_all(&x).map_err(err)? {
                let ok = if k == 0 {
                    h.is_torsion_free() && h.free_rank == expected
                } else {
                    h.is_zero()
                };
                ensure(ok, || format!("{lambda}: H_{k} = {h}, expected rank {expected} in degree 0"))?;
            }
            checked.push(format!("{lambda}:{expected}"));
        }
    }
    Ok(format!("exact with rank H_0 = #SSYT for {}", checked.join(" ")))
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    for (n, r) in WEYL_SIZES {
        for lambda in enumerate_partitions(n, r) {
            let x = build_weyl_resolution(&lambda).map_err(err)?;
            let expected = semistandard_count(lambda.parts(), n as u32);
            for p in [2u64, 3, 5] {
                let rank = |k: i64| -> Result<usize, String> {
                    if k < x.lo() + 1 || k > x.hi() {
                        Ok(0)
                    } else {
                        rank_mod_p(&x.differential(k), p).map_err(err)
                    }
                };
                for k in x.degrees() {
                    let dim = x.rank(k) - rank(k)? - rank(k + 1)?;
                    let want = if k == 0 { expected } else { 0 };
                    ensure(dim == want, || format!("{lambda} mod {p}: dim H_{k} = {dim}, expected {want}"))?;
                }
                let reduced = schur_core::reduce_mod(&x, p).map_err(err)?;
                let h: Vec<(i64, HomologyGroup)> = homology_all(&reduced).map_err(err)?;
                ensure(h.iter().all(|(k, g)| g.free_rank == if *k == 0 { expected } else { 0 }), || {
                    format!("{lambda} mod {p}: homology summary disagrees with ranks")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} reductions exact over F_p"))
}

fn criterion_7() -> Outcome {
    let mut pairs = 0;
    for r in 1..=4usize {
        let group = Permutation::all(r);
        for s in &group {
            for t in &group {
                let (a, b) = (omega_of_permutation(s, r).map_err(err)?, omega_of_permutation(t, r).map_err(err)?);
                let thetas = enumerate_weight_tensors(&a, &b).map_err(err)?;
                ensure(thetas.len() == 1 && theta_coefficient(&thetas[0]) == BigInt::from(1), || {
                    format!("{s} {t}: {} tensors", thetas.len())
                })?;
                let st = omega_of_permutation(&s.compose(t).map_err(err)?, r).map_err(err)?;
                ensure(multiply_basis(&a, &b).map_err(err)? == AlgebraElement::basis(st), || format!("{s} * {t}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} permutation pairs embed"))
}

fn criterion_8() -> Outcome {
    let mut seen = Vec::new();
    for r in 1..=4u32 {
        for lambda in enumerate_partitions(r as usize, r) {
            let cmp = compare_with_schur_functor(&lambda).map_err(err)?;
            ensure(cmp.passed(), || format!("{lambda}: {:?}", cmp.report))?;
            let syt = standard_count(lambda.parts());
            for hom in [&cmp.schur_functor_homology, &cmp.bh_homology] {
                for (k, h) in hom {
                    let ok = if *k == 0 { h.is_torsion_free() && h.free_rank == syt } else { h.is_zero() };
                    ensure(ok, || format!("{lambda}: H_{k} = {h}, expected #SYT = {syt} in degree 0"))?;
                }
            }
            seen.push(format!("{lambda}:{syt}"));
        }
    }
    Ok(format!("entrywise agreement, cokernel rank = #SYT for {}", seen.join(" ")))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let mut bases = 0;
    for n in 1..=3 {
        for r in 1..=3 {
            for _ in 0..50 {
                let g = random_group_matrix(&mut rng, n);
                for lambda in enumerate_compositions(n, r) {
                    let report = verify_equivariance(&lambda, &g).map_err(err)?;
                    ensure(report.passed(), || format!("{lambda} at {g}: {:?}", report.mismatches))?;
                    bases += report.checked;
                }
            }
        }
    }
    let mut pairs = 0;
    for (n, r) in [(2, 2), (2, 3), (3, 2)] {
        for _ in 0..100 {
            let g = random_group_matrix(&mut rng, n);
            let h = random_group_matrix(&mut rng, n);
            let gh = g.mul(&h).map_err(err)?;
            let product = multiply(&rho(&g, r).map_err(err)?, &rho(&h, r).map_err(err)?).map_err(err)?;
            ensure(rho(&gh, r).map_err(err)? == product, || format!("rho(gh) != rho(g) rho(h) for {g}, {h}"))?;
            // rho against the action on the tensor power itself.
            let direct = decode(&tensor_action(&g, r).map_err(err)?).map_err(err)?;
            ensure(direct == rho(&g, r).map_err(err)?, || format!("rho({g}) differs from the tensor action"))?;
            pairs += 1;
        }
    }
    Ok(format!("{bases} basis vectors equivariant; {pairs} pairs multiplicative"))
}

fn schur(args: &[&str]) -> Result<std::process::Output, String> {
    Command::new(env!("CARGO_BIN_EXE_schur")).args(args).output().map_err(err)
}

fn criterion_10() -> Outcome {
    for variant in ["borel", "weyl", "bh", "schur-functor"] {
        let args = ["resolve", "-n", "3", "-r", "3", "--lambda", "2,1,0", "--variant", variant];
        let first = schur(&args)?;
        let second = schur(&args)?;
        ensure(first.status.success(), || format!("{variant}: {}", String::from_utf8_lossy(&first.stderr)))?;
        ensure(first.stdout == second.stdout, || format!("{variant}: output differs between runs"))?;
    }
    let base = ["verify", "-n", "3", "-r", "3", "--lambda", "2,1,0", "--checks", "exactness,oracle,homotopy"];
    let clean = schur(&base)?;
    ensure(clean.status.code() == Some(0), || "clean verify did not pass".into())?;
    let mut flipped = 0;
    for fault in ["1:0:0", "1:1:1", "1:5:3", "0:0:0"] {
        let mut args = base.to_vec();
        args.extend(["--inject-fault", fault]);
        let out = schur(&args)?;
        ensure(out.status.code() == Some(1), || format!("fault {fault} gave {:?}", out.status.code()))?;
        ensure(String::from_utf8_lossy(&out.stdout).contains("\"status\":\"fail\""), || format!("fault {fault}: no failure record"))?;
        flipped += 1;
    }
    Ok(format!("resolve byte-identical; {flipped} faults flip verify to failure"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "structure constants, three ways", 60, criterion_1),
        (2, "associativity and units", 30, criterion_2),
        (3, "filtration and nilpotency", 30, criterion_3),
        (4, "bar identities", 60, criterion_4),
        (5, "Weyl resolutions exact over Z", 300, criterion_5),
        (6, "base change to F_p", 120, criterion_6),
        (7, "symmetric group embedding", 10, criterion_7),
        (8, "permutation-module complex", 120, criterion_8),
        (9, "divided powers and rho", 60, criterion_9),
        (10, "determinism and fault injection", 10, criterion_10),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(limit);
        let (status, detail) = match (&outcome, over) {
            (Ok(msg), false) => ("PASS", msg.clone()),
            (Ok(msg), true) => ("FAIL", format!("{msg}; exceeded {limit} s")),
            (Err(msg), _) => ("FAIL", msg.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {id:>2} {status} [{:.2} s / {limit} s] {name}: {detail}", elapsed.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
