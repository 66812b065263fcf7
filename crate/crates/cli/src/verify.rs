//! `schur verify`: runs the selected checks and prints one JSON record per
//! check and composition.

use std::collections::HashMap;

use clap::{ArgGroup, Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use schur_core::algebra::{identity, multiply};
use schur_core::bar::BarBuilder;
use schur_core::boltje_hartmann::compare_with_schur_functor;
use schur_core::combinatorics::{
    enumerate_compositions, enumerate_weight_matrices, enumerate_weight_tensors, max_chain_length,
    MatrixConstraints,
};
use schur_core::divided_powers::verify_equivariance;
use schur_core::homology::{homology_all, HomologyGroup};
use schur_core::oracle::{check_oracle_size, endomorphism_product, rho, GreenConvolution};
use schur_core::schur_functor::{omega_of_permutation, Permutation};
use schur_core::{
    build_borel_resolution, build_weyl_resolution, multiply_basis, reduce_mod, AlgebraElement, ChainComplex,
    Composition, GroupMatrix, Variant, WeightMatrix,
};

use crate::{parse_composition, usage};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    /// Structure constants against both brute-force products, and every
    /// differential rebuilt from oracle products.
    Oracle,
    /// Associativity and unit laws.
    Associativity,
    /// Filtration of products and nilpotency of the augmentation ideal.
    Filtration,
    /// The symmetric group embedding.
    Embedding,
    /// Divided powers against the Schur algebra action.
    Divided,
    /// d^2 = 0 and the contracting homotopy identities of the Borel complex.
    Homotopy,
    /// Integral homology of the Borel and Weyl complexes.
    Exactness,
    /// Exactness after reduction modulo each prime.
    Basechange,
    /// The permutation-module complex against the Schur functor complex.
    Boltje,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Oracle => "oracle",
            Check::Associativity => "associativity",
            Check::Filtration => "filtration",
            Check::Embedding => "embedding",
            Check::Divided => "divided",
            Check::Homotopy => "homotopy",
            Check::Exactness => "exactness",
            Check::Basechange => "basechange",
            Check::Boltje => "boltje",
        }
    }

    fn is_global(self) -> bool {
        matches!(self, Check::Associativity | Check::Filtration | Check::Embedding | Check::Divided)
    }
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("target").required(true).args(["all", "lambda"])))]
pub struct VerifyArgs {
    #[arg(short)]
    n: usize,
    #[arg(short)]
    r: u32,
    /// Every composition of r into n parts.
    #[arg(long)]
    all: bool,
    /// A single composition, comma separated.
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [
        Check::Oracle, Check::Associativity, Check::Filtration, Check::Embedding, Check::Divided,
        Check::Homotopy, Check::Exactness, Check::Basechange, Check::Boltje,
    ])]
    checks: Vec<Check>,
    /// Primes for the base change check.
    #[arg(long = "mod", value_delimiter = ',', default_values_t = [2u64, 3, 5])]
    primes: Vec<u64>,
    /// Random matrices or triples per sampled check.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Add 1 to entry (row, col) of d_degree in every complex that has it.
    #[arg(long, hide = true, value_name = "DEGREE:ROW:COL")]
    inject_fault: Option<String>,
}

#[derive(Serialize, Debug, Clone)]
struct Record {
    check: &'static str,
    lambda: Option<Vec<u32>>,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

struct Outcome {
    failures: Vec<String>,
    skipped: Option<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), skipped: None }
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    fn record(self, check: Check, lambda: Option<&Composition>) -> Record {
        let lambda = lambda.map(|l| l.parts().to_vec());
        let (status, detail) = if !self.failures.is_empty() {
            ("fail", Some(self.failures.join("; ")))
        } else if let Some(reason) = self.skipped {
            ("skip", Some(reason))
        } else {
            ("pass", None)
        };
        Record { check: check.name(), lambda, status, detail }
    }
}

type Fault = (i64, usize, usize);

fn parse_fault(text: &str) -> anyhow::Result<Fault> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || usage(format!("fault {text:?} must look like DEGREE:ROW:COL"));
    if parts.len() != 3 {
        return Err(bad());
    }
    Ok((
        parts[0].parse().map_err(|_| bad())?,
        parts[1].parse().map_err(|_| bad())?,
        parts[2].parse().map_err(|_| bad())?,
    ))
}

pub fn run(args: &VerifyArgs, verbose: u8) -> anyhow::Result<bool> {
    if args.n == 0 {
        return Err(usage("n must be at least 1"));
    }
    for &p in &args.primes {
        if !schur_core::homology::is_prime(p) {
            return Err(usage(format!("{p} is not a prime")));
        }
    }
    let lambdas = match &args.lambda {
        Some(text) => vec![parse_composition(text, args.n, args.r)?],
        None => enumerate_compositions(args.n, args.r),
    };
    let fault = args.inject_fault.as_deref().map(parse_fault).transpose()?;
    let mut checks = args.checks.clone();
    checks.sort();
    checks.dedup();

    let mut records = Vec::new();
    for &check in checks.iter().filter(|c| c.is_global()) {
        if verbose > 0 {
            eprintln!("running {}", check.name());
        }
        records.push(run_global(check, args)?.record(check, None));
    }
    let local: Vec<Check> = checks.iter().copied().filter(|c| !c.is_global()).collect();
    let per_lambda: Vec<anyhow::Result<(Vec<Record>, bool)>> = lambdas
        .par_iter()
        .map(|lambda| {
            if verbose > 0 {
                eprintln!("checking {lambda}");
            }
            run_local(lambda, &local, args, fault)
        })
        .collect();
    let mut fault_applied = false;
    for result in per_lambda {
        let (rs, applied) = result?;
        fault_applied |= applied;
        records.extend(rs);
    }
    if fault.is_some() && !fault_applied {
        return Err(usage("the injected fault lies outside every complex"));
    }

    let mut passed = true;
    for record in &records {
        passed &= record.status != "fail";
        println!("{}", serde_json::to_string(record)?);
    }
    let failed = records.iter().filter(|r| r.status == "fail").count();
    eprintln!("{} checks, {} failed", records.len(), failed);
    Ok(passed)
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> GroupMatrix {
    let entries = (0..n * n).map(|_| num_bigint::BigInt::from(rng.gen_range(-3i64..=3))).collect();
    GroupMatrix::new(n, entries).expect("square")
}

fn all_matrices(n: usize, r: u32) -> Vec<WeightMatrix> {
    enumerate_weight_matrices(n, r, &MatrixConstraints::none()).expect("sizes agree")
}

fn run_global(check: Check, args: &VerifyArgs) -> anyhow::Result<Outcome> {
    let (n, r) = (args.n, args.r);
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    match check {
        Check::Associativity => {
            let basis = all_matrices(n, r);
            let exhaustive = basis.len().pow(3) <= 200_000;
            let triples: Vec<(usize, usize, usize)> = if exhaustive {
                let m = basis.len();
                (0..m * m * m).map(|x| (x / (m * m), (x / m) % m, x % m)).collect()
            } else {
                let m = basis.len();
                (0..args.samples.max(1000)).map(|_| (rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m))).collect()
            };
            for (a, b, c) in triples {
                let (x, y, z) = (AlgebraElement::basis(basis[a].clone()), AlgebraElement::basis(basis[b].clone()), AlgebraElement::basis(basis[c].clone()));
                if multiply(&multiply(&x, &y)?, &z)? != multiply(&x, &multiply(&y, &z)?)? {
                    out.fail(format!("({} {}) {} != {} ({} {})", basis[a], basis[b], basis[c], basis[a], basis[b], basis[c]));
                }
            }
            let one = identity(n, r);
            for w in &basis {
                let x = AlgebraElement::basis(w.clone());
                if multiply(&one, &x)? != x || multiply(&x, &one)? != x {
                    out.fail(format!("identity does not fix {w}"));
                }
            }
        }
        Check::Filtration => {
            let upper = enumerate_weight_matrices(n, r, &MatrixConstraints::none().upper_triangular())?;
            for a in &upper {
                for b in &upper {
                    let bound = a.filtration_degree()? + b.filtration_degree()?;
                    for (key, _) in multiply_basis(a, b)?.terms() {
                        if !key.is_upper_triangular() || key.filtration_degree()? < bound {
                            out.fail(format!("{a} * {b} has term {key} below degree {bound}"));
                        }
                    }
                }
            }
            // J^{N+1} = 0: every product of N + 1 basis elements of J vanishes.
            let j = enumerate_weight_matrices(n, r, &MatrixConstraints::none().with_min_degree(1))?;
            let total: AlgebraElement = j.iter().fold(AlgebraElement::zero(n, r), |acc, w| &acc + &AlgebraElement::basis(w.clone()));
            let mut power = total.clone();
            for _ in 0..max_chain_length(n, r) {
                power = multiply(&power, &total)?;
            }
            if !power.is_zero() {
                out.fail("J^(N+1) is not zero");
            }
        }
        Check::Embedding => {
            if (r as usize) > n || r > 5 {
                out.skipped = Some("needs n >= r and r <= 5".into());
                return Ok(out);
            }
            let group = Permutation::all(r as usize);
            for s in &group {
                for t in &group {
                    let (a, b) = (omega_of_permutation(s, n)?, omega_of_permutation(t, n)?);
                    let thetas = enumerate_weight_tensors(&a, &b)?;
                    let expected = AlgebraElement::basis(omega_of_permutation(&s.compose(t)?, n)?);
                    if thetas.len() != 1 || multiply_basis(&a, &b)? != expected {
                        out.fail(format!("embedding fails for {s} and {t}"));
                    }
                }
            }
        }
        Check::Divided => {
            for _ in 0..args.samples {
                let g = random_matrix(&mut rng, n);
                for lambda in enumerate_compositions(n, r) {
                    let report = verify_equivariance(&lambda, &g)?;
                    if !report.passed() {
                        out.fail(format!("equivariance fails for {lambda} at g = {g}"));
                    }
                }
                let h = random_matrix(&mut rng, n);
                if rho(&g.mul(&h)?, r)? != multiply(&rho(&g, r)?, &rho(&h, r)?)? {
                    out.fail(format!("rho is not multiplicative at {g}, {h}"));
                }
            }
        }
        _ => unreachable!("local check"),
    }
    Ok(out)
}

/// Column-strict, row-weak fillings of `shape` with entries at most `max`.
fn count_semistandard(shape: &[u32], max: u32) -> u64 {
    fn rec(cells: &[(usize, usize)], idx: usize, filling: &mut Vec<Vec<u32>>, max: u32) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (s, q) = cells[idx];
        let lo = [q.checked_sub(1).map(|p| filling[s][p]).unwrap_or(1), s.checked_sub(1).map(|p| filling[p][q] + 1).unwrap_or(1)]
            .into_iter()
            .max()
            .unwrap_or(1);
        let mut total = 0;
        for v in lo..=max {
            filling[s][q] = v;
            total += rec(cells, idx + 1, filling, max);
        }
        filling[s][q] = 0;
        total
    }
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(s, &len)| (0..len as usize).map(move |q| (s, q))).collect();
    let mut filling: Vec<Vec<u32>> = shape.iter().map(|&len| vec![0; len as usize]).collect();
    rec(&cells, 0, &mut filling, max)
}

fn describe(k: i64, h: &HomologyGroup) -> String {
    format!("H_{k} = {h}")
}

fn weyl_failures(x: &ChainComplex, expected_rank: Option<usize>) -> anyhow::Result<Vec<String>> {
    let mut out = Vec::new();
    for (k, h) in homology_all(x)? {
        let bad = if k == 0 {
            !h.is_torsion_free() || expected_rank.is_some_and(|e| h.free_rank != e)
        } else {
            !h.is_zero()
        };
        if bad {
            out.push(describe(k, &h));
        }
    }
    Ok(out)
}

fn run_local(
    lambda: &Composition,
    checks: &[Check],
    args: &VerifyArgs,
    fault: Option<Fault>,
) -> anyhow::Result<(Vec<Record>, bool)> {
    let n = lambda.n();
    let dominant = lambda.is_partition();
    let mut applied = false;
    let mut borel = build_borel_resolution(lambda)?;
    let mut weyl = if dominant { Some(build_weyl_resolution(lambda)?) } else { None };
    if let Some((k, i, j)) = fault {
        applied |= borel.perturb(k, i, j, 1).is_ok();
        if let Some(w) = weyl.as_mut() {
            applied |= w.perturb(k, i, j, 1).is_ok();
        }
    }
    let weyl_rank = dominant.then(|| count_semistandard(lambda.parts(), n as u32) as usize);

    let mut records = Vec::new();
    for &check in checks {
        let mut out = Outcome::new();
        match check {
            Check::Oracle => {
                if check_oracle_size(n, lambda.r()).is_err() {
                    out.skipped = Some("tensor oracle size limit".into());
                } else {
                    let green = GreenConvolution::new(n, lambda.r())?;
                    // Each distinct product the differentials need is taken from
                    // the Green oracle once and checked against multiply_basis;
                    // a sample is also checked against endomorphism composition.
                    let mut cache: HashMap<(WeightMatrix, WeightMatrix), AlgebraElement> = HashMap::new();
                    let mut disagreements = Vec::new();
                    let mut compare = |x: &ChainComplex, variant: Variant, name: &str, out: &mut Outcome| -> anyhow::Result<()> {
                        let mut builder = BarBuilder::new(lambda, variant)?;
                        for k in (x.lo().max(0) + 1)..=x.hi() {
                            let rebuilt = builder.differential_with(k as usize, |a, b| {
                                let key = (a.clone(), b.clone());
                                if let Some(g) = cache.get(&key) {
                                    return Ok(g.clone());
                                }
                                let g = green.product(a, b)?;
                                let sampled = cache.len().is_multiple_of(16);
                                if multiply_basis(a, b)? != g || (sampled && endomorphism_product(a, b)? != g) {
                                    disagreements.push(format!("oracles disagree on {a} * {b}"));
                                }
                                cache.insert(key, g.clone());
                                Ok(g)
                            })?;
                            if rebuilt != x.differential(k) {
                                out.fail(format!("{name} d_{k} differs from the oracle rebuild"));
                            }
                        }
                        Ok(())
                    };
                    compare(&borel, Variant::Borel, "Borel", &mut out)?;
                    if let Some(w) = &weyl {
                        compare(w, Variant::Full, "Weyl", &mut out)?;
                    }
                    for d in disagreements {
                        out.fail(d);
                    }
                    if borel.lo() == -1 {
                        let augmentation = builder_augmentation(lambda)?;
                        if augmentation != borel.differential(0) {
                            out.fail("augmentation differs from its definition");
                        }
                    }
                }
            }
            Check::Homotopy => {
                for k in borel.boundary_failures() {
                    out.fail(format!("Borel d_{} d_{k} != 0", k - 1));
                }
                for k in borel.homotopy_failures() {
                    out.fail(format!("Borel homotopy identity fails in degree {k}"));
                }
                if let Some(w) = &weyl {
                    for k in w.boundary_failures() {
                        out.fail(format!("Weyl d_{} d_{k} != 0", k - 1));
                    }
                }
            }
            Check::Exactness => {
                for (k, h) in homology_all(&borel)? {
                    if !h.is_zero() {
                        out.fail(format!("Borel {}", describe(k, &h)));
                    }
                }
                if let Some(w) = &weyl {
                    for f in weyl_failures(w, weyl_rank)? {
                        out.fail(format!("Weyl {f}"));
                    }
                }
            }
            Check::Basechange => {
                for &p in &args.primes {
                    for (k, h) in homology_all(&reduce_mod(&borel, p)?)? {
                        if !h.is_zero() {
                            out.fail(format!("Borel mod {p}: {}", describe(k, &h)));
                        }
                    }
                    if let Some(w) = &weyl {
                        for f in weyl_failures(&reduce_mod(w, p)?, weyl_rank)? {
                            out.fail(format!("Weyl mod {p}: {f}"));
                        }
                    }
                }
            }
            Check::Boltje => {
                if !dominant || (lambda.r() as usize) > n {
                    out.skipped = Some("needs a partition with n >= r".into());
                } else {
                    let cmp = compare_with_schur_functor(lambda)?;
                    if !cmp.passed() {
                        out.fail(format!("{:?}", cmp.report));
                    }
                }
            }
            _ => unreachable!("global check"),
        }
        records.push(out.record(check, Some(lambda)));
    }
    Ok((records, applied))
}

fn builder_augmentation(lambda: &Composition) -> anyhow::Result<schur_core::IntMatrix> {
    Ok(BarBuilder::new(lambda, Variant::Borel)?.augmentation()?)
}
