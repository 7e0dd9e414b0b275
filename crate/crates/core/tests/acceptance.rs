//! Acceptance checks. Runs without the libtest harness so that every check
//! prints its own PASS/FAIL line; exits nonzero if any check fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use schubvan::decide::{dimension_check, grassmannian_element, round_rng, Prepared};
use schubvan::exactla::IntMatrix;
use schubvan::generic::{sample, threshold_p};
use schubvan::oracle::{self, symbolic_matrix, symbolic_vanishing, Poly};
use schubvan::weyl::{all_elements, long_word};
use schubvan::{
    lr_vanishing, vanishing, Arithmetic, Instance, LieType, Method, Options, PartitionTriple, RootSystemData,
    Verdict, WeylElement,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

fn inst(t: LieType, n: usize, words: &[&str]) -> Instance {
    Instance::parse(t, n, words).expect("valid instance")
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&a| BigInt::from(a)).collect()
}

fn a41() -> Instance {
    inst(LieType::A, 4, &["3,2,1,4", "1,4,2,3", "1,2,4,3"])
}

fn a42() -> Instance {
    inst(LieType::A, 4, &["3,2,1,4", "1,3,4,2", "1,2,4,3"])
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let opts = Options::default();
    let zero = vanishing(&a41(), &opts, 11).map_err(|e| e.to_string())?;
    ensure(zero.verdict == Verdict::Zero, || "A4 vanishing example not reported zero".into())?;
    ensure(symbolic_vanishing(&a41()).map_err(|e| e.to_string())?, || "symbolic det of the vanishing example is nonzero".into())?;
    let pos = vanishing(&a42(), &opts, 11).map_err(|e| e.to_string())?;
    ensure(pos.verdict == Verdict::Positive && pos.certain, || "A4 positive example not reported positive".into())?;

    let prepared = Prepared::new(LieType::A, 4, a42().words().to_vec()).map_err(|e| e.to_string())?;
    let alphas = vec![ints(&[1, 2, 3, 4, 5, 6]), ints(&[7, 8, 9, 10, 11, 12]), ints(&[13, 14, 15, 16, 17, 18])];
    let xs = vec![ints(&[6, 5, 4]), ints(&[3, 2]), ints(&[1])];
    let det = prepared.assemble_at(&alphas, &xs).and_then(|m| Ok(m.det_exact()?)).map_err(|e| e.to_string())?;
    let t = within(start, Duration::from_secs(1))?;
    ensure(det == BigInt::from(181440), || {
        format!("verdicts correct, but the fixed substitution gives det = {det}, expected 181440")
    })?;
    Ok(format!("zero/positive verdicts, det = {det} ({t:.2?})"))
}

/// The two 6x6 matrices over Z[a, b, c, x], block `a` = variables 0..6,
/// `b` = 6..12, `c` = 12..18, `x_i` = 17 + i.
fn expected_matrix(positive: bool) -> Vec<Vec<Poly>> {
    let v = Poly::var;
    let a = |i: usize| v(i);
    let b = |i: usize| v(6 + i);
    let c = |i: usize| v(12 + i);
    let x = |i: usize| v(17 + i);
    let z = Poly::zero;
    let m = |p: Poly, q: Poly| &p * &q;
    let m3 = |p: Poly, q: Poly, r: Poly| &(&p * &q) * &r;
    let n = |p: Poly| -&p;
    // column 2 is x2 E_{e1-e3}, read off at (1,3) and (1,4)
    let col1 = [x(1), n(m(a(3), x(1))), m(&m(a(3), a(5)) - &a(4), x(1)), z(), z(), z()];
    let col2 = [z(), x(2), n(m(a(5), x(2))), z(), z(), z()];
    let col3 = [z(), m(a(0), x(3)), n(m3(a(0), a(5), x(3))), x(3), n(m(a(5), x(3))), z()];
    let (col4, col5) = if positive {
        ([z(), z(), m(b(0), x(4)), z(), x(4), z()], [z(), z(), m(b(1), x(5)), z(), m(b(3), x(5)), x(5)])
    } else {
        (
            [z(), m(b(0), x(4)), n(m3(b(0), b(5), x(4))), x(4), n(m(b(5), x(4))), z()],
            [z(), z(), m(b(0), x(5)), z(), x(5), z()],
        )
    };
    let col6 = [z(), z(), m(c(1), x(6)), z(), m(c(3), x(6)), x(6)];
    let cols = [col1, col2, col3, col4, col5, col6];
    (0..6).map(|r| (0..6).map(|c| cols[c][r].clone()).collect()).collect()
}

fn criterion_2() -> Outcome {
    for (name, instance, positive) in [("vanishing", a41(), false), ("positive", a42(), true)] {
        let sym = symbolic_matrix(&instance).map_err(|e| e.to_string())?;
        let want = expected_matrix(positive);
        for r in 0..6 {
            for c in 0..6 {
                ensure(sym.entries[r][c] == want[r][c], || {
                    format!("{name} example, entry ({},{}): got {}, want {}", r + 1, c + 1, sym.entries[r][c], want[r][c])
                })?;
            }
        }
    }
    Ok("both 6x6 matrices match entry for entry".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let group = all_elements(LieType::A, 4);
    let w0 = long_word(LieType::A, 4);
    let mut triples = Vec::new();
    for u in &group {
        for v in &group {
            for w in &group {
                if u.length() + v.length() == w.length() {
                    triples.push((u.clone(), v.clone(), w.clone()));
                }
            }
        }
    }
    let opts = Options::with_rounds(40);
    let mismatches: Vec<String> = triples
        .par_iter()
        .enumerate()
        .filter_map(|(i, (u, v, w))| {
            let twisted = w0.compose(w).unwrap();
            let instance = Instance::new(LieType::A, 4, vec![u.clone(), v.clone(), twisted]).unwrap();
            let got = vanishing(&instance, &opts, i as u64).unwrap().verdict == Verdict::Zero;
            let want = oracle::schubert_coeff_a(u, v, w).unwrap().is_zero();
            (got != want).then(|| format!("u={u} v={v} w={w}"))
        })
        .collect();
    let t = within(start, Duration::from_secs(60))?;
    ensure(mismatches.is_empty(), || format!("{} mismatches, e.g. {}", mismatches.len(), mismatches[0]))?;
    Ok(format!("{} triples, 0 mismatches ({t:.2?})", triples.len()))
}

/// Partitions with at most `rows` parts, each at most `cols`.
fn box_partitions(rows: usize, cols: usize) -> Vec<Vec<usize>> {
    fn go(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if cur.len() == rows {
            return;
        }
        for p in 1..=max {
            cur.push(p);
            go(rows, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rows, cols, &mut Vec::new(), &mut out);
    out
}

/// Strict partitions with parts at most `max`.
fn strict_partitions(max: usize) -> Vec<Vec<usize>> {
    (0u32..1 << max)
        .map(|mask| (1..=max).rev().filter(|&p| mask >> (p - 1) & 1 == 1).collect())
        .collect()
}

fn lr_sweep(
    parts: &[Vec<usize>],
    keep: impl Fn(&[usize]) -> bool + Sync,
    check: impl Fn(&PartitionTriple, u64) -> Result<(), String> + Sync,
) -> Result<usize, String> {
    let mut triples = Vec::new();
    for l in parts {
        for m in parts {
            for n in parts.iter().filter(|n| keep(n)) {
                triples.push(PartitionTriple::new(l.clone(), m.clone(), n.clone()));
            }
        }
    }
    let failures: Vec<String> =
        triples.par_iter().enumerate().filter_map(|(i, t)| check(t, i as u64).err()).collect();
    ensure(failures.is_empty(), || format!("{} mismatches, e.g. {}", failures.len(), failures[0]))?;
    Ok(triples.len())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let opts = Options::default();
    let count = lr_sweep(&box_partitions(3, 3), |_| true, |t, seed| {
        let got = lr_vanishing(t, LieType::A, &opts, seed).map_err(|e| e.to_string())?.verdict == Verdict::Zero;
        let want = oracle::schur_lr_coeff(&t.lambda, &t.mu, &t.nu).is_zero();
        ensure(got == want, || format!("{t:?}: got zero={got}, want zero={want}"))
    })?;
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!("{count} triples, 0 mismatches ({t:.2?})"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let opts = Options::default();
    let count = lr_sweep(&strict_partitions(4), |n| n.iter().sum::<usize>() <= 8, |t, seed| {
        let c = lr_vanishing(t, LieType::C, &opts, seed).map_err(|e| e.to_string())?.verdict;
        let b = lr_vanishing(t, LieType::B, &opts, seed).map_err(|e| e.to_string())?.verdict;
        let want = oracle::qschur_coeff(&t.lambda, &t.mu, &t.nu).is_zero();
        ensure((c == Verdict::Zero) == want, || format!("{t:?}: type C says {c}, oracle zero={want}"))?;
        ensure(b == c, || format!("{t:?}: type B says {b}, type C says {c}"))
    })?;
    let t = within(start, Duration::from_secs(120))?;
    Ok(format!("{count} triples, B = C throughout, 0 mismatches ({t:.2?})"))
}

/// Random triples of the given type and rank whose lengths add up to `d`.
fn random_instances(t: LieType, n: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Instance> {
    let group = all_elements(t, n);
    let d = schubvan::rootsys::positive_root_count(t, n);
    let mut by_length: BTreeMap<usize, Vec<WeylElement>> = BTreeMap::new();
    for w in &group {
        by_length.entry(w.length()).or_default().push(w.clone());
    }
    let mut out = Vec::new();
    while out.len() < count {
        let u = group.choose(rng).unwrap();
        let v = group.choose(rng).unwrap();
        let Some(rest) = d.checked_sub(u.length() + v.length()) else { continue };
        let w = by_length[&rest].choose(rng).unwrap();
        out.push(Instance::new(t, n, vec![u.clone(), v.clone(), w.clone()]).unwrap());
    }
    out
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let opts = Options::with_rounds(40);
    let mut summary = Vec::new();
    for t in [LieType::B, LieType::D] {
        let instances = random_instances(t, 3, 200, &mut rng);
        let results: Vec<Result<bool, String>> = instances
            .par_iter()
            .enumerate()
            .map(|(i, inst)| {
                let got = vanishing(inst, &opts, i as u64).map_err(|e| e.to_string())?.verdict == Verdict::Zero;
                let want = symbolic_vanishing(inst).map_err(|e| e.to_string())?;
                ensure(got == want, || format!("{inst}: got zero={got}, want zero={want}"))?;
                Ok(want)
            })
            .collect();
        let zeros = results.iter().filter(|r| matches!(r, Ok(true))).count();
        if let Some(Err(e)) = results.into_iter().find(Result::is_err) {
            return Err(e);
        }
        summary.push(format!("{t}3: 200 agree ({zeros} zero)"));
    }
    let t = within(start, Duration::from_secs(600))?;
    Ok(format!("{} ({t:.2?})", summary.join(", ")))
}

fn criterion_7() -> Outcome {
    let prepared = Prepared::new(LieType::A, 4, a42().words().to_vec()).map_err(|e| e.to_string())?;
    let misses = (0..1000)
        .filter(|&r| prepared.single_round(&mut round_rng(7, r), Arithmetic::Exact).unwrap().is_none())
        .count();
    let rate = misses as f64 / 1000.0;
    ensure(prepared.p() == 91, || format!("p = {}, expected 91", prepared.p()))?;
    ensure(rate <= 1.0 / 3.0, || format!("false-zero rate {rate}"))?;
    Ok(format!("false-zero rate {misses}/1000 with p = 91"))
}

/// `ℓ = inv + neg + nsp` in type B, `inv + nsp` in type D, computed on the
/// window `w(1..n)`.
fn combinatorial_length(w: &WeylElement) -> usize {
    let s = w.word();
    let n = s.len();
    let mut inv = 0;
    let mut nsp = 0;
    for i in 0..n {
        for j in i + 1..n {
            inv += usize::from(s[i] > s[j]);
            nsp += usize::from(s[i] + s[j] < 0);
        }
    }
    let neg = s.iter().filter(|&&v| v < 0).count();
    match w.lie_type() {
        LieType::D => inv + nsp,
        _ => inv + neg + nsp,
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut samples = 0;
    for t in [LieType::A, LieType::B, LieType::D] {
        for n in 2..=5 {
            let data = RootSystemData::build(t, n).map_err(|e| e.to_string())?;
            let p = threshold_p(&data);
            let dm = IntMatrix::antidiagonal(data.m());
            for _ in 0..100 {
                let s = sample(&data, &mut rng, p).map_err(|e| e.to_string())?;
                let tag = format!("{t}{n}");
                ensure(s.k.det_exact().unwrap().is_one(), || format!("{tag}: det K != 1"))?;
                ensure(s.k.mat_mul(&s.k_inv).unwrap().is_identity(), || format!("{tag}: K K^-1 != I"))?;
                if data.is_orthogonal() {
                    let kt_d_k = s.k.transpose().mat_mul(&dm).unwrap().mat_mul(&s.k).unwrap();
                    ensure(kt_d_k == dm, || format!("{tag}: K^T D K != D"))?;
                    let skew = s.kappa.transpose().mat_mul(&dm).unwrap().add(&dm.mat_mul(&s.kappa).unwrap()).unwrap();
                    ensure(skew.is_zero(), || format!("{tag}: kappa not in the Lie algebra"))?;
                }
                samples += 1;
            }
            if data.is_orthogonal() {
                for gamma in data.positive_roots() {
                    let e = data.basis_matrix(gamma).unwrap();
                    let skew = e.transpose().mat_mul(&dm).unwrap().add(&dm.mat_mul(&e).unwrap()).unwrap();
                    ensure(skew.is_zero(), || format!("{t}{n}: E_{gamma} not in the Lie algebra"))?;
                }
            }
        }
    }
    let mut elements = 0;
    for (t, n) in [(LieType::B, 3), (LieType::D, 4)] {
        let data = RootSystemData::build(t, n).unwrap();
        for w in all_elements(t, n) {
            let inv = data.inversion_set(&w).unwrap().len();
            let comb = combinatorial_length(&w);
            ensure(inv == comb && w.length() == comb, || {
                format!("{w}: |inversions| = {inv}, length = {}, formula = {comb}", w.length())
            })?;
            elements += 1;
        }
    }
    Ok(format!("{samples} samples, {elements} lengths checked"))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut shortcut = 0;
    let types = [(LieType::A, 4), (LieType::B, 3), (LieType::C, 3), (LieType::D, 4), (LieType::A, 5)];
    while shortcut < 100 {
        let (t, n) = types[shortcut % types.len()];
        let group = all_elements(t, n);
        let k = rng.gen_range(2..=4);
        let words: Vec<WeylElement> = (0..k).map(|_| group.choose(&mut rng).unwrap().clone()).collect();
        let instance = Instance::new(t, n, words).unwrap();
        if dimension_check(&instance) {
            continue;
        }
        let d = vanishing(&instance, &Options::default(), 0).map_err(|e| e.to_string())?;
        ensure(
            d.verdict == Verdict::Zero && d.rounds_run == 0 && d.method == Method::Dimension && d.certain,
            || format!("{instance}: {d:?}"),
        )?;
        shortcut += 1;
    }
    let mut duality = 0;
    for (t, n) in [(LieType::A, 4), (LieType::B, 3), (LieType::D, 4)] {
        let w0 = long_word(t, n);
        let group = all_elements(t, n);
        for u in group.iter().step_by(7) {
            let partner = w0.compose(u).unwrap();
            let others = group.iter().filter(|v| v.length() == partner.length()).take(3);
            for v in others {
                let instance = Instance::new(t, n, vec![u.clone(), v.clone()]).unwrap();
                let d = vanishing(&instance, &Options::default(), 0).map_err(|e| e.to_string())?;
                let want = if *v == partner { Verdict::Positive } else { Verdict::Zero };
                ensure(
                    d.verdict == want && d.rounds_run == 0 && d.method == Method::Duality && d.certain,
                    || format!("{instance}: {d:?}"),
                )?;
                duality += 1;
            }
        }
    }
    Ok(format!("{shortcut} dimension shortcuts, {duality} duality decisions, no sampling"))
}

/// `(w_λ, w_μ, w∘ w_ν)` in a fixed ambient rank rather than the smallest one.
fn grassmannian_instance(t: LieType, k: usize, n: usize, lambda: &[usize], mu: &[usize], nu: &[usize]) -> Instance {
    let g = |p: &[usize]| grassmannian_element(p, t, k, n).unwrap();
    let w = long_word(t, n).compose(&g(nu)).unwrap();
    Instance::new(t, n, vec![g(lambda), g(mu), w]).unwrap()
}

fn criterion_10() -> Outcome {
    let opts = Options::default();
    let cases = [
        (LieType::A, 4, 8, Duration::from_secs(1), [vec![2, 1], vec![2, 1], vec![3, 2, 1]], Verdict::Positive),
        (LieType::A, 4, 8, Duration::from_secs(1), [vec![2, 1], vec![1, 1], vec![4, 1]], Verdict::Zero),
        (LieType::B, 0, 6, Duration::from_secs(10), [vec![2, 1], vec![1], vec![3, 1]], Verdict::Positive),
        (LieType::B, 0, 6, Duration::from_secs(10), [vec![2, 1], vec![1], vec![4]], Verdict::Zero),
    ];
    let mut report = Vec::new();
    for (t, k, n, limit, [l, m, nu], want) in cases {
        let instance = grassmannian_instance(t, k, n, &l, &m, &nu);
        ensure(instance.words().iter().all(|w| !w.is_identity()), || format!("{instance} has a trivial word"))?;
        let start = Instant::now();
        let d = vanishing(&instance, &opts, 10).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure(d.verdict == want, || format!("{instance}: got {}, expected {want}", d.verdict))?;
        ensure(elapsed < limit, || format!("{t}{n} {want} query took {elapsed:.2?}, limit {limit:?}"))?;
        report.push(format!("{t}{n} {want} {elapsed:.2?} ({} rounds)", d.rounds_run));
    }
    Ok(report.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, check) in criteria {
        if !filter.is_empty() && !filter.contains(&n) {
            continue;
        }
        match check() {
            Ok(msg) => println!("criterion {n}: PASS - {msg}"),
            Err(msg) => {
                println!("criterion {n}: FAIL - {msg}");
                failed += 1;
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
