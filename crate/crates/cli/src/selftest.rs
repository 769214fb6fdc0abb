//! The acceptance suite. Each criterion checks an exact identity or an
//! oracle equivalence and has a runtime budget. With `corrupt`, every
//! oracle side is perturbed so that the suite must fail.

use std::time::{Duration, Instant};

use knotcover::algebra::ring::{rat, ratio, rational_to_f64, Rational};
use knotcover::algebra::{denominator_to_tp, wheels_coefficients, LaurentPoly, RatFun};
use knotcover::branched::{
    casson_growth, casson_walker, is_p_regular, signature_average, torsion_growth_at,
    torsion_order, torsion_order_oracle,
};
use knotcover::graphs::{count_admissible, lift_p, phi_r, res_p_graph, BeadedGraph};
use knotcover::lambda::{
    normalized_determinant, subst_cycle, subst_twisted, twisted_cycle_matrix, varsigma_at,
    varsigma_p, LambdaMatrix,
};
use knotcover::seifert::{
    alexander, clover_matrix, figure_eight, random_seifert, seifert_hermitian, signature_function,
    symmetrize, trefoil, SeifertMatrix,
};
use knotcover::theta::{random_monomial_class, res_p_theta, theta_automorphisms, ThetaClass};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub corrupt: bool,
    /// Criterion numbers to run; empty means all.
    pub only: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.ok && self.elapsed <= self.limit
    }

    /// `PASS  3 two-route total signature  0.41 s / 60 s  (detail)`
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {:<34} {:>8.3} s / {:>2} s  {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

type Check = fn(bool) -> Result<String, String>;

const CRITERIA: [(usize, &str, u64, Check); 12] = [
    (1, "congruence identity", 10, c1_congruence),
    (
        2,
        "determinant and signature agree",
        60,
        c2_delta_and_signature,
    ),
    (3, "two-route total signature", 60, c3_two_routes),
    (4, "torsion order oracle", 30, c4_torsion_oracle),
    (5, "torsion growth rate", 30, c5_growth),
    (6, "lift equals residue", 60, c6_liftres),
    (7, "beadless lifts", 1, c7_beadless),
    (8, "residue well defined on theta", 10, c8_residue_relations),
    (9, "casson growth", 60, c9_casson),
    (10, "wheels coefficients", 1, c10_wheels),
    (11, "denominators in t^p", 10, c11_denominators),
    (12, "twisted cycle structure", 10, c12_twisted),
];

pub fn run(opts: &Options) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .filter(|(id, ..)| opts.only.is_empty() || opts.only.contains(id))
        .map(|&(id, name, limit, check)| run_one(id, name, limit, check, opts.corrupt))
        .collect()
}

pub fn run_criterion(id: usize, corrupt: bool) -> CriterionResult {
    let &(id, name, limit, check) = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .expect("criterion 1..=12");
    run_one(id, name, limit, check, corrupt)
}

fn run_one(
    id: usize,
    name: &'static str,
    limit: u64,
    check: Check,
    corrupt: bool,
) -> CriterionResult {
    let start = Instant::now();
    let outcome = check(corrupt);
    let elapsed = start.elapsed();
    let (ok, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult {
        id,
        name,
        ok,
        detail,
        elapsed,
        limit: Duration::from_secs(limit),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bump(corrupt: bool) -> i64 {
    i64::from(corrupt)
}

/// 200 random standard-basis Seifert matrices of size at most 6, then the
/// trefoil and the figure-eight.
pub fn random_corpus() -> Vec<SeifertMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f);
    let mut out: Vec<SeifertMatrix> = (0..200)
        .map(|_| {
            let g = rng.gen_range(1..=3);
            random_seifert(g, 2, &mut rng)
        })
        .collect();
    out.push(trefoil());
    out.push(figure_eight());
    out
}

/// The bundled records.
pub fn bundled_corpus() -> Vec<(String, SeifertMatrix)> {
    crate::corpus()
        .into_iter()
        .map(|r| {
            let a = r.seifert_matrix().expect("bundled record is valid");
            (r.name, a)
        })
        .collect()
}

fn c1_congruence(corrupt: bool) -> Result<String, String> {
    let corpus = random_corpus();
    for (idx, a) in corpus.iter().enumerate() {
        let w = clover_matrix(a).map_err(|e| format!("knot {idx}: {e}"))?;
        let g = a.genus();
        let one_minus_t = LaurentPoly::from_int_terms(&[(0, 1), (1, -1)]);
        let d = LambdaMatrix::from_fn(2 * g, |i, j| match (i == j, i < g) {
            (true, true) => one_minus_t.clone(),
            (true, false) => LaurentPoly::one(),
            _ => LaurentPoly::zero(),
        });
        let lhs = d.mul(&w).mul(&d.adjoint());
        let mut rhs = seifert_hermitian(a);
        if corrupt && idx == corpus.len() - 2 {
            let e = rhs.get(0, 0) + &LaurentPoly::one();
            rhs.set(0, 0, e);
        }
        ensure(lhs == rhs, || {
            format!("knot {idx}: P W P* differs from (1-t^-1)A + (1-t)A^T")
        })?;
    }
    Ok(format!("{} matrices", corpus.len()))
}

fn c2_delta_and_signature(corrupt: bool) -> Result<String, String> {
    let corpus = random_corpus();
    let mut roots = 0;
    for (idx, a) in corpus.iter().enumerate() {
        let w = clover_matrix(a).map_err(|e| format!("knot {idx}: {e}"))?;
        let delta = normalized_determinant(&w).map_err(|e| format!("knot {idx}: {e}"))?;
        let alex = alexander(a);
        ensure(symmetrize(&delta).as_ref() == Some(&alex), || {
            format!("knot {idx}: delta {delta} vs Alexander {alex}")
        })?;
        for p in 2..=10u64 {
            for k in 1..p as i64 {
                let from_w = varsigma_at(&w, k, p, TOL).ok();
                let from_a = signature_function(a, k, p, TOL)
                    .ok()
                    .map(|s| s + bump(corrupt));
                ensure(from_w == from_a, || {
                    format!("knot {idx}, k = {k}, p = {p}: {from_w:?} vs {from_a:?}")
                })?;
                roots += 1;
            }
        }
    }
    Ok(format!("{} matrices, {roots} roots", corpus.len()))
}

fn c3_two_routes(corrupt: bool) -> Result<String, String> {
    let t = clover_matrix(&trefoil()).map_err(|e| e.to_string())?;
    for (p, want) in [(2u64, -2i64), (3, -4)] {
        let got = varsigma_p(&t, p).map_err(|e| e.to_string())?;
        let want = want + bump(corrupt);
        ensure(got == want, || {
            format!("trefoil p = {p}: {got}, expected {want}")
        })?;
    }
    let mut checked = 0;
    let mut knots: Vec<SeifertMatrix> = random_corpus();
    knots.extend(bundled_corpus().into_iter().map(|(_, a)| a));
    for (idx, a) in knots.iter().enumerate() {
        let w = clover_matrix(a).map_err(|e| format!("knot {idx}: {e}"))?;
        for p in 1..=10u64 {
            if !is_p_regular(a, p) {
                continue;
            }
            let exact = varsigma_p(&w, p).map_err(|e| format!("knot {idx}, p = {p}: {e}"))?;
            let mut sum = 0;
            for k in 0..p as i64 {
                sum +=
                    varsigma_at(&w, k, p, TOL).map_err(|e| format!("knot {idx}, p = {p}: {e}"))?;
            }
            ensure(exact == sum + bump(corrupt), || {
                format!("knot {idx}, p = {p}: {exact} vs {sum}")
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{} knots, {checked} regular (knot, p) pairs",
        knots.len()
    ))
}

fn c4_torsion_oracle(corrupt: bool) -> Result<String, String> {
    let t = trefoil();
    for (p, want) in [(2u64, 3i64), (3, 4), (5, 1)] {
        let got = torsion_order(&t, p).map_err(|e| e.to_string())?;
        let want = want + bump(corrupt);
        ensure(got == BigInt::from(want), || {
            format!("trefoil beta_{p} = {got}, expected {want}")
        })?;
    }
    let mut checked = 0;
    let knots = bundled_corpus();
    for (name, a) in &knots {
        for p in 1..=12u64 {
            if !is_p_regular(a, p) {
                continue;
            }
            let r = torsion_order(a, p).map_err(|e| format!("{name}, p = {p}: {e}"))?;
            let o = torsion_order_oracle(a, p).map_err(|e| format!("{name}, p = {p}: {e}"))?
                + bump(corrupt);
            ensure(r == o, || {
                format!("{name}, p = {p}: resultant {r} vs determinant {o}")
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{} knots, {checked} regular (knot, p) pairs",
        knots.len()
    ))
}

fn c5_growth(corrupt: bool) -> Result<String, String> {
    let target = ((3.0 + 5f64.sqrt()) / 2.0).ln() + 0.1 * bump(corrupt) as f64;
    let ps = [50u64, 100, 200, 500];
    let table = torsion_growth_at(&figure_eight(), &ps);
    let mut gaps = Vec::new();
    for r in &table.rows {
        let y = r
            .log_ratio
            .ok_or_else(|| format!("p = {} is irregular", r.p))?;
        gaps.push((y - target).abs());
    }
    let last = *gaps.last().expect("four rows");
    ensure(last <= 0.05, || format!("gap at p = 500 is {last}"))?;
    for (i, w) in gaps.windows(2).enumerate() {
        // ratios agree with the limit to machine precision from p = 100 on
        ensure(w[1] <= w[0] + 1e-12, || {
            format!(
                "gap grows from p = {} to p = {}: {gaps:?}",
                ps[i],
                ps[i + 1]
            )
        })?;
    }
    Ok(format!("gap at p = 500: {last:.3e}"))
}

fn c6_liftres(corrupt: bool) -> Result<String, String> {
    let theta = BeadedGraph::theta([0, 0, 0]);
    let graphs = [
        ("theta", theta.clone()),
        ("eyes", BeadedGraph::eyes([0, 0, 0])),
        ("theta+theta", theta.disjoint_union(&theta)),
    ];
    let mut cases = 0;
    for (name, g) in &graphs {
        let m = g.edges().len();
        for p in [2u64, 3, 5] {
            let total = (p as usize).pow(m as u32);
            for code in 0..total {
                let beads: Vec<i64> = (0..m)
                    .map(|i| ((code / (p as usize).pow(i as u32)) % p as usize) as i64)
                    .collect();
                let h = g.with_beads(&beads);
                let (lift, stripped) = lift_p(&h, p).map_err(|e| format!("{name}: {e}"))?;
                ensure(stripped == g.stripped(), || {
                    format!("{name}: stripped graph changed")
                })?;
                let res = res_p_graph(&phi_r(&h).map_err(|e| format!("{name}: {e}"))?, &h, p)
                    .map_err(|e| format!("{name}: {e}"))?;
                let want = rat(lift as i64 + bump(corrupt));
                ensure(res == want, || {
                    format!("{name}, p = {p}, beads {beads:?}: Res = {res}, Lift = {want}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (graph, beads, p) cases, 0 failures"))
}

fn c7_beadless(corrupt: bool) -> Result<String, String> {
    let theta = BeadedGraph::theta([0, 0, 0]);
    let eyes = BeadedGraph::eyes([0, 0, 0]);
    let mut graphs: Vec<(usize, BeadedGraph)> = Vec::new();
    for (i, a) in [&theta, &eyes].into_iter().enumerate() {
        graphs.push((1, a.clone()));
        for (j, b) in [&theta, &eyes].into_iter().enumerate().skip(i) {
            let ab = a.disjoint_union(b);
            graphs.push((2, ab.clone()));
            for c in [&theta, &eyes].into_iter().skip(j) {
                graphs.push((3, ab.disjoint_union(c)));
            }
        }
    }
    for (b, g) in &graphs {
        ensure(g.components() == *b, || format!("expected {b} components"))?;
        for p in 1..=7u64 {
            let (n, _) = lift_p(g, p).map_err(|e| e.to_string())?;
            let want = p.pow(*b as u32) + bump(corrupt) as u64;
            ensure(n == want, || {
                format!("b = {b}, p = {p}: Lift = {n}, expected {want}")
            })?;
            ensure(count_admissible(g, p) == Ok(n), || "count mismatch".into())?;
        }
    }
    Ok(format!("{} graphs, p <= 7", graphs.len()))
}

fn c8_residue_relations(corrupt: bool) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e7a);
    let auts = theta_automorphisms();
    ensure(auts.len() == 12, || format!("{} automorphisms", auts.len()))?;
    for i in 0..100 {
        let q = random_monomial_class(rng.gen_range(1..=4), 4, &mut rng);
        for p in [2u64, 3, 5, 7] {
            let r = res_p_theta(&q, p).map_err(|e| e.to_string())? + rat(bump(corrupt));
            let pushed = res_p_theta(&q.push(), p).map_err(|e| e.to_string())?;
            ensure(pushed == r, || {
                format!("class {i}, p = {p}: push changes {r} to {pushed}")
            })?;
            for aut in &auts {
                let moved = res_p_theta(&q.apply(*aut), p).map_err(|e| e.to_string())?;
                ensure(moved == r, || {
                    format!("class {i}, p = {p}: {aut:?} changes {r} to {moved}")
                })?;
            }
        }
    }
    Ok("100 classes, p in {2, 3, 5, 7}".into())
}

fn c9_casson(corrupt: bool) -> Result<String, String> {
    let sigavg = signature_average(&trefoil(), TOL).map_err(|e| e.to_string())?;
    let want = -4.0 / 3.0 + bump(corrupt) as f64;
    ensure((sigavg - want).abs() <= 1e-12, || {
        format!("trefoil signature average {sigavg}")
    })?;
    let mut classes: Vec<ThetaClass> =
        vec![serde_json::from_str(crate::EXAMPLE_Q).map_err(|e| e.to_string())?];
    let mut rng = ChaCha8Rng::seed_from_u64(0xca55);
    classes.extend((0..2).map(|_| random_monomial_class(3, 3, &mut rng)));
    let p = 200;
    let mut worst: f64 = 0.0;
    let knots = bundled_corpus();
    for (name, a) in &knots {
        if !is_p_regular(a, p) {
            continue;
        }
        for (i, q) in classes.iter().enumerate() {
            let lambda = casson_walker(a, q, p).map_err(|e| format!("{name}, class {i}: {e}"))?;
            let limit = casson_growth(a, q, TOL).map_err(|e| format!("{name}, class {i}: {e}"))?
                + bump(corrupt) as f64;
            let gap = (rational_to_f64(&lambda) / p as f64 - limit).abs();
            worst = worst.max(gap);
            ensure(gap <= 0.02, || format!("{name}, class {i}: gap {gap}"))?;
        }
    }
    Ok(format!(
        "{} knots x {} classes, worst gap {worst:.2e}",
        knots.len(),
        classes.len()
    ))
}

/// Bernoulli numbers from `Σ_{k<=m} C(m+1, k) B_k = 0`.
fn bernoulli(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=n {
        let mut binom = BigInt::one();
        let mut s = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            s += Rational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

fn c10_wheels(corrupt: bool) -> Result<String, String> {
    let got = wheels_coefficients(4);
    let b = bernoulli(8);
    let mut fact = BigInt::one();
    let mut oracle = Vec::new();
    for n in 1..=4usize {
        fact *= BigInt::from((2 * n - 1) * 2 * n);
        let denom = Rational::from_integer(BigInt::from(4 * n) * &fact);
        oracle.push(&b[2 * n] / denom);
    }
    oracle[0] += rat(bump(corrupt));
    let show = |v: &[Rational]| {
        v.iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    ensure(got[0] == ratio(1, 48) && got[1] == ratio(-1, 5760), || {
        format!("leading coefficients {}", show(&got))
    })?;
    ensure(got == oracle, || {
        format!("{} vs Bernoulli oracle {}", show(&got), show(&oracle))
    })?;
    Ok(show(&got))
}

fn random_laurent(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> LaurentPoly {
    let mut f = LaurentPoly::zero();
    for e in lo..=hi {
        f.add_term(e, &rat(rng.gen_range(-3..=3)));
    }
    f
}

fn c11_denominators(corrupt: bool) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x11);
    let mut made = 0;
    while made < 50 {
        let num = random_laurent(&mut rng, -2, 2);
        let deg = rng.gen_range(1..=3);
        let den = random_laurent(&mut rng, 0, deg);
        let Ok(r) = RatFun::new(num, den) else {
            continue;
        };
        made += 1;
        for p in [2u64, 3, 5] {
            let (pp, qp) = denominator_to_tp(&r, p);
            ensure(qp.min_exp().is_some_and(|e| e >= 0), || {
                format!("Qp = {qp} is not a polynomial")
            })?;
            let q_in_t = qp.substitute_power(p as i64);
            ensure(q_in_t.terms().all(|(e, _)| e % p as i64 == 0), || {
                format!("{q_in_t} is not in t^{p}")
            })?;
            let pp = &pp + &LaurentPoly::from(bump(corrupt));
            ensure(r.equals_fraction(&pp, &q_in_t), || {
                format!("{pp} / ({q_in_t}) != {r:?}")
            })?;
        }
    }
    Ok("50 rational functions, p in {2, 3, 5}".into())
}

fn c12_twisted(corrupt: bool) -> Result<String, String> {
    for p in 1..=8u64 {
        let tt = twisted_cycle_matrix(p).map_err(|e| e.to_string())?;
        let mut acc = LambdaMatrix::identity(p as usize);
        for _ in 0..p {
            acc = acc.mul(&tt);
        }
        let t = LaurentPoly::t() + LaurentPoly::from(bump(corrupt));
        let want = LambdaMatrix::from_fn(p as usize, |i, j| {
            if i == j {
                t.clone()
            } else {
                LaurentPoly::zero()
            }
        });
        ensure(acc == want, || format!("(T_t)^{p} != t I"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x12);
    for i in 0..50 {
        let n = rng.gen_range(1..=3);
        let mut w = LambdaMatrix::zeros(n);
        for r in 0..n {
            for c in r..n {
                let f = random_laurent(&mut rng, -2, 2);
                let f = if r == c { &f + &f.bar() } else { f };
                w.set(c, r, f.bar());
                w.set(r, c, f);
            }
        }
        let p = 1 + i % 8;
        let tw = subst_twisted(&w, p).map_err(|e| e.to_string())?;
        ensure(tw.is_hermitian(), || {
            format!("matrix {i}, p = {p}: not Hermitian")
        })?;
        let direct = subst_cycle(&w, p).map_err(|e| e.to_string())?;
        ensure(&tw.eval_one() == direct.matrix(), || {
            format!("matrix {i}, p = {p}: value at 1 differs")
        })?;
    }
    Ok("p <= 8, 50 Hermitian matrices".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_numbers() {
        let b = bernoulli(6);
        assert_eq!(b[1], ratio(-1, 2));
        assert_eq!(b[2], ratio(1, 6));
        assert_eq!(b[4], ratio(-1, 30));
        assert_eq!(b[6], ratio(1, 42));
        assert!(b[3].is_zero() && b[5].is_zero());
    }

    #[test]
    fn corpus_is_valid() {
        assert_eq!(random_corpus().len(), 202);
        assert_eq!(bundled_corpus().len(), crate::CORPUS.len());
    }
}
