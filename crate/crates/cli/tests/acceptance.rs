//! End-to-end acceptance checks. Every comparison is exact. Prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use demkit::demushkin::{normalize_relator, subgroup_rank, Constraint};
use demkit::howson::{bound, chain_depth, hanna_neumann_bound, open_case_bound, schreier_bound, trace};
use demkit::magnus::{analyze, demushkin_relator, expand, FreeWord, QInvariant};
use demkit::oracle::{
    all_isotropic_subspaces, all_skew_invertible, exhaustive_isotropic_max, expand_letterwise, EnumerationBudget,
    SplitMix64,
};
use demkit::symplectic::{
    check_symplectic, complete_isotropic, is_nondegenerate, lift_basis, max_isotropic_dim_bruteforce,
    skew_normal_form, symplectic_basis_field, GramForm, Subspace,
};
use demkit::{LocalRing, Matrix};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde_json::Value;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ring(p: u64, k: u32) -> LocalRing {
    LocalRing::new(p, k).unwrap()
}

fn budget() -> EnumerationBudget {
    EnumerationBudget::default()
}

fn vectors_over(p: u64, n: usize) -> Vec<Vec<u64>> {
    let total = p.pow(n as u32);
    (0..total)
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let d = c % p;
                    c /= p;
                    d
                })
                .collect()
        })
        .collect()
}

fn criterion_1() -> Check {
    let mut checked = 0;
    for (p, n) in [(2u64, 2usize), (2, 4), (3, 2)] {
        let field = ring(p, 1);
        for f in all_skew_invertible(n, field, &budget()).map_err(|e| e.to_string())? {
            let nf = skew_normal_form(&f).map_err(|e| format!("{:?}: {e}", f.gram().to_rows()))?;
            let congruent = f.congruent(&nf.transform).map_err(|e| e.to_string())?;
            ensure(congruent.gram() == &nf.block_matrix(), || format!("PᵀGP mismatch for {:?}", f.gram().to_rows()))?;
            for i in 0..n {
                let d = congruent.gram().get(i, i);
                ensure(field.add(d, d) == 0, || format!("diagonal {d} not 2-torsion"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} forms verified"))
}

fn random_skew_invertible(r: LocalRing, n: usize, rng: &mut SplitMix64) -> GramForm {
    let diag = r.two_torsion();
    loop {
        let mut g = Matrix::zeros(r, n, n);
        for i in 0..n {
            g.set(i, i, diag[rng.below(diag.len() as u64) as usize]);
            for j in i + 1..n {
                let x = rng.below(r.modulus());
                g.set(i, j, x);
                g.set(j, i, r.neg(x));
            }
        }
        if g.is_invertible() {
            return GramForm::new(g).unwrap();
        }
    }
}

fn criterion_2() -> Check {
    let rings = [ring(2, 2), ring(2, 3), ring(3, 2)];
    let mut rng = SplitMix64::new(2);
    for case in 0..500 {
        let r = rings[case % 3];
        let n = 2 * (1 + (case / 3) % 3);
        let f = random_skew_invertible(r, n, &mut rng);
        let d = symplectic_basis_field(&f.reduce_mod_p()).map_err(|e| e.to_string())?;
        // Any lift of b_1: add an element of the maximal ideal.
        let b1: Vec<u64> = d.b(0).iter().map(|&x| r.add(x, r.mul(r.p(), rng.below(r.modulus())))).collect();
        let c = lift_basis(&f, &b1, &d).map_err(|e| format!("case {case}: {e}"))?;
        ensure(check_symplectic(&c), || format!("case {case}: lifted basis is not symplectic"))?;
        ensure(c.b(0) == b1.as_slice(), || format!("case {case}: B_1 changed"))?;
        for (lifted, base) in c.vectors().iter().zip(d.vectors()) {
            let reduced: Vec<u64> = lifted.iter().map(|x| x % r.p()).collect();
            ensure(&reduced == base, || format!("case {case}: reduction differs from the field basis"))?;
        }
    }
    Ok("500 forms over Z/4, Z/8, Z/9 with n in {2,4,6}".into())
}

fn criterion_3() -> Check {
    let mut runs = 0;
    for p in [2u64, 3] {
        let field = ring(p, 1);
        let f = GramForm::standard(field, 2);
        let subspaces = all_isotropic_subspaces(&f, &budget()).map_err(|e| e.to_string())?;
        for sub in subspaces.iter().filter(|s| s.dim() > 0) {
            let coeffs = vectors_over(p, sub.dim());
            for c in coeffs.iter().filter(|c| c.iter().any(|&x| x != 0)) {
                // A basis of N whose first vector is the chosen combination.
                let v: Vec<u64> = (0..4)
                    .map(|k| sub.basis().iter().zip(c).fold(0, |acc, (b, &ci)| field.add(acc, field.mul(ci, b[k]))))
                    .collect();
                let mut basis = vec![v];
                for b in sub.basis() {
                    let mut trial = basis.clone();
                    trial.push(b.clone());
                    if Subspace::new(field, 4, trial.clone()).is_ok() {
                        basis = trial;
                    }
                }
                let n_sub = Subspace::new(field, 4, basis.clone()).unwrap();
                for idx in 0..basis.len() {
                    let out = complete_isotropic(&f, &n_sub, idx).map_err(|e| format!("{basis:?}/{idx}: {e}"))?;
                    ensure(check_symplectic(&out), || format!("{basis:?}/{idx}: not symplectic"))?;
                    ensure(out.b(0) == basis[idx].as_slice(), || format!("{basis:?}/{idx}: b_1 is not distinguished"))?;
                    let bs = Subspace::new(field, 4, (0..out.t()).map(|i| out.b(i).to_vec()).collect()).unwrap();
                    ensure(bs.contains_subspace(&n_sub), || format!("{basis:?}/{idx}: N not in span of b"))?;
                    runs += 1;
                }
            }
        }
    }
    Ok(format!("{runs} completions over F_2 and F_3"))
}

fn criterion_4() -> Check {
    let mut forms = 0;
    for n in [2usize, 4] {
        for f in all_skew_invertible(n, ring(2, 1), &budget()).map_err(|e| e.to_string())? {
            ensure(is_nondegenerate(&f), || "enumerated a degenerate form".into())?;
            let a = max_isotropic_dim_bruteforce(&f).map_err(|e| e.to_string())?;
            let b = exhaustive_isotropic_max(&f, &budget()).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("oracles disagree on {:?}: {a} vs {b}", f.gram().to_rows()))?;
            ensure(a <= n / 2, || format!("isotropic dimension {a} > {} for {:?}", n / 2, f.gram().to_rows()))?;
            forms += 1;
        }
    }
    Ok(format!("{forms} nondegenerate forms, both enumerations agree"))
}

fn binom2(e: &BigInt) -> BigInt {
    e * (e - 1) / 2
}

fn criterion_5() -> Check {
    let mut rng = SplitMix64::new(5);
    for case in 0..10_000 {
        let n = 1 + rng.below(6) as usize;
        let len = rng.below(41) as usize;
        let letters: Vec<(usize, i64)> =
            (0..len).map(|_| (rng.below(n as u64) as usize, if rng.below(2) == 0 { 1 } else { -1 })).collect();
        let w = FreeWord::from_i64(n, &letters).unwrap();
        let m = expand(&w);
        let l = expand_letterwise(&w, &budget()).map_err(|e| e.to_string())?;
        ensure(m == l, || format!("case {case}: expansions differ on {letters:?}"))?;
        for i in 0..n {
            ensure(m.quadratic[i][i] == binom2(&m.linear[i]), || format!("case {case}: diagonal identity"))?;
            for j in 0..n {
                if i != j {
                    let lhs = &m.quadratic[i][j] + &m.quadratic[j][i];
                    ensure(lhs == &m.linear[i] * &m.linear[j], || format!("case {case}: shuffle identity at {i},{j}"))?;
                }
            }
        }
    }
    Ok("10000 words".into())
}

fn criterion_6() -> Check {
    let surface = demushkin_relator(2, &BigInt::zero(), &BigInt::zero()).unwrap();
    for p in [2u64, 3] {
        let a = analyze(&surface, p).map_err(|e| e.to_string())?;
        ensure(a.q == QInvariant::TorsionFree, || format!("p={p}: q is not 0"))?;
        let form = a.cup_form.ok_or("no form")?;
        ensure(form == GramForm::standard(ring(p, 1), 2), || format!("p={p}: cup form not standard"))?;
        ensure(a.is_demushkin_candidate, || "surface relator rejected".into())?;
    }
    let r = FreeWord::from_i64(4, &[(0, 4), (0, 1), (1, 1), (0, -1), (1, -1), (2, 1), (3, 1), (2, -1), (3, -1)]).unwrap();
    let a = analyze(&r, 2).map_err(|e| e.to_string())?;
    ensure(a.q.value(2) == BigInt::from(4), || format!("q = {}", a.q.value(2)))?;
    ensure(a.magnus.quadratic[0][0] == BigInt::from(6), || format!("c11 = {}", a.magnus.quadratic[0][0]))?;
    ensure(a.magnus.quadratic[0][0] == binom2(&BigInt::from(4)), || "c11 differs from binom(q,2)".into())?;
    ensure(a.pairing.get(0, 0) == 0, || "diagonal pairing not binom(4,2) mod 2".into())?;
    Ok("genus-2 surface at p=2,3; q=4 with c11=6".into())
}

fn nielsen_scramble(r: &FreeWord, rng: &mut SplitMix64) -> FreeWord {
    let n = r.rank();
    let mut w = r.clone();
    for _ in 0..1 + rng.below(8) {
        let i = rng.below(n as u64) as usize;
        let j = rng.below(n as u64) as usize;
        let mut images: Vec<FreeWord> = (0..n).map(|g| FreeWord::generator(n, g).unwrap()).collect();
        match rng.below(4) {
            0 if i != j => images[i] = FreeWord::from_i64(n, &[(i, 1), (j, 1)]).unwrap(),
            1 if i != j => images[i] = FreeWord::from_i64(n, &[(j, -1), (i, 1)]).unwrap(),
            2 => images[i] = images[i].inverse(),
            _ => images.swap(i, j),
        }
        w = w.substitute(&images).unwrap();
    }
    w
}

/// Pairing matrix mod p from the letterwise expansion: upper triangle and diagonal as computed, lower negated.
fn raw_pairing(c: &[Vec<BigInt>], p: u64) -> Vec<Vec<u64>> {
    let n = c.len();
    let pb = BigInt::from(p);
    let m = |x: &BigInt| x.mod_floor(&pb).to_u64().unwrap();
    (0..n).map(|i| (0..n).map(|j| if i <= j { m(&c[i][j]) } else { m(&-&c[j][i]) }).collect()).collect()
}

fn check_normalization(case: usize, p: u64, t: usize, q: &BigInt, r: &FreeWord, rng: &mut SplitMix64) -> Result<(), String> {
    let n = 2 * t;
    let reference = expand_letterwise(r, &budget()).map_err(|e| e.to_string())?;
    let c = raw_pairing(&reference.quadratic, p);
    let pb = BigInt::from(p);

    // χ with C χ = a/q over F_p, by search.
    let chi = if q.is_zero() {
        None
    } else {
        let s: Vec<u64> = reference.linear.iter().map(|a| (a / q).mod_floor(&pb).to_u64().unwrap()).collect();
        vectors_over(p, n).into_iter().find(|x| (0..n).all(|i| (0..n).map(|j| c[i][j] * x[j]).sum::<u64>() % p == s[i]))
    };
    let pair = |u: &[u64], v: &[u64]| -> u64 {
        (0..n).map(|i| (0..n).map(|j| u[i] * c[i][j] * v[j]).sum::<u64>()).sum::<u64>() % p
    };

    let constraint = if case % 2 == 0 {
        let mut basis: Vec<Vec<u64>> = chi.iter().cloned().collect();
        let candidates: Vec<Vec<u64>> = vectors_over(p, n)
            .into_iter()
            .filter(|v| v.iter().any(|&x| x != 0) && pair(v, v) == 0 && basis.iter().all(|b| pair(v, b) == 0 && pair(b, v) == 0))
            .filter(|v| Subspace::new(ring(p, 1), n, basis.iter().cloned().chain([v.clone()]).collect()).is_ok())
            .collect();
        if (basis.len() < t) && !candidates.is_empty() {
            basis.push(candidates[rng.below(candidates.len() as u64) as usize].clone());
        }
        if basis.is_empty() {
            None
        } else {
            let distinguished = chi.as_ref().map(|_| 0);
            Some(Constraint { subspace: Subspace::new(ring(p, 1), n, basis).unwrap(), distinguished })
        }
    } else {
        None
    };

    let res = normalize_relator(r, p, None, constraint.as_ref()).map_err(|e| format!("case {case}: {e}"))?;
    let psi = &res.dual_basis;
    let s = &res.substitution;
    let modulus = psi.ring().modulus() as u128;

    // Sᵀ Ψ = I at working precision.
    for k in 0..n {
        for l in 0..n {
            let v: u128 = (0..n).map(|i| s.get(i, k) as u128 * psi.get(i, l) as u128).sum::<u128>() % modulus;
            ensure(v == u128::from(k == l), || format!("case {case}: SᵀΨ ≠ I"))?;
        }
    }

    // (i) by rewriting the relator: x_i -> Π_k w_k^{Ψ_ik}.
    let images: Vec<FreeWord> = (0..n)
        .map(|i| FreeWord::new(n, (0..n).map(|k| (k, BigInt::from(psi.get(i, k)))).collect()).unwrap())
        .collect();
    let rewritten = expand_letterwise(&r.substitute(&images).unwrap(), &budget()).map_err(|e| e.to_string())?;
    let new_pairing = raw_pairing(&rewritten.quadratic, p);
    let corner = binom2(q).mod_floor(&pb).to_u64().unwrap();
    for k in 0..n {
        for l in 0..n {
            let want = match (k, l) {
                (0, 0) => corner,
                _ if k / 2 == l / 2 && k != l => if k < l { 1 } else { p - 1 },
                _ => 0,
            };
            ensure(new_pairing[k][l] % p == want % p, || format!("case {case}: rewritten pairing at {k},{l}"))?;
            // And ΨᵀCΨ from raw matrices.
            let direct: u128 = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| psi.get(i, k) as u128 * c[i][j] as u128 * psi.get(j, l) as u128)
                .sum::<u128>()
                % p as u128;
            ensure(direct as u64 == want % p, || format!("case {case}: ΨᵀCΨ at {k},{l}"))?;
        }
    }

    // (ii) exponent sums.
    if !q.is_zero() {
        let modulus = q * &pb;
        ensure(rewritten.linear[0].mod_floor(&modulus) == q.mod_floor(&modulus), || format!("case {case}: a'_1"))?;
        ensure(rewritten.linear[1..].iter().all(|a| a.mod_floor(&modulus).is_zero()), || format!("case {case}: a'"))?;
    }

    // (iii) the constraint vanishes on every w_i.
    if let Some(con) = &constraint {
        for f in con.subspace.basis() {
            for i in 0..t {
                let v: u64 = (0..n).map(|j| f[j] * (s.get(j, 2 * i) % p)).sum::<u64>() % p;
                ensure(v == 0, || format!("case {case}: constraint functional does not vanish on w_{}", i + 1))?;
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Check {
    let mut rng = SplitMix64::new(7);
    let mut constrained = 0;
    for case in 0..200 {
        let p = [2u64, 3][case % 2];
        let t = 1 + (case / 2) % 3;
        let v = (case / 6) % 3;
        let q = if v == 0 { BigInt::zero() } else { num_traits::pow(BigInt::from(p), v) };
        let delta = &q * BigInt::from(rng.below(3));
        let r = nielsen_scramble(&demushkin_relator(t, &q, &delta).unwrap(), &mut rng);
        check_normalization(case, p, t, &q, &r, &mut rng)?;
        constrained += usize::from(case % 2 == 0);
    }
    Ok(format!("200 scrambled relators, {constrained} with constraints"))
}

fn criterion_8() -> Check {
    let big = |x: u64| BigUint::from(x);
    let e = |e: demkit::Error| e.to_string();
    ensure(bound(2, 2, 2).map_err(e)? == big(17), || "bound(2,2,2)".into())?;
    ensure(bound(3, 3, 2).map_err(e)? == big(163), || "bound(3,3,2)".into())?;
    ensure(chain_depth(2, 2, 2).map_err(e)? == 2, || "chain_depth(2,2,2)".into())?;
    ensure(schreier_bound(3, 4).map_err(e)? == big(9), || "schreier_bound(3,4)".into())?;
    ensure(hanna_neumann_bound(3, 3).map_err(e)? == big(5), || "hanna_neumann_bound(3,3)".into())?;
    ensure(open_case_bound(2, 4).map_err(e)? == big(3), || "open_case_bound(2,4)".into())?;
    for (p, dg, da, db, j) in [(2, 4, 2, 2, 4u64), (2, 3, 2, 2, 16), (3, 4, 3, 3, 81)] {
        let report = trace(p, dg, da, db, &big(j)).map_err(e)?;
        ensure(report.final_bound == bound(p, da, db).map_err(e)?, || "trace final bound".into())?;
    }
    Ok("closed forms and three traces".into())
}

fn criterion_9() -> Check {
    ensure(subgroup_rank(4, 1) == Ok(4), || "subgroup_rank(4,1)".into())?;
    ensure(subgroup_rank(4, 3) == Ok(8), || "subgroup_rank(4,3)".into())?;
    let mut rng = SplitMix64::new(9);
    for _ in 0..1000 {
        let d = 2 + rng.below(99);
        let a = 1 + rng.below(50);
        let b = 1 + rng.below(50);
        let stepwise = subgroup_rank(subgroup_rank(d, a).unwrap() as u64, b).unwrap();
        let direct = subgroup_rank(d, a * b).unwrap();
        ensure(stepwise == direct, || format!("transitivity fails at d={d} a={a} b={b}"))?;
    }
    Ok("two values and 1000 triples".into())
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

fn run_suite() -> Result<Vec<(String, i32, Vec<u8>)>, String> {
    let dir = fixtures();
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("suite.json")).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for case in manifest.as_array().ok_or("manifest is not an array")? {
        let name = case["name"].as_str().unwrap().to_owned();
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_demkit"));
        cmd.args(case["args"].as_array().unwrap().iter().map(|a| a.as_str().unwrap()));
        if let Some(input) = case.get("input").and_then(Value::as_str) {
            cmd.arg(dir.join(input));
        }
        let output = cmd.output().map_err(|e| e.to_string())?;
        let code = output.status.code().unwrap_or(-1);
        let expected = case["exit"].as_i64().unwrap() as i32;
        ensure(code == expected, || format!("{name}: exit {code}, expected {expected}"))?;
        let doc: Value = serde_json::from_slice(&output.stdout).map_err(|e| format!("{name}: output is not JSON: {e}"))?;
        if code != 0 {
            let err = &doc["error"];
            ensure(err["code"].is_string() && err["message"].is_string() && err["context"].is_object(), || {
                format!("{name}: error object lacks code/message/context")
            })?;
        }
        out.push((name, code, output.stdout));
    }
    Ok(out)
}

fn criterion_10() -> Check {
    let first = run_suite()?;
    let second = run_suite()?;
    ensure(first == second, || "outputs differ between runs".into())?;
    let get = |name: &str| -> Value {
        serde_json::from_slice(&first.iter().find(|(n, _, _)| n == name).unwrap().2).unwrap()
    };
    ensure(get("howson-bound") == serde_json::json!({"bound": 17}), || "howson bound output".into())?;
    ensure(get("demushkin-rank") == serde_json::json!({"rank": 8}), || "demushkin rank output".into())?;
    let nf = get("form-normal-form-z9");
    ensure(nf["transform"] == serde_json::json!([[1, 0], [0, 1]]) && nf["blocks"] == serde_json::json!([[0, 0]]), || {
        "normal form over Z/9".into()
    })?;
    let malformed = get("malformed-json");
    ensure(malformed["error"]["code"] == "MalformedJson", || "malformed JSON error code".into())?;
    Ok(format!("{} fixtures, byte-identical across two runs", first.len()))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Check); 10] = [
        ("normal form, exhaustive over F_2 (n=2,4) and F_3 (n=2)", 60, criterion_1),
        ("lifting of 500 random forms over Z/4, Z/8, Z/9", 60, criterion_2),
        ("isotropic completion, every subspace and distinguished vector", 120, criterion_3),
        ("isotropic dimension at most n/2, two enumerations", 120, criterion_4),
        ("Magnus expansion, 10000 random words", 30, criterion_5),
        ("Demushkin detection on surface and torsion relators", 5, criterion_6),
        ("normalization round-trip on 200 scrambles", 60, criterion_7),
        ("Howson numbers and traces", 1, criterion_8),
        ("open subgroup rank formula", 1, criterion_9),
        ("CLI determinism and malformed input", 30, criterion_10),
    ];
    let mut failures = 0;
    for (i, (title, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(*limit);
        let (status, detail) = match (&result, within) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; exceeded {limit} s")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("criterion {:>2} {status}  {title}  [{:.2?} / {limit} s]  {detail}", i + 1, elapsed);
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
