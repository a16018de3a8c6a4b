use demkit::oracle::{all_skew_invertible, exhaustive_isotropic_max, random_congruence_scramble, EnumerationBudget};
use demkit::symplectic::{is_nondegenerate, max_isotropic_dim_bruteforce, skew_normal_form, GramForm};
use demkit::{LocalRing, Matrix};

fn ring(p: u64, k: u32) -> LocalRing {
    LocalRing::new(p, k).unwrap()
}

fn det_by_permutations(m: &Matrix) -> i128 {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i128;
    // Heap's algorithm with explicit sign tracking.
    fn visit(k: usize, perm: &mut Vec<usize>, sign: i128, m: &Matrix, total: &mut i128) -> i128 {
        if k <= 1 {
            let prod: i128 = perm.iter().enumerate().map(|(i, &j)| m.get(i, j) as i128).product();
            *total += sign * prod;
            return sign;
        }
        let mut sign = visit(k - 1, perm, sign, m, total);
        for i in 0..k - 1 {
            if k % 2 == 0 {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
            sign = visit(k - 1, perm, -sign, m, total);
        }
        sign
    }
    visit(n, &mut perm, 1, m, &mut total);
    total
}

/// Count of skew matrices with unit determinant, by direct enumeration and permutation determinant.
fn independent_count(n: usize, r: LocalRing) -> usize {
    let q = r.modulus();
    let diag = r.two_torsion();
    let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let total = q.pow(upper.len() as u32) * (diag.len() as u64).pow(n as u32);
    let mut count = 0;
    for mut code in 0..total {
        let mut m = Matrix::zeros(r, n, n);
        for &(i, j) in &upper {
            m.set(i, j, code % q);
            m.set(j, i, (q - code % q) % q);
            code /= q;
        }
        for i in 0..n {
            m.set(i, i, diag[(code % diag.len() as u64) as usize]);
            code /= diag.len() as u64;
        }
        if det_by_permutations(&m).rem_euclid(r.p() as i128) != 0 {
            count += 1;
        }
    }
    count
}

#[test]
fn heap_determinant_sanity() {
    let r = ring(7, 1);
    let m = Matrix::from_rows(r, &[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]).unwrap();
    // 2(3-2) - 0 + 1(1-3) = 0
    assert_eq!(det_by_permutations(&m), 0);
    let id = Matrix::identity(r, 4);
    assert_eq!(det_by_permutations(&id), 1);
}

#[test]
fn enumeration_counts_agree() {
    let budget = EnumerationBudget::default();
    let cases = [(2, 2, 1), (4, 2, 1), (2, 3, 1), (4, 3, 1), (2, 5, 1), (4, 5, 1), (2, 2, 2), (4, 2, 2), (2, 3, 2)];
    for (n, p, k) in cases {
        let r = ring(p, k);
        let forms: Vec<GramForm> = all_skew_invertible(n, r, &budget).unwrap().collect();
        assert_eq!(forms.len(), independent_count(n, r), "n={n} over Z/{}", r.modulus());
        let mut grams: Vec<Vec<Vec<u64>>> = forms.iter().map(|f| f.gram().to_rows()).collect();
        grams.sort();
        grams.dedup();
        assert_eq!(grams.len(), forms.len(), "duplicates over Z/{}", r.modulus());
    }
}

#[test]
fn every_enumerated_form_has_a_verified_normal_form() {
    let budget = EnumerationBudget::default();
    for (n, p, k) in [(2, 2, 1), (4, 2, 1), (4, 3, 1), (2, 2, 3), (4, 2, 2), (2, 3, 2)] {
        for f in all_skew_invertible(n, ring(p, k), &budget).unwrap() {
            assert!(is_nondegenerate(&f));
            let nf = skew_normal_form(&f).unwrap();
            assert_eq!(f.congruent(&nf.transform).unwrap().gram(), &nf.block_matrix());
        }
    }
}

#[test]
fn isotropic_maxima_agree_on_all_small_forms() {
    let budget = EnumerationBudget::default();
    for (p, n) in [(2u64, 2usize), (2, 4), (3, 2), (3, 4), (5, 2)] {
        let r = ring(p, 1);
        let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let diag = r.two_torsion();
        let total = p.pow(upper.len() as u32) * (diag.len() as u64).pow(n as u32);
        for mut code in 0..total {
            let mut m = Matrix::zeros(r, n, n);
            for &(i, j) in &upper {
                m.set(i, j, code % p);
                m.set(j, i, (p - code % p) % p);
                code /= p;
            }
            for i in 0..n {
                m.set(i, i, diag[(code % diag.len() as u64) as usize]);
                code /= diag.len() as u64;
            }
            let f = GramForm::new(m).unwrap();
            let main = max_isotropic_dim_bruteforce(&f).unwrap();
            assert_eq!(main, exhaustive_isotropic_max(&f, &budget).unwrap(), "{:?}", f.gram().to_rows());
            if is_nondegenerate(&f) {
                assert_eq!(main, n / 2);
            }
        }
    }
}

#[test]
fn scrambled_standard_forms_round_trip() {
    for (p, k, t) in [(2, 2, 2), (2, 3, 2), (3, 2, 2), (5, 1, 3), (2, 1, 3)] {
        let f = GramForm::standard(ring(p, k), t);
        for seed in 0..25 {
            let (g, transform) = random_congruence_scramble(&f, seed);
            assert!(transform.is_invertible());
            assert_eq!(f.congruent(&transform).unwrap(), g);
            let nf = skew_normal_form(&g).unwrap();
            assert_eq!(g.congruent(&nf.transform).unwrap().gram(), &nf.block_matrix());
        }
    }
    let f = GramForm::standard(ring(2, 2), 2);
    assert_eq!(random_congruence_scramble(&f, 1), random_congruence_scramble(&f, 1));
    assert_eq!(f.congruent(&Matrix::identity(ring(2, 2), 4)).unwrap(), f);
}
