//! Skew-symmetric forms over `Z/p^k`: symplectic bases over the residue
//! field, completion of isotropic subspaces, lifting bases from `F_p` to
//! `Z/p^k`, and the congruence normal form.
//!
//! Forms need not be alternating. Over `p = 2` the diagonal of a
//! skew-symmetric Gram matrix may hold any `d` with `2d = 0`, and every
//! algorithm here carries such diagonals along untouched.
//!
//! Conventions:
//! * `ω(u, v) = uᵀ G v` for column vectors `u`, `v` and Gram matrix `G`.
//! * A symplectic basis is the interleaved list `(a_1, b_1, …, a_t, b_t)`
//!   with `ω(a_i, b_i) = 1` and every other pairing of distinct indices zero.
//! * Congruence: if the columns of `P` are a new basis in old coordinates,
//!   the Gram matrix in the new basis is `Pᵀ G P`.
//! * Searches over `F_p^d` walk vectors in base-`p` counting order with the
//!   first coordinate as the least significant digit; the first hit wins.

use crate::error::{Error, Result};
use crate::localring::LocalRing;
use crate::matrix::Matrix;

/// Cap on the number of candidate subspaces visited by
/// [`max_isotropic_dim_bruteforce`].
pub const SUBSPACE_BUDGET: u128 = 1 << 22;

/// Gram matrix of a skew-symmetric bilinear form on `(Z/p^k)^n`, `n` even.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramForm {
    gram: Matrix,
}

impl GramForm {
    /// Accepts any skew-symmetric square matrix of even positive size.
    /// Degenerate forms are allowed here; operations that need
    /// nondegeneracy check it themselves.
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "Gram matrix is {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        let n = gram.rows();
        if n == 0 || n % 2 != 0 {
            return Err(Error::DimensionOdd(n));
        }
        let r = gram.ring();
        for i in 0..n {
            for j in i..n {
                if r.add(gram.get(i, j), gram.get(j, i)) != 0 {
                    return Err(Error::NotSkewSymmetric { row: i, col: j });
                }
            }
        }
        Ok(GramForm { gram })
    }

    /// Block form with `ω(e_{2i}, e_{2i+1}) = 1`, i.e. `t` copies of `[[0,1],[-1,0]]`.
    pub fn standard(ring: LocalRing, t: usize) -> Self {
        GramForm { gram: standard_gram(ring, t) }
    }

    pub fn ring(&self) -> LocalRing {
        self.gram.ring()
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn pairing(&self, u: &[u64], v: &[u64]) -> u64 {
        self.gram.bilinear(u, v)
    }

    pub fn reduce_mod_p(&self) -> GramForm {
        GramForm { gram: self.gram.reduce_mod_p() }
    }

    /// Gram matrix of the restriction to the span of `vectors`.
    pub fn restrict(&self, vectors: &[Vec<u64>]) -> Matrix {
        let r = self.ring();
        let mut m = Matrix::zeros(r, vectors.len(), vectors.len());
        for (i, u) in vectors.iter().enumerate() {
            for (j, v) in vectors.iter().enumerate() {
                m.set(i, j, self.pairing(u, v));
            }
        }
        m
    }

    /// `Pᵀ G P`.
    pub fn congruent(&self, transform: &Matrix) -> Result<GramForm> {
        let g = transform.transpose().mul(&self.gram)?.mul(transform)?;
        GramForm::new(g)
    }
}

pub(crate) fn standard_gram(ring: LocalRing, t: usize) -> Matrix {
    let mut g = Matrix::zeros(ring, 2 * t, 2 * t);
    for i in 0..t {
        g.set(2 * i, 2 * i + 1, 1);
        g.set(2 * i + 1, 2 * i, ring.neg(1));
    }
    g
}

/// An ordered list `(A_1, B_1, …, A_t, B_t)` of coordinate vectors, together
/// with the form it is meant to be symplectic for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticBasis {
    form: GramForm,
    vectors: Vec<Vec<u64>>,
}

impl SymplecticBasis {
    /// Wraps the vectors without checking anything; see [`check_symplectic`].
    pub fn new(form: GramForm, vectors: Vec<Vec<u64>>) -> Self {
        SymplecticBasis { form, vectors }
    }

    pub fn form(&self) -> &GramForm {
        &self.form
    }

    pub fn vectors(&self) -> &[Vec<u64>] {
        &self.vectors
    }

    pub fn t(&self) -> usize {
        self.vectors.len() / 2
    }

    pub fn a(&self, i: usize) -> &[u64] {
        &self.vectors[2 * i]
    }

    pub fn b(&self, i: usize) -> &[u64] {
        &self.vectors[2 * i + 1]
    }

    /// The `n × 2t` matrix whose columns are the basis vectors.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_columns(self.form.ring(), &self.vectors).expect("equal-length vectors")
    }
}

/// A subspace of `F_p^n` given by an independent spanning list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: LocalRing,
    ambient: usize,
    basis: Vec<Vec<u64>>,
}

impl Subspace {
    pub fn new(field: LocalRing, ambient: usize, basis: Vec<Vec<u64>>) -> Result<Self> {
        if !field.is_field() {
            return Err(Error::NotAField(field.modulus()));
        }
        if basis.iter().any(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch("subspace vector length".into()));
        }
        let basis: Vec<Vec<u64>> =
            basis.into_iter().map(|v| v.into_iter().map(|x| x % field.p()).collect()).collect();
        if !basis.is_empty() {
            let rows = Matrix::from_columns(field, &basis)?.transpose();
            if rows.rank()? != basis.len() {
                return Err(Error::LinearlyDependent);
            }
        }
        Ok(Subspace { field, ambient, basis })
    }

    pub fn zero(field: LocalRing, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new() }
    }

    pub fn whole(field: LocalRing, ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit_vector(ambient, i)).collect();
        Subspace { field, ambient, basis }
    }

    pub fn field(&self) -> LocalRing {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        if v.iter().all(|&x| x % self.field.p() == 0) {
            return true;
        }
        if self.basis.is_empty() {
            return false;
        }
        let m = Matrix::from_columns(self.field, &self.basis).expect("valid basis");
        let v: Vec<u64> = v.iter().map(|x| x % self.field.p()).collect();
        m.solve_field(&v).expect("field").is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Dimension of the sum with another subspace of the same ambient space.
    pub fn sum_dim(&self, other: &Subspace) -> usize {
        let all: Vec<Vec<u64>> = self.basis.iter().chain(&other.basis).cloned().collect();
        if all.is_empty() {
            return 0;
        }
        Matrix::from_columns(self.field, &all).unwrap().rank().unwrap()
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// All vectors of `F_p^d` in counting order, first coordinate least significant.
pub(crate) fn field_vectors(p: u64, d: usize) -> impl Iterator<Item = Vec<u64>> {
    let mut current = Some(vec![0u64; d]);
    std::iter::from_fn(move || {
        let out = current.take()?;
        let mut next = out.clone();
        let mut carry = true;
        for x in next.iter_mut() {
            *x += 1;
            if *x == p {
                *x = 0;
            } else {
                carry = false;
                break;
            }
        }
        if !carry {
            current = Some(next);
        }
        Some(out)
    })
}

fn combine(field: LocalRing, basis: &[Vec<u64>], coords: &[u64]) -> Vec<u64> {
    let n = basis.first().map_or(0, Vec::len);
    let mut out = vec![0; n];
    for (c, v) in coords.iter().zip(basis) {
        if *c == 0 {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o = field.add(*o, field.mul(*c, *x));
        }
    }
    out
}

fn require_field(f: &GramForm) -> Result<()> {
    if f.ring().is_field() {
        Ok(())
    } else {
        Err(Error::NotAField(f.ring().modulus()))
    }
}

pub fn is_nondegenerate(f: &GramForm) -> bool {
    f.gram().det_mod_p() != 0
}

/// `L^⊥ = {v : ω(v, ℓ) = 0 for all ℓ ∈ L}` inside `F_p^n`.
pub fn orthogonal_complement(f: &GramForm, l: &Subspace) -> Result<Subspace> {
    require_field(f)?;
    if !is_nondegenerate(f) {
        return Err(Error::DegenerateForm);
    }
    if l.ambient_dim() != f.dim() {
        return Err(Error::DimensionMismatch("subspace and form dimensions differ".into()));
    }
    let complement = complement_vectors(f.gram(), l.basis())?;
    let perp = Subspace { field: f.ring(), ambient: f.dim(), basis: complement };
    if l.dim() > 0 && f.restrict(l.basis()).det_mod_p() != 0 {
        assert_eq!(perp.dim() + l.dim(), f.dim(), "complement of a nondegenerate subspace");
        assert_eq!(l.sum_dim(&perp), f.dim(), "L and its complement intersect");
    }
    Ok(perp)
}

fn complement_vectors(gram: &Matrix, span: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
    let n = gram.rows();
    if span.is_empty() {
        return Ok((0..n).map(|i| unit_vector(n, i)).collect());
    }
    // (Gℓ)·v = ω(v, ℓ)
    let rows: Vec<Vec<u64>> = span.iter().map(|l| gram.mul_vec(l)).collect();
    let m = Matrix::from_columns(gram.ring(), &rows)?.transpose();
    m.nullspace()
}

/// Two vectors spanning a nondegenerate plane of a nondegenerate form over `F_p`.
pub fn find_nondeg_2dim(f: &GramForm) -> Result<(Vec<u64>, Vec<u64>)> {
    require_field(f)?;
    if !is_nondegenerate(f) {
        return Err(Error::DegenerateForm);
    }
    nondegenerate_plane(f.gram())
}

fn nondegenerate_plane(g: &Matrix) -> Result<(Vec<u64>, Vec<u64>)> {
    let p = g.ring().p();
    let d = g.rows();
    // An isotropic u pairs nontrivially with some v.
    for u in field_vectors(p, d).skip(1) {
        if g.bilinear(&u, &u) != 0 {
            continue;
        }
        if let Some(v) = field_vectors(p, d).find(|v| g.bilinear(&u, v) != 0) {
            return Ok((u, v));
        }
    }
    // No isotropic vector at all: two orthogonal independent vectors span a
    // plane whose Gram matrix is diagonal with nonzero entries.
    for y in field_vectors(p, d).skip(1) {
        for z in field_vectors(p, d).skip(1) {
            if g.bilinear(&y, &z) != 0 || rank_of(g.ring(), &[y.clone(), z.clone()]) < 2 {
                continue;
            }
            let pair = [y.clone(), z];
            if restricted(g, &pair).det_mod_p() != 0 {
                let [y, z] = pair;
                return Ok((y, z));
            }
        }
    }
    Err(Error::DegenerateForm)
}

fn rank_of(field: LocalRing, vectors: &[Vec<u64>]) -> usize {
    Matrix::from_columns(field, vectors).unwrap().rank().unwrap()
}

fn restricted(g: &Matrix, vectors: &[Vec<u64>]) -> Matrix {
    let mut m = Matrix::zeros(g.ring(), vectors.len(), vectors.len());
    for (i, u) in vectors.iter().enumerate() {
        for (j, v) in vectors.iter().enumerate() {
            m.set(i, j, g.bilinear(u, v));
        }
    }
    m
}

/// Symplectic basis of a nondegenerate plane with Gram matrix `g2`, in the
/// plane's own coordinates: `u = e_1`, and `z` is the first vector outside
/// `span{u} ∪ u^⊥`, rescaled so that `ω(u, z) = 1`.
fn plane_basis(g2: &Matrix) -> Result<(Vec<u64>, Vec<u64>)> {
    let f = g2.ring();
    let u = vec![1, 0];
    for z in field_vectors(f.p(), 2) {
        if z[1] == 0 {
            continue;
        }
        let w = g2.bilinear(&u, &z);
        if w == 0 {
            continue;
        }
        let scale = f.inv(w)?;
        let b = z.iter().map(|&x| f.mul(scale, x)).collect();
        return Ok((u, b));
    }
    Err(Error::DegenerateForm)
}

/// Symplectic basis (in ambient coordinates) of the span of `span`, which
/// must be a nondegenerate subspace for the ambient Gram matrix `g`.
fn basis_of_span(g: &Matrix, span: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
    let field = g.ring();
    if span.is_empty() {
        return Ok(Vec::new());
    }
    let local = restricted(g, span);
    if span.len() == 2 {
        let (u, b) = plane_basis(&local)?;
        return Ok(vec![combine(field, span, &u), combine(field, span, &b)]);
    }
    let (u, v) = nondegenerate_plane(&local)?;
    let plane = [u, v];
    let (pu, pb) = plane_basis(&restricted(&local, &plane))?;
    let a1 = combine(field, &plane, &pu);
    let b1 = combine(field, &plane, &pb);
    let rest_local = complement_vectors(&local, &[a1.clone(), b1.clone()])?;
    let rest: Vec<Vec<u64>> = rest_local.iter().map(|y| combine(field, span, y)).collect();
    let mut out = vec![combine(field, span, &a1), combine(field, span, &b1)];
    out.extend(basis_of_span(g, &rest)?);
    Ok(out)
}

/// Symplectic basis of a nondegenerate form over `F_p`, built by splitting off
/// nondegenerate planes and recursing on their orthogonal complements.
pub fn symplectic_basis_field(f: &GramForm) -> Result<SymplecticBasis> {
    require_field(f)?;
    if !is_nondegenerate(f) {
        return Err(Error::DegenerateForm);
    }
    let n = f.dim();
    let whole: Vec<Vec<u64>> = (0..n).map(|i| unit_vector(n, i)).collect();
    let vectors = basis_of_span(f.gram(), &whole)?;
    Ok(SymplecticBasis::new(f.clone(), vectors))
}

/// Completes an isotropic subspace `N` to a symplectic basis whose `b`-vectors
/// span a superspace of `N`. The `b1_index`-th basis vector of `N` becomes
/// `b_1`; the remaining basis vectors of `N` become `b_2, …, b_s` in order.
pub fn complete_isotropic(f: &GramForm, n_sub: &Subspace, b1_index: usize) -> Result<SymplecticBasis> {
    require_field(f)?;
    if !is_nondegenerate(f) {
        return Err(Error::DegenerateForm);
    }
    if n_sub.ambient_dim() != f.dim() || n_sub.field() != f.ring() {
        return Err(Error::DimensionMismatch("subspace and form do not match".into()));
    }
    if n_sub.dim() == 0 {
        return Err(Error::DomainError("isotropic subspace must be nonzero".into()));
    }
    if b1_index >= n_sub.dim() {
        return Err(Error::DomainError(format!(
            "distinguished index {b1_index} out of range for a {}-dimensional subspace",
            n_sub.dim()
        )));
    }
    for (i, u) in n_sub.basis().iter().enumerate() {
        for (j, v) in n_sub.basis().iter().enumerate() {
            if f.pairing(u, v) != 0 {
                return Err(Error::NotIsotropic(format!("ω(n_{i}, n_{j}) = {}", f.pairing(u, v))));
            }
        }
    }
    let field = f.ring();
    let g = f.gram();
    let mut bs = vec![n_sub.basis()[b1_index].clone()];
    bs.extend(n_sub.basis().iter().enumerate().filter(|(i, _)| *i != b1_index).map(|(_, v)| v.clone()));
    let s = bs.len();

    let mut a_vecs: Vec<Vec<u64>> = Vec::with_capacity(s);
    for r in 0..s {
        // ω(a, x) = (G x)·a
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (j, b) in bs.iter().enumerate() {
            rows.push(g.mul_vec(b));
            rhs.push(u64::from(j == r));
        }
        for a in &a_vecs {
            rows.push(g.mul_vec(a));
            rhs.push(0);
        }
        let system = Matrix::from_columns(field, &rows)?.transpose();
        let a = system.solve_field(&rhs)?.ok_or(Error::DegenerateForm)?;
        a_vecs.push(a);
    }

    let mut first: Vec<Vec<u64>> = Vec::with_capacity(2 * s);
    for (a, b) in a_vecs.into_iter().zip(bs) {
        first.push(a);
        first.push(b);
    }
    let rest = complement_vectors(g, &first)?;
    first.extend(basis_of_span(g, &rest)?);
    Ok(SymplecticBasis::new(f.clone(), first))
}

/// Lifts a symplectic basis `d` of the reduction of `f` to a symplectic basis
/// of `f` over `Z/p^k` whose reduction is `d` and whose second vector is `b1`.
pub fn lift_basis(f: &GramForm, b1: &[u64], d: &SymplecticBasis) -> Result<SymplecticBasis> {
    let ring = f.ring();
    let n = f.dim();
    if d.form().ring() != ring.residue_field() || d.form().gram() != &f.gram().reduce_mod_p() {
        return Err(Error::ReductionMismatch("field basis belongs to a different form".into()));
    }
    if d.vectors().len() != n || b1.len() != n {
        return Err(Error::DimensionMismatch("basis or vector length differs from the form".into()));
    }
    if !is_nondegenerate(f) {
        return Err(Error::DegenerateForm);
    }
    let b1: Vec<u64> = b1.iter().map(|&x| x % ring.modulus()).collect();
    let reduced: Vec<u64> = b1.iter().map(|&x| x % ring.p()).collect();
    if reduced != d.b(0) {
        return Err(Error::ReductionMismatch(format!("ρ(B_1) = {reduced:?}, b_1 = {:?}", d.b(0))));
    }

    let mut c: Vec<Vec<u64>> = d.vectors().to_vec();
    c[1] = b1;
    let pair = |u: &[u64], v: &[u64]| f.pairing(u, v);

    for block in 0..n / 2 {
        let (ia, ib) = (2 * block, 2 * block + 1);
        let unit = pair(&c[ia], &c[ib]);
        let unit_inv = ring.inv(unit)?;

        // Clear ω(V, B) for every later V using A.
        for j in ib + 1..n {
            let coeff = ring.mul(pair(&c[j], &c[ib]), unit_inv);
            if coeff != 0 {
                let a = c[ia].clone();
                axpy(ring, &mut c[j], ring.neg(coeff), &a);
            }
        }

        // Clear ω(A, V) for every later V by solving vΛ = (ω(A, V_j))_j.
        let later: Vec<Vec<u64>> = c[ib + 1..].to_vec();
        if !later.is_empty() {
            let lambda = f.restrict(&later);
            let rhs: Vec<u64> = later.iter().map(|v| pair(&c[ia], v)).collect();
            let coeffs = lambda.solve_row(&rhs)?;
            for (coeff, v) in coeffs.iter().zip(&later) {
                if *coeff != 0 {
                    debug_assert_eq!(*coeff % ring.p(), 0, "correction must lie in the maximal ideal");
                    axpy(ring, &mut c[ia], ring.neg(*coeff), v);
                }
            }
        }

        for x in c[ia].iter_mut() {
            *x = ring.mul(*x, unit_inv);
        }
    }
    Ok(SymplecticBasis::new(f.clone(), c))
}

fn axpy(ring: LocalRing, y: &mut [u64], alpha: u64, x: &[u64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi = ring.add(*yi, ring.mul(alpha, *xi));
    }
}

/// Congruence normal form: `Pᵀ G P` is block diagonal with blocks
/// `[[α_i, 1], [-1, β_i]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub transform: Matrix,
    pub blocks: Vec<(u64, u64)>,
}

impl NormalForm {
    pub fn block_matrix(&self) -> Matrix {
        let ring = self.transform.ring();
        let mut m = standard_gram(ring, self.blocks.len());
        for (i, &(alpha, beta)) in self.blocks.iter().enumerate() {
            m.set(2 * i, 2 * i, alpha);
            m.set(2 * i + 1, 2 * i + 1, beta);
        }
        m
    }
}

pub fn skew_normal_form(f: &GramForm) -> Result<NormalForm> {
    if !is_nondegenerate(f) {
        return Err(Error::DegenerateForm);
    }
    let field_basis = symplectic_basis_field(&f.reduce_mod_p())?;
    let b1 = field_basis.b(0).to_vec();
    let lifted = lift_basis(f, &b1, &field_basis)?;
    let blocks = (0..lifted.t())
        .map(|i| (f.pairing(lifted.a(i), lifted.a(i)), f.pairing(lifted.b(i), lifted.b(i))))
        .collect();
    let nf = NormalForm { transform: lifted.to_matrix(), blocks };
    debug_assert_eq!(f.congruent(&nf.transform).map(|g| g.gram().clone()), Ok(nf.block_matrix()));
    Ok(nf)
}

/// True iff every pairing condition of a symplectic basis holds exactly and
/// the vectors form a basis.
pub fn check_symplectic(basis: &SymplecticBasis) -> bool {
    let f = basis.form();
    let n = f.dim();
    let v = basis.vectors();
    if v.len() != n || v.iter().any(|x| x.len() != n) {
        return false;
    }
    let t = n / 2;
    for i in 0..t {
        for j in 0..t {
            let ab = f.pairing(basis.a(i), basis.b(j));
            if ab != u64::from(i == j) {
                return false;
            }
            if i != j && (f.pairing(basis.a(i), basis.a(j)) != 0 || f.pairing(basis.b(i), basis.b(j)) != 0) {
                return false;
            }
        }
    }
    basis.to_matrix().is_invertible()
}

/// Maximum dimension of an isotropic subspace, by enumerating every subspace
/// through its reduced row echelon basis.
pub fn max_isotropic_dim_bruteforce(f: &GramForm) -> Result<usize> {
    require_field(f)?;
    let p = f.ring().p();
    let n = f.dim();
    let size = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > 1 << 20 {
        return Err(Error::TooLarge { needed: size, budget: 1 << 20 });
    }
    let mut visited: u128 = 0;
    for k in (1..=n).rev() {
        if any_isotropic_of_dim(f, k, &mut visited)? {
            return Ok(k);
        }
    }
    Ok(0)
}

fn any_isotropic_of_dim(f: &GramForm, k: usize, visited: &mut u128) -> Result<bool> {
    let n = f.dim();
    let p = f.ring().p();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // Free slots: row i, column j > pivots[i], j not a pivot column.
        let slots: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (pivots[i] + 1..n).filter(|j| !pivots.contains(j)).map(move |j| (i, j)))
            .collect();
        for fill in field_vectors(p, slots.len()) {
            *visited += 1;
            if *visited > SUBSPACE_BUDGET {
                return Err(Error::TooLarge { needed: *visited, budget: SUBSPACE_BUDGET });
            }
            let mut rows = vec![vec![0u64; n]; k];
            for (i, &c) in pivots.iter().enumerate() {
                rows[i][c] = 1;
            }
            for (&(i, j), &x) in slots.iter().zip(&fill) {
                rows[i][j] = x;
            }
            let isotropic =
                (0..k).all(|i| (i..k).all(|j| f.pairing(&rows[i], &rows[j]) == 0 && f.pairing(&rows[j], &rows[i]) == 0));
            if isotropic {
                return Ok(true);
            }
        }
        // next k-combination of 0..n
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(false);
            }
            i -= 1;
            if pivots[i] < n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}
