//! Twisted spinor spaces: `F_j = ker(Id⊗ε) ⊂ ⊙ʲW ⊗ E`, its invariant
//! splitting, the symbol `θ_j` and the induced so(n) action `τ_j`.
//!
//! `⊙ʲW` uses the symmetrized monomial basis `s_m` (average over slot
//! orderings), indexed by non-decreasing index tuples in lexicographic order,
//! so `⊙¹W = W` with the basis `e_1 … e_n`. Ambient vectors are indexed
//! `m·2ⁿ + α`.

use crate::error::{Error, Result};
use crate::linalg::{Check, Defect, Matrix};
use crate::multivector::basis_left_mul;
use crate::represent::{conformal_weight, RepAction, SymbolMap, WeightReport};
use crate::scalar::Scalar;

/// Largest ambient dimension `dim(⊙ʲW⊗E)` accepted in exact arithmetic.
pub const EXACT_AMBIENT_LIMIT: usize = 320;
/// Largest ambient dimension accepted in floating point.
pub const FLOAT_AMBIENT_LIMIT: usize = 2048;

/// Non-decreasing tuples of length `j` over `0..n`, lexicographic.
pub fn monomials(n: usize, j: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, j: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for a in start..n {
            cur.push(a);
            rec(n, j, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, j, 0, &mut Vec::with_capacity(j), &mut out);
    out
}

fn counts(n: usize, m: &[usize]) -> Vec<usize> {
    let mut c = vec![0; n];
    for &a in m {
        c[a] += 1;
    }
    c
}

fn position(monos: &[Vec<usize>], m: &[usize]) -> usize {
    monos.binary_search_by(|x| x.as_slice().cmp(m)).expect("monomial present")
}

/// Replaces one occurrence of `a` in `m` by `b`, keeping the tuple sorted.
fn substitute(m: &[usize], a: usize, b: usize) -> Vec<usize> {
    let mut out = m.to_vec();
    let k = out.iter().position(|&x| x == a).expect("index present");
    out[k] = b;
    out.sort_unstable();
    out
}

/// Derivation action of so(n) on `⊙ʲW` in the monomial basis.
pub fn sym_power_rep<S: Scalar>(n: usize, j: usize) -> RepAction<S> {
    let monos = monomials(n, j);
    let std = RepAction::<S>::std_w(n);
    let generators = std
        .generators()
        .iter()
        .map(|a_mat| {
            let mut g = Matrix::zeros(monos.len(), monos.len());
            for (col, m) in monos.iter().enumerate() {
                let c = counts(n, m);
                for (a, &ca) in c.iter().enumerate() {
                    if ca == 0 {
                        continue;
                    }
                    for b in 0..n {
                        let x = a_mat.get(b, a);
                        if x.is_zero() {
                            continue;
                        }
                        let row = position(&monos, &substitute(m, a, b));
                        g.add_to(row, col, x * S::from_i64(ca as i64));
                    }
                }
            }
            g
        })
        .collect();
    RepAction::from_generators(n, monos.len(), generators).expect("consistent sizes")
}

/// `Id⊗ε: ⊙ʲW⊗E → ⊙^{j−1}W⊗E`, `s_m⊗e ↦ Σ_a (m_a/j) s_{m−a} ⊗ e_a.e`.
pub fn contraction_map<S: Scalar>(n: usize, j: usize) -> Matrix<S> {
    assert!(j >= 1, "contraction needs j >= 1");
    let e = 1usize << n;
    let ls = basis_left_mul::<S>(n);
    let src = monomials(n, j);
    let dst = monomials(n, j - 1);
    let mut k = Matrix::zeros(dst.len() * e, src.len() * e);
    for (col, m) in src.iter().enumerate() {
        let c = counts(n, m);
        for (a, &ca) in c.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            let mut rest = m.clone();
            let p = rest.iter().position(|&x| x == a).expect("present");
            rest.remove(p);
            let row = position(&dst, &rest);
            k.add_block(row * e, col * e, &ls[a], S::ratio(ca as i64, j as i64));
        }
    }
    k
}

/// Gram matrix of the monomial basis of `⊙ʲW`: `⟨s_m, s_m⟩ = Π m_a! / j!`.
fn sym_gram_diag<S: Scalar>(n: usize, j: usize) -> Vec<S> {
    let fact = |k: usize| (1..=k as i64).product::<i64>();
    monomials(n, j)
        .iter()
        .map(|m| {
            let num: i64 = counts(n, m).iter().map(|&c| fact(c)).product();
            S::ratio(num, fact(j))
        })
        .collect()
}

/// `F_j` inside `⊙ʲW⊗E` with its invariant complement and actions.
#[derive(Debug, Clone)]
pub struct TwistedSpace<S: Scalar> {
    pub n: usize,
    pub j: usize,
    pub monomials: Vec<Vec<usize>>,
    /// `Id⊗ε` on the ambient space.
    pub contraction: Matrix<S>,
    /// Kernel basis as columns; coordinates of a kernel vector are its
    /// entries at `free`.
    pub inclusion: Matrix<S>,
    pub free: Vec<usize>,
    /// Idempotent onto `F_j` along the invariant complement.
    pub projection: Matrix<S>,
    pub ambient_rep: RepAction<S>,
    pub tau: RepAction<S>,
}

impl<S: Scalar> TwistedSpace<S> {
    pub fn ambient_dim(&self) -> usize {
        self.inclusion.rows()
    }

    pub fn dim(&self) -> usize {
        self.inclusion.cols()
    }

    pub fn spinor_dim(&self) -> usize {
        1 << self.n
    }

    /// Coordinates of an ambient vector lying in `F_j`.
    pub fn coords(&self, x: &[S]) -> Vec<S> {
        self.free.iter().map(|&i| x[i]).collect()
    }

    /// `Π_j` followed by taking coordinates.
    pub fn projection_coords(&self) -> Matrix<S> {
        self.projection.select_rows(&self.free)
    }

    /// Rows of `matrix` at the `free` indices: coordinates of vectors in `F_j`.
    fn to_coords(&self, matrix: &Matrix<S>) -> Matrix<S> {
        matrix.select_rows(&self.free)
    }

    /// Exactness and splitting invariants.
    pub fn checks(&self) -> Vec<Check> {
        let e = self.spinor_dim();
        let lower = monomials(self.n, self.j - 1).len();
        let dim_pi = self.projection.rank();
        vec![
            Check::defect("ε∘incl = 0", self.contraction.matmul(&self.inclusion).defect()),
            Check::defect(
                "Π∘incl = incl",
                (&self.projection.matmul(&self.inclusion) - &self.inclusion).defect(),
            ),
            Check::defect(
                "Π² = Π",
                (&self.projection.matmul(&self.projection) - &self.projection).defect(),
            ),
            Check::equal("rank ε", self.contraction.rank(), lower * e),
            Check::equal("dim F", self.dim(), (self.monomials.len() - lower) * e),
            Check::equal("rank Π", dim_pi, self.dim()),
        ]
    }
}

fn guard<S: Scalar>(ambient: usize) -> Result<()> {
    let limit = if S::is_exact() { EXACT_AMBIENT_LIMIT } else { FLOAT_AMBIENT_LIMIT };
    if ambient > limit {
        return Err(Error::ResourceLimit { what: "dim(⊙ʲW⊗E)", size: ambient, limit });
    }
    Ok(())
}

pub fn build_fj<S: Scalar>(n: usize, j: usize) -> Result<TwistedSpace<S>> {
    if n < 2 {
        return Err(Error::UnsupportedDimension { n, reason: "twisted spinors need n >= 2" });
    }
    if j == 0 {
        return Err(Error::UnsupportedDimension { n, reason: "symmetric power j must be >= 1" });
    }
    let monos = monomials(n, j);
    let e = 1usize << n;
    guard::<S>(monos.len() * e)?;

    let k = contraction_map::<S>(n, j);
    let ns = k.null_space();

    // Π = I − G⁻¹Kᵀ(K G⁻¹ Kᵀ)⁻¹K with G the invariant Gram matrix.
    let ginv: Vec<S> = sym_gram_diag::<S>(n, j)
        .iter()
        .flat_map(|g| std::iter::repeat_n(g.try_inv().expect("positive"), e))
        .collect();
    let mut ginv_kt = k.transpose();
    for (r, gi) in ginv.iter().enumerate() {
        for c in 0..ginv_kt.cols() {
            let v = ginv_kt.get(r, c);
            if !v.is_zero() {
                ginv_kt.set(r, c, v * *gi);
            }
        }
    }
    let normal = k.matmul(&ginv_kt);
    let normal_inv = normal
        .inverse()
        .ok_or_else(|| Error::Consistency("Id⊗ε is not surjective".into()))?;
    let projection = &Matrix::identity(monos.len() * e) - &ginv_kt.matmul(&normal_inv).matmul(&k);

    let sym = sym_power_rep::<S>(n, j);
    let sigma = RepAction::<S>::spin(n);
    let id_e = Matrix::identity(e);
    let id_s = Matrix::identity(monos.len());
    let ambient_gens: Vec<Matrix<S>> = sym
        .generators()
        .iter()
        .zip(sigma.generators())
        .map(|(a, s)| &a.kron(&id_e) + &id_s.kron(s))
        .collect();
    let ambient_rep = RepAction::from_generators(n, monos.len() * e, ambient_gens)?;

    let mut space = TwistedSpace {
        n,
        j,
        monomials: monos,
        contraction: k,
        inclusion: ns.basis,
        free: ns.free,
        projection,
        ambient_rep,
        tau: RepAction::trivial(n, 0),
    };
    let tau_gens = space
        .ambient_rep
        .generators()
        .iter()
        .map(|g| space.to_coords(&g.matmul(&space.inclusion)))
        .collect();
    space.tau = RepAction::from_generators(n, space.dim(), tau_gens)?;
    Ok(space)
}

/// `F = ker ε ⊂ W⊗E`.
pub fn build_f<S: Scalar>(n: usize) -> Result<TwistedSpace<S>> {
    build_fj(n, 1)
}

/// `T_a ↦ T_a + (1/n) e_a.(Σ_c e_c.T_c)` on W⊗E.
pub fn splitting_pi<S: Scalar>(n: usize) -> Matrix<S> {
    let ls = basis_left_mul::<S>(n);
    let eps = Matrix::hcat(&ls);
    let lcol = Matrix::vcat(&ls);
    &Matrix::identity(n << n) + &lcol.matmul(&eps).scale(S::ratio(1, n as i64))
}

/// `ε̃(w⊗v⊗e) = v⊗w.e` from W⊗W⊗E to W⊗E; source index `(b·n + a)·2ⁿ + β`
/// for `w = e_b`, `v = e_a`.
pub fn eps_tilde<S: Scalar>(n: usize) -> Matrix<S> {
    let e = 1usize << n;
    let ls = basis_left_mul::<S>(n);
    let mut m = Matrix::zeros(n * e, n * n * e);
    for b in 0..n {
        for a in 0..n {
            m.set_block(a * e, (b * n + a) * e, &ls[b]);
        }
    }
    m
}

/// `(Id⊗L_b)` on the ambient space: `s_m⊗e ↦ s_m⊗e_b.e`.
fn clifford_on_ambient<S: Scalar>(space: &TwistedSpace<S>, l: &Matrix<S>) -> Matrix<S> {
    Matrix::identity(space.monomials.len()).kron(l)
}

/// `θ_j = Π_j∘ε̃∘(Id⊗incl)` in F_j coordinates, with `τ_j` on both sides.
pub fn theta_symbol<S: Scalar>(space: &TwistedSpace<S>) -> Result<SymbolMap<S>> {
    let ls = basis_left_mul::<S>(space.n);
    let pc = space.projection_coords();
    let blocks: Vec<Matrix<S>> = ls
        .iter()
        .map(|l| pc.matmul(&clifford_on_ambient(space, l)).matmul(&space.inclusion))
        .collect();
    let name = if space.j == 1 { "rarita".to_string() } else { format!("rarita-j{}", space.j) };
    Ok(SymbolMap::new(&name, Matrix::hcat(&blocks), space.tau.clone(), space.tau.clone())?.with_labels("F", "F"))
}

/// `X⊗w⊗e ↦ Xw⊗e + w⊗σ(X)e` applied to an ambient vector of `F_j`.
pub fn tau_action<S: Scalar>(space: &TwistedSpace<S>, x: &crate::represent::Bivector<S>, f: &[S]) -> Result<Vec<S>> {
    if f.len() != space.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: space.ambient_dim(), found: f.len() });
    }
    let d = Defect::of_slice(&space.contraction.apply(f));
    if !d.is_zero() {
        return Err(Error::NotInSubspace { defect: d.max_abs });
    }
    Ok(space.ambient_rep.act(x).apply(f))
}

/// Weight certificate for the twisted Dirac symbol with its proof steps.
#[derive(Debug, Clone)]
pub struct RaritaReport<S: Scalar> {
    pub n: usize,
    pub j: usize,
    pub dim_f: usize,
    /// Absent when θ vanishes identically, so that every `w` satisfies the
    /// weight identity.
    pub weight: Option<WeightReport<S>>,
    pub checks: Vec<Check>,
}

impl<S: Scalar> RaritaReport<S> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Weight of `θ` on `F = F_1`, with the two-part split of the composite:
/// the part through the action on W lies in `ker Π`, the part through σ is
/// `−(n−1)/2 ε̃` before projection.
pub fn verify_prop4<S: Scalar>(n: usize) -> Result<RaritaReport<S>> {
    let space = build_f::<S>(n)?;
    let e = 1usize << n;
    let ls = basis_left_mul::<S>(n);
    let std = RepAction::<S>::std_w(n);
    let sigma = RepAction::<S>::spin(n);
    let id_e = Matrix::<S>::identity(e);
    let id_w = Matrix::<S>::identity(n);
    let half = S::ratio(n as i64 - 1, 2);
    let theta = theta_symbol(&space)?;
    let pc = space.projection_coords();
    let dim_f = space.dim();

    let mut checks = space.checks();
    checks.push(Check::defect(
        "Π equals I + (1/n) L ε",
        (&space.projection - &splitting_pi::<S>(n)).defect(),
    ));

    let mut part_one = Defect::none(S::tolerance());
    let mut part_two = Defect::none(S::tolerance());
    let mut total = Defect::none(S::tolerance());
    for b in 0..n {
        let lifted_b = id_w.kron(&ls[b]);
        let mut one = Matrix::zeros(n * e, n * e);
        let mut two = Matrix::zeros(n * e, n * e);
        for a in 0..n {
            if a == b {
                continue;
            }
            let (sign, x_std) = std.blade_generator(a, b);
            let (_, x_sig) = sigma.blade_generator(a, b);
            let lifted_a = id_w.kron(&ls[a]);
            let factor = S::from_i64(-(sign as i64));
            one.add_block(0, 0, &lifted_a.matmul(&x_std.kron(&id_e)), factor);
            two.add_block(0, 0, &lifted_a.matmul(&id_w.kron(x_sig)), factor);
        }
        part_one = part_one.merge(space.projection.matmul(&one).matmul(&space.inclusion).defect());
        part_two = part_two.merge((&two + &lifted_b.scale(half)).defect());
        let composite = pc.matmul(&(&one + &two)).matmul(&space.inclusion);
        let theta_b = theta.block(b);
        total = total.merge((&composite + &theta_b.scale(half)).defect());
    }
    checks.push(Check::defect("Π∘(part through W action) = 0", part_one));
    checks.push(Check::defect("part through σ = −(n−1)/2 ε̃", part_two));
    checks.push(Check::defect("Π ε̃ (ι-composite) + (n−1)/2 θ = 0", total));
    checks.push(Check::defect("τ is a representation", space.tau.check_representation()));
    checks.push(Check::defect("θ is τ-equivariant", theta.check_equivariance()));
    let rank = theta.matrix.rank();
    if n == 2 {
        // so(2) weights of F are ±3/2 and those of W⊗F are ±5/2, ±1/2.
        checks.push(Check::equal("rank θ (no invariant map W⊗F → F for n = 2)", rank, 0));
        return Ok(RaritaReport { n, j: 1, dim_f, weight: None, checks });
    }
    checks.push(Check::truth("θ ≠ 0", rank > 0, format!("rank {rank}"), "rank > 0"));
    let weight = conformal_weight(&theta)?;
    let expected = -half;
    checks.push(Check::truth(
        "weight = −(n−1)/2",
        weight.weight.is_some_and(|w| crate::scalar::close(w, expected)),
        weight.weight_string().unwrap_or_else(|| "none".into()),
        &expected.parts().re,
    ));
    Ok(RaritaReport { n, j: 1, dim_f, weight: Some(weight), checks })
}

/// Weight of `θ_j` on `F_j`, as reported by the extractor.
pub fn fj_weight<S: Scalar>(n: usize, j: usize) -> Result<RaritaReport<S>> {
    let space = build_fj::<S>(n, j)?;
    let theta = theta_symbol(&space)?;
    let mut checks = space.checks();
    checks.push(Check::defect("τ_j is a representation", space.tau.check_representation()));
    checks.push(Check::defect("θ_j is τ_j-equivariant", theta.check_equivariance()));
    if theta.matrix.is_zero() {
        checks.push(Check::truth("θ_j ≠ 0", false, "θ_j = 0".into(), "rank > 0"));
        return Ok(RaritaReport { n, j, dim_f: space.dim(), weight: None, checks });
    }
    let weight = conformal_weight(&theta)?;
    checks.push(Check::truth(
        "θ_j has a conformal weight",
        weight.weight.is_some(),
        weight.weight_string().unwrap_or_else(|| "none".into()),
        "some w",
    ));
    Ok(RaritaReport { n, j, dim_f: space.dim(), weight: Some(weight), checks })
}
