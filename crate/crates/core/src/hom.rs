//! Hom spaces, minimal projective presentations, Ext groups, the
//! Auslander-Reiten translate, trace/reject and minimal approximations.
//!
//! Module maps are tuples of per-vertex matrices commuting with the arrow
//! action. Hom(M, N) is computed as the kernel of the stacked commutation
//! system, which makes every basis canonical.

use crate::algebra::Path;
use crate::linalg::{kernel_basis, rank, row_basis, solve, Matrix};
use crate::rep::{
    direct_sum_all, generated_submodule, projective_with_paths, quotient_with_projection,
    structural_module, Representation, StructuralKind, Submodule,
};
use std::sync::Arc;

/// A homomorphism of representations.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: Representation,
    pub target: Representation,
    /// mats\[v\] has shape target.dims\[v\] x source.dims\[v\].
    pub mats: Vec<Matrix>,
}

impl std::fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ModuleMap{:?}->{:?}", self.source.dims, self.target.dims)
    }
}

impl ModuleMap {
    pub fn new(source: Representation, target: Representation, mats: Vec<Matrix>) -> Self {
        assert_eq!(source.algebra, target.algebra, "algebra mismatch");
        assert_eq!(mats.len(), source.dims.len());
        for (v, m) in mats.iter().enumerate() {
            assert_eq!(m.rows(), target.dims[v]);
            assert_eq!(m.cols(), source.dims[v]);
        }
        let map = ModuleMap { source, target, mats };
        debug_assert!(map.is_intertwiner(), "matrices do not commute with arrows");
        map
    }

    pub fn zero(source: Representation, target: Representation) -> Self {
        let mats = (0..source.dims.len())
            .map(|v| Matrix::zero(target.dims[v], source.dims[v], source.modulus()))
            .collect();
        ModuleMap::new(source, target, mats)
    }

    pub fn identity(m: &Representation) -> Self {
        let mats = m
            .dims
            .iter()
            .map(|&d| Matrix::identity(d, m.modulus()))
            .collect();
        ModuleMap::new(m.clone(), m.clone(), mats)
    }

    pub fn is_intertwiner(&self) -> bool {
        for (ai, arrow) in self.source.algebra.quiver.arrows.iter().enumerate() {
            let lhs = self.target.arrow_maps[ai].mul(&self.mats[arrow.source]);
            let rhs = self.mats[arrow.target].mul(&self.source.arrow_maps[ai]);
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    /// self . other (other applied first).
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(other.target.dims, self.source.dims, "composition mismatch");
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.mul(b))
            .collect();
        ModuleMap::new(other.source.clone(), self.target.clone(), mats)
    }

    pub fn is_epi(&self) -> bool {
        self.mats
            .iter()
            .enumerate()
            .all(|(v, m)| rank(m) == self.target.dims[v])
    }

    pub fn is_mono(&self) -> bool {
        self.mats
            .iter()
            .enumerate()
            .all(|(v, m)| rank(m) == self.source.dims[v])
    }

    pub fn is_iso(&self) -> bool {
        self.source.dims == self.target.dims && self.is_epi()
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(|m| m.is_zero())
    }

    /// The image as an arrow-stable subspace family of the target.
    pub fn image(&self) -> Submodule {
        let bases = self.mats.iter().map(|m| row_basis(&m.transpose())).collect();
        let s = Submodule { bases };
        debug_assert!(s.is_stable(&self.target));
        s
    }

    /// Kernel with its inclusion into the source.
    pub fn kernel(&self) -> (Representation, ModuleMap) {
        let bases: Vec<Matrix> = self.mats.iter().map(kernel_basis).collect();
        sub_representation(&self.source, &Submodule { bases })
    }

    /// Cokernel with the projection from the target.
    pub fn cokernel(&self) -> (Representation, ModuleMap) {
        let (q, proj) = quotient_with_projection(&self.target, &self.image());
        let map = ModuleMap::new(self.target.clone(), q.clone(), proj);
        (q, map)
    }

    pub fn direct_sum(&self, other: &ModuleMap) -> ModuleMap {
        let source = crate::rep::direct_sum(&self.source, &other.source);
        let target = crate::rep::direct_sum(&self.target, &other.target);
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        ModuleMap::new(source, target, mats)
    }
}

/// Realize an arrow-stable subspace family as a representation together
/// with its inclusion map.
pub fn sub_representation(parent: &Representation, s: &Submodule) -> (Representation, ModuleMap) {
    assert!(s.is_stable(parent), "subspaces are not arrow-stable");
    let dims = s.dims();
    let mut maps = Vec::new();
    for (ai, arrow) in parent.algebra.quiver.arrows.iter().enumerate() {
        let (src, tgt) = (arrow.source, arrow.target);
        let p = parent.modulus();
        let mut m = Matrix::zero(dims[tgt], dims[src], p);
        let tgt_basis_t = s.bases[tgt].transpose();
        for c in 0..dims[src] {
            let img = parent.arrow_maps[ai].apply(s.bases[src].row(c));
            let coords = solve(&tgt_basis_t, &img).expect("stable image must lie in the subspace");
            for (r, &x) in coords.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        maps.push(m);
    }
    let rep = Representation::new(parent.algebra.clone(), dims, maps);
    let incl_mats = s.bases.iter().map(|b| b.transpose()).collect();
    let incl = ModuleMap::new(rep.clone(), parent.clone(), incl_mats);
    (rep, incl)
}

/// A basis of Hom(M, N): each element is one matrix per vertex.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub source: Representation,
    pub target: Representation,
    pub basis: Vec<Vec<Matrix>>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn element(&self, coeffs: &[u64]) -> ModuleMap {
        assert_eq!(coeffs.len(), self.basis.len());
        let p = self.source.modulus();
        let mats = (0..self.source.dims.len())
            .map(|v| {
                let mut m = Matrix::zero(self.target.dims[v], self.source.dims[v], p);
                for (k, &c) in coeffs.iter().enumerate() {
                    if c % p != 0 {
                        m = m.add(&self.basis[k][v].scale(c));
                    }
                }
                m
            })
            .collect();
        ModuleMap::new(self.source.clone(), self.target.clone(), mats)
    }

    pub fn basis_map(&self, k: usize) -> ModuleMap {
        ModuleMap::new(
            self.source.clone(),
            self.target.clone(),
            self.basis[k].clone(),
        )
    }
}

/// Canonical basis of the intertwiner space Hom(M, N).
pub fn hom_basis(m: &Representation, n: &Representation) -> HomSpace {
    assert_eq!(m.algebra, n.algebra, "algebra mismatch");
    let p = m.modulus();
    let nv = m.dims.len();
    let var_offsets: Vec<usize> = {
        let mut off = vec![0; nv + 1];
        for v in 0..nv {
            off[v + 1] = off[v] + n.dims[v] * m.dims[v];
        }
        off
    };
    let total_vars = var_offsets[nv];
    let total_rows: usize = m
        .algebra
        .quiver
        .arrows
        .iter()
        .map(|a| n.dims[a.target] * m.dims[a.source])
        .sum();
    let mut sys = Matrix::zero(total_rows, total_vars, p);
    let mut row0 = 0;
    for (ai, arrow) in m.algebra.quiver.arrows.iter().enumerate() {
        let (i, j) = (arrow.source, arrow.target);
        let na = &n.arrow_maps[ai];
        let ma = &m.arrow_maps[ai];
        // equation: N_a phi_i - phi_j M_a = 0, one row per (r, c)
        for r in 0..n.dims[j] {
            for c in 0..m.dims[i] {
                let row = row0 + r * m.dims[i] + c;
                for k in 0..n.dims[i] {
                    let coeff = na.get(r, k);
                    if coeff != 0 {
                        let var = var_offsets[i] + k * m.dims[i] + c;
                        sys.set(row, var, (sys.get(row, var) + coeff) % p);
                    }
                }
                for l in 0..m.dims[j] {
                    let coeff = ma.get(l, c);
                    if coeff != 0 {
                        let var = var_offsets[j] + r * m.dims[j] + l;
                        sys.set(row, var, (sys.get(row, var) + p - coeff) % p);
                    }
                }
            }
        }
        row0 += n.dims[j] * m.dims[i];
    }
    let kernel = kernel_basis(&sys);
    let mut basis = Vec::with_capacity(kernel.rows());
    for b in 0..kernel.rows() {
        let flat = kernel.row(b);
        let mut mats = Vec::with_capacity(nv);
        for v in 0..nv {
            let mut mat = Matrix::zero(n.dims[v], m.dims[v], p);
            for r in 0..n.dims[v] {
                for c in 0..m.dims[v] {
                    mat.set(r, c, flat[var_offsets[v] + r * m.dims[v] + c]);
                }
            }
            mats.push(mat);
        }
        basis.push(mats);
    }
    HomSpace {
        source: m.clone(),
        target: n.clone(),
        basis,
    }
}

pub fn dim_hom(m: &Representation, n: &Representation) -> usize {
    hom_basis(m, n).dim()
}

/// The radical submodule: the sum of the images of all arrow maps.
pub fn radical(m: &Representation) -> Submodule {
    let p = m.modulus();
    let mut seeds: Vec<Matrix> = m.dims.iter().map(|&d| Matrix::zero(0, d, p)).collect();
    for (ai, arrow) in m.algebra.quiver.arrows.iter().enumerate() {
        let img_rows = m.arrow_maps[ai].transpose();
        seeds[arrow.target] = seeds[arrow.target].vstack(&img_rows);
    }
    generated_submodule(m, &seeds)
}

/// A projective cover P -> M: the summand vertices (with multiplicity, in
/// ascending vertex order), the cover representation and the covering map.
#[derive(Debug, Clone)]
pub struct ProjCover {
    pub summands: Vec<usize>,
    pub rep: Representation,
    pub map: ModuleMap,
}

pub fn projective_cover(m: &Representation) -> ProjCover {
    let alg = &m.algebra;
    let p = m.modulus();
    let rad = radical(m);
    let (_, proj) = quotient_with_projection(m, &rad);
    // canonical lifts: greedily pick standard basis vectors of M_v whose
    // top-projections are independent
    let mut summands: Vec<usize> = Vec::new();
    let mut lifts: Vec<(usize, usize)> = Vec::new(); // (vertex, coordinate)
    for v in 0..m.dims.len() {
        let t = proj[v].rows();
        if t == 0 {
            continue;
        }
        let mut chosen: Vec<usize> = Vec::new();
        for c in 0..m.dims[v] {
            if chosen.len() == t {
                break;
            }
            let mut trial = Matrix::zero(chosen.len() + 1, t, p);
            for (r, &cc) in chosen.iter().enumerate() {
                for i in 0..t {
                    trial.set(r, i, proj[v].get(i, cc));
                }
            }
            for i in 0..t {
                trial.set(chosen.len(), i, proj[v].get(i, c));
            }
            if rank(&trial) == chosen.len() + 1 {
                chosen.push(c);
            }
        }
        assert_eq!(chosen.len(), t, "projection must hit a coordinate basis");
        for &c in &chosen {
            summands.push(v);
            lifts.push((v, c));
        }
    }
    // assemble P0 and the covering map
    let parts: Vec<(Representation, Vec<Vec<Path>>)> = summands
        .iter()
        .map(|&v| projective_with_paths(alg, v))
        .collect();
    let rep = direct_sum_all(alg, &parts.iter().map(|x| x.0.clone()).collect::<Vec<_>>());
    let mut mats: Vec<Matrix> = m
        .dims
        .iter()
        .enumerate()
        .map(|(w, &d)| Matrix::zero(d, rep.dims[w], p))
        .collect();
    let mut col_offset = vec![0usize; m.dims.len()];
    for (si, (_, paths)) in parts.iter().enumerate() {
        let (v, c) = lifts[si];
        let mut x = vec![0u64; m.dims[v]];
        x[c] = 1;
        for (w, ps) in paths.iter().enumerate() {
            for (k, q) in ps.iter().enumerate() {
                let img = m.path_matrix(q).apply(&x);
                let col = col_offset[w] + k;
                for (r, &val) in img.iter().enumerate() {
                    mats[w].set(r, col, val);
                }
            }
        }
        for (w, ps) in paths.iter().enumerate() {
            col_offset[w] += ps.len();
        }
    }
    let map = ModuleMap::new(rep.clone(), m.clone(), mats);
    debug_assert!(map.is_epi(), "projective cover must be surjective");
    ProjCover { summands, rep, map }
}

/// Minimal projective presentation P1 -> P0 -> M -> 0.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub p0: ProjCover,
    /// Syzygy of M (the kernel of the cover) with its inclusion into P0.
    pub syzygy: Representation,
    pub syzygy_incl: ModuleMap,
    pub p1: ProjCover,
    /// d: P1 -> P0, the composite of the syzygy cover and its inclusion.
    pub d: ModuleMap,
}

pub fn min_proj_presentation(m: &Representation) -> Presentation {
    let p0 = projective_cover(m);
    let (syzygy, syzygy_incl) = p0.map.kernel();
    let p1 = projective_cover(&syzygy);
    let d = syzygy_incl.compose(&p1.map);
    Presentation { p0, syzygy, syzygy_incl, p1, d }
}

/// The syzygy of M w.r.t. the minimal projective cover.
pub fn syzygy(m: &Representation) -> Representation {
    projective_cover(m).map.kernel().0
}

/// dim Ext^j(M, N) for j >= 1 via syzygy shifting:
/// Ext^j(M, N) = Ext^1(Omega^{j-1} M, N), and Ext^1 is the cokernel of the
/// restriction Hom(P0, N) -> Hom(Omega M, N).
pub fn ext_dim(m: &Representation, n: &Representation, j: usize) -> usize {
    assert!(j >= 1, "use hom_basis for degree zero");
    let mut s = m.clone();
    for _ in 1..j {
        s = syzygy(&s);
        if s.is_zero() {
            return 0;
        }
    }
    if s.is_zero() || n.is_zero() {
        return 0;
    }
    let cover = projective_cover(&s);
    let (omega, incl) = cover.map.kernel();
    if omega.is_zero() {
        return 0;
    }
    let hom_omega_n = hom_basis(&omega, n);
    let hom_p_n = hom_basis(&cover.rep, n);
    if hom_omega_n.dim() == 0 {
        return 0;
    }
    // rank of the restriction map inside the flattened hom coordinates
    let p = m.modulus();
    let flat_len: usize = omega
        .dims
        .iter()
        .zip(&n.dims)
        .map(|(&a, &b)| a * b)
        .sum();
    let mut restr = Matrix::zero(hom_p_n.dim(), flat_len, p);
    for (k, mats) in hom_p_n.basis.iter().enumerate() {
        let mut off = 0;
        for v in 0..omega.dims.len() {
            let restricted = mats[v].mul(&incl.mats[v]);
            for r in 0..restricted.rows() {
                for c in 0..restricted.cols() {
                    restr.set(k, off + r * restricted.cols() + c, restricted.get(r, c));
                }
            }
            off += n.dims[v] * omega.dims[v];
        }
    }
    hom_omega_n.dim() - rank(&restr)
}

/// Vector-space dual: a representation of the opposite algebra becomes a
/// representation of `alg` with transposed arrow matrices.
pub fn dual_representation(
    rep_over_opposite: &Representation,
    alg: &Arc<crate::algebra::BoundQuiverAlgebra>,
) -> Representation {
    let maps = rep_over_opposite
        .arrow_maps
        .iter()
        .map(|m| m.transpose())
        .collect();
    Representation::new(alg.clone(), rep_over_opposite.dims.clone(), maps)
}

/// The Auslander-Reiten translate D Tr M, computed from the minimal
/// projective presentation: apply Hom(-, Lambda) to d: P1 -> P0, take the
/// cokernel over the opposite algebra and dualize back.
pub fn tau(m: &Representation) -> Representation {
    let alg = &m.algebra;
    if m.is_zero() {
        return Representation::zero(alg.clone());
    }
    let pres = min_proj_presentation(m);
    let aop = Arc::new(alg.opposite());
    if pres.p1.summands.is_empty() {
        // projective module: Tr = 0
        return Representation::zero(alg.clone());
    }
    // source of d*: one opposite projective per P0 summand
    let p0_parts: Vec<(Representation, Vec<Vec<Path>>)> = pres
        .p0
        .summands
        .iter()
        .map(|&v| projective_with_paths(&aop, v))
        .collect();
    let p1_parts: Vec<(Representation, Vec<Vec<Path>>)> = pres
        .p1
        .summands
        .iter()
        .map(|&v| projective_with_paths(&aop, v))
        .collect();
    let source = direct_sum_all(&aop, &p0_parts.iter().map(|x| x.0.clone()).collect::<Vec<_>>());
    let target = direct_sum_all(&aop, &p1_parts.iter().map(|x| x.0.clone()).collect::<Vec<_>>());
    let p = alg.modulus;

    // locate, per vertex, the coordinate blocks of P0 and P1 in the
    // original algebra to read off the path coefficients of d
    let p0_paths_orig: Vec<Vec<Vec<Path>>> = pres
        .p0
        .summands
        .iter()
        .map(|&v| crate::rep::projective_paths(alg, v))
        .collect();
    let p1_paths_orig: Vec<Vec<Vec<Path>>> = pres
        .p1
        .summands
        .iter()
        .map(|&v| crate::rep::projective_paths(alg, v))
        .collect();

    // lambda[l][k] = list of (coefficient, path v_l -> u_k)
    let mut lambda: Vec<Vec<Vec<(u64, Path)>>> =
        vec![vec![Vec::new(); pres.p1.summands.len()]; pres.p0.summands.len()];
    for (k, &u) in pres.p1.summands.iter().enumerate() {
        // generator coordinate of summand k at vertex u: the trivial path
        let mut col = 0;
        for (kk, paths) in p1_paths_orig.iter().enumerate() {
            if kk == k {
                let pos = paths[u]
                    .iter()
                    .position(|q| q.is_empty())
                    .expect("trivial path generates the projective");
                col += pos;
                break;
            }
            col += paths[u].len();
        }
        // rows of d at vertex u are indexed by (summand l, path q: v_l -> u)
        let mut row = 0;
        for (l, paths) in p0_paths_orig.iter().enumerate() {
            for q in &paths[u] {
                let c = pres.d.mats[u].get(row, col);
                if c != 0 {
                    lambda[l][k].push((c, q.clone()));
                }
                row += 1;
            }
        }
    }

    // build d*: opposite-projective block map, block (k, l) acts by
    // prepending the reversed path of every lambda entry
    let mut mats: Vec<Matrix> = (0..alg.vertex_count())
        .map(|w| Matrix::zero(target.dims[w], source.dims[w], p))
        .collect();
    let mut src_off = vec![0usize; alg.vertex_count()];
    for (l, (_, src_paths)) in p0_parts.iter().enumerate() {
        for (k, (_, _tgt_paths)) in p1_parts.iter().enumerate() {
            for (coeff, q) in &lambda[l][k] {
                let q_op = Path {
                    start: pres.p1.summands[k],
                    arrows: q.arrows.iter().rev().copied().collect(),
                };
                // column: basis path r of the opposite projective at v_l
                for (w, rs) in src_paths.iter().enumerate() {
                    for (ci, r) in rs.iter().enumerate() {
                        if let Some(qr) = aop.compose(&q_op, r) {
                            let mut tgt_row = 0;
                            for (kk, tp) in p1_parts.iter().enumerate() {
                                if kk == k {
                                    let pos = tp.1[w]
                                        .iter()
                                        .position(|x| *x == qr)
                                        .expect("composed path must be in the opposite basis");
                                    tgt_row += pos;
                                    break;
                                }
                                tgt_row += tp.1[w].len();
                            }
                            let col = src_off[w] + ci;
                            let old = mats[w].get(tgt_row, col);
                            mats[w].set(tgt_row, col, (old + coeff) % p);
                        }
                    }
                }
            }
        }
        for (w, rs) in src_paths.iter().enumerate() {
            src_off[w] += rs.len();
        }
    }
    let d_star = ModuleMap::new(source, target, mats);
    let (transpose_of_m, _) = d_star.cokernel();
    dual_representation(&transpose_of_m, alg)
}

/// Trace of a family in M: the sum of the images of all homomorphisms
/// from the family members. M lies in Fac of the family iff the trace is
/// all of M.
pub fn trace(family: &[Representation], m: &Representation) -> Submodule {
    let p = m.modulus();
    let mut seeds: Vec<Matrix> = m.dims.iter().map(|&d| Matrix::zero(0, d, p)).collect();
    for u in family {
        let hom = hom_basis(u, m);
        for mats in &hom.basis {
            for v in 0..m.dims.len() {
                seeds[v] = seeds[v].vstack(&mats[v].transpose());
            }
        }
    }
    generated_submodule(m, &seeds)
}

/// Reject of a family in M: the intersection of the kernels of all maps
/// into the family. M lies in Sub of the family iff the reject is zero.
pub fn reject(family: &[Representation], m: &Representation) -> Submodule {
    let p = m.modulus();
    let mut stacked: Vec<Matrix> = m.dims.iter().map(|&d| Matrix::zero(0, d, p)).collect();
    for u in family {
        let hom = hom_basis(m, u);
        for mats in &hom.basis {
            for v in 0..m.dims.len() {
                stacked[v] = stacked[v].vstack(&mats[v]);
            }
        }
    }
    let bases = stacked.iter().map(kernel_basis).collect();
    let s = Submodule { bases };
    debug_assert!(s.is_stable(m));
    s
}

pub fn in_fac(family: &[Representation], m: &Representation) -> bool {
    trace(family, m).is_full(m)
}

pub fn in_sub(family: &[Representation], m: &Representation) -> bool {
    reject(family, m).is_zero()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApproxSide {
    Left,
    Right,
}

/// A minimal approximation together with the surviving copies, as
/// (addset index, hom-basis index) pairs in canonical order.
#[derive(Debug, Clone)]
pub struct Approximation {
    pub side: ApproxSide,
    pub map: ModuleMap,
    pub copies: Vec<(usize, usize)>,
}

/// Minimal left/right approximation of M by the additive closure of the
/// given modules (which should be indecomposable for the stripping to
/// reach the true minimal approximation).
///
/// Right side: start from the universal map (one source copy of U_i per
/// basis element of Hom(U_i, M)) and strip copies one at a time while
/// every hom from the addset still factors; the dual on the left.
pub fn minimal_approximation(
    side: ApproxSide,
    m: &Representation,
    addset: &[Representation],
) -> Approximation {
    let alg = &m.algebra;
    let p = m.modulus();
    let flat_len = |a: &Representation, b: &Representation| -> usize {
        a.dims.iter().zip(&b.dims).map(|(&x, &y)| x * y).sum()
    };
    let flatten = |mats: &[Matrix]| -> Vec<u64> {
        let mut out = Vec::new();
        for mat in mats {
            for r in 0..mat.rows() {
                out.extend_from_slice(mat.row(r));
            }
        }
        out
    };
    // copy c carries phi_c: U_{i(c)} -> M (right) or M -> U_{i(c)} (left)
    let homs: Vec<HomSpace> = addset
        .iter()
        .map(|u| match side {
            ApproxSide::Right => hom_basis(u, m),
            ApproxSide::Left => hom_basis(m, u),
        })
        .collect();
    let mut copies: Vec<(usize, usize)> = Vec::new();
    for (i, h) in homs.iter().enumerate() {
        for k in 0..h.dim() {
            copies.push((i, k));
        }
    }
    // cross[i][c] = flattened compositions with every basis map of
    // Hom(U_i, U_{j(c)}) (right) resp. Hom(U_{j(c)}, U_i) (left)
    let pair_homs: Vec<Vec<HomSpace>> = addset
        .iter()
        .map(|a| {
            addset
                .iter()
                .map(|b| hom_basis(a, b))
                .collect::<Vec<_>>()
        })
        .collect();
    let target_dim: Vec<usize> = homs.iter().map(|h| h.dim()).collect();
    let mut cross: Vec<Vec<Vec<Vec<u64>>>> = Vec::new();
    for i in 0..addset.len() {
        let mut per_copy = Vec::new();
        for &(j, k) in &copies {
            let phi = homs[j].basis_map(k);
            let mut rows = Vec::new();
            match side {
                ApproxSide::Right => {
                    for psi_idx in 0..pair_homs[i][j].dim() {
                        let psi = pair_homs[i][j].basis_map(psi_idx);
                        rows.push(flatten(&phi.compose(&psi).mats));
                    }
                }
                ApproxSide::Left => {
                    for psi_idx in 0..pair_homs[j][i].dim() {
                        let psi = pair_homs[j][i].basis_map(psi_idx);
                        rows.push(flatten(&psi.compose(&phi).mats));
                    }
                }
            }
            per_copy.push(rows);
        }
        cross.push(per_copy);
    }
    let covers = |active: &[bool]| -> bool {
        for i in 0..addset.len() {
            if target_dim[i] == 0 {
                continue;
            }
            let flat = match side {
                ApproxSide::Right => flat_len(&addset[i], m),
                ApproxSide::Left => flat_len(m, &addset[i]),
            };
            let mut rows: Vec<Vec<u64>> = Vec::new();
            for (c, act) in active.iter().enumerate() {
                if *act {
                    rows.extend(cross[i][c].iter().cloned());
                }
            }
            let mut mat = Matrix::zero(rows.len(), flat, p);
            for (r, row) in rows.iter().enumerate() {
                for (cc, &x) in row.iter().enumerate() {
                    mat.set(r, cc, x);
                }
            }
            if rank(&mat) != target_dim[i] {
                return false;
            }
        }
        true
    };
    let mut active = vec![true; copies.len()];
    debug_assert!(covers(&active), "universal map must be an approximation");
    loop {
        let mut changed = false;
        for c in 0..copies.len() {
            if !active[c] {
                continue;
            }
            active[c] = false;
            if covers(&active) {
                changed = true;
            } else {
                active[c] = true;
            }
        }
        if !changed {
            break;
        }
    }
    let survivors: Vec<(usize, usize)> = copies
        .iter()
        .zip(&active)
        .filter(|(_, a)| **a)
        .map(|(c, _)| *c)
        .collect();
    let parts: Vec<Representation> = survivors.iter().map(|&(i, _)| addset[i].clone()).collect();
    let side_rep = direct_sum_all(alg, &parts);
    let mut mats: Vec<Matrix> = match side {
        ApproxSide::Right => m
            .dims
            .iter()
            .enumerate()
            .map(|(v, &d)| Matrix::zero(d, side_rep.dims[v], p))
            .collect(),
        ApproxSide::Left => side_rep
            .dims
            .iter()
            .enumerate()
            .map(|(v, &d)| Matrix::zero(d, m.dims[v], p))
            .collect(),
    };
    let mut offsets = vec![0usize; alg.vertex_count()];
    for &(i, k) in &survivors {
        let phi = &homs[i].basis[k];
        for v in 0..alg.vertex_count() {
            match side {
                ApproxSide::Right => {
                    for r in 0..m.dims[v] {
                        for c in 0..addset[i].dims[v] {
                            mats[v].set(r, offsets[v] + c, phi[v].get(r, c));
                        }
                    }
                }
                ApproxSide::Left => {
                    for r in 0..addset[i].dims[v] {
                        for c in 0..m.dims[v] {
                            mats[v].set(offsets[v] + r, c, phi[v].get(r, c));
                        }
                    }
                }
            }
        }
        for v in 0..alg.vertex_count() {
            offsets[v] += addset[i].dims[v];
        }
    }
    let map = match side {
        ApproxSide::Right => ModuleMap::new(side_rep, m.clone(), mats),
        ApproxSide::Left => ModuleMap::new(m.clone(), side_rep, mats),
    };
    Approximation { side, map, copies: survivors }
}

/// Is M in the additive closure of the given modules? Decided by checking
/// that the minimal right approximation is an isomorphism.
pub fn in_add(m: &Representation, addset: &[Representation]) -> bool {
    if m.is_zero() {
        return true;
    }
    minimal_approximation(ApproxSide::Right, m, addset).map.is_iso()
}

/// Resolution dimension of M with respect to a resolving family that
/// contains every indecomposable projective: the number of kernels of
/// right minimal approximations taken before landing in the additive
/// closure. None means the iteration exceeded the divergence guard.
pub fn resolution_dimension(m: &Representation, resolving: &[Representation]) -> Option<usize> {
    let guard = m.algebra.dim() * m.total_dim().max(1) + 1;
    let mut cur = m.clone();
    for d in 0..=guard {
        if in_add(&cur, resolving) {
            return Some(d);
        }
        let approx = minimal_approximation(ApproxSide::Right, &cur, resolving);
        assert!(
            approx.map.is_epi(),
            "right approximation by a family containing the projectives must be epi"
        );
        cur = approx.map.kernel().0;
    }
    None
}

/// Global dimension: the maximum projective resolution length over the
/// simple modules. None when not finite within the guard.
pub fn global_dimension(alg: &Arc<crate::algebra::BoundQuiverAlgebra>) -> Option<usize> {
    let projectives: Vec<Representation> = (0..alg.vertex_count())
        .map(|v| structural_module(alg, StructuralKind::Projective, v))
        .collect();
    let mut best = 0;
    for v in 0..alg.vertex_count() {
        let s = structural_module(alg, StructuralKind::Simple, v);
        best = best.max(resolution_dimension(&s, &projectives)?);
    }
    Some(best)
}
