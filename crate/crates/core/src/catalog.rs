//! The immutable catalog of indecomposable modules with precomputed
//! Hom/Ext/tau tables, canonical ordering and human labels.

use crate::algebra::{validate_string_algebra, BoundQuiverAlgebra};
use crate::hom::{dim_hom, ext_dim, min_proj_presentation, tau, Presentation};
use crate::rep::{
    direct_sum_all, is_isomorphic, structural_module, Representation, StructuralKind,
};
use crate::strings::{describe, enumerate_strings, string_module};
use crate::{Error, Result};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct IndecCatalog {
    pub algebra: Arc<BoundQuiverAlgebra>,
    /// Canonically ordered: (total dim, dim vector lex, string word lex).
    pub indecs: Vec<Representation>,
    pub labels: Vec<String>,
    /// The underlying string of each indecomposable, human readable.
    pub strings: Vec<String>,
    /// hom\[i\]\[j\] = dim Hom(X_i, X_j).
    pub hom: Vec<Vec<usize>>,
    /// ext1\[i\]\[j\] = dim Ext^1(X_i, X_j).
    pub ext1: Vec<Vec<usize>>,
    /// tau_of\[i\] = catalog index of tau(X_i); None for projectives.
    pub tau_of: Vec<Option<usize>>,
    /// Minimal projective presentation of each indecomposable.
    pub presentations: Vec<Presentation>,
    /// Catalog index of P_v / I_v / S_v per vertex.
    pub projective_at: Vec<usize>,
    pub injective_at: Vec<usize>,
    pub simple_at: Vec<usize>,
}

/// Build the complete catalog of a representation-finite string algebra.
pub fn build_catalog(alg: &Arc<BoundQuiverAlgebra>) -> Result<IndecCatalog> {
    build_catalog_seeded(alg, 0)
}

/// As `build_catalog`, seeding the randomized isomorphism fallback.
pub fn build_catalog_seeded(alg: &Arc<BoundQuiverAlgebra>, seed: u64) -> Result<IndecCatalog> {
    validate_string_algebra(alg)?;
    let words = enumerate_strings(alg)?;
    let mut entries: Vec<(Representation, String)> = words
        .iter()
        .map(|w| (string_module(alg, w), describe(alg, w)))
        .collect();
    entries.sort_by(|(a, sa), (b, sb)| {
        a.total_dim()
            .cmp(&b.total_dim())
            .then_with(|| a.dims.cmp(&b.dims))
            .then_with(|| sa.cmp(sb))
    });
    let indecs: Vec<Representation> = entries.iter().map(|(r, _)| r.clone()).collect();
    let strings: Vec<String> = entries.iter().map(|(_, s)| s.clone()).collect();
    let n = indecs.len();

    let find = |m: &Representation| -> Result<usize> {
        for (i, x) in indecs.iter().enumerate() {
            if crate::rep::is_isomorphic_seeded(m, x, seed)? {
                return Ok(i);
            }
        }
        Err(Error::DecompositionFailed(format!(
            "module with dims {:?} is not in the catalog",
            m.dims
        )))
    };

    let nv = alg.vertex_count();
    let mut projective_at = Vec::with_capacity(nv);
    let mut injective_at = Vec::with_capacity(nv);
    let mut simple_at = Vec::with_capacity(nv);
    for v in 0..nv {
        projective_at.push(find(&structural_module(alg, StructuralKind::Projective, v))?);
        injective_at.push(find(&structural_module(alg, StructuralKind::Injective, v))?);
        simple_at.push(find(&structural_module(alg, StructuralKind::Simple, v))?);
    }

    // labels: P > S > I preference, fall back to the dim vector
    let mut labels = vec![String::new(); n];
    for v in (0..nv).rev() {
        labels[injective_at[v]] = format!("I{}", alg.quiver.vertices[v]);
    }
    for v in (0..nv).rev() {
        labels[simple_at[v]] = format!("S{}", alg.quiver.vertices[v]);
    }
    for v in (0..nv).rev() {
        labels[projective_at[v]] = format!("P{}", alg.quiver.vertices[v]);
    }
    for i in 0..n {
        if labels[i].is_empty() {
            let digits: String = indecs[i].dims.iter().map(|d| d.to_string()).collect();
            labels[i] = format!("M{digits}");
        }
    }
    // disambiguate any repeated fallback labels in canonical order
    for i in 0..n {
        let dups: Vec<usize> = (0..n).filter(|&j| labels[j] == labels[i]).collect();
        if dups.len() > 1 {
            for (k, &j) in dups.iter().enumerate() {
                labels[j] = format!("{}{}", labels[j], (b'a' + k as u8) as char);
            }
        }
    }

    let hom: Vec<Vec<usize>> = indecs
        .iter()
        .map(|a| indecs.iter().map(|b| dim_hom(a, b)).collect())
        .collect();
    let ext1: Vec<Vec<usize>> = indecs
        .iter()
        .map(|a| indecs.iter().map(|b| ext_dim(a, b, 1)).collect())
        .collect();
    let mut tau_of = Vec::with_capacity(n);
    for x in &indecs {
        let t = tau(x);
        if t.is_zero() {
            tau_of.push(None);
        } else {
            tau_of.push(Some(find(&t)?));
        }
    }
    let presentations = indecs.iter().map(min_proj_presentation).collect();

    Ok(IndecCatalog {
        algebra: alg.clone(),
        indecs,
        labels,
        strings,
        hom,
        ext1,
        tau_of,
        presentations,
        projective_at,
        injective_at,
        simple_at,
    })
}

impl IndecCatalog {
    pub fn len(&self) -> usize {
        self.indecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indecs.is_empty()
    }

    pub fn modulus(&self) -> u64 {
        self.algebra.modulus
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Direct sum of catalog members with the given multiplicities.
    pub fn assemble(&self, mults: &[usize]) -> Representation {
        assert_eq!(mults.len(), self.len());
        let mut parts = Vec::new();
        for (i, &m) in mults.iter().enumerate() {
            for _ in 0..m {
                parts.push(self.indecs[i].clone());
            }
        }
        direct_sum_all(&self.algebra, &parts)
    }

    /// Additive Hom dimension of an assembly against a single member.
    pub fn hom_from_assembly(&self, mults: &[usize], j: usize) -> usize {
        mults.iter().enumerate().map(|(i, &m)| m * self.hom[i][j]).sum()
    }

    pub fn hom_to_assembly(&self, i: usize, mults: &[usize]) -> usize {
        mults.iter().enumerate().map(|(j, &m)| m * self.hom[i][j]).sum()
    }

    /// Decompose into catalog multiplicities by solving the Hom-count
    /// system, then verify by rebuilding and checking isomorphism.
    pub fn decompose(&self, m: &Representation) -> Result<Vec<usize>> {
        assert_eq!(m.algebra, self.algebra, "algebra mismatch");
        let n = self.len();
        if m.is_zero() {
            return Ok(vec![0; n]);
        }
        let b: Vec<u64> = self
            .indecs
            .iter()
            .map(|x| dim_hom(m, x) as u64)
            .collect();
        // solve sum_j mult_j * hom[j][i] = b_i over a large prime field
        let mults = solve_hom_count_system(&self.hom, &b).ok_or_else(|| {
            Error::DecompositionFailed("singular Hom-count system".to_string())
        })?;
        let total: usize = mults
            .iter()
            .enumerate()
            .map(|(j, &c)| c as usize * self.indecs[j].total_dim())
            .sum();
        if total != m.total_dim() {
            return Err(Error::DecompositionFailed(
                "multiplicities do not add up to the module dimension".to_string(),
            ));
        }
        let mults: Vec<usize> = mults.iter().map(|&c| c as usize).collect();
        let rebuilt = self.assemble(&mults);
        if !is_isomorphic(m, &rebuilt)? {
            return Err(Error::DecompositionFailed(
                "rebuilt module is not isomorphic to the input".to_string(),
            ));
        }
        Ok(mults)
    }

    /// Decomposition for inner loops: solve the Hom-count system from one
    /// side and verify against the other side instead of rebuilding. The
    /// two systems are independent, so agreement certifies the answer
    /// whenever the catalog is complete.
    pub fn decompose_fast(&self, m: &Representation) -> Result<Vec<usize>> {
        assert_eq!(m.algebra, self.algebra, "algebra mismatch");
        let n = self.len();
        if m.is_zero() {
            return Ok(vec![0; n]);
        }
        let into: Vec<u64> = self
            .indecs
            .iter()
            .map(|x| dim_hom(x, m) as u64)
            .collect();
        // sum_j mult_j * hom[i][j] = dim Hom(X_i, M)
        let transposed: Vec<Vec<usize>> = (0..n)
            .map(|j| (0..n).map(|i| self.hom[i][j]).collect())
            .collect();
        let mults = solve_hom_count_system(&transposed, &into).ok_or_else(|| {
            Error::DecompositionFailed("singular Hom-count system".to_string())
        })?;
        let total: usize = mults
            .iter()
            .enumerate()
            .map(|(j, &c)| c as usize * self.indecs[j].total_dim())
            .sum();
        if total != m.total_dim() {
            return Err(Error::DecompositionFailed(
                "multiplicities do not add up to the module dimension".to_string(),
            ));
        }
        for (i, x) in self.indecs.iter().enumerate() {
            let predicted: u64 = mults
                .iter()
                .enumerate()
                .map(|(j, &c)| c * self.hom[j][i] as u64)
                .sum();
            if predicted != dim_hom(m, x) as u64 {
                return Err(Error::DecompositionFailed(
                    "the two Hom-count systems disagree".to_string(),
                ));
            }
        }
        Ok(mults.iter().map(|&c| c as usize).collect())
    }

    /// Catalog index of an (indecomposable) module, by isomorphism.
    pub fn index_of(&self, m: &Representation) -> Result<usize> {
        let mults = self.decompose(m)?;
        let total: usize = mults.iter().sum();
        if total != 1 {
            return Err(Error::DecompositionFailed(format!(
                "module is not indecomposable (multiplicities {mults:?})"
            )));
        }
        Ok(mults.iter().position(|&c| c == 1).unwrap())
    }

    /// Render a multiset as `0` or a `+`-joined label list, multiplicity
    /// shown as exponent.
    pub fn multiset_label(&self, mults: &[usize]) -> String {
        let mut parts = Vec::new();
        for (i, &m) in mults.iter().enumerate() {
            match m {
                0 => {}
                1 => parts.push(self.labels[i].clone()),
                k => parts.push(format!("{}^{k}", self.labels[i])),
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

/// Solve H^T x = b for small nonnegative integer x by elimination modulo
/// a large prime (entries are tiny, so the lift is exact); a second prime
/// covers the unlucky case of the determinant vanishing mod the first.
fn solve_hom_count_system(hom: &[Vec<usize>], b: &[u64]) -> Option<Vec<u64>> {
    const PRIMES: [u64; 2] = [2_147_483_647, 2_305_843_009_213_693_951];
    'prime: for &p in &PRIMES {
        let n = b.len();
        let mut aug = vec![vec![0u64; n + 1]; n];
        for i in 0..n {
            for j in 0..n {
                aug[i][j] = hom[j][i] as u64 % p;
            }
            aug[i][n] = b[i] % p;
        }
        let mulmod = |a: u64, b: u64| -> u64 { ((a as u128 * b as u128) % p as u128) as u64 };
        let powmod = |mut base: u64, mut e: u64| -> u64 {
            let mut acc = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(acc, base);
                }
                base = mulmod(base, base);
                e >>= 1;
            }
            acc
        };
        for col in 0..n {
            let piv = (col..n).find(|&r| aug[r][col] != 0);
            let Some(piv) = piv else { continue 'prime };
            aug.swap(col, piv);
            let inv = powmod(aug[col][col], p - 2);
            for j in col..=n {
                aug[col][j] = mulmod(aug[col][j], inv);
            }
            for r in 0..n {
                if r != col && aug[r][col] != 0 {
                    let f = aug[r][col];
                    for j in col..=n {
                        let sub = mulmod(f, aug[col][j]);
                        aug[r][j] = (aug[r][j] + p - sub) % p;
                    }
                }
            }
        }
        let x: Vec<u64> = (0..n).map(|i| aug[i][n]).collect();
        // multiplicities must be small; anything huge is a mod-p artifact
        if x.iter().all(|&v| v < 1 << 20) {
            return Some(x);
        }
    }
    None
}
