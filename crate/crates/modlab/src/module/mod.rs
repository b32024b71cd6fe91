//! Finitely presented modules over Z/n in canonical invariant-factor form.
//!
//! Every finitely presented Z/n-module is ⊕ Z/dᵢ with a divisibility chain
//! d₁ | d₂ | …, each dᵢ | n and dᵢ ≥ 2 (factors of 1 are dropped, the zero
//! module is the empty sum). All higher constructions (homs, kernels, Ext,
//! Tor, duals, localizations) work on these canonical coordinates; Smith
//! normal form does the bookkeeping back to presentation coordinates.

mod functors;
mod hom;

pub use functors::{
    character, dual_hom, evaluation_hom, ext1, ext1_from_cover, free_cover, hom_module,
    localize_hom, localize_hom_restricted, localize_module, tensor, tensor_module, tor1,
    tor1_from_cover, CharacterModule, FreeCover, HomModule, ModuleLocalization, TensorModule,
};
pub use hom::{
    cokernel, element_in_image, image, is_exact, is_s_exact, is_s_finite, kernel, preimage,
    subgroup_from_generators, submodules_equal, ModuleHom, ShortSeq,
};

use crate::error::{Error, Result};
use crate::linalg::{snf, IntMatrix};
use crate::ring::Ring;
use serde::{Deserialize, Serialize};

/// Canonical finitely presented module ⊕ Z/dᵢ over Z/n.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpModule {
    ring: Ring,
    factors: Vec<i64>,
}

impl std::fmt::Debug for FpModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            write!(f, "0 over {:?}", self.ring)
        } else {
            let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
            write!(f, "{} over {:?}", parts.join("⊕"), self.ring)
        }
    }
}

impl std::fmt::Display for FpModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FpModule {
    pub fn zero(ring: Ring) -> Self {
        FpModule { ring, factors: Vec::new() }
    }

    /// Free module of rank k, i.e. (Z/n)^k.
    pub fn free(ring: Ring, k: usize) -> Self {
        FpModule { ring, factors: vec![ring.modulus(); k] }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    /// Number of canonical generators.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn cardinality(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    pub fn zero_element(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    pub fn reduce_element(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.rank(), "element length mismatch");
        x.iter().zip(&self.factors).map(|(&v, &d)| v.rem_euclid(d)).collect()
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), y.len());
        self.reduce_element(&x.iter().zip(y).map(|(&a, &b)| a + b).collect::<Vec<_>>())
    }

    pub fn scalar_mul(&self, c: i64, x: &[i64]) -> Vec<i64> {
        self.reduce_element(
            &x.iter()
                .zip(&self.factors)
                .map(|(&v, &d)| crate::linalg::mul_mod(v, c.rem_euclid(d), d))
                .collect::<Vec<_>>(),
        )
    }

    pub fn is_zero_element(&self, x: &[i64]) -> bool {
        self.reduce_element(x).iter().all(|&v| v == 0)
    }

    /// All elements in mixed-radix order; only sensible at desk scale.
    pub fn elements(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        let total = self.cardinality();
        let factors = self.factors.clone();
        (0..total).map(move |mut idx| {
            let mut coords = Vec::with_capacity(factors.len());
            for &d in &factors {
                coords.push((idx % d as u128) as i64);
                idx /= d as u128;
            }
            coords
        })
    }
}

/// Construct ⊕ Z/dᵢ directly from a divisibility chain.
pub fn from_invariants(ring: Ring, factors: &[i64]) -> Result<FpModule> {
    let n = ring.modulus();
    for (idx, &d) in factors.iter().enumerate() {
        if d < 2 {
            return Err(Error::InvalidInvariants {
                factors: factors.to_vec(),
                n,
                reason: format!("factor {d} at position {idx} is below 2"),
            });
        }
        if n % d != 0 {
            return Err(Error::InvalidInvariants {
                factors: factors.to_vec(),
                n,
                reason: format!("{d} does not divide the modulus"),
            });
        }
        if idx > 0 && factors[idx] % factors[idx - 1] != 0 {
            return Err(Error::InvalidInvariants {
                factors: factors.to_vec(),
                n,
                reason: format!("{} does not divide {}", factors[idx - 1], factors[idx]),
            });
        }
    }
    Ok(FpModule { ring, factors: factors.to_vec() })
}

/// A presentation quotient Z^k / (relations + n·Z^k) in canonical form,
/// together with the unimodular change of coordinates both ways.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub module: FpModule,
    /// Maps presentation coordinates (k) to canonical coordinates (rank).
    pub to_canonical: IntMatrix,
    /// Lifts canonical coordinates back to presentation coordinates.
    pub from_canonical: IntMatrix,
    pub num_gens: usize,
}

/// Canonicalize a presentation; `relations` holds one relation per row over
/// `relations.cols()` generators. The implicit relations n·eᵢ are appended.
pub fn from_presentation(ring: Ring, relations: &IntMatrix) -> Decomposition {
    let k = relations.cols();
    let n = ring.modulus();
    // Columns of b span the relation lattice inside Z^k.
    let b = relations
        .transpose()
        .hstack(&IntMatrix::diagonal(k, k, &vec![n; k]));
    let s = snf(&b);
    debug_assert!(s.d.iter().all(|&d| d > 0 && n % d == 0), "quotient must be n-torsion");
    let kept: Vec<usize> = (0..s.d.len()).filter(|&i| s.d[i] >= 2).collect();
    let factors: Vec<i64> = kept.iter().map(|&i| s.d[i]).collect();
    let module = FpModule { ring, factors };
    let mut to_canonical = s.u.select_rows(&kept);
    for (row, &d) in module.factors.iter().enumerate() {
        for j in 0..to_canonical.cols() {
            to_canonical[(row, j)] = to_canonical[(row, j)].rem_euclid(d);
        }
    }
    let from_canonical = s.u_inv.select_cols(&kept);
    Decomposition { module, to_canonical, from_canonical, num_gens: k }
}

/// Renormalize an arbitrary list of cyclic orders (a "grid") into canonical
/// invariant factors, keeping the coordinate transforms. Orders of 1 are
/// legal and simply vanish.
pub fn canonicalize_grid(ring: Ring, grid: &[i64]) -> Decomposition {
    let k = grid.len();
    from_presentation(ring, &IntMatrix::diagonal(k, k, grid))
}

pub fn is_isomorphic(a: &FpModule, b: &FpModule) -> Result<bool> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch {
            left: a.ring().modulus(),
            right: b.ring().modulus(),
        });
    }
    Ok(a.factors == b.factors)
}

/// Biproduct of finitely many modules with its injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: FpModule,
    pub injections: Vec<ModuleHom>,
    pub projections: Vec<ModuleHom>,
}

pub fn direct_sum(parts: &[&FpModule]) -> Result<DirectSum> {
    let ring = match parts.first() {
        Some(p) => p.ring(),
        None => {
            return Err(Error::Config("direct_sum needs at least one summand".into()));
        }
    };
    for p in parts {
        if p.ring() != ring {
            return Err(Error::RingMismatch {
                left: ring.modulus(),
                right: p.ring().modulus(),
            });
        }
    }
    let grid: Vec<i64> = parts.iter().flat_map(|p| p.factors().iter().copied()).collect();
    let dec = canonicalize_grid(ring, &grid);
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    let mut offset = 0;
    for p in parts {
        let cols: Vec<usize> = (offset..offset + p.rank()).collect();
        let inj = ModuleHom::new(
            (*p).clone(),
            dec.module.clone(),
            dec.to_canonical.select_cols(&cols),
        )?;
        let proj = ModuleHom::new(
            dec.module.clone(),
            (*p).clone(),
            dec.from_canonical.select_rows(&cols),
        )?;
        injections.push(inj);
        projections.push(proj);
        offset += p.rank();
    }
    Ok(DirectSum { module: dec.module, injections, projections })
}

/// k-fold direct sum of one module.
pub fn direct_power(m: &FpModule, k: usize) -> Result<DirectSum> {
    if k == 0 {
        let zero = FpModule::zero(m.ring());
        return Ok(DirectSum { module: zero, injections: vec![], projections: vec![] });
    }
    let parts: Vec<&FpModule> = std::iter::repeat(m).take(k).collect();
    direct_sum(&parts)
}
