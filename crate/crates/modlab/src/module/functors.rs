//! Module-level functors: Hom and tensor with explicit element bookkeeping,
//! localization at a multiplicative set, Pontryagin-style character duals,
//! and the degree-one derived functors Ext¹ and Tor₁.
//!
//! Hom(⊕Z/dⱼ, ⊕Z/eᵢ) and ⊕Z/dⱼ ⊗ ⊕Z/eᵢ are both ⊕ Z/gcd(dⱼ,eᵢ); the structs
//! below keep the gcd grid alongside the canonicalized module so elements
//! can be decoded into actual homs (and back), which is what the derived
//! functor computations chain through.
//!
//! Characters use the perfect pairing into Z/n in place of Q/Z: every module
//! here is n-torsion, so Hom_Z(M, Q/Z) = Hom_Z(M, (1/n)Z/Z) and the dual of
//! Z/d is again Z/d, paired by ⟨f, x⟩ = (n/d)·f·x.

use super::hom::{image, kernel, preimage, ModuleHom};
use super::{canonicalize_grid, from_invariants, FpModule};
use crate::error::{Error, Result};
use crate::linalg::{gcd, mul_mod, IntMatrix};
use crate::ring::{localize_ring, MultSet, RingLocalization};

fn ring_mismatch(a: &FpModule, b: &FpModule) -> Result<()> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch {
            left: a.ring().modulus(),
            right: b.ring().modulus(),
        });
    }
    Ok(())
}

/// Hom(source, target) as a module, with the gcd grid and the coordinate
/// transforms needed to decode elements into honest homs.
#[derive(Clone, Debug)]
pub struct HomModule {
    source: FpModule,
    target: FpModule,
    pub module: FpModule,
    /// (target row, source col, gcd) in row-major grid order.
    grid: Vec<(usize, usize, i64)>,
    to_canonical: IntMatrix,
    from_canonical: IntMatrix,
}

pub fn hom_module(source: &FpModule, target: &FpModule) -> Result<HomModule> {
    ring_mismatch(source, target)?;
    let mut grid = Vec::with_capacity(target.rank() * source.rank());
    for i in 0..target.rank() {
        for j in 0..source.rank() {
            grid.push((i, j, gcd(target.factors()[i], source.factors()[j])));
        }
    }
    let orders: Vec<i64> = grid.iter().map(|&(_, _, g)| g).collect();
    let dec = canonicalize_grid(source.ring(), &orders);
    Ok(HomModule {
        source: source.clone(),
        target: target.clone(),
        module: dec.module,
        grid,
        to_canonical: dec.to_canonical,
        from_canonical: dec.from_canonical,
    })
}

impl HomModule {
    pub fn source(&self) -> &FpModule {
        &self.source
    }

    pub fn target(&self) -> &FpModule {
        &self.target
    }

    /// Turn an element of the Hom module into the hom it names.
    pub fn decode(&self, coords: &[i64]) -> ModuleHom {
        assert_eq!(coords.len(), self.module.rank());
        let grid_coords = self.from_canonical.mul(&IntMatrix::from_col(coords));
        let mut t = IntMatrix::zero(self.target.rank(), self.source.rank());
        for (l, &(i, j, g)) in self.grid.iter().enumerate() {
            let c = grid_coords[(l, 0)].rem_euclid(g);
            let scale = self.target.factors()[i] / g;
            t[(i, j)] = mul_mod(c, scale, self.target.factors()[i]);
        }
        ModuleHom::new(self.source.clone(), self.target.clone(), t)
            .expect("decoded homs are well defined by construction")
    }

    /// Coordinates of a hom inside the Hom module.
    pub fn encode(&self, f: &ModuleHom) -> Vec<i64> {
        assert_eq!(f.source(), &self.source, "encode: source mismatch");
        assert_eq!(f.target(), &self.target, "encode: target mismatch");
        let mut grid_coords = IntMatrix::zero(self.grid.len(), 1);
        for (l, &(i, j, g)) in self.grid.iter().enumerate() {
            let e = self.target.factors()[i];
            let scale = e / g;
            let entry = f.matrix()[(i, j)];
            debug_assert_eq!(entry % scale, 0, "well-defined entries are multiples of e/gcd");
            grid_coords[(l, 0)] = (entry / scale).rem_euclid(g);
        }
        self.module
            .reduce_element(&self.to_canonical.mul(&grid_coords).column(0))
    }

    /// The hom named by the k-th canonical generator.
    pub fn generator_hom(&self, k: usize) -> ModuleHom {
        let mut unit = self.module.zero_element();
        unit[k] = 1;
        self.decode(&unit)
    }

    /// Precomposition Hom(A,B) → Hom(A',B) along `pre : A' → A`, expressed on
    /// canonical coordinates of both Hom modules.
    pub fn restricted_along(&self, pre: &ModuleHom, to: &HomModule) -> ModuleHom {
        assert_eq!(pre.target(), &self.source, "pre must land in this Hom's source");
        assert_eq!(pre.source(), &to.source, "pre must start at the restricted source");
        assert_eq!(self.target, to.target, "both Hom modules must share the target");
        let mut cols = IntMatrix::zero(to.module.rank(), self.module.rank());
        for k in 0..self.module.rank() {
            let restricted = self
                .generator_hom(k)
                .compose_after(pre)
                .expect("precomposition shapes agree");
            let coords = to.encode(&restricted);
            for (i, &v) in coords.iter().enumerate() {
                cols[(i, k)] = v;
            }
        }
        ModuleHom::new(self.module.clone(), to.module.clone(), cols)
            .expect("precomposition is linear in the hom")
    }
}

/// source ⊗ target with its gcd grid.
#[derive(Clone, Debug)]
pub struct TensorModule {
    left: FpModule,
    right: FpModule,
    pub module: FpModule,
    /// (left index, right index, gcd) in row-major grid order.
    grid: Vec<(usize, usize, i64)>,
    to_canonical: IntMatrix,
    from_canonical: IntMatrix,
}

pub fn tensor_module(left: &FpModule, right: &FpModule) -> Result<TensorModule> {
    ring_mismatch(left, right)?;
    let mut grid = Vec::with_capacity(left.rank() * right.rank());
    for a in 0..left.rank() {
        for b in 0..right.rank() {
            grid.push((a, b, gcd(left.factors()[a], right.factors()[b])));
        }
    }
    let orders: Vec<i64> = grid.iter().map(|&(_, _, g)| g).collect();
    let dec = canonicalize_grid(left.ring(), &orders);
    Ok(TensorModule {
        left: left.clone(),
        right: right.clone(),
        module: dec.module,
        grid,
        to_canonical: dec.to_canonical,
        from_canonical: dec.from_canonical,
    })
}

/// Invariant factors of the tensor product.
pub fn tensor(left: &FpModule, right: &FpModule) -> Result<FpModule> {
    Ok(tensor_module(left, right)?.module)
}

impl TensorModule {
    /// The map f ⊗ id : self → to, for f : self.left → to.left.
    pub fn map_left(&self, f: &ModuleHom, to: &TensorModule) -> ModuleHom {
        assert_eq!(f.source(), &self.left);
        assert_eq!(f.target(), &to.left);
        assert_eq!(self.right, to.right, "right factors must agree");
        let rr = self.right.rank();
        let mut grid_map = IntMatrix::zero(to.grid.len(), self.grid.len());
        for (l_from, &(a, b, _)) in self.grid.iter().enumerate() {
            for i in 0..to.left.rank() {
                let l_to = i * rr + b;
                grid_map[(l_to, l_from)] = f.matrix()[(i, a)];
            }
        }
        let mat = to
            .to_canonical
            .mul(&grid_map)
            .mul(&self.from_canonical);
        ModuleHom::new(self.module.clone(), to.module.clone(), mat)
            .expect("f ⊗ id descends to the tensor quotients")
    }
}

/// Localization M_S, realized inside M as the stable image of multiplication
/// by t^N (t the product of the generators of S, N the largest prime
/// multiplicity of n) and carried as a module over the localized ring.
#[derive(Clone, Debug)]
pub struct ModuleLocalization {
    source: FpModule,
    /// M_S as a module over the localized ring Z/m.
    target: FpModule,
    /// The same factors viewed over Z/n (restriction of scalars).
    restricted: FpModule,
    /// Canonical map M → M_S (x ↦ x/1), in restricted coordinates.
    map: ModuleHom,
    /// Inclusion of the stable image back into M.
    incl: ModuleHom,
    ring_loc: RingLocalization,
}

pub fn localize_module(m: &FpModule, s: &MultSet) -> ModuleLocalization {
    assert_eq!(m.ring(), s.ring(), "mult set over the wrong ring");
    let ring = m.ring();
    let n = ring.modulus();
    let loc = localize_ring(ring, s);
    let t = s.generators().iter().fold(1i64, |acc, &g| mul_mod(acc, g, n));
    let exp = ring.stab_exponent();
    let mut t_pow = 1i64;
    for _ in 0..exp {
        t_pow = mul_mod(t_pow, t, n);
    }
    let (img, incl) = image(&ModuleHom::scalar(m, t_pow));
    // Stabilization is asserted, not assumed: one more factor of t changes nothing.
    let (img_next, _) = image(&ModuleHom::scalar(m, mul_mod(t_pow, t, n)));
    assert_eq!(
        img.factors(),
        img_next.factors(),
        "image of t^N must be stable at the ring exponent"
    );
    let e = loc.idempotent();
    let mut theta = IntMatrix::zero(img.rank(), m.rank());
    for j in 0..m.rank() {
        let mut gen = m.zero_element();
        gen[j] = 1;
        let ex = m.scalar_mul(e, &gen);
        let w = preimage(&incl, &ex).expect("e·x lies in the stable image");
        for (i, &v) in w.iter().enumerate() {
            theta[(i, j)] = v;
        }
    }
    let map = ModuleHom::new(m.clone(), img.clone(), theta)
        .expect("the canonical localization map is R-linear");
    let target = from_invariants(loc.target(), img.factors())
        .expect("stable-image factors divide the localized modulus");
    ModuleLocalization { source: m.clone(), target, restricted: img, map, incl, ring_loc: loc }
}

impl ModuleLocalization {
    /// Assemble a localization record from raw parts, bypassing the image
    /// construction. Meant for mutation experiments against the harness.
    pub fn from_parts(
        source: FpModule,
        target: FpModule,
        restricted: FpModule,
        map: ModuleHom,
        incl: ModuleHom,
        ring_loc: RingLocalization,
    ) -> Self {
        ModuleLocalization { source, target, restricted, map, incl, ring_loc }
    }

    pub fn source(&self) -> &FpModule {
        &self.source
    }

    /// M_S over the localized ring Z/m.
    pub fn target(&self) -> &FpModule {
        &self.target
    }

    /// M_S viewed as a Z/n-module by restriction of scalars.
    pub fn restricted(&self) -> &FpModule {
        &self.restricted
    }

    /// x ↦ x/1 in the coordinates of `restricted`.
    pub fn map(&self) -> &ModuleHom {
        &self.map
    }

    pub fn inclusion(&self) -> &ModuleHom {
        &self.incl
    }

    pub fn ring_localization(&self) -> &RingLocalization {
        &self.ring_loc
    }
}

/// The localized hom f_S : M_S → N_S over the localized ring.
pub fn localize_hom(f: &ModuleHom, s: &MultSet) -> ModuleHom {
    let lm = localize_module(f.source(), s);
    let ln = localize_module(f.target(), s);
    let mat = ln
        .map
        .matrix()
        .mul(f.matrix())
        .mul(lm.incl.matrix());
    ModuleHom::new(lm.target.clone(), ln.target.clone(), mat)
        .expect("localized homs are well defined")
}

/// The localized hom viewed over the base ring by restriction of scalars.
pub fn localize_hom_restricted(f: &ModuleHom, s: &MultSet) -> ModuleHom {
    let lm = localize_module(f.source(), s);
    let ln = localize_module(f.target(), s);
    let mat = ln
        .map
        .matrix()
        .mul(f.matrix())
        .mul(lm.incl.matrix());
    ModuleHom::new(lm.restricted.clone(), ln.restricted.clone(), mat)
        .expect("localized homs are well defined")
}

/// Character dual M⁺ with its explicit pairing into Z/n.
#[derive(Clone, Debug)]
pub struct CharacterModule {
    base: FpModule,
    pub module: FpModule,
    /// ⟨f, x⟩ = Σ fᵢ · pairing[i][j] · xⱼ mod n.
    pairing: IntMatrix,
}

pub fn character(m: &FpModule) -> CharacterModule {
    let n = m.ring().modulus();
    let twists: Vec<i64> = m.factors().iter().map(|&d| n / d).collect();
    let k = m.rank();
    CharacterModule {
        base: m.clone(),
        module: m.clone(),
        pairing: IntMatrix::diagonal(k, k, &twists),
    }
}

impl CharacterModule {
    /// Assemble a character module from raw parts. Meant for experiments
    /// that deliberately feed wrong functors to the verification harness;
    /// nothing is validated here, `is_perfect` is the judge.
    pub fn from_parts(base: FpModule, module: FpModule, pairing: IntMatrix) -> Self {
        CharacterModule { base, module, pairing }
    }

    pub fn base(&self) -> &FpModule {
        &self.base
    }

    pub fn pairing(&self) -> &IntMatrix {
        &self.pairing
    }

    pub fn pairing_value(&self, f: &[i64], x: &[i64]) -> i64 {
        assert_eq!(f.len(), self.module.rank());
        assert_eq!(x.len(), self.base.rank());
        let n = self.base.ring().modulus();
        let mut acc = 0i64;
        for i in 0..f.len() {
            for j in 0..x.len() {
                let term = mul_mod(mul_mod(f[i], self.pairing[(i, j)], n), x[j], n);
                acc = (acc + term).rem_euclid(n);
            }
        }
        acc
    }

    /// A pairing is perfect when it is well defined on both quotients and
    /// both kernels vanish; this is checked by honest computation, so a
    /// corrupted functor fails here rather than being silently accepted.
    pub fn is_perfect(&self) -> bool {
        let n = self.base.ring().modulus();
        if self.module.cardinality() != self.base.cardinality() {
            return false;
        }
        if self.pairing.rows() != self.module.rank() || self.pairing.cols() != self.base.rank() {
            return false;
        }
        for i in 0..self.pairing.rows() {
            for j in 0..self.pairing.cols() {
                let p = self.pairing[(i, j)];
                let dual_kills = (self.module.factors()[i] as i128 * p as i128) % n as i128 == 0;
                let base_kills = (self.base.factors()[j] as i128 * p as i128) % n as i128 == 0;
                if !dual_kills || !base_kills {
                    return false;
                }
            }
        }
        let free = FpModule::free(self.base.ring(), self.module.rank());
        let right = ModuleHom::new(self.base.clone(), free, self.pairing.clone())
            .expect("well-definedness was just checked");
        if !kernel(&right).0.is_zero() {
            return false;
        }
        let free_l = FpModule::free(self.base.ring(), self.base.rank());
        let left = ModuleHom::new(self.module.clone(), free_l, self.pairing.transpose())
            .expect("well-definedness was just checked");
        kernel(&left).0.is_zero()
    }
}

/// The dual f⁺ : N⁺ → M⁺ of f : M → N, transposed through the pairings.
pub fn dual_hom(f: &ModuleHom) -> ModuleHom {
    let src_dual = character(f.target()).module;
    let tgt_dual = character(f.source()).module;
    let d = f.source().factors();
    let e = f.target().factors();
    let mut s = IntMatrix::zero(f.source().rank(), f.target().rank());
    for j in 0..f.source().rank() {
        for i in 0..f.target().rank() {
            // e_i divides d_j·T[i][j]; the quotient is the dual entry.
            let prod = d[j] as i128 * f.matrix()[(i, j)] as i128;
            s[(j, i)] = ((prod / e[i] as i128) as i64).rem_euclid(d[j]);
        }
    }
    ModuleHom::new(src_dual, tgt_dual, s).expect("duals of well-defined homs are well defined")
}

/// The canonical evaluation M → M⁺⁺; on these coordinates it is the identity
/// matrix, and it is an isomorphism because the pairing is perfect.
pub fn evaluation_hom(m: &FpModule) -> ModuleHom {
    let double_dual = character(&character(m).module).module;
    ModuleHom::new(m.clone(), double_dual, IntMatrix::identity(m.rank()))
        .expect("evaluation is well defined")
}

/// One free-cover step 0 → K → F → M → 0 with F free on the canonical
/// generators of M.
pub struct FreeCover {
    pub free: FpModule,
    pub proj: ModuleHom,
    pub syzygy: FpModule,
    pub incl: ModuleHom,
}

pub fn free_cover(m: &FpModule) -> FreeCover {
    let free = FpModule::free(m.ring(), m.rank());
    let proj = ModuleHom::new(free.clone(), m.clone(), IntMatrix::identity(m.rank()))
        .expect("the canonical cover is well defined");
    let (syzygy, incl) = kernel(&proj);
    FreeCover { free, proj, syzygy, incl }
}

/// Ext¹(M, N) computed from a given surjection of a free module onto M.
/// Exposed separately so presentation independence can be exercised with
/// redundant covers.
pub fn ext1_from_cover(proj: &ModuleHom, n: &FpModule) -> Result<FpModule> {
    ring_mismatch(proj.source(), n)?;
    let (_, incl) = {
        let (k, i) = kernel(proj);
        (k, i)
    };
    let h_free = hom_module(proj.source(), n)?;
    let h_syz = hom_module(incl.source(), n)?;
    let restriction = h_free.restricted_along(&incl, &h_syz);
    Ok(super::hom::cokernel(&restriction).0)
}

pub fn ext1(m: &FpModule, n: &FpModule) -> Result<FpModule> {
    ring_mismatch(m, n)?;
    let cover = free_cover(m);
    ext1_from_cover(&cover.proj, n)
}

/// Tor₁(M, N) from a given free cover of M.
pub fn tor1_from_cover(proj: &ModuleHom, n: &FpModule) -> Result<FpModule> {
    ring_mismatch(proj.source(), n)?;
    let (_, incl) = kernel(proj);
    let t_syz = tensor_module(incl.source(), n)?;
    let t_free = tensor_module(proj.source(), n)?;
    let induced = t_syz.map_left(&incl, &t_free);
    Ok(kernel(&induced).0)
}

pub fn tor1(m: &FpModule, n: &FpModule) -> Result<FpModule> {
    ring_mismatch(m, n)?;
    let cover = free_cover(m);
    tor1_from_cover(&cover.proj, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::hom::{image, is_exact, subgroup_from_generators, ShortSeq};
    use crate::module::{direct_sum, from_presentation, is_isomorphic};
    use crate::ring::{make_ring, mult_set, Ring};

    fn ring(n: i64) -> Ring {
        make_ring(n).unwrap()
    }

    fn module(n: i64, factors: &[i64]) -> FpModule {
        from_invariants(ring(n), factors).unwrap()
    }

    fn mat(rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn hom_module_examples() {
        let h = hom_module(&module(12, &[4]), &module(12, &[6])).unwrap();
        assert_eq!(h.module.factors(), &[2], "Hom(Z/4, Z/6) ≅ Z/2 over Z/12");

        let r = module(12, &[12]);
        let m = module(12, &[2, 6]);
        let h2 = hom_module(&r, &m).unwrap();
        assert!(is_isomorphic(&h2.module, &m).unwrap(), "Hom(R, M) ≅ M");

        let h3 = hom_module(&module(12, &[3]), &module(12, &[2])).unwrap();
        assert!(h3.module.is_zero(), "Hom(Z/3, Z/2) = 0");
    }

    #[test]
    fn hom_module_counts_all_homs() {
        // Count well-defined matrices by brute force and compare.
        let a = module(12, &[2, 4]);
        let b = module(12, &[6]);
        let h = hom_module(&a, &b).unwrap();
        let mut count = 0u128;
        for x in 0..6 {
            for y in 0..6 {
                let ok = (2 * x) % 6 == 0 && (4 * y) % 6 == 0;
                if ok {
                    count += 1;
                }
            }
        }
        assert_eq!(h.module.cardinality(), count);
    }

    #[test]
    fn hom_encode_decode_roundtrip() {
        let a = module(12, &[2, 4]);
        let b = module(12, &[4, 12]);
        let h = hom_module(&a, &b).unwrap();
        for coords in h.module.elements() {
            let f = h.decode(&coords);
            assert_eq!(h.encode(&f), coords);
        }
        // Pointwise R-action: decoding r·y is r times the decoded hom.
        let y: Vec<i64> = h.module.elements().last().unwrap();
        let f = h.decode(&y);
        let fy5 = h.decode(&h.module.scalar_mul(5, &y));
        let scaled = ModuleHom::scalar(&b, 5).compose_after(&f).unwrap();
        assert_eq!(fy5, scaled);
    }

    #[test]
    fn tensor_examples() {
        assert!(tensor(&module(12, &[4]), &module(12, &[3])).unwrap().is_zero());
        let m = module(12, &[2, 6]);
        let r = module(12, &[12]);
        assert!(is_isomorphic(&tensor(&r, &m).unwrap(), &m).unwrap(), "R ⊗ M ≅ M");
        assert_eq!(tensor(&module(12, &[4]), &module(12, &[6])).unwrap().factors(), &[2]);
    }

    #[test]
    fn localization_examples() {
        let s = mult_set(ring(12), &[2]).unwrap();
        let loc_z4 = localize_module(&module(12, &[4]), &s);
        assert!(loc_z4.target().is_zero(), "(Z/4)_S = 0 since 2 acts nilpotently");

        let loc_z3 = localize_module(&module(12, &[3]), &s);
        assert_eq!(loc_z3.target().factors(), &[3]);
        assert_eq!(loc_z3.target().ring().modulus(), 3);

        let trivial = mult_set(ring(12), &[]).unwrap();
        let m = module(12, &[2, 6]);
        let loc_id = localize_module(&m, &trivial);
        assert_eq!(loc_id.target().factors(), m.factors());
        assert_eq!(loc_id.target().ring().modulus(), 12);
        assert!(loc_id.map().is_injective_map() && loc_id.map().is_surjective_map());
    }

    #[test]
    fn localization_map_contract() {
        // Kernel of x ↦ x/1 is the S-torsion submodule, and every s ∈ S acts
        // bijectively on the target.
        for (n, gens, factors) in [
            (12, vec![2], vec![2, 6]),
            (12, vec![2], vec![4, 12]),
            (24, vec![3], vec![2, 12]),
            (36, vec![3], vec![6, 12]),
        ] {
            let r = ring(n);
            let s = mult_set(r, &gens).unwrap();
            let m = from_invariants(r, &factors).unwrap();
            let loc = localize_module(&m, &s);
            // S-torsion as a subgroup: join the kernels of every ·s.
            let mut gens_cols: Vec<IntMatrix> = Vec::new();
            for &sv in s.elements() {
                let (_, incl) = kernel(&ModuleHom::scalar(&m, sv));
                gens_cols.push(incl.matrix().clone());
            }
            let stacked = gens_cols
                .into_iter()
                .reduce(|a, b| a.hstack(&b))
                .unwrap();
            let (torsion, torsion_incl) = subgroup_from_generators(&m, &stacked);
            let (ker, ker_incl) = kernel(loc.map());
            assert_eq!(ker.cardinality(), torsion.cardinality());
            assert!(crate::module::hom::submodules_equal(&ker_incl, &torsion_incl));
            assert!(loc.map().is_surjective_map(), "x ↦ x/1 is onto for finite modules");
            for &sv in s.elements() {
                let action = ModuleHom::scalar(loc.restricted(), sv);
                assert!(action.is_injective_map() && action.is_surjective_map());
            }
        }
    }

    #[test]
    fn localize_hom_is_functorial() {
        let r = ring(12);
        let s = mult_set(r, &[2]).unwrap();
        let a = module(12, &[6]);
        let b = module(12, &[12]);
        let f = ModuleHom::new(a.clone(), b.clone(), mat(vec![vec![2]])).unwrap();
        let g = ModuleHom::scalar(&b, 3);
        let gf = g.compose_after(&f).unwrap();
        let lhs = localize_hom(&gf, &s);
        let rhs = localize_hom(&g, &s)
            .compose_after(&localize_hom(&f, &s))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn character_examples() {
        let d = character(&module(12, &[6]));
        assert_eq!(d.module.factors(), &[6], "(Z/6)⁺ ≅ Z/6");
        assert!(d.is_perfect());

        let zero = character(&FpModule::zero(ring(12)));
        assert!(zero.module.is_zero());
        assert!(zero.is_perfect());

        let z4 = module(4, &[4]);
        let double = ModuleHom::scalar(&z4, 2);
        let dual = dual_hom(&double);
        assert_eq!(dual.matrix()[(0, 0)], 2, "dual of ×2 on Z/4 is ×2");
    }

    #[test]
    fn character_is_contravariant_and_involutive() {
        let a = module(12, &[2, 4]);
        let b = module(12, &[4, 12]);
        let c = module(12, &[12]);
        let f = ModuleHom::new(a.clone(), b.clone(), mat(vec![vec![2, 1], vec![0, 3]])).unwrap();
        let g = ModuleHom::new(b.clone(), c.clone(), mat(vec![vec![3, 4]])).unwrap();
        let gf = g.compose_after(&f).unwrap();
        assert_eq!(
            dual_hom(&gf),
            dual_hom(&f).compose_after(&dual_hom(&g)).unwrap(),
            "(g∘f)⁺ = f⁺∘g⁺"
        );
        assert_eq!(dual_hom(&dual_hom(&f)), f, "double dual of a hom is itself");

        let ev = evaluation_hom(&a);
        assert!(ev.is_injective_map() && ev.is_surjective_map());
    }

    #[test]
    fn dual_respects_pairing() {
        // ⟨f⁺(ψ), x⟩_M = ⟨ψ, f(x)⟩_N on every pair of elements.
        let m = module(12, &[2, 4]);
        let n = module(12, &[6]);
        let f = ModuleHom::new(m.clone(), n.clone(), mat(vec![vec![3, 3]])).unwrap();
        let cm = character(&m);
        let cn = character(&n);
        let fd = dual_hom(&f);
        for psi in cn.module.elements() {
            for x in m.elements() {
                assert_eq!(
                    cm.pairing_value(&fd.apply(&psi), &x),
                    cn.pairing_value(&psi, &f.apply(&x))
                );
            }
        }
    }

    #[test]
    fn exactness_reflects_through_duals() {
        let r4 = ring(4);
        let z2 = from_invariants(r4, &[2]).unwrap();
        let z4 = from_invariants(r4, &[4]).unwrap();
        let f = ModuleHom::new(z2.clone(), z4.clone(), mat(vec![vec![2]])).unwrap();
        let g = ModuleHom::new(z4.clone(), z2.clone(), mat(vec![vec![1]])).unwrap();
        let seq = ShortSeq::new(f.clone(), g.clone()).unwrap();
        let dual_seq = ShortSeq::new(dual_hom(&g), dual_hom(&f)).unwrap();
        assert_eq!(is_exact(&seq), is_exact(&dual_seq));

        // A non-exact pair stays non-exact after dualizing.
        let bad = ShortSeq::new(
            ModuleHom::zero(z2.clone(), z4.clone()),
            ModuleHom::zero(z4, z2),
        )
        .unwrap();
        let bad_dual = ShortSeq::new(dual_hom(bad.second()), dual_hom(bad.first())).unwrap();
        assert_eq!(is_exact(&bad), is_exact(&bad_dual));
    }

    #[test]
    fn ext_examples() {
        let z2_over_4 = module(4, &[2]);
        let e = ext1(&z2_over_4, &z2_over_4).unwrap();
        assert_eq!(e.factors(), &[2], "Ext over Z/4 of (Z/2, Z/2) is Z/2");

        let free = FpModule::free(ring(12), 2);
        assert!(ext1(&free, &module(12, &[6])).unwrap().is_zero(), "free modules are projective");

        assert!(ext1(&module(12, &[3]), &module(12, &[2])).unwrap().is_zero());
    }

    #[test]
    fn tor_examples() {
        let z2 = module(12, &[2]);
        let t = tor1(&z2, &z2).unwrap();
        assert_eq!(t.factors(), &[2], "Tor1 over Z/12 of (Z/2, Z/2) is Z/2");

        let r = module(12, &[12]);
        assert!(tor1(&r, &module(12, &[6])).unwrap().is_zero(), "R is flat");

        assert!(tor1(&module(12, &[3]), &module(12, &[4])).unwrap().is_zero());
    }

    #[test]
    fn derived_functors_ignore_presentation() {
        // Redundant cover: an extra free generator mapped onto the first one.
        let m = module(12, &[2, 6]);
        let n = module(12, &[4]);
        let free_big = FpModule::free(ring(12), 3);
        let proj = ModuleHom::new(
            free_big,
            m.clone(),
            mat(vec![vec![1, 0, 1], vec![0, 1, 0]]),
        )
        .unwrap();
        assert!(image(&proj).0.cardinality() == m.cardinality(), "redundant cover is onto");
        assert_eq!(
            ext1(&m, &n).unwrap().factors(),
            ext1_from_cover(&proj, &n).unwrap().factors()
        );
        assert_eq!(
            tor1(&m, &n).unwrap().factors(),
            tor1_from_cover(&proj, &n).unwrap().factors()
        );
    }

    #[test]
    fn hom_tensor_adjunction_on_invariants() {
        // Hom(A⊗B, C) ≅ Hom(A, Hom(B,C)) as modules.
        let mods = [
            module(12, &[2]),
            module(12, &[4]),
            module(12, &[6]),
            module(12, &[2, 12]),
        ];
        for a in &mods {
            for b in &mods {
                for c in &mods {
                    let lhs = hom_module(&tensor(a, b).unwrap(), c).unwrap().module;
                    let rhs = hom_module(a, &hom_module(b, c).unwrap().module).unwrap().module;
                    assert_eq!(lhs.factors(), rhs.factors(), "adjunction failed at {a:?},{b:?},{c:?}");
                }
            }
        }
    }

    #[test]
    fn direct_sum_commutes_with_character() {
        let a = module(12, &[2]);
        let b = module(12, &[4]);
        let sum = direct_sum(&[&a, &b]).unwrap().module;
        let lhs = character(&sum).module;
        let rhs = direct_sum(&[&character(&a).module, &character(&b).module])
            .unwrap()
            .module;
        assert_eq!(lhs.factors(), rhs.factors());
    }

    #[test]
    fn zero_module_through_all_functors() {
        let r = ring(12);
        let zero = FpModule::zero(r);
        let m = module(12, &[6]);
        let s = mult_set(r, &[2]).unwrap();
        assert!(hom_module(&zero, &m).unwrap().module.is_zero());
        assert!(hom_module(&m, &zero).unwrap().module.is_zero());
        assert!(tensor(&zero, &m).unwrap().is_zero());
        assert!(localize_module(&zero, &s).target().is_zero());
        assert!(character(&zero).module.is_zero());
        assert!(ext1(&zero, &m).unwrap().is_zero());
        assert!(ext1(&m, &zero).unwrap().is_zero());
        assert!(tor1(&zero, &m).unwrap().is_zero());
        assert!(tor1(&m, &zero).unwrap().is_zero());
    }

    #[test]
    fn presentation_roundtrip_idempotent() {
        // from_invariants ∘ canonical(m) ≅ m for presentations.
        let r = ring(12);
        let dec = from_presentation(r, &mat(vec![vec![2, 4, 6], vec![0, 6, 3]]));
        let again = from_invariants(r, dec.module.factors()).unwrap();
        assert!(is_isomorphic(&dec.module, &again).unwrap());
    }
}
