//! Homomorphisms between canonical modules, their kernels, images and
//! cokernels, short sequences, and exactness tests.
//!
//! A hom is an integer matrix on canonical generators; column j sends the
//! j-th source generator (of order dⱼ) to the column read in the target, so
//! well-definedness means each target factor kills dⱼ times its entry. All
//! kernel/image computations run through integer lattices: a subgroup of
//! ⊕ Z/eᵢ is the lattice of its lifts in Z^m together with diag(e).

use super::{from_presentation, FpModule};
use crate::error::{Error, Result};
use crate::linalg::{column_lattice_basis, kernel_lattice, solve_z, IntMatrix};
use crate::ring::MultSet;
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleHom {
    source: FpModule,
    target: FpModule,
    matrix: IntMatrix,
}

impl std::fmt::Debug for ModuleHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "hom {:?} -> {:?} via {:?}", self.source, self.target, self.matrix)
    }
}

impl ModuleHom {
    /// Matrix rows follow target generators, columns follow source
    /// generators; entries are reduced mod the target factor of their row.
    pub fn new(source: FpModule, target: FpModule, matrix: IntMatrix) -> Result<Self> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch {
                left: source.ring().modulus(),
                right: target.ring().modulus(),
            });
        }
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "hom matrix is {}x{}, expected {}x{}",
                    matrix.rows(),
                    matrix.cols(),
                    target.rank(),
                    source.rank()
                ),
            });
        }
        let mut reduced = matrix;
        for i in 0..target.rank() {
            let e = target.factors()[i];
            for j in 0..source.rank() {
                reduced[(i, j)] = reduced[(i, j)].rem_euclid(e);
                let d = source.factors()[j];
                if (d as i128 * reduced[(i, j)] as i128) % e as i128 != 0 {
                    return Err(Error::IllFormedHom { col: j, order: d });
                }
            }
        }
        Ok(ModuleHom { source, target, matrix: reduced })
    }

    pub fn identity(m: &FpModule) -> Self {
        ModuleHom {
            source: m.clone(),
            target: m.clone(),
            matrix: IntMatrix::identity(m.rank()),
        }
    }

    pub fn zero(source: FpModule, target: FpModule) -> Self {
        let matrix = IntMatrix::zero(target.rank(), source.rank());
        ModuleHom { source, target, matrix }
    }

    /// Multiplication by the scalar c.
    pub fn scalar(m: &FpModule, c: i64) -> Self {
        let k = m.rank();
        let diag: Vec<i64> = m.factors().iter().map(|&d| c.rem_euclid(d)).collect();
        ModuleHom {
            source: m.clone(),
            target: m.clone(),
            matrix: IntMatrix::diagonal(k, k, &diag),
        }
    }

    pub fn source(&self) -> &FpModule {
        &self.source
    }

    pub fn target(&self) -> &FpModule {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.source.rank(), "element has wrong length");
        self.target
            .reduce_element(&self.matrix.mul(&IntMatrix::from_col(x)).column(0))
    }

    /// self ∘ first (apply `first`, then `self`).
    pub fn compose_after(&self, first: &ModuleHom) -> Result<ModuleHom> {
        if first.target != self.source {
            return Err(Error::NotComposable {
                context: format!("{:?} then {:?}", first.target, self.source),
            });
        }
        ModuleHom::new(
            first.source.clone(),
            self.target.clone(),
            self.matrix.mul(&first.matrix),
        )
    }

    pub fn add(&self, other: &ModuleHom) -> Result<ModuleHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::NotComposable {
                context: "hom addition needs equal source and target".into(),
            });
        }
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m[(i, j)] += other.matrix[(i, j)];
            }
        }
        ModuleHom::new(self.source.clone(), self.target.clone(), m)
    }

    pub fn is_zero_map(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        if self.source != self.target {
            return false;
        }
        let k = self.source.rank();
        (0..k).all(|i| {
            (0..k).all(|j| {
                let want = if i == j { 1 % self.source.factors()[i] } else { 0 };
                self.matrix[(i, j)] == want
            })
        })
    }

    pub fn is_injective_map(&self) -> bool {
        kernel(self).0.is_zero()
    }

    pub fn is_surjective_map(&self) -> bool {
        image(self).0.cardinality() == self.target.cardinality()
    }
}

/// Lattice of integer lifts of a canonical subgroup: columns of `cols`
/// together with diag(factors of the ambient module).
fn lift_lattice(ambient: &FpModule, cols: &IntMatrix) -> IntMatrix {
    let e = ambient.factors();
    cols.hstack(&IntMatrix::diagonal(e.len(), e.len(), e))
}

/// The submodule of `ambient` generated by the given columns, returned
/// canonically with its inclusion hom.
pub fn subgroup_from_generators(
    ambient: &FpModule,
    gens: &IntMatrix,
) -> (FpModule, ModuleHom) {
    assert_eq!(gens.rows(), ambient.rank(), "generator columns live in the ambient module");
    let basis = column_lattice_basis(&lift_lattice(ambient, gens));
    let e = ambient.factors();
    let relations = solve_z(&basis, &IntMatrix::diagonal(e.len(), e.len(), e))
        .expect("diag(e) lies inside the generated lattice");
    let dec = from_presentation(ambient.ring(), &relations.transpose());
    let incl_matrix = basis.mul(&dec.from_canonical);
    let incl = ModuleHom::new(dec.module.clone(), ambient.clone(), incl_matrix)
        .expect("inclusion of a constructed subgroup is well defined");
    (dec.module, incl)
}

pub fn image(f: &ModuleHom) -> (FpModule, ModuleHom) {
    subgroup_from_generators(f.target(), f.matrix())
}

pub fn kernel(f: &ModuleHom) -> (FpModule, ModuleHom) {
    let k = f.source().rank();
    let solutions = kernel_lattice(&lift_lattice(f.target(), f.matrix()));
    let x_part = solutions.select_rows(&(0..k).collect::<Vec<_>>());
    // x_part spans all canonical solutions; diag(d) is already inside but
    // joining it keeps the lattice visibly full rank.
    let d = f.source().factors();
    let basis = column_lattice_basis(&x_part.hstack(&IntMatrix::diagonal(k, k, d)));
    let relations = solve_z(&basis, &IntMatrix::diagonal(k, k, d))
        .expect("diag(d) lies inside the kernel lattice");
    let dec = from_presentation(f.source().ring(), &relations.transpose());
    let incl_matrix = basis.mul(&dec.from_canonical);
    let incl = ModuleHom::new(dec.module.clone(), f.source().clone(), incl_matrix)
        .expect("kernel inclusion is well defined");
    (dec.module, incl)
}

pub fn cokernel(f: &ModuleHom) -> (FpModule, ModuleHom) {
    let e = f.target().factors();
    let relations = f
        .matrix()
        .transpose()
        .vstack(&IntMatrix::diagonal(e.len(), e.len(), e));
    let dec = from_presentation(f.target().ring(), &relations);
    let proj = ModuleHom::new(f.target().clone(), dec.module.clone(), dec.to_canonical)
        .expect("cokernel projection is well defined");
    (dec.module, proj)
}

/// Does `y` lie in the image of `f`?
pub fn element_in_image(f: &ModuleHom, y: &[i64]) -> bool {
    preimage(f, y).is_some()
}

/// Some x with f(x) = y, in canonical source coordinates.
pub fn preimage(f: &ModuleHom, y: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(y.len(), f.target().rank());
    let sol = solve_z(&lift_lattice(f.target(), f.matrix()), &IntMatrix::from_col(y))?;
    let x: Vec<i64> = (0..f.source().rank()).map(|j| sol[(j, 0)]).collect();
    Some(f.source().reduce_element(&x))
}

/// Two submodules given by inclusions into the same ambient module are equal
/// when their cardinalities agree and either's generators land in the other.
pub fn submodules_equal(a: &ModuleHom, b: &ModuleHom) -> bool {
    assert_eq!(a.target(), b.target(), "inclusions must share the ambient module");
    if a.source().cardinality() != b.source().cardinality() {
        return false;
    }
    (0..a.source().rank()).all(|j| {
        let gen_img = a.target().reduce_element(&a.matrix().column(j));
        element_in_image(b, &gen_img)
    })
}

/// A composable pair A → B → C with zero composite.
#[derive(Clone, Debug)]
pub struct ShortSeq {
    first: ModuleHom,
    second: ModuleHom,
}

impl ShortSeq {
    pub fn new(first: ModuleHom, second: ModuleHom) -> Result<Self> {
        let composite = second.compose_after(&first)?;
        if !composite.is_zero_map() {
            return Err(Error::NotComposable {
                context: "composite of the two maps is not zero".into(),
            });
        }
        Ok(ShortSeq { first, second })
    }

    pub fn first(&self) -> &ModuleHom {
        &self.first
    }

    pub fn second(&self) -> &ModuleHom {
        &self.second
    }
}

/// Exactness of 0 → A → B → C → 0: the first map is injective, the image of
/// the first equals the kernel of the second (containment is the zero
/// composite, equality is cardinality), and the second map is surjective.
pub fn is_exact(seq: &ShortSeq) -> bool {
    if !seq.first.is_injective_map() {
        return false;
    }
    let im = image(&seq.first).0;
    let ker = kernel(&seq.second).0;
    if im.cardinality() != ker.cardinality() {
        return false;
    }
    seq.second.is_surjective_map()
}

/// S-exactness: exactness of the localized sequence.
pub fn is_s_exact(seq: &ShortSeq, s: &MultSet) -> bool {
    let f_s = super::localize_hom(&seq.first, s);
    let g_s = super::localize_hom(&seq.second, s);
    let local = ShortSeq::new(f_s, g_s).expect("localization preserves zero composites");
    is_exact(&local)
}

/// Least s ∈ S with s·m contained in the given submodule, if any.
pub fn is_s_finite(m: &FpModule, sub_inclusion: &ModuleHom, s: &MultSet) -> (bool, Option<i64>) {
    assert_eq!(sub_inclusion.target(), m, "inclusion must land in m");
    for &cand in s.elements() {
        let all_in = (0..m.rank()).all(|j| {
            let mut gen = m.zero_element();
            gen[j] = 1;
            let scaled = m.scalar_mul(cand, &gen);
            element_in_image(sub_inclusion, &scaled)
        });
        if all_in {
            return (true, Some(cand));
        }
    }
    (false, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{direct_sum, from_invariants, FpModule};
    use crate::ring::{make_ring, mult_set, Ring};

    fn ring(n: i64) -> Ring {
        make_ring(n).unwrap()
    }

    fn mat(rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn hom_well_definedness() {
        let r12 = ring(12);
        let z4 = from_invariants(r12, &[4]).unwrap();
        let z6 = from_invariants(r12, &[6]).unwrap();
        // Z/4 → Z/6 must send the generator to an element killed by 4; the
        // elements of order dividing 4 in Z/6 are {0, 3}.
        assert!(ModuleHom::new(z4.clone(), z6.clone(), mat(vec![vec![3]])).is_ok());
        assert!(matches!(
            ModuleHom::new(z4.clone(), z6.clone(), mat(vec![vec![1]])),
            Err(Error::IllFormedHom { .. })
        ));
        assert!(ModuleHom::new(z4.clone(), z6.clone(), mat(vec![vec![2]])).is_err());
        // Ring mismatch is rejected.
        let other = from_invariants(ring(6), &[2]).unwrap();
        assert!(matches!(
            ModuleHom::new(z4, other, mat(vec![vec![0]])),
            Err(Error::RingMismatch { .. })
        ));
    }

    #[test]
    fn kernel_image_cokernel_of_doubling() {
        let r4 = ring(4);
        let z4 = from_invariants(r4, &[4]).unwrap();
        let double = ModuleHom::scalar(&z4, 2);

        let (ker, ker_incl) = kernel(&double);
        assert_eq!(ker.factors(), &[2], "kernel of ×2 on Z/4 is Z/2");
        assert!(double.compose_after(&ker_incl).unwrap().is_zero_map());

        let (im, im_incl) = image(&double);
        assert_eq!(im.factors(), &[2]);
        assert!(element_in_image(&im_incl, &[2]));
        assert!(!element_in_image(&im_incl, &[1]));

        let (coker, proj) = cokernel(&double);
        assert_eq!(coker.factors(), &[2]);
        assert!(proj.compose_after(&double).unwrap().is_zero_map());

        assert_eq!(
            ker.cardinality() * im.cardinality(),
            z4.cardinality(),
            "|ker|·|im| = |source|"
        );
    }

    #[test]
    fn trivial_kernels_images() {
        let r12 = ring(12);
        let m = from_invariants(r12, &[2, 6]).unwrap();
        let id = ModuleHom::identity(&m);
        assert!(cokernel(&id).0.is_zero());
        assert!(kernel(&id).0.is_zero());
        let zero_map = ModuleHom::zero(m.clone(), m.clone());
        assert!(image(&zero_map).0.is_zero());
        assert_eq!(kernel(&zero_map).0.factors(), m.factors());
    }

    #[test]
    fn cardinality_bookkeeping_over_various_homs() {
        let r12 = ring(12);
        let a = from_invariants(r12, &[2, 4]).unwrap();
        let b = from_invariants(r12, &[6]).unwrap();
        for cols in [vec![vec![0, 3]], vec![vec![3, 0]], vec![vec![3, 3]], vec![vec![0, 0]]] {
            let f = ModuleHom::new(a.clone(), b.clone(), mat(cols)).unwrap();
            let (ker, _) = kernel(&f);
            let (im, _) = image(&f);
            assert_eq!(ker.cardinality() * im.cardinality(), a.cardinality());
        }
    }

    #[test]
    fn subgroup_generation() {
        let r12 = ring(12);
        let m = from_invariants(r12, &[12]).unwrap();
        let (sub, incl) = subgroup_from_generators(&m, &mat(vec![vec![4]]));
        assert_eq!(sub.factors(), &[3], "(4) in Z/12 has 3 elements");
        assert!(element_in_image(&incl, &[8]));
        assert!(!element_in_image(&incl, &[2]));

        let (whole, _) = subgroup_from_generators(&m, &mat(vec![vec![5]]));
        assert_eq!(whole.factors(), &[12], "5 is a unit so generates everything");
    }

    #[test]
    fn exactness_of_standard_sequence() {
        // 0 → Z/2 → Z/4 → Z/2 → 0 over Z/4 (×2 then the quotient).
        let r4 = ring(4);
        let z2 = from_invariants(r4, &[2]).unwrap();
        let z4 = from_invariants(r4, &[4]).unwrap();
        let times2 = ModuleHom::new(z2.clone(), z4.clone(), mat(vec![vec![2]])).unwrap();
        let quot = ModuleHom::new(z4.clone(), z2.clone(), mat(vec![vec![1]])).unwrap();
        let seq = ShortSeq::new(times2, quot).unwrap();
        assert!(is_exact(&seq));
    }

    #[test]
    fn split_sequence_is_exact() {
        let r4 = ring(4);
        let z2 = from_invariants(r4, &[2]).unwrap();
        let sum = direct_sum(&[&z2, &z2]).unwrap();
        let seq = ShortSeq::new(sum.injections[0].clone(), sum.projections[1].clone()).unwrap();
        assert!(is_exact(&seq));
    }

    #[test]
    fn s_exact_but_not_exact() {
        // The zero map Z/2 → Z/2 over Z/12 has nonzero kernel, but S = ⟨2⟩
        // localizes both modules to 0, where everything is exact.
        let r12 = ring(12);
        let s = mult_set(r12, &[2]).unwrap();
        let z2 = from_invariants(r12, &[2]).unwrap();
        let zero_start = ModuleHom::zero(z2.clone(), z2.clone());
        let to_zero = ModuleHom::zero(z2.clone(), FpModule::zero(r12));
        let seq = ShortSeq::new(zero_start, to_zero).unwrap();
        assert!(!is_exact(&seq));
        assert!(is_s_exact(&seq, &s));
    }

    #[test]
    fn exact_sequences_stay_s_exact() {
        let r12 = ring(12);
        let s = mult_set(r12, &[2]).unwrap();
        let z2 = from_invariants(r12, &[2]).unwrap();
        let z4 = from_invariants(r12, &[4]).unwrap();
        let f = ModuleHom::new(z2.clone(), z4.clone(), mat(vec![vec![2]])).unwrap();
        let g = ModuleHom::new(z4, z2, mat(vec![vec![1]])).unwrap();
        let seq = ShortSeq::new(f, g).unwrap();
        assert!(is_exact(&seq));
        assert!(is_s_exact(&seq, &s));
    }

    #[test]
    fn s_finiteness_witnesses() {
        let r12 = ring(12);
        let s = mult_set(r12, &[2]).unwrap();
        let z2 = from_invariants(r12, &[2]).unwrap();
        let zero = FpModule::zero(r12);
        let zero_incl = ModuleHom::zero(zero.clone(), z2.clone());
        assert_eq!(is_s_finite(&z2, &zero_incl, &s), (true, Some(2)), "2·(Z/2) = 0");

        let self_incl = ModuleHom::identity(&z2);
        assert_eq!(is_s_finite(&z2, &self_incl, &s), (true, Some(1)));

        let z3 = from_invariants(r12, &[3]).unwrap();
        let zero_incl3 = ModuleHom::zero(zero, z3.clone());
        assert_eq!(is_s_finite(&z3, &zero_incl3, &s), (false, None), "no power of 2 kills Z/3");
    }

    #[test]
    fn preimage_solves() {
        let r12 = ring(12);
        let z4 = from_invariants(r12, &[4]).unwrap();
        let double = ModuleHom::scalar(&z4, 2);
        let x = preimage(&double, &[2]).expect("2 is in the image of ×2");
        assert_eq!(double.apply(&x), vec![2]);
        assert!(preimage(&double, &[1]).is_none());
    }
}
