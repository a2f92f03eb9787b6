//! Character lattices and the weight multisets of the representations used
//! by the certificates.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::intlat::{self, IntegerMatrix};
use crate::rootsys::{DynkinType, Family, RootSystem};
use crate::weyl;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeKind {
    /// `T^* = Q`
    Adjoint,
    /// `T^* = P`
    SimplyConnected,
    /// Index-2 lattice between `Q` and `P` containing a half-spin weight.
    HalfSpin,
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LatticeKind::Adjoint => "adjoint",
            LatticeKind::SimplyConnected => "simply-connected",
            LatticeKind::HalfSpin => "half-spin",
        })
    }
}

/// `T^*` as a sublattice of the weight lattice `P`.
///
/// Rows of `basis` are the basis vectors in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterLattice {
    pub ty: DynkinType,
    pub kind: LatticeKind,
    basis: IntegerMatrix,
}

impl CharacterLattice {
    pub fn adjoint(rs: &RootSystem) -> Self {
        CharacterLattice {
            ty: rs.dynkin_type(),
            kind: LatticeKind::Adjoint,
            basis: rs.cartan_matrix(),
        }
    }

    pub fn simply_connected(rs: &RootSystem) -> Self {
        CharacterLattice {
            ty: rs.dynkin_type(),
            kind: LatticeKind::SimplyConnected,
            basis: IntegerMatrix::identity(rs.rank()),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntegerMatrix {
        &self.basis
    }

    /// `[P : T^*]`.
    pub fn index_in_weight_lattice(&self) -> BigUint {
        self.basis.determinant().expect("square").magnitude().clone()
    }

    /// Coordinates of a weight (fundamental-weight coordinates) in this
    /// lattice's basis, or `None` if it is not a character.
    pub fn coords_of(&self, weight: &[i64]) -> Result<Option<Vec<i64>>> {
        let target: Vec<BigInt> = weight.iter().map(|&x| BigInt::from(x)).collect();
        Ok(intlat::solve_left(&self.basis, &target)?.map(|c| c.iter().map(|x| intlat::to_i64(x).expect("coordinates fit in i64")).collect()))
    }

    pub fn contains(&self, weight: &[i64]) -> bool {
        matches!(self.coords_of(weight), Ok(Some(_)))
    }

    /// Inverse of [`Self::coords_of`].
    pub fn to_weight(&self, coords: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|j| {
                let s: BigInt = coords.iter().enumerate().map(|(i, &c)| self.basis.get(i, j) * c).sum();
                intlat::to_i64(&s).expect("weight fits in i64")
            })
            .collect()
    }

    /// `Q <= T^* <= P`.
    pub fn is_between_root_and_weight_lattice(&self, rs: &RootSystem) -> bool {
        rs.cartan().iter().all(|row| self.contains(row))
    }
}

/// Character lattice of `HSpin_n`: `Q` plus the last fundamental weight of `D_{n/2}`.
pub fn half_spin_lattice(n: usize) -> Result<CharacterLattice> {
    if !n.is_multiple_of(4) || n < 12 {
        return Err(Error::Domain(format!("HSpin_{n} needs n divisible by 4 and n >= 12")));
    }
    let rs = RootSystem::build(DynkinType::new(Family::D, n / 2)?);
    Ok(half_spin_lattice_of(&rs))
}

fn half_spin_lattice_of(rs: &RootSystem) -> CharacterLattice {
    let m = rs.rank();
    let mut gens: Vec<Vec<BigInt>> = rs
        .cartan()
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut spin = vec![BigInt::from(0); m];
    spin[m - 1] = BigInt::from(1);
    gens.push(spin);
    let rows = intlat::hnf_rows(&gens, m);
    CharacterLattice {
        ty: rs.dynkin_type(),
        kind: LatticeKind::HalfSpin,
        basis: IntegerMatrix::from_big_rows(&rows, m).expect("rows have length m"),
    }
}

/// Weights of a representation in `T^*` coordinates with multiplicities.
#[derive(Clone, Debug)]
pub struct WeightMultiset {
    pub lattice: CharacterLattice,
    weights: Vec<Vec<i64>>,
    multiplicities: Vec<u32>,
}

impl WeightMultiset {
    /// Collects weights given in fundamental-weight coordinates.
    pub fn from_weights(lattice: CharacterLattice, weights: &[Vec<i64>]) -> Result<Self> {
        let mut counts: BTreeMap<Vec<i64>, u32> = BTreeMap::new();
        let mut order = Vec::new();
        for w in weights {
            if w.len() != lattice.rank() {
                return Err(Error::Dimension(format!(
                    "weight of length {} in rank {}",
                    w.len(),
                    lattice.rank()
                )));
            }
            let c = lattice
                .coords_of(w)?
                .ok_or_else(|| Error::Domain(format!("{w:?} is not in the {} lattice", lattice.kind)))?;
            let e = counts.entry(c.clone()).or_insert(0);
            if *e == 0 {
                order.push(c);
            }
            *e += 1;
        }
        let multiplicities = order.iter().map(|c| counts[c]).collect();
        Ok(WeightMultiset {
            lattice,
            weights: order,
            multiplicities,
        })
    }

    /// Weights in `T^*` coordinates, each listed once.
    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    /// Number of distinct weights.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Dimension counted with multiplicity.
    pub fn dim(&self) -> u64 {
        self.multiplicities.iter().map(|&m| m as u64).sum()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.multiplicities.iter().all(|&m| m == 1)
    }

    pub fn contains_zero(&self) -> bool {
        self.weights.iter().any(|w| w.iter().all(|&x| x == 0))
    }

    /// Weights in fundamental-weight coordinates.
    pub fn weights_in_weight_coords(&self) -> Vec<Vec<i64>> {
        self.weights.iter().map(|c| self.lattice.to_weight(c)).collect()
    }

    /// Whether every simple reflection permutes the multiset.
    pub fn is_weyl_stable(&self, rs: &RootSystem) -> bool {
        let omega = self.weights_in_weight_coords();
        let table: BTreeMap<&[i64], u32> = omega
            .iter()
            .map(Vec::as_slice)
            .zip(self.multiplicities.iter().copied())
            .collect();
        (0..rs.rank()).all(|i| {
            omega.iter().zip(&self.multiplicities).all(|(w, &m)| {
                let img = rs.reflect_weight(i, w);
                table.get(img.as_slice()) == Some(&m)
            })
        })
    }
}

/// The nonzero weights of the Weyl module with highest weight the highest
/// short root: the short roots, in the adjoint lattice.
pub fn short_root_module(rs: &RootSystem) -> WeightMultiset {
    let lattice = CharacterLattice::adjoint(rs);
    let weights: Vec<Vec<i64>> = rs
        .short_root_indices()
        .into_iter()
        .map(|i| rs.root_to_weight(&rs.roots()[i]))
        .collect();
    let m = WeightMultiset::from_weights(lattice, &weights).expect("roots lie in Q");
    assert!(m.is_multiplicity_free());
    m
}

fn is_supported_minuscule(ty: DynkinType, index: usize) -> bool {
    match (ty.family, ty.rank) {
        (Family::E, 6) => index == 1 || index == 6,
        (Family::E, 7) => index == 7,
        (Family::D, n) => index == n || index == n - 1,
        _ => false,
    }
}

/// The orbit of a minuscule fundamental weight (1-based index) in `P`.
pub fn minuscule_module(rs: &RootSystem, fundamental_index: usize) -> Result<WeightMultiset> {
    minuscule_in(rs, fundamental_index, CharacterLattice::simply_connected(rs))
}

fn minuscule_in(rs: &RootSystem, fundamental_index: usize, lattice: CharacterLattice) -> Result<WeightMultiset> {
    let ty = rs.dynkin_type();
    if fundamental_index == 0 || fundamental_index > rs.rank() || !is_supported_minuscule(ty, fundamental_index) {
        return Err(Error::Domain(format!(
            "omega_{fundamental_index} of {} is not a supported minuscule weight (E6: 1, 6; E7: 7; D_n: n-1, n)",
            rs.label()
        )));
    }
    let mut start = vec![0i64; rs.rank()];
    start[fundamental_index - 1] = 1;
    let orbit = weyl::orbit(rs, &start)?;
    let m = WeightMultiset::from_weights(lattice, &orbit)?;
    assert!(m.is_multiplicity_free());
    Ok(m)
}

/// The half-spin representation of `HSpin_n` in its own character lattice.
pub fn half_spin_module(n: usize) -> Result<(RootSystem, WeightMultiset)> {
    let lattice = half_spin_lattice(n)?;
    let rs = RootSystem::build(lattice.ty);
    let m = rs.rank();
    let module = minuscule_in(&rs, m, lattice)?;
    Ok((rs, module))
}

/// `dim L(omega_2)` for `Sp_{2n}` in characteristic `p` (0 allowed).
pub fn c_lambda2_dim(n: u64, p: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Domain(format!("n = {n} is below 2")));
    }
    let wedge2 = 2 * n * n - n;
    Ok(if p != 0 && n.is_multiple_of(p) { wedge2 - 2 } else { wedge2 - 1 })
}

/// Dimension of the faithful representation of `Spin_n` used for the
/// generic bound: spin for odd `n`, vector plus half-spin for even `n`.
pub fn spin_faithful_dim(n: u64) -> Result<u64> {
    if n < 7 {
        return Err(Error::Domain(format!("Spin_{n} is outside the range n >= 7")));
    }
    Ok(if n % 2 == 1 { 1 << ((n - 1) / 2) } else { n + (1 << (n / 2 - 1)) })
}

/// `[P : T^*]` computed from the Smith form of the basis, independent of the
/// determinant path.
pub fn lattice_index_by_snf(lattice: &CharacterLattice) -> Result<BigUint> {
    let s = intlat::snf(lattice.basis())?;
    Ok(s.invariant_factors().iter().map(|d| d.abs().magnitude().clone()).product())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    #[test]
    fn short_root_module_sizes() {
        assert_eq!(short_root_module(&rs("F4")).len(), 24);
        assert_eq!(short_root_module(&rs("E8")).len(), 240);
        let a1 = short_root_module(&rs("A1"));
        assert_eq!(a1.weights(), &[vec![1], vec![-1]]);
    }

    #[test]
    fn minuscule_sizes() {
        assert_eq!(minuscule_module(&rs("E6"), 1).unwrap().len(), 27);
        assert_eq!(minuscule_module(&rs("E6"), 6).unwrap().len(), 27);
        assert_eq!(minuscule_module(&rs("E7"), 7).unwrap().len(), 56);
        assert_eq!(minuscule_module(&rs("D6"), 6).unwrap().len(), 32);
        assert!(minuscule_module(&rs("D4"), 1).is_err());
        assert!(minuscule_module(&rs("E8"), 8).is_err());
        assert!(minuscule_module(&rs("E7"), 1).is_err());
    }

    #[test]
    fn modules_are_weyl_stable() {
        for (label, idx) in [("E6", 1), ("E7", 7), ("D5", 4)] {
            let r = rs(label);
            assert!(minuscule_module(&r, idx).unwrap().is_weyl_stable(&r));
        }
        for label in ["B3", "C4", "G2", "F4"] {
            let r = rs(label);
            assert!(short_root_module(&r).is_weyl_stable(&r));
        }
    }

    #[test]
    fn lattice_indices() {
        for n in [12, 16] {
            let l = half_spin_lattice(n).unwrap();
            assert_eq!(l.rank(), n / 2);
            assert_eq!(lattice_index_by_snf(&l).unwrap(), BigUint::from(2u32));
            assert_eq!(l.index_in_weight_lattice(), BigUint::from(2u32));
            let r = RootSystem::build(l.ty);
            assert!(l.is_between_root_and_weight_lattice(&r));
        }
        assert!(half_spin_lattice(10).is_err());
        assert!(half_spin_lattice(8).is_err());
        let e6 = rs("E6");
        assert_eq!(CharacterLattice::adjoint(&e6).index_in_weight_lattice(), BigUint::from(3u32));
    }

    #[test]
    fn half_spin_module_lives_in_its_lattice() {
        let (r, m) = half_spin_module(12).unwrap();
        assert_eq!(m.len(), 32);
        assert!(m.is_weyl_stable(&r));
        // the other half-spin weight is not a character
        let mut other = vec![0i64; 6];
        other[4] = 1;
        assert!(!m.lattice.contains(&other));
    }

    #[test]
    fn lambda2_dims() {
        assert_eq!(c_lambda2_dim(4, 3).unwrap(), 27);
        assert_eq!(c_lambda2_dim(4, 2).unwrap(), 26);
        assert_eq!(c_lambda2_dim(5, 5).unwrap(), 43);
        assert_eq!(c_lambda2_dim(5, 0).unwrap(), 44);
    }

    #[test]
    fn spin_dims() {
        assert_eq!(spin_faithful_dim(7).unwrap(), 8);
        assert_eq!(spin_faithful_dim(8).unwrap(), 16);
        assert_eq!(spin_faithful_dim(13).unwrap(), 64);
        assert_eq!(spin_faithful_dim(14).unwrap(), 78);
        assert!(spin_faithful_dim(6).is_err());
    }
}
