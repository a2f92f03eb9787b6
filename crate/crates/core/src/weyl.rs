//! Weyl groups as permutation groups on the root set.
//!
//! An element is stored as the permutation it induces on the roots; this is
//! faithful because the roots span. The integer matrix on the root-lattice
//! basis is derived on demand from the images of the simple roots.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::intlat::IntegerMatrix;
use crate::perm::Perm;
use crate::rootsys::{Family, RootSystem};
use crate::schreier::StabChain;

/// Default cap for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Perm,
    word: Option<Vec<usize>>,
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        WeylElement {
            perm: Perm::identity(rs.num_roots()),
            word: Some(Vec::new()),
        }
    }

    /// `-1` on the root lattice; in the Weyl group only for some types.
    pub fn minus_one(rs: &RootSystem) -> Self {
        let images = (0..rs.num_roots()).map(|i| rs.negative_index(i)).collect();
        WeylElement {
            perm: Perm::from_images(images).expect("negation is a bijection"),
            word: None,
        }
    }

    pub fn from_perm(perm: Perm) -> Self {
        WeylElement { perm, word: None }
    }

    /// Product of simple reflections (0-based indices), applied right to left
    /// as a word `s_{w[0]} s_{w[1]} ...`.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        let mut acc = Perm::identity(rs.num_roots());
        for &i in word.iter().rev() {
            let s = simple_reflection(rs, i + 1)?;
            acc = &acc * &s.perm;
        }
        Ok(WeylElement {
            perm: acc,
            word: Some(word.to_vec()),
        })
    }

    /// Builds an element from a linear map on epsilon coordinates, for the
    /// classical families.
    pub fn from_epsilon_map<F: Fn(&[i64]) -> Vec<i64>>(rs: &RootSystem, f: F) -> Result<Self> {
        let eps: Vec<Vec<i64>> = rs
            .roots()
            .iter()
            .map(|r| rs.to_epsilon(r))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Domain(format!("{} has no epsilon embedding", rs.label())))?;
        let lookup: HashMap<&[i64], usize> = eps.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
        let images = eps
            .iter()
            .map(|e| {
                lookup
                    .get(f(e).as_slice())
                    .copied()
                    .ok_or_else(|| Error::Domain("map does not preserve the root set".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WeylElement {
            perm: Perm::from_images(images).ok_or_else(|| Error::Domain("map is not a bijection".into()))?,
            word: None,
        })
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn word(&self) -> Option<&[usize]> {
        self.word.as_deref()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity()
    }

    /// `self` then `other` (left-to-right composition of the actions).
    pub fn then(&self, other: &Self) -> Self {
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) => Some(b.iter().chain(a).copied().collect()),
            _ => None,
        };
        WeylElement {
            perm: &self.perm * &other.perm,
            word,
        }
    }

    pub fn inverse(&self) -> Self {
        WeylElement {
            perm: self.perm.inverse(),
            word: self.word.as_ref().map(|w| w.iter().rev().copied().collect()),
        }
    }

    pub fn order(&self) -> u64 {
        self.perm.order()
    }

    /// Matrix on the root-lattice basis; column `j` is the image of `alpha_j`.
    pub fn matrix(&self, rs: &RootSystem) -> IntegerMatrix {
        let n = rs.rank();
        let mut rows = vec![vec![0i64; n]; n];
        for j in 0..n {
            let img = &rs.roots()[self.perm.image(j)];
            for i in 0..n {
                rows[i][j] = img[i];
            }
        }
        IntegerMatrix::from_rows(&rows).expect("square")
    }

    /// Image of a root-lattice vector.
    pub fn apply_root_coords(&self, rs: &RootSystem, v: &[i64]) -> Vec<i64> {
        let n = rs.rank();
        let mut out = vec![0i64; n];
        for (j, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let img = &rs.roots()[self.perm.image(j)];
            for i in 0..n {
                out[i] += c * img[i];
            }
        }
        out
    }

    /// Image of a weight given in fundamental-weight coordinates.
    pub fn apply_weight(&self, rs: &RootSystem, w: &[i64]) -> Vec<i64> {
        let scaled = rs.weight_to_scaled_root(w);
        rs.scaled_root_to_weight(&self.apply_root_coords(rs, &scaled))
    }
}

/// A reduced word for `w`, found by peeling off right descents.
///
/// Returns `None` when `w` is not in the Weyl group (for example `-1` in
/// types where it is not a Weyl element).
pub fn reduced_word(rs: &RootSystem, w: &WeylElement) -> Option<Vec<usize>> {
    let gens = simple_reflections(rs);
    let npos = rs.num_positive();
    let mut cur = w.perm.clone();
    let mut peeled = Vec::new();
    while let Some(i) = (0..rs.rank()).find(|&i| cur.image(i) >= npos) {
        cur = &gens[i].perm * &cur;
        peeled.push(i);
        if peeled.len() > npos {
            return None;
        }
    }
    if !cur.is_identity() {
        return None;
    }
    peeled.reverse();
    Some(peeled)
}

/// `s_i` for `1 <= i <= rank`.
pub fn simple_reflection(rs: &RootSystem, i: usize) -> Result<WeylElement> {
    if i == 0 || i > rs.rank() {
        return Err(Error::Domain(format!("simple reflection index {i} outside 1..={}", rs.rank())));
    }
    let k = i - 1;
    let images = rs
        .roots()
        .iter()
        .map(|r| rs.root_index(&rs.reflect_root(k, r)).expect("reflection permutes roots"))
        .collect();
    Ok(WeylElement {
        perm: Perm::from_images(images).expect("bijection"),
        word: Some(vec![k]),
    })
}

pub fn simple_reflections(rs: &RootSystem) -> Vec<WeylElement> {
    (1..=rs.rank()).map(|i| simple_reflection(rs, i).expect("in range")).collect()
}

/// Weyl orbit of a weight in fundamental-weight coordinates, in BFS order.
pub fn orbit(rs: &RootSystem, start: &[i64]) -> Result<Vec<Vec<i64>>> {
    if start.len() != rs.rank() {
        return Err(Error::Dimension(format!(
            "weight of length {} for rank {}",
            start.len(),
            rs.rank()
        )));
    }
    let mut seen: HashSet<Vec<i64>> = HashSet::from([start.to_vec()]);
    let mut out = vec![start.to_vec()];
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for i in 0..rs.rank() {
            if w[i] == 0 {
                continue;
            }
            let img = rs.reflect_weight(i, &w);
            if seen.insert(img.clone()) {
                out.push(img.clone());
                queue.push_back(img);
            }
        }
    }
    Ok(out)
}

/// A subgroup of `<W, -1>` with its stabilizer chain.
#[derive(Clone, Debug)]
pub struct GroupHandle {
    pub generators: Vec<WeylElement>,
    chain: StabChain,
}

impl GroupHandle {
    /// Subgroup generated by `generators`, acting on the roots.
    pub fn generated(rs: &RootSystem, generators: Vec<WeylElement>) -> Result<Self> {
        let perms: Vec<Perm> = generators.iter().map(|g| g.perm.clone()).collect();
        let base: Vec<usize> = (0..rs.rank()).collect();
        let chain = StabChain::new(rs.num_roots(), &perms, &base)?;
        Ok(GroupHandle {
            generators,
            chain,
        })
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    /// Membership by sifting.
    pub fn contains(&self, g: &WeylElement) -> bool {
        self.chain.contains(&g.perm)
    }

    /// Whether the group is elementary abelian of exponent 2 (the trivial group counts).
    pub fn is_elementary_abelian_2(&self) -> bool {
        self.generators.iter().all(|g| g.perm.pow(2).is_identity())
            && self
                .generators
                .iter()
                .enumerate()
                .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.perm.commutes_with(&b.perm)))
    }

    /// Every element, for small groups.
    pub fn elements(&self, limit: u64) -> Result<Vec<WeylElement>> {
        let order = self.order();
        if order > BigUint::from(limit) {
            return Err(Error::LimitExceeded { order, limit });
        }
        let mut out = Vec::with_capacity(order.to_usize().unwrap_or(0));
        self.chain.for_each_element(|_, p| {
            let images = p.iter().map(|&x| x as usize).collect();
            out.push(WeylElement::from_perm(Perm::from_images(images).expect("bijection")));
        });
        Ok(out)
    }
}

/// The Weyl group on its roots.
pub fn weyl_group(rs: &RootSystem) -> GroupHandle {
    GroupHandle::generated(rs, simple_reflections(rs)).expect("simple roots form a complete base")
}

/// `<W, -1>`: equal to `W` when `-1` is already a Weyl element.
pub fn extended_weyl_group(rs: &RootSystem) -> GroupHandle {
    let mut gens = simple_reflections(rs);
    if !rs.has_minus_one() {
        gens.push(WeylElement::minus_one(rs));
    }
    GroupHandle::generated(rs, gens).expect("simple roots form a complete base")
}

pub fn order(group: &GroupHandle) -> BigUint {
    group.order()
}

/// Closed-form order of `W` by type.
pub fn closed_form_order(rs: &RootSystem) -> BigUint {
    let n = rs.rank() as u64;
    let fact = |k: u64| (1..=k).fold(BigUint::one(), |a, x| a * x);
    let ty = rs.dynkin_type();
    match ty.family {
        Family::A => fact(n + 1),
        Family::B | Family::C => (BigUint::one() << n as usize) * fact(n),
        Family::D => (BigUint::one() << (n - 1) as usize) * fact(n),
        Family::E => BigUint::from(match n {
            6 => 51_840u64,
            7 => 2_903_040,
            _ => 696_729_600,
        }),
        Family::F => BigUint::from(1152u32),
        Family::G => BigUint::from(12u32),
    }
}

/// Every element of `W` by breadth-first search over right multiplication by
/// simple reflections, deduplicated by root permutation. Words are reduced.
pub fn enumerate(rs: &RootSystem, limit: u64) -> Result<Vec<WeylElement>> {
    let order = weyl_group(rs).order();
    if order > BigUint::from(limit) {
        return Err(Error::LimitExceeded { order, limit });
    }
    let gens = simple_reflections(rs);
    let id = WeylElement::identity(rs);
    let mut seen: HashSet<Perm> = HashSet::from([id.perm.clone()]);
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let cur = out[head].clone();
        for (i, s) in gens.iter().enumerate() {
            // cur * s_i as a word: s_i acts first
            let perm = &s.perm * &cur.perm;
            if seen.insert(perm.clone()) {
                let mut word = cur.word.clone().unwrap_or_default();
                word.push(i);
                out.push(WeylElement { perm, word: Some(word) });
            }
        }
        head += 1;
    }
    Ok(out)
}

/// Result of [`kernel_mod_p`].
#[derive(Clone, Debug)]
pub struct ModPKernel {
    pub p: u32,
    pub include_minus_one: bool,
    pub kernel: GroupHandle,
    pub order: BigUint,
    pub elementary_abelian_2: bool,
    pub contains_minus_one: bool,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Kernel of `<W, -1>` (or of `W`) acting on `Q (x) F_p`.
///
/// The group acts on the union of the reduced root images (which span
/// `Q (x) F_p`) and the roots. The chain's base starts with the reductions
/// of the simple roots, so the kernel is the stabilizer after those levels.
pub fn kernel_mod_p(rs: &RootSystem, p: u32, include_minus_one: bool) -> Result<ModPKernel> {
    if !is_prime(p as u64) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let pm = p as i64;
    let reduce = |v: &[i64]| -> Vec<i64> { v.iter().map(|x| x.rem_euclid(pm)).collect() };
    let mut points: Vec<Vec<i64>> = Vec::new();
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    for r in rs.roots() {
        let red = reduce(r);
        if !index.contains_key(&red) {
            index.insert(red.clone(), points.len());
            points.push(red);
        }
    }
    let m = points.len();
    let nroots = rs.num_roots();

    let mut gens = simple_reflections(rs);
    if include_minus_one && !rs.has_minus_one() {
        gens.push(WeylElement::minus_one(rs));
    }
    let lift = |g: &WeylElement| -> Perm {
        let mut images = Vec::with_capacity(m + nroots);
        for pt in &points {
            let img = reduce(&g.apply_root_coords(rs, pt));
            images.push(*index.get(&img).expect("root images are closed under W"));
        }
        images.extend((0..nroots).map(|i| m + g.perm.image(i)));
        Perm::from_images(images).expect("bijection")
    };
    let perms: Vec<Perm> = gens.iter().map(lift).collect();
    let mut base: Vec<usize> = (0..rs.rank()).map(|i| index[&reduce(&rs.roots()[i])]).collect();
    base.extend((0..rs.rank()).map(|i| m + i));
    let chain = StabChain::new(m + nroots, &perms, &base)?;

    let kernel_gens: Vec<WeylElement> = chain
        .stabilizer_generators(rs.rank())
        .iter()
        .map(|g| {
            let images = g.images()[m..].iter().map(|&x| x as usize - m).collect();
            WeylElement::from_perm(Perm::from_images(images).expect("roots are invariant"))
        })
        .collect();
    let kernel = GroupHandle::generated(rs, kernel_gens)?;
    let order = kernel.order();
    debug_assert_eq!(order, chain.stabilizer_order(rs.rank()));
    let elementary_abelian_2 = kernel.is_elementary_abelian_2();
    let contains_minus_one = kernel.contains(&WeylElement::minus_one(rs));
    Ok(ModPKernel {
        p,
        include_minus_one,
        kernel,
        order,
        elementary_abelian_2,
        contains_minus_one,
    })
}

/// Even sign changes of the epsilon coordinates, for types B, C and D.
pub fn sign_flip_subgroup(rs: &RootSystem) -> Result<GroupHandle> {
    let fam = rs.dynkin_type().family;
    if !matches!(fam, Family::B | Family::C | Family::D) {
        return Err(Error::Domain(format!("{} is not of type B, C or D", rs.label())));
    }
    let n = rs.rank();
    let gens = (1..n)
        .map(|k| double_sign_flip(rs, 0, k))
        .collect::<Result<Vec<_>>>()?;
    GroupHandle::generated(rs, gens)
}

/// The element negating `epsilon_i` and `epsilon_j` (0-based).
pub fn double_sign_flip(rs: &RootSystem, i: usize, j: usize) -> Result<WeylElement> {
    WeylElement::from_epsilon_map(rs, |e| {
        let mut out = e.to_vec();
        out[i] = -out[i];
        out[j] = -out[j];
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    #[test]
    fn a1_reflection_is_minus_one() {
        let r = rs("A1");
        let s = simple_reflection(&r, 1).unwrap();
        assert_eq!(s.matrix(&r), IntegerMatrix::from_rows(&[[-1]]).unwrap());
        assert_eq!(s, WeylElement::minus_one(&r).then(&WeylElement::identity(&r)).with_word(vec![0]));
    }

    impl WeylElement {
        fn with_word(mut self, w: Vec<usize>) -> Self {
            self.word = Some(w);
            self
        }
    }

    #[test]
    fn reflections_are_involutions() {
        for label in ["A3", "B4", "C3", "D5", "E6", "F4", "G2"] {
            let r = rs(label);
            for s in simple_reflections(&r) {
                assert!(s.then(&s).is_identity(), "{label}");
                assert!(!s.is_identity());
            }
        }
        assert!(simple_reflection(&rs("A2"), 0).is_err());
        assert!(simple_reflection(&rs("A2"), 3).is_err());
    }

    #[test]
    fn a2_braid() {
        let r = rs("A2");
        let g = WeylElement::from_word(&r, &[0, 1]).unwrap();
        assert_eq!(g.order(), 3);
        let m = g.matrix(&r);
        let m3 = m.mul(&m).unwrap().mul(&m).unwrap();
        assert_eq!(m3, IntegerMatrix::identity(2));
    }

    #[test]
    fn matrix_and_perm_agree() {
        for label in ["B3", "G2", "E6"] {
            let r = rs(label);
            for g in enumerate(&r, 100_000).unwrap().iter().step_by(7) {
                for (i, root) in r.roots().iter().enumerate() {
                    assert_eq!(g.apply_root_coords(&r, root), r.roots()[g.perm().image(i)]);
                }
                let det = g.matrix(&r).determinant().unwrap();
                assert!(crate::intlat::is_unit(&det));
            }
        }
    }

    #[test]
    fn word_matches_permutation() {
        let r = rs("A3");
        for g in enumerate(&r, 100).unwrap() {
            let rebuilt = WeylElement::from_word(&r, g.word().unwrap()).unwrap();
            assert_eq!(rebuilt.perm(), g.perm());
        }
    }

    #[test]
    fn reduced_words() {
        let r = rs("B3");
        for g in enumerate(&r, 100).unwrap() {
            let w = reduced_word(&r, &g).unwrap();
            assert_eq!(w.len(), g.word().unwrap().len());
            assert_eq!(WeylElement::from_word(&r, &w).unwrap().perm(), g.perm());
        }
        let a2 = rs("A2");
        assert!(reduced_word(&a2, &WeylElement::minus_one(&a2)).is_none());
        let e7 = rs("E7");
        assert_eq!(reduced_word(&e7, &WeylElement::minus_one(&e7)).unwrap().len(), 63);
    }

    #[test]
    fn orbit_examples() {
        let e6 = rs("E6");
        assert_eq!(orbit(&e6, &[1, 0, 0, 0, 0, 0]).unwrap().len(), 27);
        let e7 = rs("E7");
        assert_eq!(orbit(&e7, &[0, 0, 0, 0, 0, 0, 1]).unwrap().len(), 56);
        let a1 = rs("A1");
        assert_eq!(orbit(&a1, &[2]).unwrap(), vec![vec![2], vec![-2]]);
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate(&rs("A2"), 100).unwrap().len(), 6);
        assert_eq!(enumerate(&rs("F4"), 10_000).unwrap().len(), 1152);
        match enumerate(&rs("E8"), DEFAULT_ENUMERATION_LIMIT) {
            Err(Error::LimitExceeded { order, .. }) => assert_eq!(order, BigUint::from(696_729_600u64)),
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn orders() {
        assert_eq!(weyl_group(&rs("B4")).order(), BigUint::from(384u32));
        assert_eq!(weyl_group(&rs("E7")).order(), BigUint::from(2_903_040u32));
        let trivial = GroupHandle::generated(&rs("E6"), vec![]).unwrap();
        assert_eq!(trivial.order(), BigUint::one());
    }

    #[test]
    fn kernel_mod_p_examples() {
        let k = kernel_mod_p(&rs("B4"), 2, true).unwrap();
        assert_eq!(k.order, BigUint::from(16u32));
        assert!(k.elementary_abelian_2);

        let k = kernel_mod_p(&rs("A2"), 2, true).unwrap();
        assert_eq!(k.order, BigUint::from(2u32));
        assert!(k.contains_minus_one);

        let k = kernel_mod_p(&rs("E6"), 3, true).unwrap();
        assert_eq!(k.order, BigUint::one());

        assert!(matches!(kernel_mod_p(&rs("A2"), 4, true), Err(Error::Domain(_))));
    }

    #[test]
    fn sign_flips() {
        assert_eq!(sign_flip_subgroup(&rs("C3")).unwrap().order(), BigUint::from(4u32));
        assert_eq!(sign_flip_subgroup(&rs("D4")).unwrap().order(), BigUint::from(8u32));
        assert_eq!(sign_flip_subgroup(&rs("B2")).unwrap().order(), BigUint::from(2u32));
        assert!(sign_flip_subgroup(&rs("E6")).is_err());
        let g = sign_flip_subgroup(&rs("C3")).unwrap();
        assert!(g.is_elementary_abelian_2());
        let w = weyl_group(&rs("C3"));
        assert!(g.generators.iter().all(|x| w.contains(x)));
    }
}
