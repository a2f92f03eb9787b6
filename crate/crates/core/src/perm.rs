//! Permutations of `0..n` stored as image arrays.
//!
//! Products compose left to right: `(p * q)(x) = q(p(x))`.

use std::fmt;
use std::ops::Mul;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u16]>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= u16::MAX as usize + 1, "degree {n} too large");
        Perm((0..n).map(|i| i as u16).collect())
    }

    /// Builds from an image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(Perm(images.into_iter().map(|x| x as u16).collect()))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm(inv.into_boxed_slice())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Element order (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        cycle_lengths(&self.0).into_iter().fold(1u64, |acc, l| num_integer::lcm(acc, l as u64))
    }

    /// Restriction to the first `n` points, which must be an invariant set.
    pub fn restrict(&self, n: usize) -> Option<Self> {
        let head = &self.0[..n];
        if head.iter().all(|&x| (x as usize) < n) {
            Some(Perm(head.into()))
        } else {
            None
        }
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        (self * other) == (other * self)
    }
}

impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), rhs.degree());
        Perm(self.0.iter().map(|&x| rhs.0[x as usize]).collect())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

/// `out = p * q` on raw image slices.
#[inline]
pub fn compose_into(p: &[u16], q: &[u16], out: &mut [u16]) {
    for (o, &x) in out.iter_mut().zip(p) {
        *o = q[x as usize];
    }
}

/// Lengths of all cycles, fixed points included.
pub fn cycle_lengths(images: &[u16]) -> Vec<usize> {
    let mut seen = vec![false; images.len()];
    let mut out = Vec::new();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x] as usize;
            len += 1;
        }
        out.push(len);
    }
    out
}

/// Number of cycles, fixed points included.
pub fn cycle_count(images: &[u16], scratch: &mut Vec<bool>) -> usize {
    scratch.clear();
    scratch.resize(images.len(), false);
    let mut count = 0;
    for start in 0..images.len() {
        if scratch[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        while !scratch[x] {
            scratch[x] = true;
            x = images[x] as usize;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_to_right() {
        let p = Perm::from_images(vec![1, 2, 0]).unwrap();
        let q = Perm::from_images(vec![1, 0, 2]).unwrap();
        // 0 -p-> 1 -q-> 0
        assert_eq!((&p * &q).image(0), 0);
        assert_eq!((&p * &p.inverse()), Perm::identity(3));
        assert_eq!(p.order(), 3);
        assert_eq!(p.pow(3), Perm::identity(3));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0]).is_none());
        assert!(Perm::from_images(vec![2, 0]).is_none());
    }

    #[test]
    fn cycles() {
        let p = Perm::from_images(vec![1, 0, 2, 4, 5, 3]).unwrap();
        let mut lens = cycle_lengths(p.images());
        lens.sort();
        assert_eq!(lens, vec![1, 2, 3]);
        let mut scratch = Vec::new();
        assert_eq!(cycle_count(p.images(), &mut scratch), 3);
    }
}
