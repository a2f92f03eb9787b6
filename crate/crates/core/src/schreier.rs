//! Stabilizer chains (base and strong generating set) by deterministic
//! Schreier–Sims over a caller-supplied complete base.
//!
//! A base is complete when the only group element fixing every base point is
//! the identity. Weyl groups acting on roots use the simple-root indices,
//! which always qualifies.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `transversal[x] = u` with `point^u = x`.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut l = Level {
            point,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
        };
        l.rebuild_orbit(degree);
        l
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.point] = Some(Perm::identity(degree));
        self.orbit = vec![self.point];
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for g in &self.gens {
                let y = g.image(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().expect("orbit point") * g;
                    self.transversal[y] = Some(u);
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Runs Schreier–Sims for `<generators>` with the given base.
    ///
    /// Fails if the base turns out not to be complete for the group.
    pub fn new(degree: usize, generators: &[Perm], base: &[usize]) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::Dimension("generator degree mismatch".into()));
        }
        if base.iter().any(|&b| b >= degree) {
            return Err(Error::Dimension("base point out of range".into()));
        }
        let mut chain = StabChain {
            degree,
            levels: base.iter().map(|&b| Level::new(b, degree)).collect(),
        };
        for g in generators {
            if !g.is_identity() {
                chain.add_to_levels(g.clone());
            }
        }
        chain.complete()?;
        Ok(chain)
    }

    /// Adds `g` to every level whose earlier base points it fixes.
    fn add_to_levels(&mut self, g: Perm) {
        for i in 0..self.levels.len() {
            self.levels[i].gens.push(g.clone());
            self.levels[i].rebuild_orbit(self.degree);
            if g.image(self.levels[i].point) != self.levels[i].point {
                break;
            }
        }
    }

    fn complete(&mut self) -> Result<()> {
        let k = self.levels.len();
        if k == 0 {
            return Ok(());
        }
        let mut i = k as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            match self.find_bad_schreier_generator(lvl) {
                None => i -= 1,
                Some((residue, drop)) => {
                    if drop == k {
                        return Err(Error::Domain(
                            "base is not complete: a nonidentity element fixes every base point".into(),
                        ));
                    }
                    for l in lvl + 1..=drop {
                        self.levels[l].gens.push(residue.clone());
                        self.levels[l].rebuild_orbit(self.degree);
                    }
                    i = drop as isize;
                }
            }
        }
        Ok(())
    }

    fn find_bad_schreier_generator(&self, lvl: usize) -> Option<(Perm, usize)> {
        let level = &self.levels[lvl];
        for &x in &level.orbit {
            let ux = level.transversal[x].as_ref().expect("orbit point");
            for s in &level.gens {
                let y = s.image(x);
                let uy = level.transversal[y].as_ref().expect("orbit is closed");
                let h = &(ux * s) * &uy.inverse();
                if h.is_identity() {
                    continue;
                }
                let (residue, drop) = self.strip_from(h, lvl + 1);
                if !residue.is_identity() {
                    return Some((residue, drop));
                }
            }
        }
        None
    }

    /// Sifts `g` starting at `start`; returns the residue and the level at
    /// which sifting stopped (`levels.len()` if it went all the way).
    fn strip_from(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let b = g.image(level.point);
            match &level.transversal[b] {
                Some(u) => g = &g * &u.inverse(),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && {
            let (r, _) = self.strip_from(g.clone(), 0);
            r.is_identity()
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Fundamental orbit lengths, one per base point.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.orbit_lengths().iter().fold(BigUint::one(), |acc, &l| acc * BigUint::from(l))
    }

    /// Order of the pointwise stabilizer of the first `level` base points.
    pub fn stabilizer_order(&self, level: usize) -> BigUint {
        self.orbit_lengths()[level..].iter().fold(BigUint::one(), |acc, &l| acc * BigUint::from(l))
    }

    /// Strong generators of the pointwise stabilizer of the first `level`
    /// base points. These generate that stabilizer.
    pub fn stabilizer_generators(&self, level: usize) -> Vec<Perm> {
        if level >= self.levels.len() {
            return Vec::new();
        }
        self.levels[level].gens.clone()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.stabilizer_generators(0)
    }

    /// Transversal elements of `level` in orbit order.
    pub fn transversal(&self, level: usize) -> Vec<Perm> {
        let l = &self.levels[level];
        l.orbit.iter().map(|&x| l.transversal[x].clone().expect("orbit point")).collect()
    }

    /// Uniformly random element: a product of random transversal elements.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for l in self.levels.iter().rev() {
            let x = l.orbit[rng.gen_range(0..l.orbit.len())];
            g = &g * l.transversal[x].as_ref().expect("orbit point");
        }
        g
    }

    /// Calls `f(index, element)` for every group element, where `index` is the
    /// mixed-radix position of the element. Elements are produced as
    /// `v_0 * v_1 * ... * v_{k-1}` with `v_i` the inverse transversal
    /// elements, which runs over the whole group exactly once.
    pub fn for_each_element<F: FnMut(u64, &[u16])>(&self, mut f: F) {
        let inv: Vec<Vec<Perm>> = (0..self.levels.len())
            .map(|i| self.transversal(i).iter().map(Perm::inverse).collect())
            .collect();
        let id = Perm::identity(self.degree);
        let mut index = 0u64;
        self.walk(&inv, 0, id.images(), &mut index, &mut f);
    }

    fn walk<F: FnMut(u64, &[u16])>(&self, inv: &[Vec<Perm>], depth: usize, prefix: &[u16], index: &mut u64, f: &mut F) {
        if depth == inv.len() {
            f(*index, prefix);
            *index += 1;
            return;
        }
        let mut buf = vec![0u16; self.degree];
        for v in &inv[depth] {
            crate::perm::compose_into(prefix, v.images(), &mut buf);
            self.walk(inv, depth + 1, &buf, index, f);
        }
    }

    /// Inverse transversals, for callers that drive the enumeration themselves.
    pub fn inverse_transversals(&self) -> Vec<Vec<Perm>> {
        (0..self.levels.len())
            .map(|i| self.transversal(i).iter().map(Perm::inverse).collect())
            .collect()
    }
}

/// Normal closure of `seeds` in the group generated by `group_gens`.
pub fn normal_closure(degree: usize, group_gens: &[Perm], seeds: &[Perm], base: &[usize]) -> Result<StabChain> {
    let mut gens: Vec<Perm> = seeds.iter().filter(|g| !g.is_identity()).cloned().collect();
    let mut chain = StabChain::new(degree, &gens, base)?;
    let mut i = 0;
    while i < gens.len() {
        let n = gens[i].clone();
        for g in group_gens {
            let c = &(&g.inverse() * &n) * g;
            if !chain.contains(&c) {
                gens.push(c);
                chain = StabChain::new(degree, &gens, base)?;
            }
        }
        i += 1;
    }
    Ok(chain)
}
