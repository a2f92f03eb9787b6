#![allow(dead_code)]

use edim_core::edbounds::{self, GroupDescriptor};
use edim_core::genfree;
use edim_core::intlat::{self, IntegerMatrix};
use edim_core::rootsys::{self, DynkinType, Family, RootSystem};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

pub fn random_matrix(rng: &mut impl Rng, max_dim: usize, max_entry: i64) -> Vec<Vec<i64>> {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    (0..r)
        .map(|_| (0..c).map(|_| rng.gen_range(-max_entry..=max_entry)).collect())
        .collect()
}

fn naive_det(m: &[Vec<BigInt>]) -> BigInt {
    // cofactor expansion; the matrices here are at most 6 x 6
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * naive_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn rows_of(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// `U A V = D`, `U` and `V` unimodular, `D` diagonal, nonnegative, with
/// each invariant factor dividing the next.
pub fn check_snf(a: &[Vec<i64>]) -> Check {
    let m = IntegerMatrix::from_rows(a).map_err(|e| e.to_string())?;
    let s = intlat::snf(&m).map_err(|e| e.to_string())?;
    let big: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let (u, v, d) = (rows_of(&s.u), rows_of(&s.v), rows_of(&s.d));
    for (name, x) in [("U", &u), ("V", &v)] {
        if !naive_det(x).abs().is_one() {
            return Err(format!("{name} is not unimodular for {a:?}"));
        }
    }
    if mat_mul(&mat_mul(&u, &big), &v) != d {
        return Err(format!("U A V != D for {a:?}"));
    }
    let mut diag = Vec::new();
    for (i, row) in d.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j && !x.is_zero() {
                return Err(format!("off-diagonal entry in D for {a:?}"));
            }
            if i == j {
                if x.is_negative() {
                    return Err(format!("negative invariant factor for {a:?}"));
                }
                diag.push(x.clone());
            }
        }
    }
    for w in diag.windows(2) {
        let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
        if !ok {
            return Err(format!("divisibility chain broken for {a:?}: {diag:?}"));
        }
    }
    Ok(())
}

pub fn snf_fuzz(count: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        check_snf(&random_matrix(&mut rng, 5, 9))?;
    }
    Ok(())
}

/// The kernel basis is annihilated by `A`, has the right size, and spans a
/// saturated sublattice (all invariant factors of the basis equal 1).
pub fn check_kernel(a: &[Vec<i64>]) -> Check {
    let m = IntegerMatrix::from_rows(a).map_err(|e| e.to_string())?;
    let k = intlat::kernel_basis(&m).map_err(|e| e.to_string())?;
    let rank = intlat::snf(&m).map_err(|e| e.to_string())?.rank();
    let cols = a[0].len();
    if k.len() != cols - rank {
        return Err(format!("kernel of {a:?} has {} vectors, expected {}", k.len(), cols - rank));
    }
    for v in &k {
        for row in a {
            let dot: BigInt = row.iter().zip(v).map(|(&x, y)| BigInt::from(x) * y).sum();
            if !dot.is_zero() {
                return Err(format!("{v:?} is not in the kernel of {a:?}"));
            }
        }
    }
    if !k.is_empty() {
        let km = IntegerMatrix::from_big_rows(&k, cols).map_err(|e| e.to_string())?;
        let f = intlat::snf(&km).map_err(|e| e.to_string())?.invariant_factors();
        if f.len() != k.len() || !f.iter().all(|x| x.is_one()) {
            return Err(format!("kernel of {a:?} is not saturated: {f:?}"));
        }
    }
    Ok(())
}

pub fn kernel_fuzz(count: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        check_kernel(&random_matrix(&mut rng, 5, 6))?;
    }
    Ok(())
}

pub fn expected_root_count(t: DynkinType) -> usize {
    let n = t.rank;
    match t.family {
        Family::A => n * (n + 1),
        Family::B | Family::C => 2 * n * n,
        Family::D => 2 * n * (n - 1),
        Family::E => [72, 126, 240][n - 6],
        Family::F => 48,
        Family::G => 12,
    }
}

pub fn root_checks(max_rank: usize) -> Check {
    for t in rootsys::all_types(max_rank) {
        let rs = RootSystem::build(t);
        if rs.num_roots() != expected_root_count(t) {
            return Err(format!("{t}: {} roots", rs.num_roots()));
        }
        let bound = if t.family == Family::G { 3 } else { 2 };
        for a in rs.roots() {
            for b in rs.roots() {
                let ab = rs.pairing(b, a).map_err(|e| e.to_string())?;
                let ba = rs.pairing(a, b).map_err(|e| e.to_string())?;
                let same = a == b;
                let opposite = a.iter().zip(b).all(|(x, y)| *x == -*y);
                if same && ab != 2 || opposite && ab != -2 {
                    return Err(format!("{t}: <a, a^v> wrong"));
                }
                if !same && !opposite && (ab.abs() > bound || !(0..=3).contains(&(ab * ba))) {
                    return Err(format!("{t}: pairing {ab} out of range"));
                }
            }
        }
    }
    Ok(())
}

/// Types carrying the short-root bound.
pub fn short_types(max_rank: usize) -> Vec<DynkinType> {
    rootsys::all_types(max_rank)
        .into_iter()
        .filter(|t| match t.family {
            Family::A => t.rank >= 2,
            Family::C => t.rank >= 3,
            Family::D => t.rank >= 4,
            Family::E | Family::F => true,
            _ => false,
        })
        .collect()
}

pub fn short_roots_generate(max_rank: usize) -> Check {
    for t in short_types(max_rank) {
        let rs = RootSystem::build(t);
        let short = rootsys::short_roots(&rs);
        if !intlat::generates_full_lattice(&short, t.rank).map_err(|e| e.to_string())? {
            return Err(format!("short roots of {t} do not generate Q"));
        }
    }
    Ok(())
}

pub fn projs_range() -> Check {
    for n in 4..=12 {
        let rows = genfree::verify_projs_inequality(n).map_err(|e| e.to_string())?;
        if let Some(bad) = rows.iter().find(|r| !r.holds) {
            return Err(format!("n = {n}: cycle type {:?} fails", bad.cycle_type));
        }
    }
    let three = genfree::verify_projs_inequality(3).map_err(|e| e.to_string())?;
    if three.iter().all(|r| r.holds) {
        return Err("n = 3 unexpectedly passes".into());
    }
    Ok(())
}

pub fn big_o_sweep(chars: &[u32]) -> Result<usize, String> {
    let mut checked = 0;
    for &p in chars {
        for d in edbounds::enumerate_descriptors(2, 8, p).map_err(|e| e.to_string())? {
            let Some(cap) = edbounds::big_o_guarantee(&d) else { continue };
            let b = edbounds::best_bound(&d).map_err(|e| format!("{d}: {e}"))?;
            if b.value > cap {
                return Err(format!("{d}: {} > {cap}", b.value));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

pub fn descriptor(kind: edbounds::GroupKind, p: u32) -> GroupDescriptor {
    GroupDescriptor::new(kind, p).expect("admissible")
}
