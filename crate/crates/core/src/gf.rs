//! Finite fields `F_q` and dense polynomials over them.
//!
//! An element is encoded as the integer whose base-`p` digits are its
//! coordinates in the basis `1, x, ..., x^{k-1}` of `F_p[x]/(f)`, with `f` a
//! primitive polynomial found by search. Multiplication goes through
//! logarithm tables.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// `(p, k)` with `q = p^k`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p as u32, k))
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::Domain(format!("{q} is not a prime power")))?;
        if q > 1 << 20 {
            return Err(Error::Domain(format!("field size {q} exceeds the table limit 2^20")));
        }
        let q = q as u32;
        let exp = if k == 1 { prime_field_powers(p) } else { extension_powers(p, k) };
        let mut log = vec![0u32; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        Ok(FiniteField { p, k, q, exp, log })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(s % (self.q - 1)) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.exp[((self.q - 1 - self.log[a as usize]) % (self.q - 1)) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = (self.log[a as usize] as u64 * (e % (self.q as u64 - 1))) % (self.q as u64 - 1);
        self.exp[l as usize]
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        self.exp[1 % (self.q as usize - 1)]
    }
}

fn prime_field_powers(p: u32) -> Vec<u32> {
    if p == 2 {
        return vec![1];
    }
    let order = p - 1;
    let g = (2..p)
        .find(|&g| {
            let mut x = 1u64;
            for i in 1..=order {
                x = x * g as u64 % p as u64;
                if x == 1 {
                    return i == order;
                }
            }
            false
        })
        .expect("prime fields have primitive roots");
    let mut out = Vec::with_capacity(order as usize);
    let mut x = 1u64;
    for _ in 0..order {
        out.push(x as u32);
        x = x * g as u64 % p as u64;
    }
    out
}

/// Powers of `x` modulo the first primitive polynomial of degree `k` in
/// enumeration order.
fn extension_powers(p: u32, k: u32) -> Vec<u32> {
    let q = p.pow(k);
    let digits = |mut v: u32| -> Vec<u32> {
        (0..k)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    };
    let encode = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &x| acc * p + x);
    for tail in 1..q {
        // f = x^k + sum tail_i x^i with nonzero constant term
        let f = digits(tail);
        if f[0] == 0 {
            continue;
        }
        let mut cur = vec![0u32; k as usize];
        cur[0] = 1;
        let mut powers = Vec::with_capacity(q as usize - 1);
        let mut ok = true;
        for i in 0..q - 1 {
            let e = encode(&cur);
            if i > 0 && e == 1 {
                ok = false;
                break;
            }
            powers.push(e);
            // multiply by x and reduce with x^k = -sum f_i x^i
            let top = cur[k as usize - 1];
            for j in (1..k as usize).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            for j in 0..k as usize {
                cur[j] = (cur[j] + (p - f[j]) * top) % p;
            }
        }
        if ok && encode(&cur) == 1 {
            return powers;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

/// Polynomials as coefficient vectors, lowest degree first, over a fixed field.
pub mod poly {
    use super::FiniteField;

    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(a: &[u32]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    pub fn is_zero(a: &[u32]) -> bool {
        degree(a).is_none()
    }

    pub fn add(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn sub(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
        let nb: Vec<u32> = b.iter().map(|&x| f.neg(x)).collect();
        add(f, a, &nb)
    }

    pub fn mul(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
        if is_zero(a) || is_zero(b) {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        trim(out)
    }

    /// Remainder of `a` modulo a nonzero `b`.
    pub fn rem(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
        let db = degree(b).expect("division by the zero polynomial");
        let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
        let mut r = trim(a.to_vec());
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let c = f.mul(r[dr], lead_inv);
            let shift = dr - db;
            for (j, &bj) in b[..=db].iter().enumerate() {
                r[shift + j] = f.sub(r[shift + j], f.mul(c, bj));
            }
            r = trim(r);
        }
        r
    }

    pub fn monic(f: &FiniteField, a: &[u32]) -> Vec<u32> {
        match degree(a) {
            None => Vec::new(),
            Some(d) => {
                let inv = f.inv(a[d]).expect("nonzero");
                a[..=d].iter().map(|&x| f.mul(x, inv)).collect()
            }
        }
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !is_zero(&b) {
            let r = rem(f, &a, &b);
            a = b;
            b = r;
        }
        monic(f, &a)
    }

    pub fn derivative(f: &FiniteField, a: &[u32]) -> Vec<u32> {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    pub fn eval(f: &FiniteField, a: &[u32], x: u32) -> u32 {
        a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `a(x + t)` as a polynomial in `x`.
    pub fn shift(f: &FiniteField, a: &[u32], t: u32) -> Vec<u32> {
        let lin = [t, 1];
        let mut out: Vec<u32> = Vec::new();
        for &c in a.iter().rev() {
            out = mul(f, &out, &lin);
            out = add(f, &out, &[c]);
        }
        out
    }
}

/// Binomial coefficients reduced modulo `p`, rows `0..=n`.
pub fn binomials_mod(n: usize, p: u32) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut row = vec![1u32; j + 1];
        for i in 1..j {
            row[i] = (rows[j - 1][i - 1] + rows[j - 1][i]) % p;
        }
        rows.push(row);
    }
    rows
}
