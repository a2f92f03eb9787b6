//! Irreducible reduced root systems in simple-root coordinates.
//!
//! Simple roots follow Bourbaki numbering. The Cartan matrix is stored as
//! `cartan[i][j] = <alpha_i, alpha_j^vee>`; with this convention B2 has
//! `<alpha_1, alpha_2^vee> = -2` (alpha_1 long, alpha_2 short).

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::intlat::IntegerMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::Domain(format!("unknown Dynkin family {other:?}"))),
        }
    }
}

/// A Dynkin type. `C2` is normalized to `B2` on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    pub family: Family,
    pub rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::Domain(format!("no root system of type {family}{rank}")));
        }
        let family = if family == Family::C && rank == 2 { Family::B } else { family };
        Ok(Self { family, rank })
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// Number of roots from the closed-form table.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam: Family = chars
            .next()
            .ok_or_else(|| Error::Domain("empty type label".into()))?
            .to_string()
            .parse()?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Domain(format!("bad rank in type label {s:?}")))?;
        DynkinType::new(fam, rank)
    }
}

fn cartan_matrix(ty: DynkinType) -> Vec<Vec<i64>> {
    let n = ty.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match ty.family {
        Family::A => (0..n - 1).for_each(|i| link(i, i + 1)),
        Family::B | Family::C => (0..n - 1).for_each(|i| link(i, i + 1)),
        Family::D => {
            (0..n - 2).for_each(|i| link(i, i + 1));
            link(n - 3, n - 1);
        }
        Family::E => {
            // 1-3-4-5-6(-7-8), with 2 attached to 4
            link(0, 2);
            link(1, 3);
            (2..n - 1).for_each(|i| link(i, i + 1));
        }
        Family::F => (0..3).for_each(|i| link(i, i + 1)),
        Family::G => link(0, 1),
    }
    match ty.family {
        // alpha_n short
        Family::B => a[n - 2][n - 1] = -2,
        // alpha_n long
        Family::C => a[n - 1][n - 2] = -2,
        // alpha_2 long, alpha_3 short
        Family::F => a[1][2] = -2,
        // alpha_1 short, alpha_2 long
        Family::G => a[1][0] = -3,
        _ => {}
    }
    a
}

/// Twice the squared length of each simple root, scaled so short roots have 2.
fn simple_root_norms(ty: DynkinType) -> Vec<i64> {
    let n = ty.rank;
    match ty.family {
        Family::A | Family::D | Family::E => vec![2; n],
        Family::B => (0..n).map(|i| if i == n - 1 { 2 } else { 4 }).collect(),
        Family::C => (0..n).map(|i| if i == n - 1 { 4 } else { 2 }).collect(),
        Family::F => vec![4, 4, 2, 2],
        Family::G => vec![2, 6],
    }
}

/// Simple roots in epsilon coordinates for the classical families.
fn epsilon_embedding(ty: DynkinType) -> Option<Vec<Vec<i64>>> {
    let n = ty.rank;
    let unit = |dim: usize, terms: &[(usize, i64)]| {
        let mut v = vec![0i64; dim];
        for &(i, c) in terms {
            v[i] += c;
        }
        v
    };
    let rows = match ty.family {
        Family::A => (0..n).map(|i| unit(n + 1, &[(i, 1), (i + 1, -1)])).collect(),
        Family::B => (0..n)
            .map(|i| if i < n - 1 { unit(n, &[(i, 1), (i + 1, -1)]) } else { unit(n, &[(i, 1)]) })
            .collect(),
        Family::C => (0..n)
            .map(|i| if i < n - 1 { unit(n, &[(i, 1), (i + 1, -1)]) } else { unit(n, &[(i, 2)]) })
            .collect(),
        Family::D => (0..n)
            .map(|i| {
                if i < n - 1 {
                    unit(n, &[(i, 1), (i + 1, -1)])
                } else {
                    unit(n, &[(n - 2, 1), (n - 1, 1)])
                }
            })
            .collect(),
        _ => return None,
    };
    Some(rows)
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: DynkinType,
    label: String,
    cartan: Vec<Vec<i64>>,
    /// Symmetric form on the simple roots, `(alpha_i, alpha_j)`, scaled so
    /// that short roots have `(alpha, alpha) = 2`.
    gram: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    norms: Vec<i64>,
    index: HashMap<Vec<i64>, usize>,
    epsilon: Option<Vec<Vec<i64>>>,
    cartan_det: i64,
    cartan_adj: Vec<Vec<i64>>,
}

impl RootSystem {
    /// Builds the root system. Roots are listed positive first (by height,
    /// simple roots in Bourbaki order leading), then their negatives in the
    /// same order.
    pub fn build(ty: DynkinType) -> Self {
        Self::build_labeled(ty, &ty.to_string())
    }

    /// Builds from a user label such as `"C2"`, keeping the label.
    pub fn from_label(label: &str) -> Result<Self> {
        let ty: DynkinType = label.parse()?;
        Ok(Self::build_labeled(ty, label.trim()))
    }

    fn build_labeled(ty: DynkinType, label: &str) -> Self {
        let n = ty.rank;
        let cartan = cartan_matrix(ty);
        let simple_norms = simple_root_norms(ty);
        let gram: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| cartan[i][j] * simple_norms[j] / 2).collect())
            .collect();

        // Orbit of the simple roots under the simple reflections.
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            seen.insert(e.clone(), ());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let c: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                if c == 0 {
                    continue;
                }
                let mut img = beta.clone();
                img[i] -= c;
                if seen.insert(img.clone(), ()).is_none() {
                    queue.push_back(img);
                }
            }
        }
        let mut positive: Vec<Vec<i64>> = seen.into_keys().filter(|r| r.iter().all(|&x| x >= 0)).collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        let index = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let norms = roots.iter().map(|r| quad(&gram, r, r)).collect();

        let cm = IntegerMatrix::from_rows(&cartan).expect("square cartan matrix");
        let cartan_det = cm.determinant().expect("square").to_i64().expect("small determinant");
        let cartan_adj = adjugate(&cartan);

        Self {
            ty,
            label: label.to_string(),
            cartan,
            gram,
            roots,
            norms,
            index,
            epsilon: epsilon_embedding(ty),
            cartan_det,
            cartan_adj,
        }
    }

    pub fn dynkin_type(&self) -> DynkinType {
        self.ty
    }

    /// The label the system was requested under (`"C2"` survives as such).
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    /// Simple roots as unit vectors in the root-lattice basis.
    pub fn simple_roots(&self) -> Vec<Vec<i64>> {
        (0..self.rank()).map(|i| self.roots[i].clone()).collect()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows(&self.cartan).expect("square")
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    /// Index of the negative of root `i`.
    pub fn negative_index(&self, i: usize) -> usize {
        let half = self.num_positive();
        if i < half {
            i + half
        } else {
            i - half
        }
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        quad(&self.gram, a, b)
    }

    /// Scaled squared length of root `i` (short roots have 2).
    pub fn norm(&self, i: usize) -> i64 {
        self.norms[i]
    }

    pub fn is_short(&self, i: usize) -> bool {
        self.norms[i] == 2
    }

    pub fn short_root_indices(&self) -> Vec<usize> {
        (0..self.roots.len()).filter(|&i| self.is_short(i)).collect()
    }

    pub fn epsilon_embedding(&self) -> Option<&[Vec<i64>]> {
        self.epsilon.as_deref()
    }

    /// Epsilon coordinates of a root-lattice vector (classical types only).
    pub fn to_epsilon(&self, v: &[i64]) -> Option<Vec<i64>> {
        let emb = self.epsilon.as_ref()?;
        let dim = emb[0].len();
        Some((0..dim).map(|k| v.iter().zip(emb).map(|(c, row)| c * row[k]).sum()).collect())
    }

    /// Root-lattice vector to fundamental-weight coordinates.
    pub fn root_to_weight(&self, v: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n).map(|j| (0..n).map(|i| v[i] * self.cartan[i][j]).sum()).collect()
    }

    /// Fundamental-weight coordinates to `det(Cartan)` times root coordinates.
    pub fn weight_to_scaled_root(&self, w: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n).map(|j| (0..n).map(|i| w[i] * self.cartan_adj[i][j]).sum()).collect()
    }

    pub fn cartan_determinant(&self) -> i64 {
        self.cartan_det
    }

    /// Inverse of [`Self::weight_to_scaled_root`].
    pub fn scaled_root_to_weight(&self, v: &[i64]) -> Vec<i64> {
        self.root_to_weight(v).into_iter().map(|x| x / self.cartan_det).collect()
    }

    /// Simple reflection `s_i` (0-based) applied to fundamental-weight coordinates.
    pub fn reflect_weight(&self, i: usize, w: &[i64]) -> Vec<i64> {
        let c = w[i];
        w.iter().zip(&self.cartan[i]).map(|(x, a)| x - c * a).collect()
    }

    /// Simple reflection `s_i` (0-based) applied to root coordinates.
    pub fn reflect_root(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let c: i64 = (0..self.rank()).map(|j| v[j] * self.cartan[j][i]).sum();
        let mut out = v.to_vec();
        out[i] -= c;
        out
    }

    /// Cartan integer `<beta, alpha^vee>`; `alpha` must be a root.
    pub fn pairing(&self, beta: &[i64], alpha: &[i64]) -> Result<i64> {
        if alpha.iter().all(|&x| x == 0) {
            return Err(Error::Domain("pairing against the zero vector".into()));
        }
        if beta.len() != self.rank() || alpha.len() != self.rank() {
            return Err(Error::Dimension("vector length differs from the rank".into()));
        }
        let Some(ai) = self.root_index(alpha) else {
            return Err(Error::Domain(format!("{alpha:?} is not a root")));
        };
        let num = 2 * self.inner(beta, alpha);
        let den = self.norms[ai];
        if num % den != 0 {
            return Err(Error::Domain("pairing is not integral".into()));
        }
        Ok(num / den)
    }

    /// Reduced word for the longest element, found by descending from rho.
    pub fn longest_word(&self) -> Vec<usize> {
        let mut v = vec![1i64; self.rank()];
        let mut word = Vec::new();
        while let Some(i) = v.iter().position(|&x| x > 0) {
            v = self.reflect_weight(i, &v);
            word.push(i);
        }
        word
    }

    /// Whether `-1` lies in the Weyl group, decided by evaluating the longest
    /// element on the root lattice.
    pub fn has_minus_one(&self) -> bool {
        let word = self.longest_word();
        (0..self.rank()).all(|j| {
            let mut e = vec![0i64; self.rank()];
            e[j] = 1;
            // w0 = s_{i1} ... s_{ik}; apply right to left
            for &i in word.iter().rev() {
                e = self.reflect_root(i, &e);
            }
            e.iter().enumerate().all(|(k, &x)| x == if k == j { -1 } else { 0 })
        })
    }

    /// Two non-orthogonal short simple roots and minus their sum.
    pub fn short_witness_triple(&self) -> Result<[Vec<i64>; 3]> {
        if self.rank() < 2 {
            return Err(Error::NotAvailable("rank 1 has no pair of simple roots".into()));
        }
        let n = self.rank();
        for i in 0..n {
            for j in i + 1..n {
                if self.is_short(i) && self.is_short(j) && self.cartan[i][j] != 0 {
                    let chi1 = self.roots[i].clone();
                    let chi2 = self.roots[j].clone();
                    let chi3 = chi1.iter().zip(&chi2).map(|(a, b)| -a - b).collect();
                    return Ok([chi1, chi2, chi3]);
                }
            }
        }
        Err(Error::NotAvailable(format!(
            "{} has no adjacent short simple roots",
            self.ty
        )))
    }
}

fn quad(g: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut s = 0;
    for (i, ai) in a.iter().enumerate() {
        if *ai == 0 {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            s += ai * g[i][j] * bj;
        }
    }
    s
}

fn adjugate(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| a[r][c]).collect())
                .collect();
            let det = IntegerMatrix::from_rows(&minor)
                .expect("square minor")
                .determinant()
                .expect("square")
                .to_i64()
                .expect("small cofactor");
            adj[i][j] = if (i + j) % 2 == 0 { det } else { -det };
        }
    }
    adj
}

/// All admissible types with `rank <= max_rank`, one per isomorphism class.
pub fn all_types(max_rank: usize) -> Vec<DynkinType> {
    let mut out = Vec::new();
    for rank in 1..=max_rank {
        for fam in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
            let skip = (fam == Family::C && rank == 2) || (fam == Family::D && rank == 3);
            if skip {
                continue;
            }
            if let Ok(t) = DynkinType::new(fam, rank) {
                out.push(t);
            }
        }
    }
    out
}

pub fn short_roots(rs: &RootSystem) -> Vec<Vec<i64>> {
    rs.short_root_indices().into_iter().map(|i| rs.roots()[i].clone()).collect()
}
