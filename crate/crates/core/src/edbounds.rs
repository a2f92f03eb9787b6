//! Upper bounds on essential dimension of simple groups, assembled from
//! certified generic-freeness results, transfer inequalities between related
//! groups, and a table of values quoted from the literature.
//!
//! Every bound carries the chain of rule applications that produced it; the
//! chain can be replayed independently of the engine.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::genfree::{self, Certificate, Strategy};
use crate::reps;
use crate::rootsys::{DynkinType, Family, RootSystem};
use crate::weyl;

// ---------------------------------------------------------------------------
// descriptors

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GroupKind {
    /// `SL_n / mu_m`; `m = 1` is `SL_n`, `m = n` is `PGL_n`.
    SlMod { n: u32, m: u32 },
    /// `GL_n / mu_m` (reductive, not simple).
    GlMod { n: u32, m: u32 },
    /// `Sp_{2n}`
    Sp { n: u32 },
    /// `PSp_{2n}`
    PSp { n: u32 },
    /// `SO_n`
    So { n: u32 },
    /// `PSO_{2n}`
    Pso { n: u32 },
    /// `Spin_n`
    Spin { n: u32 },
    /// `HSpin_n`
    HSpin { n: u32 },
    /// `E6`, `E7` (adjoint or simply connected), `E8`, `F4`, `G2`.
    Exceptional { family: char, rank: u32, simply_connected: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupDescriptor {
    pub kind: GroupKind,
    pub characteristic: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Isogeny {
    Adjoint,
    SimplyConnected,
    Intermediate,
    Reductive,
}

fn check_char(p: u32) -> Result<()> {
    if p == 0 || weyl::is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::Domain(format!("characteristic {p} is neither 0 nor prime")))
    }
}

impl GroupDescriptor {
    pub fn new(kind: GroupKind, characteristic: u32) -> Result<Self> {
        check_char(characteristic)?;
        let bad = |why: &str| Err(Error::Domain(format!("inadmissible group: {why}")));
        match kind {
            GroupKind::SlMod { n, m } => {
                if n < 2 || m == 0 || n % m != 0 {
                    return bad("SL_n/mu_m needs n >= 2 and m | n");
                }
            }
            GroupKind::GlMod { n, m } => {
                if n < 1 || m == 0 || n % m != 0 {
                    return bad("GL_n/mu_m needs n >= 1 and m | n");
                }
            }
            GroupKind::Sp { n } | GroupKind::PSp { n } => {
                if n < 2 {
                    return bad("symplectic groups here have rank >= 2");
                }
            }
            GroupKind::So { n } | GroupKind::Spin { n } => {
                if n < 5 || n == 6 {
                    return bad("orthogonal groups here have n = 5 or n >= 7");
                }
            }
            GroupKind::Pso { n } => {
                if n < 4 {
                    return bad("PSO_{2n} needs n >= 4");
                }
            }
            GroupKind::HSpin { n } => {
                if n % 4 != 0 || n < 12 {
                    return bad("HSpin_n needs 4 | n and n >= 12");
                }
            }
            GroupKind::Exceptional { family, rank, .. } => {
                let ok = matches!((family, rank), ('E', 6..=8) | ('F', 4) | ('G', 2));
                if !ok {
                    return bad("unknown exceptional type");
                }
            }
        }
        Ok(GroupDescriptor {
            kind: normalize(kind),
            characteristic,
        })
    }

    /// From a Dynkin label and an isogeny name: `adjoint`, `simply-connected`
    /// (or `sc`), `so`, `half-spin` (or `hspin`).
    pub fn from_type(label: &str, isogeny: &str, characteristic: u32) -> Result<Self> {
        let ty: DynkinType = label.parse()?;
        let r = ty.rank as u32;
        let iso = isogeny.trim().to_ascii_lowercase();
        let adjoint = matches!(iso.as_str(), "adjoint" | "adj");
        let sc = matches!(iso.as_str(), "simply-connected" | "sc" | "simply_connected");
        let kind = match (ty.family, iso.as_str()) {
            (_, _) if !adjoint && !sc && !matches!(iso.as_str(), "so" | "half-spin" | "hspin") => {
                return Err(Error::Domain(format!("unknown isogeny {isogeny:?}")))
            }
            (Family::A, _) if adjoint => GroupKind::SlMod { n: r + 1, m: r + 1 },
            (Family::A, _) if sc => GroupKind::SlMod { n: r + 1, m: 1 },
            (Family::B, "so") => GroupKind::So { n: 2 * r + 1 },
            (Family::B, _) if adjoint => GroupKind::So { n: 2 * r + 1 },
            (Family::B, _) if sc => GroupKind::Spin { n: 2 * r + 1 },
            (Family::C, _) if adjoint => GroupKind::PSp { n: r },
            (Family::C, _) if sc => GroupKind::Sp { n: r },
            (Family::D, "so") => GroupKind::So { n: 2 * r },
            (Family::D, "half-spin" | "hspin") => GroupKind::HSpin { n: 2 * r },
            (Family::D, _) if adjoint => GroupKind::Pso { n: r },
            (Family::D, _) if sc => GroupKind::Spin { n: 2 * r },
            (Family::E | Family::F | Family::G, _) if adjoint || sc => GroupKind::Exceptional {
                family: ty.family.to_string().chars().next().expect("letter"),
                rank: r,
                simply_connected: sc,
            },
            _ => {
                return Err(Error::Domain(format!(
                    "isogeny {isogeny:?} does not exist for type {label}"
                )))
            }
        };
        GroupDescriptor::new(kind, characteristic)
    }

    /// From a classical family name and its parameters: `PGL`, `SL`, `GL`
    /// take the matrix size `n` (and `m` for the quotients); `Sp`, `PSp`,
    /// `PSO` take the rank; `SO`, `Spin`, `HSpin` take the dimension of the
    /// natural module.
    pub fn from_family(family: &str, n: u32, m: Option<u32>, characteristic: u32) -> Result<Self> {
        let kind = match family.trim().to_ascii_lowercase().as_str() {
            "pgl" => GroupKind::SlMod { n, m: n },
            "sl" => GroupKind::SlMod { n, m: m.unwrap_or(1) },
            "gl" => GroupKind::GlMod { n, m: m.unwrap_or(1) },
            "sp" => GroupKind::Sp { n },
            "psp" => GroupKind::PSp { n },
            "so" => GroupKind::So { n },
            "pso" => GroupKind::Pso { n },
            "spin" => GroupKind::Spin { n },
            "hspin" | "half-spin" => GroupKind::HSpin { n },
            other => return Err(Error::Domain(format!("unknown family {other:?}"))),
        };
        GroupDescriptor::new(kind, characteristic)
    }

    pub fn with_characteristic(&self, p: u32) -> Result<Self> {
        GroupDescriptor::new(self.kind, p)
    }

    /// The Dynkin type, or `None` for `GL_n / mu_m`.
    pub fn dynkin_type(&self) -> Option<DynkinType> {
        let t = |f: Family, r: u32| DynkinType::new(f, r as usize).ok();
        match self.kind {
            GroupKind::SlMod { n, .. } => t(Family::A, n - 1),
            GroupKind::GlMod { .. } => None,
            GroupKind::Sp { n } | GroupKind::PSp { n } => t(Family::C, n),
            GroupKind::So { n } | GroupKind::Spin { n } | GroupKind::HSpin { n } => {
                if n % 2 == 1 {
                    t(Family::B, (n - 1) / 2)
                } else {
                    t(Family::D, n / 2)
                }
            }
            GroupKind::Pso { n } => t(Family::D, n),
            GroupKind::Exceptional { family, rank, .. } => {
                t(family.to_string().parse().expect("valid letter"), rank)
            }
        }
    }

    pub fn isogeny(&self) -> Isogeny {
        match self.kind {
            GroupKind::SlMod { n, m } if m == n => Isogeny::Adjoint,
            GroupKind::SlMod { m: 1, .. } => Isogeny::SimplyConnected,
            GroupKind::SlMod { .. } => Isogeny::Intermediate,
            GroupKind::GlMod { .. } => Isogeny::Reductive,
            GroupKind::Sp { .. } | GroupKind::Spin { .. } => Isogeny::SimplyConnected,
            GroupKind::PSp { .. } | GroupKind::Pso { .. } => Isogeny::Adjoint,
            GroupKind::So { n } if n % 2 == 1 => Isogeny::Adjoint,
            GroupKind::So { .. } | GroupKind::HSpin { .. } => Isogeny::Intermediate,
            GroupKind::Exceptional { simply_connected, family, rank } => {
                if simply_connected && family == 'E' && rank < 8 {
                    Isogeny::SimplyConnected
                } else {
                    Isogeny::Adjoint
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match self.kind {
            GroupKind::SlMod { n, m: 1 } => format!("SL_{n}"),
            GroupKind::SlMod { n, m } if m == n => format!("PGL_{n}"),
            GroupKind::SlMod { n, m } => format!("SL_{n}/μ_{m}"),
            GroupKind::GlMod { n, m: 1 } => format!("GL_{n}"),
            GroupKind::GlMod { n, m } => format!("GL_{n}/μ_{m}"),
            GroupKind::Sp { n } => format!("Sp_{}", 2 * n),
            GroupKind::PSp { n } => format!("PSp_{}", 2 * n),
            GroupKind::So { n } => format!("SO_{n}"),
            GroupKind::Pso { n } => format!("PSO_{}", 2 * n),
            GroupKind::Spin { n } => format!("Spin_{n}"),
            GroupKind::HSpin { n } => format!("HSpin_{n}"),
            GroupKind::Exceptional { family, rank, simply_connected } => {
                if family == 'E' && rank < 8 {
                    format!("E{rank}^{}", if simply_connected { "sc" } else { "adj" })
                } else {
                    format!("{family}{rank}")
                }
            }
        }
    }

    /// Spin and half-spin groups, and `PGL_2`, are outside the general bound.
    pub fn big_o_excluded(&self) -> bool {
        matches!(
            self.kind,
            GroupKind::Spin { .. } | GroupKind::HSpin { .. } | GroupKind::SlMod { n: 2, m: 2 } | GroupKind::GlMod { .. }
        )
    }
}

fn normalize(kind: GroupKind) -> GroupKind {
    match kind {
        GroupKind::Exceptional { family, rank, simply_connected } => GroupKind::Exceptional {
            family,
            rank,
            simply_connected: simply_connected && family == 'E' && rank < 8,
        },
        other => other,
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (char {})", self.name(), self.characteristic)
    }
}

pub fn group_dim(d: &GroupDescriptor) -> u64 {
    match (d.kind, d.dynkin_type()) {
        (GroupKind::GlMod { n, .. }, _) => (n as u64).pow(2),
        (_, Some(t)) => (t.root_count() + t.rank) as u64,
        _ => unreachable!("every simple descriptor has a type"),
    }
}

pub fn group_rank(d: &GroupDescriptor) -> u64 {
    match (d.kind, d.dynkin_type()) {
        (GroupKind::GlMod { n, .. }, _) => n as u64,
        (_, Some(t)) => t.rank as u64,
        _ => unreachable!("every simple descriptor has a type"),
    }
}

/// The general bound `dim G - 2 rk G - 1`, where it applies.
pub fn big_o_guarantee(d: &GroupDescriptor) -> Option<i64> {
    (!d.big_o_excluded()).then(|| group_dim(d) as i64 - 2 * group_rank(d) as i64 - 1)
}

/// Every simple descriptor whose type has rank in `ranks`.
pub fn enumerate_descriptors(min_rank: u32, max_rank: u32, characteristic: u32) -> Result<Vec<GroupDescriptor>> {
    check_char(characteristic)?;
    let mut kinds = Vec::new();
    for r in min_rank.max(1)..=max_rank {
        let n = r + 1;
        for m in (1..=n).filter(|m| n % m == 0) {
            kinds.push(GroupKind::SlMod { n, m });
        }
        if r >= 2 {
            kinds.push(GroupKind::So { n: 2 * r + 1 });
            kinds.push(GroupKind::Spin { n: 2 * r + 1 });
            kinds.push(GroupKind::Sp { n: r });
            kinds.push(GroupKind::PSp { n: r });
        }
        if r >= 4 {
            kinds.push(GroupKind::So { n: 2 * r });
            kinds.push(GroupKind::Pso { n: r });
            kinds.push(GroupKind::Spin { n: 2 * r });
            if r % 2 == 0 && r >= 6 {
                kinds.push(GroupKind::HSpin { n: 2 * r });
            }
        }
        let ex = |family, simply_connected| GroupKind::Exceptional { family, rank: r, simply_connected };
        match r {
            2 => kinds.push(ex('G', false)),
            4 => kinds.push(ex('F', false)),
            6 | 7 => {
                kinds.push(ex('E', false));
                kinds.push(ex('E', true));
            }
            8 => kinds.push(ex('E', false)),
            _ => {}
        }
    }
    kinds.into_iter().map(|k| GroupDescriptor::new(k, characteristic)).collect()
}

// ---------------------------------------------------------------------------
// rules

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `[roots, rank] -> roots + rank`
    GroupDim,
    /// inputs summed
    Sum,
    /// `[a, b] -> a b`
    Product,
    /// `[dim V, dim G] -> dim V - dim G` for a generically free linear action
    GenfreeLinear,
    /// `[dim X, dim G] -> dim X - dim G` for a generically free action on `X`
    Compression,
    /// `[dim V] -> dim V` for a faithful representation
    Faithful,
    /// `[ed B, dim C] -> ed B + dim C` for `1 -> A -> B -> C -> 1`, `C` with trivial `H^1`
    ExactSequence,
    /// `[ed PGL_n, n, m] -> ed PGL_n + n/m - 1`
    SlTransfer,
    /// `[n, m, n', ed GL_{n'}/mu_m] -> ed GL_{n'}/mu_m`
    Coprime,
    /// `[n, p, e, eps, m] -> n^2 - n + 1`
    Frobenius,
    /// `[n, p] -> dim P(W)` for the symplectic module `W`
    PspModuleDim,
    /// `[n] -> n^2 - 3n + 1 + floor(n/4)`
    MFree,
    /// `[n] -> (n-1)(n-2)/2`
    Lrrs,
    /// `[n] -> dim` of the faithful spin-type representation of `Spin_n`
    SpinFaithfulDim,
    /// `[n] -> 2^{n/2 - 1}`
    HalfSpinDim,
    /// `[ed] -> ed` along a surjection in cohomology
    Ordering,
    /// `[ed] -> ed` along an isomorphism
    Isomorphism,
    /// `[value]` or `[lower, upper]`, quoted from the literature
    Known,
}

pub fn coprime_reduce(n: u64, m: u64) -> Result<u64> {
    if m == 0 || n == 0 || !n.is_multiple_of(m) {
        return Err(Error::Domain(format!("{m} does not divide {n}")));
    }
    let mut rest = m;
    let mut out = 1;
    let mut ell = 2;
    while rest > 1 {
        if rest.is_multiple_of(ell) {
            while rest.is_multiple_of(ell) {
                rest /= ell;
            }
            let mut nn = n;
            while nn.is_multiple_of(ell) {
                nn /= ell;
                out *= ell;
            }
        }
        ell += 1;
    }
    Ok(out)
}

fn pow_mod(base: u64, mut e: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    let mut b = base % modulus;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % modulus;
        }
        b = b * b % modulus;
        e >>= 1;
    }
    acc
}

/// `(m, n^2 - n + 1)` with `m = gcd(p^e + eps, n)`.
pub fn frobenius_bound(n: u64, p: u64, e: u64, eps: i64) -> Result<(u64, i64)> {
    if p == 0 {
        return Err(Error::NotAvailable("the Frobenius twist needs positive characteristic".into()));
    }
    if !weyl::is_prime(p) || e == 0 || !(eps == 1 || eps == -1) || n == 0 {
        return Err(Error::Domain("need p prime, e >= 1, eps = +1 or -1, n >= 1".into()));
    }
    let r = pow_mod(p, e, n);
    let shifted = if eps == 1 { (r + 1) % n } else { (r + n - 1) % n };
    let m = shifted.gcd(&n);
    Ok((m, (n * n - n + 1) as i64))
}

pub fn bound_genfree_linear(dim_v: i64, dim_g: i64) -> Result<i64> {
    let b = dim_v - dim_g;
    if b < 0 {
        return Err(Error::Vacuous(format!("dim V = {dim_v} < dim G = {dim_g}")));
    }
    Ok(b)
}

pub fn bound_compression(dim_x: i64, dim_g: i64) -> Result<i64> {
    let b = dim_x - dim_g;
    if b < 0 {
        return Err(Error::Vacuous(format!("dim X = {dim_x} < dim G = {dim_g}")));
    }
    Ok(b)
}

pub fn bound_faithful(dim_v: i64) -> i64 {
    dim_v
}

/// `[ed B, ed B + dim C]` for `ed A`.
pub fn bound_exact_sequence(ed_b: i64, dim_c: i64) -> (i64, i64) {
    (ed_b, ed_b + dim_c)
}

pub fn bound_sl_transfer(ed_pgl: i64, n: i64, m: i64) -> Result<i64> {
    if m <= 0 || n % m != 0 {
        return Err(Error::Domain(format!("{m} does not divide {n}")));
    }
    Ok(ed_pgl + n / m - 1)
}

fn psp_module_dim(n: i64, p: i64) -> i64 {
    // W is L(lambda_2) for n > 4; for n = 4 in characteristic 2 the quadric Y_0 of the same dimension
    let delta = if p != 0 && n % p == 0 && n > 4 { 3 } else { 2 };
    2 * n * n - n - delta
}

impl Rule {
    pub fn evaluate(self, x: &[i64]) -> Result<i64> {
        let arity = |k: usize| -> Result<()> {
            if x.len() == k {
                Ok(())
            } else {
                Err(Error::Domain(format!("rule {self:?} takes {k} inputs, got {}", x.len())))
            }
        };
        match self {
            Rule::GroupDim => {
                arity(2)?;
                Ok(x[0] + x[1])
            }
            Rule::Sum => Ok(x.iter().sum()),
            Rule::Product => {
                arity(2)?;
                Ok(x[0] * x[1])
            }
            Rule::GenfreeLinear => {
                arity(2)?;
                bound_genfree_linear(x[0], x[1])
            }
            Rule::Compression => {
                arity(2)?;
                bound_compression(x[0], x[1])
            }
            Rule::Faithful | Rule::Ordering | Rule::Isomorphism => {
                arity(1)?;
                Ok(bound_faithful(x[0]))
            }
            Rule::ExactSequence => {
                arity(2)?;
                Ok(bound_exact_sequence(x[0], x[1]).1)
            }
            Rule::SlTransfer => {
                arity(3)?;
                bound_sl_transfer(x[0], x[1], x[2])
            }
            Rule::Coprime => {
                arity(4)?;
                if coprime_reduce(x[0] as u64, x[1] as u64)? != x[2] as u64 {
                    return Err(Error::Domain("wrong coprime reduction".into()));
                }
                Ok(x[3])
            }
            Rule::Frobenius => {
                arity(5)?;
                let (m, b) = frobenius_bound(x[0] as u64, x[1] as u64, x[2] as u64, x[3])?;
                if m != x[4] as u64 {
                    return Err(Error::Domain("wrong Frobenius quotient".into()));
                }
                Ok(b)
            }
            Rule::PspModuleDim => {
                arity(2)?;
                Ok(psp_module_dim(x[0], x[1]))
            }
            Rule::MFree => {
                arity(1)?;
                Ok(x[0] * x[0] - 3 * x[0] + 1 + x[0] / 4)
            }
            Rule::Lrrs => {
                arity(1)?;
                Ok((x[0] - 1) * (x[0] - 2) / 2)
            }
            Rule::SpinFaithfulDim => {
                arity(1)?;
                Ok(reps::spin_faithful_dim(x[0] as u64)? as i64)
            }
            Rule::HalfSpinDim => {
                arity(1)?;
                Ok(1i64 << (x[0] / 2 - 1))
            }
            Rule::Known => match x.len() {
                1 | 2 => Ok(*x.last().expect("nonempty")),
                _ => Err(Error::Domain("known values take one or two inputs".into())),
            },
        }
    }
}

// ---------------------------------------------------------------------------
// reports

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Exact,
    Upper,
    Lower,
    Interval,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Exact => "exact",
            BoundKind::Upper => "upper",
            BoundKind::Lower => "lower",
            BoundKind::Interval => "interval",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Input {
    pub name: String,
    pub value: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub from_step: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub rule: Rule,
    pub anchor: String,
    pub inputs: Vec<Input>,
    pub output: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub group: String,
    #[serde(rename = "char")]
    pub characteristic: u32,
    pub route: String,
    pub kind: BoundKind,
    /// The exact value, the bound, or the upper end of an interval.
    pub value: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<i64>,
    pub provenance: Vec<Step>,
    pub certificates: Vec<String>,
}

impl BoundReport {
    pub fn is_upper(&self) -> bool {
        self.kind != BoundKind::Lower
    }

    /// Re-evaluates every step and checks that the chain ends at `value`.
    pub fn replay(&self) -> Result<()> {
        for (i, s) in self.provenance.iter().enumerate() {
            for input in &s.inputs {
                if let Some(k) = input.from_step {
                    if k >= i || self.provenance[k].output != input.value {
                        return Err(Error::Domain(format!(
                            "step {i} input {} does not match step {k}",
                            input.name
                        )));
                    }
                }
            }
            let vals: Vec<i64> = s.inputs.iter().map(|x| x.value).collect();
            let out = s.rule.evaluate(&vals)?;
            if out != s.output {
                return Err(Error::Domain(format!(
                    "step {i} ({:?}) evaluates to {out}, recorded {}",
                    s.rule, s.output
                )));
            }
        }
        match self.provenance.last() {
            Some(s) if s.output == self.value => Ok(()),
            _ => Err(Error::Domain(format!("{}: chain does not end at {}", self.group, self.value))),
        }
    }
}

#[derive(Clone, Copy)]
enum Arg {
    Lit(i64),
    Ref(usize),
}

#[derive(Default)]
struct Chain {
    steps: Vec<Step>,
    certificates: Vec<String>,
}

impl Chain {
    fn step(&mut self, rule: Rule, anchor: &str, args: &[(&str, Arg)]) -> Result<usize> {
        let inputs: Vec<Input> = args
            .iter()
            .map(|(name, a)| match *a {
                Arg::Lit(v) => Input {
                    name: name.to_string(),
                    value: v,
                    from_step: None,
                },
                Arg::Ref(k) => Input {
                    name: name.to_string(),
                    value: self.steps[k].output,
                    from_step: Some(k),
                },
            })
            .collect();
        let vals: Vec<i64> = inputs.iter().map(|x| x.value).collect();
        let output = rule.evaluate(&vals)?;
        self.steps.push(Step {
            rule,
            anchor: anchor.to_string(),
            inputs,
            output,
        });
        Ok(self.steps.len() - 1)
    }

    /// Splices in another report's chain; returns the index of its last step.
    fn splice(&mut self, other: &BoundReport) -> usize {
        let offset = self.steps.len();
        for s in &other.provenance {
            let mut s = s.clone();
            for i in &mut s.inputs {
                if let Some(k) = i.from_step.as_mut() {
                    *k += offset;
                }
            }
            self.steps.push(s);
        }
        for c in &other.certificates {
            if !self.certificates.contains(c) {
                self.certificates.push(c.clone());
            }
        }
        self.steps.len() - 1
    }

    fn last(&self) -> i64 {
        self.steps.last().expect("nonempty chain").output
    }

    fn finish(self, d: &GroupDescriptor, route: &str, kind: BoundKind, lower: Option<i64>) -> BoundReport {
        BoundReport {
            group: d.name(),
            characteristic: d.characteristic,
            route: route.to_string(),
            kind,
            value: self.last(),
            lower,
            provenance: self.steps,
            certificates: self.certificates,
        }
    }
}

fn known(d: &GroupDescriptor, route: &str, anchor: &str, kind: BoundKind, value: i64, lower: Option<i64>) -> BoundReport {
    let mut c = Chain::default();
    let args: Vec<(&str, Arg)> = match lower {
        Some(l) => vec![("lower", Arg::Lit(l)), ("upper", Arg::Lit(value))],
        None => vec![("value", Arg::Lit(value))],
    };
    c.step(Rule::Known, anchor, &args).expect("known values evaluate");
    c.finish(d, route, kind, lower)
}

// ---------------------------------------------------------------------------
// quoted values

/// Values quoted from the literature matching `d`, each marked external.
pub fn known_values(d: &GroupDescriptor) -> Vec<BoundReport> {
    let p = d.characteristic;
    let mut out = Vec::new();
    let ext = "external";
    match d.kind {
        GroupKind::SlMod { m: 1, .. } => out.push(known(d, ext, "ed(SL_n) = 0", BoundKind::Exact, 0, None)),
        GroupKind::SlMod { n: 2, m: 2 } => out.push(known(
            d,
            ext,
            "ed(PGL_2) = 2 regardless of the characteristic (quaternion algebras)",
            BoundKind::Exact,
            2,
            None,
        )),
        GroupKind::SlMod { n: 3, m: 3 } => out.push(known(
            d,
            ext,
            "ed(PGL_3) = 2 (Wedderburn: degree 3 algebras are cyclic)",
            BoundKind::Exact,
            2,
            None,
        )),
        GroupKind::GlMod { m: 1, .. } => out.push(known(d, ext, "ed(GL_n) = 0 (Hilbert 90)", BoundKind::Exact, 0, None)),
        GroupKind::GlMod { n: 8, m: 2 } => {
            if p != 2 {
                out.push(known(d, ext, "ed(GL_8/mu_2) = 8 if char k != 2", BoundKind::Exact, 8, None))
            } else {
                out.push(known(d, ext, "ed(GL_8/mu_2) <= 10 if char k = 2", BoundKind::Upper, 10, None))
            }
        }
        GroupKind::Sp { .. } => out.push(known(d, ext, "ed(Sp_2n) = 0", BoundKind::Exact, 0, None)),
        GroupKind::PSp { n } if n % 2 == 1 => out.push(known(
            d,
            ext,
            "ed(PSp_2n) = n + 1 for n odd",
            BoundKind::Exact,
            n as i64 + 1,
            None,
        )),
        GroupKind::So { n } if n % 2 == 1 => {
            let r = (n as i64 - 1) / 2;
            if p != 2 {
                out.push(known(d, ext, "ed(SO_2n+1) = 2n if char k != 2", BoundKind::Exact, 2 * r, None))
            } else {
                out.push(known(d, ext, "ed(SO_2n+1) = n + 1 if char k = 2", BoundKind::Exact, r + 1, None))
            }
        }
        GroupKind::So { n } => {
            let r = n as i64 / 2;
            if p != 2 {
                out.push(known(d, ext, "ed(SO_2n) = 2n - 1 if char k != 2", BoundKind::Exact, 2 * r - 1, None))
            } else {
                out.push(known(
                    d,
                    ext,
                    "ed(SO_2n) is n or n + 1 if char k = 2",
                    BoundKind::Interval,
                    r + 1,
                    Some(r),
                ))
            }
        }
        GroupKind::Spin { n } if n >= 19 => out.push(known(
            d,
            ext,
            "ed(Spin_n) > dim Spin_n for n >= 19",
            BoundKind::Lower,
            group_dim(d) as i64 + 1,
            None,
        )),
        GroupKind::HSpin { n } if n >= 20 => out.push(known(
            d,
            ext,
            "ed(HSpin_n) > dim HSpin_n for 4 | n, n >= 20",
            BoundKind::Lower,
            group_dim(d) as i64 + 1,
            None,
        )),
        GroupKind::Exceptional { family: 'G', .. } => out.push(known(
            d,
            ext,
            "ed(G_2) = 3 (3-Pfister forms)",
            BoundKind::Exact,
            3,
            None,
        )),
        GroupKind::Exceptional { family, rank, simply_connected } if p != 2 && p != 3 => {
            let row = match (family, rank, simply_connected) {
                ('F', 4, _) => Some((5, 7, "ed(F_4) <= 7 if char k != 2, 3; lower bound 5")),
                ('E', 6, true) => Some((4, 8, "ed(E_6^sc) <= 8 if char k != 2, 3; lower bound 4")),
                ('E', 7, true) => Some((8, 11, "ed(E_7^sc) <= 11 if char k != 2, 3; lower bound 8")),
                _ => None,
            };
            if let Some((lo, hi, anchor)) = row {
                out.push(known(d, ext, anchor, BoundKind::Interval, hi, Some(lo)));
            }
        }
        _ => {}
    }
    out
}

// ---------------------------------------------------------------------------
// engine

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum CertKey {
    Short(DynkinType),
    Minuscule(DynkinType, usize),
    HalfSpin(u32),
    Projs(u32),
}

impl CertKey {
    fn id(&self, strategy: Strategy) -> String {
        match self {
            CertKey::Short(t) => format!("short/{t}/{strategy}"),
            CertKey::Minuscule(t, i) => format!("minuscule/{t}/omega{i}/{strategy}"),
            CertKey::HalfSpin(n) => format!("half-spin/{n}/{strategy}"),
            CertKey::Projs(n) => format!("projs/{n}/inequality"),
        }
    }
}

/// Evaluates bounds, running and caching the certificates they rely on.
pub struct Engine {
    strategy: Strategy,
    limit: u64,
    cache: Mutex<HashMap<CertKey, (String, Certificate)>>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(Strategy::MinimalNormalWitnesses, weyl::DEFAULT_ENUMERATION_LIMIT)
    }
}

/// Shared engine using the witness strategy.
pub fn default_engine() -> &'static Engine {
    static ENGINE: OnceLock<Engine> = OnceLock::new();
    ENGINE.get_or_init(Engine::default)
}

pub fn best_bound(d: &GroupDescriptor) -> Result<BoundReport> {
    default_engine().best_bound(d)
}

pub fn candidates(d: &GroupDescriptor) -> Result<Vec<BoundReport>> {
    default_engine().candidates(d)
}

impl Engine {
    pub fn new(strategy: Strategy, limit: u64) -> Self {
        Engine {
            strategy,
            limit,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn certificate(&self, key: CertKey) -> Result<(String, Certificate)> {
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let strategy = match key {
            CertKey::Projs(_) => Strategy::Inequality,
            _ => self.strategy,
        };
        let cert = match key {
            CertKey::Short(t) => genfree::certify_short(&RootSystem::build(t), strategy, self.limit)?,
            CertKey::Minuscule(t, i) => genfree::certify_minuscule(&RootSystem::build(t), i, strategy, self.limit)?,
            CertKey::HalfSpin(n) => genfree::certify_half_spin(n as usize, strategy, self.limit)?,
            CertKey::Projs(n) => genfree::certify_projs(n as usize)?,
        };
        let entry = (key.id(strategy), cert);
        self.cache.lock().expect("cache lock").insert(key, entry.clone());
        Ok(entry)
    }

    /// Certificates computed so far, by id.
    pub fn certificates(&self) -> Vec<(String, Certificate)> {
        let mut v: Vec<_> = self.cache.lock().expect("cache lock").values().cloned().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn certificate_by_id(&self, id: &str) -> Option<Certificate> {
        self.cache
            .lock()
            .expect("cache lock")
            .values()
            .find(|(k, _)| k == id)
            .map(|(_, c)| c.clone())
    }

    /// `N_G(T)` on the projectivized short-root module.
    fn short_route(&self, d: &GroupDescriptor, t: DynkinType) -> Result<Option<BoundReport>> {
        let (id, cert) = self.certificate(CertKey::Short(t))?;
        if !cert.passed() {
            return Ok(None);
        }
        let omega = genfree::psi_kernel(&reps::short_root_module(&RootSystem::build(t)))?.size as i64;
        let mut c = Chain::default();
        c.certificates.push(id);
        let x = c.step(
            Rule::Sum,
            "dim P(V-bar) = |short roots| - 1",
            &[("short roots", Arg::Lit(omega)), ("projectivization", Arg::Lit(-1))],
        )?;
        c.step(
            Rule::Compression,
            "short-root module: ed(N_G(T)) <= |Omega| - dim T - 1, and ed(G) <= ed(N_G(T))",
            &[("dim P(V-bar)", Arg::Ref(x)), ("dim N_G(T)", Arg::Lit(t.rank as i64))],
        )?;
        Ok(Some(c.finish(d, "prop-short", BoundKind::Upper, None)))
    }

    /// `ed(PGL_n) <= n^2 - 3n + 1` through the product of row blocks.
    fn pgl_projs_route(&self, d: &GroupDescriptor, n: u32) -> Result<Option<BoundReport>> {
        let (id, cert) = self.certificate(CertKey::Projs(n))?;
        if !cert.passed() {
            return Ok(None);
        }
        let n = n as i64;
        let mut c = Chain::default();
        c.certificates.push(id);
        let x = c.step(
            Rule::Product,
            "dim X for X = P(W_1) x ... x P(W_n), dim P(W_i) = n - 2",
            &[("n", Arg::Lit(n)), ("n - 2", Arg::Lit(n - 2))],
        )?;
        c.step(
            Rule::Compression,
            "ed(PGL_n) <= ed(N_G(T)) <= dim X - dim N_G(T) = n^2 - 3n + 1",
            &[("dim X", Arg::Ref(x)), ("dim N_G(T)", Arg::Lit(n - 1))],
        )?;
        Ok(Some(c.finish(d, "thm-a", BoundKind::Upper, None)))
    }

    fn pgl_candidates(&self, d: &GroupDescriptor, n: u32) -> Result<Vec<BoundReport>> {
        let mut out = known_values(d);
        if n >= 4 {
            out.extend(self.pgl_projs_route(d, n)?);
        }
        if n >= 3 {
            let t = DynkinType::new(Family::A, n as usize - 1)?;
            out.extend(self.short_route(d, t)?);
        }
        if n >= 5 && n % 2 == 1 {
            let mut c = Chain::default();
            c.step(
                Rule::Lrrs,
                "external: ed(PGL_n) <= (n-1)(n-2)/2 for n odd",
                &[("n", Arg::Lit(n as i64))],
            )?;
            out.push(c.finish(d, "lrrs", BoundKind::Upper, None));
        }
        Ok(out)
    }

    fn psp_candidates(&self, d: &GroupDescriptor, n: u32) -> Result<Vec<BoundReport>> {
        let mut out = known_values(d);
        let p = d.characteristic as i64;
        if n == 2 {
            let so5 = GroupDescriptor::new(GroupKind::So { n: 5 }, d.characteristic)?;
            for k in known_values(&so5) {
                let mut c = Chain::default();
                c.splice(&k);
                c.step(Rule::Isomorphism, "PSp_4 = SO_5", &[("ed(SO_5)", Arg::Ref(0))])?;
                out.push(c.finish(d, "isomorphism", k.kind, k.lower));
            }
        }
        if n >= 4 {
            let n = n as i64;
            let mut c = Chain::default();
            let w = c.step(
                Rule::PspModuleDim,
                "PSp_2n acts generically freely on P(W) x P(W); dim P(W) = 2n^2 - n - 2, or - 3 when char k | n and n > 4",
                &[("n", Arg::Lit(n)), ("char", Arg::Lit(p))],
            )?;
            let x = c.step(Rule::Sum, "dim P(W) x P(W)", &[("dim P(W)", Arg::Ref(w)), ("dim P(W)", Arg::Ref(w))])?;
            let g = c.step(
                Rule::GroupDim,
                "dim PSp_2n",
                &[("roots", Arg::Lit(2 * n * n)), ("rank", Arg::Lit(n))],
            )?;
            c.step(
                Rule::Compression,
                "ed(PSp_2n) <= 2 dim P(W) - dim PSp_2n",
                &[("dim X", Arg::Ref(x)), ("dim G", Arg::Ref(g))],
            )?;
            out.push(c.finish(d, "thm-psp", BoundKind::Upper, None));
        }
        if n >= 3 {
            out.extend(self.short_route(d, DynkinType::new(Family::C, n as usize)?)?);
        }
        Ok(out)
    }

    fn gl_candidates(&self, d: &GroupDescriptor, n: u32, m: u32) -> Result<Vec<BoundReport>> {
        let mut out = known_values(d);
        let pgl_bases = if n >= 2 {
            let pgl = GroupDescriptor::new(GroupKind::SlMod { n, m: n }, d.characteristic)?;
            self.candidates(&pgl)?
        } else {
            Vec::new()
        };
        for base in pgl_bases.into_iter().filter(|b| b.is_upper()) {
            let mut c = Chain::default();
            let k = c.splice(&base);
            c.step(
                Rule::SlTransfer,
                "ed(GL_n/mu_m) <= ed(PGL_n) + n/m - 1",
                &[
                    ("ed(PGL_n)", Arg::Ref(k)),
                    ("n", Arg::Lit(n as i64)),
                    ("m", Arg::Lit(m as i64)),
                ],
            )?;
            out.push(c.finish(d, &base.route, BoundKind::Upper, None));
        }
        let np = coprime_reduce(n as u64, m as u64)? as u32;
        if np < n {
            let reduced = GroupDescriptor::new(GroupKind::GlMod { n: np, m }, d.characteristic)?;
            let sub = self.best_bound(&reduced)?;
            let mut c = Chain::default();
            let k = c.splice(&sub);
            c.step(
                Rule::Coprime,
                "ed(GL_n/mu_m) = ed(GL_n'/mu_m), n' the part of n sharing primes with m",
                &[
                    ("n", Arg::Lit(n as i64)),
                    ("m", Arg::Lit(m as i64)),
                    ("n'", Arg::Lit(np as i64)),
                    ("ed(GL_n'/mu_m)", Arg::Ref(k)),
                ],
            )?;
            out.push(c.finish(d, "coprime", sub.kind, sub.lower));
        }
        if m == 2 && n.is_multiple_of(2) && n >= 4 {
            let psp = GroupDescriptor::new(GroupKind::PSp { n: n / 2 }, d.characteristic)?;
            for base in self.candidates(&psp)?.into_iter().filter(|b| b.is_upper()) {
                let mut c = Chain::default();
                let k = c.splice(&base);
                c.step(
                    Rule::Ordering,
                    "ed(GL_2n/mu_2) <= ed(PSp_2n): H^1(PSp_2n) -> H^1(GL_2n/mu_2) is onto",
                    &[("ed(PSp_2n)", Arg::Ref(k))],
                )?;
                out.push(c.finish(d, &base.route, BoundKind::Upper, None));
            }
        }
        Ok(out)
    }

    fn sl_candidates(&self, d: &GroupDescriptor, n: u32, m: u32) -> Result<Vec<BoundReport>> {
        let mut out = known_values(d);
        let gl = GroupDescriptor::new(GroupKind::GlMod { n, m }, d.characteristic)?;
        for base in self.candidates(&gl)?.into_iter().filter(|b| b.is_upper()) {
            let mut c = Chain::default();
            let k = c.splice(&base);
            c.step(
                Rule::ExactSequence,
                "1 -> SL_n/mu_m -> GL_n/mu_m x G_m -> ... : ed(GL_n/mu_m) <= ed(SL_n/mu_m) <= ed(GL_n/mu_m) + 1",
                &[("ed(GL_n/mu_m)", Arg::Ref(k)), ("dim C", Arg::Lit(1))],
            )?;
            let (kind, lower) = match base.kind {
                BoundKind::Exact => (BoundKind::Interval, Some(base.value)),
                BoundKind::Interval => (BoundKind::Interval, base.lower),
                _ => (BoundKind::Upper, None),
            };
            out.push(c.finish(d, &base.route, kind, lower));
        }
        if n >= 4 {
            let mut c = Chain::default();
            c.step(
                Rule::MFree,
                "ed(SL_n/mu_m) <= n^2 - 3n + 1 + n/4 for every m | n",
                &[("n", Arg::Lit(n as i64))],
            )?;
            out.push(c.finish(d, "m-free", BoundKind::Upper, None));
        }
        let p = d.characteristic as u64;
        if p > 0 {
            'search: for e in 1..=(n as u64).max(2) {
                for eps in [1i64, -1] {
                    let (mm, _) = frobenius_bound(n as u64, p, e, eps)?;
                    if mm == m as u64 {
                        let mut c = Chain::default();
                        c.step(
                            Rule::Frobenius,
                            "SL_n/mu_m on W (x) W^[e] or W* (x) W^[e], m = gcd(p^e + eps, n): ed <= n^2 - n + 1",
                            &[
                                ("n", Arg::Lit(n as i64)),
                                ("p", Arg::Lit(p as i64)),
                                ("e", Arg::Lit(e as i64)),
                                ("eps", Arg::Lit(eps)),
                                ("m", Arg::Lit(m as i64)),
                            ],
                        )?;
                        out.push(c.finish(d, "frobenius", BoundKind::Upper, None));
                        break 'search;
                    }
                }
            }
        }
        Ok(out)
    }

    fn spin_candidates(&self, d: &GroupDescriptor, n: u32) -> Result<Vec<BoundReport>> {
        let mut out = known_values(d);
        if n == 5 {
            let mut c = Chain::default();
            c.step(Rule::Known, "external: ed(Sp_4) = 0", &[("value", Arg::Lit(0))])?;
            c.step(Rule::Isomorphism, "Spin_5 = Sp_4", &[("ed(Sp_4)", Arg::Ref(0))])?;
            out.push(c.finish(d, "isomorphism", BoundKind::Exact, None));
        } else {
            let mut c = Chain::default();
            let v = c.step(
                Rule::SpinFaithfulDim,
                "spin representation (n odd) or vector plus half-spin (n even) is faithful",
                &[("n", Arg::Lit(n as i64))],
            )?;
            c.step(Rule::Faithful, "ed(G) <= dim V for a faithful V", &[("dim V", Arg::Ref(v))])?;
            out.push(c.finish(d, "brv", BoundKind::Upper, None));
        }
        Ok(out)
    }

    fn hspin_candidates(&self, d: &GroupDescriptor, n: u32) -> Result<Vec<BoundReport>> {
        let mut out = known_values(d);
        let (id, cert) = self.certificate(CertKey::HalfSpin(n))?;
        if cert.passed() {
            let mut c = Chain::default();
            c.certificates.push(id);
            let v = c.step(Rule::HalfSpinDim, "dim of a half-spin module", &[("n", Arg::Lit(n as i64))])?;
            c.step(
                Rule::GenfreeLinear,
                "N_G(T) acts generically freely on the half-spin module",
                &[("dim V", Arg::Ref(v)), ("dim N_G(T)", Arg::Lit(n as i64 / 2))],
            )?;
            out.push(c.finish(d, "half-spin", BoundKind::Upper, None));
        }
        Ok(out)
    }

    fn exceptional_candidates(&self, d: &GroupDescriptor, family: char, rank: u32, sc: bool) -> Result<Vec<BoundReport>> {
        let mut out = known_values(d);
        let t = d.dynkin_type().expect("exceptional type");
        if family == 'G' {
            return Ok(out);
        }
        if !sc {
            out.extend(self.short_route(d, t)?);
            return Ok(out);
        }
        if rank == 6 {
            let f4 = GroupDescriptor::new(
                GroupKind::Exceptional {
                    family: 'F',
                    rank: 4,
                    simply_connected: false,
                },
                d.characteristic,
            )?;
            for base in self.candidates(&f4)?.into_iter().filter(|b| b.is_upper() && b.route != "external") {
                let mut c = Chain::default();
                let k = c.splice(&base);
                c.step(
                    Rule::Sum,
                    "H^1(F_4 x mu_3) -> H^1(E_6^sc) is onto: ed(E_6^sc) <= ed(F_4) + ed(mu_3)",
                    &[("ed(F_4)", Arg::Ref(k)), ("ed(mu_3)", Arg::Lit(1))],
                )?;
                out.push(c.finish(d, "thm-ed", BoundKind::Upper, None));
            }
        }
        let idx = if rank == 6 { 1 } else { 7 };
        let (id, cert) = self.certificate(CertKey::Minuscule(t, idx))?;
        if cert.passed() {
            let dim_v = if rank == 6 { 27 } else { 56 };
            let mut c = Chain::default();
            c.certificates.push(id);
            c.step(
                Rule::GenfreeLinear,
                "N_G(T) acts generically freely on the minuscule module",
                &[("dim V", Arg::Lit(dim_v)), ("dim N_G(T)", Arg::Lit(rank as i64))],
            )?;
            out.push(c.finish(d, if rank == 7 { "thm-ed" } else { "minuscule" }, BoundKind::Upper, None));
        }
        Ok(out)
    }

    /// Every bound the rules produce for `d`, each with its route name.
    pub fn candidates(&self, d: &GroupDescriptor) -> Result<Vec<BoundReport>> {
        let out = match d.kind {
            GroupKind::SlMod { n, m } if m == n => self.pgl_candidates(d, n)?,
            GroupKind::SlMod { n, m } => self.sl_candidates(d, n, m)?,
            GroupKind::GlMod { n, m } => self.gl_candidates(d, n, m)?,
            GroupKind::Sp { .. } => known_values(d),
            GroupKind::PSp { n } => self.psp_candidates(d, n)?,
            GroupKind::So { .. } => known_values(d),
            GroupKind::Pso { n } => self
                .short_route(d, DynkinType::new(Family::D, n as usize)?)?
                .into_iter()
                .collect(),
            GroupKind::Spin { n } => self.spin_candidates(d, n)?,
            GroupKind::HSpin { n } => self.hspin_candidates(d, n)?,
            GroupKind::Exceptional { family, rank, simply_connected } => {
                self.exceptional_candidates(d, family, rank, simply_connected)?
            }
        };
        for r in &out {
            r.replay()?;
        }
        Ok(out)
    }

    /// The candidate produced by one route, if it applies.
    pub fn route(&self, d: &GroupDescriptor, route: &str) -> Result<Option<BoundReport>> {
        Ok(pick(self.candidates(d)?.into_iter().filter(|r| r.route == route && r.is_upper()).collect()))
    }

    /// Exact values first, then the least upper bound; ties go to the
    /// shorter chain.
    pub fn best_bound(&self, d: &GroupDescriptor) -> Result<BoundReport> {
        let all = self.candidates(d)?;
        let uppers: Vec<BoundReport> = all.iter().filter(|r| r.is_upper()).cloned().collect();
        let best = match pick(uppers) {
            Some(b) => b,
            None => all
                .into_iter()
                .max_by_key(|r| r.value)
                .ok_or_else(|| Error::NotAvailable(format!("no rule applies to {}", d.name())))?,
        };
        best.replay()?;
        if let Some(g) = big_o_guarantee(d) {
            if best.is_upper() && best.value > g {
                return Err(Error::Domain(format!(
                    "{}: best bound {} exceeds dim G - 2 rk G - 1 = {g}",
                    d.name(),
                    best.value
                )));
            }
        }
        Ok(best)
    }
}

fn pick(mut v: Vec<BoundReport>) -> Option<BoundReport> {
    v.sort_by(|a, b| {
        let exact = |r: &BoundReport| r.kind != BoundKind::Exact;
        (exact(a), a.value, a.provenance.len(), &a.route).cmp(&(exact(b), b.value, b.provenance.len(), &b.route))
    });
    v.into_iter().next()
}

// ---------------------------------------------------------------------------
// generic stabilizer of the adjoint action

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentGroupReport {
    pub group: String,
    #[serde(rename = "char")]
    pub characteristic: u32,
    pub connected: bool,
    /// Order of `S / S°`.
    pub order: String,
    pub structure: String,
    pub acts_by_inversion: bool,
    pub notes: Vec<String>,
}

/// Component group of the stabilizer of a generic element of `Lie(G)`,
/// read off from the kernel of `W` on the root lattice mod `p`.
pub fn adjoint_stabilizer(d: &GroupDescriptor) -> Result<ComponentGroupReport> {
    let t = d
        .dynkin_type()
        .ok_or_else(|| Error::Domain("GL_n/mu_m is not simple".into()))?;
    let mut notes = Vec::new();
    if d.isogeny() != Isogeny::Adjoint {
        notes.push(format!("computed for the adjoint group of type {t}, the image of {}", d.name()));
    }
    let p = d.characteristic;
    let (order, elementary, minus_one) = if p == 0 {
        notes.push("characteristic 0: W acts faithfully on the Lie algebra of T".into());
        (num_bigint::BigUint::from(1u32), true, false)
    } else {
        let rs = RootSystem::build(t);
        let k = weyl::kernel_mod_p(&rs, p, false)?;
        (k.order, k.elementary_abelian_2, k.contains_minus_one)
    };
    let one = num_bigint::BigUint::from(1u32);
    let connected = order == one;
    let structure = if connected {
        "trivial".to_string()
    } else if order == num_bigint::BigUint::from(2u32) {
        "Z/2".to_string()
    } else if elementary {
        format!("(Z/2)^{}", order.bits() - 1)
    } else {
        format!("order {order}")
    };
    let acts_by_inversion = minus_one && order == num_bigint::BigUint::from(2u32);
    if acts_by_inversion {
        notes.push("the nontrivial component acts on S° by inversion".into());
    }
    Ok(ComponentGroupReport {
        group: d.name(),
        characteristic: p,
        connected,
        order: order.to_string(),
        structure,
        acts_by_inversion,
        notes,
    })
}
