//! Generic-freeness certificates.
//!
//! For a group `N` with identity component a torus `T` acting on a
//! multiplicity-free representation with weights `Omega`, `N` acts
//! generically freely once `T` acts faithfully and `N/T` acts faithfully on
//! the kernel of `psi: Z^Omega -> T^*`. Both hypotheses are finite checks;
//! this module performs them and records what was checked.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{self, poly, FiniteField};
use crate::intlat::{self, CokernelOrder, IntegerMatrix};
use crate::perm::{self, Perm};
use crate::reps::{self, WeightMultiset};
use crate::rootsys::{Family, RootSystem};
use crate::schreier::StabChain;
use crate::weyl::{self, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Strategy {
    Exhaustive,
    MinimalNormalWitnesses,
    MonteCarlo { trials: u64, seed: u64 },
    Inequality,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Exhaustive => f.write_str("exhaustive"),
            Strategy::MinimalNormalWitnesses => f.write_str("minimal-normal-witnesses"),
            Strategy::MonteCarlo { trials, seed } => write!(f, "monte-carlo(trials={trials}, seed={seed})"),
            Strategy::Inequality => f.write_str("inequality"),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    /// Accepts `exhaustive`, `witnesses` (or `minimal-normal-witnesses`) and
    /// `monte-carlo` with default trial count and seed.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "witnesses" | "minimal-normal-witnesses" => Ok(Strategy::MinimalNormalWitnesses),
            "monte-carlo" | "montecarlo" => Ok(Strategy::MonteCarlo {
                trials: DEFAULT_TRIALS,
                seed: DEFAULT_SEED,
            }),
            other => Err(Error::Domain(format!(
                "unknown strategy {other:?} (expected exhaustive, witnesses or monte-carlo)"
            ))),
        }
    }
}

pub const DEFAULT_TRIALS: u64 = 200;
pub const DEFAULT_SEED: u64 = 1;

const SWEEP_STRATEGIES: [&str; 2] = ["minimal-normal-witnesses", "monte-carlo"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Target {
    pub group: String,
    pub representation: String,
    pub projective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: String,
    pub detail: String,
    /// Reduced word in 1-based simple reflection indices, when the element is in `W`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<usize>>,
    /// Coordinate vectors (weights in `T^*` coordinates or kernel vectors).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub coords: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element_index: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub target: Target,
    pub verdict: Verdict,
    pub strategy: Strategy,
    pub torus_faithful: bool,
    pub torus_kernel_order: String,
    pub kernel_rank: usize,
    pub group_order: String,
    /// Non-identity elements examined.
    pub elements_checked: u64,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<i64>,
    pub provenance: Vec<String>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

// ---------------------------------------------------------------------------
// torus and kernel checks

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusCheck {
    pub faithful: bool,
    /// Order of `T^*` modulo the span; the kernel of the torus action.
    pub kernel_order: CokernelOrder,
}

/// Whether `T` acts generically freely on `V` (or on `P(V)` when
/// `projective`), decided by the span of the weights (or of their differences).
pub fn torus_generically_free(weights: &WeightMultiset, projective: bool) -> Result<TorusCheck> {
    if weights.is_empty() {
        return Err(Error::Domain("empty weight set".into()));
    }
    let r = weights.lattice.rank();
    let ws = weights.weights();
    let vectors: Vec<Vec<i64>> = if projective {
        ws[1..]
            .iter()
            .map(|w| w.iter().zip(&ws[0]).map(|(a, b)| a - b).collect())
            .collect()
    } else {
        ws.to_vec()
    };
    let kernel_order = intlat::cokernel_order(&vectors, r)?;
    Ok(TorusCheck {
        faithful: kernel_order == CokernelOrder::Finite(BigUint::one()),
        kernel_order,
    })
}

/// Saturated basis of `ker psi` inside `Z^Omega`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiKernel {
    pub basis: Vec<Vec<i64>>,
    pub rank_psi: usize,
    pub size: usize,
}

impl PsiKernel {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

pub fn psi_kernel(weights: &WeightMultiset) -> Result<PsiKernel> {
    if !weights.is_multiplicity_free() {
        return Err(Error::Domain("repeated weights: the multiplicity-one hypothesis fails".into()));
    }
    if weights.is_empty() {
        return Err(Error::Domain("empty weight set".into()));
    }
    let r = weights.lattice.rank();
    let ws = weights.weights();
    let rows: Vec<Vec<i64>> = (0..r).map(|i| ws.iter().map(|w| w[i]).collect()).collect();
    let a = IntegerMatrix::from_rows(&rows)?;
    let rank_psi = intlat::snf(&a)?.rank();
    let basis: Vec<Vec<i64>> = intlat::kernel_basis(&a)?
        .iter()
        .map(|v| v.iter().map(|x| intlat::to_i64(x).expect("kernel entries fit in i64")).collect())
        .collect();
    debug_assert_eq!(basis.len(), ws.len() - rank_psi);
    Ok(PsiKernel {
        basis,
        rank_psi,
        size: ws.len(),
    })
}

/// Whether the permutation `images` of `Omega` fixes every kernel vector.
///
/// A kernel vector is fixed exactly when it is constant on every cycle. When
/// the cycles are fewer than the kernel rank the fixed space is too small to
/// contain the kernel, which settles most elements without touching it.
pub fn acts_trivially_on_images(images: &[u16], kernel: &PsiKernel, scratch: &mut Vec<bool>) -> bool {
    debug_assert_eq!(images.len(), kernel.size);
    let cycles = perm::cycle_count(images, scratch);
    if images.len() - cycles > kernel.rank_psi {
        return false;
    }
    kernel
        .basis
        .iter()
        .all(|v| images.iter().enumerate().all(|(x, &y)| v[x] == v[y as usize]))
}

/// Permutation of `Omega` induced by a Weyl element.
pub fn omega_images(rs: &RootSystem, w: &WeylElement, weights: &WeightMultiset) -> Result<Vec<u16>> {
    let omega = weights.weights_in_weight_coords();
    let index: HashMap<&[i64], usize> = omega.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    omega
        .iter()
        .map(|x| {
            let img = w.apply_weight(rs, x);
            index
                .get(img.as_slice())
                .map(|&j| j as u16)
                .ok_or_else(|| Error::Domain("element does not stabilize the weight set".into()))
        })
        .collect()
}

/// Whether `w` acts trivially on `ker psi`.
pub fn acts_trivially_on_kernel(
    rs: &RootSystem,
    w: &WeylElement,
    weights: &WeightMultiset,
    kernel: &PsiKernel,
) -> Result<bool> {
    let images = omega_images(rs, w, weights)?;
    Ok(acts_trivially_on_images(&images, kernel, &mut Vec::new()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinusOneCheck {
    pub half_set_size: usize,
    pub dim_t: usize,
    /// `|P| > dim T`
    pub by_count: bool,
    /// The cycle test applied to `-1` directly.
    pub direct: bool,
}

/// `-1` moves `ker psi` when a half-set of `Omega` is larger than `dim T`.
pub fn minus_one_moves_kernel(weights: &WeightMultiset, dim_t: usize) -> Result<MinusOneCheck> {
    if weights.contains_zero() {
        return Err(Error::Domain("the zero weight is present".into()));
    }
    let ws = weights.weights();
    let index: HashMap<&[i64], usize> = ws.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let images = ws
        .iter()
        .map(|w| {
            let neg: Vec<i64> = w.iter().map(|x| -x).collect();
            index
                .get(neg.as_slice())
                .map(|&j| j as u16)
                .ok_or_else(|| Error::Domain("weight set is not closed under negation".into()))
        })
        .collect::<Result<Vec<u16>>>()?;
    let kernel = psi_kernel(weights)?;
    let half = ws.len() / 2;
    let by_count = half > dim_t;
    let direct = !acts_trivially_on_images(&images, &kernel, &mut Vec::new());
    if by_count {
        assert!(direct, "count criterion contradicted by the cycle test");
    }
    Ok(MinusOneCheck {
        half_set_size: half,
        dim_t,
        by_count,
        direct,
    })
}

// ---------------------------------------------------------------------------
// the group acting on Omega

/// `W` acting on `Omega` followed by the roots. The root block makes every
/// enumerated permutation convertible back into a Weyl element.
pub struct OmegaAction<'a> {
    rs: &'a RootSystem,
    omega: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    base: Vec<usize>,
}

impl<'a> OmegaAction<'a> {
    pub fn new(rs: &'a RootSystem, weights: &WeightMultiset) -> Result<Self> {
        let omega = weights.weights_in_weight_coords();
        let index = omega.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut base = Vec::new();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for (i, w) in omega.iter().enumerate() {
            if base.len() == rs.rank() {
                break;
            }
            rows.push(w.clone());
            if intlat::snf(&IntegerMatrix::from_rows(&rows)?)?.rank() == rows.len() {
                base.push(i);
            } else {
                rows.pop();
            }
        }
        if base.len() < rs.rank() {
            return Err(Error::Domain("weights do not span: the Weyl group does not act faithfully".into()));
        }
        Ok(OmegaAction { rs, omega, index, base })
    }

    pub fn omega_len(&self) -> usize {
        self.omega.len()
    }

    pub fn degree(&self) -> usize {
        self.omega.len() + self.rs.num_roots()
    }

    pub fn lift(&self, w: &WeylElement) -> Result<Perm> {
        let m = self.omega.len();
        let mut images = Vec::with_capacity(self.degree());
        for x in &self.omega {
            let img = w.apply_weight(self.rs, x);
            images.push(
                *self
                    .index
                    .get(&img)
                    .ok_or_else(|| Error::Domain("element does not stabilize the weight set".into()))?,
            );
        }
        images.extend(w.perm().images().iter().map(|&x| m + x as usize));
        Ok(Perm::from_images(images).expect("bijection"))
    }

    pub fn chain(&self, gens: &[WeylElement]) -> Result<StabChain> {
        let perms = gens.iter().map(|g| self.lift(g)).collect::<Result<Vec<_>>>()?;
        StabChain::new(self.degree(), &perms, &self.base)
    }

    pub fn weyl_chain(&self) -> Result<StabChain> {
        self.chain(&weyl::simple_reflections(self.rs))
    }

    pub fn to_weyl(&self, images: &[u16]) -> WeylElement {
        let m = self.omega.len();
        let tail = images[m..].iter().map(|&x| x as usize - m).collect();
        WeylElement::from_perm(Perm::from_images(tail).expect("roots are invariant"))
    }
}

fn element_witness(rs: &RootSystem, w: &WeylElement, kind: &str, index: Option<u64>) -> Witness {
    let word = weyl::reduced_word(rs, w).map(|v| v.iter().map(|i| i + 1).collect::<Vec<_>>());
    let detail = match &word {
        Some(v) if v.is_empty() => "identity".to_string(),
        Some(v) => v.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" "),
        None => "element outside W".to_string(),
    };
    Witness {
        kind: kind.to_string(),
        detail,
        word,
        coords: Vec::new(),
        element_index: index,
    }
}

// ---------------------------------------------------------------------------
// exhaustive sweep

struct SweepOutcome {
    checked: u64,
    first_trivial: Option<(u64, Vec<u16>)>,
}

fn walk<F: FnMut(u64, &[u16]) -> bool>(
    inv: &[Vec<Perm>],
    prefix: &[u16],
    bufs: &mut [Vec<u16>],
    idx: &mut u64,
    visit: &mut F,
) -> bool {
    match inv.split_first() {
        None => {
            let stop = visit(*idx, prefix);
            *idx += 1;
            stop
        }
        Some((level, rest)) => {
            let (buf, more) = bufs.split_first_mut().expect("one buffer per level");
            for v in level {
                perm::compose_into(prefix, v.images(), buf);
                if walk(rest, buf, more, idx, visit) {
                    return true;
                }
            }
            false
        }
    }
}

/// Tests every nonidentity element; reports the trivially acting element of
/// least enumeration index, if any.
fn sweep(chain: &StabChain, m: usize, kernel: &PsiKernel) -> SweepOutcome {
    let inv = chain.inverse_transversals();
    let degree = chain.degree();
    if inv.is_empty() {
        return SweepOutcome {
            checked: 0,
            first_trivial: None,
        };
    }
    let stride: u64 = inv[1..].iter().map(|l| l.len() as u64).product();
    let done = AtomicU64::new(0);
    let total = inv[0].len() as u64;
    let results: Vec<(u64, Option<(u64, Vec<u16>)>)> = inv[0]
        .par_iter()
        .enumerate()
        .map(|(i0, v0)| {
            let mut bufs = vec![vec![0u16; degree]; inv.len() - 1];
            let mut scratch = Vec::new();
            let mut idx = i0 as u64 * stride;
            let mut checked = 0u64;
            let mut found = None;
            walk(&inv[1..], v0.images(), &mut bufs, &mut idx, &mut |i, p| {
                if i == 0 {
                    return false;
                }
                checked += 1;
                if acts_trivially_on_images(&p[..m], kernel, &mut scratch) {
                    found = Some((i, p.to_vec()));
                    return true;
                }
                false
            });
            let d = done.fetch_add(1, Ordering::Relaxed) + 1;
            log::debug!("sweep: {d}/{total} top-level cosets done");
            (checked, found)
        })
        .collect();
    let checked = results.iter().map(|r| r.0).sum();
    let first_trivial = results.into_iter().filter_map(|r| r.1).min_by_key(|r| r.0);
    SweepOutcome { checked, first_trivial }
}

// ---------------------------------------------------------------------------
// minimal normal subgroups

#[derive(Clone, Debug)]
pub struct NormalWitness {
    pub name: String,
    /// The subgroup is the normal closure of this element.
    pub element: WeylElement,
}

/// Generators of the minimal normal subgroups of `W`, one per subgroup.
pub fn minimal_normal_generators(rs: &RootSystem) -> Result<Vec<NormalWitness>> {
    let ty = rs.dynkin_type();
    let n = ty.rank;
    let word = |w: &[usize]| WeylElement::from_word(rs, w);
    let minus = || NormalWitness {
        name: "<-1>".into(),
        element: WeylElement::minus_one(rs),
    };
    let mut out = Vec::new();
    match ty.family {
        Family::A => match n {
            1 => out.push(minus()),
            2 => out.push(NormalWitness {
                name: "Z/3 = <s1 s2>".into(),
                element: word(&[0, 1])?,
            }),
            3 => out.push(NormalWitness {
                name: "V4, normal closure of s1 s3".into(),
                element: word(&[0, 2])?,
            }),
            _ => out.push(NormalWitness {
                name: format!("Alt({}), normal closure of s1 s2", n + 1),
                element: word(&[0, 1])?,
            }),
        },
        Family::B | Family::C => {
            out.push(minus());
            if n % 2 == 1 {
                out.push(NormalWitness {
                    name: "even sign changes".into(),
                    element: weyl::double_sign_flip(rs, 0, 1)?,
                });
            }
        }
        Family::D => {
            if n.is_multiple_of(2) {
                out.push(minus());
            } else {
                out.push(NormalWitness {
                    name: "even sign changes".into(),
                    element: weyl::double_sign_flip(rs, 0, 1)?,
                });
            }
        }
        Family::E => {
            if n != 6 {
                out.push(minus());
            }
            if n != 8 {
                out.push(NormalWitness {
                    name: "rotation subgroup W+, normal closure of s1 s3".into(),
                    element: word(&[0, 2])?,
                });
            }
        }
        Family::F => out.push(minus()),
        Family::G => {
            out.push(minus());
            out.push(NormalWitness {
                name: "Z/3 = <(s1 s2)^2>".into(),
                element: word(&[0, 1, 0, 1])?,
            });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// faithfulness of W on ker psi

#[derive(Clone, Debug)]
pub struct KernelActionReport {
    pub verdict: Verdict,
    pub strategy: Strategy,
    pub group_order: BigUint,
    pub elements_checked: u64,
    pub witnesses: Vec<Witness>,
    pub provenance: Vec<String>,
}

/// Whether `W` acts faithfully on `ker psi`, by the chosen strategy.
pub fn faithful_kernel_action(
    rs: &RootSystem,
    weights: &WeightMultiset,
    strategy: Strategy,
    limit: u64,
) -> Result<KernelActionReport> {
    let kernel = psi_kernel(weights)?;
    let action = OmegaAction::new(rs, weights)?;
    let chain = action.weyl_chain()?;
    let order = chain.order();
    let m = action.omega_len();
    let mut provenance = vec![format!(
        "ker psi has rank {} = |Omega| {} - rank psi {}",
        kernel.rank(),
        m,
        kernel.rank_psi
    )];
    let mut witnesses = Vec::new();
    let mut checked = 0u64;
    let verdict = match strategy {
        Strategy::Exhaustive => {
            if order > BigUint::from(limit) {
                return Err(Error::Infeasible {
                    reason: format!("|W({})| = {order} exceeds the enumeration limit {limit}", rs.label()),
                    feasible: SWEEP_STRATEGIES.iter().map(|s| s.to_string()).collect(),
                });
            }
            log::info!("sweeping {order} elements of W({})", rs.label());
            let out = sweep(&chain, m, &kernel);
            checked = out.checked;
            match out.first_trivial {
                None => {
                    provenance.push(format!(
                        "all {} nonidentity elements of W act nontrivially on ker psi",
                        out.checked
                    ));
                    Verdict::Pass
                }
                Some((idx, p)) => {
                    let w = action.to_weyl(&p);
                    witnesses.push(element_witness(rs, &w, "acts-trivially-on-kernel", Some(idx)));
                    provenance.push("a nonidentity element fixes ker psi pointwise".into());
                    Verdict::Fail
                }
            }
        }
        Strategy::MinimalNormalWitnesses => {
            let mut ok = true;
            for nw in minimal_normal_generators(rs)? {
                let images = action.lift(&nw.element)?;
                checked += 1;
                let trivial = acts_trivially_on_images(&images.images()[..m], &kernel, &mut Vec::new());
                if trivial {
                    ok = false;
                    witnesses.push(element_witness(rs, &nw.element, "acts-trivially-on-kernel", None));
                    provenance.push(format!("generator of {} acts trivially on ker psi", nw.name));
                } else {
                    provenance.push(format!("generator of minimal normal subgroup {} moves ker psi", nw.name));
                }
            }
            if ok {
                provenance.push(
                    "the kernel of W on ker psi is normal and contains no minimal normal subgroup, so it is trivial"
                        .into(),
                );
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        }
        Strategy::MonteCarlo { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let listed: Vec<(NormalWitness, Perm)> = minimal_normal_generators(rs)?
                .into_iter()
                .map(|nw| {
                    let p = action.lift(&nw.element)?;
                    Ok((nw, p))
                })
                .collect::<Result<_>>()?;
            let gens: Vec<Perm> = weyl::simple_reflections(rs)
                .iter()
                .map(|g| action.lift(g))
                .collect::<Result<_>>()?;
            let mut verdict = Verdict::Pass;
            let mut closures = 0u64;
            for t in 0..trials {
                let g = chain.random_element(&mut rng);
                if g.is_identity() {
                    continue;
                }
                checked += 1;
                if acts_trivially_on_images(&g.images()[..m], &kernel, &mut Vec::new()) {
                    witnesses.push(element_witness(rs, &action.to_weyl(g.images()), "acts-trivially-on-kernel", Some(t)));
                    verdict = Verdict::Fail;
                    break;
                }
                if closure_contains_listed(&chain, &gens, &g, &listed, &action.base, &mut rng)? {
                    closures += 1;
                }
            }
            provenance.push(format!("seed {seed}: {checked} random nonidentity elements move ker psi"));
            provenance.push(format!(
                "{closures} of their normal closures were shown to contain a listed minimal normal subgroup"
            ));
            verdict
        }
        Strategy::Inequality => {
            return Err(Error::Domain("the inequality strategy applies only to the permutation-of-blocks lemma".into()))
        }
    };
    Ok(KernelActionReport {
        verdict,
        strategy,
        group_order: order,
        elements_checked: checked,
        witnesses,
        provenance,
    })
}

/// Adds random conjugates of `g` until their span contains a listed
/// generator; every such span lies in the normal closure of `g`.
fn closure_contains_listed<R: Rng>(
    chain: &StabChain,
    gens: &[Perm],
    g: &Perm,
    listed: &[(NormalWitness, Perm)],
    base: &[usize],
    rng: &mut R,
) -> Result<bool> {
    let degree = chain.degree();
    let mut span = vec![g.clone()];
    let mut sub = StabChain::new(degree, &span, base)?;
    for _ in 0..8 {
        if listed.iter().any(|(_, h)| sub.contains(h)) {
            return Ok(true);
        }
        let before = sub.order();
        for _ in 0..2 {
            let x = chain.random_element(rng);
            let c = &(&x.inverse() * g) * &x;
            if !sub.contains(&c) {
                span.push(c);
            }
        }
        // also close under the generators once the random conjugates stall
        if span.len() > 1 {
            sub = StabChain::new(degree, &span, base)?;
        }
        if sub.order() == before {
            for s in gens {
                let c = &(&s.inverse() * g) * s;
                if !sub.contains(&c) {
                    span.push(c);
                }
            }
            sub = StabChain::new(degree, &span, base)?;
        }
    }
    Ok(listed.iter().any(|(_, h)| sub.contains(h)))
}

// ---------------------------------------------------------------------------
// certificates

fn assemble(
    target: Target,
    torus: &TorusCheck,
    kernel_rank: usize,
    report: KernelActionReport,
    bound: i64,
    mut provenance: Vec<String>,
) -> Certificate {
    let verdict = if torus.faithful && report.verdict == Verdict::Pass {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let mut witnesses = report.witnesses;
    if !torus.faithful {
        witnesses.push(Witness {
            kind: "torus-kernel".into(),
            detail: format!("T acts with kernel of order {}", torus.kernel_order),
            word: None,
            coords: Vec::new(),
            element_index: None,
        });
    }
    provenance.extend(report.provenance);
    Certificate {
        target,
        verdict,
        strategy: report.strategy,
        torus_faithful: torus.faithful,
        torus_kernel_order: torus.kernel_order.to_string(),
        kernel_rank,
        group_order: report.group_order.to_string(),
        elements_checked: report.elements_checked,
        witnesses,
        bound: (verdict == Verdict::Pass).then_some(bound),
        provenance,
    }
}

fn is_short_type(rs: &RootSystem) -> bool {
    let ty = rs.dynkin_type();
    match ty.family {
        Family::A => true,
        Family::C => ty.rank >= 3,
        Family::D => ty.rank >= 4,
        Family::E | Family::F => true,
        Family::B | Family::G => false,
    }
}

/// Strategy used when the caller does not choose one.
pub fn default_strategy(order: &BigUint, limit: u64) -> Strategy {
    if *order <= BigUint::from(limit) {
        Strategy::Exhaustive
    } else {
        Strategy::MinimalNormalWitnesses
    }
}

/// `N_G(T)` on `P(V-bar)` for the short-root module of the adjoint group;
/// on success the bound `|Omega| - dim T - 1`.
pub fn certify_short(rs: &RootSystem, strategy: Strategy, limit: u64) -> Result<Certificate> {
    if !is_short_type(rs) {
        return Err(Error::Domain(format!(
            "{} is outside the short-root list (A_n, C_n n>=3, D_n n>=4, E6, E7, E8, F4)",
            rs.label()
        )));
    }
    let module = reps::short_root_module(rs);
    let torus = torus_generically_free(&module, true)?;
    let kernel = psi_kernel(&module)?;
    let report = faithful_kernel_action(rs, &module, strategy, limit)?;
    let bound = module.len() as i64 - rs.rank() as i64 - 1;
    let mut provenance = vec![format!(
        "T on P(V-bar): differences of the {} short roots span T^* = Q: {}",
        module.len(),
        torus.faithful
    )];
    if rs.has_minus_one() && module.len() / 2 > rs.rank() {
        let m1 = minus_one_moves_kernel(&module, rs.rank())?;
        provenance.push(format!(
            "-1 moves ker psi: |P| = {} > dim T = {}",
            m1.half_set_size, m1.dim_t
        ));
    }
    if let Ok(triple) = rs.short_witness_triple() {
        provenance.push(format!("zero-sum short-root triple {triple:?}"));
    }
    let mut cert = assemble(
        Target {
            group: format!("N_G(T), G adjoint of type {}", rs.label()),
            representation: "short-root module modulo the zero weight space".into(),
            projective: true,
        },
        &torus,
        kernel.rank(),
        report,
        bound,
        provenance,
    );
    if cert.passed() {
        cert.provenance.push(format!(
            "compression bound: dim P(V-bar) - dim N_G(T) = {} - {} = {bound}",
            module.len() - 1,
            rs.rank()
        ));
    }
    Ok(cert)
}

/// A `size`-subset of `weights` with zero sum and no pair `chi, -chi`.
pub fn find_zero_sum_subset(weights: &[Vec<i64>], size: usize) -> Option<Vec<usize>> {
    if size == 0 || weights.is_empty() {
        return None;
    }
    let dim = weights[0].len();
    let index: HashMap<&[i64], usize> = weights.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let neg = |w: &[i64]| -> Vec<i64> { w.iter().map(|x| -x).collect() };
    let compatible = |chosen: &[usize], j: usize| -> bool {
        let nj = neg(&weights[j]);
        chosen.iter().all(|&i| i != j && weights[i] != nj)
    };

    fn rec(
        weights: &[Vec<i64>],
        size: usize,
        start: usize,
        sum: &mut Vec<i64>,
        chosen: &mut Vec<usize>,
        index: &HashMap<&[i64], usize>,
        compatible: &dyn Fn(&[usize], usize) -> bool,
    ) -> bool {
        if chosen.len() + 1 == size {
            let need: Vec<i64> = sum.iter().map(|x| -x).collect();
            if let Some(&j) = index.get(need.as_slice()) {
                if j >= start && compatible(chosen, j) {
                    chosen.push(j);
                    return true;
                }
            }
            return false;
        }
        for j in start..weights.len() {
            if !compatible(chosen, j) {
                continue;
            }
            chosen.push(j);
            sum.iter_mut().zip(&weights[j]).for_each(|(s, x)| *s += x);
            if rec(weights, size, j + 1, sum, chosen, index, compatible) {
                return true;
            }
            sum.iter_mut().zip(&weights[j]).for_each(|(s, x)| *s -= x);
            chosen.pop();
        }
        false
    }

    let mut sum = vec![0i64; dim];
    let mut chosen = Vec::new();
    rec(weights, size, 0, &mut sum, &mut chosen, &index, &compatible).then_some(chosen)
}

/// `N_G(T)` on a minuscule module of `E6` or `E7` (linear action); on
/// success the bound `|Omega| - dim T`.
pub fn certify_minuscule(rs: &RootSystem, fundamental_index: usize, strategy: Strategy, limit: u64) -> Result<Certificate> {
    let ty = rs.dynkin_type();
    if ty.family != Family::E || ty.rank == 8 {
        return Err(Error::Domain(format!(
            "minuscule certificates cover E6 and E7 only, not {}",
            rs.label()
        )));
    }
    let module = reps::minuscule_module(rs, fundamental_index)?;
    let torus = torus_generically_free(&module, false)?;
    let kernel = psi_kernel(&module)?;
    let mut provenance = vec![format!(
        "T on V: the {} weights span T^* = P: {}",
        module.len(),
        torus.faithful
    )];
    if let Some(x) = find_zero_sum_subset(module.weights(), 6) {
        provenance.push(format!("zero-sum 6-subset without opposite pairs at positions {x:?}"));
    }
    let report = faithful_kernel_action(rs, &module, strategy, limit)?;
    let bound = module.len() as i64 - rs.rank() as i64;
    let mut cert = assemble(
        Target {
            group: format!("N_G(T), G simply connected of type {}", rs.label()),
            representation: format!("minuscule module of highest weight omega_{fundamental_index}"),
            projective: false,
        },
        &torus,
        kernel.rank(),
        report,
        bound,
        provenance,
    );
    if let Some(x) = find_zero_sum_subset(module.weights(), 6) {
        cert.witnesses.push(Witness {
            kind: "zero-sum-subset".into(),
            detail: "six weights summing to zero, no two opposite".into(),
            word: None,
            coords: x.iter().map(|&i| module.weights()[i].clone()).collect(),
            element_index: None,
        });
    }
    if cert.passed() {
        cert.provenance.push(format!(
            "generic freeness bound: dim V - dim N_G(T) = {} - {} = {bound}",
            module.len(),
            rs.rank()
        ));
    }
    Ok(cert)
}

/// `N_G(T)` for `G = HSpin_n` on the half-spin module; on success the bound
/// `2^{n/2-1} - n/2`.
pub fn certify_half_spin(n: usize, strategy: Strategy, limit: u64) -> Result<Certificate> {
    let (rs, module) = reps::half_spin_module(n)?;
    let torus = torus_generically_free(&module, false)?;
    let kernel = psi_kernel(&module)?;
    let m1 = minus_one_moves_kernel(&module, rs.rank())?;
    let provenance = vec![
        format!(
            "T on V: the {} half-spin weights span the half-spin lattice: {}",
            module.len(),
            torus.faithful
        ),
        format!("-1 moves ker psi: |P| = {} > dim T = {}", m1.half_set_size, m1.dim_t),
    ];
    let report = faithful_kernel_action(&rs, &module, strategy, limit)?;
    let bound = module.len() as i64 - rs.rank() as i64;
    let mut cert = assemble(
        Target {
            group: format!("N_G(T), G = HSpin_{n}"),
            representation: "half-spin module".into(),
            projective: false,
        },
        &torus,
        kernel.rank(),
        report,
        bound,
        provenance,
    );
    if cert.passed() {
        cert.provenance.push(format!(
            "generic freeness bound: dim V - dim N_G(T) = {} - {} = {bound}",
            module.len(),
            rs.rank()
        ));
    }
    Ok(cert)
}

// ---------------------------------------------------------------------------
// permutations of blocks

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjsRow {
    pub cycle_type: Vec<usize>,
    /// `n - c`, bounding `dim s^T`.
    pub lhs: i64,
    /// `(m - c_m)(n - 2)`, bounding the codimension of `X^s`.
    pub rhs: i64,
    pub holds: bool,
}

fn partitions(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=n.min(max)).rev() {
        prefix.push(part);
        partitions(n - part, part, prefix, out);
        prefix.pop();
    }
}

/// The dimension inequality for every nonidentity cycle type of `S_n`
/// acting on `P(W_1) x ... x P(W_n)`.
pub fn verify_projs_inequality(n: usize) -> Result<Vec<ProjsRow>> {
    if n < 3 {
        return Err(Error::Domain(format!("n = {n} is below 3")));
    }
    let mut all = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut all);
    Ok(all
        .into_iter()
        .filter(|lam| lam[0] > 1)
        .map(|lam| {
            let c = lam.len() as i64;
            let moved: i64 = lam.iter().filter(|&&l| l > 1).map(|&l| l as i64).sum();
            let c_m = lam.iter().filter(|&&l| l > 1).count() as i64;
            let lhs = n as i64 - c;
            let rhs = (moved - c_m) * (n as i64 - 2);
            ProjsRow {
                cycle_type: lam,
                lhs,
                rhs,
                holds: lhs < rhs,
            }
        })
        .collect())
}

/// Certificate for `N_G(T)`, `G = PGL_n`, on the product of the row blocks,
/// with bound `n^2 - 3n + 1`.
pub fn certify_projs(n: usize) -> Result<Certificate> {
    let rows = verify_projs_inequality(n)?;
    let failing: Vec<&ProjsRow> = rows.iter().filter(|r| !r.holds).collect();
    // T on P(W_i) has kernel cut out by e_j - e_k for j, k != i
    let ambient = n - 1;
    let root = |j: usize, k: usize| -> Vec<i64> {
        let mut v = vec![0i64; ambient];
        let (lo, hi) = (j.min(k), j.max(k));
        for x in v.iter_mut().take(hi).skip(lo) {
            *x = if j < k { 1 } else { -1 };
        }
        v
    };
    let mut diffs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if j != i && k != i && j != k {
                    diffs.push(root(j, k));
                }
            }
        }
    }
    let kernel_order = intlat::cokernel_order(&diffs, ambient)?;
    let faithful = kernel_order == CokernelOrder::Finite(BigUint::one());
    let verdict = if failing.is_empty() && faithful {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let bound = (n * n) as i64 - 3 * n as i64 + 1;
    let fact: BigUint = (1..=n as u64).map(BigUint::from).product();
    let mut provenance = vec![
        format!("T acts on X with kernel of order {kernel_order}"),
        format!(
            "{} nonidentity cycle types checked against dim s^T + dim X^s < dim X",
            rows.len()
        ),
    ];
    if verdict == Verdict::Pass {
        provenance.push(format!(
            "compression bound: dim X - dim N_G(T) = {} - {} = {bound}",
            n * (n - 2),
            n - 1
        ));
    }
    Ok(Certificate {
        target: Target {
            group: format!("N_G(T), G = PGL_{n}"),
            representation: "P(W_1) x ... x P(W_n), W_i the off-diagonal entries of row i".into(),
            projective: true,
        },
        verdict,
        strategy: Strategy::Inequality,
        torus_faithful: faithful,
        torus_kernel_order: kernel_order.to_string(),
        kernel_rank: 0,
        group_order: fact.to_string(),
        elements_checked: rows.len() as u64,
        witnesses: failing
            .iter()
            .map(|r| Witness {
                kind: "cycle-type".into(),
                detail: format!("{} >= {}", r.lhs, r.rhs),
                word: None,
                coords: vec![r.cycle_type.iter().map(|&x| x as i64).collect()],
                element_index: None,
            })
            .collect(),
        bound: (verdict == Verdict::Pass).then_some(bound),
        provenance,
    })
}

// ---------------------------------------------------------------------------
// AGL_1 on trace-zero monic polynomials

/// A monic polynomial of degree `n` over `F_q` with vanishing `x^{n-1}`
/// coefficient. Coefficients are listed from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolynomialSample {
    pub n: usize,
    pub q: u64,
    pub coefficients: Vec<u32>,
}

impl PolynomialSample {
    pub fn new(field: &FiniteField, coefficients: Vec<u32>) -> Result<Self> {
        let n = coefficients.len().saturating_sub(1);
        if n < 2 {
            return Err(Error::Domain("degree below 2".into()));
        }
        if coefficients[n] != 1 {
            return Err(Error::Domain("polynomial is not monic".into()));
        }
        if coefficients[n - 1] != 0 {
            return Err(Error::Domain("the x^(n-1) coefficient is nonzero".into()));
        }
        if coefficients.iter().any(|&c| c >= field.order()) {
            return Err(Error::Domain("coefficient outside the field".into()));
        }
        Ok(PolynomialSample {
            n,
            q: field.order() as u64,
            coefficients,
        })
    }

    pub fn is_squarefree(&self, field: &FiniteField) -> bool {
        let d = poly::derivative(field, &self.coefficients);
        poly::degree(&poly::gcd(field, &self.coefficients, &d)) == Some(0)
    }
}

/// `c^n f((x - b)/c) = f(x)`, i.e. `y -> c y + b` permutes the roots.
fn fixes(field: &FiniteField, a: &[u32], b: u32, cpow: &[u32]) -> bool {
    let n = a.len() - 1;
    // Horner in (x - b) on the coefficients a_j c^{n-j}
    let mut acc: Vec<u32> = vec![1];
    let nb = field.neg(b);
    for j in (0..n).rev() {
        let mut next = vec![0u32; acc.len() + 1];
        for (i, &v) in acc.iter().enumerate() {
            next[i + 1] = field.add(next[i + 1], v);
            next[i] = field.add(next[i], field.mul(v, nb));
        }
        next[0] = field.add(next[0], field.mul(a[j], cpow[n - j]));
        acc = next;
    }
    acc == a
}

/// Every `(c, b)` in `F_q^x x F_q` fixing `f`; `b = 0` unless translations are allowed.
pub fn agl1_stabilizer(field: &FiniteField, f: &PolynomialSample, allow_translations: bool) -> Vec<(u32, u32)> {
    let a = &f.coefficients;
    let n = f.n;
    let mut out = Vec::new();
    for c in 1..field.order() {
        let cpow: Vec<u32> = (0..=n).map(|e| field.pow(c, e as u64)).collect();
        let bs: Box<dyn Iterator<Item = u32>> = if allow_translations {
            Box::new(0..field.order())
        } else {
            Box::new(std::iter::once(0))
        };
        for b in bs {
            if fixes(field, a, b, &cpow) {
                out.push((c, b));
            }
        }
    }
    out
}

/// Which nontrivial elements of `AGL_1` over the algebraic closure fix a
/// squarefree `f`, by prime order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometricStabilizer {
    /// A nonzero translation fixes `f` (order `p`).
    pub translation: bool,
    /// Primes `l != p` for which an element of order `l` fixes `f`.
    pub scaling_orders: Vec<u32>,
}

impl GeometricStabilizer {
    pub fn is_trivial(&self) -> bool {
        !self.translation && self.scaling_orders.is_empty()
    }
}

/// Coefficients of `f(x + y)` in `x`, each a polynomial in `y`.
fn shifted_coefficients(field: &FiniteField, a: &[u32]) -> Vec<Vec<u32>> {
    let n = a.len() - 1;
    let binom = gf::binomials_mod(n, field.characteristic());
    (0..=n)
        .map(|i| {
            poly::trim(
                (i..=n)
                    .map(|j| field.mul(a[j], binom[j][i]))
                    .collect(),
            )
        })
        .collect()
}

fn is_prime(x: u32) -> bool {
    weyl::is_prime(x as u64)
}

/// Decides the stabilizer of `f` in `AGL_1(k-bar)` (or in `G_m` when
/// translations are not allowed) without extracting roots.
///
/// A nontrivial finite stabilizer contains an element of prime order: a
/// translation `y -> y + t` in characteristic `p`, or a scaling by a
/// primitive `l`-th root of unity about some centre `y0`. The first exists
/// iff the coefficients of `f(x + t) - f(x)` share a nonzero root in `t`;
/// the second iff the coefficients of `x^i` in `f(x + y0)` with `l` not
/// dividing `n - i` share a root `y0` (with `y0 = 0` forced in `G_m`).
pub fn geometric_stabilizer(field: &FiniteField, a: &[u32], allow_translations: bool) -> GeometricStabilizer {
    let n = a.len() - 1;
    let p = field.characteristic();
    let shifted = shifted_coefficients(field, a);
    let mut translation = false;
    if allow_translations {
        let mut g: Vec<u32> = Vec::new();
        for (i, s) in shifted.iter().enumerate().take(n) {
            // f(x + t) - f(x): drop the t^0 term a_i
            let mut d = s.clone();
            if !d.is_empty() {
                d[0] = field.sub(d[0], a[i]);
            }
            g = poly::gcd(field, &g, &poly::trim(d));
        }
        let v = g.iter().position(|&c| c != 0).unwrap_or(0);
        translation = poly::degree(&g).is_some_and(|d| d > v);
    }
    let mut scaling_orders = Vec::new();
    for l in (2..=n as u32).filter(|&l| is_prime(l) && l != p) {
        let relevant = (0..n).filter(|&i| !((n - i) as u32).is_multiple_of(l));
        let fixed = if allow_translations {
            let mut h: Vec<u32> = Vec::new();
            for i in relevant {
                h = poly::gcd(field, &h, &shifted[i]);
            }
            poly::is_zero(&h) || poly::degree(&h).is_some_and(|d| d > 0)
        } else {
            relevant.into_iter().all(|i| a[i] == 0)
        };
        if fixed {
            scaling_orders.push(l);
        }
    }
    GeometricStabilizer {
        translation,
        scaling_orders,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyStats {
    pub n: usize,
    pub q: u64,
    pub p: u32,
    pub seed: u64,
    pub samples: u64,
    pub translations_allowed: bool,
    pub trivial: u64,
    /// `trivial / samples`, exact.
    pub fraction: String,
    pub with_translation: u64,
    pub with_scaling: u64,
    /// Samples with a nontrivial stabilizer already over `F_q`.
    pub rational_nontrivial: u64,
    pub rejected_not_squarefree: u64,
    /// `n = 4` in characteristic 2, where every point has a translation.
    pub degenerate: bool,
}

/// Samples squarefree trace-zero monic polynomials and counts those with
/// trivial stabilizer in `AGL_1` (when `p | n`) or `G_m` (otherwise).
pub fn agl1_generic_check(n: usize, q: u64, samples: u64, seed: u64) -> Result<PolyStats> {
    if samples == 0 {
        return Err(Error::Domain("at least one sample is required".into()));
    }
    if n < 3 {
        return Err(Error::Domain(format!("degree {n} is below 3")));
    }
    let field = FiniteField::new(q)?;
    let p = field.characteristic();
    let allow = (n as u32).is_multiple_of(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = PolyStats {
        n,
        q,
        p,
        seed,
        samples,
        translations_allowed: allow,
        trivial: 0,
        fraction: String::new(),
        with_translation: 0,
        with_scaling: 0,
        rational_nontrivial: 0,
        rejected_not_squarefree: 0,
        degenerate: n == 4 && p == 2,
    };
    let mut accepted = 0u64;
    let max_attempts = samples.saturating_mul(1000);
    let mut attempts = 0u64;
    while accepted < samples {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::Domain(format!(
                "could not draw {samples} squarefree polynomials of degree {n} over F_{q}"
            )));
        }
        let mut coeffs: Vec<u32> = (0..n - 1).map(|_| rng.gen_range(0..field.order())).collect();
        coeffs.push(0);
        coeffs.push(1);
        let f = PolynomialSample::new(&field, coeffs)?;
        if !f.is_squarefree(&field) {
            stats.rejected_not_squarefree += 1;
            continue;
        }
        accepted += 1;
        let geo = geometric_stabilizer(&field, &f.coefficients, allow);
        let rational = agl1_stabilizer(&field, &f, allow).len() > 1;
        if rational {
            stats.rational_nontrivial += 1;
            assert!(!geo.is_trivial(), "rational stabilizer missed by the geometric test");
        }
        if geo.translation {
            stats.with_translation += 1;
        }
        if !geo.scaling_orders.is_empty() {
            stats.with_scaling += 1;
        }
        if geo.is_trivial() {
            stats.trivial += 1;
        }
    }
    stats.fraction = format!("{}/{}", stats.trivial, samples);
    Ok(stats)
}

impl PolyStats {
    pub fn fraction_f64(&self) -> f64 {
        self.trivial as f64 / self.samples as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::CharacterLattice;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    fn rank1(weights: &[i64]) -> WeightMultiset {
        let a1 = rs("A1");
        let ws: Vec<Vec<i64>> = weights.iter().map(|&x| vec![x]).collect();
        WeightMultiset::from_weights(CharacterLattice::simply_connected(&a1), &ws).unwrap()
    }

    #[test]
    fn torus_examples() {
        let a2 = short_root_module_of("A2");
        assert!(torus_generically_free(&a2, false).unwrap().faithful);
        let t = torus_generically_free(&rank1(&[2]), false).unwrap();
        assert!(!t.faithful);
        assert_eq!(t.kernel_order, CokernelOrder::Finite(BigUint::from(2u32)));
        let e7 = rs("E7");
        let m = reps::minuscule_module(&e7, 7).unwrap();
        assert!(torus_generically_free(&m, false).unwrap().faithful);
    }

    fn short_root_module_of(label: &str) -> WeightMultiset {
        reps::short_root_module(&rs(label))
    }

    #[test]
    fn kernel_ranks() {
        let k = psi_kernel(&rank1(&[1, -1])).unwrap();
        assert_eq!(k.basis, vec![vec![1, 1]]);
        let e7 = rs("E7");
        assert_eq!(psi_kernel(&reps::minuscule_module(&e7, 7).unwrap()).unwrap().rank(), 49);
        assert_eq!(psi_kernel(&short_root_module_of("F4")).unwrap().rank(), 20);
        let a1 = rs("A1");
        let doubled =
            WeightMultiset::from_weights(CharacterLattice::simply_connected(&a1), &[vec![1], vec![1]]).unwrap();
        assert!(psi_kernel(&doubled).is_err());
    }

    #[test]
    fn a1_reflection_fixes_kernel() {
        let a1 = rs("A1");
        let m = reps::short_root_module(&a1);
        let k = psi_kernel(&m).unwrap();
        let s = weyl::simple_reflection(&a1, 1).unwrap();
        assert!(acts_trivially_on_kernel(&a1, &s, &m, &k).unwrap());
        assert!(acts_trivially_on_kernel(&a1, &WeylElement::identity(&a1), &m, &k).unwrap());
    }

    #[test]
    fn minus_one_examples() {
        let (_, half) = reps::half_spin_module(12).unwrap();
        let c = minus_one_moves_kernel(&half, 6).unwrap();
        assert!(c.by_count && c.direct);
        assert_eq!(c.half_set_size, 16);
        let f4 = minus_one_moves_kernel(&short_root_module_of("F4"), 4).unwrap();
        assert_eq!(f4.half_set_size, 12);
        assert!(f4.by_count);
        let r1 = minus_one_moves_kernel(&rank1(&[1, -1]), 1).unwrap();
        assert!(!r1.by_count);
        assert!(!r1.direct);
        assert!(minus_one_moves_kernel(&rank1(&[1, 2]), 1).is_err());
    }

    #[test]
    fn zero_sum_subsets() {
        let e6 = rs("E6");
        let m = reps::minuscule_module(&e6, 1).unwrap();
        let x = find_zero_sum_subset(m.weights(), 6).unwrap();
        assert_eq!(x.len(), 6);
        for i in 0..6 {
            let s: i64 = x.iter().map(|&j| m.weights()[j][i]).sum();
            assert_eq!(s, 0);
        }
        assert_eq!(find_zero_sum_subset(&[vec![1], vec![-1]], 2), None);
    }

    #[test]
    fn projs_table() {
        let t4 = verify_projs_inequality(4).unwrap();
        let transposition = t4.iter().find(|r| r.cycle_type == vec![2, 1, 1]).unwrap();
        assert_eq!((transposition.lhs, transposition.rhs), (1, 2));
        let three = t4.iter().find(|r| r.cycle_type == vec![3, 1]).unwrap();
        assert_eq!((three.lhs, three.rhs), (2, 4));
        let t3 = verify_projs_inequality(3).unwrap();
        let tr3 = t3.iter().find(|r| r.cycle_type == vec![2, 1]).unwrap();
        assert!(!tr3.holds);
        assert_eq!(certify_projs(4).unwrap().bound, Some(5));
        assert_eq!(certify_projs(3).unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn stabilizer_of_monomial() {
        let f = FiniteField::new(7).unwrap();
        let mut c = vec![0u32; 4];
        c[3] = 1;
        let s = PolynomialSample::new(&f, c).unwrap();
        assert_eq!(agl1_stabilizer(&f, &s, false).len(), 6);
    }

    fn exhaustive_short(label: &str) -> Certificate {
        certify_short(&rs(label), Strategy::Exhaustive, weyl::DEFAULT_ENUMERATION_LIMIT).unwrap()
    }

    #[test]
    fn short_bounds() {
        assert_eq!(exhaustive_short("F4").bound, Some(19));
        assert_eq!(exhaustive_short("D5").bound, Some(34));
        let e6 = exhaustive_short("E6");
        assert!(e6.passed());
        assert_eq!(e6.bound, Some(65));
        assert_eq!(e6.elements_checked, 51839);
    }

    #[test]
    fn short_a1_fails_with_reflection() {
        let c = exhaustive_short("A1");
        assert_eq!(c.verdict, Verdict::Fail);
        assert_eq!(c.bound, None);
        assert_eq!(c.witnesses[0].word, Some(vec![1]));
        let w = certify_short(&rs("A1"), Strategy::MinimalNormalWitnesses, 10).unwrap();
        assert_eq!(w.verdict, Verdict::Fail);
    }

    #[test]
    fn short_refuses_b_and_g() {
        assert!(certify_short(&rs("B3"), Strategy::Exhaustive, 1000).is_err());
        assert!(certify_short(&rs("G2"), Strategy::Exhaustive, 1000).is_err());
        assert!(certify_short(&rs("C2"), Strategy::Exhaustive, 1000).is_err());
    }

    #[test]
    fn strategies_agree() {
        let mc = Strategy::MonteCarlo { trials: 30, seed: 7 };
        for label in ["A2", "A3", "A4", "C3", "C4", "D4", "D5", "F4"] {
            let r = rs(label);
            let verdicts: Vec<Verdict> = [Strategy::Exhaustive, Strategy::MinimalNormalWitnesses, mc]
                .into_iter()
                .map(|s| certify_short(&r, s, 1_000_000).unwrap().verdict)
                .collect();
            assert_eq!(verdicts, vec![Verdict::Pass; 3], "{label}");
        }
    }

    #[test]
    fn exhaustive_refusal_names_alternatives() {
        match certify_short(&rs("E8"), Strategy::Exhaustive, weyl::DEFAULT_ENUMERATION_LIMIT) {
            Err(Error::Infeasible { feasible, .. }) => {
                assert!(feasible.contains(&"minimal-normal-witnesses".to_string()))
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn e8_by_witnesses() {
        let c = certify_short(&rs("E8"), Strategy::MinimalNormalWitnesses, 0).unwrap();
        assert!(c.passed());
        assert_eq!(c.bound, Some(231));
        assert_eq!(c.group_order, "696729600");
    }

    #[test]
    fn c3_sign_flip_moves_triple() {
        let c3 = rs("C3");
        let m = reps::short_root_module(&c3);
        let triple = c3.short_witness_triple().unwrap();
        let ws = m.weights_in_weight_coords();
        let mut v = vec![0i64; ws.len()];
        for chi in &triple {
            let w = c3.root_to_weight(chi);
            v[ws.iter().position(|x| *x == w).unwrap()] += 1;
        }
        let k = psi_kernel(&m).unwrap();
        // the indicator of a zero-sum triple lies in ker psi
        let sum: Vec<i64> = (0..3).map(|i| (0..ws.len()).map(|j| v[j] * m.weights()[j][i]).sum()).collect();
        assert_eq!(sum, vec![0, 0, 0]);
        let flip = weyl::double_sign_flip(&c3, 0, 1).unwrap();
        let img = omega_images(&c3, &flip, &m).unwrap();
        let moved: Vec<i64> = (0..v.len()).map(|x| v[img.iter().position(|&y| y as usize == x).unwrap()]).collect();
        assert_ne!(moved, v);
        assert!(!acts_trivially_on_kernel(&c3, &flip, &m, &k).unwrap());
    }

    #[test]
    fn cycle_test_matches_random_combinations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for label in ["A1", "A3", "C3", "D4", "B3", "G2"] {
            let r = rs(label);
            let m = reps::short_root_module(&r);
            let k = psi_kernel(&m).unwrap();
            for w in weyl::enumerate(&r, 100_000).unwrap().iter().step_by(7) {
                let img = omega_images(&r, w, &m).unwrap();
                let fast = acts_trivially_on_images(&img, &k, &mut Vec::new());
                let brute = (0..25).all(|_| {
                    let mut v = vec![0i64; m.len()];
                    for b in &k.basis {
                        let c: i64 = rng.gen_range(-5..=5);
                        v.iter_mut().zip(b).for_each(|(x, y)| *x += c * y);
                    }
                    (0..v.len()).all(|x| v[img[x] as usize] == v[x])
                });
                assert_eq!(fast, brute, "{label}");
            }
        }
    }

    #[test]
    fn minimal_normal_subgroup_orders() {
        let expect = [
            ("A1", vec![2u64]),
            ("A2", vec![3]),
            ("A3", vec![4]),
            ("A4", vec![60]),
            ("A5", vec![360]),
            ("B3", vec![2, 4]),
            ("C4", vec![2]),
            ("D4", vec![2]),
            ("D5", vec![16]),
            ("G2", vec![2, 3]),
            ("F4", vec![2]),
            ("E6", vec![25920]),
            ("E7", vec![2, 1451520]),
            ("E8", vec![2]),
        ];
        for (label, orders) in expect {
            let r = rs(label);
            let w = weyl::weyl_group(&r);
            let base = w.chain().base().to_vec();
            let gens: Vec<Perm> = w.generators.iter().map(|g| g.perm().clone()).collect();
            let got: Vec<u64> = minimal_normal_generators(&r)
                .unwrap()
                .iter()
                .map(|nw| {
                    let c = crate::schreier::normal_closure(r.num_roots(), &gens, &[nw.element.perm().clone()], &base)
                        .unwrap();
                    c.order().try_into().unwrap()
                })
                .collect();
            assert_eq!(got, orders, "{label}");
        }
    }

    #[test]
    fn every_normal_subgroup_contains_a_listed_one() {
        for label in ["A3", "B3", "C4", "D4", "D5", "G2", "A4"] {
            let r = rs(label);
            let w = weyl::weyl_group(&r);
            let base = w.chain().base().to_vec();
            let gens: Vec<Perm> = w.generators.iter().map(|g| g.perm().clone()).collect();
            let listed = minimal_normal_generators(&r).unwrap();
            for g in weyl::enumerate(&r, 10_000).unwrap() {
                if g.is_identity() {
                    continue;
                }
                let c = crate::schreier::normal_closure(r.num_roots(), &gens, &[g.perm().clone()], &base).unwrap();
                assert!(listed.iter().any(|nw| c.contains(nw.element.perm())), "{label}");
            }
        }
    }

    #[test]
    fn minuscule_e6_both_weights() {
        let e6 = rs("E6");
        for idx in [1, 6] {
            let c = certify_minuscule(&e6, idx, Strategy::Exhaustive, weyl::DEFAULT_ENUMERATION_LIMIT).unwrap();
            assert!(c.passed());
            assert_eq!(c.bound, Some(21));
            assert!(c.witnesses.iter().any(|w| w.kind == "zero-sum-subset"));
        }
        assert!(certify_minuscule(&rs("D4"), 1, Strategy::Exhaustive, 1000).is_err());
    }

    #[test]
    fn half_spin_12() {
        let ex = certify_half_spin(12, Strategy::Exhaustive, weyl::DEFAULT_ENUMERATION_LIMIT).unwrap();
        let wit = certify_half_spin(12, Strategy::MinimalNormalWitnesses, 0).unwrap();
        assert!(ex.passed() && wit.passed());
        assert_eq!(ex.bound, Some(26));
        assert!(!ex.provenance.is_empty());
    }

    #[test]
    fn half_spin_20_by_witnesses() {
        let c = certify_half_spin(20, Strategy::MinimalNormalWitnesses, weyl::DEFAULT_ENUMERATION_LIMIT).unwrap();
        assert!(c.passed());
        assert_eq!(c.bound, Some(502));
    }

    #[test]
    fn strategy_names() {
        assert_eq!("exhaustive".parse::<Strategy>().unwrap(), Strategy::Exhaustive);
        assert_eq!("witnesses".parse::<Strategy>().unwrap(), Strategy::MinimalNormalWitnesses);
        assert!("guess".parse::<Strategy>().is_err());
        let json = serde_json::to_string(&Strategy::MonteCarlo { trials: 3, seed: 4 }).unwrap();
        assert_eq!(json, r#"{"name":"monte-carlo","trials":3,"seed":4}"#);
    }

    fn from_roots(field: &FiniteField, roots: &[u32]) -> Vec<u32> {
        roots.iter().fold(vec![1u32], |acc, &r| poly::mul(field, &acc, &[field.neg(r), 1]))
    }

    /// All affine maps permuting the roots; each is determined by two root images.
    fn root_set_stabilizer(field: &FiniteField, roots: &[u32], allow: bool) -> usize {
        let set: std::collections::HashSet<u32> = roots.iter().copied().collect();
        let mut maps = std::collections::HashSet::new();
        let d = field.inv(field.sub(roots[0], roots[1])).unwrap();
        for &s1 in roots {
            for &s2 in roots {
                if s1 == s2 {
                    continue;
                }
                let c = field.mul(field.sub(s1, s2), d);
                let b = field.sub(s1, field.mul(c, roots[0]));
                if (allow || b == 0) && roots.iter().all(|&r| set.contains(&field.add(field.mul(c, r), b))) {
                    maps.insert((c, b));
                }
            }
        }
        maps.len()
    }

    /// Roots made of whole orbits of a scaling about `y0` or of a translation.
    fn structured_roots(field: &FiniteField, n: usize, rng: &mut ChaCha8Rng, allow: bool) -> Option<Vec<u32>> {
        let q = field.order() as u64;
        let p = field.characteristic() as usize;
        let ell = [2u64, 3, 5].into_iter().find(|&l| (q - 1).is_multiple_of(l) && (n as u64).is_multiple_of(l));
        let orbit: Box<dyn Fn(u32) -> Vec<u32>> = if let Some(l) = ell {
            let zeta = field.pow(field.primitive_element(), (q - 1) / l);
            let y0 = if allow { rng.gen_range(0..field.order()) } else { 0 };
            Box::new(move |x| {
                (0..l).map(|k| field.add(field.mul(x, field.pow(zeta, k)), y0)).collect()
            })
        } else if allow && n.is_multiple_of(p) {
            let t = rng.gen_range(1..field.order());
            Box::new(move |x| {
                (0..p).scan(x, |acc, _| {
                    let cur = *acc;
                    *acc = field.add(*acc, t);
                    Some(cur)
                })
                .collect()
            })
        } else {
            return None;
        };
        let mut out: Vec<u32> = Vec::new();
        while out.len() < n {
            let o = orbit(rng.gen_range(1..field.order()));
            if o.iter().all(|y| !out.contains(y)) && o.iter().collect::<std::collections::HashSet<_>>().len() == o.len() {
                out.extend(o);
            }
        }
        Some(out)
    }

    #[test]
    fn geometric_stabilizer_matches_split_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (q, n) in [(64u64, 6usize), (81, 6), (49, 5), (32, 4), (27, 3), (101, 5), (16, 4), (25, 4)] {
            let field = FiniteField::new(q).unwrap();
            for allow in [false, true] {
                let mut nontrivial = 0;
                let mut structured = false;
                for trial in 0..300 {
                    let roots = match (trial % 3 == 0).then(|| structured_roots(&field, n, &mut rng, allow)).flatten() {
                        Some(r) => {
                            structured = true;
                            r
                        }
                        None => {
                            let mut out: Vec<u32> = Vec::new();
                            while out.len() < n {
                                let r = rng.gen_range(0..field.order());
                                if !out.contains(&r) {
                                    out.push(r);
                                }
                            }
                            out
                        }
                    };
                    let f = from_roots(&field, &roots);
                    let geo = geometric_stabilizer(&field, &f, allow);
                    let oracle = root_set_stabilizer(&field, &roots, allow);
                    assert_eq!(geo.is_trivial(), oracle == 1, "q={q} n={n} roots={roots:?}");
                    if oracle > 1 {
                        nontrivial += 1;
                    }
                }
                assert!(!structured || nontrivial > 0, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn translation_invariant_roots() {
        let field = FiniteField::new(27).unwrap();
        let t = 5;
        let roots: Vec<u32> = [2u32, 7].iter().flat_map(|&r| (0..3).map(move |k| (r, k))).map(|(r, k)| {
            (0..k).fold(r, |acc, _| field.add(acc, t))
        }).collect();
        let f = from_roots(&field, &roots);
        assert_eq!(f[5], 0);
        assert!(geometric_stabilizer(&field, &f, true).translation);
        let s = PolynomialSample::new(&field, f).unwrap();
        assert!(agl1_stabilizer(&field, &s, true).contains(&(1, t)));
    }

    #[test]
    fn stabilizer_is_closed() {
        let field = FiniteField::new(13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let mut c: Vec<u32> = (0..4).map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(0..13) }).collect();
            c.push(0);
            c.push(1);
            let s = PolynomialSample::new(&field, c).unwrap();
            let st = agl1_stabilizer(&field, &s, true);
            assert!(st.contains(&(1, 0)));
            for &(c1, b1) in &st {
                for &(c2, b2) in &st {
                    let comp = (field.mul(c1, c2), field.add(field.mul(c1, b2), b1));
                    assert!(st.contains(&comp));
                }
            }
        }
    }

    #[test]
    fn sample_validation() {
        let field = FiniteField::new(5).unwrap();
        assert!(PolynomialSample::new(&field, vec![1, 0, 1, 1]).is_err());
        assert!(PolynomialSample::new(&field, vec![1, 0, 0, 2]).is_err());
        assert!(PolynomialSample::new(&field, vec![1, 7, 0, 1]).is_err());
        assert!(PolynomialSample::new(&field, vec![1, 2, 0, 1]).is_ok());
    }

    #[test]
    fn generic_check_examples() {
        for q in [4, 16] {
            let s = agl1_generic_check(4, q, 200, 3).unwrap();
            assert!(s.degenerate);
            assert_eq!(s.trivial, 0);
            assert_eq!(s.with_translation, 200);
        }
        let s6 = agl1_generic_check(6, 64, 500, 1).unwrap();
        assert!(s6.translations_allowed);
        assert!(s6.fraction_f64() >= 0.9, "{s6:?}");
        let s5 = agl1_generic_check(5, 101, 500, 1).unwrap();
        assert!(!s5.translations_allowed);
        assert!(s5.fraction_f64() >= 0.95, "{s5:?}");
        assert_eq!(agl1_generic_check(5, 101, 50, 9).unwrap(), agl1_generic_check(5, 101, 50, 9).unwrap());
        assert!(agl1_generic_check(5, 100, 5, 1).is_err());
    }
}
