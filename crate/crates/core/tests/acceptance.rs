//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the summary lines always print.

mod common;

use std::time::{Duration, Instant};

use common::{descriptor, Check};
use edim_core::edbounds::{self, GroupKind};
use edim_core::genfree::{self, Strategy};
use edim_core::rootsys::{self, DynkinType, Family, RootSystem};
use edim_core::weyl;
use num_bigint::BigUint;

const LIMIT: u64 = weyl::DEFAULT_ENUMERATION_LIMIT;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration, what: &str) -> Check {
    let took = start.elapsed();
    ensure(took < budget, || format!("{what} took {took:?}, budget {budget:?}"))
}

fn route(kind: GroupKind, p: u32, name: &str) -> Result<i64, String> {
    let d = descriptor(kind, p);
    match edbounds::default_engine().route(&d, name) {
        Ok(Some(r)) => {
            r.replay().map_err(|e| e.to_string())?;
            Ok(r.value)
        }
        Ok(None) => Err(format!("{}: no {name} route", d.name())),
        Err(e) => Err(format!("{}: {e}", d.name())),
    }
}

fn expect_route(kind: GroupKind, p: u32, name: &str, want: i64) -> Check {
    let got = route(kind, p, name)?;
    ensure(got == want, || format!("{kind:?} char {p} via {name}: got {got}, want {want}"))
}

fn ex(family: char, rank: u32, simply_connected: bool) -> GroupKind {
    GroupKind::Exceptional {
        family,
        rank,
        simply_connected,
    }
}

fn criterion_1() -> Check {
    let start = Instant::now();
    expect_route(ex('E', 6, false), 0, "prop-short", 65)?;
    expect_route(ex('E', 7, false), 0, "prop-short", 118)?;
    expect_route(ex('E', 8, false), 0, "prop-short", 231)?;
    ensure(edbounds::best_bound(&descriptor(ex('E', 8, false), 0)).map_err(|e| e.to_string())?.value == 231, || {
        "best bound for E8 is not 231".into()
    })?;
    for n in 4..=10i64 {
        expect_route(GroupKind::Pso { n: n as u32 }, 0, "prop-short", 2 * n * n - 3 * n - 1)?;
    }
    for n in 4..=12u32 {
        let ni = n as i64;
        expect_route(GroupKind::SlMod { n, m: n }, 0, "thm-a", ni * ni - 3 * ni + 1)?;
        for m in (1..n).filter(|m| n % m == 0) {
            let want = ni * ni - 3 * ni + ni / m as i64 + 1;
            expect_route(GroupKind::SlMod { n, m }, 0, "thm-a", want)?;
        }
    }
    for n in 4..=8u32 {
        let ni = n as i64;
        for p in [0u32, 2, 3, 5, 7] {
            let divides = p != 0 && n % p == 0;
            let want = if divides && n > 4 { 2 * ni * ni - 3 * ni - 6 } else { 2 * ni * ni - 3 * ni - 4 };
            expect_route(GroupKind::PSp { n }, p, "thm-psp", want)?;
        }
    }
    expect_route(GroupKind::GlMod { n: 8, m: 2 }, 0, "thm-psp", 16)?;
    expect_route(ex('F', 4, false), 0, "prop-short", 19)?;
    expect_route(ex('E', 6, true), 0, "thm-ed", 20)?;
    expect_route(ex('E', 7, true), 0, "thm-ed", 49)?;
    expect_route(GroupKind::HSpin { n: 12 }, 0, "half-spin", 26)?;
    expect_route(GroupKind::HSpin { n: 16 }, 0, "half-spin", 120)?;
    within(start, Duration::from_secs(60), "golden table")
}

fn short(label: &str, strategy: Strategy) -> Result<genfree::Certificate, String> {
    let rs = RootSystem::from_label(label).map_err(|e| e.to_string())?;
    genfree::certify_short(&rs, strategy, LIMIT).map_err(|e| format!("{label}: {e}"))
}

fn criterion_2() -> Check {
    let mut labels: Vec<String> = Vec::new();
    labels.extend((2..=7).map(|n| format!("A{n}")));
    labels.extend((3..=6).map(|n| format!("C{n}")));
    labels.extend((4..=7).map(|n| format!("D{n}")));
    labels.extend(["E6", "E7", "F4"].map(String::from));
    for label in &labels {
        let c = short(label, Strategy::Exhaustive)?;
        ensure(c.passed(), || format!("certify_short({label}) did not pass"))?;
        ensure((c.elements_checked + 1).to_string() == c.group_order, || {
            format!("{label}: checked {} of {}", c.elements_checked, c.group_order)
        })?;
    }
    let e8 = short("E8", Strategy::MinimalNormalWitnesses)?;
    ensure(e8.passed() && e8.bound == Some(231), || "certify_short(E8) with witnesses".into())?;

    let a1 = short("A1", Strategy::Exhaustive)?;
    ensure(!a1.passed(), || "certify_short(A1) passed".into())?;
    ensure(a1.witnesses.iter().any(|w| w.word.as_deref() == Some(&[1][..])), || {
        format!("A1 witness is not s_alpha: {:?}", a1.witnesses)
    })?;

    let e6 = RootSystem::from_label("E6").map_err(|e| e.to_string())?;
    let start = Instant::now();
    for idx in [1, 6] {
        let c = genfree::certify_minuscule(&e6, idx, Strategy::Exhaustive, LIMIT).map_err(|e| e.to_string())?;
        ensure(c.passed() && c.elements_checked + 1 == 51_840, || format!("E6 omega{idx}: {:?}", c.verdict))?;
    }
    within(start, Duration::from_secs(60), "E6 minuscule")?;

    let e7 = RootSystem::from_label("E7").map_err(|e| e.to_string())?;
    let start = Instant::now();
    let c = genfree::certify_minuscule(&e7, 7, Strategy::Exhaustive, LIMIT).map_err(|e| e.to_string())?;
    ensure(c.passed() && c.elements_checked + 1 == 2_903_040, || format!("E7 omega7: {:?}", c.verdict))?;
    within(start, Duration::from_secs(30 * 60), "E7 minuscule")?;

    for n in [12, 16] {
        let c = genfree::certify_half_spin(n, Strategy::Exhaustive, LIMIT).map_err(|e| e.to_string())?;
        ensure(c.passed(), || format!("certify_half_spin({n}) did not pass"))?;
    }
    Ok(())
}

fn has_minus_one_in_w(t: DynkinType) -> bool {
    match t.family {
        Family::A => t.rank == 1,
        Family::D => t.rank.is_multiple_of(2),
        Family::E => t.rank != 6,
        _ => true,
    }
}

fn criterion_3() -> Check {
    let start = Instant::now();
    for t in rootsys::all_types(8) {
        let rs = RootSystem::build(t);
        for p in [2u32, 3, 5] {
            let k = weyl::kernel_mod_p(&rs, p, true).map_err(|e| e.to_string())?;
            let want = match (p, t.family) {
                (2, Family::B) => BigUint::from(1u32) << t.rank,
                (2, _) => BigUint::from(2u32),
                _ => BigUint::from(1u32),
            };
            ensure(k.order == want, || format!("{t} mod {p}: kernel order {}, want {want}", k.order))?;
            if p == 2 {
                ensure(k.elementary_abelian_2, || format!("{t} mod 2: not elementary abelian"))?;
            }
        }
    }
    for p in [0u32, 2, 3] {
        for d in edbounds::enumerate_descriptors(1, 8, p).map_err(|e| e.to_string())? {
            if d.isogeny() != edbounds::Isogeny::Adjoint {
                continue;
            }
            let t = d.dynkin_type().expect("simple");
            let r = edbounds::adjoint_stabilizer(&d).map_err(|e| e.to_string())?;
            let want = match (p, t.family) {
                (2, Family::B) => format!("(Z/2)^{}", t.rank),
                (2, _) if has_minus_one_in_w(t) => "Z/2".to_string(),
                _ => "trivial".to_string(),
            };
            ensure(r.structure == want, || format!("{} char {p}: {}, want {want}", d.name(), r.structure))?;
            ensure(r.connected == (want == "trivial"), || format!("{} char {p}: connectedness", d.name()))?;
        }
    }
    within(start, Duration::from_secs(300), "mod-p kernels")
}

fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn expected_weyl_order(t: DynkinType) -> BigUint {
    let n = t.rank as u64;
    match t.family {
        Family::A => factorial(n + 1),
        Family::B | Family::C => (BigUint::from(1u32) << n) * factorial(n),
        Family::D => (BigUint::from(1u32) << (n - 1)) * factorial(n),
        Family::E => BigUint::from([51_840u64, 2_903_040, 696_729_600][n as usize - 6]),
        Family::F => BigUint::from(1152u32),
        Family::G => BigUint::from(12u32),
    }
}

fn criterion_4() -> Check {
    let million = BigUint::from(1_000_000u32);
    for t in rootsys::all_types(8) {
        let rs = RootSystem::build(t);
        let order = weyl::weyl_group(&rs).order();
        let want = expected_weyl_order(t);
        ensure(order == want, || format!("|W({t})| = {order}, want {want}"))?;
        if order <= million {
            let all = weyl::enumerate(&rs, LIMIT).map_err(|e| e.to_string())?;
            ensure(BigUint::from(all.len()) == order, || format!("{t}: BFS found {}", all.len()))?;
        }
    }
    ensure(weyl::weyl_group(&RootSystem::from_label("E8").unwrap()).order() == BigUint::from(696_729_600u64), || {
        "|W(E8)|".into()
    })?;
    let unit = |rank: usize, i: usize| {
        let mut w = vec![0i64; rank];
        w[i - 1] = 1;
        w
    };
    let e6 = RootSystem::from_label("E6").unwrap();
    let e7 = RootSystem::from_label("E7").unwrap();
    ensure(weyl::orbit(&e6, &unit(6, 1)).unwrap().len() == 27, || "E6 omega1 orbit".into())?;
    ensure(weyl::orbit(&e6, &unit(6, 6)).unwrap().len() == 27, || "E6 omega6 orbit".into())?;
    ensure(weyl::orbit(&e7, &unit(7, 7)).unwrap().len() == 56, || "E7 omega7 orbit".into())?;
    for n in 4..=8 {
        let d = RootSystem::from_label(&format!("D{n}")).unwrap();
        for i in [n - 1, n] {
            let len = weyl::orbit(&d, &unit(n, i)).unwrap().len();
            ensure(len == 1 << (n - 1), || format!("D{n} omega{i} orbit has {len}"))?;
        }
    }
    Ok(())
}

fn criterion_5() -> Check {
    let start = Instant::now();
    for q in [4u64, 16] {
        let s = genfree::agl1_generic_check(4, q, 500, 1).map_err(|e| e.to_string())?;
        ensure(s.trivial == 0 && s.with_translation == s.samples, || {
            format!("n=4 q={q}: {} trivial, {} with translation of {}", s.trivial, s.with_translation, s.samples)
        })?;
    }
    for (n, q) in [(6usize, 64u64), (5, 101)] {
        let s = genfree::agl1_generic_check(n, q, 500, 1).map_err(|e| e.to_string())?;
        ensure(s.samples >= 500 && s.fraction_f64() >= 0.9, || {
            format!("n={n} q={q}: trivial fraction {}", s.fraction)
        })?;
    }
    within(start, Duration::from_secs(60), "AGL1 sampling")
}

fn criterion_6() -> Check {
    common::snf_fuzz(10_000, 6)?;
    common::kernel_fuzz(2_000, 7)?;
    common::root_checks(8)?;
    common::short_roots_generate(8)?;
    common::projs_range()?;
    let n = common::big_o_sweep(&[0, 2, 3])?;
    ensure(n > 0, || "big-O sweep checked nothing".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 6] = [
        ("golden bounds table", criterion_1),
        ("certificate suite", criterion_2),
        ("mod-p kernels and adjoint component groups", criterion_3),
        ("Weyl group engine", criterion_4),
        ("AGL1 polynomial verifier", criterion_5),
        ("property suites", criterion_6),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
