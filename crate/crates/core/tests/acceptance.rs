//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --release --test acceptance`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rrbg::brace::SkewBrace;
use rrbg::catalog::{bijective_catalog, standard_catalog, CatalogEntry};
use rrbg::cohomology::{
    extension_from_cocycle, h2_group, h2_rrb, is_rrb_cocycle, product::product_coeff_iso,
    hss::five_term_exactness, rrb_coboundary, Cocycle4, CohomologyError, CyclicProduct, TrivialModule, DEFAULT_VARIABLE_BOUND,
};
use rrbg::group::FiniteGroup;
use rrbg::isoclinism::{are_weakly_isoclinic, transport_to_braces, verify_witness, Mode, Verdict};
use rrbg::linalg::AbElement;
use rrbg::oracle::{self, DEFAULT_TABLE_BOUND};
use rrbg::rrb::RrbGroup;
use rrbg::schur::{
    build_schur_cover_with, group_multiplier, restricts_trivially, schur_multipliers, SchurError, SchurMultiplier,
};

const SEED: u64 = 0x5eed_2024;
const RANDOM_TABLES: usize = 120_000;
const COVER_ISOCLINISM_BOUND: usize = 256;

type Outcome = Result<String, String>;

fn small(c: &[CatalogEntry], max: usize) -> Vec<RrbGroup> {
    c.iter().filter(|e| e.rrb.h().order() <= max && e.rrb.g().order() <= max).map(|e| e.rrb.clone()).collect()
}

fn z2_base(identity: bool) -> RrbGroup {
    let z2 = FiniteGroup::cyclic(2);
    RrbGroup::trivial_action(z2.clone(), z2, if identity { vec![0, 1] } else { vec![0, 0] }).unwrap()
}

fn random_normalized(base: &RrbGroup, m: &TrivialModule, rng: &mut ChaCha8Rng) -> Cocycle4 {
    let (na, nb) = (base.h().order(), base.g().order());
    let (km, lm) = (m.k().moduli().to_vec(), m.l().moduli().to_vec());
    let mut c = Cocycle4::zero_for(base, m);
    let fill = |v: &mut [i64], mods: &[u64], rng: &mut ChaCha8Rng| {
        for (x, &q) in v.iter_mut().zip(mods) {
            *x = rng.gen_range(0..q as i64);
        }
    };
    for x in 1..na {
        for y in 1..na {
            fill(c.tau1_mut(x, y), &km, rng);
        }
        for b in 1..nb {
            fill(c.rho_mut(x, b), &km, rng);
        }
        fill(c.chi_mut(x), &lm, rng);
    }
    for x in 1..nb {
        for y in 1..nb {
            fill(c.tau2_mut(x, y), &lm, rng);
        }
    }
    c
}

fn random_valid(base: &RrbGroup, m: &TrivialModule, h2: &rrbg::cohomology::RrbH2, rng: &mut ChaCha8Rng) -> Cocycle4 {
    let class = AbElement(h2.structure().factors().iter().map(|&d| rng.gen_range(0..d)).collect());
    let z = h2.lift(&class);
    let th1: Vec<Vec<i64>> = (0..base.h().order())
        .map(|a| m.k().moduli().iter().map(|&q| if a == 0 { 0 } else { rng.gen_range(0..q as i64) }).collect())
        .collect();
    let th2: Vec<Vec<i64>> = (0..base.g().order())
        .map(|b| m.l().moduli().iter().map(|&q| if b == 0 { 0 } else { rng.gen_range(0..q as i64) }).collect())
        .collect();
    z.add(&rrb_coboundary(base, m, &th1, &th2).unwrap(), m)
}

/// Changes one normalized entry of one table.
fn perturb(c: &mut Cocycle4, base: &RrbGroup, m: &TrivialModule, rng: &mut ChaCha8Rng) {
    let (na, nb) = (base.h().order(), base.g().order());
    let (ka, la) = (m.k().rank() > 0 && na > 1, m.l().rank() > 0 && nb > 1);
    let choice = rng.gen_range(0..4);
    match choice {
        0 | 2 | 3 if ka => {
            let x = rng.gen_range(1..na);
            let i = rng.gen_range(0..m.k().rank());
            match choice {
                0 => c.tau1_mut(x, rng.gen_range(1..na))[i] += 1,
                2 if nb > 1 => c.rho_mut(x, rng.gen_range(1..nb))[i] += 1,
                _ => {
                    if la {
                        let j = rng.gen_range(0..m.l().rank());
                        c.chi_mut(x)[j] += 1;
                    } else {
                        c.tau1_mut(x, rng.gen_range(1..na))[i] += 1;
                    }
                }
            }
        }
        _ if la => {
            let j = rng.gen_range(0..m.l().rank());
            c.tau2_mut(rng.gen_range(1..nb), rng.gen_range(1..nb))[j] += 1;
        }
        _ => {}
    }
    c.reduce(m);
}

fn criterion_1(cat: &[CatalogEntry]) -> Outcome {
    let base = z2_base(true);
    let m = TrivialModule::z2_pair(true);
    let mut valid = 0;
    let mut total = 0;
    for bits in 0..16u32 {
        let mut c = Cocycle4::zero_for(&base, &m);
        c.tau1_mut(1, 1)[0] = (bits & 1) as i64;
        c.tau2_mut(1, 1)[0] = (bits >> 1 & 1) as i64;
        c.rho_mut(1, 1)[0] = (bits >> 2 & 1) as i64;
        c.chi_mut(1)[0] = (bits >> 3 & 1) as i64;
        total += 1;
        match is_rrb_cocycle(&base, &m, &c) {
            Ok(true) => valid += 1,
            Ok(false) => {}
            Err(e) => return Err(format!("exhaustive table {bits:04b}: {e}")),
        }
    }
    let exhaustive = format!("exhaustive {total} tables, {valid} cocycles");
    let bases = small(cat, 4);
    let modules = [TrivialModule::z2_pair(true), TrivialModule::z2_pair(false), TrivialModule::cyclic(3)];
    let mut h2s = Vec::new();
    for b in &bases {
        for m in &modules {
            h2s.push((b, m, h2_rrb(b, m, DEFAULT_VARIABLE_BOUND).map_err(|e| e.to_string())?));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut yes, mut no) = (0usize, 0usize);
    for i in 0..RANDOM_TABLES {
        let (b, m, h2) = &h2s[rng.gen_range(0..h2s.len())];
        let c = match i % 3 {
            0 => random_normalized(b, m, &mut rng),
            1 => random_valid(b, m, h2, &mut rng),
            _ => {
                let mut c = random_valid(b, m, h2, &mut rng);
                perturb(&mut c, b, m, &mut rng);
                c
            }
        };
        match is_rrb_cocycle(b, m, &c) {
            Ok(true) => yes += 1,
            Ok(false) => no += 1,
            Err(CohomologyError::Consistency { linear, oracle, detail }) => {
                return Err(format!("disagreement on {} (linear {linear}, oracle {oracle}): {detail}", b.name()))
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(format!("{exhaustive}; {RANDOM_TABLES} random tables over {} bases, {yes} cocycles, {no} non-cocycles, 0 disagreements", bases.len()))
}

fn criterion_2() -> Outcome {
    let mut parts = Vec::new();
    for t_identity in [true, false] {
        for s_identity in [true, false] {
            let base = z2_base(t_identity);
            let m = TrivialModule::z2_pair(s_identity);
            let h2 = h2_rrb(&base, &m, DEFAULT_VARIABLE_BOUND).map_err(|e| e.to_string())?;
            let classes = oracle::count_extension_classes(&base, &m, DEFAULT_TABLE_BOUND).map_err(|e| e.to_string())?;
            if h2.order() as usize != classes {
                return Err(format!("T id {t_identity}, S id {s_identity}: |H2| = {}, extension classes = {classes}", h2.order()));
            }
            parts.push(format!("{classes}"));
        }
    }
    Ok(format!("class counts {} match", parts.join("/")))
}

fn criterion_3_4(cat: &[CatalogEntry]) -> (Outcome, Outcome) {
    let bases: Vec<RrbGroup> = cat.iter().map(|e| e.rrb.clone()).collect();
    let ms = schur_multipliers(&bases, DEFAULT_VARIABLE_BOUND);
    let mut violations = Vec::new();
    let mut no_solution = Vec::new();
    let mut classes = 0usize;
    let mut nontrivial = 0usize;
    for (b, m) in bases.iter().zip(&ms) {
        let m = match m {
            Ok(m) => m,
            Err(e) => {
                violations.push(format!("{}: {e}", b.name()));
                continue;
            }
        };
        let n = (b.h().order() * b.g().order()) as u64;
        if m.order() > 1 {
            nontrivial += 1;
        }
        if n % m.exponent() != 0 {
            violations.push(format!("{}: exponent {} does not divide {n}", b.name(), m.exponent()));
        }
        match m.stabilization_holds(DEFAULT_VARIABLE_BOUND) {
            Ok(true) => {}
            Ok(false) => violations.push(format!("{}: doubling E changes the image", b.name())),
            Err(e) => violations.push(format!("{}: {e}", b.name())),
        }
        // with coefficients of order 2N an exponent violation would be visible
        match SchurMultiplier::compute_with(b, 2 * n, 2 * n, DEFAULT_VARIABLE_BOUND) {
            Ok(w) if w.structure().is_isomorphic(m.structure()) && n % w.exponent() == 0 => {}
            Ok(w) => violations.push(format!("{}: 2N truncation gives {:?}", b.name(), w.structure().factors())),
            Err(e) => violations.push(format!("{}: {e}", b.name())),
        }
        for e in m.structure().elements() {
            classes += 1;
            match m.minimize_representative(&e) {
                Ok(r) => {
                    let q = r.order as i64;
                    let bad = r.reduced.tables().iter().any(|t| t.iter().any(|&v| v < 0 || v >= q));
                    if bad || !r.embedded.all_values_divisible_by((m.moduli().0 / r.order) as i64) {
                        no_solution.push(format!("{} {e:?}: values outside the order-{q} subgroup", b.name()));
                    }
                }
                Err(SchurError::NoSolution(d)) => no_solution.push(format!("{} {e:?}: NoSolution {d}", b.name())),
                Err(err) => no_solution.push(format!("{} {e:?}: {err}", b.name())),
            }
        }
    }
    let c3 = if violations.is_empty() {
        Ok(format!("{} RRB groups ({nontrivial} with nontrivial multiplier), exponent law, stabilization and 2N check hold", bases.len()))
    } else {
        Err(format!("{} violations, first: {}", violations.len(), violations[0]))
    };
    let c4 = if no_solution.is_empty() {
        Ok(format!("{classes} classes minimized, 0 NoSolution"))
    } else {
        Err(format!("{} failures, first: {}", no_solution.len(), no_solution[0]))
    };
    (c3, c4)
}

fn criterion_5(cat: &[CatalogEntry]) -> Outcome {
    let m = TrivialModule::z2_pair(true);
    let (mut split, mut non_split) = (0, 0);
    for base in small(cat, 4) {
        for k in [TrivialModule::z2_pair(true), TrivialModule::z2_pair(false)] {
            let h2 = h2_rrb(&base, &k, DEFAULT_VARIABLE_BOUND).map_err(|e| e.to_string())?;
            let mut cocycles = vec![Cocycle4::zero_for(&base, &k)];
            cocycles.extend(h2.basis().iter().cloned());
            for (i, c) in cocycles.iter().enumerate() {
                let ext = extension_from_cocycle(&base, &k, c).map_err(|e| e.to_string())?;
                let report = five_term_exactness(&ext, &m, DEFAULT_VARIABLE_BOUND).map_err(|e| e.to_string())?;
                if !report.holds() || report.checks.len() < 4 {
                    return Err(format!("{} cocycle {i}:\n{report}", base.name()));
                }
                if i == 0 {
                    split += 1;
                } else {
                    non_split += 1;
                }
            }
        }
    }
    if split + non_split < 20 || non_split == 0 {
        return Err(format!("only {split} split and {non_split} non-split extensions"));
    }
    Ok(format!("{split} split and {non_split} non-split extensions exact at all positions"))
}

fn criterion_6(cat: &[CatalogEntry]) -> Outcome {
    let pairs = [
        (TrivialModule::z2_pair(true), TrivialModule::z2_pair(false)),
        (TrivialModule::z2_pair(true), TrivialModule::cyclic(3)),
        (TrivialModule::cyclic(4), TrivialModule::z2_pair(true)),
    ];
    let mut count = 0;
    for base in small(cat, 3) {
        for (k1, k2) in &pairs {
            let iso = product_coeff_iso(&base, &[k1.clone(), k2.clone()], DEFAULT_VARIABLE_BOUND)
                .map_err(|e| format!("{}: {e}", base.name()))?;
            let sum = iso.direct_sum();
            if !sum.is_isomorphic(iso.product.structure()) {
                return Err(format!("{}: {:?} vs {:?}", base.name(), iso.product.structure().factors(), sum.factors()));
            }
            count += 1;
        }
    }
    if count < 10 {
        return Err(format!("only {count} combinations"));
    }
    Ok(format!("{count} combinations, invariant factors agree"))
}

fn criterion_7(bij: &[CatalogEntry]) -> Outcome {
    let mut subs_checked = 0;
    for e in bij {
        let b = &e.rrb;
        let m = SchurMultiplier::compute(b, DEFAULT_VARIABLE_BOUND).map_err(|x| x.to_string())?;
        let gens: Vec<AbElement> = (0..m.structure().rank()).map(|i| m.structure().unit(i)).collect();
        let cover = build_schur_cover_with(&m, &gens).map_err(|x| format!("{}: {x}", e.name))?;
        if !cover.checks.all_true() || cover.checks.criteria_agree != Some(true) {
            return Err(format!("{}: {:?}", e.name, cover.checks));
        }
        // the subgroup criterion against restriction of characters
        for x in 0..b.h().order() {
            let k = b.h().subgroup_generated(&[x]).unwrap();
            let vals: Vec<usize> = k.elements().iter().map(|&y| b.r(y)).collect();
            let l = b.g().subgroup_generated(&vals).unwrap();
            if l.order() != k.order() {
                continue;
            }
            let Ok(sub) = b.subgroup(k, l) else { continue };
            let v = restricts_trivially(b, &sub).map_err(|x| format!("{}: {x}", e.name))?;
            if !v.in_commutator && v.witness.is_none() {
                return Err(format!("{}: no separating character", e.name));
            }
            subs_checked += 1;
        }
    }
    Ok(format!("{} bijective bases with all cover verdicts true; {subs_checked} subgroup restrictions agree", bij.len()))
}

fn criterion_8(bij: &[CatalogEntry]) -> Outcome {
    let mut done = Vec::new();
    for e in bij {
        let m = SchurMultiplier::compute(&e.rrb, DEFAULT_VARIABLE_BOUND).map_err(|x| x.to_string())?;
        let pres = m.structure();
        let d = pres.factors().to_vec();
        if d.is_empty() || (d.len() == 1 && d[0] == 2) {
            continue;
        }
        let std: Vec<AbElement> = (0..d.len()).map(|i| pres.unit(i)).collect();
        let mut alt = std.clone();
        if d.len() > 1 {
            alt[0] = pres.add(&std[0], &std[1]);
        } else {
            let u = (2..d[0]).find(|&u| num_integer::gcd(u, d[0]) == 1).expect("a unit other than 1");
            alt[0] = pres.scale(u as i64, &std[0]);
        }
        let c1 = build_schur_cover_with(&m, &std).map_err(|x| format!("{}: {x}", e.name))?;
        let c2 = build_schur_cover_with(&m, &alt).map_err(|x| format!("{}: {x}", e.name))?;
        if c1.cocycle == c2.cocycle {
            return Err(format!("{}: generator choices give the same cocycle", e.name));
        }
        let (h1, h2) = (&c1.ext.total, &c2.ext.total);
        match are_weakly_isoclinic(h1, h2, COVER_ISOCLINISM_BOUND).map_err(|x| x.to_string())? {
            Verdict::Related(w) => {
                verify_witness(h1, h2, &w, Mode::Weak).map_err(|x| format!("{}: {x}", e.name))?;
                transport_to_braces(h1, h2, &w).map_err(|x| format!("{}: brace transport: {x}", e.name))?;
            }
            v => return Err(format!("{}: {v:?}", e.name)),
        }
        done.push(format!("{} {:?}", e.rrb.name(), d));
    }
    if done.len() < 3 {
        return Err(format!("only {} bases qualify", done.len()));
    }
    Ok(format!("{} bases: {}", done.len(), done.join(", ")))
}

fn criterion_9() -> Outcome {
    let z2 = CyclicProduct::new(vec![2]);
    let a = h2_group(&FiniteGroup::cyclic(2), &z2, DEFAULT_VARIABLE_BOUND).map_err(|e| e.to_string())?;
    let b = h2_group(&FiniteGroup::cyclic(3), &z2, DEFAULT_VARIABLE_BOUND).map_err(|e| e.to_string())?;
    if a.order() != 2 || b.order() != 1 {
        return Err(format!("H2(C2, Z2) = {}, H2(C3, Z2) = {}", a.order(), b.order()));
    }
    let v4 = FiniteGroup::klein_four();
    let golden = [2u64];
    let g = group_multiplier(&v4, DEFAULT_VARIABLE_BOUND).map_err(|e| e.to_string())?;
    let o = oracle::group_multiplier_profile(&v4, DEFAULT_TABLE_BOUND).map_err(|e| e.to_string())?;
    if g.factors() != golden || g.order_profile() != o.profile {
        return Err(format!("V4 multiplier {:?}, oracle {:?}", g.factors(), o.profile));
    }
    // with B trivial the third condition makes the first table a coboundary
    let base = RrbGroup::trivial_action(v4, FiniteGroup::trivial(), vec![0; 4]).unwrap();
    let r = SchurMultiplier::compute(&base, DEFAULT_VARIABLE_BOUND).map_err(|e| e.to_string())?;
    let ro = oracle::rrb_multiplier_profile(&base, DEFAULT_TABLE_BOUND).map_err(|e| e.to_string())?;
    if r.structure().order_profile() != ro.profile {
        return Err(format!("RRB multiplier of (V4, 1) {:?}, oracle {:?}", r.structure().factors(), ro.profile));
    }
    Ok(format!("H2(C2,Z2) = Z2, H2(C3,Z2) = 0, multiplier of V4 = Z2 = oracle; RRB multiplier of (V4, 1) has order {} = oracle", r.order()))
}

fn criterion_10(cat: &[CatalogEntry]) -> Outcome {
    let mut slowest = 0f64;
    for e in cat {
        let t = Instant::now();
        let b = SkewBrace::from_rrb(&e.rrb);
        let y = b.ybe_map().map_err(|x| format!("{}: {x}", e.name))?;
        y.verify().map_err(|x| format!("{}: {x}", e.name))?;
        let s = t.elapsed().as_secs_f64();
        slowest = slowest.max(s);
        if s > 1.0 {
            return Err(format!("{}: {s:.2}s", e.name));
        }
    }
    Ok(format!("{} braces pass, slowest {:.1} ms", cat.len(), slowest * 1e3))
}

fn record(results: &mut Vec<bool>, id: u32, name: &str, r: Outcome, secs: f64) {
    match &r {
        Ok(d) => println!("PASS [{id}] {name}: {d} ({secs:.1}s)"),
        Err(d) => println!("FAIL [{id}] {name}: {d} ({secs:.1}s)"),
    }
    results.push(r.is_ok());
}

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, f64) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed().as_secs_f64())
}

fn main() {
    let cat = standard_catalog().expect("catalog");
    let bij = bijective_catalog().expect("bijective catalog");
    let mut results = Vec::new();
    let (r, s) = timed(|| criterion_1(&cat));
    record(&mut results, 1, "cocycle conditions vs extension construction", r, s);
    let (r, s) = timed(criterion_2);
    record(&mut results, 2, "H2 class count vs extension classes", r, s);
    let t = Instant::now();
    let (c3, c4) = criterion_3_4(&cat);
    let s = t.elapsed().as_secs_f64();
    record(&mut results, 3, "multiplier exponent and stabilization", c3, s);
    record(&mut results, 4, "minimal representatives", c4, s);
    let (r, s) = timed(|| criterion_5(&cat));
    record(&mut results, 5, "five-term exactness", r, s);
    let (r, s) = timed(|| criterion_6(&cat));
    record(&mut results, 6, "product coefficients", r, s);
    let (r, s) = timed(|| criterion_7(&bij));
    record(&mut results, 7, "Schur covers of bijective bases", r, s);
    let (r, s) = timed(|| criterion_8(&bij));
    record(&mut results, 8, "covers are weakly isoclinic", r, s);
    let (r, s) = timed(criterion_9);
    record(&mut results, 9, "group cohomology anchors", r, s);
    let (r, s) = timed(|| criterion_10(&cat));
    record(&mut results, 10, "Yang-Baxter solutions", r, s);
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed} of {} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
