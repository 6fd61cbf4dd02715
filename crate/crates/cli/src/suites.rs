//! The property suites behind `check-all`. Each suite cross-checks
//! independently computed library results on one algebra and class.

use std::collections::BTreeMap;

use kspec::congruence::{quotient_congruence, unquotient};
use kspec::free::{alpha_map, check_noetherian_equivalences, DisjunctiveSystem, FreeContext};
use kspec::separation::{
    check_irreducible_reduced_equiv, distinguished_open, is_discriminated, is_in_local_closure,
    is_in_q, is_in_sep_omega, is_prime, is_separated, meet_of, prime_decomposition,
    q_membership_report, separation_report, QiBounds,
};
use kspec::spectrum::{is_in_isp, isp_embedding, points_by_quotient_embedding};
use kspec::{
    all_congruences, congruence_closure, enumerate_homs, is_in_is, quotient, Congruence, Equation,
    FiniteAlgebra, PointSet, Spectrum,
};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::workspace::{Class, Workspace};

/// Families are enumerated exhaustively up to this many items, and by
/// members of size at most two beyond it.
const EXHAUSTIVE_ITEMS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub metrics: BTreeMap<&'static str, usize>,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckAllReport {
    pub algebra: String,
    pub class: Vec<String>,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

struct Tally {
    name: &'static str,
    checked: usize,
    metrics: BTreeMap<&'static str, usize>,
    counterexample: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            checked: 0,
            metrics: BTreeMap::new(),
            counterexample: None,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(what());
        }
    }

    fn metric(&mut self, key: &'static str, value: usize) {
        self.metrics.insert(key, value);
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            passed: self.counterexample.is_none(),
            checked: self.checked,
            metrics: self.metrics,
            counterexample: self.counterexample,
        }
    }
}

fn unequal_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect()
}

/// Index subsets of `0..n`: all of them for small `n`, otherwise those of
/// size at most two.
fn index_families(n: usize) -> Vec<Vec<usize>> {
    if n <= EXHAUSTIVE_ITEMS {
        return (0u32..(1 << n))
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect();
    }
    let mut out = vec![vec![]];
    out.extend((0..n).map(|i| vec![i]));
    for i in 0..n {
        out.extend(((i + 1)..n).map(|j| vec![i, j]));
    }
    out
}

fn pair_families(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs = unequal_pairs(n);
    index_families(pairs.len())
        .into_iter()
        .map(|f| f.into_iter().map(|i| pairs[i]).collect())
        .collect()
}

/// Subsets of the points: all of them for small spectra, otherwise the
/// empty set, singletons and closed sets.
fn point_subsets(s: &Spectrum) -> Vec<PointSet> {
    let n = s.len();
    if n <= EXHAUSTIVE_ITEMS {
        return index_families(n)
            .into_iter()
            .map(|f| PointSet::from_indices(n, f))
            .collect();
    }
    let mut out = vec![PointSet::empty(n)];
    out.extend((0..n).map(|i| PointSet::singleton(n, i)));
    out.extend(s.zariski().closed_sets().iter().cloned());
    out
}

fn coherence(ws: &Workspace, s: &Spectrum, class: &Class) -> Result<SuiteResult> {
    let mut t = Tally::new("coherence");
    let a = s.algebra();
    let mut others: Vec<FiniteAlgebra> = class.algebras.clone();
    others.push(a.clone());
    for b in &others {
        let sb = ws.spectrum_of(b, &class.algebras)?;
        for f in enumerate_homs(a, b)? {
            for theta in sb.points() {
                let back = theta.preimage(&f);
                t.check(s.point_index(&back).is_some(), || {
                    format!("preimage {back} of {theta} under {:?} is not a point", f.map())
                });
            }
        }
        for f in enumerate_homs(b, a)? {
            for theta in s.points() {
                let back = theta.preimage(&f);
                t.check(sb.point_index(&back).is_some(), || {
                    format!("preimage {back} of {theta} under {:?} is not a point", f.map())
                });
            }
        }
    }
    for theta in all_congruences(a)? {
        let q = quotient(a, &theta)?;
        let sq = ws.spectrum_of(&q.algebra, &class.algebras)?;
        for p in s.points().iter().filter(|p| theta.leq(p)) {
            let down = quotient_congruence(p, &theta)?;
            t.check(sq.point_index(&down).is_some(), || {
                format!("{p}/{theta} is not a point of the quotient")
            });
        }
        for p in sq.points() {
            let up = unquotient(p, &theta)?;
            t.check(s.point_index(&up).is_some(), || {
                format!("{up} lifted from A/{theta} is not a point")
            });
        }
    }
    Ok(t.finish())
}

fn points(s: &Spectrum) -> Result<SuiteResult> {
    let mut t = Tally::new("points");
    let mut searched = points_by_quotient_embedding(s.context())?;
    searched.sort();
    t.metric("points", s.len());
    t.check(searched == s.points(), || {
        format!("kernels {:?} vs embeddable quotients {searched:?}", s.points())
    });
    Ok(t.finish())
}

fn nullstellensatz_1(s: &Spectrum) -> Result<SuiteResult> {
    let mut t = Tally::new("nullstellensatz-1");
    let a = s.algebra();
    let families = pair_families(a.size());
    let subsets = point_subsets(s);
    let psis = subsets.iter().map(|x| s.psi(x)).collect::<Result<Vec<_>, _>>()?;
    t.metric("pair_sets", families.len());
    t.metric("point_sets", subsets.len());
    for pairs in &families {
        let v = s.v_closed(pairs)?;
        for (x, px) in subsets.iter().zip(&psis) {
            let contained = pairs.iter().all(|&(p, q)| px.related(p, q));
            t.check(contained == x.is_subset(&v), || {
                format!("S = {pairs:?}, X = {x:?}: S ⊆ ψ(X) is {contained}")
            });
        }
        let theta = congruence_closure(a, pairs)?;
        let lhs = s.psi(&v)?;
        let rhs = s.radical(&theta)?;
        t.check(lhs == rhs, || format!("ψ(V({pairs:?})) = {lhs} but rad = {rhs}"));
    }
    for (x, px) in subsets.iter().zip(&psis) {
        let lhs = s.v_of(px)?;
        let rhs = s.zariski_closure(x)?;
        t.check(lhs == rhs, || format!("V(ψ({x:?})) = {lhs:?} but closure = {rhs:?}"));
    }
    Ok(t.finish())
}

fn radical_closure(s: &Spectrum) -> Result<SuiteResult> {
    let mut t = Tally::new("radical-closure");
    let all = all_congruences(s.algebra())?;
    let rads = all.iter().map(|c| s.radical(c)).collect::<Result<Vec<_>, _>>()?;
    let mut fixed = Vec::new();
    for (c, r) in all.iter().zip(&rads) {
        t.check(c.leq(r), || format!("{c} is not below its radical {r}"));
        let rr = s.radical(r)?;
        t.check(rr == *r, || format!("rad rad {c} = {rr} differs from {r}"));
        for (d, rd) in all.iter().zip(&rads) {
            if c.leq(d) {
                t.check(r.leq(rd), || format!("{c} ≤ {d} but rad {r} ≰ rad {rd}"));
            }
        }
        if r == c {
            fixed.push(c.clone());
        }
    }
    let mut rspec = s.rspec();
    rspec.sort();
    t.metric("radical_congruences", rspec.len());
    t.check(rspec == fixed, || format!("rspec {rspec:?} vs fixed points {fixed:?}"));
    Ok(t.finish())
}

fn quotient_radicals(ws: &Workspace, s: &Spectrum, class: &Class) -> Result<SuiteResult> {
    let mut t = Tally::new("quotient-radicals");
    let a = s.algebra();
    let all = all_congruences(a)?;
    for theta in &all {
        let q = quotient(a, theta)?;
        let sq = ws.spectrum_of(&q.algebra, &class.algebras)?;
        let pulled = sq.nilradical().preimage(&q.projection);
        let rad = s.radical(theta)?;
        t.check(pulled == rad, || format!("rad {theta} = {rad} but π⁻¹(nil) = {pulled}"));
        for over in all.iter().filter(|o| theta.leq(o)) {
            let lhs = quotient_congruence(&s.radical(over)?, theta)?;
            let rhs = sq.radical(&quotient_congruence(over, theta)?)?;
            t.check(lhs == rhs, || {
                format!("(rad {over})/{theta} = {lhs} but rad({over}/{theta}) = {rhs}")
            });
        }
    }
    Ok(t.finish())
}

fn reduced_algebras(s: &Spectrum, class: &Class) -> Result<SuiteResult> {
    let mut t = Tally::new("reduced-algebras");
    let a = s.algebra();
    let k = &class.algebras;
    let reduced = s.is_reduced();
    let embedding = isp_embedding(s)?;
    t.check(embedding.is_some() == reduced, || {
        format!("reduced={reduced} but product embedding found={}", embedding.is_some())
    });
    if let Some(e) = &embedding {
        t.metric("embedding_factors", e.factors.len());
        t.check(e.verify(a, k) && e.factors.len() <= s.len(), || {
            "product embedding does not verify".to_string()
        });
    }
    let verdicts = [
        ("in Q(K)", is_in_q(a, k)?),
        ("in ISP(K)", is_in_isp(a, k)?),
        ("separated", is_separated(a, k)?),
        ("locally in ISP(K)", is_in_local_closure(a, |sub| is_in_isp(sub, k))?),
    ];
    for (what, v) in verdicts {
        t.check(v == reduced, || format!("reduced={reduced} but {what}={v}"));
    }
    let bounds = QiBounds {
        max_vars: 2,
        max_premises: 2,
        max_checks: 100_000,
    };
    let q = q_membership_report(a, k, bounds)?;
    t.check(q.consistent, || {
        format!("quasi-identity search disagrees: {}", q.failure.clone().unwrap_or_default())
    });
    Ok(t.finish())
}

fn closed_subspectra(s: &Spectrum) -> Result<SuiteResult> {
    let mut t = Tally::new("closed-subspectra");
    for c in s.zariski().closed_sets() {
        let q = s.closed_subset_as_spectrum(c)?;
        t.check(q.is_homeomorphism(s, c)?, || {
            format!("Spec(A/{}) is not homeomorphic to {c:?}", q.psi)
        });
    }
    Ok(t.finish())
}

fn topology(s: &Spectrum) -> Result<SuiteResult> {
    let mut t = Tally::new("topology");
    let z = s.zariski();
    let top = z.topologize()?;
    t.metric("closed_sets", z.closed_sets().len());
    t.metric("topological_closed_sets", top.closed_sets().len());
    t.metric("zariski_is_topological", usize::from(z.is_topological()));
    t.metric("longest_chain", z.satisfies_dcc().longest_chain);
    t.check(top.is_topological(), || "topologization is not union-closed".into());
    t.check(z.closed_sets().iter().all(|c| top.is_closed(c)), || {
        "topologization lost a closed set".into()
    });
    t.check(top.topologize()?.closed_sets() == top.closed_sets(), || {
        "topologization is not idempotent".into()
    });
    for y in point_subsets(s) {
        let by_prebasis = z.is_irreducible(&y);
        let by_topology = z.is_irreducible_in_topology(&y)?;
        t.check(by_prebasis == by_topology, || {
            format!("{y:?}: prebasis says {by_prebasis}, topology says {by_topology}")
        });
        if !y.is_empty() {
            let (sub, _) = z.subsystem(&y)?;
            let inside = sub.is_irreducible(&sub.ground_set());
            t.check(inside == by_prebasis, || {
                format!("{y:?}: irreducible in the subsystem is {inside}")
            });
        }
    }
    Ok(t.finish())
}

/// Systems of at most two clauses of at most two disjuncts over `eqs`.
fn small_systems(eqs: &[Equation]) -> Result<Vec<DisjunctiveSystem>> {
    let mut clauses: Vec<Vec<Equation>> = eqs.iter().map(|e| vec![e.clone()]).collect();
    for i in 0..eqs.len() {
        for j in (i + 1)..eqs.len() {
            clauses.push(vec![eqs[i].clone(), eqs[j].clone()]);
        }
    }
    let mut out = vec![DisjunctiveSystem::empty()];
    for i in 0..clauses.len() {
        out.push(DisjunctiveSystem::new(vec![clauses[i].clone()])?);
        for j in (i + 1)..clauses.len() {
            out.push(DisjunctiveSystem::new(vec![
                clauses[i].clone(),
                clauses[j].clone(),
            ])?);
        }
    }
    Ok(out)
}

/// The free algebra on the most variables (at most two) within the guards.
fn free_context(class: &Class) -> Result<Option<FreeContext>> {
    for n in (0..=2).rev() {
        let vars: Vec<String> = ["x", "y"][..n].iter().map(|v| v.to_string()).collect();
        match FreeContext::new(&class.algebras, &vars) {
            Ok(ctx) => return Ok(Some(ctx)),
            Err(kspec::Error::Resource(_)) | Err(kspec::Error::EmptySubuniverse) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(None)
}

fn nullstellensatz_2(class: &Class) -> Result<SuiteResult> {
    let mut t = Tally::new("nullstellensatz-2");
    let Some(ctx) = free_context(class)? else {
        t.metric("variables", 0);
        return Ok(t.finish());
    };
    let n = ctx.free.size();
    let eqs: Vec<Equation> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .take(9)
        .map(|(a, b)| ctx.free.equation(a, b))
        .collect();
    let systems = small_systems(&eqs)?;
    t.metric("variables", ctx.free.variables().len());
    t.metric("equations", eqs.len());
    t.metric("systems", systems.len());
    let vs = systems
        .iter()
        .map(|s| ctx.v_disjunctive(s))
        .collect::<Result<Vec<_>, _>>()?;
    let masks = systems
        .iter()
        .map(|s| ctx.models.system_mask(s))
        .collect::<Result<Vec<_>, _>>()?;
    for (s, v) in systems.iter().zip(&vs) {
        let closed = ctx.v_closed_form(s)?;
        t.check(closed == *v, || format!("V({s}) differs between the two forms"));
        if let Some(eqs) = s.as_equations() {
            t.check(ctx.radical_restatement(&eqs)?, || {
                format!("rad of {s} is not its set of consequences")
            });
        }
    }
    for i in 0..systems.len() {
        for j in 0..systems.len() {
            let inclusion = vs[i].is_subset(&vs[j]);
            let entailed = masks[i].is_subset(&masks[j]);
            t.check(inclusion == entailed, || {
                format!(
                    "V({}) ⊆ V({}) is {inclusion} but entailment is {entailed}",
                    systems[i], systems[j]
                )
            });
        }
    }
    Ok(t.finish())
}

fn noetherian(class: &Class) -> Result<SuiteResult> {
    let mut t = Tally::new("noetherian");
    let names = ["zariski_chain_0", "zariski_chain_1", "zariski_chain_2"];
    for n in 0..=2 {
        let vars: Vec<String> = ["x", "y"][..n].iter().map(|v| v.to_string()).collect();
        match check_noetherian_equivalences(&class.algebras, &vars) {
            Ok(r) => {
                t.metric(names[n], r.zariski_dcc.longest_chain);
                t.check(r.holds, || format!("conditions disagree over {vars:?}: {r:?}"));
            }
            Err(kspec::Error::Resource(_)) => break,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(t.finish())
}

fn affine(s: &Spectrum) -> Result<SuiteResult> {
    let mut t = Tally::new("affine");
    let a = s.algebra();
    for n in 1..=2 {
        let alpha = match alpha_map(a, n) {
            Ok(alpha) => alpha,
            Err(kspec::Error::Resource(_)) | Err(kspec::Error::EmptySubuniverse) if n > 1 => break,
            Err(kspec::Error::EmptySubuniverse) => break,
            Err(e) => return Err(e.into()),
        };
        t.metric(if n == 1 { "points_n1" } else { "points_n2" }, alpha.space.points.len());
        let f = &alpha.morphism;
        t.check(f.is_quasi_isomorphism(), || format!("α on A^{n} is not a quasi-isomorphism"));
        let m = alpha.space.points.len();
        let subsets: Vec<PointSet> = if m <= EXHAUSTIVE_ITEMS {
            index_families(m)
                .into_iter()
                .map(|f| PointSet::from_indices(m, f))
                .collect()
        } else {
            f.source.closed_sets().to_vec()
        };
        for x in &subsets {
            t.check(alpha.radical_matches(x)?, || format!("θ_Rad({x:?}) ≠ ψ(α({x:?})) in A^{n}"));
        }
        for c in f.source.closed_sets() {
            let here = f.source.is_irreducible(c);
            let there = f.target.is_irreducible(&f.image(c));
            t.check(here == there, || format!("irreducibility of {c:?} not transported"));
        }
    }
    Ok(t.finish())
}

fn irreducible_reduced(s: &Spectrum, class: &Class) -> Result<SuiteResult> {
    let mut t = Tally::new("irreducible-reduced");
    let a = s.algebra();
    let k = &class.algebras;
    let r = check_irreducible_reduced_equiv(a, k)?;
    t.metric("embeddable", usize::from(r.embeddable));
    t.check(r.agree, || format!("{r:?}"));
    let sep = separation_report(a, k)?;
    t.check(sep.verify(a, k), || "a separation witness does not separate".into());
    let is = is_in_is(a, k)?;
    t.check(is_discriminated(a, k)? == is, || "discrimination differs from IS".into());
    t.check(is_in_sep_omega(a, k)? == is, || "joint separation differs from IS".into());
    Ok(t.finish())
}

fn complement_identity(s: &Spectrum) -> Result<SuiteResult> {
    let mut t = Tally::new("complement-identity");
    for family in pair_families(s.algebra().size()) {
        let mut opens = s.all_points();
        let mut union = PointSet::empty(s.len());
        for &(x, y) in &family {
            opens = opens.intersection(&distinguished_open(s, x, y)?);
            union = union.union(&s.v_closed(&[(x, y)])?);
        }
        let lhs = opens.is_empty();
        let rhs = union == s.all_points();
        t.check(lhs == rhs, || {
            format!("{family:?}: opens empty is {lhs}, closed sets cover is {rhs}")
        });
    }
    Ok(t.finish())
}

fn prime_decompositions(s: &Spectrum) -> Result<SuiteResult> {
    let mut t = Tally::new("prime-decomposition");
    let n = s.algebra().size();
    let rspec = s.rspec();
    t.metric("radical_congruences", rspec.len());
    for theta in &rspec {
        let parts = prime_decomposition(s, theta)?;
        t.check(meet_of(n, &parts) == *theta, || format!("primes of {theta} do not meet to it"));
        for p in &parts {
            t.check(is_prime(s, p)?, || format!("{p} in the decomposition of {theta} is not prime"));
        }
        let v = s.v_of(theta)?;
        let (sub, order) = s.zariski().subsystem(&v)?;
        let mut expected = sub
            .minimal_decomposition()
            .iter()
            .map(|c| s.psi(&PointSet::from_indices(s.len(), c.iter().map(|i| order[i]))))
            .collect::<Result<Vec<Congruence>, _>>()?;
        if v.is_empty() {
            expected.clear();
        }
        expected.sort();
        let mut got = parts.clone();
        got.sort();
        t.check(got == expected, || {
            format!("decomposition of {theta} is {got:?}, components give {expected:?}")
        });
    }
    for theta in all_congruences(s.algebra())? {
        if !rspec.contains(&theta) {
            let rejected = matches!(
                prime_decomposition(s, &theta),
                Err(kspec::Error::NotRadical)
            );
            t.check(rejected, || format!("non-radical {theta} was decomposed"));
        }
    }
    Ok(t.finish())
}

/// Every suite, in a fixed order.
pub fn check_all(ws: &Workspace, algebra: &str, class: &Class) -> Result<CheckAllReport> {
    let s = ws.spectrum(algebra, class)?;
    if class.algebras[0].signature() != s.algebra().signature() {
        return Err(CliError::Argument("signature mismatch".into()));
    }
    let suites = vec![
        coherence(ws, &s, class)?,
        points(&s)?,
        nullstellensatz_1(&s)?,
        radical_closure(&s)?,
        quotient_radicals(ws, &s, class)?,
        reduced_algebras(&s, class)?,
        closed_subspectra(&s)?,
        topology(&s)?,
        nullstellensatz_2(class)?,
        noetherian(class)?,
        affine(&s)?,
        irreducible_reduced(&s, class)?,
        complement_identity(&s)?,
        prime_decompositions(&s)?,
    ];
    Ok(CheckAllReport {
        algebra: algebra.to_string(),
        class: class.members.clone(),
        passed: suites.iter().all(|s| s.passed),
        suites,
    })
}
