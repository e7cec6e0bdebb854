//! Seeded cross-check suites, one per acceptance criterion, registered by name.
//!
//! Reports carry no timings, so identical parameters give identical reports.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{self, Mask};
use crate::chain::{homology, simplicial_chain, ChainVariant, DegreeGroup, HomologySummary};
use crate::complex::{all_complexes, SimplicialComplex};
use crate::decomposition::{decompose, disk_pair_closed_form, Flavor};
use crate::duality::{all_certificates, composition_dual_identity, dual_local_identity};
use crate::error::{input, Error, Result};
use crate::field::{Coefficients, FieldKind};
use crate::ideals::{composition_identity, composition_tor_formula, hochster_check, taylor_tor, TorModule};
use crate::io::disk_pair;
use crate::polyhedral::{nested_join_identity, polyhedral_join, polyhedral_product_complex, PairSequence};
use crate::random::{random_complex, random_exponents, random_pair, random_proper_complex, rng, SweepRng};
use crate::ring::aw::aw_cup_product;
use crate::ring::engine::total_cohomology_ring;
use crate::ring::families::{all_families, family, Universal};
use crate::ring::local::{local_product, local_product_atoms};
use crate::ring::polygon::{component_rule_labelings, polygon_report};
use crate::total::{total_homology, IndexPair, Universe};

/// `n` instances on ground sets of size at most `m` (each suite reads these its own way).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteParams {
    pub seed: u64,
    pub n: usize,
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub criterion: usize,
    pub suite: String,
    pub params: SuiteParams,
    pub passed: bool,
    pub checked: usize,
    /// Counts, and the first failing instance if any.
    pub details: Vec<String>,
}

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn criterion(&self) -> usize;
    fn summary(&self) -> &'static str;
    fn defaults(&self) -> SuiteParams;
    fn run(&self, params: SuiteParams) -> Result<SuiteReport>;
}

/// Accumulates pass/fail state while a suite runs.
struct Tally {
    checked: usize,
    failures: usize,
    details: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failures: 0,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.failures == 1 {
                self.details.push(format!("first failure: {}", what()));
            }
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.details.push(s.into());
    }

    fn finish(mut self, s: &dyn Suite, params: SuiteParams) -> SuiteReport {
        self.details
            .insert(0, format!("{} of {} checks failed", self.failures, self.checked));
        SuiteReport {
            criterion: s.criterion(),
            suite: s.name().to_string(),
            params,
            passed: self.failures == 0 && self.checked > 0,
            checked: self.checked,
            details: self.details,
        }
    }
}

fn facets(k: &SimplicialComplex) -> String {
    let fs: Vec<String> = k.facets().iter().map(|&f| bits::show(f)).collect();
    format!("[{}] on {}", fs.join(" "), k.ground_size())
}

fn need(params: SuiteParams, lo: usize, hi: usize) -> Result<()> {
    if params.m < lo || params.m > hi {
        return input(format!("--m must be between {lo} and {hi}"));
    }
    Ok(())
}

fn factors(r: &mut SweepRng, m: usize, max_n: usize) -> Vec<SimplicialComplex> {
    (0..m)
        .map(|_| {
            let n = r.gen_range(1..=max_n);
            random_proper_complex(r, n)
        })
        .collect()
}

struct DecompositionOracle;

impl Suite for DecompositionOracle {
    fn name(&self) -> &'static str {
        "decomposition"
    }
    fn criterion(&self) -> usize {
        1
    }
    fn summary(&self) -> &'static str {
        "homology of Z(K; D^1, S^0) equals the sum of reduced homology of full subcomplexes"
    }
    fn defaults(&self) -> SuiteParams {
        SuiteParams { seed: 1, n: 200, m: 4 }
    }
    fn run(&self, params: SuiteParams) -> Result<SuiteReport> {
        need(params, 3, 4)?;
        let z = Coefficients::Integers;
        let mut r = rng(params.seed);
        let ks: Vec<SimplicialComplex> = (0..params.n)
            .map(|i| random_complex(&mut r, if i % 2 == 0 { 3 } else { params.m }))
            .collect();
        let results: Vec<Result<(bool, bool)>> = ks
            .par_iter()
            .map(|k| {
                let m = k.ground_size();
                let pairs = PairSequence::new(vec![disk_pair(1); m])?;
                let direct = homology(&simplicial_chain(
                    &polyhedral_product_complex(k, &pairs)?,
                    ChainVariant::Plain,
                    z,
                ));
                let oracle = (0..=bits::full(m)).fold(HomologySummary::default(), |acc, w| {
                    acc.direct_sum(&homology(&simplicial_chain(&k.restrict(w), ChainVariant::Suspended, z)))
                });
                let split = decompose(k, &pairs, Flavor::Product, z)?.total;
                Ok((direct == oracle, split == direct))
            })
            .collect();
        let mut t = Tally::new();
        for (k, res) in ks.iter().zip(results) {
            let (a, b) = res?;
            t.check(a, || {
                format!(
                    "direct homology differs from the full-subcomplex sum on K = {}",
                    facets(k)
                )
            });
            t.check(b, || {
                format!("block decomposition differs from direct homology on K = {}", facets(k))
            });
        }
        Ok(t.finish(self, params))
    }
}

struct JoinOracle;

impl Suite for JoinOracle {
    fn name(&self) -> &'static str {
        "join"
    }
    fn criterion(&self) -> usize {
        2
    }
    fn summary(&self) -> &'static str {
        "direct homology of polyhedral joins equals the join-flavor decomposition over Z"
    }
    fn defaults(&self) -> SuiteParams {
        SuiteParams { seed: 2, n: 100, m: 2 }
    }
    fn run(&self, params: SuiteParams) -> Result<SuiteReport> {
        need(params, 1, 3)?;
        let z = Coefficients::Integers;
        let mut r = rng(params.seed);
        let mut t = Tally::new();
        let mut skipped = 0;
        let mut drawn = 0;
        while t.checked < params.n {
            drawn += 1;
            let m = r.gen_range(1..=params.m);
            let k = random_complex(&mut r, m);
            // Alternate composition pairs (Δ, L) with arbitrary pairs.
            let pairs = if drawn % 2 == 0 {
                PairSequence::composition(&factors(&mut r, m, 3))?
            } else {
                let entries = (0..m)
                    .map(|_| {
                        let n = r.gen_range(1..=3);
                        random_pair(&mut r, n)
                    })
                    .collect();
                PairSequence::new(entries)?
            };
            let split = match decompose(&k, &pairs, Flavor::Join, z) {
                Ok(d) => d.total,
                Err(Error::Refused(_)) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let direct = homology(&simplicial_chain(
                &polyhedral_join(&k, &pairs)?,
                ChainVariant::Suspended,
                z,
            ));
            t.check(split == direct, || {
                format!("K = {}, pairs {:?}", facets(&k), pairs.entries())
            });
        }
        t.note(format!(
            "{skipped} drawn instances had a pair that is not split over Z and were redrawn"
        ));
        Ok(t.finish(self, params))
    }
}

struct Hochster;

impl Suite for Hochster {
    fn name(&self) -> &'static str {
        "hochster"
    }
    fn criterion(&self) -> usize {
        3
    }
    fn summary(&self) -> &'static str {
        "Taylor Tor of I_(K;r) equals the Hochster block sum, entrywise with multidegrees"
    }
    fn defaults(&self) -> SuiteParams {
        SuiteParams { seed: 3, n: 200, m: 5 }
    }
    fn run(&self, params: SuiteParams) -> Result<SuiteReport> {
        need(params, 2, 6)?;
        let mut r = rng(params.seed);
        let mut inputs = Vec::new();
        for i in 0..params.n {
            let m = 2 + i % (params.m - 1);
            let k = loop {
                let k = random_proper_complex(&mut r, m);
                if !k.is_void() {
                    break k;
                }
            };
            let exps = random_exponents(&mut r, m, 3);
            inputs.push((k, exps));
        }
        let results: Vec<Result<Vec<(bool, String)>>> = inputs
            .par_iter()
            .map(|(k, exps)| {
                let mut out = Vec::new();
                let ones = vec![1; k.ground_size()];
                for field in [FieldKind::Rationals, FieldKind::Prime(2)] {
                    for e in [&ones, exps] {
                        let (_, _, ok) = hochster_check(k, e, field)?;
                        out.push((ok, format!("K = {}, r = {e:?}, over {field}", facets(k))));
                    }
                }
                Ok(out)
            })
            .collect();
        let mut t = Tally::new();
        for res in results {
            for (ok, what) in res? {
                t.check(ok, || what);
            }
        }
        Ok(t.finish(self, params))
    }
}

struct Duality;

impl Suite for Duality {
    fn name(&self) -> &'static str {
        "duality"
    }
    fn criterion(&self) -> usize {
        4
    }
    fn summary(&self) -> &'static str {
        "local homology of K and reflected local cohomology of its dual agree over Z, and local complexes dualize"
    }
    fn defaults(&self) -> SuiteParams {
        SuiteParams { seed: 4, n: 200, m: 5 }
    }
    fn run(&self, params: SuiteParams) -> Result<SuiteReport> {
        need(params, 1, 6)?;
        let mut r = rng(params.seed);
        let ks: Vec<SimplicialComplex> = (0..params.n)
            .map(|i| random_complex(&mut r, 1 + i % params.m))
            .collect();
        let mut t = Tally::new();
        let mut nonzero = 0;
        for k in &ks {
            for p in Universe::Left.pairs(k.ground_size()) {
                let w = dual_local_identity(k, p)?;
                t.check(w.equal, || {
                    format!("K = {}, block {p}: local complex of the dual differs", facets(k))
                });
            }
            for c in all_certificates(k, Coefficients::Integers, false)? {
                if !c.left.is_zero() {
                    nonzero += 1;
                }
                t.check(c.matched, || {
                    format!("K = {}, block {}: {:?} vs {:?}", facets(k), c.pair, c.left, c.right)
                });
            }
        }
        t.note(format!("{nonzero} certificates with nonzero groups"));
        Ok(t.finish(self, params))
    }
}

struct Composition;

impl Suite for Composition {
    fn name(&self) -> &'static str {
        "composition"
    }
    fn criterion(&self) -> usize {
        5
    }
    fn summary(&self) -> &'static str {
        "dual of Z*(K;L) equals Z*(K°;L°), and nested polyhedral joins agree"
    }
    fn defaults(&self) -> SuiteParams {
        SuiteParams { seed: 5, n: 100, m: 3 }
    }
    fn run(&self, params: SuiteParams) -> Result<SuiteReport> {
        need(params, 1, 3)?;
        let mut r = rng(params.seed);
        let mut t = Tally::new();
        for i in 0..params.n {
            let m = 1 + i % params.m;
            let k = random_complex(&mut r, m);
            let ls = factors(&mut r, m, 3);
            let (left, right) = composition_dual_identity(&k, &ls)?;
            t.check(left == right, || {
                format!("dual of composition: K = {}, L = {:?}", facets(&k), ls)
            });
            let mut outer = Vec::new();
            let mut inner = Vec::new();
            for _ in 0..m {
                let n = r.gen_range(1..=3);
                outer.push(random_pair(&mut r, n));
                let us = (0..n)
                    .map(|_| {
                        let s = r.gen_range(1..=2);
                        random_pair(&mut r, s)
                    })
                    .collect();
                inner.push(PairSequence::new(us)?);
            }
            let outer = PairSequence::new(outer)?;
            let (left, right) = nested_join_identity(&k, &outer, &inner)?;
            t.check(left == right, || {
                format!("nested joins: K = {}, outer {:?}", facets(&k), outer.entries())
            });
        }
        Ok(t.finish(self, params))
    }
}

struct PolygonRing;

impl Suite for PolygonRing {
    fn name(&self) -> &'static str {
        "polygon"
    }
    fn criterion(&self) -> usize {
        6
    }
    fn summary(&self) -> &'static str {
        "right-universal ring of the m-gon: h·h = (ω'_i * ω''_j) κ and products with κ vanish"
    }
    fn defaults(&self) -> SuiteParams {
        SuiteParams { seed: 0, n: 0, m: 8 }
    }
    fn run(&self, params: SuiteParams) -> Result<SuiteReport> {
        need(params, 4, 10)?;
        let reports: Vec<_> = (4..=params.m).into_par_iter().map(polygon_report).collect();
        let mut t = Tally::new();
        for rep in reports {
            let (_, rep) = rep?;
            t.check(rep.kappa_products_vanish, || {
                format!("m = {}: a product with κ is nonzero", rep.m)
            });
            t.check(rep.component_agree == rep.products, || {
                let miss = rep
                    .first_component_miss
                    .map_or(String::new(), |(w1, i, w2, j, want, got)| {
                        format!(
                            "; e.g. h_({},{i})·h_({},{j}) should be {want}κ, computed {}",
                            bits::show(w1),
                            bits::show(w2),
                            if got == i64::MIN {
                                "not a multiple of κ".to_string()
                            } else {
                                format!("{got}κ")
                            }
                        )
                    });
                format!(
                    "m = {}: component rule holds on {} of {} products{miss}",
                    rep.m, rep.component_agree, rep.products
                )
            });
            t.note(format!(
                "m = {}: component rule {}/{}, disjoint covers {}/{}, rule with ω'' ∖ ω' {}/{}",
                rep.m,
                rep.component_agree,
                rep.products,
                rep.cover_component_agree,
                rep.cover_products,
                rep.corrected_agree,
                rep.products
            ));
        }
        if params.m >= 5 {
            let (ok, total) = component_rule_labelings(5)?;
            t.note(format!(
                "m = 5: {ok} of {total} choices of degree-one basis fit the component rule"
            ));
        }
        Ok(t.finish(self, params))
    }
}

struct RingOracle;

impl Suite for RingOracle {
    fn name(&self) -> &'static str {
        "ring-oracle"
    }
    fn criterion(&self) -> usize {
        7
    }
    fn summary(&self) -> &'static str {
        "right strictly normal ring matches cup-product ranks of the staircase model of Z(K; D^1, S^0)"
    }
    fn defaults(&self) -> SuiteParams {
        SuiteParams { seed: 0, n: 0, m: 3 }
    }
    fn run(&self, params: SuiteParams) -> Result<SuiteReport> {
        need(params, 1, 4)?;
        let fam = family("right-strictly-normal")?;
        let mut jobs = Vec::new();
        for m in 1..=params.m {
            for k in all_complexes(m).into_iter().filter(|k| !k.is_void()) {
                for field in [FieldKind::Prime(2), FieldKind::Rationals] {
                    jobs.push((k.clone(), field));
                }
            }
        }
        let results: Vec<Result<bool>> = jobs
            .par_iter()
            .map(|(k, field)| {
                let t = total_cohomology_ring(k, fam.as_ref(), &Universe::Right, *field)?;
                let pairs = PairSequence::new(vec![disk_pair(1); k.ground_size()])?;
                let aw = aw_cup_product(&polyhedral_product_complex(k, &pairs)?, *field)?;
                Ok(t.ranks() == aw.ranks() && t.multiplication_ranks() == aw.multiplication_ranks())
            })
            .collect();
        let mut t = Tally::new();
        for ((k, field), res) in jobs.iter().zip(results) {
            t.check(res?, || format!("K = {} over {field}", facets(k)));
        }
        t.note("the void complex is skipped: its polyhedral product is the zero object");
        Ok(t.finish(self, params))
    }
}

struct Laws;

impl Suite for Laws {
    fn name(&self) -> &'static str {
        "laws"
    }
    fn criterion(&self) -> usize {
        8
    }
    fn summary(&self) -> &'static str {
        "every family's local product is the universal one or zero; closed form equals atom expansion; ring laws"
    }
    fn defaults(&self) -> SuiteParams {
        SuiteParams { seed: 0, n: 0, m: 3 }
    }
    fn run(&self, params: SuiteParams) -> Result<SuiteReport> {
        need(params, 1, 3)?;
        let ks: Vec<SimplicialComplex> = (1..=params.m).flat_map(all_complexes).collect();
        // Per complex: (partial failures, closed-form mismatches, triples, first failure).
        let sweeps: Vec<(usize, usize, usize, Option<String>)> = ks
            .par_iter()
            .map(|k| {
                let fams = all_families();
                let pairs = Universe::All.pairs(k.ground_size());
                let (mut partial_bad, mut closed_bad, mut n) = (0, 0, 0);
                let mut first = None;
                for &p1 in &pairs {
                    for &p2 in &pairs {
                        for &p in &pairs {
                            let u = local_product_atoms(k, &Universal, p1, p2, p);
                            for f in &fams {
                                n += 1;
                                let a = local_product_atoms(k, f.as_ref(), p1, p2, p);
                                if !(a.is_empty() || a == u) {
                                    partial_bad += 1;
                                    first.get_or_insert_with(|| {
                                        format!("{} not partial on {} at {p1}{p2}→{p}", f.name(), facets(k))
                                    });
                                }
                                if local_product(k, f.as_ref(), p1, p2, p) != a {
                                    closed_bad += 1;
                                    first.get_or_insert_with(|| {
                                        format!("{} closed form differs on {} at {p1}{p2}→{p}", f.name(), facets(k))
                                    });
                                }
                            }
                        }
                    }
                }
                (partial_bad, closed_bad, n, first)
            })
            .collect();
        let mut t = Tally::new();
        let (mut triples, mut partial_bad, mut closed_bad) = (0, 0, 0);
        let mut first = None;
        for (pb, cb, n, f) in sweeps {
            triples += n;
            partial_bad += pb;
            closed_bad += cb;
            if first.is_none() {
                first = f;
            }
        }
        t.check(partial_bad == 0 && closed_bad == 0, || first.unwrap_or_default());
        t.note(format!(
            "{triples} (family, block triple) local products: {partial_bad} not partial, {closed_bad} closed-form mismatches"
        ));
        let mut law_jobs = Vec::new();
        for k in ks.iter().filter(|k| !k.is_void()) {
            for (name, universe) in [
                ("strictly-normal", Universe::All),
                ("special", Universe::All),
                ("right-strictly-normal", Universe::Right),
                ("right-special", Universe::Right),
            ] {
                law_jobs.push((k.clone(), name, universe));
            }
        }
        let laws: Vec<Result<bool>> = law_jobs
            .par_iter()
            .map(|(k, name, universe)| {
                let table = total_cohomology_ring(k, family(name)?.as_ref(), universe, FieldKind::Rationals)?;
                let l = table.laws();
                Ok(l.associative && l.graded_commutative && l.unital)
            })
            .collect();
        for ((k, name, _), ok) in law_jobs.iter().zip(laws) {
            t.check(ok?, || format!("{name} ring on {} fails a law", facets(k)));
        }
        Ok(t.finish(self, params))
    }
}

/// Block table of `{ }`, `{∅}`, `Δ^[m]`, `Δ^S` and `∂Δ^S` from their closed forms.
#[derive(Clone, Copy, Debug)]
enum Special {
    Void,
    Empty,
    Full,
    Simplex(Mask),
    Boundary(Mask),
}

impl Special {
    fn complex(self, m: usize) -> SimplicialComplex {
        match self {
            Special::Void => SimplicialComplex::void(m),
            Special::Empty => SimplicialComplex::empty(m),
            Special::Full => SimplicialComplex::simplex(m, bits::full(m)),
            Special::Simplex(s) => SimplicialComplex::simplex(m, s),
            Special::Boundary(s) => SimplicialComplex::boundary(m, s),
        }
    }

    /// Degree of the single `Z` in block `p`, if any.
    fn block(self, p: IndexPair) -> Option<i32> {
        let (s, w) = (p.sigma, p.omega);
        match self {
            Special::Void => None,
            Special::Empty => (s == 0).then_some(0),
            Special::Full => (w == 0).then_some(0),
            Special::Simplex(t) => (s & !t == 0 && w & t == 0).then_some(0),
            Special::Boundary(t) => {
                if s & !t != 0 || s == t {
                    None
                } else if w & t == 0 {
                    Some(0)
                } else if (t & !s) & !w == 0 {
                    Some(bits::size(t) as i32 - bits::size(s) as i32 - 1)
                } else {
                    None
                }
            }
        }
    }
}

struct ClosedForms;

impl Suite for ClosedForms {
    fn name(&self) -> &'static str {
        "closed-forms"
    }
    fn criterion(&self) -> usize {
        9
    }
    fn summary(&self) -> &'static str {
        "block tables of void, {∅}, simplices and simplex boundaries; 4-gon with (D^2, S^1) has Betti 1,0,0,2,0,0,1"
    }
    fn defaults(&self) -> SuiteParams {
        SuiteParams { seed: 0, n: 0, m: 4 }
    }
    fn run(&self, params: SuiteParams) -> Result<SuiteReport> {
        need(params, 2, 6)?;
        let m = params.m;
        let full = bits::full(m);
        let mut kinds = vec![Special::Void, Special::Empty, Special::Full];
        for s in 1..full {
            kinds.push(Special::Simplex(s));
            kinds.push(Special::Boundary(s));
        }
        let mut t = Tally::new();
        for kind in kinds {
            let k = kind.complex(m);
            let table = total_homology(&k, &Universe::All, Coefficients::Integers)?;
            for p in Universe::All.pairs(m) {
                let want = kind
                    .block(p)
                    .map(|d| {
                        HomologySummary::from_groups([DegreeGroup {
                            degree: d,
                            free_rank: 1,
                            torsion: vec![],
                        }])
                    })
                    .unwrap_or_default();
                let got = table.get(&p);
                t.check(got == want, || {
                    format!("{kind:?} on [{m}], block {p}: expected {want:?}, computed {got:?}")
                });
            }
        }
        let square = SimplicialComplex::from_facets(4, &[0b0011, 0b0110, 0b1100, 0b1001])?;
        let want = vec![1, 0, 0, 2, 0, 0, 1];
        let closed = disk_pair_closed_form(&square, 2, Coefficients::Integers)?.total;
        let split = decompose(
            &square,
            &PairSequence::new(vec![disk_pair(2); 4])?,
            Flavor::Product,
            Coefficients::Integers,
        )?
        .total;
        for (route, h) in [("closed form", closed), ("split decomposition", split)] {
            let betti: Vec<usize> = (0..7).map(|d| h.free_rank(d)).collect();
            let exact = h
                .groups
                .iter()
                .all(|g| (0..7).contains(&g.degree) && g.torsion.is_empty());
            t.check(betti == want && exact, || format!("4-gon via {route}: {h:?}"));
        }
        Ok(t.finish(self, params))
    }
}

struct IdealIdentity;

/// Composition ideals with more generators are redrawn so the Taylor complex stays small.
const IDEAL_GENERATOR_LIMIT: usize = 14;

impl Suite for IdealIdentity {
    fn name(&self) -> &'static str {
        "ideals"
    }
    fn criterion(&self) -> usize {
        10
    }
    fn summary(&self) -> &'static str {
        "Z^⊗(K; I_(L_k;r_k)) = I_(Z*(K°;L);r), and its Tor dimensions follow the block formula"
    }
    fn defaults(&self) -> SuiteParams {
        SuiteParams { seed: 10, n: 50, m: 3 }
    }
    fn run(&self, params: SuiteParams) -> Result<SuiteReport> {
        need(params, 1, 3)?;
        let mut r = rng(params.seed);
        let mut instances = Vec::new();
        let mut redrawn = 0;
        while instances.len() < params.n {
            let m = 1 + instances.len() % params.m;
            let k = random_complex(&mut r, m);
            let ls: Vec<SimplicialComplex> = (0..m)
                .map(|_| {
                    let n = r.gen_range(1..=3);
                    loop {
                        let l = random_proper_complex(&mut r, n);
                        if !l.is_void() {
                            break l;
                        }
                    }
                })
                .collect();
            let rs: Vec<Vec<u32>> = ls
                .iter()
                .map(|l| random_exponents(&mut r, l.ground_size(), 2))
                .collect();
            let (left, right) = composition_identity(&k, &ls, &rs)?;
            if left.generators.len() > IDEAL_GENERATOR_LIMIT {
                redrawn += 1;
                continue;
            }
            instances.push((k, ls, rs, left, right));
        }
        let field = FieldKind::Prime(2);
        let tors: Vec<Result<bool>> = instances
            .par_iter()
            .map(|(k, ls, rs, left, _)| {
                Ok(taylor_tor(left, TorModule::Ideal, field)?.totals() == composition_tor_formula(k, ls, rs, field))
            })
            .collect();
        let mut t = Tally::new();
        for ((k, ls, rs, left, right), tor) in instances.iter().zip(tors) {
            t.check(left.same_generators(right), || {
                format!("generators: K = {}, L = {ls:?}, r = {rs:?}", facets(k))
            });
            t.check(tor?, || {
                format!("Tor over F2: K = {}, L = {ls:?}, r = {rs:?}", facets(k))
            });
        }
        t.note(format!(
            "{redrawn} draws with more than {IDEAL_GENERATOR_LIMIT} generators were replaced"
        ));
        Ok(t.finish(self, params))
    }
}

/// All suites, by criterion number.
pub fn suites() -> Vec<Box<dyn Suite>> {
    vec![
        Box::new(DecompositionOracle),
        Box::new(JoinOracle),
        Box::new(Hochster),
        Box::new(Duality),
        Box::new(Composition),
        Box::new(PolygonRing),
        Box::new(RingOracle),
        Box::new(Laws),
        Box::new(ClosedForms),
        Box::new(IdealIdentity),
    ]
}

pub fn suite(name: &str) -> Result<Box<dyn Suite>> {
    let names: Vec<&str> = suites().iter().map(|s| s.name()).collect();
    suites().into_iter().find(|s| s.name() == name).map_or_else(
        || input(format!("unknown suite `{name}` (one of {})", names.join(", "))),
        Ok,
    )
}

/// Overview of suites for listings: `name → (criterion, summary)`.
pub fn catalog() -> BTreeMap<usize, (&'static str, &'static str)> {
    suites()
        .iter()
        .map(|s| (s.criterion(), (s.name(), s.summary())))
        .collect()
}
