use std::path::{Path, PathBuf};

use polyprod::bits::{self, Mask};
use polyprod::chain::{homology, simplicial_chain, ChainVariant, HomologySummary};
use polyprod::decomposition::{decompose, join_total_homology, Flavor};
use polyprod::duality::{all_certificates, dual_complex};
use polyprod::ideals::{hochster_sum, stanley_reisner, taylor_tor, BettiTable, MonomialIdeal, TorModule};
use polyprod::io::{catalog_pair, complex_to_json, format_complex, parse_complex, parse_pair};
use polyprod::polyhedral::polyhedral_join;
use polyprod::ring::engine::total_cohomology_ring;
use polyprod::ring::families::family;
use polyprod::ring::models::{composition_ring, polyhedral_ring, PairKind};
use polyprod::ring::table::RingTable;
use polyprod::total::{total_cohomology, total_homology, IndexPair, Universe};
use polyprod::verify::{suite, suites, Suite};
use polyprod::{Coefficients, Error, FieldKind, PairSequence, Result, SimplicialComplex};
use serde_json::{json, Value};

use crate::report::{summary, torsion, Report, Section};
use crate::Command;

type Outcome = Result<(Report, bool)>;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<SimplicialComplex> {
    parse_complex(&read(path)?).map_err(|e| match e {
        Error::Input(msg) => Error::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Catalog name first, then pair file.
fn load_pair(name: &str) -> Result<(SimplicialComplex, SimplicialComplex)> {
    match catalog_pair(name) {
        Err(_) if Path::new(name).is_file() => parse_pair(&read(Path::new(name))?),
        other => other,
    }
}

fn pair_sequence(k: &SimplicialComplex, specs: &[String]) -> Result<PairSequence> {
    let m = k.ground_size();
    let pairs: Vec<_> = specs.iter().map(|s| load_pair(s)).collect::<Result<_>>()?;
    let entries = match pairs.len() {
        1 => vec![pairs[0].clone(); m],
        n if n == m => pairs,
        n => return Err(Error::Input(format!("K has {m} vertices but {n} pairs were given"))),
    };
    PairSequence::new(entries)
}

fn vertices(s: Mask) -> Value {
    json!(bits::elements(s).map(|v| v + 1).collect::<Vec<_>>())
}

fn pair_json(p: IndexPair) -> Value {
    json!({ "sigma": vertices(p.sigma), "omega": vertices(p.omega) })
}

fn groups_json(h: &HomologySummary) -> Value {
    serde_json::to_value(h).expect("summaries serialize")["groups"].clone()
}

fn group_rows(h: &HomologySummary, prefix: &[String], sec: &mut Section) {
    for g in &h.groups {
        let mut row = prefix.to_vec();
        row.extend([g.degree.to_string(), g.free_rank.to_string(), torsion(&g.torsion)]);
        sec.push(row);
    }
}

pub fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Homology { input, coeffs, variant } => cmd_homology(&input.input, &coeffs, &variant),
        Command::Total {
            input,
            coeffs,
            universe,
            cohomology,
        } => cmd_total(&input.input, &coeffs, &universe, cohomology),
        Command::Decompose {
            input,
            pair,
            flavor,
            coeffs,
        } => cmd_decompose(&input.input, &pair, &flavor, &coeffs),
        Command::Join {
            input,
            pair,
            compose,
            coeffs,
            blocks,
        } => cmd_join(&input.input, &pair, &compose, &coeffs, blocks.as_deref()),
        Command::Ring {
            input,
            family,
            universe,
            field,
            model,
            compose,
        } => cmd_ring(
            &input.input,
            &family,
            universe.as_deref(),
            &field,
            model.as_deref(),
            &compose,
        ),
        Command::Hochster {
            input,
            r,
            ideal,
            field,
            module,
        } => cmd_hochster(input.as_deref(), r.as_deref(), ideal.as_deref(), &field, &module),
        Command::Dual {
            input,
            verify,
            coeffs,
            explicit,
        } => cmd_dual(&input.input, verify, &coeffs, explicit),
        Command::Verify {
            suite,
            m,
            n,
            seed,
            list,
        } => cmd_verify(&suite, m, n, seed, list),
    }
}

fn cmd_homology(path: &Path, coeffs: &str, variant: &str) -> Outcome {
    let k = load_complex(path)?;
    let coeffs = Coefficients::parse(coeffs)?;
    let variant_kind = ChainVariant::parse(variant)?;
    let h = homology(&simplicial_chain(&k, variant_kind, coeffs));
    let mut sec = Section::new(
        format!("homology over {coeffs} ({variant} chains)"),
        vec!["degree", "free_rank", "torsion"],
    );
    group_rows(&h, &[], &mut sec);
    let json = json!({ "coeffs": coeffs.to_string(), "variant": variant, "groups": groups_json(&h) });
    Ok((
        Report {
            sections: vec![sec],
            json,
        },
        true,
    ))
}

fn cmd_total(path: &Path, coeffs: &str, universe: &str, co: bool) -> Outcome {
    let k = load_complex(path)?;
    let coeffs = Coefficients::parse(coeffs)?;
    let u = Universe::parse(universe)?;
    let table = if co {
        total_cohomology(&k, &u, coeffs)?
    } else {
        total_homology(&k, &u, coeffs)?
    };
    let what = if co { "cohomology" } else { "homology" };
    let mut sec = Section::new(
        format!("local {what} over {coeffs}, universe {}", u.tag()),
        vec!["sigma", "omega", "degree", "free_rank", "torsion"],
    );
    let mut blocks = Vec::new();
    for (p, h) in &table.entries {
        group_rows(h, &[bits::show(p.sigma), bits::show(p.omega)], &mut sec);
        blocks.push(json!({ "pair": pair_json(*p), "groups": groups_json(h) }));
    }
    let json = json!({
        "coeffs": coeffs.to_string(),
        "universe": u.tag(),
        "cohomology": co,
        "blocks": blocks,
        "total": groups_json(&table.total()),
    });
    Ok((
        Report {
            sections: vec![sec],
            json,
        },
        true,
    ))
}

fn cmd_decompose(path: &Path, specs: &[String], flavor: &str, coeffs: &str) -> Outcome {
    let k = load_complex(path)?;
    let coeffs = Coefficients::parse(coeffs)?;
    let fl = Flavor::parse(flavor)?;
    let pairs = pair_sequence(&k, specs)?;
    let d = decompose(&k, &pairs, fl, coeffs)?;
    let mut blocks = Section::new(
        format!("{flavor} decomposition over {coeffs}"),
        vec!["sigma", "omega", "local", "degree", "free_rank", "torsion"],
    );
    let mut bj = Vec::new();
    for b in &d.blocks {
        let prefix = [
            bits::show(b.pair.sigma),
            bits::show(b.pair.omega),
            summary(&b.local, coeffs, false),
        ];
        group_rows(&b.summand, &prefix, &mut blocks);
        bj.push(
            json!({ "pair": pair_json(b.pair), "local": groups_json(&b.local), "summand": groups_json(&b.summand) }),
        );
    }
    let mut total = Section::new("total", vec!["degree", "free_rank", "torsion"]);
    group_rows(&d.total, &[], &mut total);
    let json = json!({ "coeffs": coeffs.to_string(), "flavor": flavor, "blocks": bj, "total": groups_json(&d.total) });
    Ok((
        Report {
            sections: vec![blocks, total],
            json,
        },
        true,
    ))
}

fn load_all(paths: &[PathBuf]) -> Result<Vec<SimplicialComplex>> {
    paths.iter().map(|p| load_complex(p)).collect()
}

fn cmd_join(path: &Path, specs: &[String], compose: &[PathBuf], coeffs: &str, blocks: Option<&str>) -> Outcome {
    let k = load_complex(path)?;
    let coeffs = Coefficients::parse(coeffs)?;
    let pairs = if !compose.is_empty() {
        PairSequence::composition(&load_all(compose)?)?
    } else if !specs.is_empty() {
        pair_sequence(&k, specs)?
    } else {
        return Err(Error::Input("give --pair or --compose".into()));
    };
    let z = polyhedral_join(&k, &pairs)?;
    let h = homology(&simplicial_chain(&z, ChainVariant::Suspended, coeffs));
    let mut cx = Section::new("polyhedral join", vec!["m", "facets"]);
    let text = format_complex(&z);
    let facets = text
        .lines()
        .find_map(|l| l.strip_prefix("facets="))
        .unwrap_or("")
        .to_string();
    cx.push(vec![
        z.ground_size().to_string(),
        if z.is_void() { "void".to_string() } else { facets },
    ]);
    let mut hs = Section::new(
        format!("homology over {coeffs} (suspended reduced chains)"),
        vec!["degree", "free_rank", "torsion"],
    );
    group_rows(&h, &[], &mut hs);
    let mut json = json!({ "complex": complex_to_json(&z), "coeffs": coeffs.to_string(), "homology": groups_json(&h) });
    let mut sections = vec![cx, hs];
    if let Some(u) = blocks {
        let u = Universe::parse(u)?;
        let table = join_total_homology(&k, &pairs, &u, coeffs)?;
        let direct = total_homology(&z, &u, coeffs)?;
        if table != direct {
            return Err(Error::Invariant(format!(
                "blockwise assembly differs from direct local homology of the join for K = {:?}",
                k.facets()
            )));
        }
        let mut sec = Section::new(
            format!("blocks, universe {}", u.tag()),
            vec!["sigma", "omega", "degree", "free_rank", "torsion"],
        );
        let mut bj = Vec::new();
        for (p, g) in &table.entries {
            group_rows(g, &[bits::show(p.sigma), bits::show(p.omega)], &mut sec);
            bj.push(json!({ "pair": pair_json(*p), "groups": groups_json(g) }));
        }
        json["blocks"] = json!(bj);
        sections.push(sec);
    }
    Ok((Report { sections, json }, true))
}

fn ring_report(t: &RingTable) -> Report {
    let mut basis = Section::new(
        format!("basis ({}, {}, over {})", t.family, t.universe, t.field),
        vec!["index", "sigma", "omega", "degree", "label"],
    );
    for (i, b) in t.basis.iter().enumerate() {
        let (s, w) = b.pair.map_or((String::new(), String::new()), |p| {
            (bits::show(p.sigma), bits::show(p.omega))
        });
        basis.push(vec![i.to_string(), s, w, b.degree.to_string(), b.label.clone()]);
    }
    let mut consts = Section::new("nonzero constants e_i·e_j = Σ c·e_k", vec!["i", "j", "coeff", "k"]);
    for (&(i, j), v) in &t.constants {
        for (k, c) in v {
            consts.push(vec![
                i.to_string(),
                j.to_string(),
                polyprod::field::show_rational(c),
                k.to_string(),
            ]);
        }
    }
    let l = t.laws();
    let mut laws = Section::new("laws", vec!["associative", "graded_commutative", "unital"]);
    laws.push(vec![
        l.associative.to_string(),
        l.graded_commutative.to_string(),
        l.unital.to_string(),
    ]);
    let mut json = t.to_json();
    json["laws"] =
        json!({ "associative": l.associative, "graded_commutative": l.graded_commutative, "unital": l.unital });
    Report {
        sections: vec![basis, consts, laws],
        json,
    }
}

fn cmd_ring(
    path: &Path,
    name: &str,
    universe: Option<&str>,
    field: &str,
    model: Option<&str>,
    compose: &[PathBuf],
) -> Outcome {
    let k = load_complex(path)?;
    let field = FieldKind::parse(field)?;
    let table = if let Some(model) = model {
        polyhedral_ring(&k, PairKind::parse(model)?, field)?
    } else if !compose.is_empty() {
        composition_ring(&k, &load_all(compose)?, field)?
    } else {
        let fam = family(name)?;
        let u = match universe {
            Some(u) => Universe::parse(u)?,
            None if fam.is_right() => Universe::Right,
            None => Universe::All,
        };
        total_cohomology_ring(&k, fam.as_ref(), &u, field)?
    };
    Ok((ring_report(&table), true))
}

fn betti_sections(tor: &BettiTable) -> (Section, Section, Value) {
    let mut entries = Section::new("Tor dimensions by multidegree", vec!["i", "multidegree", "dim"]);
    let mut ej = Vec::new();
    for ((i, deg), d) in &tor.entries {
        let md = deg.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        entries.push(vec![i.to_string(), md, d.to_string()]);
        ej.push(json!({ "i": i, "multidegree": deg, "dim": d }));
    }
    let mut totals = Section::new("totals", vec!["i", "dim"]);
    let mut tj = Vec::new();
    for (i, d) in tor.totals() {
        totals.push(vec![i.to_string(), d.to_string()]);
        tj.push(json!({ "i": i, "dim": d }));
    }
    (entries, totals, json!({ "entries": ej, "totals": tj }))
}

fn parse_r(r: Option<&str>, m: usize) -> Result<Vec<u32>> {
    let Some(r) = r else { return Ok(vec![1; m]) };
    let v: Vec<u32> = r
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| Error::Input(format!("bad exponent `{x}` in --r")))
        })
        .collect::<Result<_>>()?;
    if v.len() != m || v.contains(&0) {
        return Err(Error::Input(format!("--r needs {m} positive exponents")));
    }
    Ok(v)
}

fn cmd_hochster(input: Option<&Path>, r: Option<&str>, ideal: Option<&Path>, field: &str, module: &str) -> Outcome {
    let field = FieldKind::parse(field)?;
    let module_kind = TorModule::parse(module)?;
    let (ideal, complex) = match (input, ideal) {
        (Some(path), _) => {
            let k = load_complex(path)?;
            let r = parse_r(r, k.ground_size())?;
            (stanley_reisner(&k, &r)?, Some((k, r)))
        }
        (None, Some(path)) => (MonomialIdeal::parse(&read(path)?)?, None),
        (None, None) => return Err(Error::Input("give --in or --ideal".into())),
    };
    let tor = taylor_tor(&ideal, module_kind, field)?;
    let mut gens = Section::new("generators", vec!["exponents"]);
    for g in &ideal.generators {
        gens.push(vec![g.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")]);
    }
    let (entries, totals, tj) = betti_sections(&tor);
    let mut json = json!({ "field": field.to_string(), "module": module, "generators": ideal.generators, "tor": tj });
    let mut sections = vec![gens, entries, totals];
    if let (Some((k, r)), TorModule::Ideal) = (complex, module_kind) {
        let hs = hochster_sum(&k, &r, field);
        if hs != tor {
            return Err(Error::Invariant(format!(
                "Taylor Tor and the block sum differ for K = {:?}, r = {r:?}, over {field}",
                k.facets()
            )));
        }
        let mut check = Section::new("block sum over full subcomplexes", vec!["agrees"]);
        check.push(vec!["true".into()]);
        sections.push(check);
        json["block_sum_agrees"] = json!(true);
    }
    Ok((Report { sections, json }, true))
}

fn cmd_dual(path: &Path, verify: bool, coeffs: &str, explicit: bool) -> Outcome {
    let k = load_complex(path)?;
    let coeffs = Coefficients::parse(coeffs)?;
    if explicit && coeffs.field().is_none() {
        return Err(Error::Input("--explicit needs field coefficients".into()));
    }
    let kd = dual_complex(&k)?;
    let mut dual = Section::new("dual relative to the ground set", vec!["m", "facets"]);
    let text = format_complex(&kd);
    let facets = text
        .lines()
        .find_map(|l| l.strip_prefix("facets="))
        .unwrap_or("")
        .to_string();
    dual.push(vec![
        kd.ground_size().to_string(),
        if kd.is_void() { "void".to_string() } else { facets },
    ]);
    let mut json = json!({ "dual": complex_to_json(&kd) });
    let mut sections = vec![dual];
    if verify {
        let certs = all_certificates(&k, coeffs, explicit)?;
        let mut sec = Section::new(
            format!("certificates over {coeffs}: H_q of (σ,ω) in K vs H^(|ω|-q-1) of (σ',ω) in the dual"),
            vec![
                "sigma",
                "omega",
                "sigma'",
                "local homology",
                "dual local cohomology",
                "matched",
                "sign",
            ],
        );
        let mut cj = Vec::new();
        for c in &certs {
            if !c.matched {
                return Err(Error::Invariant(format!(
                    "certificate failed for K = {:?} at block {}",
                    k.facets(),
                    c.pair
                )));
            }
            sec.push(vec![
                bits::show(c.pair.sigma),
                bits::show(c.pair.omega),
                bits::show(c.dual_pair.sigma),
                summary(&c.left, coeffs, false),
                summary(&c.right, coeffs, true),
                c.matched.to_string(),
                c.sign_rule.clone(),
            ]);
            let mut v = json!({
                "pair": pair_json(c.pair),
                "dual_pair": pair_json(c.dual_pair),
                "left": groups_json(&c.left),
                "right": groups_json(&c.right),
                "matched": c.matched,
                "sign_rule": c.sign_rule,
            });
            if let Some(ms) = &c.matrices {
                v["matrices"] = serde_json::to_value(ms).expect("matrices serialize");
            }
            cj.push(v);
        }
        json["certificates"] = json!(cj);
        sections.push(sec);
    }
    Ok((Report { sections, json }, true))
}

fn cmd_verify(name: &str, m: Option<usize>, n: Option<usize>, seed: Option<u64>, list: bool) -> Outcome {
    let chosen: Vec<Box<dyn Suite>> = if name == "all" { suites() } else { vec![suite(name)?] };
    if list {
        let mut sec = Section::new("suites", vec!["criterion", "suite", "seed", "n", "m", "checks"]);
        let mut lj = Vec::new();
        for s in &chosen {
            let d = s.defaults();
            sec.push(vec![
                s.criterion().to_string(),
                s.name().to_string(),
                d.seed.to_string(),
                d.n.to_string(),
                d.m.to_string(),
                s.summary().to_string(),
            ]);
            lj.push(json!({ "criterion": s.criterion(), "suite": s.name(), "defaults": d, "summary": s.summary() }));
        }
        return Ok((
            Report {
                sections: vec![sec],
                json: json!(lj),
            },
            true,
        ));
    }
    let mut sec = Section::new(
        "verification",
        vec!["criterion", "suite", "status", "checks", "details"],
    );
    let mut reports = Vec::new();
    let mut all_ok = true;
    for s in &chosen {
        let mut p = s.defaults();
        p.m = m.unwrap_or(p.m);
        p.n = n.unwrap_or(p.n);
        p.seed = seed.unwrap_or(p.seed);
        let rep = s.run(p)?;
        all_ok &= rep.passed;
        sec.push(vec![
            rep.criterion.to_string(),
            rep.suite.clone(),
            if rep.passed { "PASS" } else { "FAIL" }.to_string(),
            rep.checked.to_string(),
            rep.details.join("; "),
        ]);
        reports.push(rep);
    }
    let json = serde_json::to_value(&reports).expect("reports serialize");
    Ok((
        Report {
            sections: vec![sec],
            json,
        },
        all_ok,
    ))
}
