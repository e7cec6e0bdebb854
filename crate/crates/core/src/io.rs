//! Text and JSON formats for complexes and pairs, plus the named pair catalog.

use serde::{Deserialize, Serialize};

use crate::bits::{self, Mask};
use crate::complex::SimplicialComplex;
use crate::error::{input, Error, Result};

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    m: usize,
    #[serde(default)]
    facets: Vec<Vec<usize>>,
    #[serde(default)]
    void: bool,
}

#[derive(Deserialize)]
struct PairJson {
    x: ComplexJson,
    a: ComplexJson,
}

/// Parses either the line format (`m=4`, `facets=1 2,2 3`, optional `void=true`) or JSON.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let t = text.trim();
    if t.starts_with('{') {
        let j: ComplexJson = serde_json::from_str(t).map_err(|e| Error::Input(e.to_string()))?;
        return from_json(j);
    }
    let mut m: Option<usize> = None;
    let mut facets: Vec<Mask> = Vec::new();
    let mut void = false;
    for raw in t.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, val) = match line.split_once('=') {
            Some(kv) => kv,
            None => return input(format!("expected key=value, got `{line}`")),
        };
        match key.trim() {
            "m" => m = Some(val.trim().parse().map_err(|_| Error::Input(format!("bad m `{val}`")))?),
            "facets" => {
                for part in val.split(',') {
                    let p = part.trim();
                    if p.is_empty() && val.trim().is_empty() {
                        continue;
                    }
                    facets.push(parse_face(p)?);
                }
            }
            "void" => void = val.trim() == "true",
            other => return input(format!("unknown key `{other}`")),
        }
    }
    let m = m.ok_or_else(|| Error::Input("missing `m=` line".into()))?;
    build(m, &facets, void)
}

fn parse_face(p: &str) -> Result<Mask> {
    if p == "{}" || p == "∅" || p.is_empty() {
        return Ok(0);
    }
    let mut mask = 0;
    for tok in p.split_whitespace() {
        let v: usize = tok.parse().map_err(|_| Error::Input(format!("bad vertex `{tok}`")))?;
        if v == 0 || v > bits::MAX_GROUND {
            return input(format!("vertex {v} out of range"));
        }
        mask |= 1 << (v - 1);
    }
    Ok(mask)
}

fn build(m: usize, facets: &[Mask], void: bool) -> Result<SimplicialComplex> {
    if void {
        if !facets.is_empty() {
            return input("a void complex cannot list facets");
        }
        return Ok(SimplicialComplex::void(m));
    }
    SimplicialComplex::from_facets(m, facets)
}

fn from_json(j: ComplexJson) -> Result<SimplicialComplex> {
    let mut facets = Vec::new();
    for f in &j.facets {
        let mut mask = 0;
        for &v in f {
            if v == 0 || v > bits::MAX_GROUND {
                return input(format!("vertex {v} out of range"));
            }
            mask |= 1 << (v - 1);
        }
        facets.push(mask);
    }
    build(j.m, &facets, j.void)
}

/// Line format for a complex (facets listed, 1-based).
pub fn format_complex(k: &SimplicialComplex) -> String {
    let mut s = format!("m={}\n", k.ground_size());
    if k.is_void() {
        s.push_str("facets=\nvoid=true\n");
        return s;
    }
    let fs: Vec<String> = k
        .facets()
        .iter()
        .map(|&f| {
            if f == 0 {
                "{}".to_string()
            } else {
                bits::elements(f)
                    .map(|v| (v + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            }
        })
        .collect();
    s.push_str(&format!("facets={}\n", fs.join(",")));
    s
}

pub fn complex_to_json(k: &SimplicialComplex) -> serde_json::Value {
    let facets: Vec<Vec<usize>> = if k.is_void() {
        Vec::new()
    } else {
        k.facets()
            .iter()
            .map(|&f| bits::elements(f).map(|v| v + 1).collect())
            .collect()
    };
    serde_json::to_value(ComplexJson {
        m: k.ground_size(),
        facets,
        void: k.is_void(),
    })
    .expect("plain struct serializes")
}

/// Two complexes `X` then `A`, separated by a `---` line, or JSON `{"x": …, "a": …}`.
pub fn parse_pair(text: &str) -> Result<(SimplicialComplex, SimplicialComplex)> {
    let t = text.trim();
    let (x, a) = if t.starts_with('{') {
        let j: PairJson = serde_json::from_str(t).map_err(|e| Error::Input(e.to_string()))?;
        (from_json(j.x)?, from_json(j.a)?)
    } else {
        let parts: Vec<&str> = t.split("\n---").collect();
        if parts.len() != 2 {
            return input("pair file must hold two complexes separated by a `---` line");
        }
        let second = parts[1].trim_start_matches('-');
        (parse_complex(parts[0])?, parse_complex(second)?)
    };
    if x.ground_size() != a.ground_size() || !a.is_subcomplex_of(&x) {
        return input("A must be a subcomplex of X on the same ground set");
    }
    Ok((x, a))
}

/// Named pairs: `disk1`, `disk:n`, `sphere:r:p`, `simplex-boundary:n`.
///
/// `disk:n` is `(Δ^{[n+1]}, ∂Δ^{[n+1]})`, a model of `(D^n, S^{n-1})`; `sphere:r:p` is
/// `(∂Δ^{[r+2]}, ∂Δ^{[p+2]})` with the smaller sphere on the first `p + 2` vertices.
pub fn catalog_pair(name: &str) -> Result<(SimplicialComplex, SimplicialComplex)> {
    let parts: Vec<&str> = name.split(':').collect();
    let num = |s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| Error::Input(format!("bad number `{s}` in pair name `{name}`")))
    };
    match parts.as_slice() {
        ["disk1"] => Ok(disk_pair(1)),
        ["disk", n] => {
            let n = num(n)?;
            if n == 0 || n + 1 > bits::MAX_GROUND {
                return input("disk:n needs 1 ≤ n ≤ 31");
            }
            Ok(disk_pair(n))
        }
        ["sphere", r, p] => {
            let (r, p) = (num(r)?, num(p)?);
            if p >= r || r + 2 > bits::MAX_GROUND {
                return input("sphere:r:p needs 0 ≤ p < r ≤ 30");
            }
            Ok(sphere_pair(r, p))
        }
        ["simplex-boundary", n] => {
            let n = num(n)?;
            if n == 0 || n > bits::MAX_GROUND {
                return input("simplex-boundary:n needs 1 ≤ n ≤ 32");
            }
            Ok((
                SimplicialComplex::simplex(n, bits::full(n)),
                SimplicialComplex::boundary(n, bits::full(n)),
            ))
        }
        _ => input(format!("unknown pair `{name}`")),
    }
}

/// `(Δ^{[n+1]}, ∂Δ^{[n+1]})`.
pub fn disk_pair(n: usize) -> (SimplicialComplex, SimplicialComplex) {
    let s = bits::full(n + 1);
    (
        SimplicialComplex::simplex(n + 1, s),
        SimplicialComplex::boundary(n + 1, s),
    )
}

/// `(∂Δ^{[r+2]}, ∂Δ^{[p+2]})`, the smaller sphere on the first `p + 2` vertices.
pub fn sphere_pair(r: usize, p: usize) -> (SimplicialComplex, SimplicialComplex) {
    let x = SimplicialComplex::boundary(r + 2, bits::full(r + 2));
    let a = SimplicialComplex::boundary(r + 2, bits::full(p + 2));
    (x, a)
}

/// Cone on `L` with apex `n + 1`, paired with `L` itself.
pub fn cone_pair(l: &SimplicialComplex) -> Result<(SimplicialComplex, SimplicialComplex)> {
    let n = l.ground_size();
    let apex = SimplicialComplex::simplex(1, 1);
    let c = SimplicialComplex::join(l, &apex)?;
    let base = l.embed(0, n + 1)?;
    Ok((c, base))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_line_format() {
        let k = parse_complex("m=4\nfacets=1 2,2 3,3 4,1 4\n").unwrap();
        assert_eq!(k.facets().len(), 4);
        let v = parse_complex("m=2\nfacets=\nvoid=true").unwrap();
        assert!(v.is_void());
        let e = parse_complex("m=4\nfacets={}").unwrap();
        assert_eq!(e, SimplicialComplex::empty(4));
        assert!(parse_complex("m=2\nfacets=1 3").is_err());
    }

    #[test]
    fn json_round_trip() {
        let k = parse_complex("m=3\nfacets=1 2,3").unwrap();
        let j = complex_to_json(&k).to_string();
        assert_eq!(parse_complex(&j).unwrap(), k);
        assert_eq!(parse_complex(&format_complex(&k)).unwrap(), k);
    }

    #[test]
    fn catalog_shapes() {
        let (x, a) = catalog_pair("disk1").unwrap();
        assert_eq!(x.num_faces(), 4);
        assert_eq!(a.num_faces(), 3);
        let (x, a) = catalog_pair("sphere:2:0").unwrap();
        assert_eq!(x.ground_size(), 4);
        assert_eq!(a.facets(), vec![1, 2]);
        assert!(catalog_pair("sphere:1:1").is_err());
        let (x, a) = parse_pair("m=2\nfacets=1 2\n---\nm=2\nfacets=1,2").unwrap();
        assert_eq!((x.num_faces(), a.num_faces()), (4, 3));
    }
}
