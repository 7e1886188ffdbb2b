//! Workspace documents: TOML text ⇄ resolved algebras, representations and bundles.
//!
//! Scalars are written as strings (`"3"`, `"-1/2"`, `"[0;1]"`) or TOML integers.
//! Each numeric literal keeps its source span so bad literals report line and column.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use toml::Spanned;

use colorhom::algebra::{ColorHomAlgebra, GradedBasis, Product};
use colorhom::deformation::TruncatedBracket;
use colorhom::hls::{CommutativeColorAlgebra, SigmaDerivation};
use colorhom::representation::{adjoint, alpha_s_adjoint, Representation};
use colorhom::{BiCharacter, Group, GroupElement, Matrix, Scalar, Vector};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Lit {
    Int(i64),
    Text(String),
}

type Table<L> = BTreeMap<String, BTreeMap<String, L>>;

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument<L> {
    #[serde(default = "schema_one")]
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub import: Vec<String>,
    pub grading: RawGrading,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<RawEpsilon>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalars: Option<RawScalars>,
    #[serde(default = "BTreeMap::new", skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, RawAlgebra<L>>,
    #[serde(default = "BTreeMap::new", skip_serializing_if = "BTreeMap::is_empty")]
    pub representations: BTreeMap<String, RawRepresentation<L>>,
    #[serde(default = "BTreeMap::new", skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, RawBundle<L>>,
    #[serde(default = "BTreeMap::new", skip_serializing_if = "BTreeMap::is_empty")]
    pub deformations: BTreeMap<String, RawDeformation<L>>,
    #[serde(default = "BTreeMap::new", skip_serializing_if = "BTreeMap::is_empty")]
    pub hls: BTreeMap<String, RawHls<L>>,
}

fn schema_one() -> u32 {
    1
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawGrading {
    pub orders: Vec<u32>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawEpsilon {
    pub root_order: u32,
    pub exponents: Vec<Vec<i64>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawScalars {
    pub root_order: u32,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawAlgebra<L> {
    pub basis: Vec<String>,
    pub degrees: Vec<Vec<i64>>,
    #[serde(default = "Option::default", skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Vec<L>>>,
    #[serde(default = "BTreeMap::new")]
    pub bracket: Table<L>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawRepresentation<L> {
    pub algebra: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<Vec<i64>>>,
    #[serde(default = "Option::default", skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Vec<L>>>,
    #[serde(default = "BTreeMap::new", skip_serializing_if = "BTreeMap::is_empty")]
    pub rho: BTreeMap<String, Vec<Vec<L>>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawBundle<L> {
    pub algebra: String,
    #[serde(default = "Vec::new")]
    pub entries: Vec<RawMapEntry<L>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawMapEntry<L> {
    pub name: String,
    pub matrix: Vec<Vec<L>>,
    #[serde(default = "Option::default", skip_serializing_if = "Option::is_none")]
    pub twisted: Option<Table<L>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawDeformation<L> {
    pub algebra: String,
    pub order: usize,
    /// [.,.]_1 … [.,.]_k; [.,.]_0 is the algebra's bracket.
    #[serde(default = "Vec::new")]
    pub bracket_terms: Vec<Table<L>>,
    /// α_1 … α_p; α_0 is the algebra's twist.
    #[serde(default = "Vec::new")]
    pub alpha_terms: Vec<Vec<Vec<L>>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawHls<L> {
    pub basis: Vec<String>,
    pub degrees: Vec<Vec<i64>>,
    #[serde(default = "BTreeMap::new")]
    pub product: Table<L>,
    pub sigma: Vec<Vec<L>>,
    pub delta_map: Vec<Vec<L>>,
    pub grade_d: Vec<i64>,
    pub delta: L,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepKind {
    Adjoint,
    AlphaAdjoint(i64),
    Explicit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepEntry {
    pub algebra: String,
    pub kind: RepKind,
    pub rep: Representation,
}

/// Explicitly listed bracket entries, keyed by basis index pairs.
pub type Entries = Vec<((usize, usize), Vector)>;

#[derive(Clone, Debug, PartialEq)]
pub struct MapEntry {
    pub name: String,
    pub matrix: Matrix,
    pub twisted: Option<Entries>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MapBundle {
    pub algebra: String,
    pub entries: Vec<MapEntry>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeformationEntry {
    pub algebra: String,
    pub bracket: TruncatedBracket,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HlsEntry {
    pub algebra: CommutativeColorAlgebra,
    pub derivation: SigmaDerivation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Workspace {
    pub eps: BiCharacter,
    pub root_order: u32,
    pub algebras: BTreeMap<String, ColorHomAlgebra>,
    pub representations: BTreeMap<String, RepEntry>,
    pub bundles: BTreeMap<String, MapBundle>,
    pub deformations: BTreeMap<String, DeformationEntry>,
    pub hls: BTreeMap<String, HlsEntry>,
}

impl Workspace {
    pub fn group(&self) -> &Group {
        self.eps.group()
    }

    pub fn algebra(&self, name: &str) -> Result<&ColorHomAlgebra, CliError> {
        self.algebras.get(name).ok_or_else(|| CliError::Usage(format!("no algebra named `{name}`")))
    }
}

/// Source text with a display name, for locating spans.
struct Source<'a> {
    path: &'a str,
    text: &'a str,
}

impl Source<'_> {
    fn at(&self, offset: usize, msg: impl Into<String>) -> CliError {
        let (line, col) = line_col(self.text, offset);
        CliError::Parse { path: self.path.to_string(), line, col, msg: msg.into() }
    }

    fn general(&self, msg: impl Into<String>) -> CliError {
        CliError::Parse { path: self.path.to_string(), line: 0, col: 0, msg: msg.into() }
    }
}

/// 1-based line and column (in characters) of a byte offset.
pub fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let prefix = &text[..offset.min(text.len())];
    let line = prefix.matches('\n').count() + 1;
    let col = prefix.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

type SLit = Spanned<Lit>;

struct Resolver<'a> {
    src: Source<'a>,
    m: u32,
}

impl Resolver<'_> {
    fn scalar(&self, l: &SLit) -> Result<Scalar, CliError> {
        let parsed = match l.get_ref() {
            Lit::Int(n) => Ok(Scalar::from_int(*n).embed(self.m)),
            Lit::Text(s) => Scalar::parse(s, self.m),
        };
        parsed.map_err(|e| self.src.at(l.span().start, e.to_string()))
    }

    fn matrix(&self, rows: &[Vec<SLit>], n: usize, what: &str) -> Result<Matrix, CliError> {
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            let at = rows.first().and_then(|r| r.first()).map_or(0, |l| l.span().start);
            return Err(self.src.at(at, format!("{what} must be a {n}x{n} matrix")));
        }
        let rows: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|l| self.scalar(l)).collect()).collect::<Result<_, _>>()?;
        Matrix::from_rows(rows).map_err(|e| self.src.general(format!("{what}: {e}")))
    }

    fn vector(&self, v: &BTreeMap<String, SLit>, basis: &GradedBasis, what: &str) -> Result<Vector, CliError> {
        let mut out = vec![Scalar::zero(); basis.dim()];
        for (name, l) in v {
            let i = basis
                .index_of(name)
                .ok_or_else(|| self.src.at(l.span().start, format!("{what}: unknown basis vector `{name}`")))?;
            out[i] = &out[i] + &self.scalar(l)?;
        }
        Ok(out)
    }

    fn entries(&self, t: &Table<SLit>, basis: &GradedBasis, what: &str) -> Result<Entries, CliError> {
        let mut out = Vec::new();
        for (key, v) in t {
            let at = v.values().next().map_or(0, |l| l.span().start);
            let (i, j) = pair_key(key, basis).ok_or_else(|| {
                self.src.at(at, format!("{what}: key `{key}` must name two basis vectors as \"a,b\""))
            })?;
            out.push(((i, j), self.vector(v, basis, what)?));
        }
        Ok(out)
    }

    fn element(&self, g: &Group, comps: &[i64], what: &str) -> Result<GroupElement, CliError> {
        g.element(comps).map_err(|e| self.src.general(format!("{what}: {e}")))
    }

    fn basis(&self, eps: &BiCharacter, names: &[String], degrees: &[Vec<i64>], what: &str) -> Result<GradedBasis, CliError> {
        if names.len() != degrees.len() {
            return Err(self.src.general(format!("{what}: {} basis names but {} degrees", names.len(), degrees.len())));
        }
        let degs =
            degrees.iter().map(|d| self.element(eps.group(), d, what)).collect::<Result<Vec<_>, _>>()?;
        GradedBasis::new(names.to_vec(), degs, eps).map_err(|e| self.src.general(format!("{what}: {e}")))
    }
}

fn pair_key(key: &str, basis: &GradedBasis) -> Option<(usize, usize)> {
    let parts: Vec<&str> = key.split([',', ' ']).map(str::trim).filter(|p| !p.is_empty()).collect();
    match parts.as_slice() {
        [a, b] => Some((basis.index_of(a)?, basis.index_of(b)?)),
        _ => None,
    }
}

fn product_from_entries(n: usize, entries: &Entries) -> Product {
    let mut p = Product::zero(n);
    for ((i, j), v) in entries {
        p.set(*i, *j, v.clone());
    }
    p
}

fn parse_raw(text: &str, path: &str) -> Result<RawDocument<SLit>, CliError> {
    toml::from_str(text).map_err(|e| {
        let (line, col) = e.span().map_or((0, 0), |s| line_col(text, s.start));
        CliError::Parse { path: path.to_string(), line, col, msg: e.message().to_string() }
    })
}

/// Parses a document given as text; imports resolve relative to `base`.
pub fn parse_document(text: &str, path: &str, base: Option<&Path>) -> Result<Workspace, CliError> {
    parse_with_stack(text, path, base, &mut Vec::new())
}

/// Reads and parses a document file.
pub fn load_document(path: &Path) -> Result<Workspace, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    parse_with_stack(&text, &path.display().to_string(), path.parent(), &mut Vec::new())
}

fn parse_with_stack(
    text: &str,
    path: &str,
    base: Option<&Path>,
    stack: &mut Vec<PathBuf>,
) -> Result<Workspace, CliError> {
    let raw = parse_raw(text, path)?;
    let src = Source { path, text };
    if raw.schema != 1 {
        return Err(src.general(format!("unsupported schema {}", raw.schema)));
    }
    let group = Group::new(raw.grading.orders.clone()).map_err(|e| src.general(e.to_string()))?;
    let eps = match &raw.epsilon {
        None => BiCharacter::trivial(group),
        Some(e) => BiCharacter::new(group, e.exponents.clone(), e.root_order).map_err(|e| src.general(e.to_string()))?,
    };
    let m = raw.scalars.as_ref().map_or(eps.root_order(), |s| s.root_order);
    if m == 0 || m % eps.root_order() != 0 {
        return Err(src.general(format!(
            "scalar root order {m} must be a multiple of the bi-character root order {}",
            eps.root_order()
        )));
    }
    let mut ws = Workspace {
        eps: eps.clone(),
        root_order: m,
        algebras: BTreeMap::new(),
        representations: BTreeMap::new(),
        bundles: BTreeMap::new(),
        deformations: BTreeMap::new(),
        hls: BTreeMap::new(),
    };
    for imp in &raw.import {
        let p = base.map_or_else(|| PathBuf::from(imp), |b| b.join(imp));
        let canon = p.canonicalize().unwrap_or_else(|_| p.clone());
        if stack.contains(&canon) {
            return Err(src.general(format!("import cycle through `{imp}`")));
        }
        let sub_text = std::fs::read_to_string(&p)
            .map_err(|e| CliError::Io { path: p.display().to_string(), msg: e.to_string() })?;
        stack.push(canon);
        let sub = parse_with_stack(&sub_text, &p.display().to_string(), p.parent(), stack)?;
        stack.pop();
        if sub.eps != ws.eps || sub.root_order != ws.root_order {
            return Err(src.general(format!("import `{imp}` uses a different grading, bi-character or root order")));
        }
        merge(&mut ws, sub, &src)?;
    }
    let r = Resolver { src, m };
    resolve_into(&mut ws, &raw, &r)?;
    Ok(ws)
}

fn merge(ws: &mut Workspace, sub: Workspace, src: &Source<'_>) -> Result<(), CliError> {
    fn put<T>(dst: &mut BTreeMap<String, T>, from: BTreeMap<String, T>, src: &Source<'_>) -> Result<(), CliError> {
        for (k, v) in from {
            if dst.insert(k.clone(), v).is_some() {
                return Err(src.general(format!("`{k}` is defined twice")));
            }
        }
        Ok(())
    }
    put(&mut ws.algebras, sub.algebras, src)?;
    put(&mut ws.representations, sub.representations, src)?;
    put(&mut ws.bundles, sub.bundles, src)?;
    put(&mut ws.deformations, sub.deformations, src)?;
    put(&mut ws.hls, sub.hls, src)
}

fn resolve_into(ws: &mut Workspace, raw: &RawDocument<SLit>, r: &Resolver<'_>) -> Result<(), CliError> {
    let eps = ws.eps.clone();
    let dup = |name: &str| r.src.general(format!("`{name}` is defined twice"));
    for (name, ra) in &raw.algebras {
        let what = format!("algebra `{name}`");
        let basis = r.basis(&eps, &ra.basis, &ra.degrees, &what)?;
        let n = basis.dim();
        let alpha = match &ra.alpha {
            None => Matrix::identity(n),
            Some(rows) => r.matrix(rows, n, &format!("{what} alpha"))?,
        };
        let entries = r.entries(&ra.bracket, &basis, &what)?;
        let a = ColorHomAlgebra::from_entries(basis, eps.clone(), &entries, alpha)
            .map_err(|e| r.src.general(format!("{what}: {e}")))?;
        if ws.algebras.insert(name.clone(), a).is_some() {
            return Err(dup(name));
        }
    }
    for (name, rr) in &raw.representations {
        let what = format!("representation `{name}`");
        let a = ws
            .algebras
            .get(&rr.algebra)
            .ok_or_else(|| r.src.general(format!("{what}: unknown algebra `{}`", rr.algebra)))?;
        let (kind, rep) = match rr.kind.as_str() {
            "adjoint" => (RepKind::Adjoint, adjoint(a)),
            "alpha-adjoint" => {
                let s = rr.s.ok_or_else(|| r.src.general(format!("{what}: alpha-adjoint needs `s`")))?;
                let rep = alpha_s_adjoint(a, s).map_err(|e| r.src.general(format!("{what}: {e}")))?;
                (RepKind::AlphaAdjoint(s), rep)
            }
            "explicit" => {
                let (names, degrees) = rr
                    .basis
                    .as_ref()
                    .zip(rr.degrees.as_ref())
                    .ok_or_else(|| r.src.general(format!("{what}: explicit kind needs `basis` and `degrees`")))?;
                let carrier = r.basis(&eps, names, degrees, &what)?;
                let d = carrier.dim();
                let beta = match &rr.beta {
                    None => Matrix::identity(d),
                    Some(rows) => r.matrix(rows, d, &format!("{what} beta"))?,
                };
                let mut rho = vec![Matrix::zeros(d, d); a.dim()];
                for (gen, rows) in &rr.rho {
                    let i = a.basis().index_of(gen).ok_or_else(|| {
                        r.src.general(format!("{what}: rho names unknown algebra basis vector `{gen}`"))
                    })?;
                    rho[i] = r.matrix(rows, d, &format!("{what} rho({gen})"))?;
                }
                (RepKind::Explicit, Representation { carrier, rho, beta })
            }
            other => {
                return Err(r.src.general(format!(
                    "{what}: unknown kind `{other}` (expected adjoint, alpha-adjoint or explicit)"
                )))
            }
        };
        let entry = RepEntry { algebra: rr.algebra.clone(), kind, rep };
        if ws.representations.insert(name.clone(), entry).is_some() {
            return Err(dup(name));
        }
    }
    for (name, rb) in &raw.maps {
        let what = format!("map bundle `{name}`");
        let a = ws
            .algebras
            .get(&rb.algebra)
            .ok_or_else(|| r.src.general(format!("{what}: unknown algebra `{}`", rb.algebra)))?;
        let n = a.dim();
        let mut entries = Vec::new();
        for e in &rb.entries {
            let ew = format!("{what} entry `{}`", e.name);
            let matrix = r.matrix(&e.matrix, n, &ew)?;
            let twisted = e.twisted.as_ref().map(|t| r.entries(t, a.basis(), &ew)).transpose()?;
            entries.push(MapEntry { name: e.name.clone(), matrix, twisted });
        }
        let bundle = MapBundle { algebra: rb.algebra.clone(), entries };
        if ws.bundles.insert(name.clone(), bundle).is_some() {
            return Err(dup(name));
        }
    }
    for (name, rd) in &raw.deformations {
        let what = format!("deformation `{name}`");
        let a = ws
            .algebras
            .get(&rd.algebra)
            .ok_or_else(|| r.src.general(format!("{what}: unknown algebra `{}`", rd.algebra)))?;
        let n = a.dim();
        let mut terms = vec![a.product().clone()];
        for (i, t) in rd.bracket_terms.iter().enumerate() {
            let tw = format!("{what} bracket term {}", i + 1);
            let entries = r.entries(t, a.basis(), &tw)?;
            let term = ColorHomAlgebra::from_entries(a.basis().clone(), eps.clone(), &entries, Matrix::identity(n))
                .map_err(|e| r.src.general(format!("{tw}: {e}")))?;
            terms.push(term.product().clone());
        }
        let mut alpha_terms = vec![a.alpha().clone()];
        for (i, m) in rd.alpha_terms.iter().enumerate() {
            alpha_terms.push(r.matrix(m, n, &format!("{what} alpha term {}", i + 1))?);
        }
        let bracket = TruncatedBracket { order: rd.order, terms, alpha_terms };
        if ws.deformations.insert(name.clone(), DeformationEntry { algebra: rd.algebra.clone(), bracket }).is_some() {
            return Err(dup(name));
        }
    }
    for (name, rh) in &raw.hls {
        let what = format!("hls `{name}`");
        let basis = r.basis(&eps, &rh.basis, &rh.degrees, &what)?;
        let n = basis.dim();
        let mu = product_from_entries(n, &r.entries(&rh.product, &basis, &what)?);
        let algebra = CommutativeColorAlgebra { basis, eps: eps.clone(), mu };
        let derivation = SigmaDerivation {
            sigma: r.matrix(&rh.sigma, n, &format!("{what} sigma"))?,
            delta_map: r.matrix(&rh.delta_map, n, &format!("{what} delta_map"))?,
            grade_d: r.element(eps.group(), &rh.grade_d, &what)?,
            delta_scalar: r.scalar(&rh.delta)?,
        };
        if ws.hls.insert(name.clone(), HlsEntry { algebra, derivation }).is_some() {
            return Err(dup(name));
        }
    }
    Ok(())
}

fn lit_matrix(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(Scalar::literal).collect()).collect()
}

fn lit_vector(v: &[Scalar], basis: &GradedBasis) -> BTreeMap<String, String> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (basis.names()[i].clone(), c.literal()))
        .collect()
}

fn pair_name(basis: &GradedBasis, i: usize, j: usize) -> String {
    format!("{},{}", basis.names()[i], basis.names()[j])
}

fn lit_entries(entries: &Entries, basis: &GradedBasis) -> Table<String> {
    entries.iter().map(|((i, j), v)| (pair_name(basis, *i, *j), lit_vector(v, basis))).collect()
}

/// Entries of a product table that are nonzero or mirror a nonzero entry, so that
/// skew completion on reading never fills a slot that was zero.
fn product_entries(p: &Product) -> Entries {
    let n = p.dim();
    let nz = |v: &Vector| v.iter().any(|c| !c.is_zero());
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = p.get(i, j);
            if nz(v) || nz(p.get(j, i)) {
                out.push(((i, j), v.clone()));
            }
        }
    }
    out
}

fn components(g: &GroupElement) -> Vec<i64> {
    g.components().iter().map(|&c| c as i64).collect()
}

/// TOML text for a workspace; imports are inlined.
pub fn serialize_workspace(ws: &Workspace) -> Result<String, CliError> {
    let eps = &ws.eps;
    let mut doc: RawDocument<String> = RawDocument {
        schema: 1,
        import: Vec::new(),
        grading: RawGrading { orders: ws.group().orders().to_vec() },
        epsilon: Some(RawEpsilon { root_order: eps.root_order(), exponents: eps.exponent_matrix().to_vec() }),
        scalars: Some(RawScalars { root_order: ws.root_order }),
        algebras: BTreeMap::new(),
        representations: BTreeMap::new(),
        maps: BTreeMap::new(),
        deformations: BTreeMap::new(),
        hls: BTreeMap::new(),
    };
    for (name, a) in &ws.algebras {
        let b = a.basis();
        doc.algebras.insert(
            name.clone(),
            RawAlgebra {
                basis: b.names().to_vec(),
                degrees: b.degrees().iter().map(components).collect(),
                alpha: Some(lit_matrix(a.alpha())),
                bracket: lit_entries(&a.canonical_entries(), b),
            },
        );
    }
    for (name, e) in &ws.representations {
        let a = ws.algebra(&e.algebra)?;
        let mut rr = RawRepresentation {
            algebra: e.algebra.clone(),
            kind: String::new(),
            s: None,
            basis: None,
            degrees: None,
            beta: None,
            rho: BTreeMap::new(),
        };
        match e.kind {
            RepKind::Adjoint => rr.kind = "adjoint".into(),
            RepKind::AlphaAdjoint(s) => {
                rr.kind = "alpha-adjoint".into();
                rr.s = Some(s);
            }
            RepKind::Explicit => {
                rr.kind = "explicit".into();
                rr.basis = Some(e.rep.carrier.names().to_vec());
                rr.degrees = Some(e.rep.carrier.degrees().iter().map(components).collect());
                rr.beta = Some(lit_matrix(&e.rep.beta));
                for (i, m) in e.rep.rho.iter().enumerate() {
                    if !m.is_zero() {
                        rr.rho.insert(a.basis().names()[i].clone(), lit_matrix(m));
                    }
                }
            }
        }
        doc.representations.insert(name.clone(), rr);
    }
    for (name, bundle) in &ws.bundles {
        let a = ws.algebra(&bundle.algebra)?;
        let entries = bundle
            .entries
            .iter()
            .map(|e| RawMapEntry {
                name: e.name.clone(),
                matrix: lit_matrix(&e.matrix),
                twisted: e.twisted.as_ref().map(|t| lit_entries(t, a.basis())),
            })
            .collect();
        doc.maps.insert(name.clone(), RawBundle { algebra: bundle.algebra.clone(), entries });
    }
    for (name, d) in &ws.deformations {
        let a = ws.algebra(&d.algebra)?;
        let b = &d.bracket;
        doc.deformations.insert(
            name.clone(),
            RawDeformation {
                algebra: d.algebra.clone(),
                order: b.order,
                bracket_terms: b.terms.iter().skip(1).map(|p| lit_entries(&product_entries(p), a.basis())).collect(),
                alpha_terms: b.alpha_terms.iter().skip(1).map(lit_matrix).collect(),
            },
        );
    }
    for (name, h) in &ws.hls {
        let b = &h.algebra.basis;
        let d = &h.derivation;
        doc.hls.insert(
            name.clone(),
            RawHls {
                basis: b.names().to_vec(),
                degrees: b.degrees().iter().map(components).collect(),
                product: lit_entries(&product_entries(&h.algebra.mu), b),
                sigma: lit_matrix(&d.sigma),
                delta_map: lit_matrix(&d.delta_map),
                grade_d: components(&d.grade_d),
                delta: d.delta_scalar.literal(),
            },
        );
    }
    toml::to_string(&doc).map_err(|e| CliError::Usage(format!("cannot serialize workspace: {e}")))
}
