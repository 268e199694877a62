//! Declarative code descriptions.
//!
//! ```text
//! # comment
//! [code C1]
//! ring = F4
//! construction = four_circulant
//! rA = (1,w,w,0)
//! rB = (w,W,W,w)
//!
//! [code T7.1]
//! construction = extension
//! base = C64
//! theorem = B
//! X = 3u3uu3310010u3u0
//! c = 3
//! ```
//!
//! A `base` is a code name or a map applied to one, e.g. `psi_f4u(L3)` or
//! `mu(J1)`.

use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::code::{ExtensionParams, Provenance, RingCode, Theorem};
use crate::error::{Error, Result};
use crate::gray::GrayMap;
use crate::ring::{parse_element, RingId, RingMatrix, RingVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    FourCirculant {
        ra: String,
        rb: String,
    },
    Matrix {
        rows: Vec<String>,
    },
    Lift {
        base: String,
        ra: String,
        rb: String,
    },
    Extension {
        base: String,
        theorem: Theorem,
        x: String,
        c: String,
        seed: Option<u64>,
    },
    Image {
        base: String,
        map: GrayMap,
    },
    Projection {
        base: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub name: String,
    pub ring: Option<RingId>,
    pub construction: Construction,
    /// Line of the section header, and line/column of each value.
    line: usize,
    /// Line, column and raw text of each key's value.
    positions: HashMap<String, (usize, usize, String)>,
}

impl CodeSpec {
    pub fn line(&self) -> usize {
        self.line
    }

    fn locate(&self, key: &str, err: Error) -> Error {
        let Some((line, column, raw)) = self.positions.get(key) else {
            return err;
        };
        let (line, column) = (*line, *column);
        match err {
            Error::Spec { .. } => err,
            Error::Token { token, position, ring } => Error::Spec {
                line,
                column,
                message: format!(
                    "{key} = {:?}: unknown token {token:?} at position {position} for ring {ring}",
                    clip(raw)
                ),
            },
            other => Error::Spec {
                line,
                column,
                message: format!("{key}: {other}"),
            },
        }
    }
}

fn clip(raw: &str) -> String {
    match raw.char_indices().nth(40) {
        Some((i, _)) => format!("{}...", &raw[..i]),
        None => raw.to_string(),
    }
}

struct Section {
    name: String,
    line: usize,
    values: Vec<(String, String, usize, usize)>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-' | '+'))
}

fn spec_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Spec {
        line,
        column,
        message: message.into(),
    }
}

fn sections(text: &str) -> Result<Vec<Section>> {
    let mut out: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        if let Some(header) = trimmed.strip_prefix('[') {
            let inner = header
                .strip_suffix(']')
                .ok_or_else(|| spec_error(line, indent + 1, "unterminated section header"))?;
            let mut parts = inner.split_whitespace();
            if parts.next() != Some("code") {
                return Err(spec_error(line, indent + 2, "expected [code NAME]"));
            }
            let name = parts.next().unwrap_or("");
            if !valid_name(name) || parts.next().is_some() {
                return Err(spec_error(line, indent + 2, format!("bad code name in [{inner}]")));
            }
            if out.iter().any(|s| s.name == name) {
                return Err(spec_error(line, indent + 1, format!("duplicate code {name:?}")));
            }
            out.push(Section {
                name: name.to_string(),
                line,
                values: Vec::new(),
            });
            continue;
        }
        let Some(eq) = content.find('=') else {
            return Err(spec_error(line, indent + 1, "expected key = value"));
        };
        let section = out
            .last_mut()
            .ok_or_else(|| spec_error(line, indent + 1, "key outside a [code NAME] section"))?;
        let key = content[..eq].trim();
        let value_raw = &content[eq + 1..];
        let value = value_raw.trim();
        let column = eq + 2 + (value_raw.len() - value_raw.trim_start().len());
        if section.values.iter().any(|(k, ..)| k == key) {
            return Err(spec_error(line, indent + 1, format!("duplicate key {key:?}")));
        }
        section.values.push((key.to_string(), value.to_string(), line, column));
    }
    Ok(out)
}

const KEYS: [&str; 11] = [
    "ring",
    "construction",
    "rA",
    "rB",
    "rows",
    "base",
    "theorem",
    "X",
    "c",
    "map",
    "seed",
];

fn to_spec(section: Section) -> Result<CodeSpec> {
    let mut values: HashMap<String, String> = HashMap::new();
    let mut positions = HashMap::new();
    for (key, value, line, column) in section.values {
        if !KEYS.contains(&key.as_str()) {
            return Err(spec_error(line, 1, format!("unknown key {key:?}")));
        }
        positions.insert(key.clone(), (line, column, value.clone()));
        values.insert(key, value);
    }
    let at = |key: &str| positions.get(key).map(|p| (p.0, p.1)).unwrap_or((section.line, 1));
    let need = |key: &str| -> Result<String> {
        values
            .get(key)
            .cloned()
            .ok_or_else(|| spec_error(section.line, 1, format!("code {:?} is missing {key:?}", section.name)))
    };
    let ring = match values.get("ring") {
        Some(r) => {
            let (l, c) = at("ring");
            Some(r.parse::<RingId>().map_err(|e| spec_error(l, c, e.to_string()))?)
        }
        None => None,
    };
    let kind = need("construction")?;
    let construction = match kind.as_str() {
        "four_circulant" => Construction::FourCirculant {
            ra: need("rA")?,
            rb: need("rB")?,
        },
        "matrix" => Construction::Matrix {
            rows: need("rows")?
                .split(';')
                .map(|r| r.trim().to_string())
                .filter(|r| !r.is_empty())
                .collect(),
        },
        "lift" => Construction::Lift {
            base: need("base")?,
            ra: need("rA")?,
            rb: need("rB")?,
        },
        "extension" => {
            let (l, c) = at("theorem");
            let seed = match values.get("seed") {
                Some(s) => {
                    let (l, c) = at("seed");
                    Some(s.parse::<u64>().map_err(|e| spec_error(l, c, format!("seed: {e}")))?)
                }
                None => None,
            };
            Construction::Extension {
                base: need("base")?,
                theorem: need("theorem")?
                    .parse()
                    .map_err(|e: Error| spec_error(l, c, e.to_string()))?,
                x: need("X")?,
                c: need("c")?,
                seed,
            }
        }
        "image" => {
            let (l, c) = at("map");
            Construction::Image {
                base: need("base")?,
                map: need("map")?
                    .parse()
                    .map_err(|e: Error| spec_error(l, c, e.to_string()))?,
            }
        }
        "projection" => Construction::Projection { base: need("base")? },
        other => {
            let (l, c) = at("construction");
            return Err(spec_error(l, c, format!("unknown construction {other:?}")));
        }
    };
    if matches!(
        construction,
        Construction::FourCirculant { .. } | Construction::Matrix { .. }
    ) && ring.is_none()
    {
        return Err(spec_error(
            section.line,
            1,
            format!("code {:?} needs a ring", section.name),
        ));
    }
    Ok(CodeSpec {
        name: section.name,
        ring,
        construction,
        line: section.line,
        positions,
    })
}

/// Parses every `[code NAME]` section of a spec file.
pub fn parse_specs(text: &str) -> Result<Vec<CodeSpec>> {
    sections(text)?.into_iter().map(to_spec).collect()
}

/// One-line form used in data files: `key=value` pairs separated by spaces.
pub fn parse_inline(name: &str, text: &str) -> Result<CodeSpec> {
    let mut values = Vec::new();
    let mut column = 1;
    for field in text.split(' ') {
        if !field.is_empty() {
            let (k, v) = field
                .split_once('=')
                .ok_or_else(|| spec_error(1, column, format!("expected key=value, found {field:?}")))?;
            values.push((k.to_string(), v.to_string(), 1, column + k.len() + 1));
        }
        column += field.len() + 1;
    }
    to_spec(Section {
        name: name.to_string(),
        line: 1,
        values,
    })
}

/// Splits `map(inner)` into the map and the inner expression.
fn split_call(expr: &str) -> Option<(&str, &str)> {
    let open = expr.find('(')?;
    let inner = expr[open + 1..].strip_suffix(')')?;
    Some((&expr[..open], inner))
}

/// Named specs from one or more sources; later sources shadow earlier ones.
#[derive(Default)]
pub struct Library {
    specs: HashMap<String, CodeSpec>,
    cache: Mutex<HashMap<String, RingCode>>,
}

const MAX_DEPTH: usize = 64;

impl Library {
    pub fn new() -> Library {
        Library::default()
    }

    pub fn add_text(&mut self, text: &str) -> Result<Vec<String>> {
        let specs = parse_specs(text)?;
        let names = specs.iter().map(|s| s.name.clone()).collect();
        for s in specs {
            self.insert(s);
        }
        Ok(names)
    }

    pub fn insert(&mut self, spec: CodeSpec) {
        self.cache.lock().expect("cache lock").clear();
        self.specs.insert(spec.name.clone(), spec);
    }

    /// Loads every `*.sdf` file of a directory.
    pub fn add_dir(&mut self, dir: &Path) -> Result<()> {
        let mut paths: Vec<_> = fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|e| e == "sdf"))
            .collect();
        paths.sort();
        for p in paths {
            self.add_text(&fs::read_to_string(&p)?)?;
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&CodeSpec> {
        self.specs.get(name)
    }

    pub fn names(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self.specs.keys().map(String::as_str).collect();
        names.sort_unstable();
        names
    }

    /// Builds a named code or an expression such as `psi_f4u(L6)`.
    pub fn build(&self, name: &str) -> Result<RingCode> {
        self.resolve(name, 0)
    }

    fn resolve(&self, expr: &str, depth: usize) -> Result<RingCode> {
        if depth > MAX_DEPTH {
            return Err(Error::Invalid(format!(
                "reference chain through {expr:?} is too deep or cyclic"
            )));
        }
        let expr = expr.trim();
        if let Some(code) = self.cache.lock().expect("cache lock").get(expr) {
            return Ok(code.clone());
        }
        let code = if let Some((f, inner)) = split_call(expr) {
            let base = self.resolve(inner, depth + 1)?;
            match f.trim() {
                "mu" => base.project_mu()?,
                map => base.gray_image(map.parse()?)?,
            }
            .named(expr)
        } else {
            let spec = self
                .specs
                .get(expr)
                .ok_or_else(|| Error::Unresolved(expr.to_string()))?;
            self.build_at(spec, depth)?
        };
        self.cache
            .lock()
            .expect("cache lock")
            .insert(expr.to_string(), code.clone());
        Ok(code)
    }

    /// Builds `spec`, resolving its base against this library.
    pub fn build_spec(&self, spec: &CodeSpec) -> Result<RingCode> {
        self.build_at(spec, 0)
    }

    fn build_at(&self, spec: &CodeSpec, depth: usize) -> Result<RingCode> {
        let base = |expr: &str| self.resolve(expr, depth + 1).map_err(|e| spec.locate("base", e));
        let vector =
            |key: &str, text: &str, ring: RingId| RingVector::parse(text, ring).map_err(|e| spec.locate(key, e));
        let code = match &spec.construction {
            Construction::FourCirculant { ra, rb } => {
                let ring = spec.ring.expect("checked at parse time");
                let (ra, rb) = (vector("rA", ra, ring)?, vector("rB", rb, ring)?);
                RingCode::four_circulant(&ra, &rb).map_err(|e| spec.locate("rB", e))?
            }
            Construction::Matrix { rows } => {
                let ring = spec.ring.expect("checked at parse time");
                let rows = rows
                    .iter()
                    .map(|r| vector("rows", r, ring))
                    .collect::<Result<Vec<_>>>()?;
                let m = RingMatrix::from_rows(ring, &rows).map_err(|e| spec.locate("rows", e))?;
                RingCode::explicit(m).map_err(|e| spec.locate("rows", e))?
            }
            Construction::Lift { base: b, ra, rb } => {
                let parent = base(b)?;
                let ring = parent.ring().lifted().ok_or_else(|| {
                    spec.locate(
                        "base",
                        Error::WrongRing {
                            expected: "F2 or F4".into(),
                            found: parent.ring(),
                        },
                    )
                })?;
                let (ra, rb) = (vector("rA", ra, ring)?, vector("rB", rb, ring)?);
                parent.lift(&ra, &rb).map_err(|e| spec.locate("rA", e))?
            }
            Construction::Extension {
                base: b,
                theorem,
                x,
                c,
                seed,
            } => {
                let parent = base(b)?;
                let ring = parent.ring();
                let params = ExtensionParams {
                    theorem: *theorem,
                    x: vector("X", x, ring)?,
                    c: parse_element(c, ring).map_err(|e| spec.locate("c", e))?,
                };
                let code = parent.extend(&params).map_err(|e| match e {
                    Error::BadUnit(_) => spec.locate("c", e),
                    Error::NotSelfDual | Error::NotSystematic => spec.locate("base", e),
                    other => spec.locate("X", other),
                })?;
                match seed {
                    Some(s) => code.with_seed(*s),
                    None => code,
                }
            }
            Construction::Image { base: b, map } => base(b)?.gray_image(*map).map_err(|e| spec.locate("map", e))?,
            Construction::Projection { base: b } => base(b)?.project_mu().map_err(|e| spec.locate("base", e))?,
        };
        if let Some(r) = spec.ring {
            if r != code.ring() {
                return Err(spec.locate(
                    "ring",
                    Error::WrongRing {
                        expected: r.to_string(),
                        found: code.ring(),
                    },
                ));
            }
        }
        Ok(code.named(spec.name.clone()))
    }
}

/// Builds the last code of a spec file, resolving bases in the file first
/// and then in `library`.
pub fn build_from_text(text: &str, name: Option<&str>, library: Option<&Library>) -> Result<RingCode> {
    let specs = parse_specs(text)?;
    let target = match name {
        Some(n) => n.to_string(),
        None => specs.last().map(|s| s.name.clone()).ok_or(Error::Empty("spec file"))?,
    };
    let mut lib = Library::new();
    if let Some(outer) = library {
        for s in outer.specs.values() {
            lib.insert(s.clone());
        }
    }
    for s in specs {
        lib.insert(s);
    }
    lib.build(&target)
}

/// Spec text that rebuilds `code` from its provenance; nested bases become
/// sections named `NAME.1`, `NAME.2`, ….
pub fn spec_of(code: &RingCode) -> String {
    let name = code
        .name
        .clone()
        .filter(|n| valid_name(n))
        .unwrap_or_else(|| "code".into());
    let mut out = Vec::new();
    let mut counter = 0;
    emit(code.provenance(), code.ring(), &name, &mut counter, &mut out);
    out.join("\n")
}

fn emit(p: &Provenance, ring: RingId, name: &str, counter: &mut usize, out: &mut Vec<String>) {
    let mut nested = |p: &Provenance, ring: RingId, out: &mut Vec<String>| {
        *counter += 1;
        let child = format!("{}.{}", name.split('.').next().unwrap_or(name), counter);
        emit(p, ring, &child, counter, out);
        child
    };
    let body = match p {
        Provenance::Explicit { rows } => format!("construction = matrix\nrows = {}", rows.join("; ")),
        Provenance::FourCirculant { ra, rb } => format!("construction = four_circulant\nrA = {ra}\nrB = {rb}"),
        Provenance::Lift { parent, ra, rb } => {
            let base = nested(parent, ring.residue().expect("lifted ring"), out);
            format!("construction = lift\nbase = {base}\nrA = {ra}\nrB = {rb}")
        }
        Provenance::Projection { parent } => {
            let base = nested(parent, ring.lifted().expect("residue ring"), out);
            format!("construction = projection\nbase = {base}")
        }
        Provenance::GrayImage { map, parent } => {
            let base = nested(parent, map.domain(), out);
            format!("construction = image\nbase = {base}\nmap = {map}")
        }
        Provenance::Extension {
            base,
            theorem,
            x,
            c,
            seed,
        } => {
            let b = nested(base, ring, out);
            let seed = seed.map(|s| format!("\nseed = {s}")).unwrap_or_default();
            format!("construction = extension\nbase = {b}\ntheorem = {theorem}\nX = {x}\nc = {c}{seed}")
        }
    };
    out.push(format!("[code {name}]\nring = {ring}\n{body}\n"));
}

pub const CODE_SCHEMA: &str = "sdf.code/1";

/// On-disk form of a ring code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub schema: String,
    pub name: Option<String>,
    pub ring: RingId,
    pub length: usize,
    pub rows: Vec<String>,
    pub provenance: Provenance,
}

impl CodeFile {
    pub fn from_code(code: &RingCode) -> CodeFile {
        CodeFile {
            schema: CODE_SCHEMA.into(),
            name: code.name.clone(),
            ring: code.ring(),
            length: code.length(),
            rows: code.generator().row_strings(),
            provenance: code.provenance().clone(),
        }
    }

    pub fn to_code(&self) -> Result<RingCode> {
        if self.schema != CODE_SCHEMA {
            return Err(Error::Invalid(format!("unsupported code schema {:?}", self.schema)));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| RingVector::parse(r, self.ring))
            .collect::<Result<Vec<_>>>()?;
        let generator = RingMatrix::from_rows(self.ring, &rows)?;
        if generator.cols() != self.length {
            return Err(Error::LengthMismatch {
                left: self.length,
                right: generator.cols(),
            });
        }
        let mut code = RingCode::with_provenance(generator, self.provenance.clone())?;
        code.name = self.name.clone();
        Ok(code)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("code file serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<CodeFile> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const C1: &str = "[code C1]\nring = F4\nconstruction = four_circulant\nrA = (1,w,w,0)\nrB = (w,W,W,w)\n";

    #[test]
    fn builds_c1() {
        let c = build_from_text(C1, None, None).unwrap();
        assert_eq!((c.generator().rows(), c.length()), (8, 16));
        assert!(c.is_self_dual());
        assert_eq!(c.name.as_deref(), Some("C1"));
    }

    #[test]
    fn builds_c64_and_extension() {
        let text = "\
[code C64]
ring = F2uF2
construction = four_circulant
rA = (u,0,0,0,u,1,u,3)
rB = (u,u,0,1,1,3,3,3)

[code T7.1]  # first extension
construction = extension
base = C64
theorem = B
X = 3u3uu3310010u3u0
c = 3
";
        let c64 = build_from_text(text, Some("C64"), None).unwrap();
        assert_eq!((c64.generator().rows(), c64.length()), (16, 32));
        let d = build_from_text(text, None, None).unwrap();
        assert_eq!((d.generator().rows(), d.length()), (17, 34));
        assert_eq!(d.ring(), RingId::F2uF2);
    }

    #[test]
    fn bad_token_reports_line_and_column() {
        let text = "[code X]\nring = F4uF4\nconstruction = four_circulant\nrA = (q1,z1)\nrB = (z1,z1)\n";
        let err = build_from_text(text, None, None).unwrap_err();
        match err {
            Error::Spec { line, column, message } => {
                assert_eq!((line, column), (4, 6));
                assert!(message.contains("q1"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors() {
        for (text, line) in [
            ("ring = F2\n", 1),
            ("[code A]\nring F2\n", 2),
            ("[code A]\nring = F9\nconstruction = matrix\nrows = 1\n", 2),
            ("[code A]\nconstruction = matrix\nrows = 1\n", 1),
            ("[code A]\nring = F2\nconstruction = spiral\n", 3),
            ("[code A]\nring = F2\ncolour = red\n", 3),
            ("[code A]\n[code A]\n", 2),
        ] {
            match parse_specs(text) {
                Err(Error::Spec { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn unresolved_and_cyclic_references() {
        let text = "[code A]\nconstruction = projection\nbase = B\n";
        assert!(matches!(build_from_text(text, None, None), Err(Error::Spec { .. })));
        let cyclic = "[code A]\nconstruction = projection\nbase = A\n";
        assert!(build_from_text(cyclic, None, None).is_err());
    }

    #[test]
    fn base_expressions() {
        let text = format!(
            "{C1}\n[code J1]\nconstruction = lift\nbase = C1\nrA = (a2,b3,b1,z4)\nrB = (b4,c4,c1,b2)\n\n\
             [code E]\nconstruction = image\nbase = J1\nmap = psi_f4u\n"
        );
        let mut lib = Library::new();
        lib.add_text(&text).unwrap();
        let via_map = lib.build("psi_f4u(J1)").unwrap();
        assert_eq!(via_map.generator(), lib.build("E").unwrap().generator());
        assert_eq!(
            lib.build("mu(J1)").unwrap().generator(),
            lib.build("C1").unwrap().generator()
        );
    }

    #[test]
    fn inline_specs() {
        let s = parse_inline("r", "construction=extension base=C64 theorem=A X=30u1 c=1").unwrap();
        assert!(matches!(
            s.construction,
            Construction::Extension {
                theorem: Theorem::A,
                ..
            }
        ));
        assert!(parse_inline("r", "construction=extension base").is_err());
    }

    #[test]
    fn provenance_round_trip() {
        let mut lib = Library::new();
        lib.add_text(&format!(
            "{C1}\n[code J1]\nconstruction = lift\nbase = C1\nrA = (a2,b3,b1,z4)\nrB = (b4,c4,c1,b2)\n"
        ))
        .unwrap();
        let j1 = lib.build("J1").unwrap();
        let psi = lib.build("psi_f4u(J1)").unwrap();
        let x = "1".repeat(31) + "0";
        let ext = psi.extend_a(
            &RingVector::parse(&x, RingId::F2uF2).unwrap(),
            crate::ring::RingElement::one(RingId::F2uF2),
        );
        let mut codes = vec![j1.clone(), psi.clone(), j1.project_mu().unwrap()];
        if let Ok(e) = ext {
            codes.push(e.named("ext"));
        }
        for code in codes {
            let text = spec_of(&code);
            let rebuilt = build_from_text(&text, None, None).unwrap();
            assert_eq!(rebuilt.generator(), code.generator(), "{text}");
        }
    }

    #[test]
    fn code_file_round_trip() {
        let c = build_from_text(C1, None, None).unwrap();
        let file = CodeFile::from_code(&c);
        let back = CodeFile::from_json(&file.to_json()).unwrap().to_code().unwrap();
        assert_eq!(back, c);
    }
}
