//! Line-oriented text formats: DGA documents, projection map files and
//! rewrite rule files. `#` starts a comment.

use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{AlgebraError, FreeGradedAlgebra, GeneratorSymbol, Polynomial};
use crate::dga::{ChekanovDga, ElementaryAutomorphism, KnotMetadata};
use crate::obstruction::{ProjectionMap, RefutationPlan};
use crate::rewrite::{RewriteRule, RewriteSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
    #[error("{0}")]
    Incomplete(String),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> DocumentError {
    DocumentError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn semantic(line: usize, message: impl Into<String>) -> DocumentError {
    DocumentError::Semantic {
        line,
        message: message.into(),
    }
}

/// A non-blank line with comments stripped.
struct Line<'a> {
    number: usize,
    /// Full original line, for column computation.
    raw: &'a str,
    body: &'a str,
}

impl<'a> Line<'a> {
    /// 1-based column of `part`, which must be a sub-slice of `raw`.
    fn column_of(&self, part: &str) -> usize {
        let offset = part.as_ptr() as usize - self.raw.as_ptr() as usize;
        self.raw[..offset].chars().count() + 1
    }

    fn keyword(&self) -> (&'a str, &'a str) {
        let body = self.body;
        match body.find(char::is_whitespace) {
            Some(i) => (&body[..i], body[i..].trim_start()),
            None => (body, ""),
        }
    }

    /// Splits `rest` at `sep`, trimming both halves.
    fn split(&self, rest: &'a str, sep: &str) -> Result<(&'a str, &'a str), DocumentError> {
        match rest.find(sep) {
            Some(i) => Ok((rest[..i].trim(), rest[i + sep.len()..].trim())),
            None => Err(syntax(
                self.number,
                self.column_of(rest),
                format!("expected '{sep}'"),
            )),
        }
    }

    fn integer(&self, text: &str) -> Result<i64, DocumentError> {
        text.trim().parse().map_err(|_| {
            syntax(
                self.number,
                self.column_of(text),
                format!("expected an integer, found {:?}", text.trim()),
            )
        })
    }

    /// Parses a polynomial, translating algebra errors to document errors.
    fn polynomial(
        &self,
        algebra: &FreeGradedAlgebra,
        text: &str,
    ) -> Result<Polynomial, DocumentError> {
        algebra.parse(text).map_err(|e| self.algebra_error(e, text))
    }

    fn algebra_error(&self, e: AlgebraError, text: &str) -> DocumentError {
        match e {
            AlgebraError::Syntax { column, message } => {
                syntax(self.number, self.column_of(text) + column - 1, message)
            }
            other => semantic(self.number, other.to_string()),
        }
    }
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some(Line {
            number: i + 1,
            raw,
            body,
        })
    })
}

fn identifier<'a>(line: &Line<'a>, text: &'a str) -> Result<&'a str, DocumentError> {
    if crate::algebra::is_identifier(text) {
        Ok(text)
    } else {
        Err(syntax(
            line.number,
            line.column_of(text),
            format!("expected a generator name, found {text:?}"),
        ))
    }
}

/// `gen <name> : <degree>`
fn generator_line(line: &Line<'_>, rest: &str) -> Result<GeneratorSymbol, DocumentError> {
    let (name, degree) = line.split(rest, ":")?;
    let name = identifier(line, name)?;
    Ok(GeneratorSymbol::new(name, line.integer(degree)?))
}

fn declare(
    gens: &mut Vec<GeneratorSymbol>,
    line: &Line<'_>,
    symbol: GeneratorSymbol,
) -> Result<(), DocumentError> {
    if gens.iter().any(|g| g.name == symbol.name) {
        return Err(semantic(
            line.number,
            format!("duplicate declaration of {}", symbol.name),
        ));
    }
    gens.push(symbol);
    Ok(())
}

/// Parses a DGA document.
pub fn parse_dga(text: &str) -> Result<ChekanovDga, DocumentError> {
    let mut name = None;
    let mut smooth = None;
    let mut tb = None;
    let mut maslov = None;
    let mut gens = Vec::new();
    let mut differentials: Vec<(Line<'_>, &str, &str)> = Vec::new();

    for line in lines(text) {
        let (keyword, rest) = line.keyword();
        match keyword {
            "dga" if !rest.is_empty() => name = Some(rest.to_string()),
            "smooth" if !rest.is_empty() => smooth = Some(rest.to_string()),
            "tb" => tb = Some(line.integer(rest)?),
            "maslov" => maslov = Some(line.integer(rest)?),
            "gen" => {
                let symbol = generator_line(&line, rest)?;
                declare(&mut gens, &line, symbol)?;
            }
            "d" => {
                let (target, poly) = line.split(rest, "=")?;
                let target = identifier(&line, target)?;
                differentials.push((line, target, poly));
            }
            _ => {
                return Err(syntax(
                    line.number,
                    line.column_of(keyword),
                    format!("unexpected {keyword:?}"),
                ))
            }
        }
    }

    let modulus = maslov.map_or(0, |m: i64| (2 * m.unsigned_abs()) as u32);
    let algebra = FreeGradedAlgebra::new(gens, modulus)
        .map_err(|e| DocumentError::Incomplete(e.to_string()))?;
    let mut table: Vec<Option<Polynomial>> = vec![None; algebra.len()];
    for (line, target, poly) in &differentials {
        let index = algebra
            .index_of(target)
            .ok_or_else(|| semantic(line.number, format!("unknown generator {target}")))?;
        if table[index].is_some() {
            return Err(semantic(
                line.number,
                format!("duplicate differential for {target}"),
            ));
        }
        table[index] = Some(line.polynomial(&algebra, poly)?);
    }
    let differential = table
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            p.ok_or_else(|| {
                DocumentError::Incomplete(format!("missing differential for {}", algebra.name(i)))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let dga = ChekanovDga::new(algebra, differential)
        .map_err(|e| DocumentError::Incomplete(e.to_string()))?;
    if name.is_none() && smooth.is_none() && tb.is_none() && maslov.is_none() {
        return Ok(dga);
    }
    let metadata = KnotMetadata {
        display_name: name.unwrap_or_else(|| "unnamed".to_string()),
        smooth_type: smooth,
        thurston_bennequin: tb,
        maslov_number: maslov.unwrap_or(0),
    };
    dga.with_metadata(metadata)
        .map_err(|e| DocumentError::Incomplete(e.to_string()))
}

/// Canonical text of a DGA: header, generators in order, then one
/// differential line per generator with terms in degree-lexicographic order.
pub fn format_dga(dga: &ChekanovDga) -> String {
    let alg = dga.algebra();
    let mut out = String::new();
    match dga.metadata() {
        Some(meta) => {
            let _ = writeln!(out, "dga {}", meta.display_name);
            if let Some(s) = &meta.smooth_type {
                let _ = writeln!(out, "smooth {s}");
            }
            if let Some(tb) = meta.thurston_bennequin {
                let _ = writeln!(out, "tb {tb}");
            }
            let _ = writeln!(out, "maslov {}", meta.maslov_number);
        }
        None if alg.grading_modulus() > 0 => {
            let _ = writeln!(out, "maslov {}", alg.grading_modulus() / 2);
        }
        None => {}
    }
    for g in alg.generators() {
        let _ = writeln!(out, "gen {} : {}", g.name, g.degree);
    }
    for (i, boundary) in dga.differential().iter().enumerate() {
        let _ = writeln!(out, "d {} = {}", alg.name(i), alg.display(boundary));
    }
    out
}

/// A parsed projection map file, not yet bound to a source algebra.
///
/// ```text
/// gen al : -1
/// gen be : 1
/// subst a3 -> a3 + 1
/// map a5 -> al
/// default -> 0
/// ```
#[derive(Debug, Clone)]
pub struct MapDocument {
    target: FreeGradedAlgebra,
    substitutions: Vec<(usize, String, String)>,
    images: Vec<(usize, String, Polynomial)>,
    default_zero: bool,
}

impl MapDocument {
    pub fn target(&self) -> &FreeGradedAlgebra {
        &self.target
    }

    /// Resolves generator names against `source`.
    pub fn bind(&self, source: &FreeGradedAlgebra) -> Result<RefutationPlan, DocumentError> {
        let mut substitutions = Vec::new();
        for (line, target, shift) in &self.substitutions {
            let shift = source
                .parse(shift)
                .map_err(|e| semantic(*line, e.to_string()))?;
            let phi = ElementaryAutomorphism::new(source, target, shift)
                .map_err(|e| semantic(*line, e.to_string()))?;
            substitutions.push(phi);
        }
        let mut images: Vec<Option<Polynomial>> = vec![None; source.len()];
        for (line, name, image) in &self.images {
            let i = source
                .index_of(name)
                .ok_or_else(|| semantic(*line, format!("unknown generator {name}")))?;
            images[i] = Some(image.clone());
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| match img {
                Some(p) => Ok(p),
                None if self.default_zero => Ok(Polynomial::zero()),
                None => Err(DocumentError::Incomplete(format!(
                    "no image for {}",
                    source.name(i)
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let projection = ProjectionMap::new(source.clone(), self.target.clone(), images)
            .map_err(|e| DocumentError::Incomplete(e.to_string()))?;
        Ok(RefutationPlan {
            substitutions,
            projection,
        })
    }
}

pub fn parse_map(text: &str) -> Result<MapDocument, DocumentError> {
    let mut gens = Vec::new();
    let mut substitutions = Vec::new();
    let mut raw_images = Vec::new();
    let mut default_zero = false;
    let all: Vec<Line<'_>> = lines(text).collect();
    for line in &all {
        let (keyword, rest) = line.keyword();
        match keyword {
            "gen" => {
                let symbol = generator_line(line, rest)?;
                declare(&mut gens, line, symbol)?;
            }
            "subst" => {
                let (target, shift) = line.split(rest, "->")?;
                let target = identifier(line, target)?;
                // `a3 -> a3 + 1` is stored as the shift `1`.
                let shift = strip_target(line, target, shift)?;
                substitutions.push((line.number, target.to_string(), shift));
            }
            "map" => {
                let (source, image) = line.split(rest, "->")?;
                let source = identifier(line, source)?;
                raw_images.push((line, source, image));
            }
            "default" => {
                let (_, image) = line.split(line.body, "->")?;
                if image != "0" {
                    return Err(syntax(
                        line.number,
                        line.column_of(image),
                        "only 'default -> 0' is supported",
                    ));
                }
                default_zero = true;
            }
            _ => {
                return Err(syntax(
                    line.number,
                    line.column_of(keyword),
                    format!("unexpected {keyword:?}"),
                ))
            }
        }
    }
    let target =
        FreeGradedAlgebra::new(gens, 0).map_err(|e| DocumentError::Incomplete(e.to_string()))?;
    let images = raw_images
        .into_iter()
        .map(|(line, source, image)| {
            line.polynomial(&target, image)
                .map(|p| (line.number, source.to_string(), p))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MapDocument {
        target,
        substitutions,
        images,
        default_zero,
    })
}

/// Accepts `g -> g + u` (or just `u` prefixed by `g +`) and returns `u`.
fn strip_target(line: &Line<'_>, target: &str, replacement: &str) -> Result<String, DocumentError> {
    let mut terms: Vec<&str> = replacement.split('+').map(str::trim).collect();
    match terms.iter().position(|t| *t == target) {
        Some(i) => {
            terms.remove(i);
        }
        None => {
            return Err(syntax(
                line.number,
                line.column_of(replacement),
                format!("substitution must have the form {target} -> {target} + u"),
            ))
        }
    }
    if terms.is_empty() {
        Ok("0".to_string())
    } else {
        Ok(terms.join(" + "))
    }
}

/// Parses a rules file. Generators come from `gen` lines; without any, the
/// names used by the rules are declared in order of appearance with degree 0.
pub fn parse_rules(text: &str) -> Result<RewriteSystem, DocumentError> {
    enum Item<'a> {
        Rule(&'a str, &'a str),
        Relation(&'a str),
    }
    let mut gens = Vec::new();
    let mut items: Vec<(Line<'_>, Item<'_>)> = Vec::new();
    for line in lines(text) {
        let (keyword, rest) = line.keyword();
        match keyword {
            "gen" => {
                let symbol = generator_line(&line, rest)?;
                declare(&mut gens, &line, symbol)?;
            }
            "rule:" => {
                let (lhs, rhs) = line.split(rest, "->")?;
                items.push((line, Item::Rule(lhs, rhs)));
            }
            "rel:" => items.push((line, Item::Relation(rest))),
            _ => {
                return Err(syntax(
                    line.number,
                    line.column_of(keyword),
                    format!("unexpected {keyword:?}"),
                ))
            }
        }
    }
    if gens.is_empty() {
        for (_, item) in &items {
            let texts: Vec<&str> = match item {
                Item::Rule(l, r) => vec![l, r],
                Item::Relation(r) => vec![r],
            };
            for token in texts
                .iter()
                .flat_map(|t| t.split(|c: char| c == '+' || c.is_whitespace()))
            {
                if crate::algebra::is_identifier(token)
                    && !gens.iter().any(|g: &GeneratorSymbol| g.name == token)
                {
                    gens.push(GeneratorSymbol::new(token, 0));
                }
            }
        }
    }
    let algebra =
        FreeGradedAlgebra::new(gens, 0).map_err(|e| DocumentError::Incomplete(e.to_string()))?;
    let mut rules = Vec::new();
    for (line, item) in &items {
        let rule = match item {
            Item::Rule(lhs, rhs) => {
                let lhs_poly = line.polynomial(&algebra, lhs)?;
                let lhs_word = match lhs_poly.terms().next() {
                    Some(w) if lhs_poly.len() == 1 => w.clone(),
                    _ => {
                        return Err(syntax(
                            line.number,
                            line.column_of(lhs),
                            "rule left-hand side must be a single word",
                        ))
                    }
                };
                let rhs = line.polynomial(&algebra, rhs)?;
                RewriteRule::new(&algebra, lhs_word, rhs)
            }
            Item::Relation(rel) => RewriteRule::orient(&algebra, &line.polynomial(&algebra, rel)?),
        };
        rules.push(rule.map_err(|e| semantic(line.number, e.to_string()))?);
    }
    RewriteSystem::new(algebra, rules).map_err(|e| DocumentError::Incomplete(e.to_string()))
}
