//! Free associative unital graded algebras over GF(2).
//!
//! A [`Polynomial`] is a finite set of [`Word`]s: over GF(2) a word is either
//! present (coefficient 1) or absent, so addition is symmetric difference and
//! `p + p = 0` holds structurally. Words store generator indices; the
//! [`FreeGradedAlgebra`] owning the generators supplies names, degrees and the
//! grading modulus.

use std::cmp::Ordering;
use std::collections::btree_set;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use thiserror::Error;

/// Default cap on the number of factors in a product computed by
/// [`FreeGradedAlgebra::mul`].
pub const DEFAULT_WORD_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("invalid generator name {0:?}")]
    InvalidName(String),
    #[error("column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("polynomial does not belong to this algebra")]
    ForeignPolynomial,
    #[error("word of length {len} exceeds the cap of {cap} factors")]
    WordTooLong { len: usize, cap: usize },
}

/// A named generator together with its degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSymbol {
    pub name: String,
    pub degree: i64,
}

impl GeneratorSymbol {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        Self {
            name: name.into(),
            degree,
        }
    }
}

/// A monomial: an ordered product of generators, identified by index.
/// The empty word is the unit.
///
/// Words are ordered degree-lexicographically: shorter words first, then
/// lexicographically by generator index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn new(factors: Vec<usize>) -> Self {
        Word(factors)
    }

    pub fn generator(index: usize) -> Self {
        Word(vec![index])
    }

    pub fn factors(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut factors = Vec::with_capacity(self.0.len() + other.0.len());
        factors.extend_from_slice(&self.0);
        factors.extend_from_slice(&other.0);
        Word(factors)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Sub-word `self[start..end]`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Leftmost position at which `pattern` occurs as a factor.
    pub fn find(&self, pattern: &Word) -> Option<usize> {
        if pattern.0.is_empty() {
            return Some(0);
        }
        if pattern.0.len() > self.0.len() {
            return None;
        }
        self.0
            .windows(pattern.0.len())
            .position(|window| window == pattern.0.as_slice())
    }

    /// Every position at which `pattern` occurs, left to right.
    pub fn occurrences<'a>(&'a self, pattern: &'a Word) -> impl Iterator<Item = usize> + 'a {
        let n = pattern.0.len();
        let windows = if n == 0 || n > self.0.len() {
            None
        } else {
            Some(self.0.windows(n))
        };
        windows
            .into_iter()
            .flatten()
            .enumerate()
            .filter(move |(_, w)| *w == pattern.0.as_slice())
            .map(|(i, _)| i)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.iter().copied().max()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<usize>> for Word {
    fn from(factors: Vec<usize>) -> Self {
        Word(factors)
    }
}

/// An element of a free algebra over GF(2).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Polynomial {
    terms: BTreeSet<Word>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::unit())
    }

    pub fn from_word(word: Word) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(word);
        Self { terms }
    }

    pub fn generator(index: usize) -> Self {
        Self::from_word(Word::generator(index))
    }

    /// Sums the words, cancelling repeated ones in pairs.
    pub fn from_words<I: IntoIterator<Item = Word>>(words: I) -> Self {
        let mut p = Self::zero();
        for w in words {
            p.toggle(w);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(Word::is_unit)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Same as [`Polynomial::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> btree_set::Iter<'_, Word> {
        self.terms.iter()
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.terms.contains(word)
    }

    /// Largest term in degree-lexicographic order.
    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.iter().next_back()
    }

    /// Adds a single word (coefficient 1).
    pub fn toggle(&mut self, word: Word) {
        if !self.terms.remove(&word) {
            self.terms.insert(word);
        }
    }

    /// Reverses every monomial. An involutive anti-automorphism.
    pub fn reverse(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(Word::reversed).collect(),
        }
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.iter().map(Word::len).max().unwrap_or(0)
    }

    /// Algebra homomorphism sending generator `i` to `images[i]`.
    ///
    /// Panics if a word mentions a generator without an image.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero();
        for word in &self.terms {
            let mut acc = Polynomial::one();
            for &g in word.factors() {
                acc = &acc * &images[g];
                if acc.is_zero() {
                    break;
                }
            }
            out += acc;
        }
        out
    }

    /// True if some term mentions generator `index`.
    pub fn mentions(&self, index: usize) -> bool {
        self.terms.iter().any(|w| w.factors().contains(&index))
    }
}

impl From<Word> for Polynomial {
    fn from(word: Word) -> Self {
        Polynomial::from_word(word)
    }
}

impl FromIterator<Word> for Polynomial {
    fn from_iter<I: IntoIterator<Item = Word>>(iter: I) -> Self {
        Polynomial::from_words(iter)
    }
}

impl AddAssign<Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        for w in rhs.terms {
            self.toggle(w);
        }
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for w in &rhs.terms {
            self.toggle(w.clone());
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;

    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += rhs;
        self
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let terms = self
            .terms
            .symmetric_difference(&rhs.terms)
            .cloned()
            .collect();
        Polynomial { terms }
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for a in &self.terms {
            for b in &rhs.terms {
                out.toggle(a.concat(b));
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

/// Result of a homogeneity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every degree.
    Zero,
    Degree(i64),
    Mixed,
}

impl Homogeneity {
    /// Whether this is compatible with being homogeneous of `degree`.
    pub fn admits(self, degree: i64) -> bool {
        match self {
            Homogeneity::Zero => true,
            Homogeneity::Degree(d) => d == degree,
            Homogeneity::Mixed => false,
        }
    }
}

impl fmt::Display for Homogeneity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Homogeneity::Zero => f.write_str("zero"),
            Homogeneity::Degree(d) => write!(f, "degree {d}"),
            Homogeneity::Mixed => f.write_str("not homogeneous"),
        }
    }
}

/// The free associative unital algebra over GF(2) on a list of graded
/// generators. Degrees are compared modulo `grading_modulus` when it is
/// positive.
#[derive(Debug, Clone)]
pub struct FreeGradedAlgebra {
    generators: Vec<GeneratorSymbol>,
    index: HashMap<String, usize>,
    grading_modulus: u32,
    word_cap: usize,
}

impl PartialEq for FreeGradedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.grading_modulus == other.grading_modulus
    }
}

impl Eq for FreeGradedAlgebra {}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl FreeGradedAlgebra {
    pub fn new(
        generators: Vec<GeneratorSymbol>,
        grading_modulus: u32,
    ) -> Result<Self, AlgebraError> {
        let mut index = HashMap::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if !is_identifier(&g.name) {
                return Err(AlgebraError::InvalidName(g.name.clone()));
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Self {
            generators,
            index,
            grading_modulus,
            word_cap: DEFAULT_WORD_CAP,
        })
    }

    /// Integer-graded algebra from `(name, degree)` pairs.
    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, i64)]) -> Result<Self, AlgebraError> {
        let gens = pairs
            .iter()
            .map(|(n, d)| GeneratorSymbol::new(n.as_ref(), *d))
            .collect();
        Self::new(gens, 0)
    }

    pub fn with_word_cap(mut self, cap: usize) -> Self {
        self.word_cap = cap;
        self
    }

    pub fn word_cap(&self) -> usize {
        self.word_cap
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn grading_modulus(&self) -> u32 {
        self.grading_modulus
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize, AlgebraError> {
        self.index_of(name)
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
    }

    pub fn name(&self, index: usize) -> &str {
        &self.generators[index].name
    }

    pub fn generator_degree(&self, index: usize) -> i64 {
        self.reduce_degree(self.generators[index].degree)
    }

    /// Reduces a degree modulo the grading modulus (identity when it is 0).
    pub fn reduce_degree(&self, degree: i64) -> i64 {
        if self.grading_modulus == 0 {
            degree
        } else {
            degree.rem_euclid(i64::from(self.grading_modulus))
        }
    }

    pub fn same_degree(&self, a: i64, b: i64) -> bool {
        self.reduce_degree(a) == self.reduce_degree(b)
    }

    /// The polynomial consisting of a single generator.
    pub fn gen(&self, name: &str) -> Result<Polynomial, AlgebraError> {
        self.require(name).map(Polynomial::generator)
    }

    /// Builds a word from generator names.
    pub fn word(&self, names: &[&str]) -> Result<Word, AlgebraError> {
        names
            .iter()
            .map(|n| self.require(n))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn owns_word(&self, word: &Word) -> bool {
        word.max_index().is_none_or(|m| m < self.generators.len())
    }

    pub fn owns(&self, p: &Polynomial) -> bool {
        p.terms().all(|w| self.owns_word(w))
    }

    fn check(&self, p: &Polynomial) -> Result<(), AlgebraError> {
        if self.owns(p) {
            Ok(())
        } else {
            Err(AlgebraError::ForeignPolynomial)
        }
    }

    pub fn degree_of(&self, word: &Word) -> Result<i64, AlgebraError> {
        let mut total = 0i64;
        for &g in word.factors() {
            let sym = self
                .generators
                .get(g)
                .ok_or(AlgebraError::ForeignPolynomial)?;
            total += sym.degree;
        }
        Ok(self.reduce_degree(total))
    }

    pub fn homogeneity(&self, p: &Polynomial) -> Result<Homogeneity, AlgebraError> {
        let mut degree = None;
        for w in p.terms() {
            let d = self.degree_of(w)?;
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => return Ok(Homogeneity::Mixed),
                Some(_) => {}
            }
        }
        Ok(degree.map_or(Homogeneity::Zero, Homogeneity::Degree))
    }

    pub fn add(&self, p: &Polynomial, q: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check(p)?;
        self.check(q)?;
        Ok(p + q)
    }

    /// Product, refusing results with words longer than the word cap.
    pub fn mul(&self, p: &Polynomial, q: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check(p)?;
        self.check(q)?;
        let len = p.max_word_len() + q.max_word_len();
        if !p.is_zero() && !q.is_zero() && len > self.word_cap {
            return Err(AlgebraError::WordTooLong {
                len,
                cap: self.word_cap,
            });
        }
        Ok(p * q)
    }

    /// The algebra with extra generators appended.
    pub fn extended(&self, extra: Vec<GeneratorSymbol>) -> Result<Self, AlgebraError> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        Ok(Self::new(gens, self.grading_modulus)?.with_word_cap(self.word_cap))
    }

    /// Parses the expression grammar: `+`-separated terms, each a
    /// whitespace-separated product of generator names, `1` or `0`.
    pub fn parse(&self, text: &str) -> Result<Polynomial, AlgebraError> {
        let mut result = Polynomial::zero();
        let mut term_start = 0usize;
        for term in text.split('+') {
            let tokens = tokens_with_columns(term, term_start);
            let column = term_start + 1;
            term_start += term.chars().count() + 1;
            if tokens.is_empty() {
                return Err(AlgebraError::Syntax {
                    column,
                    message: "empty term".to_string(),
                });
            }
            let mut factors = Vec::new();
            let mut zero = false;
            for (column, token) in tokens {
                match token {
                    "1" => {}
                    "0" => zero = true,
                    name if is_identifier(name) => factors.push(self.require(name)?),
                    other => {
                        return Err(AlgebraError::Syntax {
                            column,
                            message: format!("unexpected token {other:?}"),
                        })
                    }
                }
            }
            if !zero {
                result.toggle(Word(factors));
            }
        }
        Ok(result)
    }

    pub fn display<'a>(&'a self, p: &'a Polynomial) -> PolyDisplay<'a> {
        PolyDisplay {
            algebra: self,
            poly: p,
        }
    }

    pub fn display_word<'a>(&'a self, w: &'a Word) -> WordDisplay<'a> {
        WordDisplay {
            algebra: self,
            word: w,
        }
    }

    pub fn render(&self, p: &Polynomial) -> String {
        self.display(p).to_string()
    }
}

pub struct WordDisplay<'a> {
    algebra: &'a FreeGradedAlgebra,
    word: &'a Word,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_unit() {
            return f.write_str("1");
        }
        for (i, &g) in self.word.factors().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match self.algebra.generators.get(g) {
                Some(sym) => f.write_str(&sym.name)?,
                None => write!(f, "#{g}")?,
            }
        }
        Ok(())
    }
}

pub struct PolyDisplay<'a> {
    algebra: &'a FreeGradedAlgebra,
    poly: &'a Polynomial,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, w) in self.poly.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", self.algebra.display_word(w))?;
        }
        Ok(())
    }
}

/// Whitespace-separated tokens with their 1-based character columns.
fn tokens_with_columns(text: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    let mut column = offset;
    for (byte, ch) in text.char_indices() {
        column += 1;
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                out.push((c, &text[b..byte]));
            }
        } else if start.is_none() {
            start = Some((byte, column));
        }
    }
    if let Some((b, c)) = start {
        out.push((c, &text[b..]));
    }
    out
}
