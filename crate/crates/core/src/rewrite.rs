//! Quotients of free algebras by two-sided ideals via oriented word rewriting.
//!
//! A rule `w -> r` replaces an occurrence of the word `w` inside a monomial by
//! the polynomial `r`. For a terminating, confluent system the irreducible
//! words form a basis of the quotient algebra and [`RewriteSystem::normal_form`]
//! decides ideal membership: `p` lies in the ideal iff its normal form is 0.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::algebra::{AlgebraError, FreeGradedAlgebra, Homogeneity, Polynomial, Word};
use crate::dga::ChekanovDga;
use crate::obstruction::{ObstructionError, ProjectionMap};

pub const DEFAULT_MAX_STEPS: usize = 10_000;

/// Maximum number of words examined by the brute-force part of
/// [`RewriteSystem::check_local_confluence`].
pub const DEFAULT_WORD_BUDGET: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("rule left-hand side must be a non-empty word")]
    EmptyLhs,
    #[error("rule {lhs} -> {rhs}: sides have different degrees")]
    DegreeMismatch { lhs: String, rhs: String },
    #[error("duplicate rule left-hand side {0}")]
    DuplicateLhs(String),
    #[error("the zero relation cannot be oriented")]
    ZeroRelation,
    #[error("relation {0} has the unit as leading word; the quotient is trivial")]
    UnitRelation(String),
    #[error("step budget of {0} exceeded (possible non-termination)")]
    StepBudgetExceeded(usize),
    #[error("word budget of {0} exceeded")]
    WordBudgetExceeded(usize),
}

/// `lhs -> rhs`, with `lhs` a non-empty word and both sides of equal degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    lhs: Word,
    rhs: Polynomial,
}

impl RewriteRule {
    pub fn new(
        algebra: &FreeGradedAlgebra,
        lhs: Word,
        rhs: Polynomial,
    ) -> Result<Self, RewriteError> {
        if lhs.is_unit() {
            return Err(RewriteError::EmptyLhs);
        }
        if !algebra.owns_word(&lhs) || !algebra.owns(&rhs) {
            return Err(AlgebraError::ForeignPolynomial.into());
        }
        let degree = algebra.degree_of(&lhs)?;
        match algebra.homogeneity(&rhs)? {
            Homogeneity::Zero => {}
            Homogeneity::Degree(d) if d == degree => {}
            _ => {
                return Err(RewriteError::DegreeMismatch {
                    lhs: algebra.display_word(&lhs).to_string(),
                    rhs: algebra.render(&rhs),
                })
            }
        }
        Ok(Self { lhs, rhs })
    }

    /// Orients the relation `r = 0` as `w -> r + w`, where `w` is the
    /// leading word: the longest term, ties broken degree-lexicographically.
    pub fn orient(
        algebra: &FreeGradedAlgebra,
        relation: &Polynomial,
    ) -> Result<Self, RewriteError> {
        let lead = relation
            .leading_word()
            .ok_or(RewriteError::ZeroRelation)?
            .clone();
        if lead.is_unit() {
            return Err(RewriteError::UnitRelation(algebra.render(relation)));
        }
        let mut rhs = relation.clone();
        rhs.toggle(lead.clone());
        Self::new(algebra, lead, rhs)
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &Polynomial {
        &self.rhs
    }

    /// Replaces the occurrence of the lhs at `pos` in `word`.
    fn apply_at(&self, word: &Word, pos: usize) -> Polynomial {
        let left = word.slice(0, pos);
        let right = word.slice(pos + self.lhs.len(), word.len());
        self.rhs
            .terms()
            .map(|m| left.concat(m).concat(&right))
            .collect()
    }

    pub fn render(&self, algebra: &FreeGradedAlgebra) -> String {
        format!(
            "{} -> {}",
            algebra.display_word(&self.lhs),
            algebra.display(&self.rhs)
        )
    }
}

/// An ordered list of rules over a fixed algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteSystem {
    algebra: FreeGradedAlgebra,
    rules: Vec<RewriteRule>,
    max_steps: usize,
}

/// Overlap of two rule left-hand sides and the two one-step reducts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub first_rule: usize,
    pub second_rule: usize,
    pub overlap: Word,
    pub left: Polynomial,
    pub right: Polynomial,
    pub joinable: bool,
}

/// A word whose reductions reach more than one normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub word: Word,
    pub normal_forms: Vec<Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub critical_pairs: Vec<CriticalPair>,
    pub max_word_len: usize,
    pub words_checked: usize,
    pub divergences: Vec<Divergence>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.divergences.is_empty() && self.critical_pairs.iter().all(|c| c.joinable)
    }
}

impl RewriteSystem {
    pub fn new(algebra: FreeGradedAlgebra, rules: Vec<RewriteRule>) -> Result<Self, RewriteError> {
        let mut seen = BTreeSet::new();
        for rule in &rules {
            if !algebra.owns_word(&rule.lhs) || !algebra.owns(&rule.rhs) {
                return Err(AlgebraError::ForeignPolynomial.into());
            }
            if !seen.insert(rule.lhs.clone()) {
                return Err(RewriteError::DuplicateLhs(
                    algebra.display_word(&rule.lhs).to_string(),
                ));
            }
        }
        Ok(Self {
            algebra,
            rules,
            max_steps: DEFAULT_MAX_STEPS,
        })
    }

    /// Orients every relation and builds the system. Relations with equal
    /// leading words are rejected as duplicates.
    pub fn from_relations(
        algebra: FreeGradedAlgebra,
        relations: &[Polynomial],
    ) -> Result<Self, RewriteError> {
        let rules = relations
            .iter()
            .map(|r| RewriteRule::orient(&algebra, r))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(algebra, rules)
    }

    pub fn with_max_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn algebra(&self) -> &FreeGradedAlgebra {
        &self.algebra
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn max_steps(&self) -> usize {
        self.max_steps
    }

    pub fn is_irreducible_word(&self, word: &Word) -> bool {
        self.rules.iter().all(|r| word.find(&r.lhs).is_none())
    }

    /// One rewriting step: the first rule with an occurrence anywhere in `p`,
    /// at its leftmost position, earliest term first among ties.
    pub fn reduce_once(&self, p: &Polynomial) -> Option<Polynomial> {
        for rule in &self.rules {
            let mut best: Option<(usize, &Word)> = None;
            for word in p.terms() {
                if let Some(pos) = word.find(&rule.lhs) {
                    if best.is_none_or(|(b, _)| pos < b) {
                        best = Some((pos, word));
                    }
                }
            }
            if let Some((pos, word)) = best {
                let mut next = p.clone();
                next.toggle(word.clone());
                next += rule.apply_at(word, pos);
                return Some(next);
            }
        }
        None
    }

    /// Iterates [`Self::reduce_once`] to a fixed point.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, RewriteError> {
        let mut current = p.clone();
        for _ in 0..self.max_steps {
            match self.reduce_once(&current) {
                Some(next) => current = next,
                None => return Ok(current),
            }
        }
        if self.reduce_once(&current).is_none() {
            Ok(current)
        } else {
            Err(RewriteError::StepBudgetExceeded(self.max_steps))
        }
    }

    /// Every single-step reduct of `p`: any rule, any term, any position.
    pub fn one_step_reducts(&self, p: &Polynomial) -> Vec<Polynomial> {
        let mut out = Vec::new();
        for rule in &self.rules {
            for word in p.terms() {
                for pos in word.occurrences(&rule.lhs) {
                    let mut next = p.clone();
                    next.toggle(word.clone());
                    next += rule.apply_at(word, pos);
                    out.push(next);
                }
            }
        }
        out
    }

    /// All irreducible polynomials reachable from `p` under every possible
    /// reduction order. At most `max_steps` distinct states are visited.
    pub fn all_normal_forms(&self, p: &Polynomial) -> Result<BTreeSet<Polynomial>, RewriteError> {
        let mut forms = BTreeSet::new();
        let mut visited: HashMap<Polynomial, ()> = HashMap::new();
        let mut stack = vec![p.clone()];
        while let Some(state) = stack.pop() {
            if visited.insert(state.clone(), ()).is_some() {
                continue;
            }
            if visited.len() > self.max_steps {
                return Err(RewriteError::StepBudgetExceeded(self.max_steps));
            }
            let next = self.one_step_reducts(&state);
            if next.is_empty() {
                forms.insert(state);
            } else {
                stack.extend(next);
            }
        }
        Ok(forms)
    }

    /// Overlaps between rule left-hand sides: proper suffix/prefix overlaps
    /// and inclusions of one lhs inside another.
    pub fn critical_pairs(&self) -> Result<Vec<CriticalPair>, RewriteError> {
        let mut pairs = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                let (l1, l2) = (r1.lhs.factors(), r2.lhs.factors());
                // r2 strictly inside r1 (or at a different position if equal length).
                if i != j {
                    for pos in r1.lhs.occurrences(&r2.lhs) {
                        let overlap = r1.lhs.clone();
                        let left = r1.rhs.clone();
                        let right = r2.apply_at(&overlap, pos);
                        pairs.push(self.critical_pair(i, j, overlap, left, right)?);
                    }
                }
                // Proper suffix of l1 equal to a proper prefix of l2.
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] != l2[..k] {
                        continue;
                    }
                    let overlap = r1.lhs.concat(&Word::new(l2[k..].to_vec()));
                    let left = r1.apply_at(&overlap, 0);
                    let right = r2.apply_at(&overlap, l1.len() - k);
                    pairs.push(self.critical_pair(i, j, overlap, left, right)?);
                }
            }
        }
        Ok(pairs)
    }

    fn critical_pair(
        &self,
        first_rule: usize,
        second_rule: usize,
        overlap: Word,
        left: Polynomial,
        right: Polynomial,
    ) -> Result<CriticalPair, RewriteError> {
        let joinable = self.normal_form(&left)? == self.normal_form(&right)?;
        Ok(CriticalPair {
            first_rule,
            second_rule,
            overlap,
            left,
            right,
            joinable,
        })
    }

    /// Checks every critical pair for joinability, then brute-forces
    /// uniqueness of normal forms over all words of length at most
    /// `max_word_len`, exploring every reduction order.
    pub fn check_local_confluence(
        &self,
        max_word_len: usize,
    ) -> Result<ConfluenceReport, RewriteError> {
        self.check_local_confluence_with_budget(max_word_len, DEFAULT_WORD_BUDGET)
    }

    pub fn check_local_confluence_with_budget(
        &self,
        max_word_len: usize,
        word_budget: usize,
    ) -> Result<ConfluenceReport, RewriteError> {
        let critical_pairs = self.critical_pairs()?;
        let mut divergences = Vec::new();
        let mut words_checked = 0;
        if !self.rules.is_empty() {
            for word in words_up_to(self.algebra.len(), max_word_len, word_budget)? {
                words_checked += 1;
                let forms = self.all_normal_forms(&Polynomial::from_word(word.clone()))?;
                if forms.len() > 1 {
                    divergences.push(Divergence {
                        word,
                        normal_forms: forms.into_iter().collect(),
                    });
                }
            }
        }
        Ok(ConfluenceReport {
            critical_pairs,
            max_word_len,
            words_checked,
            divergences,
        })
    }
}

/// All words over `generators` letters of length `0..=max_len`, in
/// degree-lexicographic order.
pub fn words_up_to(
    generators: usize,
    max_len: usize,
    budget: usize,
) -> Result<Vec<Word>, RewriteError> {
    let mut out = vec![Word::unit()];
    let mut layer = vec![Word::unit()];
    for _ in 0..max_len {
        if generators == 0 {
            break;
        }
        let mut next = Vec::with_capacity(layer.len() * generators);
        for w in &layer {
            for g in 0..generators {
                next.push(w.concat(&Word::generator(g)));
            }
        }
        if out.len() + next.len() > budget {
            return Err(RewriteError::WordBudgetExceeded(budget));
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    Ok(out)
}

/// The distinct nonzero images `pi(d g)` over all generators `g`, in
/// generator order.
pub fn ideal_images(
    pi: &ProjectionMap,
    dga: &ChekanovDga,
) -> Result<Vec<Polynomial>, ObstructionError> {
    if pi.source() != dga.algebra() {
        return Err(ObstructionError::SourceMismatch);
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for boundary in dga.differential() {
        let image = pi.project(boundary);
        if !image.is_zero() && seen.insert(image.clone()) {
            out.push(image);
        }
    }
    Ok(out)
}
