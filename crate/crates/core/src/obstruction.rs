//! Unit-product obstructions: whether `1` lies in `H_p * H_q` for the homology
//! of a Chekanov DGA.
//!
//! Membership is certified by a [`Witness`] `(x, y, z)` with `dx = dy = 0` and
//! `1 + xy = dz`. Non-membership is certified by pushing everything through a
//! grading-preserving [`ProjectionMap`] into a small free algebra, where the
//! image of the boundary ideal is presented by a confluent rewrite system and
//! products can be compared with `1` in normal form.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::algebra::{AlgebraError, FreeGradedAlgebra, Homogeneity, Polynomial, Word};
use crate::dga::{ChekanovDga, DgaError, ElementaryAutomorphism};
use crate::rewrite::{ideal_images, words_up_to, ConfluenceReport, RewriteError, RewriteSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("image of {generator} must be homogeneous of degree {expected}, found {found}")]
    NotGradingPreserving {
        generator: String,
        expected: i64,
        found: Homogeneity,
    },
    #[error("expected {expected} generator images, got {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("projection source does not match the DGA's algebra")]
    SourceMismatch,
    #[error("rewrite system presenting the quotient is not confluent; refutation not attempted")]
    NonConfluent,
    #[error("search space exceeds the budget of {0}")]
    BudgetExceeded(u64),
    #[error("maximum length must be at least 1")]
    InvalidMaxLen,
}

/// A grading-preserving algebra map between free graded algebras, given by
/// the images of the source generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionMap {
    source: FreeGradedAlgebra,
    target: FreeGradedAlgebra,
    images: Vec<Polynomial>,
}

impl ProjectionMap {
    pub fn new(
        source: FreeGradedAlgebra,
        target: FreeGradedAlgebra,
        images: Vec<Polynomial>,
    ) -> Result<Self, ObstructionError> {
        if images.len() != source.len() {
            return Err(ObstructionError::ImageCount {
                expected: source.len(),
                found: images.len(),
            });
        }
        for (i, image) in images.iter().enumerate() {
            if !target.owns(image) {
                return Err(AlgebraError::ForeignPolynomial.into());
            }
            let expected = target.reduce_degree(source.generators()[i].degree);
            let found = target.homogeneity(image)?;
            if !found.admits(expected) {
                return Err(ObstructionError::NotGradingPreserving {
                    generator: source.name(i).to_string(),
                    expected,
                    found,
                });
            }
        }
        Ok(Self {
            source,
            target,
            images,
        })
    }

    /// Named images; every generator not listed maps to 0.
    pub fn from_assignments(
        source: FreeGradedAlgebra,
        target: FreeGradedAlgebra,
        assignments: &[(&str, Polynomial)],
    ) -> Result<Self, ObstructionError> {
        let mut images = vec![Polynomial::zero(); source.len()];
        for (name, image) in assignments {
            images[source.require(name)?] = image.clone();
        }
        Self::new(source, target, images)
    }

    pub fn source(&self) -> &FreeGradedAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FreeGradedAlgebra {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn project(&self, p: &Polynomial) -> Polynomial {
        p.substitute(&self.images)
    }

    /// `source -> image` lines for nonzero images, then a default line.
    pub fn table(&self) -> Vec<String> {
        let mut lines: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .filter(|(_, img)| !img.is_zero())
            .map(|(i, img)| format!("{} -> {}", self.source.name(i), self.target.render(img)))
            .collect();
        if self.images.iter().any(Polynomial::is_zero) {
            lines.push("default -> 0".to_string());
        }
        lines
    }
}

/// Changes of generators followed by a projection: the data needed to run a
/// refutation against a DGA.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefutationPlan {
    pub substitutions: Vec<ElementaryAutomorphism>,
    pub projection: ProjectionMap,
}

impl RefutationPlan {
    /// Applies the substitutions to `dga`.
    pub fn prepare(&self, dga: &ChekanovDga) -> Result<ChekanovDga, ObstructionError> {
        if self.projection.source() != dga.algebra() {
            return Err(ObstructionError::SourceMismatch);
        }
        Ok(dga.apply_automorphisms(&self.substitutions)?)
    }

    pub fn substitution_lines(&self) -> Vec<String> {
        let alg = self.projection.source();
        self.substitutions
            .iter()
            .map(|phi| {
                let name = alg.name(phi.target());
                format!("{name} -> {name} + {}", alg.render(phi.shift()))
            })
            .collect()
    }
}

/// Data certifying `1 in H_p * H_q`: cycles `x`, `y` and `z` with
/// `1 + xy = dz`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub x: Polynomial,
    pub y: Polynomial,
    pub z: Polynomial,
    pub p: i64,
    pub q: i64,
}

impl Witness {
    /// The corresponding witness for the mirror: `(rev y, rev x, rev z, q, p)`.
    pub fn reversed(&self) -> Witness {
        Witness {
            x: self.y.reverse(),
            y: self.x.reverse(),
            z: self.z.reverse(),
            p: self.q,
            q: self.p,
        }
    }

    pub fn render(&self, algebra: &FreeGradedAlgebra) -> String {
        format!(
            "x = {}\ny = {}\nz = {}",
            algebra.display(&self.x),
            algebra.display(&self.y),
            algebra.display(&self.z)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessPart {
    X,
    Y,
    Z,
}

impl fmt::Display for WitnessPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessPart::X => "x",
            WitnessPart::Y => "y",
            WitnessPart::Z => "z",
        })
    }
}

/// First failed witness condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessFailure {
    DegreeSum {
        p: i64,
        q: i64,
    },
    ForeignPolynomial(WitnessPart),
    Degree {
        part: WitnessPart,
        expected: i64,
        found: Homogeneity,
    },
    NotCycle(WitnessPart),
    BoundaryMismatch {
        expected: String,
        found: String,
    },
}

impl fmt::Display for WitnessFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessFailure::DegreeSum { p, q } => {
                write!(f, "degrees {p} + {q} do not sum to 0, so xy cannot equal 1")
            }
            WitnessFailure::ForeignPolynomial(part) => {
                write!(f, "{part} is not an element of the algebra")
            }
            WitnessFailure::Degree {
                part,
                expected,
                found,
            } => write!(
                f,
                "{part} must be homogeneous of degree {expected}, found {found}"
            ),
            WitnessFailure::NotCycle(part) => write!(f, "d{part} is not 0"),
            WitnessFailure::BoundaryMismatch { expected, found } => {
                write!(f, "1 + x y = {expected} but d z = {found}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCheck {
    pub failure: Option<WitnessFailure>,
}

impl WitnessCheck {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for WitnessCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => f.write_str("valid: 1 + x y = d z with x, y cycles"),
            Some(failure) => write!(f, "invalid: {failure}"),
        }
    }
}

/// Checks every witness condition by exact computation.
pub fn verify_witness(dga: &ChekanovDga, w: &Witness) -> WitnessCheck {
    let fail = |failure| WitnessCheck {
        failure: Some(failure),
    };
    let alg = dga.algebra();
    if !alg.same_degree(w.p + w.q, 0) {
        return fail(WitnessFailure::DegreeSum { p: w.p, q: w.q });
    }
    let parts = [
        (WitnessPart::X, &w.x, w.p),
        (WitnessPart::Y, &w.y, w.q),
        (WitnessPart::Z, &w.z, w.p + w.q + 1),
    ];
    for (part, poly, degree) in parts {
        let Ok(found) = alg.homogeneity(poly) else {
            return fail(WitnessFailure::ForeignPolynomial(part));
        };
        let expected = alg.reduce_degree(degree);
        if !found.admits(expected) {
            return fail(WitnessFailure::Degree {
                part,
                expected,
                found,
            });
        }
    }
    for (part, poly) in [(WitnessPart::X, &w.x), (WitnessPart::Y, &w.y)] {
        match dga.apply_differential(poly) {
            Ok(b) if b.is_zero() => {}
            _ => return fail(WitnessFailure::NotCycle(part)),
        }
    }
    let expected = Polynomial::one() + &w.x * &w.y;
    let found = dga
        .apply_differential(&w.z)
        .expect("z checked against algebra");
    if expected != found {
        return fail(WitnessFailure::BoundaryMismatch {
            expected: alg.render(&expected),
            found: alg.render(&found),
        });
    }
    WitnessCheck { failure: None }
}

/// Bounds for [`search_witness_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of words in each cycle `x`, `y`.
    pub max_terms: usize,
    /// Maximum number of generators summed in `z`.
    pub max_z_generators: usize,
    /// Cap on enumerated words, combinations and pairs, per length level.
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            max_terms: 2,
            max_z_generators: 2,
            budget: 5_000_000,
        }
    }
}

/// Sums of at most `max_size` items, by size then lexicographically.
/// `visit` returns `true` to keep the sum.
fn combinations<T: Clone>(
    items: &[T],
    max_size: usize,
    counter: &mut u64,
    budget: u64,
    visit: &mut dyn FnMut(&[usize]) -> bool,
    out: &mut Vec<Vec<usize>>,
) -> Result<(), ObstructionError> {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        n: usize,
        size: usize,
        start: usize,
        current: &mut Vec<usize>,
        counter: &mut u64,
        budget: u64,
        visit: &mut dyn FnMut(&[usize]) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<(), ObstructionError> {
        if current.len() == size {
            *counter += 1;
            if *counter > budget {
                return Err(ObstructionError::BudgetExceeded(budget));
            }
            if visit(current) {
                out.push(current.clone());
            }
            return Ok(());
        }
        for i in start..n {
            current.push(i);
            rec(n, size, i + 1, current, counter, budget, visit, out)?;
            current.pop();
        }
        Ok(())
    }
    for size in 1..=max_size.min(items.len()) {
        rec(
            items.len(),
            size,
            0,
            &mut Vec::new(),
            counter,
            budget,
            visit,
            out,
        )?;
    }
    Ok(())
}

/// Nonempty words of length `1..=max_len` with the given degree.
fn homogeneous_words(
    alg: &FreeGradedAlgebra,
    degree: i64,
    max_len: usize,
    budget: u64,
) -> Result<Vec<Word>, ObstructionError> {
    let budget_words = usize::try_from(budget).unwrap_or(usize::MAX);
    let words = words_up_to(alg.len(), max_len, budget_words)
        .map_err(|_| ObstructionError::BudgetExceeded(budget))?;
    let target = alg.reduce_degree(degree);
    Ok(words
        .into_iter()
        .filter(|w| !w.is_unit() && alg.degree_of(w).ok() == Some(target))
        .collect())
}

/// Homogeneous cycles of degree `degree` with at most `max_terms` words.
fn cycle_candidates(
    dga: &ChekanovDga,
    degree: i64,
    max_len: usize,
    options: &SearchOptions,
) -> Result<Vec<Polynomial>, ObstructionError> {
    let words = homogeneous_words(dga.algebra(), degree, max_len, options.budget)?;
    let boundaries: Vec<Polynomial> = words
        .iter()
        .map(|w| dga.apply_differential(&Polynomial::from_word(w.clone())))
        .collect::<Result<_, _>>()?;
    let mut counter = 0;
    let mut picks = Vec::new();
    combinations(
        &words,
        options.max_terms,
        &mut counter,
        options.budget,
        &mut |idx| {
            let mut sum = Polynomial::zero();
            for &i in idx {
                sum += &boundaries[i];
            }
            sum.is_zero()
        },
        &mut picks,
    )?;
    Ok(picks
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| words[i].clone()).collect())
        .collect())
}

pub fn search_witness(
    dga: &ChekanovDga,
    p: i64,
    q: i64,
    max_len: usize,
) -> Result<Option<Witness>, ObstructionError> {
    search_witness_with(dga, p, q, max_len, &SearchOptions::default())
}

/// Bounded search for a unit-product witness. Word lengths are deepened
/// from 1 to `max_len`, so the shortest witnesses are found first and the
/// budget only matters when nothing short exists.
pub fn search_witness_with(
    dga: &ChekanovDga,
    p: i64,
    q: i64,
    max_len: usize,
    options: &SearchOptions,
) -> Result<Option<Witness>, ObstructionError> {
    if max_len == 0 {
        return Err(ObstructionError::InvalidMaxLen);
    }
    let alg = dga.algebra();
    if alg.is_empty() || !alg.same_degree(p + q, 0) {
        return Ok(None);
    }

    // z candidates: sums of at most max_z_generators generators of degree p + q + 1.
    let z_degree = alg.reduce_degree(p + q + 1);
    let z_gens: Vec<usize> = (0..alg.len())
        .filter(|&i| alg.generator_degree(i) == z_degree)
        .collect();
    let mut z_table: Vec<(Polynomial, Polynomial)> = vec![(Polynomial::zero(), Polynomial::zero())];
    let mut counter = 0;
    let mut z_picks = Vec::new();
    combinations(
        &z_gens,
        options.max_z_generators,
        &mut counter,
        options.budget,
        &mut |_| true,
        &mut z_picks,
    )?;
    for idx in z_picks {
        let z: Polynomial = idx.iter().map(|&i| Word::generator(z_gens[i])).collect();
        let dz = dga.apply_differential(&z)?;
        z_table.push((dz, z));
    }

    for len in 1..=max_len {
        let xs = cycle_candidates(dga, p, len, options)?;
        let ys = cycle_candidates(dga, q, len, options)?;
        let pairs = xs.len() as u64 * ys.len() as u64;
        if pairs > options.budget {
            return Err(ObstructionError::BudgetExceeded(options.budget));
        }
        for x in &xs {
            for y in &ys {
                let target = Polynomial::one() + x * y;
                if let Some((_, z)) = z_table.iter().find(|(dz, _)| *dz == target) {
                    let witness = Witness {
                        x: x.clone(),
                        y: y.clone(),
                        z: z.clone(),
                        p,
                        q,
                    };
                    debug_assert!(verify_witness(dga, &witness).is_valid());
                    return Ok(Some(witness));
                }
            }
        }
    }
    Ok(None)
}

/// Bounds for [`refute_unit_product_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RefutationOptions {
    /// Cap on the number of `(x', y')` pairs checked.
    pub pair_budget: u64,
    /// Cap on the number of words in the bounded confluence check.
    pub word_budget: usize,
}

impl Default for RefutationOptions {
    fn default() -> Self {
        Self {
            pair_budget: 1 << 22,
            word_budget: crate::rewrite::DEFAULT_WORD_BUDGET,
        }
    }
}

/// Which factor forces every product monomial away from `1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructuralSide {
    /// Every normal-form monomial of `x'` starts with the given generator,
    /// and leading letters survive multiplication on the right.
    Left,
    /// Every normal-form monomial of `y'` ends with the given generator.
    Right,
    /// There are no nonzero normal forms in the required degree.
    Empty,
}

/// The all-lengths argument available for a quotient `A<s, t> / (1 + s t)`:
/// normal forms are `t^i s^j`, and in a product the `t`-prefix of the left
/// factor and the `s`-suffix of the right factor are never cancelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralArgument {
    pub side: StructuralSide,
    pub explanation: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefutationOutcome {
    /// No product equals 1, and this holds for all lengths.
    Structural(StructuralArgument),
    /// No product of the enumerated elements equals 1.
    Bounded,
    /// The quotient does not obstruct the claim.
    Inconclusive(String),
}

/// Certificate produced by [`refute_unit_product`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefutationReport {
    pub p: i64,
    pub q: i64,
    pub max_len: usize,
    pub target: FreeGradedAlgebra,
    pub projection_table: Vec<String>,
    pub relations: Vec<Polynomial>,
    pub system: Option<RewriteSystem>,
    pub confluence: Option<ConfluenceReport>,
    pub left_basis: Vec<Word>,
    pub right_basis: Vec<Word>,
    pub pairs_checked: u64,
    pub outcome: RefutationOutcome,
}

impl RefutationReport {
    pub fn is_refuted(&self) -> bool {
        !matches!(self.outcome, RefutationOutcome::Inconclusive(_))
    }

    pub fn render(&self) -> String {
        let alg = &self.target;
        let words = |ws: &[Word]| {
            if ws.is_empty() {
                "(none)".to_string()
            } else {
                ws.iter()
                    .map(|w| alg.display_word(w).to_string())
                    .collect::<Vec<_>>()
                    .join(" | ")
            }
        };
        let mut out = String::new();
        let _ = writeln!(out, "projection:");
        for line in &self.projection_table {
            let _ = writeln!(out, "  {line}");
        }
        let _ = writeln!(out, "ideal generators:");
        for r in &self.relations {
            let _ = writeln!(out, "  {}", alg.display(r));
        }
        if let Some(system) = &self.system {
            let _ = writeln!(out, "rewrite rules:");
            for rule in system.rules() {
                let _ = writeln!(out, "  {}", rule.render(alg));
            }
        }
        if let Some(c) = &self.confluence {
            let _ = writeln!(
                out,
                "confluence: {} critical pairs, all joinable: {}; unique normal forms for {} words of length <= {}: {}",
                c.critical_pairs.len(),
                c.critical_pairs.iter().all(|p| p.joinable),
                c.words_checked,
                c.max_word_len,
                c.divergences.is_empty()
            );
        }
        let _ = writeln!(
            out,
            "degree {} normal-form monomials (length <= {}): {}",
            self.p,
            self.max_len,
            words(&self.left_basis)
        );
        let _ = writeln!(
            out,
            "degree {} normal-form monomials (length <= {}): {}",
            self.q,
            self.max_len,
            words(&self.right_basis)
        );
        let _ = writeln!(out, "pairs checked: {}", self.pairs_checked);
        match &self.outcome {
            RefutationOutcome::Structural(arg) => {
                let _ = writeln!(out, "structural argument: {}", arg.explanation);
                let _ = write!(out, "outcome: structural refutation (all lengths)");
            }
            RefutationOutcome::Bounded => {
                let _ = write!(
                    out,
                    "outcome: bounded refutation (no product equals 1 up to length {})",
                    self.max_len
                );
            }
            RefutationOutcome::Inconclusive(reason) => {
                let _ = write!(out, "outcome: inconclusive ({reason})");
            }
        }
        out
    }
}

fn power(alg: &FreeGradedAlgebra, g: usize, exp: &str) -> String {
    format!("{}^{}", alg.name(g), exp)
}

/// Detects the `1 + s t` situation and decides whether the grading alone
/// rules out `x' y' = 1` in degrees `(p, q)`.
fn structural_argument(
    system: &RewriteSystem,
    p: i64,
    q: i64,
) -> Option<(StructuralArgument, Option<usize>)> {
    let alg = system.algebra();
    if alg.len() != 2 || alg.grading_modulus() != 0 || system.rules().len() != 1 {
        return None;
    }
    let rule = &system.rules()[0];
    let lhs = rule.lhs().factors();
    if lhs.len() != 2 || lhs[0] == lhs[1] || !rule.rhs().is_one() {
        return None;
    }
    let (s, t) = (lhs[0], lhs[1]);
    let (ds, dt) = (alg.generator_degree(s), alg.generator_degree(t));
    if dt == 0 || ds + dt != 0 {
        return None;
    }
    // Normal forms t^i s^j have degree (i - j) * dt.
    let nf = format!("{} {}", power(alg, t, "i"), power(alg, s, "j"));
    for (degree, side) in [(p, StructuralSide::Left), (q, StructuralSide::Right)] {
        if degree % dt != 0 {
            let explanation = format!(
                "normal forms are {nf} of degree (i - j)*{dt}; none has degree {degree}, so the {} factor is 0",
                if side == StructuralSide::Left { "left" } else { "right" }
            );
            return Some((
                StructuralArgument {
                    side: StructuralSide::Empty,
                    explanation,
                },
                None,
            ));
        }
        let k = degree / dt;
        match side {
            StructuralSide::Left if k >= 1 => {
                let explanation = format!(
                    "every degree {degree} normal form is {} {} with i >= {k}, so every monomial of a product x'y' starts with {} and none equals 1",
                    power(alg, t, "i"),
                    power(alg, s, &format!("(i-{k})")),
                    alg.name(t)
                );
                return Some((StructuralArgument { side, explanation }, Some(t)));
            }
            StructuralSide::Right if k <= -1 => {
                let explanation = format!(
                    "every degree {degree} normal form is {} {} with j >= {}, so every monomial of a product x'y' ends with {} and none equals 1",
                    power(alg, t, &format!("(j-{})", -k)),
                    power(alg, s, "j"),
                    -k,
                    alg.name(s)
                );
                return Some((StructuralArgument { side, explanation }, Some(s)));
            }
            _ => {}
        }
    }
    None
}

pub fn refute_unit_product(
    dga: &ChekanovDga,
    p: i64,
    q: i64,
    pi: &ProjectionMap,
    max_len: usize,
) -> Result<RefutationReport, ObstructionError> {
    refute_unit_product_with(dga, p, q, pi, max_len, &RefutationOptions::default())
}

/// Tries to show that `1 + x'y'` never lies in the ideal generated by the
/// projected boundaries, for homogeneous `x'`, `y'` of degrees `p`, `q`.
pub fn refute_unit_product_with(
    dga: &ChekanovDga,
    p: i64,
    q: i64,
    pi: &ProjectionMap,
    max_len: usize,
    options: &RefutationOptions,
) -> Result<RefutationReport, ObstructionError> {
    if max_len == 0 {
        return Err(ObstructionError::InvalidMaxLen);
    }
    let target = pi.target().clone();
    let relations = ideal_images(pi, dga)?;
    let mut report = RefutationReport {
        p,
        q,
        max_len,
        target: target.clone(),
        projection_table: pi.table(),
        relations: relations.clone(),
        system: None,
        confluence: None,
        left_basis: Vec::new(),
        right_basis: Vec::new(),
        pairs_checked: 0,
        outcome: RefutationOutcome::Bounded,
    };

    let system = match RewriteSystem::from_relations(target.clone(), &relations) {
        Ok(s) => s,
        Err(RewriteError::UnitRelation(r)) => {
            report.outcome = RefutationOutcome::Inconclusive(format!(
                "{r} puts 1 in the ideal; the quotient is trivial"
            ));
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    };
    let confluence = system.check_local_confluence_with_budget(max_len, options.word_budget)?;
    if !confluence.is_confluent() {
        return Err(ObstructionError::NonConfluent);
    }
    report.confluence = Some(confluence);

    if !target.same_degree(p + q, 0) {
        report.system = Some(system);
        report.outcome = RefutationOutcome::Structural(StructuralArgument {
            side: StructuralSide::Empty,
            explanation: format!("x'y' has degree {} but 1 has degree 0", p + q),
        });
        return Ok(report);
    }

    let basis = |degree: i64| -> Result<Vec<Word>, ObstructionError> {
        let mut ws = homogeneous_words(&target, degree, max_len, options.word_budget as u64)?;
        if target.same_degree(degree, 0) {
            ws.insert(0, Word::unit());
        }
        ws.retain(|w| system.is_irreducible_word(w));
        Ok(ws)
    };
    let left = basis(p)?;
    let right = basis(q)?;

    let subsets = |n: usize| -> Option<u64> { 1u64.checked_shl(n as u32).map(|v| v - 1) };
    let pairs = match (subsets(left.len()), subsets(right.len())) {
        (Some(a), Some(b)) => a.checked_mul(b),
        _ => None,
    };
    let pairs = match pairs {
        Some(n) if n <= options.pair_budget => n,
        _ => return Err(ObstructionError::BudgetExceeded(options.pair_budget)),
    };

    let mut structural = structural_argument(&system, p, q);
    // The structural claim is cross-checked against every enumerated product.
    let invariant = structural
        .as_ref()
        .and_then(|(arg, letter)| letter.map(|l| (arg.side.clone(), l)));
    let mut hit = None;
    'outer: for xs in 1u64..(1 << left.len()) {
        let x: Polynomial = subset(&left, xs);
        for ys in 1u64..(1 << right.len()) {
            let y: Polynomial = subset(&right, ys);
            let nf = system.normal_form(&(&x * &y))?;
            if nf.is_one() {
                hit = Some((x, y));
                break 'outer;
            }
            if let Some((side, letter)) = &invariant {
                let holds = nf.terms().all(|w| match side {
                    StructuralSide::Left => w.factors().first() == Some(letter),
                    _ => w.factors().last() == Some(letter),
                });
                if !holds {
                    structural = None;
                }
            }
        }
    }
    report.pairs_checked = pairs;
    report.left_basis = left;
    report.right_basis = right;
    report.outcome = match (hit, structural) {
        (Some((x, y)), _) => RefutationOutcome::Inconclusive(format!(
            "x' = {}, y' = {} has x'y' = 1 in the quotient",
            target.display(&x),
            target.display(&y)
        )),
        (None, Some((arg, _))) => RefutationOutcome::Structural(arg),
        (None, None) => RefutationOutcome::Bounded,
    };
    report.system = Some(system);
    Ok(report)
}

fn subset(words: &[Word], mask: u64) -> Polynomial {
    words
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, w)| w.clone())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClaimStatus {
    ProvedWithWitness(Witness),
    RefutedViaProjection(Box<RefutationReport>),
    Undetermined,
}

/// The claim `1 in H_p * H_q` for a DGA, with its current status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitProductClaim {
    pub dga: ChekanovDga,
    pub p: i64,
    pub q: i64,
    pub status: ClaimStatus,
}

impl UnitProductClaim {
    fn label(&self) -> String {
        let name = self
            .dga
            .metadata()
            .map(|m| m.display_name.clone())
            .unwrap_or_else(|| "(unnamed)".to_string());
        format!("1 in H_{} . H_{} for {}", self.p, self.q, name)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        match &self.status {
            ClaimStatus::ProvedWithWitness(w) => {
                let _ = writeln!(out, "claim {}: proved with witness", self.label());
                for line in w.render(self.dga.algebra()).lines() {
                    let _ = writeln!(out, "  {line}");
                }
                let _ = write!(out, "  check: {}", verify_witness(&self.dga, w));
            }
            ClaimStatus::RefutedViaProjection(r) => {
                let _ = writeln!(out, "claim {}: refuted via projection", self.label());
                let _ = write!(out, "{}", indent(&r.render()));
            }
            ClaimStatus::Undetermined => {
                let _ = write!(out, "claim {}: undetermined", self.label());
            }
        }
        out
    }
}

fn indent(text: &str) -> String {
    text.lines()
        .map(|l| format!("  {l}"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Nonisomorphic,
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Nonisomorphic => "nonisomorphic graded homology algebras",
            Verdict::Undetermined => "undetermined",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinctionReport {
    pub p: i64,
    pub q: i64,
    pub max_len: usize,
    pub substitutions: Vec<String>,
    pub first: UnitProductClaim,
    pub second: UnitProductClaim,
    /// Why the second claim was not refuted, when it was not.
    pub second_note: Option<String>,
    pub verdict: Verdict,
}

impl DistinctionReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "unit-product test in degrees ({},{}), max length {}",
            self.p, self.q, self.max_len
        );
        let _ = writeln!(out, "{}", self.first.render());
        if !self.substitutions.is_empty() {
            let _ = writeln!(out, "substitutions before projection:");
            for s in &self.substitutions {
                let _ = writeln!(out, "  {s}");
            }
        }
        let _ = writeln!(out, "{}", self.second.render());
        if let Some(note) = &self.second_note {
            let _ = writeln!(out, "{}", indent(note));
        }
        let _ = write!(out, "verdict: {}", self.verdict);
        out
    }
}

/// Looks for a witness of `1 in H_p * H_q` on `first` and a projection
/// refutation of the same claim on `second`.
pub fn distinguish(
    first: &ChekanovDga,
    second: &ChekanovDga,
    p: i64,
    q: i64,
    max_len: usize,
    plan: &RefutationPlan,
) -> Result<DistinctionReport, ObstructionError> {
    distinguish_with(
        first,
        second,
        p,
        q,
        max_len,
        plan,
        &SearchOptions::default(),
        &RefutationOptions::default(),
    )
}

#[allow(clippy::too_many_arguments)]
pub fn distinguish_with(
    first: &ChekanovDga,
    second: &ChekanovDga,
    p: i64,
    q: i64,
    max_len: usize,
    plan: &RefutationPlan,
    search: &SearchOptions,
    refutation: &RefutationOptions,
) -> Result<DistinctionReport, ObstructionError> {
    let witness = search_witness_with(first, p, q, max_len, search)?;
    let prepared = plan.prepare(second)?;
    let report = refute_unit_product_with(&prepared, p, q, &plan.projection, max_len, refutation)?;

    let first_status = match witness {
        Some(w) => ClaimStatus::ProvedWithWitness(w),
        None => ClaimStatus::Undetermined,
    };
    let (second_status, second_note) = if report.is_refuted() {
        (ClaimStatus::RefutedViaProjection(Box::new(report)), None)
    } else {
        (ClaimStatus::Undetermined, Some(report.render()))
    };
    let verdict = match (&first_status, &second_status) {
        (ClaimStatus::ProvedWithWitness(_), ClaimStatus::RefutedViaProjection(_)) => {
            Verdict::Nonisomorphic
        }
        _ => Verdict::Undetermined,
    };
    Ok(DistinctionReport {
        p,
        q,
        max_len,
        substitutions: plan.substitution_lines(),
        first: UnitProductClaim {
            dga: first.clone(),
            p,
            q,
            status: first_status,
        },
        second: UnitProductClaim {
            dga: second.clone(),
            p,
            q,
            status: second_status,
        },
        second_note,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_gen() -> FreeGradedAlgebra {
        FreeGradedAlgebra::from_pairs(&[("al", -1), ("be", 1)]).unwrap()
    }

    #[test]
    fn projection_must_preserve_grading() {
        let src = FreeGradedAlgebra::from_pairs(&[("a", 1)]).unwrap();
        let tgt = two_gen();
        let al = tgt.gen("al").unwrap();
        let err = ProjectionMap::from_assignments(src, tgt, &[("a", al)]).unwrap_err();
        assert!(matches!(
            err,
            ObstructionError::NotGradingPreserving { expected: 1, .. }
        ));
    }

    #[test]
    fn projection_is_unital() {
        let src = FreeGradedAlgebra::from_pairs(&[("a", 1)]).unwrap();
        let pi = ProjectionMap::from_assignments(src, two_gen(), &[]).unwrap();
        assert!(pi.project(&Polynomial::one()).is_one());
        assert!(pi.project(&Polynomial::generator(0)).is_zero());
        assert_eq!(pi.table(), vec!["default -> 0".to_string()]);
    }

    #[test]
    fn degree_sum_rejected_first() {
        let d = ChekanovDga::empty();
        let w = Witness {
            x: Polynomial::generator(3),
            y: Polynomial::zero(),
            z: Polynomial::zero(),
            p: 1,
            q: 1,
        };
        assert_eq!(
            verify_witness(&d, &w).failure,
            Some(WitnessFailure::DegreeSum { p: 1, q: 1 })
        );
    }

    #[test]
    fn empty_dga_has_no_witness() {
        let d = ChekanovDga::empty();
        assert_eq!(search_witness(&d, 1, -1, 3).unwrap(), None);
        assert_eq!(search_witness(&d, 0, 0, 1).unwrap(), None);
        assert_eq!(
            search_witness(&d, 0, 0, 0),
            Err(ObstructionError::InvalidMaxLen)
        );
    }

    #[test]
    fn unit_boundary_without_cycles_has_no_witness() {
        // The only generator is not a cycle and the unit is never a candidate.
        let alg = FreeGradedAlgebra::from_pairs(&[("e", 1)]).unwrap();
        let d = ChekanovDga::new(alg, vec![Polynomial::one()]).unwrap();
        assert_eq!(search_witness(&d, 0, 0, 2).unwrap(), None);
    }

    #[test]
    fn unit_relation_is_inconclusive() {
        let src = FreeGradedAlgebra::from_pairs(&[("e", 1)]).unwrap();
        let d = ChekanovDga::new(src.clone(), vec![Polynomial::one()]).unwrap();
        let pi = ProjectionMap::from_assignments(src, two_gen(), &[]).unwrap();
        let report = refute_unit_product(&d, -1, 1, &pi, 3).unwrap();
        assert!(!report.is_refuted());
    }

    #[test]
    fn zero_relations_give_bounded_refutation() {
        // Free quotient: x'y' = 1 is impossible for nonzero degrees, but no
        // single-rule structure is present, so only the bounded claim is made.
        let src = FreeGradedAlgebra::from_pairs(&[("a", -1), ("b", 1)]).unwrap();
        let d = ChekanovDga::new(src.clone(), vec![Polynomial::zero(); 2]).unwrap();
        let tgt = two_gen();
        let pi = ProjectionMap::from_assignments(
            src,
            tgt.clone(),
            &[("a", tgt.gen("al").unwrap()), ("b", tgt.gen("be").unwrap())],
        )
        .unwrap();
        let report = refute_unit_product(&d, -1, 1, &pi, 3).unwrap();
        assert_eq!(report.outcome, RefutationOutcome::Bounded);
        assert!(report.relations.is_empty());
    }
}
