//! Chekanov differential graded algebras over GF(2).
//!
//! The differential is stored on generators and extended to the whole
//! algebra by the Leibniz rule, which carries no signs in characteristic 2.

use std::fmt;

use thiserror::Error;

use crate::algebra::{
    AlgebraError, FreeGradedAlgebra, GeneratorSymbol, Homogeneity, Polynomial, Word,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DgaError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("expected {expected} differential entries, got {found}")]
    DifferentialLength { expected: usize, found: usize },
    #[error("shift for {0} mentions {0} itself")]
    NonTameShift(String),
    #[error("shift for {generator} must have degree {expected}, found {found}")]
    ShiftDegree {
        generator: String,
        expected: i64,
        found: Homogeneity,
    },
    #[error("generator name {0} already in use")]
    NameCollision(String),
    #[error("maslov number {maslov} requires grading modulus {expected}, algebra has {found}")]
    ModulusMismatch {
        maslov: i64,
        expected: u32,
        found: u32,
    },
}

/// Classical invariants attached to a DGA.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotMetadata {
    pub display_name: String,
    pub smooth_type: Option<String>,
    pub thurston_bennequin: Option<i64>,
    pub maslov_number: i64,
}

impl KnotMetadata {
    pub fn named(display_name: impl Into<String>) -> Self {
        Self {
            display_name: display_name.into(),
            smooth_type: None,
            thurston_bennequin: None,
            maslov_number: 0,
        }
    }

    pub fn grading_modulus(&self) -> u32 {
        (2 * self.maslov_number.unsigned_abs()) as u32
    }

    /// Metadata of the Legendrian mirror. Mirroring negates the Maslov
    /// number; the display name toggles an `M(...)` wrapper.
    pub fn mirrored(&self) -> Self {
        let display_name = match self
            .display_name
            .strip_prefix("M(")
            .and_then(|s| s.strip_suffix(')'))
        {
            Some(inner) => inner.to_string(),
            None => format!("M({})", self.display_name),
        };
        Self {
            display_name,
            smooth_type: self.smooth_type.clone(),
            thurston_bennequin: self.thurston_bennequin,
            maslov_number: -self.maslov_number,
        }
    }
}

/// A tame elementary change of generators `g -> g + u`, where `u` does not
/// involve `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryAutomorphism {
    target: usize,
    shift: Polynomial,
}

impl ElementaryAutomorphism {
    pub fn new(
        algebra: &FreeGradedAlgebra,
        target: &str,
        shift: Polynomial,
    ) -> Result<Self, DgaError> {
        let target = algebra.require(target)?;
        let phi = Self { target, shift };
        phi.validate(algebra)?;
        Ok(phi)
    }

    /// Parses `shift` with the algebra's expression grammar.
    pub fn parse(algebra: &FreeGradedAlgebra, target: &str, shift: &str) -> Result<Self, DgaError> {
        let shift = algebra.parse(shift)?;
        Self::new(algebra, target, shift)
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn shift(&self) -> &Polynomial {
        &self.shift
    }

    fn validate(&self, algebra: &FreeGradedAlgebra) -> Result<(), DgaError> {
        if self.target >= algebra.len() || !algebra.owns(&self.shift) {
            return Err(AlgebraError::ForeignPolynomial.into());
        }
        let name = algebra.name(self.target).to_string();
        if self.shift.mentions(self.target) {
            return Err(DgaError::NonTameShift(name));
        }
        let expected = algebra.generator_degree(self.target);
        let found = algebra.homogeneity(&self.shift)?;
        if !found.admits(expected) {
            return Err(DgaError::ShiftDegree {
                generator: name,
                expected,
                found,
            });
        }
        Ok(())
    }

    /// Generator images of the substitution `g -> g + u`.
    fn images(&self, algebra: &FreeGradedAlgebra) -> Vec<Polynomial> {
        (0..algebra.len())
            .map(|i| {
                let g = Polynomial::generator(i);
                if i == self.target {
                    g + self.shift.clone()
                } else {
                    g
                }
            })
            .collect()
    }
}

/// A problem found by [`ChekanovDga::check_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WrongDegree {
        generator: String,
        expected: i64,
        found: Homogeneity,
    },
    NonzeroSquare {
        generator: String,
        residue: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongDegree {
                generator,
                expected,
                found,
            } => write!(
                f,
                "d {generator}: expected degree {expected}, found {found}"
            ),
            Violation::NonzeroSquare { generator, residue } => {
                write!(f, "d^2 {generator} = {residue}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub degree_ok: bool,
    pub d_squared_zero: bool,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.degree_ok && self.d_squared_zero
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |ok: bool| if ok { "ok" } else { "FAILED" };
        write!(
            f,
            "degree check: {}; d^2 = 0: {}",
            verdict(self.degree_ok),
            verdict(self.d_squared_zero)
        )?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

/// A free graded algebra with a differential given on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChekanovDga {
    algebra: FreeGradedAlgebra,
    differential: Vec<Polynomial>,
    metadata: Option<KnotMetadata>,
}

impl ChekanovDga {
    /// `differential[i]` is the boundary of generator `i`.
    pub fn new(
        algebra: FreeGradedAlgebra,
        differential: Vec<Polynomial>,
    ) -> Result<Self, DgaError> {
        if differential.len() != algebra.len() {
            return Err(DgaError::DifferentialLength {
                expected: algebra.len(),
                found: differential.len(),
            });
        }
        if differential.iter().any(|p| !algebra.owns(p)) {
            return Err(AlgebraError::ForeignPolynomial.into());
        }
        Ok(Self {
            algebra,
            differential,
            metadata: None,
        })
    }

    pub fn with_metadata(mut self, metadata: KnotMetadata) -> Result<Self, DgaError> {
        let expected = metadata.grading_modulus();
        if expected != self.algebra.grading_modulus() {
            return Err(DgaError::ModulusMismatch {
                maslov: metadata.maslov_number,
                expected,
                found: self.algebra.grading_modulus(),
            });
        }
        self.metadata = Some(metadata);
        Ok(self)
    }

    pub fn empty() -> Self {
        Self {
            algebra: FreeGradedAlgebra::new(Vec::new(), 0).expect("empty algebra"),
            differential: Vec::new(),
            metadata: None,
        }
    }

    pub fn algebra(&self) -> &FreeGradedAlgebra {
        &self.algebra
    }

    pub fn metadata(&self) -> Option<&KnotMetadata> {
        self.metadata.as_ref()
    }

    pub fn differential(&self) -> &[Polynomial] {
        &self.differential
    }

    /// Boundary of the named generator.
    pub fn boundary_of(&self, name: &str) -> Option<&Polynomial> {
        self.algebra.index_of(name).map(|i| &self.differential[i])
    }

    /// Extends the differential to `p` by linearity and the Leibniz rule.
    pub fn apply_differential(&self, p: &Polynomial) -> Result<Polynomial, DgaError> {
        if !self.algebra.owns(p) {
            return Err(AlgebraError::ForeignPolynomial.into());
        }
        let mut out = Polynomial::zero();
        for word in p.terms() {
            out += self.differential_of_word(word);
        }
        Ok(out)
    }

    fn differential_of_word(&self, word: &Word) -> Polynomial {
        let factors = word.factors();
        let mut out = Polynomial::zero();
        for (i, &g) in factors.iter().enumerate() {
            let boundary = &self.differential[g];
            if boundary.is_zero() {
                continue;
            }
            let left = word.slice(0, i);
            let right = word.slice(i + 1, factors.len());
            for middle in boundary.terms() {
                out.toggle(left.concat(middle).concat(&right));
            }
        }
        out
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let mut violations = Vec::new();
        let mut degree_ok = true;
        let mut d_squared_zero = true;
        for (i, boundary) in self.differential.iter().enumerate() {
            let name = self.algebra.name(i).to_string();
            let expected = self
                .algebra
                .reduce_degree(self.algebra.generators()[i].degree - 1);
            let found = self
                .algebra
                .homogeneity(boundary)
                .expect("differential owned by algebra");
            if !found.admits(expected) {
                degree_ok = false;
                violations.push(Violation::WrongDegree {
                    generator: name.clone(),
                    expected,
                    found,
                });
            }
            let square = self
                .apply_differential(boundary)
                .expect("differential owned by algebra");
            if !square.is_zero() {
                d_squared_zero = false;
                violations.push(Violation::NonzeroSquare {
                    generator: name,
                    residue: self.algebra.render(&square),
                });
            }
        }
        AxiomReport {
            degree_ok,
            d_squared_zero,
            violations,
        }
    }

    /// The DGA of the Legendrian mirror: every monomial of every boundary is
    /// reversed.
    pub fn mirror(&self) -> Self {
        Self {
            algebra: self.algebra.clone(),
            differential: self.differential.iter().map(Polynomial::reverse).collect(),
            metadata: self.metadata.as_ref().map(KnotMetadata::mirrored),
        }
    }

    /// Rewrites the differential in the generators obtained by `g -> g + u`.
    /// The new generator keeps the old name.
    pub fn apply_automorphism(&self, phi: &ElementaryAutomorphism) -> Result<Self, DgaError> {
        phi.validate(&self.algebra)?;
        let images = phi.images(&self.algebra);
        let mut differential: Vec<Polynomial> = self
            .differential
            .iter()
            .map(|p| p.substitute(&images))
            .collect();
        let shift_boundary = self.apply_differential(phi.shift())?;
        differential[phi.target()] += shift_boundary.substitute(&images);
        Ok(Self {
            algebra: self.algebra.clone(),
            differential,
            metadata: self.metadata.clone(),
        })
    }

    /// Applies the automorphisms left to right.
    pub fn apply_automorphisms(&self, phis: &[ElementaryAutomorphism]) -> Result<Self, DgaError> {
        let mut current = self.clone();
        for phi in phis {
            current = current.apply_automorphism(phi)?;
        }
        Ok(current)
    }

    /// Adjoins `e1` of degree `degree` and `e2` of degree `degree - 1` with
    /// `d e1 = e2`, `d e2 = 0`.
    pub fn stabilize(&self, degree: i64, names: (&str, &str)) -> Result<Self, DgaError> {
        let (upper, lower) = names;
        for name in [upper, lower] {
            if self.algebra.index_of(name).is_some() {
                return Err(DgaError::NameCollision(name.to_string()));
            }
        }
        if upper == lower {
            return Err(DgaError::NameCollision(upper.to_string()));
        }
        let algebra = self.algebra.extended(vec![
            GeneratorSymbol::new(upper, degree),
            GeneratorSymbol::new(lower, degree - 1),
        ])?;
        let lower_index = self.algebra.len() + 1;
        let mut differential = self.differential.clone();
        differential.push(Polynomial::generator(lower_index));
        differential.push(Polynomial::zero());
        Ok(Self {
            algebra,
            differential,
            metadata: self.metadata.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(name: &str, degree: i64, boundary: &str) -> ChekanovDga {
        let alg = FreeGradedAlgebra::from_pairs(&[(name, degree)]).unwrap();
        let d = alg.parse(boundary).unwrap();
        ChekanovDga::new(alg, vec![d]).unwrap()
    }

    #[test]
    fn self_boundary_has_wrong_degree() {
        // d a = a also fails d^2 = 0, since d^2 a = a.
        let report = single("a", 1, "a").check_axioms();
        assert!(!report.degree_ok);
        assert!(!report.d_squared_zero);
        assert_eq!(report.violations.len(), 2);
        assert_eq!(
            report.to_string(),
            "degree check: FAILED; d^2 = 0: FAILED\n  d a: expected degree 0, found degree 1\n  d^2 a = a"
        );
    }

    #[test]
    fn unit_boundary_is_valid() {
        let report = single("e", 1, "1").check_axioms();
        assert!(report.degree_ok && report.d_squared_zero);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn non_tame_shift_rejected() {
        let alg = FreeGradedAlgebra::from_pairs(&[("a", 0), ("b", 0)]).unwrap();
        let err = ElementaryAutomorphism::parse(&alg, "a", "a b").unwrap_err();
        assert_eq!(err, DgaError::NonTameShift("a".into()));
    }

    #[test]
    fn shift_degree_mismatch_rejected() {
        let alg = FreeGradedAlgebra::from_pairs(&[("a", 0), ("b", 1)]).unwrap();
        let err = ElementaryAutomorphism::parse(&alg, "a", "b").unwrap_err();
        assert!(matches!(err, DgaError::ShiftDegree { expected: 0, .. }));
    }

    #[test]
    fn stabilize_empty() {
        let d = ChekanovDga::empty().stabilize(0, ("e1", "e2")).unwrap();
        assert_eq!(d.algebra().len(), 2);
        assert_eq!(
            d.boundary_of("e1").unwrap(),
            &d.algebra().gen("e2").unwrap()
        );
        assert!(d.boundary_of("e2").unwrap().is_zero());
        assert_eq!(d.algebra().generator_degree(1), -1);
        assert!(d.check_axioms().is_ok());
    }

    #[test]
    fn stabilize_rejects_collisions() {
        let d = single("a1", 1, "1");
        assert_eq!(
            d.stabilize(2, ("a1", "e")).unwrap_err(),
            DgaError::NameCollision("a1".into())
        );
        assert!(d.stabilize(2, ("e", "e")).is_err());
    }

    #[test]
    fn mirror_metadata_is_involutive() {
        let meta = KnotMetadata {
            display_name: "K".into(),
            smooth_type: Some("6_2".into()),
            thurston_bennequin: Some(-7),
            maslov_number: 1,
        };
        assert_eq!(meta.mirrored().display_name, "M(K)");
        assert_eq!(meta.mirrored().maslov_number, -1);
        assert_eq!(meta.mirrored().mirrored(), meta);
    }

    #[test]
    fn metadata_must_match_modulus() {
        let d = single("a", 1, "1");
        let mut meta = KnotMetadata::named("K");
        meta.maslov_number = 2;
        assert!(matches!(
            d.with_metadata(meta),
            Err(DgaError::ModulusMismatch { expected: 4, .. })
        ));
    }

    #[test]
    fn mod_two_grading_accepts_wrapped_degrees() {
        // a of degree 0 with boundary of degree 1 is fine modulo 2.
        let alg = FreeGradedAlgebra::new(
            vec![GeneratorSymbol::new("a", 0), GeneratorSymbol::new("b", 1)],
            2,
        )
        .unwrap();
        let db = Polynomial::zero();
        let da = alg.parse("b").unwrap();
        let d = ChekanovDga::new(alg, vec![da, db]).unwrap();
        assert!(d.check_axioms().degree_ok);
    }

    #[test]
    fn unknown_polynomial_rejected() {
        let d = single("a", 1, "1");
        let foreign = Polynomial::generator(5);
        assert!(d.apply_differential(&foreign).is_err());
    }
}
