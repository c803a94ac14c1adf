#![allow(dead_code)]

use proptest::prelude::*;

use chekanov::algebra::{Polynomial, Word};
use chekanov::dga::{ChekanovDga, ElementaryAutomorphism};

pub const K_GENERATORS: usize = 11;

pub fn word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..gens, 0..=max_len).prop_map(Word::new)
}

pub fn poly(gens: usize, max_terms: usize, max_len: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(word(gens, max_len), 0..=max_terms).prop_map(Polynomial::from_words)
}

pub fn k_poly() -> impl Strategy<Value = Polynomial> {
    poly(K_GENERATORS, 6, 5)
}

/// Cancels `be al` pairs with a stack; the survivors read al^i be^j.
pub fn stack_normal_form(word: &Word, al: usize, be: usize) -> Word {
    let mut stack: Vec<usize> = Vec::new();
    for &g in word.factors() {
        if g == al && stack.last() == Some(&be) {
            stack.pop();
        } else {
            stack.push(g);
        }
    }
    Word::new(stack)
}

/// A change `g -> g + u` with `u` a random sum of short words of the right
/// degree avoiding `g`.
pub fn random_automorphism(d: &ChekanovDga) -> impl Strategy<Value = ElementaryAutomorphism> {
    let d = d.clone();
    let n = d.algebra().len();
    (0..n, prop::collection::vec(word(n, 3), 0..6)).prop_map(move |(g, words)| {
        let alg = d.algebra();
        let degree = alg.generator_degree(g);
        let shift: Polynomial = words
            .into_iter()
            .filter(|w| !w.factors().contains(&g) && alg.degree_of(w).unwrap() == degree)
            .collect();
        ElementaryAutomorphism::new(alg, alg.name(g), shift).unwrap()
    })
}
