//! Symbolic braid words and their evaluation into groupoid functors.
//!
//! Braid words are never compared intrinsically; equality is only ever
//! observed through functor images, and the only rewriting performed on
//! words is free cancellation of adjacent inverse pairs.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groupoid::{FreeGroupoid, GroupoidFunctor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flipped(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// A signed standard generator: `index` ranges over `1..=strands-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BraidLetter {
    pub index: usize,
    pub sign: Sign,
}

impl BraidLetter {
    pub fn positive(index: usize) -> Self {
        BraidLetter {
            index,
            sign: Sign::Positive,
        }
    }

    pub fn negative(index: usize) -> Self {
        BraidLetter {
            index,
            sign: Sign::Negative,
        }
    }

    pub fn inverse(self) -> Self {
        BraidLetter {
            index: self.index,
            sign: self.sign.flipped(),
        }
    }

    fn cancels(self, other: BraidLetter) -> bool {
        self.index == other.index && self.sign != other.sign
    }
}

/// A word in the standard generators of the braid group on `strands` strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidParameter(
                "strand count must be positive".to_string(),
            ));
        }
        for l in &letters {
            if l.index == 0 || l.index >= strands {
                return Err(Error::InvalidParameter(format!(
                    "generator index {} out of range 1..={}",
                    l.index,
                    strands - 1
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn empty(strands: usize) -> Result<Self> {
        BraidWord::new(strands, Vec::new())
    }

    pub fn generator(strands: usize, index: usize) -> Result<Self> {
        BraidWord::new(strands, vec![BraidLetter::positive(index)])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::InvalidParameter(
                "cannot concatenate words with different strand counts".to_string(),
            ));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn power(&self, exponent: usize) -> BraidWord {
        let mut letters = Vec::with_capacity(self.letters.len() * exponent);
        for _ in 0..exponent {
            letters.extend_from_slice(&self.letters);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Cancels adjacent inverse pairs to a fixpoint. No braid-relation
    /// rewriting is performed.
    pub fn reduced(&self) -> BraidWord {
        let mut stack: Vec<BraidLetter> = Vec::new();
        for &l in &self.letters {
            if stack.last().is_some_and(|&top| top.cancels(l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: stack,
        }
    }

    /// Renders like `b1.b2.b1^-1`; the empty word renders as `1`.
    pub fn render(&self) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|l| match l.sign {
                Sign::Positive => format!("b{}", l.index),
                Sign::Negative => format!("b{}^-1", l.index),
            })
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// All defining relators of the braid group on `n` strands, as words that
/// must evaluate to the identity:
/// `b_i.b_{i+1}.b_i.(b_{i+1}.b_i.b_{i+1})^-1` for `1 <= i <= n-2`, and the
/// far commutators `b_i.b_j.b_i^-1.b_j^-1` for `j - i >= 2`.
pub fn braid_relators(n: usize) -> Result<Vec<BraidWord>> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "braid relators need n >= 2".to_string(),
        ));
    }
    let mut relators = Vec::new();
    for i in 1..=n.saturating_sub(2) {
        let letters = vec![
            BraidLetter::positive(i),
            BraidLetter::positive(i + 1),
            BraidLetter::positive(i),
            BraidLetter::negative(i + 1),
            BraidLetter::negative(i),
            BraidLetter::negative(i + 1),
        ];
        relators.push(BraidWord::new(n, letters)?);
    }
    for i in 1..=n.saturating_sub(2) {
        for j in (i + 2)..=(n - 1) {
            let letters = vec![
                BraidLetter::positive(i),
                BraidLetter::positive(j),
                BraidLetter::negative(i),
                BraidLetter::negative(j),
            ];
            relators.push(BraidWord::new(n, letters)?);
        }
    }
    Ok(relators)
}

/// The word `b1.b2...b_{n-1}` whose image conjugates consecutive twists into
/// each other.
pub fn delta(n: usize) -> Result<BraidWord> {
    if n < 2 {
        return Err(Error::InvalidParameter("delta needs n >= 2".to_string()));
    }
    BraidWord::new(n, (1..n).map(BraidLetter::positive).collect())
}

/// Assigns a functor and its inverse to each standard generator; both
/// directions are validated to actually invert each other so that evaluation
/// of arbitrary signed words stays sound.
#[derive(Debug, Clone)]
pub struct TwistAssignment {
    domain: Arc<FreeGroupoid>,
    positive: Vec<GroupoidFunctor>,
    negative: Vec<GroupoidFunctor>,
}

impl TwistAssignment {
    pub fn new(pairs: Vec<(GroupoidFunctor, GroupoidFunctor)>) -> Result<Self> {
        let Some((first, _)) = pairs.first() else {
            return Err(Error::InvalidParameter(
                "twist assignment needs at least one generator".to_string(),
            ));
        };
        let domain = first.domain().clone();
        let mut positive = Vec::with_capacity(pairs.len());
        let mut negative = Vec::with_capacity(pairs.len());
        for (i, (forward, backward)) in pairs.into_iter().enumerate() {
            if !forward.after(&backward)?.is_identity() || !backward.after(&forward)?.is_identity()
            {
                return Err(Error::InvalidStructure(format!(
                    "assigned functors for generator {} are not mutually inverse",
                    i + 1
                )));
            }
            positive.push(forward);
            negative.push(backward);
        }
        Ok(TwistAssignment {
            domain,
            positive,
            negative,
        })
    }

    pub fn domain(&self) -> &Arc<FreeGroupoid> {
        &self.domain
    }

    pub fn generator_count(&self) -> usize {
        self.positive.len()
    }

    pub fn functor(&self, letter: BraidLetter) -> Result<&GroupoidFunctor> {
        let slot = letter
            .index
            .checked_sub(1)
            .filter(|&i| i < self.positive.len())
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "no functor assigned to generator {}",
                    letter.index
                ))
            })?;
        Ok(match letter.sign {
            Sign::Positive => &self.positive[slot],
            Sign::Negative => &self.negative[slot],
        })
    }
}

/// Evaluates a braid word into a functor, applying the leftmost letter
/// first: `evaluate(u.v) = evaluate(v) ∘ evaluate(u)`. The empty word
/// evaluates to the identity.
pub fn evaluate_braid(word: &BraidWord, assignment: &TwistAssignment) -> Result<GroupoidFunctor> {
    let mut acc = GroupoidFunctor::identity(assignment.domain().clone());
    for &letter in word.letters() {
        acc = assignment.functor(letter)?.after(&acc)?;
    }
    Ok(acc)
}
