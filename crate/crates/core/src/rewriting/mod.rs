//! Identity certificates over a finite presentation and their verifier.
//!
//! A certificate is a list of positional edits. Each one either inserts or
//! deletes a conjugate `c·R^{±1}·c⁻¹` of a relator `R`, or inserts or cancels
//! a free pair `x·x⁻¹`. Nothing is reduced implicitly, so certificates can be
//! shifted, spliced and mirrored without replaying them.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentations::Presentation;
use crate::words::{BraidWord, Letter};

mod claims;
mod search;

pub use claims::*;
pub use search::*;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "action")]
pub enum DerivationStep {
    InsertRelatorConjugate { relator: usize, inverse: bool, conjugator: BraidWord, position: usize },
    DeleteRelatorConjugate { relator: usize, inverse: bool, conjugator: BraidWord, position: usize },
    /// Removes the cancelling pair at `position`, `position + 1`.
    FreeCancel { position: usize },
    /// Inserts `letter · letter⁻¹` at `position`.
    FreeInsert { position: usize, letter: Letter },
}

impl DerivationStep {
    pub fn shifted(&self, by: usize) -> DerivationStep {
        let mut s = self.clone();
        match &mut s {
            DerivationStep::InsertRelatorConjugate { position, .. }
            | DerivationStep::DeleteRelatorConjugate { position, .. }
            | DerivationStep::FreeCancel { position }
            | DerivationStep::FreeInsert { position, .. } => *position += by,
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub from: BraidWord,
    pub to: BraidWord,
    pub steps: Vec<DerivationStep>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StepFault {
    #[error("relator index {0} out of range")]
    NoSuchRelator(usize),
    #[error("position {0} out of range")]
    Position(usize),
    #[error("letters at the position do not cancel")]
    NoCancellation,
    #[error("segment at the position is not the stated relator conjugate")]
    SegmentMismatch,
    #[error("letter outside the presentation")]
    UnknownLetter,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("step {step}: {fault}")]
pub struct VerifyError {
    pub step: usize,
    pub fault: StepFault,
}

fn conjugate_block(p: &Presentation, relator: usize, inverse: bool, c: &BraidWord) -> Result<Vec<Letter>, StepFault> {
    let r = p.relators.get(relator).ok_or(StepFault::NoSuchRelator(relator))?;
    let mut block = c.letters.clone();
    if inverse {
        block.extend(r.invert().letters);
    } else {
        block.extend_from_slice(&r.letters);
    }
    block.extend(c.invert().letters);
    Ok(block)
}

/// Applies one step in place.
pub fn apply_step(p: &Presentation, word: &mut Vec<Letter>, step: &DerivationStep) -> Result<(), StepFault> {
    match step {
        DerivationStep::InsertRelatorConjugate { relator, inverse, conjugator, position } => {
            if *position > word.len() {
                return Err(StepFault::Position(*position));
            }
            if !p.accepts(conjugator) {
                return Err(StepFault::UnknownLetter);
            }
            let block = conjugate_block(p, *relator, *inverse, conjugator)?;
            word.splice(*position..*position, block);
        }
        DerivationStep::DeleteRelatorConjugate { relator, inverse, conjugator, position } => {
            let block = conjugate_block(p, *relator, *inverse, conjugator)?;
            let end = position + block.len();
            if end > word.len() {
                return Err(StepFault::Position(*position));
            }
            if word[*position..end] != block[..] {
                return Err(StepFault::SegmentMismatch);
            }
            word.drain(*position..end);
        }
        DerivationStep::FreeCancel { position } => {
            if position + 1 >= word.len() {
                return Err(StepFault::Position(*position));
            }
            if !word[*position].cancels(word[position + 1]) {
                return Err(StepFault::NoCancellation);
            }
            word.drain(*position..position + 2);
        }
        DerivationStep::FreeInsert { position, letter } => {
            if *position > word.len() {
                return Err(StepFault::Position(*position));
            }
            if p.generator_index(letter.generator).is_none() || letter.exponent.abs() != 1 {
                return Err(StepFault::UnknownLetter);
            }
            word.splice(*position..*position, [*letter, letter.inverse()]);
        }
    }
    Ok(())
}

/// Replays every step and returns the final word.
pub fn replay(p: &Presentation, d: &Derivation) -> Result<BraidWord, VerifyError> {
    replay_steps(p, &d.from, &d.steps)
}

pub fn replay_steps(p: &Presentation, from: &BraidWord, steps: &[DerivationStep]) -> Result<BraidWord, VerifyError> {
    if !p.accepts(from) {
        return Err(VerifyError { step: 0, fault: StepFault::UnknownLetter });
    }
    let mut word = from.letters.clone();
    for (i, s) in steps.iter().enumerate() {
        apply_step(p, &mut word, s).map_err(|fault| VerifyError { step: i, fault })?;
    }
    Ok(BraidWord::from_letters(word))
}

/// `Ok(true)` iff every step applies and the replay ends exactly at `to`.
pub fn verify_derivation(p: &Presentation, d: &Derivation) -> Result<bool, VerifyError> {
    Ok(replay(p, d)? == d.to)
}

/// Every intermediate word, starting with `from`.
pub fn trace(p: &Presentation, d: &Derivation) -> Result<Vec<BraidWord>, VerifyError> {
    let mut word = d.from.letters.clone();
    let mut out = alloc::vec![d.from.clone()];
    for (i, s) in d.steps.iter().enumerate() {
        apply_step(p, &mut word, s).map_err(|fault| VerifyError { step: i, fault })?;
        out.push(BraidWord::from_letters(word.clone()));
    }
    Ok(out)
}

fn inverse_step(before: &[Letter], step: &DerivationStep) -> DerivationStep {
    match step.clone() {
        DerivationStep::InsertRelatorConjugate { relator, inverse, conjugator, position } => {
            DerivationStep::DeleteRelatorConjugate { relator, inverse, conjugator, position }
        }
        DerivationStep::DeleteRelatorConjugate { relator, inverse, conjugator, position } => {
            DerivationStep::InsertRelatorConjugate { relator, inverse, conjugator, position }
        }
        DerivationStep::FreeCancel { position } => DerivationStep::FreeInsert { position, letter: before[position] },
        DerivationStep::FreeInsert { position, .. } => DerivationStep::FreeCancel { position },
    }
}

impl Derivation {
    pub fn trivial(w: BraidWord) -> Derivation {
        Derivation { from: w.clone(), to: w, steps: Vec::new() }
    }

    /// The derivation `to → from`. Needs a replay to recover cancelled letters.
    pub fn reversed(&self, p: &Presentation) -> Result<Derivation, VerifyError> {
        let mut word = self.from.letters.clone();
        let mut inv = Vec::with_capacity(self.steps.len());
        for (i, s) in self.steps.iter().enumerate() {
            inv.push(inverse_step(&word, s));
            apply_step(p, &mut word, s).map_err(|fault| VerifyError { step: i, fault })?;
        }
        inv.reverse();
        Ok(Derivation { from: self.to.clone(), to: self.from.clone(), steps: inv })
    }

    /// The derivation `from⁻¹ → to⁻¹`, read off step by step on the inverted words.
    pub fn mirrored(&self, p: &Presentation) -> Result<Derivation, VerifyError> {
        let mut len = self.from.len();
        let mut out = Vec::with_capacity(self.steps.len());
        for (i, s) in self.steps.iter().enumerate() {
            let fault = |fault| VerifyError { step: i, fault };
            let m = match s.clone() {
                DerivationStep::InsertRelatorConjugate { relator, inverse, conjugator, position } => {
                    let k = conjugate_block(p, relator, inverse, &conjugator).map_err(fault)?.len();
                    if position > len {
                        return Err(fault(StepFault::Position(position)));
                    }
                    let m = DerivationStep::InsertRelatorConjugate { relator, inverse: !inverse, conjugator, position: len - position };
                    len += k;
                    m
                }
                DerivationStep::DeleteRelatorConjugate { relator, inverse, conjugator, position } => {
                    let k = conjugate_block(p, relator, inverse, &conjugator).map_err(fault)?.len();
                    if position + k > len {
                        return Err(fault(StepFault::Position(position)));
                    }
                    len -= k;
                    DerivationStep::DeleteRelatorConjugate { relator, inverse: !inverse, conjugator, position: len - position }
                }
                DerivationStep::FreeCancel { position } => {
                    if position + 2 > len {
                        return Err(fault(StepFault::Position(position)));
                    }
                    len -= 2;
                    DerivationStep::FreeCancel { position: len - position }
                }
                DerivationStep::FreeInsert { position, letter } => {
                    if position > len {
                        return Err(fault(StepFault::Position(position)));
                    }
                    let m = DerivationStep::FreeInsert { position: len - position, letter };
                    len += 2;
                    m
                }
            };
            out.push(m);
        }
        Ok(Derivation { from: self.from.invert(), to: self.to.invert(), steps: out })
    }

    /// `self` followed by `next`; `next` must start where `self` ends.
    pub fn then(mut self, next: &Derivation) -> Derivation {
        debug_assert_eq!(self.to, next.from);
        self.steps.extend_from_slice(&next.steps);
        self.to = next.to.clone();
        self
    }
}

/// Steps that insert `w⁻¹·w` at `position` (letters of w innermost last).
pub fn insert_inverse_then(w: &[Letter], position: usize) -> Vec<DerivationStep> {
    w.iter()
        .rev()
        .enumerate()
        .map(|(k, &l)| DerivationStep::FreeInsert { position: position + k, letter: l.inverse() })
        .collect()
}

/// Steps that insert `w·w⁻¹` at `position`.
pub fn insert_then_inverse(w: &[Letter], position: usize) -> Vec<DerivationStep> {
    w.iter()
        .enumerate()
        .map(|(k, &l)| DerivationStep::FreeInsert { position: position + k, letter: l })
        .collect()
}

/// Turns a certificate `u·v⁻¹ → 1` into a certificate `u → v`.
pub fn equality_from_triviality(u: &BraidWord, v: &BraidWord, trivial: &[DerivationStep]) -> Derivation {
    let mut steps = insert_inverse_then(&v.letters, u.len());
    steps.extend_from_slice(trivial);
    Derivation { from: u.clone(), to: v.clone(), steps }
}

/// Human-readable one-line summary of a step.
pub fn describe(step: &DerivationStep) -> String {
    match step {
        DerivationStep::InsertRelatorConjugate { relator, inverse, conjugator, position } => {
            alloc::format!("insert c R{relator}{} c^-1 at {position}, c = [{conjugator}]", if *inverse { "^-1" } else { "" })
        }
        DerivationStep::DeleteRelatorConjugate { relator, inverse, conjugator, position } => {
            alloc::format!("delete c R{relator}{} c^-1 at {position}, c = [{conjugator}]", if *inverse { "^-1" } else { "" })
        }
        DerivationStep::FreeCancel { position } => alloc::format!("cancel at {position}"),
        DerivationStep::FreeInsert { position, letter } => alloc::format!("insert {letter} {} at {position}", letter.inverse()),
    }
}
