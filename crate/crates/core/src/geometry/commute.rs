//! Nested brackets of X and JX, commuting orders and the Lie-algebra closure test.

use std::collections::HashMap;
use std::fmt;

use super::field::VectorField;
use super::hypersurface::{in_tjm, Hypersurface};
use super::structure::AlmostComplexStructure;
use crate::error::{Error, Result};
use crate::series::MultiSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    JX,
}

/// Right-nested bracket word [W₁, [W₂, …, [W_{l−1}, W_l]…]] over {X, JX}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BracketWord(pub Vec<Letter>);

impl BracketWord {
    /// All words of the given length, in lexicographic order with X < JX.
    pub fn all_of_length(len: usize) -> Vec<BracketWord> {
        (0..1usize << len)
            .map(|bits| {
                BracketWord(
                    (0..len)
                        .map(|i| {
                            if bits >> (len - 1 - i) & 1 == 1 {
                                Letter::JX
                            } else {
                                Letter::X
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for BracketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self
            .0
            .iter()
            .map(|l| if *l == Letter::X { "X" } else { "JX" })
            .collect();
        match names.len() {
            0 => write!(f, "()"),
            1 => write!(f, "{}", names[0]),
            n => {
                for name in &names[..n - 1] {
                    write!(f, "[{name},")?;
                }
                write!(f, "{}", names[n - 1])?;
                for _ in 0..n - 1 {
                    write!(f, "]")?;
                }
                Ok(())
            }
        }
    }
}

/// Memoised evaluation of bracket words and of connection words applied to [X, JX].
pub struct BracketCalculus {
    x: VectorField,
    jx: VectorField,
    brackets: HashMap<Vec<Letter>, VectorField>,
    derivatives: HashMap<Vec<Letter>, VectorField>,
}

impl BracketCalculus {
    pub fn new(x: &VectorField, j: &AlmostComplexStructure) -> Self {
        BracketCalculus::with_jx(x.clone(), j.apply(x))
    }

    pub fn with_jx(x: VectorField, jx: VectorField) -> Self {
        BracketCalculus {
            x,
            jx,
            brackets: HashMap::new(),
            derivatives: HashMap::new(),
        }
    }

    pub fn x(&self) -> &VectorField {
        &self.x
    }

    pub fn jx(&self) -> &VectorField {
        &self.jx
    }

    pub fn letter(&self, l: Letter) -> &VectorField {
        match l {
            Letter::X => &self.x,
            Letter::JX => &self.jx,
        }
    }

    /// Value of a right-nested word; values are cached by suffix.
    pub fn word(&mut self, w: &[Letter]) -> VectorField {
        assert!(!w.is_empty());
        if w.len() == 1 {
            return self.letter(w[0]).clone();
        }
        if let Some(v) = self.brackets.get(w) {
            return v.clone();
        }
        let inner = self.word(&w[1..]);
        let v = self.letter(w[0]).bracket(&inner);
        self.brackets.insert(w.to_vec(), v.clone());
        v
    }

    /// [X, JX].
    pub fn base(&mut self) -> VectorField {
        self.word(&[Letter::X, Letter::JX])
    }

    /// W₁·(W₂·(…(W_m·[X, JX]))) with the flat connection; cached by suffix.
    pub fn derivative(&mut self, w: &[Letter]) -> VectorField {
        if w.is_empty() {
            return self.base();
        }
        if let Some(v) = self.derivatives.get(w) {
            return v.clone();
        }
        let inner = self.derivative(&w[1..]);
        let v = self.letter(w[0]).nabla(&inner);
        self.derivatives.insert(w.to_vec(), v.clone());
        v
    }

    /// [W₁, [W₂, …, [W_m, [X, JX]]…]].
    pub fn nested_on_base(&mut self, w: &[Letter]) -> VectorField {
        let mut full = w.to_vec();
        full.push(Letter::X);
        full.push(Letter::JX);
        self.word(&full)
    }

    /// W₁·…·W_l · [W_{l+1}, […, [W_k, [X, JX]]…]].
    pub fn mixed(&mut self, w: &[Letter], l: usize) -> VectorField {
        let mut v = self.nested_on_base(&w[l..]);
        for letter in w[..l].iter().rev() {
            v = self.letter(*letter).nabla(&v);
        }
        v
    }

    /// Largest k ≤ kmax such that every word of length 2..k vanishes at 0.
    pub fn commute_order(&mut self, kmax: usize) -> Result<usize> {
        self.check_accuracy(kmax)?;
        for len in 2..=kmax {
            if self.first_nonvanishing_word(len).is_some() {
                return Ok(len - 1);
            }
        }
        Ok(kmax.max(1))
    }

    pub fn first_nonvanishing_word(&mut self, len: usize) -> Option<BracketWord> {
        BracketWord::all_of_length(len)
            .into_iter()
            .find(|w| !self.word(&w.0).vanishes_at_origin())
    }

    /// Largest k ≤ kmax such that W₁·…·W_m·[X, JX](0) = 0 for all m ≤ k − 2.
    pub fn derivative_order(&mut self, kmax: usize) -> Result<usize> {
        self.check_accuracy(kmax)?;
        for k in 2..=kmax {
            let m = k - 2;
            if BracketWord::all_of_length(m)
                .iter()
                .any(|w| !self.derivative(&w.0).vanishes_at_origin())
            {
                return Ok(k - 1);
            }
        }
        Ok(kmax.max(1))
    }

    fn check_accuracy(&self, kmax: usize) -> Result<()> {
        let needed = kmax.saturating_sub(1) as u32;
        let have = self.x.accuracy().min(self.jx.accuracy());
        if have < needed {
            return Err(Error::InsufficientAccuracy { needed, have });
        }
        Ok(())
    }
}

/// Commuting order of X at the origin, capped at `kmax` (lower-bound semantics).
pub fn commute_order(x: &VectorField, j: &AlmostComplexStructure, kmax: usize) -> Result<usize> {
    BracketCalculus::new(x, j).commute_order(kmax)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop1Report {
    pub k0: usize,
    /// X commutes at order k0 (bracket words).
    pub brackets_vanish: bool,
    /// All connection words of length ≤ k0 − 2 applied to [X, JX] vanish at 0.
    pub derivatives_vanish: bool,
    /// The mixed identity between connection and bracket words holds where checked.
    pub mixed_identity_holds: bool,
    pub counterexample: Option<String>,
}

impl Prop1Report {
    pub fn ok(&self) -> bool {
        self.brackets_vanish == self.derivatives_vanish && self.mixed_identity_holds
    }
}

/// Cross-checks the bracket and connection criteria for commuting at order k0,
/// and, when they hold, the identity
/// W₁·…·W_l·[W_{l+1}, …, [W_k, [X, JX]]…](0) = [W₁, …, [W_k, [X, JX]]…](0)
/// for 0 ≤ l ≤ k ≤ k0 − 1.
pub fn prop1_check(x: &VectorField, j: &AlmostComplexStructure, k0: usize) -> Result<Prop1Report> {
    let mut calc = BracketCalculus::new(x, j);
    calc.check_accuracy(k0 + 1)?;
    let brackets_vanish = calc.commute_order(k0)? >= k0;
    let derivatives_vanish = calc.derivative_order(k0)? >= k0;
    let mut report = Prop1Report {
        k0,
        brackets_vanish,
        derivatives_vanish,
        mixed_identity_holds: true,
        counterexample: None,
    };
    if brackets_vanish != derivatives_vanish {
        report.counterexample = Some(format!(
            "bracket criterion {brackets_vanish}, derivative criterion {derivatives_vanish}"
        ));
        return Ok(report);
    }
    if !derivatives_vanish {
        return Ok(report);
    }
    for k in 0..k0 {
        for w in BracketWord::all_of_length(k) {
            let reference = calc.nested_on_base(&w.0).at_origin();
            for l in 0..=k {
                if calc.mixed(&w.0, l).at_origin() != reference {
                    report.mixed_identity_holds = false;
                    report.counterexample = Some(format!(
                        "word {w} applied to [X,JX] with {l} connection letters"
                    ));
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop2Report {
    pub k: usize,
    pub holds: bool,
    pub mismatch: Option<String>,
}

/// For X commuting at order k ≥ 2: every [W₁, …, [W_k, [X, JX]]…](0) equals the
/// sorted word with all JX letters outermost.
pub fn prop2_normal_form(
    x: &VectorField,
    j: &AlmostComplexStructure,
    k: usize,
) -> Result<Prop2Report> {
    if k < 2 {
        return Err(Error::Precondition("the normal form needs k ≥ 2".into()));
    }
    let mut calc = BracketCalculus::new(x, j);
    calc.check_accuracy(k + 2)?;
    if calc.commute_order(k)? < k {
        return Err(Error::Precondition(format!(
            "X does not commute at order {k}"
        )));
    }
    for w in BracketWord::all_of_length(k) {
        let mut sorted = w.0.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        let lhs = calc.nested_on_base(&w.0).at_origin();
        let rhs = calc.nested_on_base(&sorted).at_origin();
        if lhs != rhs {
            return Ok(Prop2Report {
                k,
                holds: false,
                mismatch: Some(format!("{w} vs {}", BracketWord(sorted))),
            });
        }
    }
    Ok(Prop2Report {
        k,
        holds: true,
        mismatch: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub depth: usize,
    pub holds: bool,
    /// First word whose value (or J-image) leaves T^J M, and the residue on M.
    pub offending: Option<(BracketWord, String, MultiSeries)>,
}

/// Tests every right-nested word of length 1..depth over {X, JX} with the
/// T^J M membership test, which covers each value and its J-image.
pub fn lie_algebra_closure_check(
    x: &VectorField,
    hyp: &Hypersurface,
    j: &AlmostComplexStructure,
    depth: usize,
) -> ClosureReport {
    let mut calc = BracketCalculus::new(x, j);
    for len in 1..=depth {
        for w in BracketWord::all_of_length(len) {
            let v = calc.word(&w.0);
            if v.is_zero() {
                continue;
            }
            let check = in_tjm(hyp, j, &v);
            if !check.member {
                let (which, residue) = check.witness.unwrap();
                return ClosureReport {
                    depth,
                    holds: false,
                    offending: Some((w, which, residue)),
                };
            }
        }
    }
    ClosureReport {
        depth,
        holds: true,
        offending: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_enumerate_and_print() {
        let w = BracketWord::all_of_length(3);
        assert_eq!(w.len(), 8);
        assert_eq!(w[0].to_string(), "[X,[X,X]]");
        assert_eq!(w[5].to_string(), "[JX,[X,JX]]");
    }

    #[test]
    fn constant_field_commutes_to_any_order() {
        let j = AlmostComplexStructure::standard(4, 6);
        let x = VectorField::coordinate(4, 6, 2);
        assert_eq!(commute_order(&x, &j, 6).unwrap(), 6);
        let r = prop1_check(&x, &j, 5).unwrap();
        assert!(r.ok() && r.brackets_vanish);
        assert!(prop2_normal_form(&x, &j, 3).unwrap().holds);
    }
}
