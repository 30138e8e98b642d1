//! Case decomposition of a pair-matched word and affine resolution of its
//! dependent vertices.
//!
//! Vertex `p` of a circuit is scaled to `v_p = π(p) / n`. Word position `p` is
//! the edge from `v_p` to `v_{p+1}`. The first edge of each match makes its end
//! vertex generating; at the second edge `(v_j, v_{j+1})` of a match whose first
//! edge is `(v_i, v_{i+1})`, the case chosen for the match fixes `v_{j+1}`:
//!
//! * Toeplitz, sign `l = ±1`: `v_i - v_{i+1} = l (v_j - v_{j+1})`
//! * Hankel: `v_i + v_{i+1} = v_j + v_{j+1}`
//! * Reverse Circulant, offset `a ∈ {-1, 0, 1}`: `v_i + v_{i+1} - v_j - v_{j+1} = a`
//! * Symmetric Circulant: with `s1 = v_i - v_{i+1}` and `s2 = v_j - v_{j+1}`, one
//!   of `s2 = s1`, `s2 = -s1`, `s2 = 1 - s1`, `s2 = s1 - 1`, `s2 = 1 + s1`,
//!   `s2 = -1 - s1` (cases 1 to 6)
//! * Wigner C1: `(v_j, v_{j+1}) = (v_i, v_{i+1})`; C2: `(v_j, v_{j+1}) = (v_{i+1}, v_i)`
//!
//! Wigner cases fix `v_{j+1}` and add the equality on `v_j` as a side constraint.

use std::fmt;

use serde::Serialize;

use super::affine::AffineForm;
use crate::algebra::{ColoredWord, MatchPair};
use crate::link::LinkKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum WignerConstraint {
    C1,
    C2,
}

/// The case chosen for one match.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatchCase {
    /// Sign `±1`.
    Toeplitz(i8),
    Hankel,
    /// Offset in `{-1, 0, 1}`.
    ReverseCirculant(i8),
    /// Case number `1..=6`.
    SymmetricCirculant(u8),
    Wigner(WignerConstraint),
}

impl MatchCase {
    /// All cases for a match of the given kind.
    pub fn all_for(kind: LinkKind) -> Vec<MatchCase> {
        match kind {
            LinkKind::Toeplitz => vec![MatchCase::Toeplitz(1), MatchCase::Toeplitz(-1)],
            LinkKind::Hankel => vec![MatchCase::Hankel],
            LinkKind::ReverseCirculant => (-1..=1).map(MatchCase::ReverseCirculant).collect(),
            LinkKind::SymmetricCirculant => (1..=6).map(MatchCase::SymmetricCirculant).collect(),
            LinkKind::Wigner => vec![
                MatchCase::Wigner(WignerConstraint::C1),
                MatchCase::Wigner(WignerConstraint::C2),
            ],
        }
    }

    pub fn kind(self) -> LinkKind {
        match self {
            MatchCase::Toeplitz(_) => LinkKind::Toeplitz,
            MatchCase::Hankel => LinkKind::Hankel,
            MatchCase::ReverseCirculant(_) => LinkKind::ReverseCirculant,
            MatchCase::SymmetricCirculant(_) => LinkKind::SymmetricCirculant,
            MatchCase::Wigner(_) => LinkKind::Wigner,
        }
    }
}

impl fmt::Display for MatchCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchCase::Toeplitz(s) => write!(f, "T{s:+}"),
            MatchCase::Hankel => write!(f, "H"),
            MatchCase::ReverseCirculant(a) => write!(f, "R{a:+}"),
            MatchCase::SymmetricCirculant(c) => write!(f, "S{c}"),
            MatchCase::Wigner(c) => write!(f, "W{c:?}"),
        }
    }
}

/// One case per match pair, in the order of [`ColoredWord::match_pairs`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CaseLabel(pub Vec<MatchCase>);

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(MatchCase::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Cartesian product of the per-match case sets.
///
/// There are `2^#T · 3^#R · 6^#S · 2^#W` labels. Words that are not
/// pair-matched have none.
pub fn build_cases(w: &ColoredWord) -> Vec<CaseLabel> {
    let pairs = w.match_pairs();
    if pairs.is_empty() {
        return Vec::new();
    }
    let mut labels = vec![Vec::with_capacity(pairs.len())];
    for p in &pairs {
        let options = MatchCase::all_for(w.color(p.i));
        labels = labels
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |&c| {
                    let mut l = prefix.clone();
                    l.push(c);
                    l
                })
            })
            .collect();
    }
    labels.into_iter().map(CaseLabel).collect()
}

/// The affine description of one case of a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstraintSystem {
    generating: Vec<usize>,
    vertices: Vec<AffineForm>,
    equalities: Vec<(AffineForm, AffineForm)>,
}

impl ConstraintSystem {
    /// Vertex positions whose values are free coordinates; starts with 0.
    pub fn generating(&self) -> &[usize] {
        &self.generating
    }

    /// Number of free coordinates, `k + 1` for a word of length `2k`.
    pub fn dim(&self) -> usize {
        self.generating.len()
    }

    /// Form of every vertex `v_0 ..= v_{2k}`.
    pub fn vertex_forms(&self) -> &[AffineForm] {
        &self.vertices
    }

    /// Non-generating vertices with their forms; these carry the `[0, 1)` range checks.
    pub fn dependent(&self) -> impl Iterator<Item = (usize, &AffineForm)> {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(p, _)| self.generating.binary_search(p).is_err())
    }

    /// Side equalities contributed by Wigner matches.
    pub fn equalities(&self) -> &[(AffineForm, AffineForm)] {
        &self.equalities
    }

    /// Form of `v_{2k}`, which must equal `v_0` for the walk to close.
    pub fn closure_form(&self) -> &AffineForm {
        self.vertices.last().expect("at least one vertex")
    }

    pub fn closure_is_identity(&self) -> bool {
        *self.closure_form() == self.vertices[0]
    }

    /// Closure and all side equalities hold identically. Otherwise the case
    /// lives on a proper affine subspace and has zero volume.
    pub fn is_full_dimensional(&self) -> bool {
        self.closure_is_identity() && self.equalities.iter().all(|(a, b)| a == b)
    }

    /// Sort key used to merge literally identical systems.
    pub fn canonical_key(&self) -> (Vec<AffineForm>, Vec<(AffineForm, AffineForm)>) {
        let mut eqs: Vec<(AffineForm, AffineForm)> = self
            .equalities
            .iter()
            .map(|(a, b)| {
                if a <= b {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                }
            })
            .filter(|(a, b)| a != b)
            .collect();
        eqs.sort();
        eqs.dedup();
        (self.vertices.clone(), eqs)
    }
}

/// Resolves every vertex of `w` under `case` as an affine form of the
/// generating coordinates.
///
/// # Panics
///
/// If `case` does not fit `w` (wrong length or kinds).
pub fn resolve_affine(w: &ColoredWord, case: &CaseLabel) -> ConstraintSystem {
    let pairs: Vec<MatchPair> = w.match_pairs();
    assert_eq!(pairs.len(), case.0.len(), "case label does not fit {w}");
    let len = w.len();
    let dim = len / 2 + 1;

    let mut case_at = vec![None; len];
    for (pair, c) in pairs.iter().zip(&case.0) {
        assert_eq!(c.kind(), w.color(pair.i), "case {c} does not fit match at {}", pair.i);
        case_at[pair.j] = Some((pair.i, *c));
    }

    let mut generating = vec![0];
    let mut vertices: Vec<AffineForm> = Vec::with_capacity(len + 1);
    vertices.push(AffineForm::coordinate(dim, 0));
    let mut equalities = Vec::new();

    for p in 0..len {
        let next = match case_at[p] {
            None => {
                generating.push(p + 1);
                AffineForm::coordinate(dim, generating.len() - 1)
            }
            Some((i, c)) => {
                let (vi, vi1, vp) = (&vertices[i], &vertices[i + 1], &vertices[p]);
                let s1 = vi - vi1;
                let sum1 = vi + vi1;
                match c {
                    MatchCase::Toeplitz(sign) => vp - &s1.scale(sign as i64),
                    MatchCase::Hankel => &sum1 - vp,
                    MatchCase::ReverseCirculant(a) => (&sum1 - vp).plus_constant(-(a as i64)),
                    MatchCase::SymmetricCirculant(n) => {
                        let s2 = match n {
                            1 => s1.clone(),
                            2 => -&s1,
                            3 => (-&s1).plus_constant(1),
                            4 => s1.plus_constant(-1),
                            5 => s1.plus_constant(1),
                            6 => (-&s1).plus_constant(-1),
                            _ => panic!("symmetric circulant case {n} out of 1..=6"),
                        };
                        vp - &s2
                    }
                    MatchCase::Wigner(WignerConstraint::C1) => {
                        equalities.push((vp.clone(), vi.clone()));
                        vi1.clone()
                    }
                    MatchCase::Wigner(WignerConstraint::C2) => {
                        equalities.push((vp.clone(), vi1.clone()));
                        vi.clone()
                    }
                }
            }
        };
        vertices.push(next);
    }

    ConstraintSystem {
        generating,
        vertices,
        equalities,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(w: &str, q: &str) -> ColoredWord {
        ColoredWord::parse(w, q).unwrap()
    }

    #[test]
    fn case_counts() {
        assert_eq!(build_cases(&word("abab", "THTH")).len(), 2);
        assert_eq!(build_cases(&word("abab", "RHRH")).len(), 3);
        assert_eq!(build_cases(&word("aabccb", "HHSHHS")).len(), 6);
        assert_eq!(build_cases(&word("abcabc", "WTSWTS")).len(), 2 * 2 * 6);
    }

    #[test]
    fn double_letter_has_a_full_case_for_every_kind() {
        for kind in LinkKind::ALL {
            let q = crate::algebra::Monomial::from_kinds(&[kind, kind]).unwrap();
            let w = ColoredWord::new("aa", &q).unwrap();
            let full: Vec<ConstraintSystem> = build_cases(&w)
                .iter()
                .map(|c| resolve_affine(&w, c))
                .filter(ConstraintSystem::is_full_dimensional)
                .collect();
            assert_eq!(full.len(), 1, "{kind}");
            assert_eq!(full[0].dim(), 2);
            assert!(full[0].equalities().iter().all(|(a, b)| a == b));
        }
    }

    #[test]
    fn alternating_toeplitz_closes_for_one_sign_only() {
        let w = word("abab", "THTH");
        let closes: Vec<bool> = build_cases(&w)
            .iter()
            .map(|c| resolve_affine(&w, c).closure_is_identity())
            .collect();
        assert_eq!(closes, vec![true, false]);

        let w = word("abab", "TTTT");
        let cases = build_cases(&w);
        let closing: Vec<String> = cases
            .iter()
            .filter(|c| resolve_affine(&w, c).closure_is_identity())
            .map(CaseLabel::to_string)
            .collect();
        // v4 - v0 = (1 + l1)(v1 - v0) + (1 + l2)(v2 - v1) after substitution
        assert_eq!(closing, vec!["(T-1,T-1)"]);
    }

    #[test]
    fn wigner_c1_adds_a_nontrivial_equality() {
        let w = word("abab", "WTWT");
        let label = CaseLabel(vec![MatchCase::Wigner(WignerConstraint::C1), MatchCase::Toeplitz(1)]);
        let cs = resolve_affine(&w, &label);
        let (lhs, rhs) = &cs.equalities()[0];
        // v2 is generating (coordinate 2), v0 is coordinate 0
        assert_eq!(*lhs, AffineForm::coordinate(3, 2));
        assert_eq!(*rhs, AffineForm::coordinate(3, 0));
        assert!(!cs.is_full_dimensional());
    }

    #[test]
    fn dependent_forms_use_only_earlier_coordinates() {
        let w = word("abcabc", "SSHSSH");
        for label in build_cases(&w) {
            let cs = resolve_affine(&w, &label);
            assert_eq!(cs.dim(), 4);
            for (pos, form) in cs.dependent() {
                let earlier = cs.generating().iter().filter(|&&g| g < pos).count();
                assert!(form.coeffs()[earlier..].iter().all(|c| *c.numer() == 0));
            }
        }
    }
}
