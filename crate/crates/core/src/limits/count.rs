//! Exact finite-n circuit counts by dynamic construction.

use rayon::prelude::*;

use crate::algebra::ColoredWord;
use crate::error::{Error, Result};
use crate::link::{eval_unchecked, solve_unchecked, LValue, LinkKind};

/// Default work budget, in elementary enumeration steps.
pub const DEFAULT_BUDGET: u64 = 5_000_000_000;

/// Upper bound on the steps [`count_circuits_exact`] takes: `n^{k+1} Δ^k`,
/// with `Δ` multiplied over the matches.
pub fn enumeration_work(w: &ColoredWord, n: usize) -> f64 {
    let k = w.len() / 2;
    let branching: f64 = w.match_pairs().iter().map(|p| w.color(p.i).delta() as f64).product();
    (n as f64).powi(k as i32 + 1) * branching
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    All,
    /// Wigner second occurrences must reverse their first edge.
    WignerReversedOnly,
}

struct Plan {
    kinds: Vec<LinkKind>,
    letters: Vec<usize>,
    first: Vec<bool>,
    first_pos: Vec<usize>,
}

impl Plan {
    fn new(w: &ColoredWord) -> Plan {
        let letters: Vec<usize> = w.letter_ids().iter().map(|&l| l as usize).collect();
        let mut first_pos = vec![usize::MAX; w.letter_count()];
        let mut first = vec![false; w.len()];
        for (p, &l) in letters.iter().enumerate() {
            if first_pos[l] == usize::MAX {
                first_pos[l] = p;
                first[p] = true;
            }
        }
        Plan {
            kinds: (0..w.len()).map(|p| w.color(p)).collect(),
            letters,
            first,
            first_pos,
        }
    }
}

fn walk(plan: &Plan, mode: Mode, n: usize, pi: &mut [usize], targets: &mut [LValue], p: usize) -> u64 {
    let len = plan.kinds.len();
    let kind = plan.kinds[p];
    let letter = plan.letters[p];
    if plan.first[p] {
        let mut total = 0;
        for x in 0..n {
            pi[p + 1] = x;
            targets[letter] = eval_unchecked(kind, n, pi[p], x);
            total += walk(plan, mode, n, pi, targets, p + 1);
        }
        return total;
    }
    if mode == Mode::WignerReversedOnly && kind == LinkKind::Wigner {
        let i = plan.first_pos[letter];
        if pi[p] != pi[i + 1] {
            return 0;
        }
        let next = pi[i];
        return if p + 1 == len {
            (next == pi[0]) as u64
        } else {
            pi[p + 1] = next;
            walk(plan, mode, n, pi, targets, p + 1)
        };
    }
    if p + 1 == len {
        return (eval_unchecked(kind, n, pi[p], pi[0]) == targets[letter]) as u64;
    }
    let mut total = 0;
    for &x in solve_unchecked(kind, n, pi[p], targets[letter]).as_slice() {
        pi[p + 1] = x;
        total += walk(plan, mode, n, pi, targets, p + 1);
    }
    total
}

fn count(w: &ColoredWord, n: usize, budget: u64, mode: Mode) -> Result<u64> {
    if !w.is_pair_matched() {
        return Err(Error::InvalidWord(format!("{w} is not pair-matched")));
    }
    if n == 0 {
        return Err(Error::SizeTooSmall { n, min: 1 });
    }
    let needed = enumeration_work(w, n);
    if needed > budget as f64 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let plan = Plan::new(w);
    let len = w.len();
    let placeholder = LValue::Hankel(0);
    Ok((0..n)
        .into_par_iter()
        .map(|start| {
            let mut pi = vec![0; len + 1];
            pi[0] = start;
            let mut targets = vec![placeholder; plan.first_pos.len()];
            walk(&plan, mode, n, &mut pi, &mut targets, 0)
        })
        .sum())
}

/// The number of circuits `π: {0..2k} → {0..n-1}`, `π(0) = π(2k)`, whose
/// L-values agree on every match of `w`.
///
/// Generating vertices are looped over and every other vertex is branched over
/// the solutions of its link equation, so no circuit is visited twice.
/// Refuses with [`Error::BudgetExceeded`] when [`enumeration_work`] exceeds `budget`.
pub fn count_circuits_exact(w: &ColoredWord, n: usize, budget: u64) -> Result<u64> {
    count(w, n, budget, Mode::All)
}

/// Like [`count_circuits_exact`], but every Wigner match must traverse its
/// edge in reverse: `(π(j), π(j+1)) = (π(i+1), π(i))`.
pub fn count_circuits_reversed_wigner(w: &ColoredWord, n: usize, budget: u64) -> Result<u64> {
    count(w, n, budget, Mode::WignerReversedOnly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_letter_counts_all_pairs() {
        for kind in LinkKind::ALL {
            let q = crate::algebra::Monomial::from_kinds(&[kind, kind]).unwrap();
            let w = ColoredWord::new("aa", &q).unwrap();
            assert_eq!(count_circuits_exact(&w, 7, DEFAULT_BUDGET).unwrap(), 49, "{kind}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let w = ColoredWord::parse("abab", "THTH").unwrap();
        // 10^3 * 2 steps
        assert!(count_circuits_exact(&w, 10, 2000).is_ok());
        assert!(matches!(
            count_circuits_exact(&w, 10, 1999),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn rejects_unmatched_words() {
        let w = ColoredWord::parse("aaa", "TTT").unwrap();
        assert!(count_circuits_exact(&w, 4, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn reversed_wigner_counts() {
        let n = 9;
        let nested = ColoredWord::parse("aabb", "WWWW").unwrap();
        assert_eq!(count_circuits_exact(&nested, n, DEFAULT_BUDGET).unwrap(), 729);
        assert_eq!(count_circuits_reversed_wigner(&nested, n, DEFAULT_BUDGET).unwrap(), 729);

        // Reversing both matches of abab forces all four vertices to coincide.
        let crossing = ColoredWord::parse("abab", "WWWW").unwrap();
        assert_eq!(count_circuits_reversed_wigner(&crossing, n, DEFAULT_BUDGET).unwrap(), 9);
        let mut brute = 0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let l = |x: usize, y: usize| (x.min(y), x.max(y));
                        brute += (l(a, b) == l(c, d) && l(b, c) == l(d, a)) as u64;
                    }
                }
            }
        }
        assert_eq!(count_circuits_exact(&crossing, n, DEFAULT_BUDGET).unwrap(), brute);
    }
}
