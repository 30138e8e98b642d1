//! Reference implementations used as test oracles. They share no code with
//! the library beyond its public types.

#![allow(dead_code)]

use patterned::{ColoredWord, LinkKind};

/// Link values as plain integers, written out from the definitions.
pub fn link(kind: LinkKind, n: usize, i: usize, j: usize) -> (usize, usize) {
    let d = i.abs_diff(j);
    match kind {
        LinkKind::Wigner => (i.min(j), i.max(j)),
        LinkKind::Toeplitz => (d, 0),
        LinkKind::Hankel => (i + j, 0),
        LinkKind::ReverseCirculant => ((i + j) % n, 0),
        LinkKind::SymmetricCirculant => (d.min(n - d), 0),
    }
}

/// Number of maps `π: {0..2k} → {0..n}` with `π(0) = π(2k)` whose link values
/// agree on every match of `w`, by looping over all `n^{2k}` circuits.
pub fn brute_force_count(w: &ColoredWord, n: usize) -> u64 {
    let len = w.len();
    let ids = w.letter_ids();
    let colors: Vec<LinkKind> = (0..len).map(|p| w.color(p)).collect();
    let mut pi = vec![0usize; len];
    let mut count = 0u64;
    loop {
        let edge = |p: usize| link(colors[p], n, pi[p], pi[(p + 1) % len]);
        let ok = (0..len).all(|a| ((a + 1)..len).all(|b| ids[a] != ids[b] || edge(a) == edge(b)));
        if ok {
            count += 1;
        }
        let mut p = 0;
        loop {
            if p == len {
                return count;
            }
            pi[p] += 1;
            if pi[p] < n {
                break;
            }
            pi[p] = 0;
            p += 1;
        }
    }
}

/// Every pair-matched word of length `len` in canonical form (first
/// occurrences in alphabetical order).
pub fn canonical_pairings(len: usize) -> Vec<String> {
    fn go(word: &mut Vec<Option<u8>>, next: u8, out: &mut Vec<String>) {
        match word.iter().position(Option::is_none) {
            None => out.push(word.iter().map(|c| c.unwrap() as char).collect()),
            Some(first) => {
                word[first] = Some(next);
                for j in (first + 1)..word.len() {
                    if word[j].is_none() {
                        word[j] = Some(next);
                        go(word, next + 1, out);
                        word[j] = None;
                    }
                }
                word[first] = None;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![None; len], b'a', &mut out);
    out
}

/// Every string of `len` kind codes drawn from `kinds`.
pub fn kind_strings(kinds: &[LinkKind], len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| kinds.iter().map(move |k| format!("{s}{}", k.code())))
            .collect();
    }
    out
}

/// Colored words of `pairing` whose matched positions share a color drawn from `kinds`.
pub fn colorings(pairing: &str, kinds: &[LinkKind]) -> Vec<ColoredWord> {
    let letters: Vec<char> = {
        let mut l: Vec<char> = pairing.chars().collect();
        l.sort();
        l.dedup();
        l
    };
    kind_strings(kinds, letters.len())
        .into_iter()
        .map(|assign| {
            let colors: String = pairing
                .chars()
                .map(|c| assign.as_bytes()[letters.iter().position(|l| *l == c).unwrap()] as char)
                .collect();
            ColoredWord::parse(pairing, &colors).unwrap()
        })
        .collect()
}

/// Whether the pairing of `word` has no crossing `a..b..a..b`.
pub fn is_noncrossing_word(word: &str) -> bool {
    let w: Vec<char> = word.chars().collect();
    let mut stack = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for c in w {
        if seen.insert(c) {
            stack.push(c);
        } else if stack.pop() != Some(c) {
            return false;
        }
    }
    true
}

/// Determinant of an integer matrix by fraction-free Bareiss elimination.
pub fn bareiss_det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match ((k + 1)..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// `∫ x^p dμ` for the standard semicircle law, by composite Simpson on
/// `x = 2 cos θ`.
pub fn semicircle_integral(p: usize) -> f64 {
    let steps = 20_000;
    let h = std::f64::consts::PI / steps as f64;
    let f = |t: f64| {
        let x = 2.0 * t.cos();
        // dμ = (1/2π) √(4 - x²) dx = (2/π) sin²θ dθ
        x.powi(p as i32) * 2.0 / std::f64::consts::PI * t.sin().powi(2)
    };
    let mut s = f(0.0) + f(std::f64::consts::PI);
    for i in 1..steps {
        s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// Number of cycles of a permutation given as a map.
pub fn cycle_count(map: &[usize]) -> usize {
    let mut seen = vec![false; map.len()];
    let mut cycles = 0;
    for s in 0..map.len() {
        if !seen[s] {
            cycles += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = map[x];
            }
        }
    }
    cycles
}
