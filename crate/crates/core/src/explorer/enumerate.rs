//! Bounded, deterministic enumeration of game forms.

use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{GameForm, GameId, Games};

/// Largest number of forms a single exhaustive level may produce.
pub const EXHAUSTIVE_LIMIT: u128 = 5_000_000;

/// What to enumerate. Levels up to `max_birthday - 1` are exhaustive; the top
/// level is exhaustive too unless `sample` is set, in which case `sample` forms
/// of exactly `max_birthday` are drawn with a seeded generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationSpec {
    pub max_birthday: u32,
    pub tb_range: Vec<u32>,
    /// Most options per side at birthdays above 2. Levels up to 2 always use
    /// every subset.
    pub option_subset_cap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample: Option<usize>,
    pub seed: u64,
}

impl Default for EnumerationSpec {
    fn default() -> Self {
        EnumerationSpec {
            max_birthday: 2,
            tb_range: (0..=2).collect(),
            option_subset_cap: 2,
            sample: None,
            seed: 0x5eed,
        }
    }
}

impl EnumerationSpec {
    pub fn new(max_birthday: u32, tb_range: impl IntoIterator<Item = u32>) -> Self {
        EnumerationSpec {
            max_birthday,
            tb_range: tb_range.into_iter().collect(),
            ..Default::default()
        }
    }

    /// The standard bounds: exhaustive up to 2, a 1000-form seeded sample at 3.
    pub fn standard(max_birthday: u32, tb_range: impl IntoIterator<Item = u32>) -> Self {
        let mut spec = EnumerationSpec::new(max_birthday, tb_range);
        if max_birthday >= 3 {
            spec.sample = Some(1000);
        }
        spec
    }

    fn cap_at(&self, birthday: u32) -> Option<usize> {
        (birthday > 2).then_some(self.option_subset_cap)
    }
}

fn subsets_up_to(n: usize, cap: Option<usize>) -> u128 {
    let cap = cap.unwrap_or(n).min(n);
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for k in 0..=cap {
        total = total.saturating_add(c);
        c = c.saturating_mul((n - k) as u128) / (k as u128 + 1);
    }
    total
}

/// Number of forms an exhaustive level built from `n` earlier forms would produce.
pub fn level_size(n: usize, cap: Option<usize>) -> u128 {
    let s = subsets_up_to(n, cap);
    s.saturating_mul(s)
}

/// All subsets of `0..n` with at most `cap` elements, in a fixed order:
/// by size, then lexicographically.
fn subsets(n: usize, cap: Option<usize>) -> Vec<Vec<usize>> {
    let cap = cap.unwrap_or(n).min(n);
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..cap {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(0, |&l| l + 1);
            for i in start..n {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Every form with birthday at most `spec.max_birthday`, each exactly once, in a
/// deterministic order (earlier levels first).
pub fn enumerate_forms(games: &Games, spec: &EnumerationSpec) -> Result<Vec<GameId>> {
    let mut level = vec![games.zero()];
    for b in 1..=spec.max_birthday {
        let cap = spec.cap_at(b);
        if b == spec.max_birthday {
            if let Some(n) = spec.sample {
                let mut out = level.clone();
                out.extend(sample_level(
                    games,
                    &level,
                    b,
                    cap.unwrap_or(level.len()),
                    n,
                    spec.seed,
                ));
                return Ok(out);
            }
        }
        let size = level_size(level.len(), cap);
        if size > EXHAUSTIVE_LIMIT {
            return Err(Error::SearchTooLarge {
                estimate: size,
                limit: EXHAUSTIVE_LIMIT,
            });
        }
        level = next_level(games, &level, cap);
    }
    Ok(level)
}

fn next_level(games: &Games, prev: &[GameId], cap: Option<usize>) -> Vec<GameId> {
    let sides = subsets(prev.len(), cap);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    // Earlier forms keep their positions at the front.
    for &g in prev {
        seen.insert(g);
        out.push(g);
    }
    for l in &sides {
        for r in &sides {
            let id = games.intern_form(GameForm::new(
                l.iter().map(|&i| prev[i]),
                r.iter().map(|&i| prev[i]),
            ));
            if seen.insert(id) {
                out.push(id);
            }
        }
    }
    out
}

/// `n` distinct forms of birthday exactly `birthday`, options drawn from `prev`
/// with at most `cap` per side.
fn sample_level(
    games: &Games,
    prev: &[GameId],
    birthday: u32,
    cap: usize,
    n: usize,
    seed: u64,
) -> Vec<GameId> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(n);
    let cap = cap.min(prev.len());
    let mut attempts = 0usize;
    while out.len() < n && attempts < n.saturating_mul(1000) {
        attempts += 1;
        let side = |rng: &mut ChaCha8Rng| -> Vec<GameId> {
            let k = rng.gen_range(0..=cap);
            index::sample(rng, prev.len(), k)
                .into_iter()
                .map(|i| prev[i])
                .collect()
        };
        let l = side(&mut rng);
        let r = side(&mut rng);
        let id = games.intern_form(GameForm::new(l, r));
        if games.birthday(id) == birthday && seen.insert(id) {
            out.push(id);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_counts() {
        let g = Games::new();
        for (b, n) in [(0, 1), (1, 4), (2, 256)] {
            let forms = enumerate_forms(&g, &EnumerationSpec::new(b, [0])).unwrap();
            assert_eq!(forms.len(), n);
            let distinct: HashSet<_> = forms.iter().collect();
            assert_eq!(distinct.len(), n);
            assert!(forms.iter().all(|&f| g.birthday(f) <= b));
        }
        assert_eq!(level_size(4, None), 256);
    }

    #[test]
    fn full_birthday_three_is_refused() {
        let g = Games::new();
        let err = enumerate_forms(&g, &EnumerationSpec::new(3, [0])).unwrap_err();
        assert!(matches!(err, Error::SearchTooLarge { .. }));
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = Games::new();
        let b = Games::new();
        let spec = EnumerationSpec::standard(3, [0]);
        let fa = enumerate_forms(&a, &spec).unwrap();
        let fb = enumerate_forms(&b, &spec).unwrap();
        assert_eq!(fa.len(), 1256);
        let pa: Vec<String> = fa
            .iter()
            .map(|&f| crate::print(&a, f, crate::Style::Literal))
            .collect();
        let pb: Vec<String> = fb
            .iter()
            .map(|&f| crate::print(&b, f, crate::Style::Literal))
            .collect();
        assert_eq!(pa, pb);
        assert!(fa[256..].iter().all(|&f| a.birthday(f) == 3));
    }
}
