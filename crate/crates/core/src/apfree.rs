//! Integer sequences without 3-term arithmetic progressions.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};

/// A strictly increasing sequence of positive integers in which no three
/// distinct terms satisfy `a + c = 2b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ApFreeSequence {
    terms: Vec<u64>,
}

impl ApFreeSequence {
    /// Validates `terms` and wraps them.
    pub fn new(terms: Vec<u64>) -> Result<Self> {
        if let Some((a, b, c)) = find_3ap(&terms)? {
            return Err(Error::ContainsAp(a, b, c));
        }
        Ok(ApFreeSequence { terms })
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Parses one positive integer per line; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let v: u64 = line.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("expected a positive integer, got {line:?}"),
            })?;
            terms.push(v);
        }
        Self::new(terms)
    }

    pub fn to_text(&self) -> String {
        self.terms.iter().map(|t| format!("{t}\n")).collect()
    }
}

fn check_increasing(terms: &[u64]) -> Result<()> {
    if terms.first() == Some(&0) || terms.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NotIncreasing);
    }
    Ok(())
}

/// Some `(a, b, c)` with `a < b < c` and `a + c = 2b`, checked over all pairs
/// `(a, c)` against a membership set.
pub fn find_3ap(terms: &[u64]) -> Result<Option<(u64, u64, u64)>> {
    check_increasing(terms)?;
    let set: HashSet<u64> = terms.iter().copied().collect();
    for (i, &a) in terms.iter().enumerate() {
        for &c in terms.iter().skip(i + 2) {
            if (a + c) % 2 == 0 && set.contains(&((a + c) / 2)) {
                return Ok(Some((a, (a + c) / 2, c)));
            }
        }
    }
    Ok(None)
}

pub fn is_3ap_free(terms: &[u64]) -> Result<bool> {
    Ok(find_3ap(terms)?.is_none())
}

/// The first `count` terms of the greedy sequence starting `1, 2`: each new
/// term is the smallest integer that keeps the set free of 3-APs.
pub fn greedy_3ap_free(count: usize) -> ApFreeSequence {
    let mut terms: Vec<u64> = Vec::with_capacity(count);
    let mut set = HashSet::new();
    let mut x = 1u64;
    while terms.len() < count {
        // x is larger than every term, so it can only be the top of a progression
        let blocked = terms
            .iter()
            .rev()
            .take_while(|&&b| 2 * b > x)
            .any(|&b| set.contains(&(2 * b - x)));
        if !blocked {
            terms.push(x);
            set.insert(x);
        }
        x += 1;
    }
    ApFreeSequence { terms }
}

/// Work limit for sizing one `(d, k)` candidate.
const MAX_SPHERE_WORK: u64 = 4_000_000;

/// Digit bounds tried by [`behrend_sequence`]: every `d <= 32`, then a
/// geometric grid.
fn digit_grid() -> impl Iterator<Item = u64> {
    let mut d = 2u64;
    std::iter::from_fn(move || {
        let cur = d;
        d = if d < 32 { d + 1 } else { d + d / 5 };
        Some(cur)
    })
}

/// Behrend's sphere construction inside `[1, M]`.
///
/// Numbers are written with `k` digits in base `2d - 1`, the lower `k - 1`
/// digits below `d`, so adding two of them never carries. Digit vectors on
/// one sphere (fixed sum of squared digits) contain no three collinear
/// points, hence no 3-AP. The most significant digit is only limited by `M`.
/// A small grid of `(d, k)` is scanned and the most populous sphere overall
/// is returned, shifted by one into `[1, M]`.
pub fn behrend_sequence(max: u64) -> Result<ApFreeSequence> {
    if max < 10 {
        return Err(Error::ParamsOutOfRange(format!("M = {max}, need M >= 10")));
    }
    let mut best: Option<Sphere> = None;
    for k in 2u32..=24 {
        for d in digit_grid() {
            let Some(shape) = SphereShape::new(max, d, k) else {
                break;
            };
            let Some((radius, size)) = shape.most_populous() else {
                continue;
            };
            if best.as_ref().is_none_or(|b| size > b.size) {
                best = Some(Sphere {
                    shape,
                    radius,
                    size,
                });
            }
        }
    }
    let best = best.expect("M >= 10 admits a sphere");
    let mut terms = best.shape.members(best.radius);
    terms.sort_unstable();
    debug_assert_eq!(
        terms.len() as u64,
        best.size,
        "{:?} r={}",
        best.shape,
        best.radius
    );
    Ok(ApFreeSequence { terms })
}

struct Sphere {
    shape: SphereShape,
    radius: u64,
    size: u64,
}

#[derive(Debug, Clone, Copy)]
struct SphereShape {
    d: u64,
    /// Number of lower digits.
    low: u32,
    top_scale: u64,
    top_limit: u64,
}

impl SphereShape {
    fn new(max: u64, d: u64, k: u32) -> Option<Self> {
        let base = 2 * d - 1;
        let top_scale = base.checked_pow(k - 1)?;
        let low_max = (top_scale - 1) / 2;
        if low_max > max - 1 {
            return None;
        }
        Some(SphereShape {
            d,
            low: k - 1,
            top_scale,
            top_limit: (max - 1 - low_max) / top_scale,
        })
    }

    fn digit_ranges(&self) -> Vec<u64> {
        let mut r = vec![self.d; self.low as usize];
        r.push(self.top_limit + 1);
        r
    }

    /// `(radius, size)` of the largest sphere, smallest radius on ties.
    fn most_populous(&self) -> Option<(u64, u64)> {
        let ranges = self.digit_ranges();
        let points = ranges.iter().try_fold(1u64, |acc, &r| acc.checked_mul(r));
        let max_radius: u64 = ranges.iter().map(|r| (r - 1) * (r - 1)).sum();
        let dp_work = (max_radius + 1).saturating_mul(ranges.iter().sum());
        let pick = |it: &mut dyn Iterator<Item = (u64, u64)>| {
            it.fold(None, |acc: Option<(u64, u64)>, (r, c)| match acc {
                Some((_, bc)) if bc >= c => acc,
                _ => Some((r, c)),
            })
        };
        if dp_work <= MAX_SPHERE_WORK {
            let mut counts = vec![1u64];
            for &range in &ranges {
                let reach = counts.len() - 1 + ((range - 1) * (range - 1)) as usize;
                let mut next = vec![0u64; reach + 1];
                for (r, &c) in counts.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for x in 0..range {
                        next[r + (x * x) as usize] += c;
                    }
                }
                counts = next;
            }
            pick(&mut counts.into_iter().enumerate().map(|(r, c)| (r as u64, c)))
        } else if points.is_some_and(|p| p <= MAX_SPHERE_WORK) {
            let mut hist: HashMap<u64, u64> = HashMap::new();
            for_each_digits(&ranges, |digits| {
                *hist.entry(digits.iter().map(|x| x * x).sum()).or_default() += 1;
            });
            let mut entries: Vec<_> = hist.into_iter().collect();
            entries.sort_unstable();
            pick(&mut entries.into_iter())
        } else {
            None
        }
    }

    /// All numbers (shifted by one) whose digit vector lies on the sphere.
    fn members(&self, radius: u64) -> Vec<u64> {
        let ranges = self.digit_ranges();
        let base = 2 * self.d - 1;
        // most significant digit first; `room[i]` bounds what digits i.. can add
        let order: Vec<usize> = (0..ranges.len()).rev().collect();
        let mut room = vec![0u64; ranges.len() + 1];
        for (pos, &i) in order.iter().enumerate().rev() {
            room[pos] = room[pos + 1] + (ranges[i] - 1) * (ranges[i] - 1);
        }
        let weight = |i: usize| {
            if i == self.low as usize {
                self.top_scale
            } else {
                base.pow(i as u32)
            }
        };
        let mut out = Vec::new();
        let mut stack = vec![(0usize, radius, 0u64)];
        while let Some((pos, left, value)) = stack.pop() {
            if pos == order.len() {
                if left == 0 {
                    out.push(value + 1);
                }
                continue;
            }
            if left > room[pos] {
                continue;
            }
            let i = order[pos];
            for x in 0..ranges[i] {
                if x * x > left {
                    break;
                }
                stack.push((pos + 1, left - x * x, value + x * weight(i)));
            }
        }
        out
    }
}

fn for_each_digits(ranges: &[u64], mut f: impl FnMut(&[u64])) {
    let mut digits = vec![0u64; ranges.len()];
    loop {
        f(&digits);
        let mut i = 0;
        loop {
            if i == digits.len() {
                return;
            }
            digits[i] += 1;
            if digits[i] < ranges[i] {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}
