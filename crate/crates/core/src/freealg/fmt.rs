use std::fmt;

use num_traits::{One, Signed};

use super::{LinComb, Necklace, Rational, Word};

/// Display names for generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Names(Vec<String>);

impl Names {
    pub fn new(names: Vec<String>) -> Self {
        Names(names)
    }

    /// `x1, x2, ..., xr`.
    pub fn indexed(r: usize) -> Self {
        Names((1..=r).map(|i| format!("x{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> String {
        self.0.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1))
    }

    pub fn as_slice(&self) -> &[String] {
        &self.0
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters().iter().map(|g| self.get(g.index())).collect::<Vec<_>>().join("*")
    }

    pub fn poly(&self, p: &LinComb<Word>) -> String {
        render(p, |w| vec![w.len()], |w| self.word(w))
    }

    pub fn tensor<const N: usize>(&self, t: &LinComb<[Word; N]>) -> String {
        render(
            t,
            |k| {
                let mut r = vec![k.iter().map(Word::len).sum()];
                r.extend(k.iter().map(Word::len));
                r
            },
            |k| k.iter().map(|w| self.word(w)).collect::<Vec<_>>().join(" (x) "),
        )
    }

    pub fn necklace(&self, n: &Necklace) -> String {
        format!("[{}]", self.word(n.word()))
    }
}

/// Renders terms by descending rank (degree data), ascending key within a rank.
pub fn render<K: Ord + Clone>(
    t: &LinComb<K>,
    rank: impl Fn(&K) -> Vec<usize>,
    body: impl Fn(&K) -> String,
) -> String {
    if t.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&K, &Rational)> = t.iter().collect();
    terms.sort_by(|a, b| rank(b.0).cmp(&rank(a.0)).then_with(|| a.0.cmp(b.0)));
    let mut out = String::new();
    for (i, (k, c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        let b = body(k);
        if mag.is_one() {
            out.push_str(&b);
        } else if b == "1" {
            out.push_str(&mag.to_string());
        } else if let Some(rest) = b.strip_prefix("1 (x) ") {
            out.push_str(&format!("{mag} (x) {rest}"));
        } else {
            out.push_str(&format!("{mag}*{b}"));
        }
    }
    out
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.max_gen().map_or(0, |g| g.index() + 1);
        f.write_str(&Names::indexed(n).word(self))
    }
}
