use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A product of projective spaces with its standard affine atlas.
///
/// Homogeneous variables of all factors are concatenated; factor `f` owns
/// variables `offset(f) .. offset(f) + n_f + 1`. A chart picks one variable per
/// factor to be invertible, and charts are numbered in lexicographic order of
/// these choices (first factor most significant).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "VarietyDoc", into = "VarietyDoc")]
pub struct Variety {
    factors: Vec<usize>,
    offsets: Vec<usize>,
    charts: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct VarietyDoc {
    factors: Vec<usize>,
}

impl TryFrom<VarietyDoc> for Variety {
    type Error = Error;
    fn try_from(doc: VarietyDoc) -> Result<Self> {
        Variety::new(doc.factors)
    }
}

impl From<Variety> for VarietyDoc {
    fn from(v: Variety) -> Self {
        VarietyDoc { factors: v.factors }
    }
}

impl Variety {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.is_empty() || factors.contains(&0) {
            return Err(Error::DomainViolation(
                "factors must be projective spaces of dimension >= 1".into(),
            ));
        }
        let mut offsets = Vec::with_capacity(factors.len());
        let mut acc = 0;
        for &n in &factors {
            offsets.push(acc);
            acc += n + 1;
        }
        let mut charts: Vec<Vec<usize>> = vec![Vec::new()];
        for &n in &factors {
            charts = charts
                .into_iter()
                .flat_map(|c| {
                    (0..=n).map(move |i| {
                        let mut c = c.clone();
                        c.push(i);
                        c
                    })
                })
                .collect();
        }
        Ok(Self {
            factors,
            offsets,
            charts,
        })
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn offset(&self, f: usize) -> usize {
        self.offsets[f]
    }

    pub fn nvars(&self) -> usize {
        self.factors.iter().map(|n| n + 1).sum()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().sum()
    }

    pub fn chart_count(&self) -> usize {
        self.charts.len()
    }

    pub fn chart(&self, c: usize) -> &[usize] {
        &self.charts[c]
    }

    /// The factor owning homogeneous variable `v`.
    pub fn factor_of(&self, v: usize) -> usize {
        self.offsets
            .iter()
            .rposition(|&o| o <= v)
            .expect("variable in range")
    }

    /// The variable inverted on chart `c` in factor `f`.
    pub fn pole(&self, c: usize, f: usize) -> usize {
        self.offsets[f] + self.charts[c][f]
    }

    /// Variables allowed a negative exponent on the intersection of `charts`.
    pub fn poles(&self, charts: &[usize]) -> Vec<bool> {
        let mut p = vec![false; self.nvars()];
        for &c in charts {
            for f in 0..self.factors.len() {
                p[self.pole(c, f)] = true;
            }
        }
        p
    }

    /// Degree of an exponent vector in each factor.
    pub fn factor_degrees(&self, e: &[i64]) -> Vec<i64> {
        self.factors
            .iter()
            .zip(&self.offsets)
            .map(|(&n, &o)| e[o..=o + n].iter().sum())
            .collect()
    }

    /// Whether `X^e` is a regular function on the intersection of `charts`.
    pub fn is_regular(&self, e: &[i64], charts: &[usize]) -> bool {
        if self.factor_degrees(e).iter().any(|&d| d != 0) {
            return false;
        }
        let poles = self.poles(charts);
        e.iter().zip(&poles).all(|(&x, &p)| x >= 0 || p)
    }

    /// Strictly increasing chart tuples of length `q + 1`, in lexicographic order.
    pub fn tuples(&self, q: usize) -> Vec<Vec<usize>> {
        let n = self.chart_count();
        let k = q + 1;
        if k > n {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            out.push(cur.clone());
            let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
                break;
            };
            cur[i] += 1;
            for j in i + 1..k {
                cur[j] = cur[j - 1] + 1;
            }
        }
        out
    }

    /// The highest Čech degree with a nonzero cochain group.
    pub fn max_cech_degree(&self) -> usize {
        self.chart_count() - 1
    }

    pub fn variable_names(&self) -> Vec<String> {
        if self.factors.len() == 1 {
            return (0..=self.factors[0]).map(|i| format!("x{i}")).collect();
        }
        const LETTERS: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
        let mut names = Vec::new();
        for (f, &n) in self.factors.iter().enumerate() {
            let letter = LETTERS
                .get(f)
                .map(|s| s.to_string())
                .unwrap_or_else(|| format!("t{f}_"));
            names.extend((0..=n).map(|i| format!("{letter}{i}")));
        }
        names
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|n| format!("P{n}")).collect();
        f.write_str(&parts.join("x"))
    }
}

impl std::str::FromStr for Variety {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for part in s.trim().split(['x', 'X', '*']) {
            let part = part.trim();
            let n = part
                .strip_prefix('P')
                .or_else(|| part.strip_prefix('p'))
                .and_then(|d| d.trim_start_matches('^').parse::<usize>().ok())
                .ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: format!("unknown variety component {part:?}"),
                })?;
            factors.push(n);
        }
        Variety::new(factors)
    }
}

pub fn projective_space(n: usize) -> Result<Variety> {
    Variety::new(vec![n])
}

pub fn product(v: &Variety, w: &Variety) -> Variety {
    let mut f = v.factors.clone();
    f.extend_from_slice(&w.factors);
    Variety::new(f).expect("factors of supported varieties are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atlas_sizes() {
        let p1 = projective_space(1).unwrap();
        assert_eq!(p1.chart_count(), 2);
        let p2 = projective_space(2).unwrap();
        assert_eq!(p2.tuples(1).len(), 3);
        assert_eq!(p2.tuples(2).len(), 1);
        let p3 = projective_space(3).unwrap();
        assert_eq!(p3.max_cech_degree(), 3);
        assert!(p3.tuples(4).is_empty());
        let q = product(&p1, &p1);
        assert_eq!(q.chart_count(), 4);
        assert_eq!(q.dim(), 2);
        assert_eq!(q.chart(2), &[1, 0]);
        assert_eq!(q.to_string(), "P1xP1");
        assert_eq!("P1xP1".parse::<Variety>().unwrap(), q);
        assert!(projective_space(0).is_err());
    }

    #[test]
    fn regularity() {
        let p1 = projective_space(1).unwrap();
        assert!(p1.is_regular(&[1, -1], &[1]));
        assert!(!p1.is_regular(&[1, -1], &[0]));
        assert!(p1.is_regular(&[1, -1], &[0, 1]));
        assert!(!p1.is_regular(&[1, 0], &[0, 1]));
    }
}
