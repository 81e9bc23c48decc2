use serde::{Deserialize, Serialize};

use super::dist::{Classifier, LabeledDist};
use super::rng::counter_u64;
use crate::error::{invalid, Error, Result};
use crate::rational::Rational;

/// Multiplicity vector of `n` draws from one [`LabeledDist`].
///
/// Small supports store one counter per atom; large supports with few draws
/// store only the `(atom, count)` pairs that occurred, sorted by atom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    atoms: usize,
    n: u64,
    seed: Option<u64>,
    counts: Counts,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Counts {
    Dense(Vec<u32>),
    Sparse(Vec<(u32, u32)>),
}

const DENSE_ATOM_LIMIT: usize = 1 << 16;

fn prefer_dense(atoms: usize, n: u64) -> bool {
    atoms <= DENSE_ATOM_LIMIT || (atoms as u64) <= 4 * n
}

impl Sample {
    /// Sample with explicit multiplicities, one per atom of `dist`.
    pub fn from_counts(dist: &LabeledDist, counts: &[u64]) -> Result<Self> {
        if counts.len() != dist.len() {
            return invalid(format!(
                "{} counts supplied for a distribution with {} atoms",
                counts.len(),
                dist.len()
            ));
        }
        if counts.iter().any(|&c| c > u32::MAX as u64) {
            return invalid("multiplicity exceeds 2^32 - 1");
        }
        let n: u64 = counts.iter().sum();
        let counts = if prefer_dense(dist.len(), n) {
            Counts::Dense(counts.iter().map(|&c| c as u32).collect())
        } else {
            Counts::Sparse(
                counts
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(i, &c)| (i as u32, c as u32))
                    .collect(),
            )
        };
        Ok(Self {
            atoms: dist.len(),
            n,
            seed: None,
            counts,
        })
    }

    /// One copy of every atom.
    pub fn full_support(dist: &LabeledDist) -> Self {
        Self::from_counts(dist, &vec![1; dist.len()]).expect("counts match the distribution")
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Seed the sample was drawn with, if it came from [`sample_n`].
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn atom_count(&self) -> usize {
        self.atoms
    }

    pub fn count(&self, atom: usize) -> u64 {
        match &self.counts {
            Counts::Dense(v) => v.get(atom).copied().unwrap_or(0) as u64,
            Counts::Sparse(v) => v
                .binary_search_by_key(&(atom as u32), |&(i, _)| i)
                .map(|at| v[at].1 as u64)
                .unwrap_or(0),
        }
    }

    /// `(atom, multiplicity)` for every atom drawn at least once, by atom index.
    pub fn nonzero(&self) -> Box<dyn Iterator<Item = (usize, u64)> + '_> {
        match &self.counts {
            Counts::Dense(v) => Box::new(
                v.iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(i, &c)| (i, c as u64)),
            ),
            Counts::Sparse(v) => Box::new(v.iter().map(|&(i, c)| (i as usize, c as u64))),
        }
    }

    pub fn distinct(&self) -> usize {
        match &self.counts {
            Counts::Dense(v) => v.iter().filter(|&&c| c > 0).count(),
            Counts::Sparse(v) => v.len(),
        }
    }

    /// Dense multiplicity vector.
    pub fn to_counts(&self) -> Vec<u64> {
        let mut out = vec![0; self.atoms];
        for (i, c) in self.nonzero() {
            out[i] = c;
        }
        out
    }

    fn check(&self, dist: &LabeledDist) -> Result<()> {
        if self.atoms != dist.len() {
            return Err(Error::InvalidInput(format!(
                "sample refers to {} atoms but the distribution has {}",
                self.atoms,
                dist.len()
            )));
        }
        Ok(())
    }
}

/// Draw `n` i.i.d. atoms. Draw `c` uses the variate `counter_u64(seed, c)`,
/// scaled to an integer `v` in `[0, total_weight)`, and picks the first atom
/// whose cumulative weight exceeds `v`.
pub fn sample_n(dist: &LabeledDist, n: u64, seed: u64) -> Sample {
    let total = dist.total_weight() as u128;
    let draw = |c: u64| dist.atom_for_weight(((counter_u64(seed, c) as u128 * total) >> 64) as u64);
    let counts = if prefer_dense(dist.len(), n) {
        let mut v = vec![0u32; dist.len()];
        for c in 0..n {
            v[draw(c)] += 1;
        }
        Counts::Dense(v)
    } else {
        let mut idx: Vec<u32> = (0..n).map(|c| draw(c) as u32).collect();
        idx.sort_unstable();
        let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(idx.len());
        for i in idx {
            match pairs.last_mut() {
                Some((last, c)) if *last == i => *c += 1,
                _ => pairs.push((i, 1)),
            }
        }
        Counts::Sparse(pairs)
    };
    Sample {
        atoms: dist.len(),
        n,
        seed: Some(seed),
        counts,
    }
}

/// Number of sampled points `h` gets wrong.
pub fn empirical_mistakes(sample: &Sample, dist: &LabeledDist, h: &dyn Classifier) -> Result<u64> {
    sample.check(dist)?;
    let mut wrong = 0;
    for (i, c) in sample.nonzero() {
        if h.classify_atom(dist, i)? != dist.label(i) {
            wrong += c;
        }
    }
    Ok(wrong)
}

/// Exact `|{i : h(x_i) != y_i}| / n`.
pub fn empirical_error(
    sample: &Sample,
    dist: &LabeledDist,
    h: &dyn Classifier,
) -> Result<Rational> {
    if sample.n() == 0 {
        return Err(Error::UndefinedEmpiricalError);
    }
    let wrong = empirical_mistakes(sample, dist, h)?;
    Ok(Rational::new(wrong as i128, sample.n() as i128))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{make_dist, true_error, LabeledAtom};
    use crate::geometry::{angle_from_turns, Angle, Label, Semicircle};

    fn two_atoms() -> LabeledDist {
        make_dist(vec![
            LabeledAtom::at_angle(
                angle_from_turns(1, 4).unwrap(),
                Label::Pos,
                Rational::new(1, 2),
            ),
            LabeledAtom::at_angle(
                angle_from_turns(3, 4).unwrap(),
                Label::Neg,
                Rational::new(1, 2),
            ),
        ])
        .unwrap()
    }

    #[test]
    fn degenerate_samples() {
        let d = make_dist(vec![LabeledAtom::at_angle(
            Angle::ZERO,
            Label::Pos,
            Rational::from_integer(1),
        )])
        .unwrap();
        assert_eq!(sample_n(&d, 5, 3).to_counts(), vec![5]);
        let s = sample_n(&two_atoms(), 0, 3);
        assert_eq!(s.to_counts(), vec![0, 0]);
        let h = Semicircle::left_open(Angle::ZERO);
        assert!(matches!(
            empirical_error(&s, &two_atoms(), &h),
            Err(Error::UndefinedEmpiricalError)
        ));
    }

    #[test]
    fn balanced_coin() {
        let s = sample_n(&two_atoms(), 1_000_000, 2024);
        let c = s.count(0) as i64;
        assert!((c - 500_000).abs() <= 2500, "{c}");
    }

    #[test]
    fn deterministic() {
        let d = LabeledDist::uniform_circle(1 << 18, &Semicircle::left_open(Angle::ZERO)).unwrap();
        let a = sample_n(&d, 1000, 77);
        let b = sample_n(&d, 1000, 77);
        assert_eq!(a, b);
        assert_ne!(a, sample_n(&d, 1000, 78));
        assert_eq!(a.to_counts().iter().sum::<u64>(), 1000);
    }

    #[test]
    fn count_arithmetic() {
        let d = two_atoms();
        let h = Semicircle::left_open(Angle::ZERO);
        let s = Sample::from_counts(&d, &[3, 1]).unwrap();
        assert_eq!(
            empirical_error(&s, &d, &h).unwrap(),
            Rational::from_integer(0)
        );
        let wrong = Semicircle::left_open(angle_from_turns(1, 2).unwrap());
        assert_eq!(
            empirical_error(&s, &d, &wrong).unwrap(),
            Rational::from_integer(1)
        );
        let mixed = make_dist(vec![
            LabeledAtom::at_angle(
                angle_from_turns(1, 4).unwrap(),
                Label::Pos,
                Rational::new(1, 2),
            ),
            LabeledAtom::at_angle(
                angle_from_turns(3, 4).unwrap(),
                Label::Pos,
                Rational::new(1, 2),
            ),
        ])
        .unwrap();
        let s = Sample::from_counts(&mixed, &[3, 1]).unwrap();
        assert_eq!(
            empirical_error(&s, &mixed, &h).unwrap(),
            Rational::new(1, 4)
        );
    }

    #[test]
    fn proportional_sample_matches_truth() {
        let d = LabeledDist::uniform_circle(8, &Semicircle::left_open(Angle::ZERO)).unwrap();
        let s = Sample::from_counts(&d, &[2; 8]).unwrap();
        for j in 0..16 {
            let h = Semicircle::left_open(angle_from_turns(j, 16).unwrap());
            assert_eq!(
                empirical_error(&s, &d, &h).unwrap(),
                true_error(&d, &h).unwrap()
            );
        }
    }

    #[test]
    fn law_of_large_numbers() {
        let target = Semicircle::left_open(Angle::ZERO);
        let d = LabeledDist::uniform_circle(1 << 16, &target).unwrap();
        let h = Semicircle::left_open(angle_from_turns(1, 4).unwrap());
        assert_eq!(true_error(&d, &h).unwrap(), Rational::new(1, 2));
        let h = Semicircle::left_open(angle_from_turns(1, 8).unwrap());
        assert_eq!(true_error(&d, &h).unwrap(), Rational::new(1, 4));
        let s = sample_n(&d, 100_000, 5);
        let gap = empirical_error(&s, &d, &h).unwrap() - Rational::new(1, 4);
        assert!(crate::rational::to_f64(&gap).abs() <= 0.01);
    }

    #[test]
    fn sparse_and_dense_agree() {
        let d = LabeledDist::uniform_circle(1 << 17, &Semicircle::left_open(Angle::ZERO)).unwrap();
        let s = sample_n(&d, 500, 9);
        let dense = Sample::from_counts(&d, &s.to_counts()).unwrap();
        assert_eq!(
            s.nonzero().collect::<Vec<_>>(),
            dense.nonzero().collect::<Vec<_>>()
        );
    }
}
