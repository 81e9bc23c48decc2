use std::collections::HashMap;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::{
    angle_from_turns, Angle, InhomHalfspace, Label, Semicircle, StructuredSupport,
};
use crate::rational::Rational;

/// Largest common mass denominator a distribution may use. Keeps
/// `weight * n` products exact in `i128`.
pub const MAX_TOTAL_WEIGHT: u64 = 1 << 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    /// A direction in the plane.
    Angle(Angle),
    /// Index into a [`StructuredSupport`].
    Point(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledAtom {
    pub location: Location,
    pub label: Label,
    #[serde(with = "crate::rational::json")]
    pub mass: Rational,
}

impl LabeledAtom {
    pub fn new(location: Location, label: Label, mass: Rational) -> Self {
        Self {
            location,
            label,
            mass,
        }
    }

    pub fn at_angle(theta: Angle, label: Label, mass: Rational) -> Self {
        Self::new(Location::Angle(theta), label, mass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistMode {
    Circle2D,
    Structured { d: usize, k: usize },
}

/// A finite-support distribution over labelled locations with exact masses.
///
/// Masses are held as integer weights over one common denominator
/// (`total_weight`), which makes every error an exact ratio of integers.
#[derive(Clone, Debug)]
pub struct LabeledDist {
    mode: DistMode,
    support: Option<Arc<StructuredSupport>>,
    locations: Vec<Location>,
    labels: Vec<Label>,
    weights: Vec<u64>,
    cumulative: Vec<u64>,
    total: u64,
    uniform_weight: Option<u64>,
}

/// Build a planar distribution. Masses must be non-negative and sum to one;
/// repeated `(location, label)` pairs are merged.
pub fn make_dist(atoms: Vec<LabeledAtom>) -> Result<LabeledDist> {
    LabeledDist::new(None, atoms)
}

/// Build a distribution over a structured support.
pub fn make_structured_dist(
    support: Arc<StructuredSupport>,
    atoms: Vec<LabeledAtom>,
) -> Result<LabeledDist> {
    LabeledDist::new(Some(support), atoms)
}

impl LabeledDist {
    fn new(support: Option<Arc<StructuredSupport>>, atoms: Vec<LabeledAtom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidDistribution("no atoms".into()));
        }
        let mode = match &support {
            None => DistMode::Circle2D,
            Some(s) => DistMode::Structured { d: s.d(), k: s.k() },
        };
        let mut merged: Vec<LabeledAtom> = Vec::with_capacity(atoms.len());
        let mut seen: HashMap<(Location, Label), usize> = HashMap::with_capacity(atoms.len());
        for atom in atoms {
            if atom.mass < Rational::from_integer(0) {
                return Err(Error::InvalidDistribution(format!(
                    "negative mass {}",
                    atom.mass
                )));
            }
            match (&atom.location, &support) {
                (Location::Angle(_), None) => {}
                (Location::Point(i), Some(s)) if *i < s.len() => {}
                (Location::Point(i), Some(_)) => {
                    return Err(Error::InvalidDistribution(format!(
                        "point index {i} out of range"
                    )))
                }
                _ => {
                    return Err(Error::InvalidDistribution(
                        "atom location does not match the distribution mode".into(),
                    ))
                }
            }
            match seen.get(&(atom.location, atom.label)) {
                Some(&at) => merged[at].mass += atom.mass,
                None => {
                    seen.insert((atom.location, atom.label), merged.len());
                    merged.push(atom);
                }
            }
        }

        let mut common: i128 = 1;
        for a in &merged {
            common = common.lcm(a.mass.denom());
            if common > MAX_TOTAL_WEIGHT as i128 {
                return Err(Error::InvalidDistribution(
                    "common mass denominator exceeds 2^62".into(),
                ));
            }
        }
        let weights: Vec<u64> = merged
            .iter()
            .map(|a| (a.mass.numer() * (common / a.mass.denom())) as u64)
            .collect();
        let mut sum: u128 = 0;
        let cumulative: Vec<u64> = weights
            .iter()
            .map(|&w| {
                sum += w as u128;
                sum.min(u64::MAX as u128) as u64
            })
            .collect();
        if sum != common as u128 {
            return Err(Error::InvalidDistribution(format!(
                "masses sum to {}/{} instead of 1",
                sum, common
            )));
        }
        let first = weights[0];
        let uniform_weight = (first > 0 && weights.iter().all(|&w| w == first)).then_some(first);
        Ok(Self {
            mode,
            support,
            locations: merged.iter().map(|a| a.location).collect(),
            labels: merged.iter().map(|a| a.label).collect(),
            weights,
            cumulative,
            total: common as u64,
            uniform_weight,
        })
    }

    /// `m` equally weighted directions `j/m`, labelled by `target`.
    pub fn uniform_circle(m: usize, target: &Semicircle) -> Result<Self> {
        if m == 0 {
            return invalid("need at least one atom");
        }
        let mass = Rational::new(1, m as i128);
        let atoms = (0..m)
            .map(|j| {
                let theta = angle_from_turns(j as i128, m as i128)?;
                Ok(LabeledAtom::at_angle(theta, target.classify(&theta), mass))
            })
            .collect::<Result<Vec<_>>>()?;
        make_dist(atoms)
    }

    /// Uniform over every point of `support`, labelled by `target`.
    pub fn uniform_structured(
        support: Arc<StructuredSupport>,
        target: &InhomHalfspace,
    ) -> Result<Self> {
        let mass = Rational::new(1, support.len() as i128);
        let atoms = (0..support.len())
            .map(|i| {
                Ok(LabeledAtom::new(
                    Location::Point(i),
                    support.classify(target, i)?,
                    mass,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        make_structured_dist(support, atoms)
    }

    pub fn mode(&self) -> DistMode {
        self.mode
    }

    pub fn support(&self) -> Option<&Arc<StructuredSupport>> {
        self.support.as_ref()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn location(&self, i: usize) -> Location {
        self.locations[i]
    }

    /// Direction of atom `i`; `None` for structured atoms in dimension > 2.
    pub fn angle(&self, i: usize) -> Option<Angle> {
        match self.locations[i] {
            Location::Angle(a) => Some(a),
            Location::Point(p) => {
                let s = self.support.as_ref()?;
                (s.d() == 2).then(|| s.points()[p].angle)
            }
        }
    }

    pub fn label(&self, i: usize) -> Label {
        self.labels[i]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn weight(&self, i: usize) -> u64 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Common denominator of all masses.
    pub fn total_weight(&self) -> u64 {
        self.total
    }

    pub fn mass(&self, i: usize) -> Rational {
        Rational::new(self.weights[i] as i128, self.total as i128)
    }

    pub fn atom(&self, i: usize) -> LabeledAtom {
        LabeledAtom::new(self.locations[i], self.labels[i], self.mass(i))
    }

    pub fn atoms(&self) -> Vec<LabeledAtom> {
        (0..self.len()).map(|i| self.atom(i)).collect()
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform_weight.is_some()
    }

    /// Atom selected by an integer variate `v in [0, total_weight)`: the first
    /// atom whose cumulative weight strictly exceeds `v`.
    #[inline]
    pub(crate) fn atom_for_weight(&self, v: u64) -> usize {
        match self.uniform_weight {
            Some(w) => (v / w) as usize,
            None => self.cumulative.partition_point(|&c| c <= v),
        }
    }

    /// Whether every atom carries the label `target` assigns to its location.
    pub fn is_realized_by(&self, target: &dyn Classifier) -> Result<bool> {
        for i in 0..self.len() {
            if target.classify_atom(self, i)? != self.labels[i] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn ratio(&self, weight: u64) -> Rational {
        Rational::new(weight as i128, self.total as i128)
    }
}

/// Anything that labels the atoms of a [`LabeledDist`].
pub trait Classifier: Sync {
    fn classify_atom(&self, dist: &LabeledDist, atom: usize) -> Result<Label>;
}

impl Classifier for Semicircle {
    #[inline]
    fn classify_atom(&self, dist: &LabeledDist, atom: usize) -> Result<Label> {
        match dist.angle(atom) {
            Some(theta) => Ok(self.classify(&theta)),
            None => invalid("semicircles classify planar directions only"),
        }
    }
}

impl Classifier for InhomHalfspace {
    #[inline]
    fn classify_atom(&self, dist: &LabeledDist, atom: usize) -> Result<Label> {
        match dist.location(atom) {
            Location::Angle(theta) => {
                let r = theta.radians();
                self.classify(&[r.cos(), r.sin()])
            }
            Location::Point(p) => {
                let support = dist
                    .support()
                    .expect("structured atoms carry their support");
                support.classify(self, p)
            }
        }
    }
}

/// Relabel `atoms` by `target`, producing a realizable distribution.
pub fn label_by_target(
    support: Option<Arc<StructuredSupport>>,
    atoms: &[(Location, Rational)],
    target: &dyn Classifier,
) -> Result<LabeledDist> {
    let provisional: Vec<LabeledAtom> = atoms
        .iter()
        .map(|&(loc, mass)| LabeledAtom::new(loc, Label::Pos, mass))
        .collect();
    let unlabeled = LabeledDist::new(support.clone(), provisional)?;
    let relabeled = (0..unlabeled.len())
        .map(|i| {
            Ok(LabeledAtom::new(
                unlabeled.location(i),
                target.classify_atom(&unlabeled, i)?,
                unlabeled.mass(i),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    LabeledDist::new(support, relabeled)
}

/// Exact `Pr(h(x) != y)`.
pub fn true_error(dist: &LabeledDist, h: &dyn Classifier) -> Result<Rational> {
    let mut wrong: u128 = 0;
    for i in 0..dist.len() {
        if h.classify_atom(dist, i)? != dist.labels[i] {
            wrong += dist.weights[i] as u128;
        }
    }
    Ok(Rational::new(wrong as i128, dist.total as i128))
}
