//! Kolmogorov and Dempster-Shafer probabilities on a finite set `Omega`.
//!
//! Subsets of `Omega = {0, .., n-1}` are bitmasks, `n <= 16`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::TrialRng;

pub type Subset = u32;

pub const MAX_OMEGA: usize = 16;
pub const MAX_SETS: usize = 12;
const MASS_TOL: f64 = 1e-12;

fn full_set(size: usize) -> Subset {
    ((1u64 << size) - 1) as Subset
}

fn check_size(size: usize) -> Result<()> {
    if size == 0 || size > MAX_OMEGA {
        return Err(Error::InvalidMeasure(format!(
            "|Omega| = {size} outside 1..={MAX_OMEGA}"
        )));
    }
    Ok(())
}

/// A Kolmogorov probability given by its point masses.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMeasure {
    point_masses: Vec<f64>,
}

impl FiniteMeasure {
    pub fn new(point_masses: Vec<f64>) -> Result<Self> {
        check_size(point_masses.len())?;
        if point_masses.iter().any(|&m| !m.is_finite() || m < 0.0) {
            return Err(Error::InvalidMeasure(
                "point masses must be finite and nonnegative".into(),
            ));
        }
        let total: f64 = point_masses.iter().sum();
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidMeasure(format!("total mass {total}")));
        }
        Ok(FiniteMeasure { point_masses })
    }

    pub fn random(rng: &mut TrialRng, size: usize) -> Self {
        let raw: Vec<f64> = (0..size).map(|_| rng.unit()).collect();
        let total: f64 = raw.iter().sum();
        FiniteMeasure {
            point_masses: raw.into_iter().map(|m| m / total).collect(),
        }
    }

    pub fn omega_size(&self) -> usize {
        self.point_masses.len()
    }

    pub fn omega(&self) -> Subset {
        full_set(self.omega_size())
    }

    pub fn p(&self, a: Subset) -> f64 {
        self.point_masses
            .iter()
            .enumerate()
            .filter(|(i, _)| a & (1 << i) != 0)
            .map(|(_, m)| m)
            .sum()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: MassRepr = serde_json::from_str(s).map_err(|e| Error::parse("measure", e))?;
        check_size(repr.omega_size)?;
        let mut point_masses = vec![0.0; repr.omega_size];
        for (key, m) in repr.parse_masses()? {
            if key.count_ones() != 1 || key >= (1 << repr.omega_size) {
                return Err(Error::InvalidMeasure(format!("key {key} is not a singleton of Omega")));
            }
            point_masses[key.trailing_zeros() as usize] += m;
        }
        FiniteMeasure::new(point_masses)
    }

    pub fn to_json(&self) -> String {
        let masses = self
            .point_masses
            .iter()
            .enumerate()
            .map(|(i, &m)| ((1u32 << i).to_string(), m))
            .collect();
        serde_json::to_string(&MassRepr {
            omega_size: self.omega_size(),
            masses,
        })
        .expect("measure serializes")
    }
}

/// `(delta, delta~)`: the Möbius sums over nonempty index sets `E` of
/// `(-1)^(n-|E|) p(union / intersection over E)`, closed by
/// `(-1)^n p(intersection / union of all)`. Both vanish for any measure.
pub fn mobius_delta(measure: &FiniteMeasure, sets: &[Subset]) -> Result<(f64, f64)> {
    let n = sets.len();
    if n == 0 || n > MAX_SETS {
        return Err(Error::PreconditionViolated(format!(
            "need 1..={MAX_SETS} sets, got {n}"
        )));
    }
    let omega = measure.omega();
    let mut m = 0.0;
    let mut m_dual = 0.0;
    for e in 1u32..(1 << n) {
        let (mut union, mut inter) = (0, omega);
        for (i, &s) in sets.iter().enumerate() {
            if e & (1 << i) != 0 {
                union |= s;
                inter &= s;
            }
        }
        let sign = if (n - e.count_ones() as usize).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        m += sign * measure.p(union & omega);
        m_dual += sign * measure.p(inter);
    }
    let all_union = sets.iter().fold(0, |a, &s| a | s) & omega;
    let all_inter = sets.iter().fold(omega, |a, &s| a & s);
    let closing = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok((
        m + closing * measure.p(all_inter),
        m_dual + closing * measure.p(all_union),
    ))
}

/// `p(A) - sum_i p(A n B_i)` for a partition `B_1..B_n` of `Omega`.
pub fn total_probability_residual(measure: &FiniteMeasure, a: Subset, partition: &[Subset]) -> Result<f64> {
    let omega = measure.omega();
    let mut seen = 0;
    for &b in partition {
        if b & !omega != 0 || b & seen != 0 {
            return Err(Error::InvalidPartition(format!(
                "block {b:#b} overlaps or leaves Omega"
            )));
        }
        seen |= b;
    }
    if seen != omega {
        return Err(Error::InvalidPartition("blocks do not cover Omega".into()));
    }
    let split: f64 = partition.iter().map(|&b| measure.p(a & b)).sum();
    Ok(measure.p(a & omega) - split)
}

/// A Dempster-Shafer basic mass assignment over subsets of `Omega`.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    omega_size: usize,
    masses: BTreeMap<Subset, f64>,
}

impl MassFunction {
    pub fn new(omega_size: usize, masses: BTreeMap<Subset, f64>) -> Result<Self> {
        check_size(omega_size)?;
        let omega = full_set(omega_size);
        for (&k, &m) in &masses {
            if k == 0 && m != 0.0 {
                return Err(Error::InvalidMeasure("the empty set carries mass".into()));
            }
            if k & !omega != 0 {
                return Err(Error::InvalidMeasure(format!("focal element {k} outside Omega")));
            }
            if !m.is_finite() || m < 0.0 {
                return Err(Error::InvalidMeasure(format!("mass {m} on {k}")));
            }
        }
        let total: f64 = masses.values().sum();
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidMeasure(format!("total mass {total}")));
        }
        let masses = masses.into_iter().filter(|&(_, m)| m > 0.0).collect();
        Ok(MassFunction { omega_size, masses })
    }

    /// Mass spread over `focal` random nonempty subsets.
    pub fn random(rng: &mut TrialRng, omega_size: usize, focal: usize) -> Self {
        let omega = full_set(omega_size) as usize;
        let mut masses = BTreeMap::new();
        for _ in 0..focal.max(1) {
            let k = rng.range(1, omega) as Subset;
            *masses.entry(k).or_insert(0.0) += rng.unit() + 1e-3;
        }
        let total: f64 = masses.values().sum();
        masses.values_mut().for_each(|m| *m /= total);
        MassFunction { omega_size, masses }
    }

    /// The Kolmogorov measure viewed as masses on singletons.
    pub fn from_measure(measure: &FiniteMeasure) -> Self {
        let masses = measure
            .point_masses
            .iter()
            .enumerate()
            .filter(|&(_, &m)| m > 0.0)
            .map(|(i, &m)| (1 << i, m))
            .collect();
        MassFunction {
            omega_size: measure.omega_size(),
            masses,
        }
    }

    pub fn omega_size(&self) -> usize {
        self.omega_size
    }

    pub fn omega(&self) -> Subset {
        full_set(self.omega_size)
    }

    pub fn masses(&self) -> &BTreeMap<Subset, f64> {
        &self.masses
    }

    /// `l(A)`: total mass of focal elements inside `A`.
    pub fn belief(&self, a: Subset) -> f64 {
        self.masses
            .iter()
            .filter(|&(&k, _)| k & !a == 0)
            .fold(0.0, |acc, (_, m)| acc + m)
    }

    /// `u(A) = 1 - l(complement of A)`.
    pub fn plausibility(&self, a: Subset) -> f64 {
        1.0 - self.belief(self.omega() & !a)
    }

    pub fn belief_plausibility(&self, a: Subset) -> (f64, f64) {
        (self.belief(a), self.plausibility(a))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: MassRepr = serde_json::from_str(s).map_err(|e| Error::parse("mass function", e))?;
        MassFunction::new(repr.omega_size, repr.parse_masses()?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MassRepr {
            omega_size: self.omega_size,
            masses: self.masses.iter().map(|(k, &m)| (k.to_string(), m)).collect(),
        })
        .expect("mass function serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct MassRepr {
    omega_size: usize,
    masses: BTreeMap<String, f64>,
}

impl MassRepr {
    fn parse_masses(&self) -> Result<BTreeMap<Subset, f64>> {
        self.masses
            .iter()
            .map(|(k, &m)| {
                let key = k.trim().parse::<Subset>().map_err(|e| Error::parse("subset key", e))?;
                Ok((key, m))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_set(rng: &mut TrialRng, size: usize) -> Subset {
        rng.range(0, full_set(size) as usize) as Subset
    }

    /// Inclusion-exclusion written out for three sets.
    fn delta3(m: &FiniteMeasure, a: Subset, b: Subset, c: Subset) -> (f64, f64) {
        let p = |s| m.p(s);
        let d = p(a | b | c) - p(a | b) - p(a | c) - p(b | c) + p(a) + p(b) + p(c) - p(a & b & c);
        let dt = p(a & b & c) - p(a & b) - p(a & c) - p(b & c) + p(a) + p(b) + p(c) - p(a | b | c);
        (d, dt)
    }

    #[test]
    fn measure_validation() {
        assert!(FiniteMeasure::new(vec![0.5, 0.6]).is_err());
        assert!(FiniteMeasure::new(vec![1.5, -0.5]).is_err());
        assert!(FiniteMeasure::new(vec![]).is_err());
        assert!(FiniteMeasure::new(vec![1.0 / 17.0; 17]).is_err());
        let m = FiniteMeasure::new(vec![0.2, 0.3, 0.5]).unwrap();
        assert_eq!(m.p(0), 0.0);
        assert!((m.p(m.omega()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn delta_examples() {
        let m = FiniteMeasure::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let (d, _) = mobius_delta(&m, &[0b0011, 0b1100]).unwrap();
        assert!((d - (m.p(0b1111) - m.p(0b0011) - m.p(0b1100))).abs() < 1e-15);
        assert!(d.abs() < 1e-12);
        assert_eq!(mobius_delta(&m, &[0b0110]).unwrap(), (0.0, 0.0));
        assert!(mobius_delta(&m, &[]).is_err());

        let mut rng = TrialRng::new(1);
        for _ in 0..50 {
            let m = FiniteMeasure::random(&mut rng, 6);
            let sets: Vec<Subset> = (0..3).map(|_| random_set(&mut rng, 6)).collect();
            let (d, dt) = mobius_delta(&m, &sets).unwrap();
            let (e, et) = delta3(&m, sets[0], sets[1], sets[2]);
            assert!((d - e).abs() < 1e-12 && (dt - et).abs() < 1e-12);
            assert!(d.abs() <= 1e-12 && dt.abs() <= 1e-12);
        }
    }

    #[test]
    fn delta_vanishes_broadly() {
        let mut rng = TrialRng::new(2);
        for _ in 0..1000 {
            let size = rng.range(1, MAX_OMEGA);
            let m = FiniteMeasure::random(&mut rng, size);
            let n = rng.range(1, 6);
            let sets: Vec<Subset> = (0..n).map(|_| random_set(&mut rng, size)).collect();
            let (d, dt) = mobius_delta(&m, &sets).unwrap();
            assert!(d.abs() <= 1e-12 && dt.abs() <= 1e-12, "{d} {dt}");
        }
    }

    #[test]
    fn total_probability() {
        let mut rng = TrialRng::new(3);
        let m = FiniteMeasure::random(&mut rng, 8);
        let a = 0b1011_0110;
        let b = 0b0101_0101;
        assert!(total_probability_residual(&m, a, &[b, m.omega() & !b]).unwrap().abs() <= 1e-12);
        assert!(total_probability_residual(&m, a, &[m.omega()]).unwrap().abs() <= 1e-12);
        for _ in 0..50 {
            let mut blocks = [0u32; 3];
            for i in 0..8 {
                blocks[rng.range(0, 2)] |= 1 << i;
            }
            let a = random_set(&mut rng, 8);
            assert!(total_probability_residual(&m, a, &blocks).unwrap().abs() <= 1e-12);
        }
        assert!(matches!(
            total_probability_residual(&m, a, &[0b11, 0b10, m.omega() & !0b11]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            total_probability_residual(&m, a, &[0b1]),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn belief_limits() {
        let ignorance = MassFunction::new(3, BTreeMap::from([(0b111, 1.0)])).unwrap();
        for a in 1..0b111 {
            assert_eq!(ignorance.belief_plausibility(a), (0.0, 1.0));
        }
        let m = FiniteMeasure::new(vec![0.2, 0.3, 0.5]).unwrap();
        let mf = MassFunction::from_measure(&m);
        for a in 0..=0b111 {
            let (l, u) = mf.belief_plausibility(a);
            assert!((l - m.p(a)).abs() < 1e-15 && (u - m.p(a)).abs() < 1e-12);
        }
        assert!(MassFunction::new(2, BTreeMap::from([(0, 0.5), (1, 0.5)])).is_err());
        assert!(MassFunction::new(2, BTreeMap::from([(4, 1.0)])).is_err());
    }

    #[test]
    fn belief_inequalities() {
        let mut rng = TrialRng::new(4);
        for _ in 0..500 {
            let size = rng.range(1, 8);
            let mf = MassFunction::random(&mut rng, size, 5);
            let a = random_set(&mut rng, size);
            let b = random_set(&mut rng, size);
            let l = |s| mf.belief(s);
            let u = |s| mf.plausibility(s);
            assert!(l(a | b) - l(a) - l(b) + l(a & b) >= -1e-12);
            assert!(u(a | b) - u(a) - u(b) + u(a & b) <= 1e-12);
            let abar = mf.omega() & !a;
            assert!(l(a) <= u(a) + 1e-12);
            assert!(l(a) + l(abar) <= 1.0 + 1e-12);
            assert!(u(a) + u(abar) >= 1.0 - 1e-12);
            assert!(((1.0 - l(a) - l(abar)) - (u(a) + u(abar) - 1.0)).abs() <= 1e-12);
        }
    }

    #[test]
    fn json_round_trip() {
        let mf = MassFunction::new(3, BTreeMap::from([(0b011, 0.25), (0b111, 0.75)])).unwrap();
        let s = mf.to_json();
        assert_eq!(s, r#"{"omega_size":3,"masses":{"3":0.25,"7":0.75}}"#);
        assert_eq!(MassFunction::from_json(&s).unwrap(), mf);
        let m = FiniteMeasure::new(vec![0.25, 0.75]).unwrap();
        assert_eq!(FiniteMeasure::from_json(&m.to_json()).unwrap(), m);
        assert!(FiniteMeasure::from_json(r#"{"omega_size":2,"masses":{"3":1.0}}"#).is_err());
        assert!(MassFunction::from_json(r#"{"omega_size":2,"masses":{"x":1.0}}"#).is_err());
    }
}
