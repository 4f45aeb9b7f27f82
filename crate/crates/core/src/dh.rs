//! Piecewise-quadratic Duistermaat-Heckman profiles over an interval or a
//! circle ℝ/Tℤ, and their exact validity checks.
//!
//! A fixed point with weights (w₁, w₂, w₃) at level c changes the profile by
//! (t − c)²/(w₁w₂w₃) when crossed in increasing t. This normalization is read
//! off from published profiles rather than derived, and reports say so.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::lattice::{AmbientVector, Lattice};
use crate::report::CheckResult;

pub const JUMP_NORMALIZATION_NOTE: &str =
    "inferred normalization: jump = Σ (t−c)²/(w₁w₂w₃), no 1/(n−1)! factor";

/// c0 + c1·t + c2·t².
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadPoly {
    pub c0: Rational,
    pub c1: Rational,
    pub c2: Rational,
}

impl QuadPoly {
    pub fn new(c0: Rational, c1: Rational, c2: Rational) -> Self {
        QuadPoly { c0, c1, c2 }
    }

    pub fn from_ints(c0: i64, c1: i64, c2: i64) -> Self {
        Self::new(c0.into(), c1.into(), c2.into())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(c, Rational::zero(), Rational::zero())
    }

    /// a + b·(t − center)².
    pub fn centered_square(a: Rational, b: Rational, center: &Rational) -> Self {
        Self::new(
            a + &b * &(center * center),
            -(&b * &(center * &Rational::int(2))),
            b,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero() && self.c2.is_zero()
    }

    pub fn coefficients(&self) -> [&Rational; 3] {
        [&self.c0, &self.c1, &self.c2]
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        &self.c0 + &(t * &(&self.c1 + &(t * &self.c2)))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(&self.c0 * s, &self.c1 * s, &self.c2 * s)
    }

    /// t ↦ p(t − h).
    pub fn translate(&self, h: &Rational) -> Self {
        let two = Rational::int(2);
        Self::new(
            &self.c0 - &(&self.c1 * h) + &self.c2 * &(h * h),
            &self.c1 - &(&self.c2 * &(&two * h)),
            self.c2.clone(),
        )
    }

    /// Where the derivative vanishes, for c2 ≠ 0.
    pub fn vertex(&self) -> Option<Rational> {
        if self.c2.is_zero() {
            None
        } else {
            Some(-(&self.c1 / &(&self.c2 * &Rational::int(2))))
        }
    }
}

impl std::ops::Add for &QuadPoly {
    type Output = QuadPoly;
    fn add(self, o: &QuadPoly) -> QuadPoly {
        QuadPoly::new(&self.c0 + &o.c0, &self.c1 + &o.c1, &self.c2 + &o.c2)
    }
}

impl std::ops::Sub for &QuadPoly {
    type Output = QuadPoly;
    fn sub(self, o: &QuadPoly) -> QuadPoly {
        QuadPoly::new(&self.c0 - &o.c0, &self.c1 - &o.c1, &self.c2 - &o.c2)
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (c, mono) in [(&self.c0, ""), (&self.c1, "t"), (&self.c2, "t²")] {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (wrote, c.is_negative()) {
                (false, true) => write!(f, "−")?,
                (true, true) => write!(f, " − ")?,
                (true, false) => write!(f, " + ")?,
                (false, false) => {}
            }
            if mono.is_empty() || mag != Rational::one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{mono}")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for QuadPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [&self.c0, &self.c1, &self.c2].serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [c0, c1, c2] = <[Rational; 3]>::deserialize(d)?;
        Ok(QuadPoly { c0, c1, c2 })
    }
}

/// Interval endpoint.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Bound {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Bound::Finite(r) => Some(r),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Bound::NegInf => 0,
            Bound::Finite(_) => 1,
            Bound::PosInf => 2,
        }
    }

    fn shifted(&self, h: &Rational) -> Bound {
        match self {
            Bound::Finite(r) => Bound::Finite(r + h),
            other => other.clone(),
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl From<Rational> for Bound {
    fn from(r: Rational) -> Self {
        Bound::Finite(r)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-inf"),
            Bound::PosInf => f.write_str("inf"),
            Bound::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for Bound {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "-inf" => Ok(Bound::NegInf),
            "inf" => Ok(Bound::PosInf),
            _ => Ok(Bound::Finite(s.parse()?)),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Closed interval (open at infinite ends).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
}

impl Interval {
    pub fn new(lo: impl Into<Bound>, hi: impl Into<Bound>) -> Self {
        Interval {
            lo: lo.into(),
            hi: hi.into(),
        }
    }

    pub fn finite(lo: Rational, hi: Rational) -> Self {
        Self::new(lo, hi)
    }

    pub fn contains(&self, t: &Rational) -> bool {
        let t = Bound::Finite(t.clone());
        self.lo <= t && t <= self.hi
    }

    pub fn shifted(&self, h: &Rational) -> Interval {
        Interval {
            lo: self.lo.shifted(h),
            hi: self.hi.shifted(h),
        }
    }

    /// Whether the intersection has positive length.
    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo.clone().max(other.lo.clone()) < self.hi.clone().min(other.hi.clone())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [&self.lo, &self.hi].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [lo, hi] = <[Bound; 2]>::deserialize(d)?;
        Ok(Interval { lo, hi })
    }
}

/// Exact positivity of `p` on `iv`: endpoints, the vertex when it lies in the
/// interval, and the behaviour at infinite ends.
pub fn is_positive_on(p: &QuadPoly, iv: &Interval) -> bool {
    let unbounded_lo = iv.lo == Bound::NegInf;
    let unbounded_hi = iv.hi == Bound::PosInf;
    if unbounded_lo || unbounded_hi {
        if p.c2.is_negative() {
            return false;
        }
        if p.c2.is_zero()
            && ((unbounded_hi && p.c1.is_negative()) || (unbounded_lo && p.c1.is_positive()))
        {
            return false;
        }
    }
    let mut candidates: Vec<Rational> = [&iv.lo, &iv.hi]
        .into_iter()
        .filter_map(|b| b.finite().cloned())
        .collect();
    if let Some(v) = p.vertex() {
        if iv.contains(&v) {
            candidates.push(v);
        }
    }
    if candidates.is_empty() {
        candidates.push(Rational::zero());
    }
    candidates.iter().all(|t| p.eval(t).is_positive())
}

pub type WeightTriple = [i64; 3];

/// Sorted descending.
pub fn canonical_triple(w: WeightTriple) -> WeightTriple {
    let mut w = w;
    w.sort_unstable_by(|a, b| b.cmp(a));
    w
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Wall {
    pub level: Rational,
    pub points: Vec<WeightTriple>,
}

impl Wall {
    /// Rejects zero weights; stores each triple and the list in descending order.
    pub fn new(level: Rational, points: Vec<WeightTriple>) -> Result<Self> {
        if points.iter().flatten().any(|&w| w == 0) {
            return Err(Error::ZeroWeight);
        }
        let mut points: Vec<_> = points.into_iter().map(canonical_triple).collect();
        points.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Wall { level, points })
    }

    /// `count` copies of one triple.
    pub fn uniform(level: Rational, count: usize, weights: WeightTriple) -> Result<Self> {
        Self::new(level, vec![weights; count])
    }

    pub fn is_canonical(&self) -> bool {
        self.points.iter().all(|w| canonical_triple(*w) == *w)
            && self.points.windows(2).all(|p| p[0] >= p[1])
    }
}

/// Σ_points (t − c)²/(w₁w₂w₃).
pub fn wall_jump(w: &Wall) -> Result<QuadPoly> {
    let mut coefficient = Rational::zero();
    for p in &w.points {
        let prod: i64 = p.iter().product();
        if prod == 0 {
            return Err(Error::ZeroWeight);
        }
        coefficient += &Rational::frac(1, prod);
    }
    Ok(QuadPoly::centered_square(Rational::zero(), coefficient, &w.level))
}

/// (κ − tη, κ − tη) = (κ,κ) − 2t(κ,η) + t²(η,η).
pub fn dh_from_classes(l: &Lattice, kappa: &AmbientVector, eta: &AmbientVector) -> Result<QuadPoly> {
    Ok(QuadPoly::new(
        l.norm(kappa)?,
        -(l.pair(kappa, eta)? * Rational::int(2)),
        l.norm(eta)?,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceKind {
    /// Free-action region between blocks.
    Free,
    /// Region between the two fixed-point levels of a block.
    FixedMiddle,
    /// Branch just outside a block's fixed-point levels; on a circle these
    /// overlay the neighbouring free pieces.
    FixedOuter,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub kind: PieceKind,
    pub interval: Interval,
    pub poly: QuadPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Interval(Interval),
    Circle { period: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DHProfile {
    pub domain: Domain,
    pub pieces: Vec<Piece>,
    pub walls: Vec<Wall>,
}

#[derive(Serialize, Deserialize)]
struct ProfileRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    period: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    interval: Option<Interval>,
    pieces: Vec<Piece>,
    walls: Vec<Wall>,
}

impl Serialize for DHProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (period, interval) = match &self.domain {
            Domain::Circle { period } => (Some(period.clone()), None),
            Domain::Interval(iv) => (None, Some(iv.clone())),
        };
        ProfileRepr {
            period,
            interval,
            pieces: self.pieces.clone(),
            walls: self.walls.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DHProfile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ProfileRepr::deserialize(d)?;
        let domain = match (r.period, r.interval) {
            (Some(period), None) => Domain::Circle { period },
            (None, Some(iv)) => Domain::Interval(iv),
            _ => {
                return Err(serde::de::Error::custom(
                    "profile needs exactly one of `period` and `interval`",
                ))
            }
        };
        Ok(DHProfile {
            domain,
            pieces: r.pieces,
            walls: r.walls,
        })
    }
}

/// A boundary between consecutive tiling pieces: (level, lower poly, upper poly).
/// For the circle's wrap-around the upper poly is already translated by T.
struct Boundary {
    level: Rational,
    lower: QuadPoly,
    upper: QuadPoly,
}

impl DHProfile {
    pub fn period(&self) -> Option<&Rational> {
        match &self.domain {
            Domain::Circle { period } => Some(period),
            Domain::Interval(_) => None,
        }
    }

    fn in_tiling(&self, p: &Piece) -> bool {
        match self.domain {
            Domain::Circle { .. } => p.kind != PieceKind::FixedOuter,
            Domain::Interval(_) => true,
        }
    }

    /// The pieces that tile the domain, sorted by left endpoint.
    pub fn tiling(&self) -> Vec<&Piece> {
        let mut t: Vec<&Piece> = self.pieces.iter().filter(|p| self.in_tiling(p)).collect();
        t.sort_by(|a, b| a.interval.lo.cmp(&b.interval.lo));
        t
    }

    /// Profile with the circle collars removed.
    pub fn without_overlays(&self) -> DHProfile {
        DHProfile {
            domain: self.domain.clone(),
            pieces: self.tiling().into_iter().cloned().collect(),
            walls: self.walls.clone(),
        }
    }

    /// The value at t (t in the canonical window for circles), from the
    /// tiling piece containing it; at a boundary the lower piece wins.
    pub fn value_at(&self, t: &Rational) -> Option<Rational> {
        self.tiling()
            .into_iter()
            .find(|p| p.interval.contains(t))
            .map(|p| p.poly.eval(t))
    }

    fn boundaries(&self) -> Result<Vec<Boundary>> {
        let tiles = self.tiling();
        if tiles.is_empty() {
            return Err(Error::MalformedProfile("no tiling pieces".into()));
        }
        for p in &tiles {
            if p.interval.lo >= p.interval.hi {
                return Err(Error::MalformedProfile(format!(
                    "empty or reversed interval {}",
                    p.interval
                )));
            }
        }
        let mut out = Vec::new();
        for w in tiles.windows(2) {
            let (a, b) = (w[0], w[1]);
            match (a.interval.hi.finite(), b.interval.lo.finite()) {
                (Some(x), Some(y)) if x == y => out.push(Boundary {
                    level: x.clone(),
                    lower: a.poly.clone(),
                    upper: b.poly.clone(),
                }),
                _ => {
                    return Err(Error::MalformedProfile(format!(
                        "pieces {} and {} do not meet",
                        a.interval, b.interval
                    )))
                }
            }
        }
        let first = tiles[0];
        let last = tiles[tiles.len() - 1];
        match &self.domain {
            Domain::Circle { period } => {
                if !period.is_positive() {
                    return Err(Error::MalformedProfile(format!("period {period} is not positive")));
                }
                let (Some(start), Some(end)) = (first.interval.lo.finite(), last.interval.hi.finite())
                else {
                    return Err(Error::MalformedProfile("unbounded piece on a circle".into()));
                };
                if &(end - start) != period {
                    return Err(Error::MalformedProfile(format!(
                        "pieces cover [{start}, {end}], not one period {period}"
                    )));
                }
                out.push(Boundary {
                    level: end.clone(),
                    lower: last.poly.clone(),
                    upper: first.poly.translate(period),
                });
            }
            Domain::Interval(iv) => {
                if first.interval.lo != iv.lo || last.interval.hi != iv.hi {
                    return Err(Error::MalformedProfile(format!(
                        "pieces cover [{}, {}], domain is {}",
                        first.interval.lo, last.interval.hi, iv
                    )));
                }
            }
        }
        Ok(out)
    }

    /// Whether a wall level lies in the canonical window: (start, start + T]
    /// on a circle, the interior of the domain on an interval.
    fn level_is_canonical(&self, level: &Rational) -> bool {
        let tiles = self.tiling();
        let Some(first) = tiles.first() else {
            return false;
        };
        let level_b = Bound::Finite(level.clone());
        match &self.domain {
            Domain::Circle { period } => match first.interval.lo.finite() {
                Some(start) => level > start && level <= &(start + period),
                None => false,
            },
            Domain::Interval(iv) => iv.lo < level_b && level_b < iv.hi,
        }
    }
}

/// Runs the five profile checks. A tiling that does not cover the domain is
/// an error, not a failed check.
pub fn check_profile(p: &DHProfile) -> Result<Vec<CheckResult>> {
    let boundaries = p.boundaries()?;

    let mut continuity = CheckResult::new("profile.continuity", "C⁰ gluing across walls and the period");
    for b in &boundaries {
        let (lo, hi) = (b.lower.eval(&b.level), b.upper.eval(&b.level));
        continuity.require(lo == hi, || {
            format!("t = {}: lower piece gives {lo}, upper piece gives {hi}", b.level)
        });
    }

    let mut jumps = CheckResult::new("profile.wall_jumps", "DH wall crossing at fixed points");
    let mut levels_seen: Vec<&Rational> = Vec::new();
    for w in &p.walls {
        if levels_seen.contains(&&w.level) {
            jumps.fail(format!("two walls at level {}", w.level));
        }
        levels_seen.push(&w.level);
        if !p.level_is_canonical(&w.level) {
            jumps.fail(format!("wall level {} outside the canonical window", w.level));
        }
        if !w.is_canonical() {
            jumps.fail(format!("wall at {} lists weights out of canonical order", w.level));
        }
    }
    for b in &boundaries {
        let actual = &b.upper - &b.lower;
        let walls: Vec<&Wall> = p.walls.iter().filter(|w| w.level == b.level).collect();
        let expected = match walls.first() {
            None => Ok(QuadPoly::zero()),
            Some(w) => wall_jump(w),
        };
        match expected {
            Err(_) => jumps.fail(format!("wall at {} has a zero weight", b.level)),
            Ok(e) => jumps.require(e == actual, || {
                format!(
                    "t = {}: profile jumps by {actual}, fixed points predict {e}",
                    b.level
                )
            }),
        }
    }
    for w in &p.walls {
        if boundaries.iter().any(|b| b.level == w.level) {
            continue;
        }
        match wall_jump(w) {
            Err(_) => jumps.fail(format!("wall at {} has a zero weight", w.level)),
            Ok(e) => jumps.require(e.is_zero(), || {
                format!("wall at {} is not at a piece boundary but predicts jump {e}", w.level)
            }),
        }
    }
    if jumps.passed {
        jumps.note(JUMP_NORMALIZATION_NOTE);
    }

    let mut positivity = CheckResult::new("profile.positivity", "positive DH function");
    for piece in &p.pieces {
        positivity.require(is_positive_on(&piece.poly, &piece.interval), || {
            format!("{:?} piece {} is not positive on {}", piece.kind, piece.poly, piece.interval)
        });
    }

    let mut even = CheckResult::new(
        "profile.even_coefficients",
        "free pieces: degree ≤ 2, even integer coefficients",
    );
    for piece in p.pieces.iter().filter(|q| q.kind == PieceKind::Free) {
        even.require(piece.poly.coefficients().iter().all(|c| c.is_even_integer()), || {
            format!("free piece on {} has coefficients {}", piece.interval, piece.poly)
        });
    }

    let mut overlap = CheckResult::new("profile.overlap_identities", "gluing collars match free pieces");
    if let Domain::Circle { period } = &p.domain {
        let shifts = [-period, Rational::zero(), period.clone()];
        let free: Vec<&Piece> = p.pieces.iter().filter(|q| q.kind == PieceKind::Free).collect();
        for collar in p.pieces.iter().filter(|q| q.kind == PieceKind::FixedOuter) {
            let mut met = false;
            for f in &free {
                for s in &shifts {
                    if !f.interval.shifted(s).overlaps(&collar.interval) {
                        continue;
                    }
                    met = true;
                    let moved = f.poly.translate(s);
                    overlap.require(moved == collar.poly, || {
                        format!(
                            "collar {} on {} differs from free piece {} on {} (shift {s})",
                            collar.poly,
                            collar.interval,
                            moved,
                            f.interval.shifted(s)
                        )
                    });
                }
            }
            overlap.require(met, || {
                format!("collar on {} meets no free piece", collar.interval)
            });
        }
    }

    Ok(vec![continuity, jumps, positivity, even, overlap])
}

/// The profile with 10 fixed points on ℝ/10ℤ:
/// 12 − 2t² on [−1, 1] and 2 + (t − 5)²/2 on [1, 9].
pub fn minimal_circle_profile() -> DHProfile {
    let r = Rational::int;
    DHProfile {
        domain: Domain::Circle { period: r(10) },
        pieces: vec![
            Piece {
                kind: PieceKind::Free,
                interval: Interval::finite(r(-1), r(1)),
                poly: QuadPoly::from_ints(12, 0, -2),
            },
            Piece {
                kind: PieceKind::FixedMiddle,
                interval: Interval::finite(r(1), r(9)),
                poly: QuadPoly::centered_square(r(2), Rational::frac(1, 2), &r(5)),
            },
        ],
        walls: vec![
            Wall::uniform(r(1), 5, [2, -1, -1]).unwrap(),
            Wall::uniform(r(9), 5, [-2, 1, 1]).unwrap(),
        ],
    }
}

/// A single fixed-point block centred at 0 on [−4 − w, 4 + w]:
/// A − 8k − 4kt + Bt², A + (B + k/2)t², A − 8k + 4kt + Bt².
pub fn single_block_profile(k: usize, a: i64, b: i64, width: &Rational) -> Result<DHProfile> {
    let r = Rational::int;
    let k = k as i64;
    let four = r(4);
    let lo = -(&four + width);
    let hi = &four + width;
    let outer = |sign: i64| QuadPoly::from_ints(a - 8 * k, sign * 4 * k, b);
    Ok(DHProfile {
        domain: Domain::Interval(Interval::finite(lo.clone(), hi.clone())),
        pieces: vec![
            Piece {
                kind: PieceKind::FixedOuter,
                interval: Interval::finite(lo, -&four),
                poly: outer(-1),
            },
            Piece {
                kind: PieceKind::FixedMiddle,
                interval: Interval::finite(-&four, four.clone()),
                poly: QuadPoly::new(r(a), r(0), r(b) + Rational::frac(k, 2)),
            },
            Piece {
                kind: PieceKind::FixedOuter,
                interval: Interval::finite(four.clone(), hi),
                poly: outer(1),
            },
        ],
        walls: vec![
            Wall::uniform(-&four, k as usize, [2, -1, -1])?,
            Wall::uniform(four, k as usize, [-2, 1, 1])?,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(c0: i64, c1: i64, c2: i64) -> QuadPoly {
        QuadPoly::from_ints(c0, c1, c2)
    }

    fn all_pass(checks: &[CheckResult]) -> bool {
        checks.iter().all(|c| c.passed)
    }

    #[test]
    fn display() {
        assert_eq!(q(12, 0, -2).to_string(), "12 − 2t²");
        assert_eq!(q(0, -1, 1).to_string(), "−t + t²");
        assert_eq!(QuadPoly::new(Rational::frac(29, 2), Rational::int(-5), Rational::frac(1, 2)).to_string(), "29/2 − 5t + 1/2t²");
        assert_eq!(q(0, 0, 0).to_string(), "0");
    }

    #[test]
    fn jump_examples() {
        let r = Rational::int;
        // (2 + (t−5)²/2) − (12 − 2t²)
        let upper = QuadPoly::centered_square(r(2), Rational::frac(1, 2), &r(5));
        let diff = &upper - &q(12, 0, -2);
        let w = Wall::uniform(r(1), 5, [2, -1, -1]).unwrap();
        assert_eq!(wall_jump(&w).unwrap(), diff);
        assert_eq!(diff, QuadPoly::centered_square(r(0), Rational::frac(5, 2), &r(1)));

        for k in 1..=9i64 {
            let (a, b) = (2, -2);
            let middle = QuadPoly::new(r(a), r(0), r(b) + Rational::frac(k, 2));
            let right = q(a - 8 * k, 4 * k, b);
            let w = Wall::uniform(r(4), k as usize, [-2, 1, 1]).unwrap();
            assert_eq!(wall_jump(&w).unwrap(), &right - &middle);
            assert_eq!(
                &right - &middle,
                QuadPoly::centered_square(r(0), Rational::frac(-k, 2), &r(4))
            );
        }

        let empty = Wall::new(r(3), vec![]).unwrap();
        assert!(wall_jump(&empty).unwrap().is_zero());
        assert_eq!(Wall::new(r(0), vec![[1, 0, 2]]), Err(Error::ZeroWeight));
    }

    #[test]
    fn wall_triples_sorted() {
        let w = Wall::new(Rational::int(1), vec![[-1, 2, -1], [1, -2, 1]]).unwrap();
        assert_eq!(w.points, vec![[2, -1, -1], [1, 1, -2]]);
        assert!(w.is_canonical());
    }

    #[test]
    fn translate_matches_eval() {
        let p = q(3, -5, 7);
        let h = Rational::frac(3, 2);
        let t = Rational::frac(-7, 3);
        assert_eq!(p.translate(&h).eval(&t), p.eval(&(&t - &h)));
    }

    #[test]
    fn minimal_circle_checks_pass() {
        let p = minimal_circle_profile();
        let checks = check_profile(&p).unwrap();
        assert!(all_pass(&checks), "{checks:#?}");
    }

    #[test]
    fn minimal_circle_perturbed_fails_continuity() {
        let mut p = minimal_circle_profile();
        p.pieces[0].poly.c0 = Rational::int(13);
        let checks = check_profile(&p).unwrap();
        let cont = &checks[0];
        assert!(!cont.passed);
        assert!(cont.witnesses[0].contains("t = 1:"), "{:?}", cont.witnesses);
    }

    #[test]
    fn single_block_checks_pass() {
        let p = single_block_profile(5, 2, -2, &Rational::frac(1, 2)).unwrap();
        let checks = check_profile(&p).unwrap();
        assert!(all_pass(&checks), "{checks:#?}");
        for k in 1..=9 {
            let p = single_block_profile(k, 2 * k as i64 + 2, 0, &Rational::frac(1, 2)).unwrap();
            assert!(all_pass(&check_profile(&p).unwrap()), "k = {k}");
        }
    }

    #[test]
    fn malformed_tiling_is_an_error() {
        let mut p = minimal_circle_profile();
        p.pieces[1].interval = Interval::finite(Rational::int(2), Rational::int(9));
        assert!(matches!(check_profile(&p), Err(Error::MalformedProfile(_))));

        let mut p = minimal_circle_profile();
        p.domain = Domain::Circle { period: Rational::int(12) };
        assert!(matches!(check_profile(&p), Err(Error::MalformedProfile(_))));
    }

    #[test]
    fn missing_wall_is_caught() {
        let mut p = minimal_circle_profile();
        p.walls.pop();
        let checks = check_profile(&p).unwrap();
        assert!(!checks[1].passed);
    }

    #[test]
    fn wall_levels_canonical() {
        let mut p = minimal_circle_profile();
        p.walls[1].level = Rational::int(-1);
        let checks = check_profile(&p).unwrap();
        assert!(!checks[1].passed);
    }

    #[test]
    fn dh_from_zero_eta_is_constant() {
        let l = Lattice::k3();
        let v = AmbientVector::from_i64s(&[1, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        let z = AmbientVector::zero(22);
        assert_eq!(dh_from_classes(&l, &v, &z).unwrap(), q(6, 0, 0));
    }

    #[test]
    fn positivity_edge_cases() {
        let r = Rational::int;
        // touches zero at the vertex
        assert!(!is_positive_on(&q(0, 0, 1), &Interval::finite(r(-1), r(1))));
        assert!(is_positive_on(&q(0, 0, 1), &Interval::finite(r(1), r(2))));
        // concave, positive at both ends
        assert!(is_positive_on(&q(10, 0, -1), &Interval::finite(r(-3), r(3))));
        assert!(!is_positive_on(&q(10, 0, -1), &Interval::finite(r(-3), r(4))));
        assert!(is_positive_on(&q(1, 1, 0), &Interval::new(r(0), Bound::PosInf)));
        assert!(!is_positive_on(&q(1, -1, 0), &Interval::new(r(0), Bound::PosInf)));
        assert!(is_positive_on(&q(1, 0, 1), &Interval::new(Bound::NegInf, Bound::PosInf)));
        assert!(!is_positive_on(&q(1, 0, -1), &Interval::new(Bound::NegInf, r(0))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        /// Agrees with sampling the interval at denominator 64. Quadratics are
        /// built as a + b(t − v)² with v on the sampling grid, so the
        /// minimum is always a sample point.
        #[test]
        fn positivity_matches_sampling(
            a in -40i64..=40, b in -8i64..=8, v in -400i64..400, slope in -8i64..=8,
            linear in any::<bool>(),
            lo in -6i64..6, len in 1i64..6,
        ) {
            let p = if linear {
                QuadPoly::new(Rational::frac(a, 4), Rational::frac(slope, 2), Rational::zero())
            } else {
                QuadPoly::centered_square(Rational::frac(a, 4), Rational::frac(b, 8), &Rational::frac(v, 64))
            };
            let iv = Interval::finite(Rational::int(lo), Rational::int(lo + len));
            let sampled = (0..=64 * len).all(|i| p.eval(&Rational::frac(64 * lo + i, 64)).is_positive());
            let exact = is_positive_on(&p, &iv);
            prop_assert_eq!(exact, sampled);
        }
    }
}
