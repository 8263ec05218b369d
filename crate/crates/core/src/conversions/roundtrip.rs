//! All-cycles roundtrip check across the shape coordinates.

use super::*;
use crate::error::Result;
use crate::frame::ShapeMatrix;

/// A shape in any of the supported coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Representation {
    Svd(SvdShape),
    Sides(SquaredSides),
    Hemisphere(HemispherePoint),
    Disk(DiskPoint),
    Matrix(ShapeMatrix),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    Svd,
    Sides,
    Hemisphere,
    Disk,
}

const KINDS: [Kind; 4] = [Kind::Svd, Kind::Sides, Kind::Hemisphere, Kind::Disk];

/// Outcome of [`roundtrip_all`].
#[derive(Debug, Clone, PartialEq)]
pub struct RoundtripReport {
    pub cycles_checked: usize,
    pub max_discrepancy: f64,
    /// The cycle with the largest discrepancy, as a `"svd>sides>svd"` path.
    pub worst_cycle: String,
}

fn name(k: Kind) -> &'static str {
    match k {
        Kind::Svd => "svd",
        Kind::Sides => "sides",
        Kind::Hemisphere => "hemisphere",
        Kind::Disk => "disk",
    }
}

fn kind_of(x: &Representation) -> Kind {
    match x {
        Representation::Svd(_) => Kind::Svd,
        Representation::Sides(_) => Kind::Sides,
        Representation::Hemisphere(_) => Kind::Hemisphere,
        Representation::Disk(_) => Kind::Disk,
        // compared through its SVD
        Representation::Matrix(_) => Kind::Svd,
    }
}

/// One direct conversion step to the requested coordinate.
fn step(x: &Representation, to: Kind) -> Result<Representation> {
    use Representation as R;
    Ok(match (*x, to) {
        (R::Matrix(m), _) => step(&R::Svd(svd2x2(&m)), to)?,
        (R::Svd(s), Kind::Svd) => R::Svd(s),
        (R::Svd(s), Kind::Sides) => R::Sides(svd_to_sides(&s)),
        (R::Svd(s), Kind::Hemisphere) => R::Hemisphere(svd_to_hemisphere(&s)),
        (R::Svd(s), Kind::Disk) => R::Disk(svd_to_disk(&s)),
        (R::Sides(s), Kind::Svd) => R::Svd(sides_to_svd(&s)?),
        (R::Sides(s), Kind::Sides) => R::Sides(s),
        (R::Sides(s), Kind::Hemisphere) => R::Hemisphere(sides_to_hemisphere(&s)?),
        (R::Sides(s), Kind::Disk) => R::Disk(sides_to_disk(&s)?),
        (R::Hemisphere(h), Kind::Svd) => R::Svd(hemisphere_to_svd(&h)),
        (R::Hemisphere(h), Kind::Sides) => R::Sides(hemisphere_to_sides(&h)),
        (R::Hemisphere(h), Kind::Hemisphere) => R::Hemisphere(h),
        (R::Hemisphere(h), Kind::Disk) => R::Disk(hemisphere_to_disk(&h)),
        (R::Disk(d), Kind::Svd) => R::Svd(disk_to_svd(&d)),
        (R::Disk(d), Kind::Sides) => R::Sides(disk_to_sides(&d)?),
        (R::Disk(d), Kind::Hemisphere) => R::Hemisphere(disk_to_hemisphere(&d)),
        (R::Disk(d), Kind::Disk) => R::Disk(d),
    })
}

/// Target coordinate for [`convert`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coordinate {
    Svd,
    Sides,
    Hemisphere,
    Disk,
    Matrix,
}

/// Converts a shape to another coordinate. A matrix target is the
/// canonical `ΣVᵀ`, since the left singular factor is not part of the shape.
pub fn convert(x: &Representation, to: Coordinate) -> Result<Representation> {
    let kind = match to {
        Coordinate::Svd => Kind::Svd,
        Coordinate::Sides => Kind::Sides,
        Coordinate::Hemisphere => Kind::Hemisphere,
        Coordinate::Disk => Kind::Disk,
        Coordinate::Matrix => {
            if let Representation::Matrix(m) = x {
                return Ok(Representation::Matrix(*m));
            }
            return match step(x, Kind::Svd)? {
                Representation::Svd(s) => Ok(Representation::Matrix(ShapeMatrix::normalize(
                    s.to_matrix(),
                )?)),
                _ => unreachable!("step to Kind::Svd yields an SVD"),
            };
        }
    };
    step(x, kind)
}

/// Coordinates in which every representation is continuous, so that
/// angles at the pole or at `θ ≡ π` do not register as discrepancies.
fn embed(x: &Representation) -> Vec<f64> {
    match x {
        Representation::Svd(s) => {
            let g = s.sigma_gap();
            let (sn, cs) = (2.0 * s.theta).sin_cos();
            vec![s.sigma1, s.sigma2, g * cs, g * sn]
        }
        Representation::Sides(s) => s.as_array().to_vec(),
        Representation::Hemisphere(h) => h.cartesian().to_vec(),
        Representation::Disk(d) => d.cartesian().to_vec(),
        Representation::Matrix(m) => matrix_to_sides(m).as_array().to_vec(),
    }
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn permutations_of_others(start: Kind) -> Vec<Vec<Kind>> {
    let others: Vec<Kind> = KINDS.iter().copied().filter(|&k| k != start).collect();
    let mut out = Vec::new();
    for &a in &others {
        out.push(vec![a]);
        for &b in others.iter().filter(|&&b| b != a) {
            out.push(vec![a, b]);
            for &c in others.iter().filter(|&&c| c != a && c != b) {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

/// Runs every simple cycle through the four coordinates that starts and ends
/// at the input's own coordinate and reports the worst discrepancy.
///
/// A shape matrix is compared through its squared sides, since the left
/// singular factor is not recoverable from any of the other coordinates.
pub fn roundtrip_all(x: &Representation) -> Result<RoundtripReport> {
    let start_kind = kind_of(x);
    let (origin, reference) = match x {
        Representation::Matrix(m) => {
            let sides = Representation::Sides(matrix_to_sides(m));
            (Representation::Svd(svd2x2(m)), embed(&sides))
        }
        other => (*other, embed(other)),
    };
    let is_matrix = matches!(x, Representation::Matrix(_));

    let mut report = RoundtripReport {
        cycles_checked: 0,
        max_discrepancy: 0.0,
        worst_cycle: String::new(),
    };
    for path in permutations_of_others(start_kind) {
        let mut cur = origin;
        for &k in &path {
            cur = step(&cur, k)?;
        }
        let end = if is_matrix {
            step(&cur, Kind::Sides)?
        } else {
            step(&cur, start_kind)?
        };
        let d = distance(&embed(&end), &reference);
        report.cycles_checked += 1;
        if d > report.max_discrepancy || report.worst_cycle.is_empty() {
            report.max_discrepancy = report.max_discrepancy.max(d);
            let mut label: Vec<&str> = vec![if is_matrix {
                "matrix"
            } else {
                name(start_kind)
            }];
            label.extend(path.iter().map(|&k| name(k)));
            label.push(if is_matrix { "sides" } else { name(start_kind) });
            report.worst_cycle = label.join(">");
        }
    }
    Ok(report)
}
