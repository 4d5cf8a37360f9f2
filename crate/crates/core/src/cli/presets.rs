//! The preset suite run by `scan`.

use crate::multidegree::{MultiDegree, Shape};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preset {
    /// Short case identifier shown in reports.
    pub case: &'static str,
    pub shape: Shape,
    pub degrees: Vec<MultiDegree>,
    /// Whether a random ideal is expected to reproduce the product formula.
    pub expect_match: bool,
}

fn repeat(parts: &[u32], n: usize) -> Vec<MultiDegree> {
    vec![MultiDegree::new(parts.to_vec()); n]
}

/// Known cases on `P1 x P1` (all (1,1); mixed (1,1) and (1,2); all (1,2);
/// all (2,2)) for one to six generators, all-(1,1,1) ideals on
/// `P1 x P1 x P1` for one to four generators, and four bilinear forms on
/// `P2 x P2`, where the formula is known to fail.
pub fn presets() -> Vec<Preset> {
    let surface = Shape::new(vec![1, 1]).expect("valid shape");
    let threefold = Shape::new(vec![1, 1, 1]).expect("valid shape");
    let mut out = Vec::new();
    for r in 1..=6 {
        out.push(Preset { case: "case2", shape: surface.clone(), degrees: repeat(&[1, 1], r), expect_match: true });
    }
    for r in 2..=6 {
        for k in 1..r {
            let mut degrees = repeat(&[1, 1], k);
            degrees.extend(repeat(&[1, 2], r - k));
            out.push(Preset { case: "case3", shape: surface.clone(), degrees, expect_match: true });
        }
    }
    for r in 1..=6 {
        out.push(Preset { case: "case4", shape: surface.clone(), degrees: repeat(&[1, 2], r), expect_match: true });
    }
    for r in 1..=6 {
        out.push(Preset { case: "case5", shape: surface.clone(), degrees: repeat(&[2, 2], r), expect_match: true });
    }
    for r in 1..=4 {
        out.push(Preset {
            case: "trilinear",
            shape: threefold.clone(),
            degrees: repeat(&[1, 1, 1], r),
            expect_match: true,
        });
    }
    out.push(Preset {
        case: "p2xp2",
        shape: Shape::new(vec![2, 2]).expect("valid shape"),
        degrees: repeat(&[1, 1], 4),
        expect_match: false,
    });
    out
}
