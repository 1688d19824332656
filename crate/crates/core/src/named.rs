//! The named configurations used throughout the classification: the
//! exceptional triangle, the trapezoids, the numbered one- and two-interior
//! point configurations and the two infinite families with interior points
//! on a line.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::config::PointConfig;

fn cfg3(pts: &[[i64; 3]]) -> PointConfig {
    PointConfig::new(3, pts.iter().map(|p| p.to_vec()).collect()).expect("named configuration")
}

/// Collinear configuration {(k,1) : -1 <= k <= n-2} in Z^2.
pub fn collinear(n: i64) -> PointConfig {
    assert!(n >= 2);
    PointConfig::new(2, (-1..=n - 2).map(|k| vec![k, 1]).collect()).expect("collinear")
}

/// The triangle (0,0),(2,0),(0,2) with all six lattice points (no interior
/// point; no algebraic parameters exist for it).
pub fn a1() -> PointConfig {
    cfg3(&[
        [0, 0, 1],
        [1, 0, 1],
        [2, 0, 1],
        [0, 1, 1],
        [1, 1, 1],
        [0, 2, 1],
    ])
}

pub fn a2() -> PointConfig {
    cfg3(&[[-1, -1, 1], [0, 0, 1], [1, 0, 1], [0, 1, 1]])
}

pub fn a3() -> PointConfig {
    cfg3(&[[-1, -1, 1], [-1, 0, 1], [0, 0, 1], [1, 0, 1], [-1, 1, 1]])
}

pub fn a4() -> PointConfig {
    cfg3(&[[0, -1, 1], [-1, 0, 1], [0, 0, 1], [1, 0, 1], [-1, 1, 1]])
}

pub fn a5() -> PointConfig {
    cfg3(&[[1, -1, 1], [-1, 0, 1], [0, 0, 1], [1, 0, 1], [-1, 1, 1]])
}

pub fn a6() -> PointConfig {
    cfg3(&[
        [-1, -1, 1],
        [0, -1, 1],
        [1, -1, 1],
        [0, 0, 1],
        [1, 0, 1],
        [0, 1, 1],
    ])
}

pub fn a7() -> PointConfig {
    cfg3(&[
        [0, -1, 1],
        [1, -1, 1],
        [-1, 0, 1],
        [0, 0, 1],
        [1, 0, 1],
        [0, 1, 1],
    ])
}

pub fn a8() -> PointConfig {
    cfg3(&[
        [-1, -1, 1],
        [0, -1, 1],
        [1, -1, 1],
        [-1, 0, 1],
        [0, 0, 1],
        [1, 0, 1],
        [0, 1, 1],
    ])
}

pub fn a9() -> PointConfig {
    cfg3(&[
        [0, -1, 1],
        [1, -1, 1],
        [-1, 0, 1],
        [0, 0, 1],
        [1, 0, 1],
        [-1, 1, 1],
        [0, 1, 1],
    ])
}

/// Two interior points; the only two-interior quadrilateral with isolated
/// algebraic parameters.
pub fn a10() -> PointConfig {
    cfg3(&[
        [0, 0, 1],
        [1, 1, 1],
        [2, 1, 1],
        [3, 1, 1],
        [1, 2, 1],
        [2, 2, 1],
    ])
}

/// Three interior points not on a line; one isolated algebraic parameter.
pub fn a11() -> PointConfig {
    cfg3(&[
        [0, 0, 1],
        [1, 1, 1],
        [1, 2, 1],
        [2, 2, 1],
        [3, 2, 1],
        [1, 3, 1],
    ])
}

/// Trapezoid with p+1 bottom and q+1 top points (p >= q >= 0; q = 0
/// degenerates to a pyramid).
pub fn trapezoid(p: i64, q: i64) -> PointConfig {
    assert!(p >= 1 && q >= 0 && p >= q);
    let mut pts: Vec<Vec<i64>> = (0..=p).map(|k| vec![k, 0, 1]).collect();
    pts.extend((0..=q).map(|k| vec![k, 1, 1]));
    PointConfig::new(3, pts).expect("trapezoid")
}

/// Triangle family with i interior points on a line: (-1,-1), (0,1) and
/// (0,0)..(i,0). Type (i,3), volume 2i+1. i = 0 is a pyramid.
pub fn family_triangle(i: i64) -> PointConfig {
    assert!(i >= 0);
    let mut pts: Vec<Vec<i64>> = vec![vec![-1, -1, 1], vec![0, 1, 1]];
    pts.extend((0..=i).map(|k| vec![k, 0, 1]));
    PointConfig::new(3, pts).expect("triangle family")
}

/// Quadrilateral family with i interior points on a line: (k,-1), (-1,1)
/// and (-1,0)..(i,0), for -1 <= k <= i. Type (i,4), volume 2i+2.
pub fn family_quadrilateral(i: i64, k: i64) -> PointConfig {
    assert!(i >= 0 && (-1..=i).contains(&k));
    let mut pts: Vec<Vec<i64>> = vec![vec![k, -1, 1], vec![-1, 1, 1]];
    pts.extend((-1..=i).map(|j| vec![j, 0, 1]));
    PointConfig::new(3, pts).expect("quadrilateral family")
}

/// Names understood: `A_1` .. `A_11`, `A^(1)_{p,q}`, `A^(2)_i`,
/// `A^(3)_{i,k}`, `collinear_N` (braces optional).
pub fn load_named(name: &str) -> Result<PointConfig, String> {
    let s = name.trim();
    if let Some(rest) = s.strip_prefix("collinear_") {
        let n: i64 = rest.parse().map_err(|_| bad(name))?;
        if n < 2 {
            return Err(bad(name));
        }
        return Ok(collinear(n));
    }
    if let Some(rest) = s.strip_prefix("A^(1)_") {
        let (p, q) = parse_pair(rest).ok_or_else(|| bad(name))?;
        if p < 1 || q < 0 || q > p {
            return Err(bad(name));
        }
        return Ok(trapezoid(p, q));
    }
    if let Some(rest) = s.strip_prefix("A^(2)_") {
        let i: i64 = parse_single(rest).ok_or_else(|| bad(name))?;
        if i < 0 {
            return Err(bad(name));
        }
        return Ok(family_triangle(i));
    }
    if let Some(rest) = s.strip_prefix("A^(3)_") {
        let (i, k) = parse_pair(rest).ok_or_else(|| bad(name))?;
        if i < 0 || k < -1 || k > i {
            return Err(bad(name));
        }
        return Ok(family_quadrilateral(i, k));
    }
    if let Some(rest) = s.strip_prefix("A_") {
        let idx: i64 = rest.parse().map_err(|_| bad(name))?;
        return match idx {
            1 => Ok(a1()),
            2 => Ok(a2()),
            3 => Ok(a3()),
            4 => Ok(a4()),
            5 => Ok(a5()),
            6 => Ok(a6()),
            7 => Ok(a7()),
            8 => Ok(a8()),
            9 => Ok(a9()),
            10 => Ok(a10()),
            11 => Ok(a11()),
            _ => Err(bad(name)),
        };
    }
    Err(bad(name))
}

fn bad(name: &str) -> String {
    format!("unknown configuration name: {name}")
}

fn parse_single(s: &str) -> Option<i64> {
    s.trim_matches(|c| c == '{' || c == '}').parse().ok()
}

fn parse_pair(s: &str) -> Option<(i64, i64)> {
    let inner = s.trim_matches(|c| c == '{' || c == '}');
    let mut it = inner.split(',');
    let a = it.next()?.trim().parse().ok()?;
    let b = it.next()?.trim().parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::are_isomorphic;

    #[test]
    fn named_types_and_volumes() {
        let cases: Vec<(PointConfig, (usize, usize))> = vec![
            (a1(), (0, 6)),
            (a2(), (1, 3)),
            (a3(), (1, 4)),
            (a4(), (1, 4)),
            (a5(), (1, 4)),
            (a6(), (1, 5)),
            (a7(), (1, 5)),
            (a8(), (1, 6)),
            (a9(), (1, 6)),
            (a10(), (2, 4)),
            (a11(), (3, 3)),
        ];
        for (cfg, t) in cases {
            assert!(cfg.is_normal());
            let poly = cfg.polygon().unwrap();
            assert_eq!(poly.polygon_type(), t);
        }
    }

    fn sorted(c: &PointConfig) -> Vec<Vec<i64>> {
        let mut v = c.points().to_vec();
        v.sort_unstable();
        v
    }

    #[test]
    fn families_match_numbered_configs() {
        // the small family members coincide with the numbered configurations
        assert_eq!(sorted(&family_triangle(1)), sorted(&a2()));
        assert_eq!(sorted(&family_quadrilateral(1, -1)), sorted(&a3()));
        assert_eq!(sorted(&family_quadrilateral(1, 0)), sorted(&a4()));
        assert_eq!(sorted(&family_quadrilateral(1, 1)), sorted(&a5()));
        // the 0-interior quadrilateral family member is a unit square
        let q = family_quadrilateral(0, 0).polygon().unwrap();
        let sq = trapezoid(1, 1).polygon().unwrap();
        assert!(are_isomorphic(&q, &sq).is_some());
    }

    #[test]
    fn family_types() {
        for i in 1..=6 {
            let t = family_triangle(i).polygon().unwrap();
            assert_eq!(t.polygon_type(), (i as usize, 3));
            assert_eq!(t.volume(), 2 * i + 1);
            for k in -1..=i {
                let q = family_quadrilateral(i, k).polygon().unwrap();
                assert_eq!(q.polygon_type(), (i as usize, 4));
                assert_eq!(q.volume(), 2 * i + 2);
            }
        }
    }

    #[test]
    fn pyramids_flagged() {
        assert!(family_triangle(0).is_pyramid());
        assert!(family_quadrilateral(0, -1).is_pyramid());
        assert!(trapezoid(3, 0).is_pyramid());
        for i in 1..=4 {
            assert!(!family_triangle(i).is_pyramid());
            for k in -1..=i {
                assert!(!family_quadrilateral(i, k).is_pyramid());
            }
        }
    }

    #[test]
    fn name_parsing() {
        assert_eq!(load_named("A_2").unwrap().points(), a2().points());
        assert_eq!(
            load_named("A^(2)_3").unwrap().points(),
            family_triangle(3).points()
        );
        assert_eq!(
            load_named("A^(3)_{2,1}").unwrap().points(),
            family_quadrilateral(2, 1).points()
        );
        assert_eq!(
            load_named("A^(1)_{2,2}").unwrap().points(),
            trapezoid(2, 2).points()
        );
        assert_eq!(load_named("collinear_5").unwrap().points(), collinear(5).points());
        assert!(load_named("A_12").is_err());
        assert!(load_named("B_1").is_err());
    }
}
