//! Exact planar predicates over cyclotomic coordinates: orientation, lexical
//! comparison, convex hulls and hull membership. Signs combine an exact zero
//! test with interval refinement (see `interval`).

use std::cmp::Ordering;

use crate::cyclotomic::CyclotomicNumber;
use crate::error::Result;
use crate::interval::{im_sign, re_sign};

/// Sign of the signed area of the triangle (a, b, c): +1 for a left turn,
/// 0 for collinear, -1 for a right turn.
pub fn orientation(
    a: &CyclotomicNumber,
    b: &CyclotomicNumber,
    c: &CyclotomicNumber,
) -> Result<i8> {
    let u = b.sub(a)?;
    let v = c.sub(a)?;
    // cross(v, u) = 2i * Im(v * conj(u)) and Im(v * conj(u)) is the signed
    // area of the parallelogram spanned by u, v.
    let x = v.cross(&u)?;
    im_sign(&x)
}

/// Exact lexicographic comparison by (Re, Im).
pub fn lex_cmp(a: &CyclotomicNumber, b: &CyclotomicNumber) -> Result<Ordering> {
    let d = a.sub(b)?;
    let r = re_sign(&d)?;
    if r != 0 {
        return Ok(if r < 0 { Ordering::Less } else { Ordering::Greater });
    }
    let i = im_sign(&d)?;
    Ok(match i {
        0 => Ordering::Equal,
        x if x < 0 => Ordering::Less,
        _ => Ordering::Greater,
    })
}

/// Strict convex hull (vertices only), counterclockwise, starting at the
/// lexicographically least point. Duplicates in the input are tolerated.
pub fn convex_hull(points: &[CyclotomicNumber]) -> Result<Vec<CyclotomicNumber>> {
    let mut pts: Vec<CyclotomicNumber> = points.to_vec();
    // exact sort; lex_cmp cannot fail on distinct reduced values.
    let mut err = None;
    pts.sort_by(|a, b| match lex_cmp(a, b) {
        Ok(o) => o,
        Err(e) => {
            err = Some(e);
            Ordering::Equal
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    pts.dedup();
    if pts.len() <= 2 {
        return Ok(pts);
    }
    let build = |seq: &[CyclotomicNumber]| -> Result<Vec<CyclotomicNumber>> {
        let mut chain: Vec<CyclotomicNumber> = Vec::new();
        for p in seq {
            while chain.len() >= 2 {
                let o = orientation(&chain[chain.len() - 2], &chain[chain.len() - 1], p)?;
                if o <= 0 {
                    chain.pop();
                } else {
                    break;
                }
            }
            chain.push(p.clone());
        }
        Ok(chain)
    };
    let mut lower = build(&pts)?;
    let rev: Vec<CyclotomicNumber> = pts.iter().rev().cloned().collect();
    let mut upper = build(&rev)?;
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(lower)
}

/// Whether p lies in the convex hull given as a ccw vertex list (boundary
/// included). Handles degenerate hulls of size 0, 1, 2.
pub fn point_in_hull(hull: &[CyclotomicNumber], p: &CyclotomicNumber) -> Result<bool> {
    match hull.len() {
        0 => Ok(false),
        1 => Ok(&hull[0] == p),
        2 => point_on_segment(&hull[0], &hull[1], p),
        _ => {
            for i in 0..hull.len() {
                let j = (i + 1) % hull.len();
                if orientation(&hull[i], &hull[j], p)? < 0 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// p on the closed segment [a, b], decided exactly.
pub fn point_on_segment(
    a: &CyclotomicNumber,
    b: &CyclotomicNumber,
    p: &CyclotomicNumber,
) -> Result<bool> {
    if orientation(a, b, p)? != 0 {
        return Ok(false);
    }
    // collinear: check 0 <= dot(p - a, b - a) <= |b - a|^2.
    let u = p.sub(a)?;
    let v = b.sub(a)?;
    let dot = u.mul(&v.conj())?.add(&u.conj().mul(&v)?)?; // 2 Re(u * conj(v))
    let s = re_sign(&dot)?;
    if s < 0 {
        return Ok(false);
    }
    let vv = v.mul(&v.conj())?.scale(&num_rational::BigRational::from_integer(2.into()));
    let d = dot.sub(&vv)?;
    Ok(re_sign(&d)? <= 0)
}
