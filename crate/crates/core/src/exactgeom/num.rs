//! Integer and rational vector helpers shared by the geometry code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(x: i64) -> Int {
    BigInt::from(x)
}

pub fn ints(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rat(x: i64) -> Rat {
    BigRational::from_integer(BigInt::from(x))
}

pub fn to_rat(xs: &[Int]) -> Vec<Rat> {
    xs.iter().cloned().map(BigRational::from_integer).collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Int], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| y * x)
        .fold(Rat::zero(), |acc, t| acc + t)
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divides by the gcd of the entries; the direction (sign) is kept.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Primitive representative of the line through `v`: first nonzero entry positive.
pub fn canonical_line(v: &[Int]) -> Vec<Int> {
    let p = primitive(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => p.iter().map(|x| -x).collect(),
        _ => p,
    }
}

/// Clears denominators and returns the primitive integer vector in the same direction.
pub fn primitive_from_rat(v: &[Rat]) -> Vec<Int> {
    let l = v
        .iter()
        .fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<Int> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    primitive(&scaled)
}

pub fn neg(v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| -x).collect()
}

pub fn add(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Int, v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| c * x).collect()
}

pub fn unit(n: usize, i: usize) -> Vec<Int> {
    (0..n)
        .map(|j| if i == j { Int::one() } else { Int::zero() })
        .collect()
}

/// Sign of an exact number as -1, 0, 1.
pub fn sign_of(x: &Int) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn sign_of_rat(x: &Rat) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().ok()?;
            let q: Int = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => s.parse::<Int>().ok().map(BigRational::from_integer),
    }
}

pub fn fmt_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
