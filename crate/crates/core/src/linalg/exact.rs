//! Exact solves for complex rational matrices.
//!
//! Rows are first scaled to Gaussian integers, which leaves kernels and
//! solutions unchanged. Nonsingularity is decided modulo a prime; the
//! solution is then guessed from a float solve, rationalized, and checked
//! exactly against every row. Bareiss elimination is the fallback.

use dashu::base::Gcd;

use crate::arith::{rationalize_float, Complex, Float, Int, Natural, Precision, Rational, Scalar};

use super::{ColumnDependence, FullPivotLu, Matrix};

/// Float precisions tried when guessing a solution.
const GUESS_BITS: [usize; 7] = [256, 512, 1024, 2048, 4096, 8192, 16384];

#[derive(Clone, Debug, PartialEq)]
struct GaussInt {
    re: Int,
    im: Int,
}

impl GaussInt {
    fn is_zero(&self) -> bool {
        self.re == Int::ZERO && self.im == Int::ZERO
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: self.re - &o.re,
            im: self.im - &o.im,
        }
    }

    /// `self / d`, which must be exact.
    fn div_exact(&self, d: &GaussInt) -> GaussInt {
        if d.im == Int::ZERO {
            return GaussInt {
                re: &self.re / &d.re,
                im: &self.im / &d.re,
            };
        }
        let norm = &d.re * &d.re + &d.im * &d.im;
        let re = &self.re * &d.re + &self.im * &d.im;
        let im = &self.im * &d.re - &self.re * &d.im;
        GaussInt {
            re: re / &norm,
            im: im / &norm,
        }
    }

    fn to_complex(&self) -> Complex<Rational> {
        Complex::new(
            Rational::from(self.re.clone()),
            Rational::from(self.im.clone()),
        )
    }
}

fn lcm(a: &Natural, b: &Natural) -> Natural {
    let g = a.clone().gcd(b);
    a / g * b
}

/// Each row times the lcm of its denominators.
fn integer_rows(a: &Matrix<Complex<Rational>>) -> Vec<Vec<GaussInt>> {
    a.iter()
        .map(|row| {
            let l = row
                .iter()
                .flat_map(|z| [z.re.denominator(), z.im.denominator()])
                .fold(Natural::ONE, |acc, d| lcm(&acc, d));
            let li = Int::from(l);
            let scale = |x: &Rational| x.numerator() * (&li / Int::from(x.denominator().clone()));
            row.iter()
                .map(|z| GaussInt {
                    re: scale(&z.re),
                    im: scale(&z.im),
                })
                .collect()
        })
        .collect()
}

/// Forward elimination over the columns `0..cols`. Returns the pivot row of
/// each column processed, stopping at the first column without a pivot.
fn eliminate(work: &mut [Vec<GaussInt>], cols: usize) -> (Vec<usize>, Option<usize>) {
    let rows = work.len();
    let width = work.first().map_or(0, Vec::len);
    let mut used = vec![false; rows];
    let mut pivots = Vec::new();
    let mut prev = GaussInt {
        re: Int::ONE,
        im: Int::ZERO,
    };
    for c in 0..cols {
        let Some(p) = (0..rows).find(|&r| !used[r] && !work[r][c].is_zero()) else {
            return (pivots, Some(c));
        };
        used[p] = true;
        pivots.push(p);
        let pivot_row = work[p].clone();
        let pv = pivot_row[c].clone();
        for (r, row) in work.iter_mut().enumerate() {
            if used[r] {
                continue;
            }
            let lead = row[c].clone();
            for j in c + 1..width {
                row[j] = pv
                    .mul(&row[j])
                    .sub(&lead.mul(&pivot_row[j]))
                    .div_exact(&prev);
            }
            row[c] = GaussInt {
                re: Int::ZERO,
                im: Int::ZERO,
            };
        }
        prev = pv;
    }
    (pivots, None)
}

/// Solve the triangular system held in the pivot rows, with right-hand
/// side taken from column `rhs` of the same rows.
fn back_substitute(
    work: &[Vec<GaussInt>],
    pivots: &[usize],
    rhs: usize,
    negate: bool,
) -> Vec<Complex<Rational>> {
    let k = pivots.len();
    let mut x: Vec<Complex<Rational>> = vec![Complex::new(Rational::ZERO, Rational::ZERO); k];
    for j in (0..k).rev() {
        let row = &work[pivots[j]];
        let mut acc = row[rhs].to_complex();
        if negate {
            acc = -acc;
        }
        for t in j + 1..k {
            acc = acc - &(row[t].to_complex() * &x[t]);
        }
        x[j] = acc / &row[j].to_complex();
    }
    x
}

/// Largest prime below 2^64; it is 1 mod 4, so `i` has an image in the field.
const PRIME: u64 = u64::MAX - 58;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn add_mod(a: u64, b: u64) -> u64 {
    ((a as u128 + b as u128) % PRIME as u128) as u64
}

fn sub_mod(a: u64, b: u64) -> u64 {
    add_mod(a, PRIME - b)
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// A square root of −1 modulo [`PRIME`].
fn sqrt_minus_one() -> u64 {
    (2..)
        .map(|g| pow_mod(g, (PRIME - 1) / 4))
        .find(|&s| mul_mod(s, s) == PRIME - 1)
        .expect("a quadratic non-residue exists")
}

fn reduce(x: &Int) -> u64 {
    let r = x % Int::from(PRIME);
    let r = if r < Int::ZERO {
        r + Int::from(PRIME)
    } else {
        r
    };
    u64::try_from(r).expect("reduced below the modulus")
}

/// First dependent column modulo [`PRIME`] and the pivot rows before it.
/// `None` means full column rank modulo the prime, hence also over ℚ(i).
fn modular_scan(rows: &[Vec<GaussInt>], cols: usize) -> Option<(Vec<usize>, usize)> {
    let s = sqrt_minus_one();
    let mut work: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|z| add_mod(reduce(&z.re), mul_mod(reduce(&z.im), s)))
                .collect()
        })
        .collect();
    let mut used = vec![false; work.len()];
    let mut pivots = Vec::new();
    for c in 0..cols {
        let Some(p) = (0..work.len()).find(|&r| !used[r] && work[r][c] != 0) else {
            return Some((pivots, c));
        };
        used[p] = true;
        pivots.push(p);
        let inv = pow_mod(work[p][c], PRIME - 2);
        let pivot_row = work[p].clone();
        for (r, row) in work.iter_mut().enumerate() {
            if used[r] || row[c] == 0 {
                continue;
            }
            let f = mul_mod(row[c], inv);
            for j in c..cols {
                row[j] = sub_mod(row[j], mul_mod(f, pivot_row[j]));
            }
        }
    }
    None
}

/// Whether `Σ_j row_j x_j + row_column = 0` on every row.
fn annihilates(rows: &[Vec<GaussInt>], x: &[Complex<Rational>], column: usize) -> bool {
    let d = x
        .iter()
        .flat_map(|z| [z.re.denominator(), z.im.denominator()])
        .fold(Natural::ONE, |acc, d| lcm(&acc, d));
    let di = Int::from(d);
    let scale = |q: &Rational| q.numerator() * (&di / Int::from(q.denominator().clone()));
    let y: Vec<GaussInt> = x
        .iter()
        .map(|z| GaussInt {
            re: scale(&z.re),
            im: scale(&z.im),
        })
        .collect();
    let last = GaussInt {
        re: di,
        im: Int::ZERO,
    };
    rows.iter().all(|row| {
        let acc = y
            .iter()
            .zip(row)
            .fold(row[column].mul(&last), |acc, (yj, rj)| {
                let t = rj.mul(yj);
                GaussInt {
                    re: acc.re + t.re,
                    im: acc.im + t.im,
                }
            });
        acc.is_zero()
    })
}

/// Float solve at `bits`, rationalized entry by entry.
fn guess(
    a: &Matrix<Complex<Rational>>,
    b: &[Complex<Rational>],
    bits: usize,
) -> Option<Vec<Complex<Rational>>> {
    let ctx = Precision(bits);
    let to_float = |z: &Complex<Rational>| z.map(|x| Float::from_rational(x, ctx));
    let lu = FullPivotLu::new(
        a.iter()
            .map(|row| row.iter().map(to_float).collect())
            .collect(),
    )?;
    let bf: Vec<Complex<Float>> = b.iter().map(to_float).collect();
    let bound = Natural::ONE << (bits / 4);
    Some(
        lu.solve(&bf)
            .iter()
            .map(|z| {
                Complex::new(
                    rationalize_float(&z.re, &bound),
                    rationalize_float(&z.im, &bound),
                )
            })
            .collect(),
    )
}

/// Solution of `a x = b` that makes `Σ_j row_j x_j + row_column` vanish on
/// every row of `rows`, found by guessing at rising precision.
fn certified_guess(
    a: &Matrix<Complex<Rational>>,
    b: &[Complex<Rational>],
    rows: &[Vec<GaussInt>],
    column: usize,
) -> Option<Vec<Complex<Rational>>> {
    if a.is_empty() {
        return annihilates(rows, &[], column).then(Vec::new);
    }
    GUESS_BITS
        .iter()
        .find_map(|&bits| guess(a, b, bits).filter(|x| annihilates(rows, x, column)))
}

fn bareiss_dependence(
    rows: Vec<Vec<GaussInt>>,
    cols: usize,
) -> Option<ColumnDependence<Complex<Rational>>> {
    let mut work = rows;
    let (pivots, dependent) = eliminate(&mut work, cols);
    let column = dependent?;
    let coefficients = back_substitute(&work, &pivots, column, true);
    Some(ColumnDependence {
        column,
        coefficients,
    })
}

/// Exact counterpart of [`super::first_dependent_column`].
pub fn first_dependent_column_exact(
    a: &Matrix<Complex<Rational>>,
) -> Option<ColumnDependence<Complex<Rational>>> {
    let cols = a.first().map_or(0, Vec::len);
    let rows = integer_rows(a);
    let (pivots, column) = modular_scan(&rows, cols)?;
    let sub: Matrix<Complex<Rational>> = pivots.iter().map(|&r| a[r][..column].to_vec()).collect();
    let rhs: Vec<Complex<Rational>> = pivots.iter().map(|&r| -a[r][column].clone()).collect();
    match certified_guess(&sub, &rhs, &rows, column) {
        Some(coefficients) => Some(ColumnDependence {
            column,
            coefficients,
        }),
        None => bareiss_dependence(rows, cols),
    }
}

/// Solve the square system `A x = b`; `None` when `A` is singular.
pub fn solve_exact(
    a: &Matrix<Complex<Rational>>,
    b: &[Complex<Rational>],
) -> Option<Vec<Complex<Rational>>> {
    let n = a.len();
    let augmented: Matrix<Complex<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, y)| row.iter().cloned().chain([-y.clone()]).collect())
        .collect();
    let rows = integer_rows(&augmented);
    if modular_scan(&rows, n).is_none() {
        if let Some(x) = certified_guess(a, b, &rows, n) {
            return Some(x);
        }
    }
    let dep = bareiss_dependence(rows, n + 1)?;
    (dep.column == n).then_some(dep.coefficients)
}
