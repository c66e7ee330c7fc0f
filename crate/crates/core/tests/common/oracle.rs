//! Slow reference values from the defining power series, summed in binary
//! fixed point with several hundred guard bits so cancellation at large
//! arguments does not matter.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const BITS: u64 = 768;

/// Fixed-point number `value * 2^-BITS`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fx(BigInt);

impl Fx {
    pub fn zero() -> Self {
        Fx(BigInt::zero())
    }

    pub fn int(n: i64) -> Self {
        Fx(BigInt::from(n) << BITS)
    }

    /// Exact conversion of a finite double.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite());
        if x == 0.0 {
            return Fx::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
        let shift = e + BITS as i64;
        assert!(shift >= 0, "input too small for the fixed-point scale");
        Fx(BigInt::from(sign) * (BigInt::from(mant) << shift as u64))
    }

    pub fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        let len = self.0.bits() as i64;
        let drop = (len - 64).max(0);
        let top = (&self.0 >> drop as u64).to_f64().unwrap();
        let e = drop - BITS as i64;
        // split the power so neither factor under- or overflows
        let half = e / 2;
        top * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
    }

    pub fn add(&self, o: &Fx) -> Fx {
        Fx(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &Fx) -> Fx {
        Fx(&self.0 - &o.0)
    }

    pub fn neg(&self) -> Fx {
        Fx(-&self.0)
    }

    pub fn mul(&self, o: &Fx) -> Fx {
        Fx((&self.0 * &o.0) >> BITS)
    }

    pub fn mul_int(&self, n: i64) -> Fx {
        Fx(&self.0 * n)
    }

    pub fn div_int(&self, n: i64) -> Fx {
        Fx(self.0.div_floor(&BigInt::from(n)))
    }

    pub fn div(&self, o: &Fx) -> Fx {
        Fx((&self.0 << BITS).div_floor(&o.0))
    }

    pub fn is_negligible(&self) -> bool {
        self.0.abs() < BigInt::from(16)
    }
}

/// `atanh(u) = u + u^3/3 + ...` for `|u| <= 1/3`.
fn atanh_small(u: &Fx) -> Fx {
    let u2 = u.mul(u);
    let mut power = u.clone();
    let mut acc = Fx::zero();
    let mut j = 1;
    while !power.is_negligible() {
        acc = acc.add(&power.div_int(j));
        power = power.mul(&u2);
        j += 2;
    }
    acc
}

/// `atan(1/n)` for an integer `n > 1`.
fn atan_inv(n: i64) -> Fx {
    let mut power = Fx::int(1).div_int(n);
    let n2 = n * n;
    let mut acc = Fx::zero();
    let mut j = 1;
    let mut sign = 1;
    while !power.is_negligible() {
        let t = power.div_int(j);
        acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
        power = power.div_int(n2);
        j += 2;
        sign = -sign;
    }
    acc
}

pub fn pi() -> Fx {
    atan_inv(5).mul_int(16).sub(&atan_inv(239).mul_int(4))
}

pub fn ln2() -> Fx {
    // ln 2 = 2 atanh(1/3)
    atanh_small(&Fx::int(1).div_int(3)).mul_int(2)
}

pub fn euler_gamma() -> Fx {
    let digits = "57721566490153286060651209008240243104215933593992359880576723488486772677766467093694706329174674951463144725";
    let num: BigInt = digits.parse().unwrap();
    let den = BigInt::from(10).pow(digits.len() as u32);
    Fx((num << BITS).div_floor(&den))
}

/// Natural logarithm of a positive fixed-point number.
pub fn ln(x: &Fx) -> Fx {
    assert!(x.0.is_positive());
    // x = 2^e y with y in [1, 2)
    let e = x.0.bits() as i64 - 1 - BITS as i64;
    let y = if e >= 0 { Fx(&x.0 >> e as u64) } else { Fx(&x.0 << (-e) as u64) };
    let one = Fx::int(1);
    let u = y.sub(&one).div(&y.add(&one));
    ln2().mul_int(e).add(&atanh_small(&u).mul_int(2))
}

fn factorial(n: i64) -> Fx {
    let mut f = BigInt::one();
    for j in 2..=n {
        f *= j;
    }
    Fx(f << BITS)
}

/// `J_n(z)` from `sum (-1)^m (z/2)^{2m+n} / (m! (m+n)!)`.
pub fn bessel_j_fx(n: i64, z: f64) -> Fx {
    let h = Fx::from_f64(z).div_int(2);
    let h2 = h.mul(&h);
    let mut term = Fx::int(1);
    for _ in 0..n {
        term = term.mul(&h);
    }
    term = term.div(&factorial(n));
    let mut acc = Fx::zero();
    let mut m = 0i64;
    loop {
        acc = acc.add(&term);
        term = term.mul(&h2).div_int((m + 1) * (m + 1 + n)).neg();
        m += 1;
        if term.is_negligible() && (m as f64) > z {
            break;
        }
    }
    acc
}

/// `Y_n(z)` from the series with the logarithmic term and digamma sums.
pub fn bessel_y_fx(n: i64, z: f64) -> Fx {
    let pi = pi();
    let gamma = euler_gamma();
    let h = Fx::from_f64(z).div_int(2);
    let h2 = h.mul(&h);
    let j = bessel_j_fx(n, z);
    let log_part = j.mul(&ln(&h)).mul_int(2);

    // sum_{m<n} (n-m-1)!/m! h^{2m-n}
    let mut finite = Fx::zero();
    if n > 0 {
        let mut hn = Fx::int(1);
        for _ in 0..n {
            hn = hn.mul(&h);
        }
        let mut a = factorial(n - 1).div(&hn);
        for m in 0..n {
            finite = finite.add(&a);
            if m + 1 < n {
                a = a.mul(&h2).div_int((m + 1) * (n - m - 1));
            }
        }
    }

    // sum (-1)^m (psi(m+1) + psi(m+n+1)) h^{2m+n} / (m! (m+n)!)
    // with psi(k) = -gamma + H_{k-1}
    let mut harm_m = Fx::zero(); // H_m
    let mut harm_mn = Fx::zero(); // H_{m+n}
    for j in 1..=n {
        harm_mn = harm_mn.add(&Fx::int(1).div_int(j));
    }
    let mut term = Fx::int(1);
    for _ in 0..n {
        term = term.mul(&h);
    }
    term = term.div(&factorial(n));
    let mut series = Fx::zero();
    let mut m = 0i64;
    loop {
        let psi_sum = harm_m.add(&harm_mn).sub(&gamma.mul_int(2));
        series = series.add(&term.mul(&psi_sum));
        term = term.mul(&h2).div_int((m + 1) * (m + 1 + n)).neg();
        m += 1;
        harm_m = harm_m.add(&Fx::int(1).div_int(m));
        harm_mn = harm_mn.add(&Fx::int(1).div_int(m + n));
        if term.is_negligible() && (m as f64) > z {
            break;
        }
    }
    log_part.sub(&finite).sub(&series).div(&pi)
}

/// Struve `St_0` or `St_1` from the power series.
pub fn struve_fx(n: i64, z: f64) -> Fx {
    let h = Fx::from_f64(z).div_int(2);
    let h2 = h.mul(&h);
    let mut acc = Fx::zero();
    let mut m = 0i64;
    let mut term = if n == 0 { h.mul_int(4) } else { h2.mul_int(8).div_int(3) };
    loop {
        acc = acc.add(&term);
        term = if n == 0 {
            term.mul(&h2).mul_int(4).div_int((2 * m + 3) * (2 * m + 3)).neg()
        } else {
            term.mul(&h2).mul_int(4).div_int((2 * m + 3) * (2 * m + 5)).neg()
        };
        m += 1;
        if term.is_negligible() && (m as f64) > z {
            break;
        }
    }
    acc.div(&pi())
}

pub fn bessel_j(n: i64, z: f64) -> f64 {
    bessel_j_fx(n, z).to_f64()
}

pub fn bessel_y(n: i64, z: f64) -> f64 {
    bessel_y_fx(n, z).to_f64()
}

pub fn struve(n: i64, z: f64) -> f64 {
    struve_fx(n, z).to_f64()
}
