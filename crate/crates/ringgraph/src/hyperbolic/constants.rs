//! The derived-constant calculator, with ceilings decided by exact dyadic
//! log brackets (never by floating point).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = Ratio<BigInt>;

pub fn rat(n: i64, d: i64) -> Rat {
    Ratio::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Ratio::from_integer(BigInt::from(n))
}

/// ceil of a rational.
pub fn ceil_rat(x: &Rat) -> BigInt {
    x.numer().div_ceil(x.denom())
}

/// Is x an exact power of two (2^k for integer k)?  Returns k.
fn exact_log2(x: &Rat) -> Option<i64> {
    let (n, d) = (x.numer(), x.denom());
    if !n.is_positive() {
        return None;
    }
    let is_pow2 = |v: &BigInt| {
        let (_, bytes) = v.to_bytes_be();
        let mut ones = 0;
        for b in &bytes {
            ones += b.count_ones();
        }
        ones == 1
    };
    if is_pow2(n) && is_pow2(d) {
        Some(n.bits() as i64 - d.bits() as i64)
    } else {
        None
    }
}

/// Certified dyadic bracket [lo, hi] for log2(x), hi - lo <= 2^-bits.
/// Squaring with directed rounding at `prec` fixed-point bits; returns
/// None if the working precision cannot separate a digit (caller retries
/// with more precision; exact powers of two are handled before this).
fn log2_bracket(x: &Rat, bits: u32, prec: u64) -> Option<(Rat, Rat)> {
    assert!(x.is_positive());
    // integer part k with 2^k <= x < 2^(k+1)
    let mut k = x.numer().bits() as i64 - x.denom().bits() as i64;
    let pow2 = |e: i64| -> Rat {
        if e >= 0 {
            Ratio::from_integer(BigInt::one() << e as u64)
        } else {
            Ratio::new(BigInt::one(), BigInt::one() << (-e) as u64)
        }
    };
    while *x < pow2(k) {
        k -= 1;
    }
    while *x >= pow2(k + 1) {
        k += 1;
    }
    // y = x / 2^k in [1, 2); fixed-point interval [ma, mb] / 2^prec
    let scale = BigInt::one() << prec;
    let y = x / pow2(k);
    let ma = (y.numer() << prec) / y.denom();
    let mb = (&ma) + 1u8;
    let (mut ma, mut mb) = (ma, mb);
    let two = BigInt::from(2u8) << prec;
    let mut frac_num = BigInt::zero();
    for _ in 0..bits {
        ma = (&ma * &ma) >> prec;
        mb = ((&mb * &mb) + (&scale - 1u8)) >> prec;
        frac_num <<= 1;
        if ma >= two {
            ma >>= 1;
            mb = (&mb + 1u8) >> 1;
            frac_num += 1;
        } else if mb < two {
            // bit is 0
        } else {
            return None;
        }
        if mb > (BigInt::from(4u8) << prec) {
            return None;
        }
    }
    let denom = BigInt::one() << bits;
    let lo = Ratio::from_integer(BigInt::from(k)) + Ratio::new(frac_num.clone(), denom.clone());
    let hi = Ratio::from_integer(BigInt::from(k)) + Ratio::new(frac_num + 1u8, denom);
    Some((lo, hi))
}

/// ceil(a * log2(x) + b) for rationals a > 0, x > 0, computed exactly.
pub fn ceil_mul_log2(a: &Rat, x: &Rat, b: &Rat) -> Result<BigInt> {
    if !x.is_positive() || !a.is_positive() {
        return Err(Error::precondition("log-domain", "need positive arguments"));
    }
    if let Some(k) = exact_log2(x) {
        return Ok(ceil_rat(&(a * rat_int(k) + b)));
    }
    // a*log2(x) is irrational here, so a fine enough bracket decides
    let mut bits = 32u32;
    let mut prec = 96u64;
    for _ in 0..20 {
        if let Some((lo, hi)) = log2_bracket(x, bits, prec) {
            let clo = ceil_rat(&(a * &lo + b));
            let chi = ceil_rat(&(a * &hi + b));
            if clo == chi {
                return Ok(clo);
            }
        }
        bits += 32;
        prec = prec * 2 + 64;
    }
    Err(Error::resource("log bracket failed to converge"))
}

/// Compare dist <= a * log2(x) exactly for nonnegative integer dist,
/// rational a = p/q > 0 and integer x >= 1:
/// dist <= (p/q) log2(x)  <=>  x^p >= 2^(q*dist).
pub fn le_mul_log2(dist: u64, a: &Rat, x: u64) -> bool {
    if x == 0 {
        return false;
    }
    if dist == 0 {
        return true;
    }
    if x == 1 {
        return false; // log2(1) = 0 < dist
    }
    let p = a.numer().to_biguint().expect("positive rational");
    let q = a.denom().to_biguint().expect("positive rational");
    // x^p >= 2^(q*dist); exponents stay small at desk scale
    let p: u64 = p.try_into().unwrap_or(u64::MAX);
    let q: u64 = q.try_into().unwrap_or(u64::MAX);
    let lhs = num_bigint::BigUint::from(x).pow(p as u32);
    let rhs = num_bigint::BigUint::one() << (q * dist) as usize;
    lhs >= rhs
}

/// The derived constants of the structure theory.  Optional inputs leave
/// the dependent fields unavailable.
#[derive(Debug, Clone)]
pub struct Constants {
    pub c: Rat,
    pub c2: Option<Rat>,
    pub gamma: Option<u64>,
    pub kappa: Option<u64>,
    pub g: Option<u64>,
    /// d = ceil(3 (2c+1) log2(8c+4))
    pub d: BigInt,
    /// l = 4 (c+1) (10d+3)
    pub l: Rat,
    /// b = 312 d + 94
    pub b: BigInt,
    /// beta = 702 d (c+1) + 6 c2
    pub beta: Option<Rat>,
    /// k = ceil(2 (2c+1) log2 g + 4d), for g >= 1
    pub k: Option<BigInt>,
    /// strong hyperbolic constant 2 l kappa (4 gamma d + 2) + 2 l
    pub exp_strong: Option<Rat>,
    /// smallest integers satisfying D > 8 gamma, c > 5 gamma
    pub precolor: Option<(u64, u64)>,
    /// D = 32 gamma + 3, c = 17 gamma
    pub crossing: Option<(u64, u64)>,
}

impl Constants {
    pub fn derive(
        c: Rat,
        c2: Option<Rat>,
        gamma: Option<u64>,
        kappa: Option<u64>,
        g: Option<u64>,
    ) -> Result<Constants> {
        if !c.is_positive() {
            return Err(Error::precondition("cheeger-positive", "c must be positive"));
        }
        if let Some(ref c2v) = c2 {
            if c2v.is_negative() {
                return Err(Error::precondition("c2-nonnegative", "c2 must be >= 0"));
            }
        }
        let two_c_plus_1 = rat_int(2) * &c + rat_int(1);
        let eight_c_plus_4 = rat_int(8) * &c + rat_int(4);
        let d = ceil_mul_log2(&(rat_int(3) * &two_c_plus_1), &eight_c_plus_4, &rat_int(0))?;
        let d_rat = Ratio::from_integer(d.clone());
        let l = rat_int(4) * (&c + rat_int(1)) * (rat_int(10) * &d_rat + rat_int(3));
        let b = BigInt::from(312) * &d + BigInt::from(94);
        let beta = c2
            .as_ref()
            .map(|c2v| rat_int(702) * &d_rat * (&c + rat_int(1)) + rat_int(6) * c2v);
        let k = match g {
            Some(gv) if gv >= 1 => Some(ceil_mul_log2(
                &(rat_int(2) * &two_c_plus_1),
                &rat_int(gv as i64),
                &(rat_int(4) * &d_rat),
            )?),
            _ => None,
        };
        let exp_strong = match (gamma, kappa) {
            (Some(gm), Some(kp)) => {
                let gm = rat_int(gm as i64);
                let kp = rat_int(kp as i64);
                Some(rat_int(2) * &l * &kp * (rat_int(4) * &gm * &d_rat + rat_int(2)) + rat_int(2) * &l)
            }
            _ => None,
        };
        let precolor = gamma.map(|gm| (8 * gm + 1, 5 * gm + 1));
        let crossing = gamma.map(|gm| (32 * gm + 3, 17 * gm));
        Ok(Constants { c, c2, gamma, kappa, g, d, l, b, beta, k, exp_strong, precolor, crossing })
    }

    /// l_C = ceil(2 beta |V(C)|), the ring reach radius of the five-outcome
    /// structure theorem.
    pub fn l_ring(&self, ring_len: usize) -> Option<BigInt> {
        self.beta.as_ref().map(|b| ceil_rat(&(rat_int(2) * b * rat_int(ring_len as i64))))
    }

    /// l_C = ceil(beta (g + |V(C)|)), the variant with outcome (d) removed.
    pub fn l_ring_var(&self, g: u64, ring_len: usize) -> Option<BigInt> {
        self.beta.as_ref().map(|b| ceil_rat(&(b * rat_int(g as i64 + ring_len as i64))))
    }

    /// Vertex bound beta (g + R) of strongly hyperbolic graphs.
    pub fn strong_bound(&self, g: u64, ring_vertices: u64) -> Option<Rat> {
        self.beta.as_ref().map(|b| b * rat_int(g as i64 + ring_vertices as i64))
    }

    /// The short-cycle hypothesis threshold
    /// (c+1) (2R + (32d+10) r + 4(4d+1)(3g-2h)).
    pub fn ewconst_threshold(&self, g: i64, r: i64, ring_vertices: i64, h: i64) -> Rat {
        let d = Ratio::from_integer(self.d.clone());
        (rat_int(1) + &self.c)
            * (rat_int(2 * ring_vertices)
                + (rat_int(32) * &d + rat_int(10)) * rat_int(r)
                + rat_int(4) * (rat_int(4) * &d + rat_int(1)) * (rat_int(3 * g) - rat_int(2 * h)))
    }

    /// Sleeve-decomposition case bounds (m, s) for a connected surface:
    /// case 1 (g=0, r=1), case 2 (g=0, r=2), case 3 (otherwise).  m is
    /// clamped at zero, which the paper's formulas can drop below for
    /// small R.
    pub fn sleeve_case(&self, g: u64, r: u64, ring_vertices: u64) -> (u8, Rat, u64) {
        let d = Ratio::from_integer(self.d.clone());
        let c1 = rat_int(1) + &self.c;
        let rr = rat_int(ring_vertices as i64);
        if g == 0 && r <= 1 {
            (1, &c1 * &rr, 0)
        } else if g == 0 && r == 2 {
            let m = rat_int(2) * &c1 * (&rr - rat_int(4) * &d) + rat_int(2) * &self.l;
            (2, m.max(Rat::zero()), 1)
        } else {
            let b = Ratio::from_integer(self.b.clone());
            let m = &c1
                * (rat_int(2) * (&rr - rat_int(4) * &d)
                    + &b * rat_int(r as i64 - 2)
                    + (rat_int(44) * &d + rat_int(12) + rat_int(2) * &b) * rat_int(g as i64));
            (3, m.max(Rat::zero()), 3 * (2 * g + r).saturating_sub(2).max(0) as u64)
        }
    }

    /// One `name = value` line per derived field, exact values only.
    pub fn report(&self) -> String {
        fn fmt_rat(r: &Rat) -> String {
            if r.denom().is_one() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        let mut out = String::new();
        out.push_str(&format!("c = {}\n", fmt_rat(&self.c)));
        if let Some(c2) = &self.c2 {
            out.push_str(&format!("c2 = {}\n", fmt_rat(c2)));
        }
        out.push_str(&format!("d = {}\n", self.d));
        out.push_str(&format!("l = {}\n", fmt_rat(&self.l)));
        out.push_str(&format!("b = {}\n", self.b));
        if let Some(beta) = &self.beta {
            out.push_str(&format!("beta = {}\n", fmt_rat(beta)));
        }
        if let Some(k) = &self.k {
            out.push_str(&format!("k = {k}\n"));
        }
        if let Some(es) = &self.exp_strong {
            out.push_str(&format!("exp_strong = {}\n", fmt_rat(es)));
        }
        if let Some((dd, cc)) = self.precolor {
            out.push_str(&format!("precolor_D = {dd}\nprecolor_c = {cc}\n"));
        }
        if let Some((dd, cc)) = self.crossing {
            out.push_str(&format!("crossing_D = {dd}\ncrossing_c = {cc}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_at_c_equals_one() {
        let k = Constants::derive(rat_int(1), Some(rat_int(10)), None, None, None).unwrap();
        assert_eq!(k.d, BigInt::from(33));
        assert_eq!(k.l, rat_int(2664));
        assert_eq!(k.b, BigInt::from(10390));
        assert_eq!(k.beta.unwrap(), rat_int(46392));
    }

    #[test]
    fn d_at_c_eighteen() {
        // d = ceil(111 log2 148): log2 148 = 7.2094...; 111 * 7.2094 = 800.24
        let k = Constants::derive(rat_int(18), None, None, None, None).unwrap();
        assert_eq!(k.d, BigInt::from(801));
    }

    #[test]
    fn exact_power_of_two_logs() {
        // c = 7/2: 8c + 4 = 32, log2 = 5 exactly; 3(2c+1) = 24; d = 120
        let k = Constants::derive(rat(7, 2), None, None, None, None).unwrap();
        assert_eq!(k.d, BigInt::from(120));
    }

    #[test]
    fn rederiving_is_identical() {
        let a = Constants::derive(rat(18, 1), Some(rat(57, 1)), Some(20), Some(100), Some(7)).unwrap();
        let b = Constants::derive(rat(18, 1), Some(rat(57, 1)), Some(20), Some(100), Some(7)).unwrap();
        assert_eq!(a.report(), b.report());
    }

    #[test]
    fn log_comparison_helper() {
        // 3 <= 1 * log2(8) = 3: true; 4 <= log2(8): false
        assert!(le_mul_log2(3, &rat_int(1), 8));
        assert!(!le_mul_log2(4, &rat_int(1), 8));
        // (2c+1) log2 4 with c = 1/2: 2 * 2 = 4
        assert!(le_mul_log2(4, &rat_int(2), 4));
        assert!(!le_mul_log2(5, &rat_int(2), 4));
    }

    #[test]
    fn nonpositive_cheeger_rejected() {
        assert!(Constants::derive(rat_int(0), None, None, None, None).is_err());
        assert!(Constants::derive(rat(-1, 2), None, None, None, None).is_err());
    }

    #[test]
    fn c_one_k_function() {
        let k = Constants::derive(rat_int(1), None, None, Some(1), Some(1)).unwrap();
        // g = 1: log2 1 = 0, k = 4d = 132
        assert_eq!(k.k.unwrap(), BigInt::from(132));
    }
}
