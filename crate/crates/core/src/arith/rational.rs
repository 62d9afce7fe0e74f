use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always stored reduced with a positive denominator.
pub type Rat = BigRational;

pub fn rat(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rat {
    Rat::new(num.into(), den.into())
}

fn pow10(p: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), p as usize)
}

/// `trunc(r * 10^p)`: the integer `m` such that `m / 10^p` is `r` truncated
/// toward zero to `p` decimal digits.
pub fn truncate_to_digits(r: &Rat, p: u32) -> BigInt {
    let scaled = r.numer() * pow10(p);
    // BigInt division truncates toward zero
    scaled / r.denom()
}

/// Renders `m / 10^p` exactly as a decimal string.
pub fn render_fixed(m: &BigInt, p: u32) -> String {
    let neg = m.is_negative();
    let digits = m.abs().to_string();
    let p = p as usize;
    let body = if p == 0 {
        digits
    } else if digits.len() > p {
        format!("{}.{}", &digits[..digits.len() - p], &digits[digits.len() - p..])
    } else {
        format!("0.{}{}", "0".repeat(p - digits.len()), digits)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Decimal rendering with `sig` significant digits (rounded half away from
/// zero). Positional notation for moderate magnitudes, scientific otherwise.
pub fn render_decimal(r: &Rat, sig: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let (num, den) = (r.numer().abs(), r.denom().clone());
    // exponent e with 10^e <= |r| < 10^(e+1)
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
    let ge = |e: i64| -> bool {
        if e >= 0 {
            num >= &den * pow10(e as u32)
        } else {
            &num * pow10((-e) as u32) >= den
        }
    };
    while !ge(e) {
        e -= 1;
    }
    while ge(e + 1) {
        e += 1;
    }
    // mantissa = round(|r| * 10^(sig-1-e))
    let shift = sig as i64 - 1 - e;
    let (n, d) = if shift >= 0 {
        (num * pow10(shift as u32), den)
    } else {
        (num, den * pow10((-shift) as u32))
    };
    let (q, rem) = n.div_rem(&d);
    let mut mant = if &rem * 2 >= d { q + 1 } else { q };
    let mut e = e;
    if mant.to_string().len() > sig {
        mant /= 10;
        e += 1;
    }
    let digits = mant.to_string();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let body = if (-6..30).contains(&e) {
        if e >= 0 {
            let int_len = e as usize + 1;
            if digits.len() <= int_len {
                format!("{}{}", digits, "0".repeat(int_len - digits.len()))
            } else {
                format!("{}.{}", &digits[..int_len], &digits[int_len..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), digits)
        }
    } else {
        let frac = &digits[1..];
        if frac.is_empty() {
            format!("{}e{}", &digits[..1], e)
        } else {
            format!("{}.{}e{}", &digits[..1], frac, e)
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// `num/den` with an explicit denominator, even when it is 1.
pub fn render_fraction(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rat::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let ip_digits = ip.trim_start_matches(['-', '+']);
        if !fp.chars().all(|c| c.is_ascii_digit()) || fp.is_empty() && ip_digits.is_empty() {
            return None;
        }
        let all: BigInt = format!("{}{}", if ip_digits.is_empty() { "0" } else { ip_digits }, fp)
            .parse()
            .ok()?;
        let r = Rat::new(all, pow10(fp.len() as u32));
        return Some(if neg { -r } else { r });
    }
    s.parse::<BigInt>().ok().map(Rat::from_integer)
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn sign_of(r: &Rat) -> Sign {
    r.numer().sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_goes_toward_zero() {
        assert_eq!(truncate_to_digits(&rat(1, 3), 2), BigInt::from(33));
        assert_eq!(truncate_to_digits(&rat(-1, 3), 2), BigInt::from(-33));
        assert_eq!(truncate_to_digits(&rat(2, 3), 0), BigInt::from(0));
        assert_eq!(render_fixed(&BigInt::from(33), 2), "0.33");
        assert_eq!(render_fixed(&BigInt::from(-5), 3), "-0.005");
        assert_eq!(render_fixed(&BigInt::from(12345), 2), "123.45");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(render_decimal(&rat(1, 3), 5), "0.33333");
        assert_eq!(render_decimal(&rat(2, 3), 5), "0.66667");
        assert_eq!(render_decimal(&rat(24, 1), 30), "24");
        assert_eq!(render_decimal(&rat(-7, 2), 30), "-3.5");
        assert_eq!(render_decimal(&rat(999_999, 1), 3), "1000000");
        assert_eq!(render_decimal(&rat(1, 10_000_000), 3), "1e-7");
        assert_eq!(render_fraction(&rat(6, 3)), "2/1");
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-1.25"), Some(rat(-5, 4)));
        assert_eq!(parse_rational("7"), Some(rat(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
