//! LaTeX rendering and parsing of fraction sums, one fraction per line:
//!
//! ```text
//! +(x_2^{5}+2x_2^{4}) \frac{1}{(1-x_1x_2^{2})} \frac{1}{(1-x_2^{2})^{3}}
//! ```
//!
//! Monomials print as `x_1^{2}x_2^{-4}` with exponent 1 omitted; numerators
//! with more than one term are parenthesized; a numerator of 1 is left out.
//! The parser accepts exactly this dialect (plus unbraced single-digit
//! powers), so rendered output round-trips.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::genfunc::{DenominatorFactor, FractionSum, GeneratingFraction};
use crate::laurent::{IntVector, LaurentPoly};

pub fn render_monomial(e: &IntVector) -> String {
    let mut out = String::new();
    for (j, c) in e.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        out.push_str(&format!("x_{}", j + 1));
        if !c.is_one() {
            out.push_str(&format!("^{{{}}}", c));
        }
    }
    out
}

fn render_coeff_monomial(e: &IntVector, c: &Rational) -> String {
    let mono = render_monomial(e);
    let c_str = if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    };
    if mono.is_empty() {
        return c_str;
    }
    if c.is_one() {
        return mono;
    }
    if (-c.clone()).is_one() {
        return format!("-{mono}");
    }
    format!("{c_str}{mono}")
}

pub fn render_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (e, c) in p.terms() {
        let t = render_coeff_monomial(e, c);
        if !out.is_empty() && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(&t);
    }
    out
}

pub fn render_factor(f: &DenominatorFactor) -> String {
    let mono = render_monomial(&f.vector());
    if f.multiplicity() == 1 {
        format!("\\frac{{1}}{{(1-{mono})}}")
    } else {
        format!("\\frac{{1}}{{(1-{mono})^{{{}}}}}", f.multiplicity())
    }
}

pub fn render_fraction(f: &GeneratingFraction) -> String {
    let numerator = if f.numerator == LaurentPoly::one(f.dim()) {
        String::new()
    } else if f.numerator.num_terms() == 1 {
        render_poly(&f.numerator)
    } else {
        format!("({})", render_poly(&f.numerator))
    };
    let dens: Vec<String> = f.denominators().iter().map(render_factor).collect();
    let lead = if numerator.starts_with('-') { "" } else { "+" };
    if numerator.is_empty() {
        format!("+ {}", dens.join(" "))
    } else {
        format!("{lead}{numerator} {}", dens.join(" "))
    }
}

/// One fraction per line; deterministic because fraction and term order are
/// canonical.
pub fn render_fraction_sum(s: &FractionSum) -> String {
    let mut out = String::new();
    for f in &s.fractions {
        out.push_str(&render_fraction(f));
        out.push('\n');
    }
    out
}

/// Congruence-system block for a basic quasinumber, e.g.
/// `\tau\left[\begin{matrix}1&0\\0&2\end{matrix}\gamma\equiv\begin{matrix}0\\1\end{matrix}\pmod{2}\right]`.
pub fn render_quasinumber(b: &crate::quasi::BasicQuasiNumber) -> String {
    let (m, c) = b.system();
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m[(i, j)].to_string())
                .collect::<Vec<_>>()
                .join("&")
        })
        .collect();
    let rhs: Vec<String> = c.iter().map(|v| v.to_string()).collect();
    format!(
        r"\tau\left[\begin{{matrix}}{}\end{{matrix}}\gamma\equiv\begin{{matrix}}{}\end{{matrix}}\pmod{{{}}}\right]",
        rows.join(r"\\"),
        rhs.join("\\"),
        b.modulus()
    )
}

// ---------------------------------------------------------------------------
// parsing

struct Scanner<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Scanner<'a> {
    fn new(s: &'a str) -> Self {
        Scanner { s: s.as_bytes(), i: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.i += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> Result<()> {
        if self.try_eat(tok) {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected `{tok}` at offset {} in `{}`",
                self.i,
                String::from_utf8_lossy(self.s)
            )))
        }
    }

    fn try_eat(&mut self, tok: &str) -> bool {
        if self.s[self.i..].starts_with(tok.as_bytes()) {
            self.i += tok.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.i;
        if self.peek() == Some(b'-') {
            self.i += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.i += 1;
        }
        if self.i == start || (self.i == start + 1 && self.s[start] == b'-') {
            return Err(Error::Parse(format!("integer expected at offset {start}")));
        }
        Ok(std::str::from_utf8(&self.s[start..self.i])
            .unwrap()
            .parse()
            .unwrap())
    }

    fn opt_unsigned(&mut self) -> Option<BigInt> {
        let start = self.i;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.i += 1;
        }
        if self.i == start {
            None
        } else {
            Some(
                std::str::from_utf8(&self.s[start..self.i])
                    .unwrap()
                    .parse()
                    .unwrap(),
            )
        }
    }

    /// `[coeff][/denom]` then `x_i(^{e})*`; at least one of the two parts.
    fn monomial(&mut self, dim: usize) -> Result<(Rational, IntVector)> {
        let start = self.i;
        let mut coeff = Rational::one();
        if let Some(n) = self.opt_unsigned() {
            coeff = Rational::from_integer(n);
            if self.try_eat("/") {
                let d = self.integer()?;
                coeff /= Rational::from_integer(d);
            }
        }
        let mut exps = vec![BigInt::zero(); dim];
        let mut seen = false;
        while self.try_eat("x_") {
            seen = true;
            let idx = self
                .opt_unsigned()
                .ok_or_else(|| Error::Parse("variable index expected".into()))?;
            let idx: usize = idx.to_string().parse().unwrap();
            if idx == 0 || idx > dim {
                return Err(Error::Parse(format!(
                    "variable x_{idx} out of range for dimension {dim}"
                )));
            }
            let mut e = BigInt::one();
            if self.try_eat("^{") {
                e = self.integer()?;
                self.eat("}")?;
            } else if self.try_eat("^") {
                e = self.integer()?;
            }
            exps[idx - 1] += e;
        }
        if !seen && self.i == start {
            return Err(Error::Parse(format!("monomial expected at offset {start}")));
        }
        Ok((coeff, IntVector::new(exps)))
    }

    /// Signed monomial sum, stopping at the closing char or `\`.
    fn poly(&mut self, dim: usize, closer: Option<u8>) -> Result<LaurentPoly> {
        let mut p = LaurentPoly::zero(dim);
        let mut first = true;
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(c) if Some(c) == closer => break,
                Some(b'\\') => break,
                _ => {}
            }
            let mut sign = Rational::one();
            if self.try_eat("+") {
            } else if self.try_eat("-") {
                sign = -sign;
            } else if !first {
                return Err(Error::Parse(format!("sign expected at offset {}", self.i)));
            }
            self.skip_ws();
            let (c, e) = self.monomial(dim)?;
            p.add_term(e, sign * c);
            first = false;
        }
        Ok(p)
    }
}

/// Parse one `[sign][numerator] \frac{1}{(1-..)^m} ...` line.
pub fn parse_fraction_line(line: &str, dim: usize) -> Result<GeneratingFraction> {
    let mut sc = Scanner::new(line.trim());
    sc.skip_ws();
    let mut negate = false;
    if sc.try_eat("+") {
    } else if sc.try_eat("-") {
        negate = true;
    }
    sc.skip_ws();
    let mut numerator = if sc.try_eat("(") {
        let p = sc.poly(dim, Some(b')'))?;
        sc.eat(")")?;
        p
    } else if sc.peek() == Some(b'\\') {
        LaurentPoly::one(dim)
    } else {
        let (c, e) = sc.monomial(dim)?;
        LaurentPoly::monomial(e, c)
    };
    if negate {
        numerator = numerator.neg();
    }
    let mut dens = Vec::new();
    loop {
        sc.skip_ws();
        if sc.peek().is_none() {
            break;
        }
        sc.eat("\\frac{1}{(1-")?;
        let (c, v) = sc.monomial(dim)?;
        if !c.is_one() {
            return Err(Error::Parse("denominator monomial must have coefficient 1".into()));
        }
        if v.is_zero() {
            return Err(Error::Parse("denominator vector must be nonzero".into()));
        }
        sc.eat(")")?;
        let mut mult = BigInt::one();
        if sc.try_eat("^{") {
            mult = sc.integer()?;
            sc.eat("}")?;
        } else if sc.try_eat("^") {
            mult = sc.integer()?;
        }
        sc.eat("}")?;
        let mult: u32 = mult
            .to_string()
            .parse()
            .map_err(|_| Error::Parse("multiplicity out of range".into()))?;
        if mult == 0 {
            return Err(Error::Parse("multiplicity must be positive".into()));
        }
        dens.push(DenominatorFactor::new(v, 1, mult));
    }
    if dens.is_empty() {
        return Err(Error::Parse("fraction line has no denominators".into()));
    }
    Ok(GeneratingFraction::new(numerator, dens))
}

/// Parse a whole file: `%` lines are comments, a bare `=` separator and any
/// header line before it are skipped, every other nonempty line is a fraction.
pub fn parse_fraction_sum(text: &str, dim: usize) -> Result<FractionSum> {
    let mut fractions = Vec::new();
    let mut lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('%'))
        .collect();
    if let Some(pos) = lines.iter().position(|l| *l == "=") {
        lines.drain(..=pos);
    }
    for line in lines {
        fractions.push(parse_fraction_line(line, dim)?);
    }
    Ok(FractionSum::new(dim, fractions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    #[test]
    fn monomial_rendering() {
        let e = iv(&[2, -4]);
        assert_eq!(render_monomial(&e), "x_1^{2}x_2^{-4}");
        assert_eq!(render_monomial(&iv(&[1, 0])), "x_1");
        assert_eq!(render_monomial(&iv(&[0, 0])), "");
    }

    #[test]
    fn fraction_round_trip() {
        let line = "+(x_2^{5}+2x_2^{4}+x_2^{3}) \\frac{1}{(1-x_1x_2^{2})} \\frac{1}{(1-x_2^{2})^{3}}";
        let f = parse_fraction_line(line, 2).unwrap();
        assert_eq!(f.numerator.coeff(&iv(&[0, 4])), rat_int(2));
        // canonical order puts the (0,2)-direction factor first
        assert_eq!(f.denominators()[0].multiplicity(), 3);
        assert_eq!(f.denominators()[1].vector(), iv(&[1, 2]));
        let rendered = render_fraction(&f);
        let back = parse_fraction_line(&rendered, 2).unwrap();
        assert_eq!(f.numerator, back.numerator);
        assert_eq!(f.denominators(), back.denominators());
    }

    #[test]
    fn bare_and_negative_numerators() {
        let f = parse_fraction_line("-x_2 \\frac{1}{(1-x_1x_2)} \\frac{1}{(1-x_2)^2}", 2).unwrap();
        assert_eq!(f.numerator.coeff(&iv(&[0, 1])), rat_int(-1));
        assert_eq!(f.denominators()[0].vector(), iv(&[0, 1]));
        assert_eq!(f.denominators()[0].multiplicity(), 2);
        let f = parse_fraction_line("+ \\frac{1}{(1-x_1)}", 2).unwrap();
        assert_eq!(f.numerator, LaurentPoly::one(2));
    }

    #[test]
    fn quasinumber_rendering() {
        use crate::quasi::BasicQuasiNumber;
        use num_bigint::BigInt;
        let b = BasicQuasiNumber::new(
            &crate::arith::IntMatrix::from_i64(1, 2, &[1, 0]),
            &[BigInt::from(1)],
            &BigInt::from(2),
        )
        .unwrap();
        let s = render_quasinumber(&b);
        assert!(s.contains(r"\pmod{2}"));
        assert!(s.starts_with(r"\tau"));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_fraction_line("nonsense", 2).is_err());
        assert!(parse_fraction_line("+x_3 \\frac{1}{(1-x_1)}", 2).is_err());
        assert!(parse_fraction_line("+x_1", 2).is_err());
    }
}
