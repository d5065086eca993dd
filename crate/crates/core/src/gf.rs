//! Exact arithmetic in small finite fields GF(p^m), p^m <= 2^16.
//!
//! A field is described by its characteristic, extension degree and an
//! explicit monic irreducible modulus polynomial. Elements are encoded as
//! integers in `0..p^m` whose base-p digits `(b_{m-1}, ..., b_0)` are the
//! coefficients of `b_{m-1} a^{m-1} + ... + b_1 a + b_0`, where `a` is the
//! residue of the modulus variable. Multiplication runs on precomputed
//! log/antilog tables over a primitive element.

use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be monic of degree {expected}")]
    NotMonic { expected: u32 },
    #[error("modulus is reducible over GF({p})")]
    NotIrreducible { p: u16 },
    #[error("field order {0} exceeds 2^16")]
    TooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("{value} is not an element encoding for a field of order {q}")]
    OutOfRange { value: u64, q: u32 },
    #[error("cannot parse field element from `{0}`")]
    BadElement(String),
}

/// A validated field GF(p^m) together with its arithmetic tables.
pub struct FieldSpec {
    p: u16,
    m: u32,
    q: u32,
    modulus: Vec<u16>,
    /// exp[i] = g^i for 0 <= i < 2(q-1); doubled so that products of two
    /// logs never need a modular reduction.
    exp: Vec<u16>,
    /// log[v] for v in 1..q; log[0] is unused.
    log: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.p, self.m, self.modulus)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `f` divided by `g` in GF(p)[T]; both are coefficient vectors
/// with the leading coefficient first.
fn poly_rem(f: &[u16], g: &[u16], p: u16) -> Vec<u16> {
    let mut r: Vec<u16> = f.to_vec();
    let glead = g[0];
    let ginv = mod_inv(glead, p);
    while r.len() >= g.len() {
        let factor = (r[0] as u32 * ginv as u32 % p as u32) as u16;
        if factor != 0 {
            for (i, &gc) in g.iter().enumerate() {
                let sub = (factor as u32 * gc as u32) % p as u32;
                r[i] = ((r[i] as u32 + p as u32 - sub as u16 as u32) % p as u32) as u16;
            }
        }
        r.remove(0);
    }
    while r.len() > 1 && r[0] == 0 {
        r.remove(0);
    }
    r
}

fn mod_inv(a: u16, p: u16) -> u16 {
    // p is prime and tiny; Fermat by repeated multiplication.
    let mut acc = 1u32;
    for _ in 0..p - 2 {
        acc = acc * a as u32 % p as u32;
    }
    acc as u16
}

impl FieldSpec {
    /// Validate `(p, m, modulus)` and build the arithmetic tables.
    ///
    /// `modulus` lists the m+1 coefficients `[c_m, ..., c_0]`, leading
    /// coefficient first; it must be monic and irreducible over GF(p).
    pub fn new(p: u16, m: u32, modulus: &[u16]) -> Result<Arc<FieldSpec>, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        if modulus.len() != m as usize + 1 || modulus[0] != 1 || m == 0 {
            return Err(FieldError::NotMonic { expected: m });
        }
        let modulus: Vec<u16> = modulus.iter().map(|&c| c % p).collect();
        if modulus[0] != 1 {
            return Err(FieldError::NotMonic { expected: m });
        }
        let mut q = 1u64;
        for _ in 0..m {
            q *= p as u64;
            if q > 1 << 16 {
                return Err(FieldError::TooLarge(q));
            }
        }
        // Trial division against every monic polynomial of degree <= m/2.
        for d in 1..=m / 2 {
            let count = (p as u64).pow(d);
            for enc in 0..count {
                let mut g = vec![0u16; d as usize + 1];
                g[0] = 1;
                let mut v = enc;
                for i in (1..=d as usize).rev() {
                    g[i] = (v % p as u64) as u16;
                    v /= p as u64;
                }
                let r = poly_rem(&modulus, &g, p);
                if r.len() == 1 && r[0] == 0 {
                    return Err(FieldError::NotIrreducible { p });
                }
            }
        }
        let mut spec = FieldSpec {
            p,
            m,
            q: q as u32,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        spec.build_tables();
        Ok(Arc::new(spec))
    }

    /// Digit-vector product reduced by the modulus; used only while the
    /// log tables are being built.
    fn raw_mul(&self, a: u16, b: u16) -> u16 {
        let p = self.p as u32;
        let m = self.m as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u32; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u32 * y as u32) % p;
            }
        }
        // Reduce degrees >= m using a^m = -(c_1 a^{m-1} + ... + c_m),
        // where the modulus is T^m + c_1 T^{m-1} + ... + c_m.
        for deg in (m..2 * m - 1).rev() {
            let coef = prod[deg];
            if coef == 0 {
                continue;
            }
            prod[deg] = 0;
            for k in 1..=m {
                let c = self.modulus[k] as u32;
                if c == 0 {
                    continue;
                }
                let idx = deg - k;
                let sub = coef * c % p;
                prod[idx] = (prod[idx] + p - sub) % p;
            }
        }
        let mut out = 0u32;
        for d in (0..m).rev() {
            out = out * p + prod[d];
        }
        out as u16
    }

    fn digits(&self, v: u16) -> Vec<u16> {
        // index d holds the coefficient of a^d
        let mut out = vec![0u16; self.m as usize];
        let mut v = v as u32;
        for slot in out.iter_mut() {
            *slot = (v % self.p as u32) as u16;
            v /= self.p as u32;
        }
        out
    }

    fn from_digits(&self, d: &[u16]) -> u16 {
        let mut out = 0u32;
        for i in (0..d.len()).rev() {
            out = out * self.p as u32 + d[i] as u32;
        }
        out as u16
    }

    fn build_tables(&mut self) {
        let q = self.q;
        if q == 2 {
            self.exp = vec![1, 1];
            self.log = vec![0, 0];
            return;
        }
        let order = q - 1;
        'cand: for g in 2..q as u16 {
            let mut seen = 0u32;
            let mut x = 1u16;
            for _ in 0..order {
                x = self.raw_mul(x, g);
                seen += 1;
                if x == 1 {
                    break;
                }
            }
            if x == 1 && seen == order {
                let mut exp = vec![0u16; 2 * order as usize];
                let mut log = vec![0u32; q as usize];
                let mut x = 1u16;
                for i in 0..order as usize {
                    exp[i] = x;
                    exp[i + order as usize] = x;
                    log[x as usize] = i as u32;
                    x = self.raw_mul(x, g);
                }
                self.exp = exp;
                self.log = log;
                break 'cand;
            }
        }
        assert!(!self.exp.is_empty(), "no primitive element found");
    }

    pub fn characteristic(&self) -> u16 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Field order p^m.
    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }

    /// Encoding of the residue class of the modulus variable (the element
    /// usually written `a`). For m = 1 this is the root of the degree-one
    /// modulus itself.
    pub fn alpha(&self) -> u16 {
        if self.m == 1 {
            (self.p - self.modulus[1] % self.p) % self.p
        } else {
            self.p
        }
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        if self.p == 2 {
            return a ^ b;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let sum: Vec<u16> = da
            .iter()
            .zip(&db)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        self.from_digits(&sum)
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        if self.p == 2 {
            return a;
        }
        let d: Vec<u16> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.from_digits(&d)
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u16) -> Result<u16, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let order = self.q - 1;
        Ok(self.exp[(order - self.log[a as usize]) as usize])
    }

    pub fn div(&self, a: u16, b: u16) -> Result<u16, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u16, e: u64) -> u16 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let order = (self.q - 1) as u64;
        let idx = self.log[a as usize] as u64 * (e % order) % order;
        self.exp[idx as usize]
    }

    /// All q element encodings in ascending order, i.e. coefficient vectors
    /// ordered lexicographically by `(b_{m-1}, ..., b_0)`.
    pub fn element_values(&self) -> impl Iterator<Item = u16> {
        0..self.q as u16
    }

    pub fn element(self: &Arc<Self>, value: u64) -> Result<FieldElement, FieldError> {
        if value >= self.q as u64 {
            return Err(FieldError::OutOfRange { value, q: self.q });
        }
        Ok(FieldElement {
            spec: Arc::clone(self),
            value: value as u16,
        })
    }

    pub fn elements(self: &Arc<Self>) -> Vec<FieldElement> {
        (0..self.q as u16)
            .map(|v| FieldElement {
                spec: Arc::clone(self),
                value: v,
            })
            .collect()
    }

    /// Render an encoding in `a`-notation, e.g. 5 in GF(8) as `a^2+1`.
    pub fn format_element(&self, v: u16) -> String {
        if v == 0 {
            return "0".into();
        }
        let digits = self.digits(v);
        let mut parts = Vec::new();
        for d in (0..self.m as usize).rev() {
            let c = digits[d];
            if c == 0 {
                continue;
            }
            let body = match d {
                0 => None,
                1 => Some("a".to_string()),
                _ => Some(format!("a^{}", d)),
            };
            match body {
                None => parts.push(format!("{}", c)),
                Some(b) if c == 1 => parts.push(b),
                Some(b) => parts.push(format!("{}*{}", c, b)),
            }
        }
        parts.join("+")
    }

    /// Parse an element from either a plain integer encoding or a sum in
    /// `a`-notation (`a^2+a+1`, `2*a+1`, ...).
    pub fn parse_element(&self, text: &str) -> Result<u16, FieldError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(FieldError::BadElement(text.into()));
        }
        if let Ok(v) = s.parse::<u64>() {
            if v >= self.q as u64 {
                return Err(FieldError::OutOfRange { value: v, q: self.q });
            }
            return Ok(v as u16);
        }
        let mut acc = 0u16;
        for part in s.split('+') {
            let (coef, rest) = match part.find('*') {
                Some(i) => {
                    let c: u64 = part[..i]
                        .parse()
                        .map_err(|_| FieldError::BadElement(text.into()))?;
                    (c, &part[i + 1..])
                }
                None => (1u64, part),
            };
            let term = if rest.is_empty() && coef != 1 {
                return Err(FieldError::BadElement(text.into()));
            } else if let Ok(c) = rest.parse::<u64>() {
                if c >= self.q as u64 {
                    return Err(FieldError::OutOfRange { value: c, q: self.q });
                }
                c as u16
            } else if rest == "a" {
                self.alpha()
            } else if let Some(k) = rest.strip_prefix("a^") {
                let k: u64 = k.parse().map_err(|_| FieldError::BadElement(text.into()))?;
                self.pow(self.alpha(), k)
            } else {
                return Err(FieldError::BadElement(text.into()));
            };
            if coef >= self.q as u64 {
                return Err(FieldError::OutOfRange { value: coef, q: self.q });
            }
            acc = self.add(acc, self.mul(coef as u16, term));
        }
        Ok(acc)
    }
}

/// A field element that knows its field; arithmetic checks that operands
/// share a spec.
#[derive(Clone)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    value: u16,
}

impl FieldElement {
    pub fn value(&self) -> u16 {
        self.value
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &FieldElement) -> Result<(), FieldError> {
        if *self.spec == *other.spec {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.spec.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.spec.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.spec.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        Ok(self.with(self.spec.inv(self.value)?))
    }

    pub fn neg(&self) -> FieldElement {
        self.with(self.spec.neg(self.value))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.spec.pow(self.value, e))
    }

    fn with(&self, value: u16) -> FieldElement {
        FieldElement {
            spec: Arc::clone(&self.spec),
            value,
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        *self.spec == *other.spec && self.value == other.value
    }
}
impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec.format_element(self.value))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec.format_element(self.value))
    }
}

/// GF(8) with modulus T^3 + T^2 + 1, the field used by the shipped
/// instance data.
pub fn gf8() -> Arc<FieldSpec> {
    FieldSpec::new(2, 3, &[1, 1, 0, 1]).expect("GF(8) spec is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_accepts_the_klein_field() {
        let f = gf8();
        assert_eq!(f.order(), 8);
        assert_eq!(f.characteristic(), 2);
        assert_eq!(f.alpha(), 2);
    }

    #[test]
    fn construction_accepts_gf2_and_other_moduli() {
        let f2 = FieldSpec::new(2, 1, &[1, 1]).unwrap();
        assert_eq!(f2.order(), 2);
        assert_eq!(
            f2.element_values().collect::<Vec<_>>(),
            vec![0, 1],
            "GF(2) enumerates as [0, 1]"
        );
        // Same field, different modulus: axioms must still hold.
        let alt = FieldSpec::new(2, 3, &[1, 0, 1, 1]).unwrap();
        check_axioms(&alt);
        let f9 = FieldSpec::new(3, 2, &[1, 0, 1]).unwrap();
        check_axioms(&f9);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            FieldSpec::new(4, 1, &[1, 1]),
            Err(FieldError::NotPrime(4))
        ));
        assert!(matches!(
            FieldSpec::new(2, 2, &[1, 1]),
            Err(FieldError::NotMonic { .. })
        ));
        // T^3 + 1 = (T + 1)(T^2 + T + 1) over GF(2)
        assert!(matches!(
            FieldSpec::new(2, 3, &[1, 0, 0, 1]),
            Err(FieldError::NotIrreducible { p: 2 })
        ));
        let f = gf8();
        assert!(matches!(f.inv(0), Err(FieldError::DivisionByZero)));
    }

    #[test]
    fn mixed_field_operands_are_rejected() {
        let a = gf8().element(3).unwrap();
        let b = FieldSpec::new(2, 3, &[1, 0, 1, 1])
            .unwrap()
            .element(3)
            .unwrap();
        assert!(matches!(a.add(&b), Err(FieldError::MixedFields)));
        assert!(matches!(a.mul(&b), Err(FieldError::MixedFields)));
    }

    fn check_axioms(f: &Arc<FieldSpec>) {
        let q = f.order() as u16;
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "a * a^-1 = 1 for a = {a}");
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(
                        f.mul(a, f.add(b, c)),
                        f.add(f.mul(a, b), f.mul(a, c)),
                        "distributivity at ({a},{b},{c})"
                    );
                }
            }
        }
    }

    #[test]
    fn gf8_axioms_exhaustive() {
        check_axioms(&gf8());
    }

    #[test]
    fn klein_alpha_relations() {
        let f = gf8();
        let alpha = f.alpha();
        // a * a^2 = a^3 = a^2 + 1 under T^3 + T^2 + 1
        assert_eq!(f.mul(alpha, f.mul(alpha, alpha)), 0b101);
        assert_eq!(f.pow(alpha, 7), 1);
        for x in 0..8 {
            assert_eq!(f.add(x, x), 0, "characteristic 2");
            assert_eq!(f.pow(x, 8), x, "x^q = x");
        }
        for x in 0..8u16 {
            for y in 0..8u16 {
                let lhs = f.pow(f.add(x, y), 2);
                let rhs = f.add(f.pow(x, 2), f.pow(y, 2));
                assert_eq!(lhs, rhs, "Frobenius at ({x},{y})");
            }
        }
    }

    #[test]
    fn nonzero_elements_form_a_cyclic_group() {
        let f = gf8();
        let mut seen = std::collections::HashSet::new();
        let mut x = 1u16;
        for _ in 0..7 {
            x = f.mul(x, f.alpha());
            seen.insert(x);
        }
        assert_eq!(seen.len(), 7);
        assert!(seen.contains(&1));
    }

    #[test]
    fn element_text_round_trips() {
        let f = gf8();
        assert_eq!(f.parse_element("a^2+1").unwrap(), 5);
        assert_eq!(f.parse_element("0").unwrap(), 0);
        assert_eq!(f.parse_element("7").unwrap(), 7);
        assert_eq!(f.parse_element("a").unwrap(), 2);
        for v in 0..8 {
            let text = f.format_element(v);
            assert_eq!(f.parse_element(&text).unwrap(), v, "round trip {text}");
        }
        assert!(f.parse_element("b^2").is_err());
        assert!(f.parse_element("9").is_err());
    }
}
