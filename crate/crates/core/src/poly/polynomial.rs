//! Sparse polynomial arithmetic.

use super::{Monomial, MonomialOrder, PolyError};
use crate::gf::FieldSpec;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// How coefficients render in polynomial text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefStyle {
    /// Canonical integer encodings, e.g. `5*X`.
    Encoded,
    /// Sums of powers of `a`, e.g. `(a^2+1)*X`.
    Alpha,
}

/// A polynomial over a fixed field and variable list. Terms are stored
/// without explicit zeros, sorted by the canonical exponent order; semantic
/// leading terms are taken against a caller-supplied [`MonomialOrder`].
#[derive(Clone)]
pub struct Polynomial {
    field: Arc<FieldSpec>,
    vars: Arc<[String]>,
    terms: Vec<(Monomial, u16)>,
}

impl Polynomial {
    pub fn zero(field: &Arc<FieldSpec>, vars: &Arc<[String]>) -> Polynomial {
        Polynomial {
            field: Arc::clone(field),
            vars: Arc::clone(vars),
            terms: Vec::new(),
        }
    }

    pub fn constant(field: &Arc<FieldSpec>, vars: &Arc<[String]>, c: u16) -> Polynomial {
        let mut p = Polynomial::zero(field, vars);
        if c != 0 {
            p.terms.push((Monomial::one(vars.len()), c));
        }
        p
    }

    pub fn one(field: &Arc<FieldSpec>, vars: &Arc<[String]>) -> Polynomial {
        Polynomial::constant(field, vars, 1)
    }

    pub fn term(
        field: &Arc<FieldSpec>,
        vars: &Arc<[String]>,
        mon: Monomial,
        coef: u16,
    ) -> Polynomial {
        debug_assert_eq!(mon.nvars(), vars.len());
        let mut p = Polynomial::zero(field, vars);
        if coef != 0 {
            p.terms.push((mon, coef));
        }
        p
    }

    /// Build from raw terms: combines duplicates, drops zeros, sorts.
    pub fn from_terms(
        field: &Arc<FieldSpec>,
        vars: &Arc<[String]>,
        mut terms: Vec<(Monomial, u16)>,
    ) -> Polynomial {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Monomial, u16)> = Vec::with_capacity(terms.len());
        for (mon, c) in terms {
            debug_assert_eq!(mon.nvars(), vars.len());
            match out.last_mut() {
                Some(last) if last.0 == mon => last.1 = field.add(last.1, c),
                _ => out.push((mon, c)),
            }
        }
        out.retain(|&(_, c)| c != 0);
        Polynomial {
            field: Arc::clone(field),
            vars: Arc::clone(vars),
            terms: out,
        }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u16)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|(m, _)| m)
    }

    pub fn coeff(&self, mon: &Monomial) -> u16 {
        match self.terms.binary_search_by(|(m, _)| m.cmp(mon)) {
            Ok(i) => self.terms[i].1,
            Err(_) => 0,
        }
    }

    fn compatible(&self, other: &Polynomial) -> Result<(), PolyError> {
        if *self.field != *other.field {
            return Err(PolyError::MixedFields);
        }
        if self.vars != other.vars && *self.vars != *other.vars {
            return Err(PolyError::DimensionMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.compatible(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            let cb = if negate { f.neg(*cb) } else { *cb };
            match ma.cmp(mb) {
                Ordering::Less => {
                    out.push((ma.clone(), *ca));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((mb.clone(), cb));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(*ca, cb);
                    if c != 0 {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        for (m, c) in &other.terms[j..] {
            let c = if negate { f.neg(*c) } else { *c };
            out.push((m.clone(), c));
        }
        Polynomial {
            field: Arc::clone(&self.field),
            vars: Arc::clone(&self.vars),
            terms: out,
        }
    }

    pub fn neg(&self) -> Polynomial {
        let mut p = self.clone();
        for t in &mut p.terms {
            t.1 = self.field.neg(t.1);
        }
        p
    }

    pub fn scale(&self, c: u16) -> Polynomial {
        if c == 0 {
            return Polynomial::zero(&self.field, &self.vars);
        }
        let mut p = self.clone();
        for t in &mut p.terms {
            t.1 = self.field.mul(t.1, c);
        }
        p
    }

    /// Multiply by the single term `c * mon`; preserves term order.
    pub fn mul_term(&self, mon: &Monomial, c: u16) -> Polynomial {
        if c == 0 {
            return Polynomial::zero(&self.field, &self.vars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, k)| (m.mul(mon), self.field.mul(*k, c)))
            .collect();
        Polynomial {
            field: Arc::clone(&self.field),
            vars: Arc::clone(&self.vars),
            terms,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.compatible(other)?;
        let mut acc = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.push((ma.mul(mb), self.field.mul(*ca, *cb)));
            }
        }
        Ok(Polynomial::from_terms(&self.field, &self.vars, acc))
    }

    /// Leading term under `order`; errors on the zero polynomial.
    pub fn leading_term(&self, order: &MonomialOrder) -> Result<(&Monomial, u16), PolyError> {
        let mut best: Option<&(Monomial, u16)> = None;
        for t in &self.terms {
            best = match best {
                None => Some(t),
                Some(b) => {
                    if order.cmp_unchecked(&t.0, &b.0) == Ordering::Greater {
                        Some(t)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best.map(|(m, c)| (m, *c)).ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Result<&Monomial, PolyError> {
        Ok(self.leading_term(order)?.0)
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self, order: &MonomialOrder) -> Result<Polynomial, PolyError> {
        let (_, lc) = self.leading_term(order)?;
        if lc == 1 {
            return Ok(self.clone());
        }
        Ok(self.scale(self.field.inv(lc).expect("leading coefficient nonzero")))
    }

    /// Multivariate division: returns `(quotients, remainder)` with
    /// `self = sum(q_i * g_i) + r` and no monomial of `r` divisible by any
    /// divisor's leading monomial. Always reduces the current leading term,
    /// scanning the divisors in list order, so quotients are deterministic.
    pub fn divide(
        &self,
        order: &MonomialOrder,
        divisors: &[&Polynomial],
    ) -> Result<(Vec<Polynomial>, Polynomial), PolyError> {
        let mut leads = Vec::with_capacity(divisors.len());
        for g in divisors {
            self.compatible(g)?;
            leads.push(g.leading_term(order).map_err(|_| PolyError::ZeroDivisor)?);
        }
        let leads: Vec<(Monomial, u16)> =
            leads.into_iter().map(|(m, c)| (m.clone(), c)).collect();
        let mut quots = vec![Polynomial::zero(&self.field, &self.vars); divisors.len()];
        let mut rem = Vec::new();
        let mut h = self.clone();
        while !h.is_zero() {
            let (lm, lc) = {
                let (m, c) = h.leading_term(order).expect("h nonzero");
                (m.clone(), c)
            };
            let hit = leads
                .iter()
                .position(|(gm, _)| gm.divides(&lm));
            match hit {
                Some(i) => {
                    let factor_mon = lm.div(&leads[i].0).expect("divides");
                    let factor_c = self
                        .field
                        .div(lc, leads[i].1)
                        .expect("divisor leading coefficient nonzero");
                    quots[i] = quots[i].merge(
                        &Polynomial::term(&self.field, &self.vars, factor_mon.clone(), factor_c),
                        false,
                    );
                    let sub = divisors[i].mul_term(&factor_mon, factor_c);
                    h = h.merge(&sub, true);
                }
                None => {
                    rem.push((lm.clone(), lc));
                    h = h.merge(
                        &Polynomial::term(&self.field, &self.vars, lm, lc),
                        true,
                    );
                }
            }
        }
        let rem = Polynomial::from_terms(&self.field, &self.vars, rem);
        Ok((quots, rem))
    }

    /// Evaluate at a point given as one encoding per variable.
    pub fn eval(&self, point: &[u16]) -> u16 {
        debug_assert_eq!(point.len(), self.nvars());
        let f = &self.field;
        let mut acc = 0u16;
        for (mon, c) in &self.terms {
            let mut term = *c;
            for (i, &e) in mon.exps().iter().enumerate() {
                if e != 0 {
                    term = f.mul(term, f.pow(point[i], e as u64));
                }
            }
            acc = f.add(acc, term);
        }
        acc
    }

    /// Render with terms in descending `order`.
    pub fn to_text(&self, order: &MonomialOrder, style: CoefStyle) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<&(Monomial, u16)> = self.terms.iter().collect();
        terms.sort_by(|a, b| order.cmp_unchecked(&b.0, &a.0));
        let mut parts = Vec::new();
        for (mon, c) in terms {
            let coef = match style {
                CoefStyle::Encoded => format!("{}", c),
                CoefStyle::Alpha => self.field.format_element(*c),
            };
            let part = if mon.is_one() {
                coef
            } else if *c == 1 {
                mon.format(&self.vars)
            } else if coef.contains('+') {
                format!("({})*{}", coef, mon.format(&self.vars))
            } else {
                format!("{}*{}", coef, mon.format(&self.vars))
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && *self.vars == *other.vars && self.terms == other.terms
    }
}
impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| format!("{}*{}", c, m.format(&self.vars)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_polynomial;
    use super::*;
    use crate::gf::gf8;

    fn setup() -> (Arc<FieldSpec>, Arc<[String]>, MonomialOrder) {
        (
            gf8(),
            vec!["X".to_string(), "Y".to_string()].into(),
            MonomialOrder::weighted(vec![2, 3], vec![1]),
        )
    }

    #[test]
    fn leading_monomial_follows_the_order() {
        let (f, vars, ord) = setup();
        let p = parse_polynomial(&f, &vars, "Y^3 + X^3*Y + X").unwrap();
        assert_eq!(p.leading_monomial(&ord).unwrap(), &Monomial::new(&[0, 3]));
        let c = parse_polynomial(&f, &vars, "5").unwrap();
        assert_eq!(c.leading_monomial(&ord).unwrap(), &Monomial::one(2));
        let zero = Polynomial::zero(&f, &vars);
        assert_eq!(zero.leading_monomial(&ord), Err(PolyError::ZeroPolynomial));
        // X^2*Y carries weight 7 and beats every lower term.
        let g = parse_polynomial(&f, &vars, "X^2*Y + 3*Y^2 + 6*X*Y + 2*Y + 4").unwrap();
        assert_eq!(g.leading_monomial(&ord).unwrap(), &Monomial::new(&[2, 1]));
    }

    #[test]
    fn division_by_a_field_equation() {
        let (f, vars, ord) = setup();
        let x8 = parse_polynomial(&f, &vars, "X^8").unwrap();
        let feq = parse_polynomial(&f, &vars, "X^8 + X").unwrap();
        let (quots, rem) = x8.divide(&ord, &[&feq]).unwrap();
        assert_eq!(rem, parse_polynomial(&f, &vars, "X").unwrap());
        assert_eq!(quots[0], Polynomial::one(&f, &vars));
        let (_, r2) = feq.divide(&ord, &[&feq]).unwrap();
        assert!(r2.is_zero(), "F divided by F leaves no remainder");
    }

    #[test]
    fn division_reconstructs_and_avoids_leading_monomials() {
        let (f, vars, ord) = setup();
        let fp = parse_polynomial(&f, &vars, "X^5*Y^2 + 3*X^2*Y + a*X + 1").unwrap();
        let g1 = parse_polynomial(&f, &vars, "Y^3 + X^3*Y + X").unwrap();
        let g2 = parse_polynomial(&f, &vars, "X^2*Y + 5").unwrap();
        let divisors = [&g1, &g2];
        let (quots, rem) = fp.divide(&ord, &divisors).unwrap();
        let mut rebuilt = rem.clone();
        for (q, g) in quots.iter().zip(divisors) {
            rebuilt = rebuilt.add(&q.mul(g).unwrap()).unwrap();
        }
        assert_eq!(rebuilt, fp);
        for mon in rem.support() {
            for g in divisors {
                assert!(!g.leading_monomial(&ord).unwrap().divides(mon));
            }
        }
    }

    #[test]
    fn reduction_chain_for_a_quadratic_times_the_curve() {
        // Y^2 * (X^2*Y + b*Y^2 + c*X*Y + d*Y + a) reduced by the curve
        // generator, the field equations and F itself ends in
        // (a+1)*X^3 + b*X*Y + c*X^2 + d*X + a*Y^2 for every coefficient
        // choice with a != 0.
        let (f, vars, ord) = setup();
        let gb = [
            parse_polynomial(&f, &vars, "Y^3 + X^3*Y + X").unwrap(),
            parse_polynomial(&f, &vars, "X^8 + X").unwrap(),
            parse_polynomial(&f, &vars, "X^7*Y + Y").unwrap(),
        ];
        let y2 = parse_polynomial(&f, &vars, "Y^2").unwrap();
        for a in 1..8u16 {
            for (b, c, d) in [(0, 0, 0), (1, 2, 3), (7, 7, 7), (4, 0, 6), (2, 5, 1)] {
                let fpoly = parse_polynomial(
                    &f,
                    &vars,
                    &format!("X^2*Y + {b}*Y^2 + {c}*X*Y + {d}*Y + {a}"),
                )
                .unwrap();
                let divisors = [&gb[0], &gb[1], &gb[2], &fpoly];
                let (_, rem) = y2.mul(&fpoly).unwrap().divide(&ord, &divisors).unwrap();
                let expected = parse_polynomial(
                    &f,
                    &vars,
                    &format!(
                        "{}*X^3 + {b}*X*Y + {c}*X^2 + {d}*X + {a}*Y^2",
                        f.add(a, 1)
                    ),
                )
                .unwrap();
                assert_eq!(rem, expected, "chain for a={a} b={b} c={c} d={d}");
                if a != 1 {
                    assert_eq!(rem.leading_monomial(&ord).unwrap(), &Monomial::new(&[0, 2]));
                }
            }
        }
    }
}
