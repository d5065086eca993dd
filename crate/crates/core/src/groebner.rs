//! Buchberger's algorithm, reduced bases, normal forms and footprints.

use crate::gf::FieldSpec;
use crate::poly::{Monomial, MonomialOrder, Polynomial};
use std::cmp::Ordering;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("the footprint is infinite: variable {0} has no pure power among the leading monomials")]
    InfiniteFootprint(String),
}

/// Generators of an ideal, optionally extended by the field equations
/// `X_i^q - X_i` which force a finite variety inside the base field.
#[derive(Clone)]
pub struct IdealSpec {
    pub field: Arc<FieldSpec>,
    pub vars: Arc<[String]>,
    pub generators: Vec<Polynomial>,
    pub add_field_equations: bool,
}

impl IdealSpec {
    pub fn new(
        field: Arc<FieldSpec>,
        vars: Arc<[String]>,
        generators: Vec<Polynomial>,
        add_field_equations: bool,
    ) -> IdealSpec {
        IdealSpec {
            field,
            vars,
            generators,
            add_field_equations,
        }
    }

    /// The generator list with field equations appended when requested.
    pub fn all_generators(&self) -> Vec<Polynomial> {
        let mut gens = self.generators.clone();
        if self.add_field_equations {
            let q = self.field.order() as u64;
            for i in 0..self.vars.len() {
                let mut exps = vec![0u16; self.vars.len()];
                exps[i] = q as u16;
                let xq = Polynomial::term(&self.field, &self.vars, Monomial::new(&exps), 1);
                let x = Polynomial::term(
                    &self.field,
                    &self.vars,
                    Monomial::var(i, self.vars.len()),
                    self.field.neg(1),
                );
                gens.push(xq.add(&x).expect("same ring"));
            }
        }
        gens
    }

    /// The ideal extended by one more generator.
    pub fn with_extra(&self, extra: Polynomial) -> IdealSpec {
        let mut out = self.clone();
        out.generators.push(extra);
        out
    }
}

/// A reduced Groebner basis: monic elements, no monomial of any element
/// divisible by the leading monomial of another, sorted ascending by
/// leading monomial.
pub struct GroebnerBasis {
    field: Arc<FieldSpec>,
    vars: Arc<[String]>,
    order: MonomialOrder,
    polys: Vec<Polynomial>,
    leads: Vec<Monomial>,
}

/// A term with its order weight cached; weights add under monomial
/// multiplication for every supported order kind, so shifted copies never
/// recompute them.
#[derive(Clone)]
struct Term {
    w: u64,
    mon: Monomial,
    c: u16,
}

#[inline]
fn term_cmp(order: &MonomialOrder, a: &Term, b: &Term) -> Ordering {
    match a.w.cmp(&b.w) {
        Ordering::Equal => order.cmp_unchecked(&a.mon, &b.mon),
        other => other,
    }
}

/// Weight compatible with `term_cmp`: the graded part of the order, or 0
/// for plain lex (every comparison then falls through to the full order).
fn order_weight(order: &MonomialOrder, mon: &Monomial) -> u64 {
    match order.kind() {
        crate::poly::OrderKind::Lex => 0,
        crate::poly::OrderKind::GradedLex => mon.total_degree(),
        crate::poly::OrderKind::Weighted(w) => mon.weight(w),
    }
}

/// Terms sorted descending by the working order; the hot representation
/// inside reductions.
#[derive(Clone)]
struct OrdPoly {
    terms: Vec<Term>,
}

impl OrdPoly {
    fn from_poly(p: &Polynomial, order: &MonomialOrder) -> OrdPoly {
        let mut terms: Vec<Term> = p
            .terms()
            .map(|(m, c)| Term {
                w: order_weight(order, m),
                mon: m.clone(),
                c,
            })
            .collect();
        terms.sort_by(|a, b| term_cmp(order, b, a));
        OrdPoly { terms }
    }

    fn into_poly(self, field: &Arc<FieldSpec>, vars: &Arc<[String]>) -> Polynomial {
        Polynomial::from_terms(
            field,
            vars,
            self.terms.into_iter().map(|t| (t.mon, t.c)).collect(),
        )
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self[tail_from..] - c * X^shift * g`, all lists descending in the
    /// same order.
    fn sub_mul(
        &self,
        tail_from: usize,
        g: &OrdPoly,
        shift: &Monomial,
        shift_w: u64,
        c: u16,
        field: &FieldSpec,
        order: &MonomialOrder,
    ) -> OrdPoly {
        let a = &self.terms[tail_from..];
        let mut out = Vec::with_capacity(a.len() + g.terms.len());
        let (mut i, mut j) = (0usize, 0usize);
        while i < a.len() && j < g.terms.len() {
            let gt = &g.terms[j];
            let gw = gt.w + shift_w;
            let cmp = match a[i].w.cmp(&gw) {
                Ordering::Equal => order.cmp_unchecked(&a[i].mon, &gt.mon.mul(shift)),
                other => other,
            };
            match cmp {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        w: gw,
                        mon: gt.mon.mul(shift),
                        c: field.neg(field.mul(c, gt.c)),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let v = field.sub(a[i].c, field.mul(c, gt.c));
                    if v != 0 {
                        out.push(Term {
                            w: gw,
                            mon: a[i].mon.clone(),
                            c: v,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        while j < g.terms.len() {
            let gt = &g.terms[j];
            out.push(Term {
                w: gt.w + shift_w,
                mon: gt.mon.mul(shift),
                c: field.neg(field.mul(c, gt.c)),
            });
            j += 1;
        }
        OrdPoly { terms: out }
    }

    fn scale(&mut self, c: u16, field: &FieldSpec) {
        for t in &mut self.terms {
            t.c = field.mul(t.c, c);
        }
    }
}

/// Fully reduce `p` by `basis` (all elements monic): the result contains
/// no monomial divisible by any basis leading monomial.
fn reduce_full(
    p: OrdPoly,
    basis: &[OrdPoly],
    leads: &[Monomial],
    field: &FieldSpec,
    order: &MonomialOrder,
) -> OrdPoly {
    let mut out: Vec<Term> = Vec::new();
    let mut h = p;
    let mut start = 0usize;
    'outer: while start < h.terms.len() {
        let (lm, lw, lc) = (&h.terms[start].mon, h.terms[start].w, h.terms[start].c);
        for (g, glead) in basis.iter().zip(leads) {
            if glead.divides(lm) {
                let shift = lm.div(glead).expect("divides");
                let shift_w = lw - g.terms[0].w;
                h = h.sub_mul(start, g, &shift, shift_w, lc, field, order);
                start = 0;
                continue 'outer;
            }
        }
        out.push(h.terms[start].clone());
        start += 1;
    }
    OrdPoly { terms: out }
}

/// Buchberger's algorithm with normal (smallest-lcm) pair selection and the
/// coprime-criterion prune. The output is fully auto-reduced and monic.
pub fn buchberger(ideal: &IdealSpec, order: &MonomialOrder) -> GroebnerBasis {
    buchberger_seeded(ideal, order, ideal.all_generators().iter())
}

/// Run Buchberger starting from an explicit generator list. Callers that
/// repeatedly augment one fixed ideal seed this with that ideal's reduced
/// basis plus the extra polynomial, which skips re-deriving the base part.
pub fn buchberger_seeded<'a, I>(
    ideal: &IdealSpec,
    order: &MonomialOrder,
    generators: I,
) -> GroebnerBasis
where
    I: Iterator<Item = &'a Polynomial>,
{
    let field = &ideal.field;
    let mut basis: Vec<OrdPoly> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    for g in generators {
        if g.is_zero() {
            continue;
        }
        let mut op = OrdPoly::from_poly(g, order);
        let lc = op.terms[0].c;
        if lc != 1 {
            op.scale(field.inv(lc).expect("nonzero"), field);
        }
        leads.push(op.terms[0].mon.clone());
        basis.push(op);
    }
    // Pair queue keyed by the lcm of the leading monomials.
    let mut pairs: Vec<(u64, Monomial, usize, usize)> = Vec::new();
    let mut queue_pair = |pairs: &mut Vec<(u64, Monomial, usize, usize)>,
                          leads: &[Monomial],
                          i: usize,
                          j: usize| {
        let lcm = leads[i].lcm(&leads[j]);
        pairs.push((order_weight(order, &lcm), lcm, j.min(i), j.max(i)));
    };
    for i in 0..basis.len() {
        for j in 0..i {
            queue_pair(&mut pairs, &leads, i, j);
        }
    }
    while !pairs.is_empty() {
        let mut best = 0;
        for k in 1..pairs.len() {
            let cmp = match pairs[k].0.cmp(&pairs[best].0) {
                Ordering::Equal => order.cmp_unchecked(&pairs[k].1, &pairs[best].1),
                other => other,
            };
            if cmp == Ordering::Less {
                best = k;
            }
        }
        let (lcm_w, lcm, i, j) = pairs.swap_remove(best);
        if leads[i].coprime(&leads[j]) {
            continue;
        }
        // S-polynomial of two monic elements.
        let si = lcm.div(&leads[i]).expect("lcm");
        let sj = lcm.div(&leads[j]).expect("lcm");
        let si_w = lcm_w - basis[i].terms[0].w;
        let sj_w = lcm_w - basis[j].terms[0].w;
        let fi = OrdPoly {
            terms: basis[i]
                .terms
                .iter()
                .map(|t| Term {
                    w: t.w + si_w,
                    mon: t.mon.mul(&si),
                    c: t.c,
                })
                .collect(),
        };
        let s = fi.sub_mul(0, &basis[j], &sj, sj_w, 1, field, order);
        let mut r = reduce_full(s, &basis, &leads, field, order);
        if r.is_zero() {
            continue;
        }
        let lc = r.terms[0].c;
        if lc != 1 {
            r.scale(field.inv(lc).expect("nonzero"), field);
        }
        let new_lead = r.terms[0].mon.clone();
        leads.push(new_lead);
        basis.push(r);
        for k in 0..leads.len() - 1 {
            queue_pair(&mut pairs, &leads, k, leads.len() - 1);
        }
    }
    // Minimalize: drop elements whose lead is divisible by another lead.
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j
                && keep[j]
                && keep[i]
                && leads[j].divides(&leads[i])
                && (leads[j] != leads[i] || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let mut min_basis: Vec<OrdPoly> = Vec::new();
    let mut min_leads: Vec<Monomial> = Vec::new();
    for (i, b) in basis.into_iter().enumerate() {
        if keep[i] {
            min_leads.push(leads[i].clone());
            min_basis.push(b);
        }
    }
    // Tail-reduce every element against the others.
    for i in 0..min_basis.len() {
        let (others, other_leads): (Vec<OrdPoly>, Vec<Monomial>) = min_basis
            .iter()
            .zip(&min_leads)
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, (b, l))| (b.clone(), l.clone()))
            .unzip();
        let reduced = reduce_full(
            min_basis[i].clone(),
            &others,
            &other_leads,
            field,
            order,
        );
        min_basis[i] = reduced;
    }
    let mut polys: Vec<Polynomial> = min_basis
        .into_iter()
        .map(|op| op.into_poly(field, &ideal.vars))
        .collect();
    polys.sort_by(|a, b| {
        order.cmp_unchecked(
            a.leading_monomial(order).expect("nonzero"),
            b.leading_monomial(order).expect("nonzero"),
        )
    });
    let leads = polys
        .iter()
        .map(|p| p.leading_monomial(order).expect("nonzero").clone())
        .collect();
    GroebnerBasis {
        field: Arc::clone(field),
        vars: Arc::clone(&ideal.vars),
        order: order.clone(),
        polys,
        leads,
    }
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    /// The canonical coset representative with support in the footprint.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let ord_basis: Vec<OrdPoly> = self
            .polys
            .iter()
            .map(|p| OrdPoly::from_poly(p, &self.order))
            .collect();
        let r = reduce_full(
            OrdPoly::from_poly(f, &self.order),
            &ord_basis,
            &self.leads,
            &self.field,
            &self.order,
        );
        r.into_poly(&self.field, &self.vars)
    }

    /// Whether `mon` avoids every basis leading monomial.
    pub fn in_footprint(&self, mon: &Monomial) -> bool {
        !self.leads.iter().any(|l| l.divides(mon))
    }

    /// The footprint as a sorted list; errors when it is infinite.
    pub fn footprint(&self) -> Result<Footprint, GroebnerError> {
        let nv = self.vars.len();
        if self.leads.iter().any(|l| l.is_one()) {
            // Unit ideal: every monomial is a leading monomial.
            return Ok(Footprint {
                order: self.order.clone(),
                monomials: Vec::new(),
            });
        }
        let mut bound = vec![0u16; nv];
        for i in 0..nv {
            let mut found = None;
            for l in &self.leads {
                let pure = l
                    .exps()
                    .iter()
                    .enumerate()
                    .all(|(k, &e)| k == i || e == 0);
                if pure && l.exps()[i] > 0 {
                    found = Some(match found {
                        None => l.exps()[i],
                        Some(b) if l.exps()[i] < b => l.exps()[i],
                        Some(b) => b,
                    });
                }
            }
            match found {
                Some(b) => bound[i] = b,
                None => {
                    return Err(GroebnerError::InfiniteFootprint(self.vars[i].clone()))
                }
            }
        }
        let mut monomials = Vec::new();
        let mut exps = vec![0u16; nv];
        loop {
            let mon = Monomial::new(&exps);
            if self.in_footprint(&mon) {
                monomials.push(mon);
            }
            let mut i = 0;
            loop {
                if i == nv {
                    let mut out = Footprint {
                        order: self.order.clone(),
                        monomials,
                    };
                    out.monomials
                        .sort_by(|a, b| out.order.cmp_unchecked(a, b));
                    return Ok(out);
                }
                exps[i] += 1;
                if exps[i] < bound[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }
}

/// The monomial staircase of an ideal, sorted ascending in the order. For
/// ideals containing the field equations its size equals the number of
/// variety points.
#[derive(Clone)]
pub struct Footprint {
    order: MonomialOrder,
    monomials: Vec<Monomial>,
}

impl Footprint {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn get(&self, index: usize) -> &Monomial {
        &self.monomials[index]
    }

    pub fn index_of(&self, mon: &Monomial) -> Option<usize> {
        self.monomials
            .binary_search_by(|m| self.order.cmp_unchecked(m, mon))
            .ok()
    }

    pub fn contains(&self, mon: &Monomial) -> bool {
        self.index_of(mon).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::gf8;
    use crate::poly::parse_polynomial;

    fn klein_setup() -> (IdealSpec, MonomialOrder) {
        let f = gf8();
        let vars: Arc<[String]> = vec!["X".to_string(), "Y".to_string()].into();
        let gen = parse_polynomial(&f, &vars, "Y^3 + X^3*Y + X").unwrap();
        (
            IdealSpec::new(f, vars, vec![gen], true),
            MonomialOrder::weighted(vec![2, 3], vec![1]),
        )
    }

    #[test]
    fn klein_basis_is_the_expected_triple() {
        let (ideal, ord) = klein_setup();
        let gb = buchberger(&ideal, &ord);
        let texts: Vec<String> = gb
            .polys()
            .iter()
            .map(|p| p.to_text(&ord, crate::poly::CoefStyle::Encoded))
            .collect();
        assert_eq!(
            texts,
            vec!["Y^3 + X^3*Y + X", "X^8 + X", "X^7*Y + Y"],
            "reduced basis sorted by leading monomial"
        );
    }

    #[test]
    fn klein_footprint_is_the_22_monomial_staircase() {
        let (ideal, ord) = klein_setup();
        let fp = buchberger(&ideal, &ord).footprint().unwrap();
        assert_eq!(fp.len(), 22);
        for mon in fp.monomials() {
            let (i, j) = (mon.exps()[0], mon.exps()[1]);
            assert!(
                (i <= 6 && j <= 2) || (i == 7 && j == 0),
                "unexpected footprint member {mon:?}"
            );
        }
        // Enumeration order: M_1 = 1, M_2 = X, M_3 = Y, ..., M_18 = X^7,
        // M_19 = X^4*Y^2, M_22 = X^6*Y^2.
        assert_eq!(fp.get(0), &Monomial::new(&[0, 0]));
        assert_eq!(fp.get(1), &Monomial::new(&[1, 0]));
        assert_eq!(fp.get(2), &Monomial::new(&[0, 1]));
        assert_eq!(fp.get(17), &Monomial::new(&[7, 0]));
        assert_eq!(fp.get(18), &Monomial::new(&[4, 2]));
        assert_eq!(fp.get(21), &Monomial::new(&[6, 2]));
        assert_eq!(fp.index_of(&Monomial::new(&[7, 0])), Some(17));
        // Divisor-closed.
        for mon in fp.monomials() {
            for other in fp.monomials() {
                if other.divides(mon) {
                    assert!(fp.contains(other));
                }
            }
        }
    }

    #[test]
    fn field_equations_alone_are_already_reduced() {
        let f = gf8();
        let vars: Arc<[String]> = vec!["X".to_string(), "Y".to_string()].into();
        let ideal = IdealSpec::new(f, vars, Vec::new(), true);
        let ord = MonomialOrder::weighted(vec![2, 3], vec![1]);
        let gb = buchberger(&ideal, &ord);
        assert_eq!(gb.polys().len(), 2);
        let fp = gb.footprint().unwrap();
        assert_eq!(fp.len(), 64, "all monomials with exponents below q");
    }

    #[test]
    fn all_s_polynomials_reduce_to_zero() {
        let (ideal, ord) = klein_setup();
        let gb = buchberger(&ideal, &ord);
        let polys = gb.polys();
        for i in 0..polys.len() {
            for j in 0..i {
                let li = polys[i].leading_monomial(&ord).unwrap();
                let lj = polys[j].leading_monomial(&ord).unwrap();
                let lcm = li.lcm(lj);
                let si = lcm.div(li).unwrap();
                let sj = lcm.div(lj).unwrap();
                let s = polys[i]
                    .mul_term(&si, 1)
                    .sub(&polys[j].mul_term(&sj, 1))
                    .unwrap();
                assert!(gb.normal_form(&s).is_zero(), "S({i},{j}) must reduce to 0");
            }
        }
    }

    #[test]
    fn normal_form_reduces_and_is_idempotent() {
        let (ideal, ord) = klein_setup();
        let gb = buchberger(&ideal, &ord);
        let f = ideal.field.clone();
        let vars = ideal.vars.clone();
        let y3 = parse_polynomial(&f, &vars, "Y^3").unwrap();
        let expected = parse_polynomial(&f, &vars, "X^3*Y + X").unwrap();
        assert_eq!(gb.normal_form(&y3), expected);
        for h in gb.polys() {
            assert!(gb.normal_form(h).is_zero());
        }
        let g = parse_polynomial(&f, &vars, "X^9*Y^4 + a*X^2 + 3").unwrap();
        let nf = gb.normal_form(&g);
        assert_eq!(gb.normal_form(&nf), nf, "idempotent");
        for mon in nf.support() {
            assert!(gb.in_footprint(mon));
        }
        // Linearity over the field.
        let h = parse_polynomial(&f, &vars, "X^5*Y^7 + 6*Y^2").unwrap();
        let sum_nf = gb.normal_form(&g.add(&h).unwrap());
        assert_eq!(sum_nf, nf.add(&gb.normal_form(&h)).unwrap());
    }

    #[test]
    fn missing_field_equations_give_an_infinite_footprint() {
        let f = gf8();
        let vars: Arc<[String]> = vec!["X".to_string(), "Y".to_string()].into();
        let gen = parse_polynomial(&f, &vars, "Y^3 + X^3*Y + X").unwrap();
        let ideal = IdealSpec::new(f, vars, vec![gen], false);
        let ord = MonomialOrder::weighted(vec![2, 3], vec![1]);
        let gb = buchberger(&ideal, &ord);
        assert!(matches!(
            gb.footprint(),
            Err(GroebnerError::InfiniteFootprint(_))
        ));
    }

    #[test]
    fn augmenting_by_a_witness_polynomial_shrinks_the_footprint_to_its_roots() {
        let (ideal, ord) = klein_setup();
        let f = ideal.field.clone();
        let vars = ideal.vars.clone();
        let extra = parse_polynomial(&f, &vars, "a*X^2*Y + 1").unwrap();
        let gb = buchberger(&ideal.with_extra(extra), &ord);
        assert_eq!(gb.footprint().unwrap().len(), 7);
    }
}
