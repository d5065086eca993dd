use std::sync::Arc;
use std::time::Instant;
use variety_codes::gf::gf8;
use variety_codes::groebner::{buchberger, IdealSpec};
use variety_codes::poly::{parse_polynomial, Monomial, MonomialOrder, Polynomial};

#[test]
#[ignore]
fn bench_box_rate() {
    let f = gf8();
    let vars: Arc<[String]> = vec!["X".to_string(), "Y".to_string()].into();
    let gen = parse_polynomial(&f, &vars, "Y^3 + X^3*Y + X").unwrap();
    let ideal = IdealSpec::new(f.clone(), vars.clone(), vec![gen], true);
    let ord = MonomialOrder::weighted(vec![2, 3], vec![1]);
    // Table-4-shaped polynomials: X^2*Y + a1*Y^2 + ... + a7
    let tail = [
        Monomial::new(&[0, 2]),
        Monomial::new(&[3, 0]),
        Monomial::new(&[1, 1]),
        Monomial::new(&[2, 0]),
        Monomial::new(&[0, 1]),
        Monomial::new(&[1, 0]),
        Monomial::new(&[0, 0]),
    ];
    let lead = Monomial::new(&[2, 1]);
    let n = 20000u64;
    let start = Instant::now();
    let mut acc = 0usize;
    for k in 0..n {
        let mut terms = vec![(lead.clone(), 1u16)];
        let mut v = k.wrapping_mul(0x9E3779B97F4A7C15).rotate_left(17);
        for m in &tail {
            terms.push((m.clone(), (v % 8) as u16));
            v /= 8;
        }
        let fpoly = Polynomial::from_terms(&f, &vars, terms);
        let gb = buchberger(&ideal.with_extra(fpoly), &ord);
        acc += gb.footprint().unwrap().len();
    }
    let dt = start.elapsed();
    println!(
        "{} GB runs in {:?} -> {:.1} us each (checksum {})",
        n,
        dt,
        dt.as_secs_f64() * 1e6 / n as f64,
        acc
    );
}
