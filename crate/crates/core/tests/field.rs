use pgcolor::field::{FieldElement, GaloisField};
use proptest::prelude::*;

// schoolbook product of coefficient codes reduced by the field polynomial
fn slow_mul(f: &GaloisField, a: u32, b: u32) -> u32 {
    let (p, m) = (f.p(), f.m() as usize);
    let digits = |mut x: u32| {
        let mut d = vec![0u32; m];
        for c in d.iter_mut() {
            *c = x % p;
            x /= p;
        }
        d
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u32; 2 * m];
    for i in 0..m {
        for j in 0..m {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    let poly = f.poly();
    for k in (m..2 * m).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        // poly is monic of degree m
        for i in 0..=m {
            prod[k - m + i] = (prod[k - m + i] + (p - c) * poly[i] % p) % p;
        }
    }
    prod[..m].iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn fields() -> Vec<GaloisField> {
    [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 64, 81, 256, 4096]
        .iter()
        .map(|&q| GaloisField::with_order(q).unwrap())
        .collect()
}

#[test]
fn log_multiplication_matches_polynomial_arithmetic() {
    for f in fields().into_iter().filter(|f| f.order() <= 256) {
        for a in 0..f.order() {
            for b in 0..f.order() {
                let fast = f.to_code(f.mul(f.from_code(a), f.from_code(b)));
                assert_eq!(fast, slow_mul(&f, a, b), "GF({}) {a}*{b}", f.order());
            }
        }
    }
}

#[test]
fn codes_round_trip() {
    for f in fields() {
        for c in 0..f.order() {
            assert_eq!(f.to_code(f.from_code(c)), c);
        }
        assert_eq!(f.from_code(0), FieldElement::ZERO);
        assert_eq!(f.from_code(1), FieldElement::ONE);
    }
}

proptest! {
    #[test]
    fn field_axioms(idx in 0usize..14, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let fs = fields();
        let f = &fs[idx];
        let q = f.order();
        let (x, y, z) = (f.from_code(a % q), f.from_code(b % q), f.from_code(c % q));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
        prop_assert_eq!(f.add(x, y), f.add(y, x));
        prop_assert_eq!(f.add(x, f.neg(x)), FieldElement::ZERO);
        prop_assert_eq!(f.sub(f.add(x, y), y), x);
        if !x.is_zero() {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), FieldElement::ONE);
        }
        // Frobenius is additive and fixes exactly the prime field
        prop_assert_eq!(f.frobenius(f.add(x, y)), f.add(f.frobenius(x), f.frobenius(y)));
        prop_assert_eq!(f.pow(x, q as u64), x);
    }

    #[test]
    fn zech_agrees_with_addition(idx in 0usize..14, t in any::<u32>()) {
        let fs = fields();
        let f = &fs[idx];
        let t = t % f.mult_order();
        let sum = f.add(FieldElement::ONE, f.element(t as u64));
        prop_assert_eq!(f.zech(t), sum.log());
    }
}

#[test]
fn frobenius_fixes_prime_field_only() {
    for f in fields() {
        let fixed = (0..f.order()).filter(|&c| f.frobenius(f.from_code(c)) == f.from_code(c)).count();
        assert_eq!(fixed as u32, f.p());
    }
}
