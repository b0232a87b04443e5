use std::collections::HashSet;

use pgcolor::orbits::translate_line_id;
use pgcolor::space::{gaussian, linear_isomorphism, Model, Space};

fn spaces() -> Vec<Space> {
    let mut out = Vec::new();
    for (n, q) in [(2, 2), (2, 3), (3, 2), (3, 3), (3, 4), (4, 2), (5, 2)] {
        out.push(Space::new(n, q, Model::Singer).unwrap());
        if n >= 3 {
            out.push(Space::new(n, q, Model::Product).unwrap());
        }
    }
    out
}

#[test]
fn every_pair_of_points_is_on_exactly_one_line() {
    for s in spaces() {
        let v = s.num_points() as usize;
        let mut seen = vec![0u8; v * v];
        for l in s.lines() {
            assert_eq!(l.len(), s.q() as usize + 1);
            for (i, &a) in l.iter().enumerate() {
                for &b in &l[i + 1..] {
                    seen[a as usize * v + b as usize] += 1;
                }
            }
        }
        for a in 0..v {
            for b in a + 1..v {
                assert_eq!(seen[a * v + b], 1, "PG({},{}) {:?}", s.n(), s.q(), s.model());
            }
        }
    }
}

#[test]
fn point_degrees_and_line_through() {
    for s in spaces() {
        let degree = gaussian(s.n(), 1, s.q()) as usize;
        for p in 0..s.num_points() {
            assert_eq!(s.lines_through(p).len(), degree);
            for &l in s.lines_through(p) {
                assert!(s.line(l).contains(&p));
            }
        }
        let (x, y) = (0, s.num_points() - 1);
        let l = s.line_through(x, y).unwrap();
        assert_eq!(s.line_through(y, x).unwrap(), l);
        assert!(s.line(l).windows(2).all(|w| w[0] < w[1]));
    }
}

// 2-subspaces of GF(3)^6 enumerated as explicit vector sets
#[test]
fn gaussian_6_2_3_by_enumeration() {
    let add = |a: &[u8; 6], b: &[u8; 6], k: u8| -> [u8; 6] {
        let mut c = [0u8; 6];
        for i in 0..6 {
            c[i] = (a[i] + k * b[i]) % 3;
        }
        c
    };
    let vecs: Vec<[u8; 6]> = (1..729u32)
        .map(|mut x| {
            let mut v = [0u8; 6];
            for c in v.iter_mut() {
                *c = (x % 3) as u8;
                x /= 3;
            }
            v
        })
        .collect();
    let mut planes = HashSet::new();
    for a in &vecs {
        for b in &vecs {
            let mut span: Vec<[u8; 6]> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| add(&add(&[0; 6], a, i), b, j)).collect();
            span.sort();
            span.dedup();
            if span.len() == 9 {
                planes.insert(span);
            }
        }
    }
    assert_eq!(planes.len(), 11011);
    assert_eq!(gaussian(6, 2, 3), 11011);
    assert_eq!(Space::new(5, 3, Model::Product).unwrap().num_lines(), 11011);
}

#[test]
fn subspace_sizes_follow_dimension() {
    let s = Space::new(4, 3, Model::Product).unwrap();
    for k in 1..=5u32 {
        let gens: Vec<u32> = (0..k).map(|i| 3u32.pow(i)).collect();
        let pts = s.points_of_span(&gens);
        assert_eq!(pts.len() as u64, gaussian(k, 1, 3));
        assert_eq!(s.flat_dimension(&pts).unwrap(), k - 1);
    }
}

#[test]
fn singer_translations_preserve_lines() {
    for (n, q) in [(3, 2), (3, 3), (5, 2)] {
        let s = Space::new(n, q, Model::Singer).unwrap();
        for t in [1, 5, s.num_points() - 1] {
            let mut images: Vec<u32> = (0..s.num_lines()).map(|l| translate_line_id(&s, l, t).unwrap()).collect();
            images.sort_unstable();
            images.dedup();
            assert_eq!(images.len() as u32, s.num_lines());
        }
    }
}

#[test]
fn singer_and_product_are_isomorphic() {
    for q in [2, 3, 4] {
        let a = Space::new(3, q, Model::Singer).unwrap();
        let b = Space::new(3, q, Model::Product).unwrap();
        let map = linear_isomorphism(&a, &b, &[1, q, q * q, q * q * q]).unwrap();
        assert!(map.preserves_lines(&a, &b));
        let mut img = map.as_slice().to_vec();
        img.sort_unstable();
        assert_eq!(img, (0..b.num_points()).collect::<Vec<_>>());
    }
}
