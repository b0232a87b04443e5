use pgcolor::exact_cover::{ExactCover, Flow};
use pgcolor::orbits::orbit_partition;
use pgcolor::space::{gaussian, LineId, Model, Space};
use pgcolor::spreads::*;

fn singer(n: u32, q: u32) -> Space {
    Space::new(n, q, Model::Singer).unwrap()
}

fn line(s: &Space, pts: &[u32]) -> LineId {
    s.find_line(pts).unwrap()
}

#[test]
fn orbit_structure_of_pg3() {
    for q in [2, 3, 4, 8] {
        let s = singer(3, q);
        let o = orbit_partition(&s).unwrap();
        let v = s.num_points() as usize;
        assert_eq!(o.short.len(), 1);
        assert_eq!(o.short[0].len(), (q * q + 1) as usize);
        assert_eq!(o.full.len(), q as usize);
        assert!(o.full.iter().all(|f| f.len() == v));
        assert_eq!(o.short[0].len() + o.full.len() * v, s.num_lines() as usize);
    }
}

#[test]
fn orbit_structure_of_pg52() {
    let s = singer(5, 2);
    let o = orbit_partition(&s).unwrap();
    assert_eq!(o.short.iter().map(Vec::len).collect::<Vec<_>>(), vec![21]);
    assert_eq!(o.full.len(), 10);
    assert!(o.full.iter().all(|f| f.len() == 63));
}

#[test]
fn partial_spread_conflict() {
    let s = singer(3, 2);
    let lines = [line(&s, &[0, 5, 10]), line(&s, &[1, 12, 13])];
    assert_eq!(verify_partial_spread(&s, &lines).unwrap(), None);
    let bad = [lines[0], lines[1], line(&s, &[0, 11, 12])];
    let c = verify_partial_spread(&s, &bad).unwrap().unwrap();
    assert_eq!(c.point, 0);
    assert!(!verify_spread(&s, &lines).unwrap().is_valid());
}

// independent count: all sets of pairwise disjoint lines covering the points
fn brute_force_spreads_through(s: &Space, fixed: LineId) -> u64 {
    fn go(s: &Space, covered: &mut Vec<bool>) -> u64 {
        let Some(p) = covered.iter().position(|&c| !c) else {
            return 1;
        };
        let mut total = 0;
        for &l in s.lines_through(p as u32) {
            let pts = s.line(l);
            if pts.iter().all(|&x| !covered[x as usize]) {
                pts.iter().for_each(|&x| covered[x as usize] = true);
                total += go(s, covered);
                pts.iter().for_each(|&x| covered[x as usize] = false);
            }
        }
        total
    }
    let mut covered = vec![false; s.num_points() as usize];
    for &p in s.line(fixed) {
        covered[p as usize] = true;
    }
    go(s, &mut covered)
}

#[test]
fn spread_counts_agree_across_formulations() {
    for q in [2, 3] {
        let s = singer(3, q);
        for l in [0, 7] {
            let brute = brute_force_spreads_through(&s, l);
            let dlx = count_spreads_exact_cover(&s, l).unwrap();
            let c = SpreadConstraints { contains: vec![l], ..Default::default() };
            assert_eq!(count_spreads(&s, &c, u64::MAX).unwrap(), Some(brute));
            assert_eq!(dlx, brute);
        }
    }
    // 56 spreads in PG(3,2), 5 lines each, spread over 35 lines
    assert_eq!(brute_force_spreads_through(&singer(3, 2), 0), 56 * 5 / 35);
}

#[test]
fn found_spreads_verify() {
    for (n, q) in [(3, 2), (3, 3), (3, 4), (5, 2)] {
        let s = singer(n, q);
        let found = search_spread(&s, &SpreadConstraints::default(), SearchOptions::default()).unwrap();
        let spread = found.found().unwrap();
        assert_eq!(spread.len() as u64, gaussian(n + 1, 1, q) / (q as u64 + 1));
        assert!(verify_spread(&s, &spread).unwrap().is_valid());
    }
}

#[test]
fn with_e_profile_for_q2_and_q4() {
    for q in [2, 4] {
        let s = singer(3, q);
        let c = SpreadConstraints { profile: Some(OrbitProfile::WithE), ..Default::default() };
        let spread = search_spread(&s, &c, SearchOptions::default()).unwrap().found().unwrap();
        assert!(verify_spread(&s, &spread).unwrap().is_valid());
        let o = orbit_partition(&s).unwrap();
        let mut per_orbit = vec![0; o.num_orbits()];
        for &l in &spread {
            per_orbit[o.orbit_of(l)] += 1;
        }
        for (i, &k) in per_orbit.iter().enumerate() {
            assert_eq!(k, if o.is_short(i) { 1 } else { q });
        }
    }
}

// Translating a spread with the profile moves its short-orbit line to L_0,
// so enumerating every spread through L_0 decides existence.
#[test]
fn with_e_profile_does_not_exist_for_q3() {
    let s = singer(3, 3);
    let o = orbit_partition(&s).unwrap();
    let l0 = o.short[0][0];
    let candidates: Vec<LineId> = (0..s.num_lines()).filter(|&l| l == l0 || !s.lines_meet(l, l0)).collect();
    let rows: Vec<Vec<usize>> = candidates.iter().map(|&l| s.line(l).iter().map(|&p| p as usize).collect()).collect();
    let mut x = ExactCover::new(s.num_points() as usize, 0, &rows);
    let mut with_profile = 0;
    let stats = x.solve(u64::MAX, |sol| {
        let mut per_orbit = vec![0; o.num_orbits()];
        for &r in sol {
            per_orbit[o.orbit_of(candidates[r])] += 1;
        }
        if (0..o.num_orbits()).all(|i| per_orbit[i] == if o.is_short(i) { 1 } else { 3 }) {
            with_profile += 1;
        }
        Flow::Continue
    });
    assert!(!stats.truncated);
    assert_eq!(stats.solutions, 648);
    assert_eq!(with_profile, 0);
    let c = SpreadConstraints { profile: Some(OrbitProfile::WithE), ..Default::default() };
    assert!(matches!(
        search_spread(&s, &c, SearchOptions { budget: u64::MAX, seed: None }).unwrap(),
        SearchOutcome::Exhausted { .. }
    ));
}

#[test]
fn parallelism_searches() {
    for q in [2, 3] {
        let s = singer(3, q);
        let opts = ParallelismOptions { seed: Some(1), restarts: 10, budget: 1_000_000, ..Default::default() };
        let p = search_parallelism(&s, opts).unwrap().found().unwrap();
        assert_eq!(p.len() as u32, q * q + q + 1);
        let r = verify_parallelism(&s, &p).unwrap();
        assert!(r.valid, "{r:?}");
    }
    assert!(search_parallelism(&singer(4, 2), ParallelismOptions::default()).is_err());
}

#[test]
fn prescribed_group_must_divide_v() {
    let s = singer(3, 2);
    let opts = ParallelismOptions { mode: ParallelismMode::PrescribedCyclic(4), ..Default::default() };
    assert!(search_parallelism(&s, opts).is_err());
    let product = Space::new(3, 2, Model::Product).unwrap();
    let opts = ParallelismOptions { mode: ParallelismMode::PrescribedCyclic(5), ..Default::default() };
    assert!(search_parallelism(&product, opts).is_err());
}

#[test]
fn dropping_a_spread_leaves_its_lines_missing() {
    let s = singer(5, 2);
    let inputs = pgcolor::construction::base_parallelism(2).unwrap();
    let pe = pgcolor::property_e::load_paper_dataset(2).unwrap();
    let levels = pgcolor::recursive_color(
        5,
        2,
        &pgcolor::RecursionInputs {
            property_e: pe,
            base: pgcolor::construction::BaseCase::Parallelism { space: inputs.0, spreads: inputs.1 },
        },
    )
    .unwrap();
    let mut spreads = levels[0].coloring.classes();
    assert!(verify_parallelism(&levels[0].space, &spreads).unwrap().valid);
    spreads.remove(4);
    let r = verify_parallelism(&levels[0].space, &spreads).unwrap();
    assert!(!r.valid);
    assert_eq!(r.missing.len(), 21);
    assert_eq!(s.num_lines(), levels[0].space.num_lines());
}

// bitmask search over the 31 points of PG(4,2): one hole is allowed
fn disjoint_lines_with_holes(masks: &[Vec<u32>], covered: u32, holes: u32, full: u32) -> bool {
    if covered == full {
        return true;
    }
    let p = (!covered).trailing_zeros() as usize;
    for &m in &masks[p] {
        if m & covered == 0 && disjoint_lines_with_holes(masks, covered | m, holes, full) {
            return true;
        }
    }
    holes > 0 && disjoint_lines_with_holes(masks, covered | 1 << p, holes - 1, full)
}

#[test]
fn max_partial_spread_of_pg42() {
    let s = singer(4, 2);
    let masks: Vec<Vec<u32>> = (0..31)
        .map(|p| s.lines_through(p).iter().map(|&l| s.line(l).iter().fold(0u32, |m, &x| m | 1 << x)).collect())
        .collect();
    let full = (1u32 << 31) - 1;
    // 10 lines leave 1 point, 9 lines leave 4
    assert!(!disjoint_lines_with_holes(&masks, 0, 1, full));
    assert!(disjoint_lines_with_holes(&masks, 0, 4, full));
    assert_eq!(max_partial_spread_size(4, 2).unwrap(), 9);
    let found = max_partial_spread_search(&s, u64::MAX).unwrap().found().unwrap();
    assert_eq!(found.len(), 9);
    assert_eq!(verify_partial_spread(&s, &found).unwrap(), None);
}

#[test]
fn max_partial_spread_formula() {
    assert_eq!(max_partial_spread_size(3, 2).unwrap(), 5);
    assert_eq!(max_partial_spread_size(4, 3).unwrap(), 28);
    assert_eq!(max_partial_spread_size(5, 2).unwrap(), 21);
    assert!(max_partial_spread_size(1, 2).is_err());
}
