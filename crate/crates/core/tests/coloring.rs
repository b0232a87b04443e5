use pgcolor::coloring::*;
use pgcolor::space::{gaussian, Model, Space};
use pgcolor::spreads::{max_partial_spread_size, search_parallelism, ParallelismOptions};

#[test]
fn targets_and_bounds() {
    assert_eq!(target_chromatic_index(4, 2).unwrap(), 18);
    assert_eq!(target_chromatic_index(4, 3).unwrap(), 44);
    // ceil(lines / mu)
    for (n, q) in [(4, 2), (4, 3), (6, 2)] {
        let lines = gaussian(n + 1, 2, q);
        let mu = max_partial_spread_size(n, q).unwrap();
        assert_eq!(lower_bound(n, q).unwrap(), lines.div_ceil(mu));
    }
    assert_eq!(lower_bound(4, 2).unwrap(), 18);
    assert_eq!(lower_bound(4, 3).unwrap(), 44);
    for (n, q) in [(3, 2), (5, 2), (5, 3), (7, 2), (3, 8)] {
        assert_eq!(target_chromatic_index(n, q).unwrap(), gaussian(n, 1, q));
        assert_eq!(lower_bound(n, q).unwrap(), gaussian(n, 1, q));
    }
}

#[test]
fn ipg3_colorings() {
    for (q, colors, incident) in [(2, 7, 6), (3, 13, 12)] {
        let space = Space::new(3, q, Model::Singer).unwrap();
        let opts = ParallelismOptions { seed: Some(1), restarts: 10, budget: 1_000_000, ..Default::default() };
        let p = search_parallelism(&space, opts).unwrap().found().unwrap();
        let cert = color_ipg3(&space, &p, 3).unwrap();
        assert_eq!(cert.coloring.palette, colors);
        assert_eq!(cert.incident_colors.len(), incident);
        let r = verify_property_r(&space, &cert).unwrap();
        assert!(r.valid, "{r:?}");
    }
}

#[test]
fn pg4_search_reaches_the_target_for_q2() {
    let (space, r) = search_pg4_coloring(2, 18, 1_000_000, 1).unwrap();
    assert!(r.complete && !r.below_bound);
    assert_eq!(verify_coloring(&space, &r.best).unwrap(), None);
    let plane = space.subspace_points(&[0, 1, 2]).unwrap();
    let cert = search_property_r(&space, &plane, 1_000_000, 1).unwrap().unwrap();
    assert!(verify_property_r(&space, &cert).unwrap().valid);
    assert_eq!(cert.incident_colors.len(), 12);
}

#[test]
fn palettes_below_the_bound_are_refused() {
    let (_, r) = search_pg4_coloring(2, 17, 1_000, 1).unwrap();
    assert!(r.below_bound && !r.complete);
    let (_, r) = search_pg4_coloring(3, 43, 1_000, 1).unwrap();
    assert!(r.below_bound && !r.complete);
}

#[test]
fn partial_results_stay_proper() {
    let (space, r) = search_pg4_coloring(3, 44, 20_000, 7).unwrap();
    let skip: Vec<bool> = r.best.colors.iter().map(|&c| c == UNCOLORED).collect();
    assert_eq!(verify_coloring_except(&space, &r.best, &skip).unwrap(), None);
    assert!(r.best.colored() > 0);
}

#[test]
fn clashes_are_reported() {
    let space = Space::new(2, 2, Model::Singer).unwrap();
    let mut c = Coloring::new(7, 7);
    for l in 0..7 {
        c.colors[l] = l as u32;
    }
    assert_eq!(verify_coloring(&space, &c).unwrap(), None);
    c.colors[1] = 0;
    let clash = verify_coloring(&space, &c).unwrap().unwrap();
    assert_eq!(clash.color, 0);
    assert!(space.line(0).contains(&clash.point) && space.line(1).contains(&clash.point));
}
