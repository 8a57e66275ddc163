//! Frozen-value tests for the lightlike hypersurface machinery on the four
//! reference instances. The expected values were derived by hand and
//! cross-checked with an independent computer algebra system.

use paralight_testkit::fixtures::*;
use paralight_core::hypersurface::geometry::{verify_gw_identities, InducedGeometry};
use paralight_core::hypersurface::{HypersurfaceEmbedding, HypersurfaceError, LightlikeSurface};
use paralight_core::report::WitnessSearcher;
use paralight_core::scalar::parse_expression;
use paralight_core::ScalarExpr;

fn ws() -> WitnessSearcher {
    WitnessSearcher::new(42)
}

#[test]
fn invariant_r5_frame() {
    let f = invariant_r5();
    let s = &f.surface;
    // induced metric on the frame d_x, d_y + d_t, d_z, d_s
    let params = s.params();
    let expected = matrix(
        params,
        &[
            &["-1", "0", "0", "-y"],
            &["0", "0", "0", "0"],
            &["0", "0", "-1", "-y"],
            &["-y", "0", "-y", "1"],
        ],
    );
    assert_eq!(s.gram(), &expected);
    // radical section E = d_y + d_t, second frame member
    assert_eq!(f.surface.frame().radical, exprs(params, &["0", "1", "0", "0"]));
    // transversal N = (-d_y + d_t)/2
    assert_eq!(
        s.frame().transversal,
        exprs(params, &["0", "-1/2", "0", "1/2", "0"])
    );
    assert_eq!(f.structure.metric().index_at(&f.base_point).unwrap(), 3);
    assert!(s.frame_report(&ws()).all_passed());
}

#[test]
fn screen_semi_invariant_r5_frame() {
    let f = screen_semi_invariant_r5();
    let s = &f.surface;
    let params = s.params();
    // radical section E = d_z + d_t, third frame member
    assert_eq!(s.frame().radical, exprs(params, &["0", "0", "1", "0"]));
    // transversal N = 2(-d_z + d_t)
    assert_eq!(
        s.frame().transversal,
        exprs(params, &["0", "0", "-2", "2", "0"])
    );
    // the default screen starts with the structure vector representative
    assert_eq!(s.frame().screen.len(), 3);
    assert_eq!(s.frame().screen[0], f.xi_rep);
    assert_eq!(f.structure.metric().index_at(&f.base_point).unwrap(), 2);
    assert!(s.frame_report(&ws()).all_passed());
}

#[test]
fn para_sasakian_r3_frame_and_geometry() {
    let f = para_sasakian_r3();
    let s = &f.surface;
    let params = s.params();
    let expected = matrix(params, &[&["0", "0"], &["0", "1"]]);
    assert_eq!(s.gram(), &expected);
    assert_eq!(s.frame().radical, exprs(params, &["1", "0"]));
    assert_eq!(f.xi_rep, exprs(params, &["0", "1"]));
    // N = e^{-2z} (d_x - d_y) / 2
    assert_eq!(
        s.frame().transversal,
        exprs(params, &["1/2/e2z", "-1/2/e2z", "0"])
    );
    // amb_nabla_E (d_x - d_y) = -2 e^{2z} d_z
    let w = exprs(params, &["1", "-1", "0"]);
    let d = s.ambient_covariant_derivative(&s.frame().radical, &w);
    assert_eq!(d, exprs(params, &["0", "0", "-2*e2z"]));
    // amb_nabla_xi E = E (as ambient fields)
    let d = s.ambient_cov_tangent(&f.xi_rep, &s.frame().radical);
    assert_eq!(d, exprs(params, &["1", "1", "0"]));

    let geo = InducedGeometry::compute(s);
    // B vanishes identically on the frame
    for i in 0..2 {
        for j in 0..2 {
            assert!(geo.b_frame(i, j).is_zero());
        }
    }
    // tau(E) = 0, tau(xi) = -1
    assert!(geo.tau_apply(&s.frame().radical).is_zero());
    assert_eq!(
        geo.tau_apply(&f.xi_rep),
        ScalarExpr::from_int(params, -1)
    );
    // A_N E = xi, A_N xi = 0
    assert_eq!(geo.shape_n_apply(&s.frame().radical), f.xi_rep);
    assert!(geo
        .shape_n_apply(&f.xi_rep)
        .iter()
        .all(ScalarExpr::is_zero));
    assert!(s.frame_report(&ws()).all_passed());
    let gw = verify_gw_identities(s, &geo, &ws());
    assert!(gw.all_passed(), "{:?}", gw.records);
}

#[test]
fn para_sasakian_r5_frame_and_geometry() {
    let f = para_sasakian_r5();
    let s = &f.surface;
    let params = s.params();
    assert_eq!(s.frame().radical, exprs(params, &["1", "0", "0", "0"]));
    assert_eq!(
        s.frame().transversal,
        exprs(params, &["1/2/e2z", "-1/2/e2z", "0", "0", "0"])
    );
    let geo = InducedGeometry::compute(s);
    for i in 0..4 {
        for j in 0..4 {
            assert!(geo.b_frame(i, j).is_zero());
        }
    }
    let gw = verify_gw_identities(s, &geo, &ws());
    assert!(gw.all_passed(), "{:?}", gw.records);
}

#[test]
fn gauss_weingarten_identities_hold_on_degenerate_instances() {
    for f in [invariant_r5(), screen_semi_invariant_r5()] {
        let geo = InducedGeometry::compute(&f.surface);
        let gw = verify_gw_identities(&f.surface, &geo, &ws());
        assert!(gw.all_passed(), "{:?}", gw.records);
        // B(E, E) = 0 is forced
        assert!(geo
            .b(&f.surface.frame().radical, &f.surface.frame().radical)
            .is_zero());
    }
}

#[test]
fn flat_hyperplane_is_not_lightlike() {
    let structure = flat_r3_structure();
    let emb = HypersurfaceEmbedding::new(
        structure.chart().clone(),
        strings(&["x", "y"]),
        &strings(&["x", "y", "0"]),
    )
    .unwrap();
    let err = LightlikeSurface::build(emb, structure.metric(), None, None).unwrap_err();
    assert_eq!(err, HypersurfaceError::NotLightlike);
}

#[test]
fn radical_scale_invariance_of_transversal() {
    // scaling E by c scales N by 1/c and the normalization g(E,N)=1 holds
    let f = para_sasakian_r3();
    let emb = HypersurfaceEmbedding::new(
        f.structure.chart().clone(),
        strings(&["x", "z"]),
        &strings(&["x", "x", "z"]),
    )
    .unwrap();
    let params = emb.params().clone();
    // default screen is {xi}; force the same screen but scale the radical
    // via a custom frame path: rebuild and compare transversals
    let surface = LightlikeSurface::build(
        emb,
        f.structure.metric(),
        Some(vec![exprs(&params, &["0", "1"])]),
        None,
    )
    .unwrap();
    assert_eq!(surface.frame().transversal, f.surface.frame().transversal);
}

#[test]
fn explicit_degenerate_screen_is_rejected() {
    let f = invariant_r5();
    let emb = HypersurfaceEmbedding::new(
        f.structure.chart().clone(),
        strings(&["x", "y", "z", "s"]),
        &strings(&["x", "y", "z", "y", "s"]),
    )
    .unwrap();
    let params = emb.params().clone();
    // a screen containing the radical direction degenerates
    let screen = vec![
        exprs(&params, &["1", "0", "0", "0"]),
        exprs(&params, &["0", "1", "0", "0"]),
        exprs(&params, &["0", "0", "0", "1"]),
    ];
    let err = LightlikeSurface::build(emb, f.structure.metric(), Some(screen), None).unwrap_err();
    assert_eq!(err, HypersurfaceError::DegenerateScreen);
}

#[test]
fn linear_embedding_in_flat_space_has_no_second_fundamental_data() {
    // flat ambient, linear embedding: the along-map derivative vanishes
    let structure = flat_r3_structure();
    let emb = HypersurfaceEmbedding::new(
        structure.chart().clone(),
        strings(&["u", "v"]),
        &strings(&["u", "v", "0"]),
    )
    .unwrap();
    let params = emb.params().clone();
    let e0 = exprs(&params, &["1", "0"]);
    let e1 = exprs(&params, &["0", "1"]);
    // build a surface is impossible (not lightlike); test the along-map
    // derivative directly through a throwaway computation
    let g = structure.metric();
    let pulled_gamma_zero = g
        .christoffel()
        .iter()
        .flatten()
        .flatten()
        .all(ScalarExpr::is_zero);
    assert!(pulled_gamma_zero);
    let second = |x: &[ScalarExpr], y: &[ScalarExpr]| -> Vec<ScalarExpr> {
        let j = emb.jacobian();
        let ya = j.mul_vector(y);
        (0..3)
            .map(|c| {
                let mut acc = ScalarExpr::zero(&params);
                for (i, xi) in x.iter().enumerate() {
                    acc = acc.add(&xi.mul(&ya[c].derivative(i)));
                }
                acc
            })
            .collect()
    };
    assert!(second(&e0, &e1).iter().all(ScalarExpr::is_zero));
    let _ = parse_expression(&params, "u");
}
