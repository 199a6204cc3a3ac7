use super::*;
use crate::diagram::moves::{enumerate_move_pairs, MoveKind, PairConfig};
use crate::diagram::{library, Leg, Shape};

/// Three strands, the middle one downward, with crossings of both signs.
fn mixed() -> Diagram {
    let x = |p: bool, at: usize| if at == 0 { vec![Shape::X(p), Shape::Id] } else { vec![Shape::Id, Shape::X(p)] };
    Diagram::build(false, vec![Leg::UP, Leg::DOWN, Leg::UP], &[x(true, 0), x(false, 1), x(true, 0), x(false, 1)]).unwrap()
}

fn suite() -> Vec<Diagram> {
    vec![
        library::tangle_c(),
        library::trefoil(),
        library::braid_closure(2, &[1, 1]),
        library::braid_closure(3, &[1, -2, 1, -2]),
        library::braid(3, &[1, -2, 1, -2], false),
        library::braid(3, &[-1, 2, 2, -1, 2], true),
        mixed(),
    ]
}

#[test]
fn empty_complex_has_zero_stats() {
    assert_eq!(CellComplex::default().stats(), ComplexStats::default());
    assert_eq!(build_c(&library::unknot(false)).stats(), ComplexStats::default());
}

#[test]
fn one_tetrahedron_per_crossing() {
    for d in suite() {
        let z = zeta(&d).diagram;
        let cx = build_c(&z);
        assert_eq!(cx.tetrahedra.len(), z.crossing_count());
        assert!(cx.perfect_matching());
    }
}

#[test]
fn tangle_c_complex() {
    let cx = build_c(&library::tangle_c());
    // each strand passes both crossings: one gluing each, two open ends each
    let s = cx.stats();
    assert_eq!((s.tetrahedra, s.face_pairs, s.boundary_faces), (2, 2, 4));
    assert_eq!(s.euler, s.vertex_classes as i64 - s.edge_classes as i64 + 6 - 2);
}

#[test]
fn fixed_table_is_the_first_valid_one() {
    let tables = star_tables(&suite());
    assert!(!tables.is_empty());
    assert_eq!(tables[0], STAR_TABLE);
}

#[test]
fn a_perturbed_table_fails() {
    let valid = star_tables(&suite());
    let mut t = STAR_TABLE;
    let bad = (0..3).find_map(|x| {
        t[1][2][1] = x;
        (!valid.contains(&t)).then_some(t)
    });
    let t = bad.unwrap();
    assert!(suite().iter().any(|d| build_o_with(d, &t).map_err(|e| e.to_string()).and_then(|cx| check_octahedral(d, &cx)).is_err()));
}

#[test]
fn crossing_clusters_assemble_into_octahedra() {
    for d in oriented_crossings() {
        let zr = zeta(&d);
        let cx = build_c(&zr.diagram);
        assert_eq!(cx.tetrahedra.len(), 4);
        let o = assemble_octahedron(&cx, &zr, &d, (0, 0)).unwrap();
        // around the axis: six vertices, thirteen edges
        let mut inner = cx.clone();
        inner.gluings.retain(|g| o.tets.contains(&g.a.tet) && o.tets.contains(&g.b.tet));
        assert_eq!(inner.vertex_classes().len(), 6);
        assert_eq!(inner.edge_classes().len(), 13);
        let axis = inner.edge_classes().into_iter().filter(|c| c.len() == 4).count();
        assert_eq!(axis, 1);
    }
}

#[test]
fn octahedral_triangulations_pass_the_checks() {
    for d in suite() {
        let cx = build_o(&d).unwrap();
        check_octahedral(&d, &cx).unwrap();
        let c = d.crossing_count();
        let s = cx.stats();
        assert_eq!((s.tetrahedra, s.octahedra), (4 * c, c));
        assert!(cx.edge_classes().iter().all(|e| !e.is_empty()));
    }
}

#[test]
fn trefoil_has_twelve_tetrahedra() {
    let cx = build_o(&library::trefoil()).unwrap();
    let s = cx.stats();
    assert_eq!(s.tetrahedra, 12);
    assert_eq!(s.boundary_faces, 0);
    assert_eq!(s.face_pairs, 24);
}

#[test]
fn the_sign_decides_which_vertices_rise() {
    // the same four tetrahedra, with the pairs pulled to ±∞ swapped
    let plus = |d: &Diagram| {
        let cx = build_o(d).unwrap();
        let mut uf = cx.vertex_uf();
        let p = cx.plus_inf.unwrap();
        let p = uf.find(4 * p.0 + p.1);
        let o = assemble_octahedron(&build_c(&zeta(d).diagram), &zeta(d), d, d.crossings()[0]).unwrap();
        (0..4).filter(|&j| uf.find(4 * o.tets[j] + o.e[j].0) == p).collect::<Vec<_>>()
    };
    let pos = library::braid_closure(2, &[1, 1]);
    let neg = library::braid_closure(2, &[-1, -1]);
    assert_eq!(plus(&pos), vec![1, 3]);
    assert_eq!(plus(&neg), vec![0, 2]);
}

#[test]
fn splitting_diagrams_are_rejected() {
    assert_eq!(build_o(&library::unknot(false)).unwrap_err(), ComplexError::NoCrossings);
    assert!(matches!(build_o(&library::crossing(true, false, false)), Err(ComplexError::Splitting(_))));
    let apart = library::trefoil().beside(&library::trefoil());
    let err = build_o(&apart).unwrap_err();
    assert_eq!(err, ComplexError::Splitting("the crossing graph is disconnected".into()));
    assert!(build_o(&library::braid(3, &[1, 2], false)).is_err());
}

#[test]
fn build_c_is_additive_under_disjoint_union() {
    let a = zeta(&library::tangle_c()).diagram;
    let b = zeta(&library::trefoil()).diagram;
    let (sa, sb, sab) = (build_c(&a).stats(), build_c(&b).stats(), build_c(&a.beside(&b)).stats());
    assert_eq!(sab.tetrahedra, sa.tetrahedra + sb.tetrahedra);
    assert_eq!(sab.face_pairs, sa.face_pairs + sb.face_pairs);
    assert_eq!(sab.boundary_faces, sa.boundary_faces + sb.boundary_faces);
    assert_eq!(sab.edge_classes, sa.edge_classes + sb.edge_classes);
    assert_eq!(sab.vertex_classes, sa.vertex_classes + sb.vertex_classes);
    assert_eq!(sab.euler, sa.euler + sb.euler);
}

#[test]
fn pachner_and_zero_two_pairs_differ_only_at_the_site() {
    let seeds = vec![
        zeta(&library::crossing(true, false, true)).diagram,
        zeta(&library::crossing(false, true, true)).diagram,
        zeta(&library::kink(true, false)).diagram,
    ];
    let cfg = PairConfig { depth: 30, seed: 3, exceptions: true, max_crossings: 12 };
    let (mut pachner, mut zero_two) = (0, 0);
    for p in enumerate_move_pairs(&seeds, cfg) {
        let counts = exteriors_agree(&p.before, &p.after, &p.mv, p.site).unwrap_or_else(|e| panic!("{:?}: {e}", p.mv.kind));
        match p.mv.kind {
            MoveKind::Pachner => {
                assert!(counts == (2, 3) || counts == (3, 2), "{counts:?}");
                pachner += 1;
            }
            MoveKind::ZeroTwo => {
                assert!(counts == (0, 2) || counts == (2, 0), "{counts:?}");
                zero_two += 1;
            }
            _ => {}
        }
    }
    assert!(pachner > 0 && zero_two > 0, "{pachner} {zero_two}");
}

#[test]
fn closed_links_have_euler_characteristic_equal_to_their_components() {
    // vertex links: a torus per component, spheres at ±∞
    for (d, comps) in [(library::trefoil(), 1), (library::braid_closure(3, &[1, -2, 1, -2]), 1), (library::braid_closure(2, &[1, 1]), 2)] {
        let s = build_o(&d).unwrap().stats();
        assert_eq!(s.euler, comps);
        assert_eq!(s.vertex_classes as i64, comps + 2);
    }
}
