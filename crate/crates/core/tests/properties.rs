use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use hopfdouble::algebra::Algebra;
use hopfdouble::complex::{build_c, exteriors_agree};
use hopfdouble::diagram::moves::{enumerate_move_pairs, neighbours, PairConfig};
use hopfdouble::diagram::{left_normalize, library, zeta, Diagram};
use hopfdouble::doubles::DoubleContext;
use hopfdouble::exact::{solve_linear, Field, Solution, SparseTensor, Vector};
use hopfdouble::hopf::{builtin, BUILTIN_NAMES};
use hopfdouble::invariant::QuotientMap;

/// 32 cases unless `PROPTEST_CASES` says otherwise.
fn config() -> ProptestConfig {
    let cases = std::env::var("PROPTEST_CASES").ok().and_then(|s| s.parse().ok()).unwrap_or(32);
    ProptestConfig::with_cases(cases)
}

/// A diagram reached from a seed by a random walk of moves.
fn walked(colored: bool, seed: u64, depth: usize) -> Diagram {
    let seeds = if colored { library::colored_seeds() } else { library::isotopy_seeds() };
    let start = seeds[(seed % seeds.len() as u64) as usize].clone();
    let cfg = PairConfig { depth, seed, exceptions: true, max_crossings: 8 };
    enumerate_move_pairs(std::slice::from_ref(&start), cfg).last().map(|p| p.after.clone()).unwrap_or(start)
}

fn diagram() -> impl Strategy<Value = Diagram> {
    (any::<bool>(), any::<u64>(), 0usize..12).prop_map(|(c, s, d)| walked(c, s, d))
}

fn uncolored() -> impl Strategy<Value = Diagram> {
    (any::<u64>(), 0usize..10).prop_map(|(s, d)| walked(false, s, d))
}

/// The algebras where closed components take values: A, D(A) and H(A).
fn algebras(name: &str) -> &'static [Arc<Algebra>] {
    static CACHE: OnceLock<Vec<(String, Vec<Arc<Algebra>>)>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        BUILTIN_NAMES
            .iter()
            .map(|n| {
                let h = builtin(n, Field::Rational).unwrap();
                let a = h.algebra_arc();
                let ctx = DoubleContext::new(h).unwrap();
                (n.to_string(), vec![a, ctx.d.alg.clone(), ctx.h.alg.clone()])
            })
            .collect()
    });
    &all.iter().find(|(n, _)| n == name).unwrap().1
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn parse_after_serialize_is_identity(d in diagram()) {
        prop_assert_eq!(Diagram::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn zeta_output_validates(d in uncolored()) {
        let z = zeta(&d).diagram;
        prop_assert!(z.colored());
        prop_assert_eq!(Diagram::from_json(&z.to_json()).unwrap(), z.clone());
        prop_assert_eq!(z.crossing_count(), 4 * d.crossing_count());
    }

    #[test]
    fn left_normalize_is_idempotent(d in diagram()) {
        let once = left_normalize(&d);
        prop_assert_eq!(left_normalize(&once), once);
    }

    #[test]
    fn moves_preserve_boundary_data(d in diagram()) {
        for p in neighbours(&d) {
            prop_assert_eq!(p.after.bottom(), d.bottom());
            prop_assert_eq!(p.after.top(), d.top());
        }
    }

    #[test]
    fn complexes_agree_away_from_the_site(seed in any::<u64>(), depth in 1usize..10) {
        let start = library::colored_seeds()[(seed % 4) as usize].clone();
        let cfg = PairConfig { depth, seed, exceptions: true, max_crossings: 8 };
        for p in enumerate_move_pairs(&[start], cfg) {
            let r = exteriors_agree(&p.before, &p.after, &p.mv, p.site);
            prop_assert!(r.is_ok(), "{:?}: {:?}", p.mv.kind, r);
        }
    }

    #[test]
    fn cell_complex_of_a_split_union_is_the_union(a in (any::<u64>(), 0usize..8), b in (any::<u64>(), 0usize..8)) {
        let (x, y) = (walked(true, a.0, a.1), walked(true, b.0, b.1));
        let (sx, sy, sxy) = (build_c(&x).stats(), build_c(&y).stats(), build_c(&x.beside(&y)).stats());
        prop_assert_eq!(sxy.tetrahedra, sx.tetrahedra + sy.tetrahedra);
        prop_assert_eq!(sxy.face_pairs, sx.face_pairs + sy.face_pairs);
        prop_assert_eq!(sxy.boundary_faces, sx.boundary_faces + sy.boundary_faces);
        prop_assert_eq!(sxy.edge_classes, sx.edge_classes + sy.edge_classes);
        prop_assert_eq!(sxy.vertex_classes, sx.vertex_classes + sy.vertex_classes);
    }

    #[test]
    fn cyclic_rotations_agree_modulo_commutators(
        which in 0usize..BUILTIN_NAMES.len(),
        word in proptest::collection::vec(any::<u32>(), 1..6),
    ) {
        for alg in algebras(BUILTIN_NAMES[which]) {
            let q = QuotientMap::of_algebra(alg);
            let letters: Vec<Vector> = word.iter().map(|&i| alg.basis(i % alg.dim() as u32)).collect();
            let base = q.project(&alg.product(&letters));
            for r in 1..letters.len() {
                let mut rotated = letters.clone();
                rotated.rotate_left(r);
                prop_assert_eq!(q.project(&alg.product(&rotated)), base.clone());
            }
        }
    }

    #[test]
    fn solve_recovers_vectors(which in 0usize..BUILTIN_NAMES.len(), coords in proptest::collection::vec(-5i64..6, 36)) {
        let h = builtin(BUILTIN_NAMES[which], Field::Rational).unwrap();
        let n = h.dim();
        let f = Field::Rational;
        let v: Vec<_> = coords[..n].iter().map(|&c| f.int(c)).collect();
        // the antipode is invertible, left multiplication need not be
        for m in [h.antipode_matrix(), h.algebra().left_mult_matrix(&h.basis((coords[0].unsigned_abs() % n as u64) as u32))] {
            let rhs = m.apply(&v);
            let sol = solve_linear(&m, &rhs).unwrap();
            prop_assert_eq!(m.apply(sol.particular()), rhs);
            if let Solution::Unique(x) = sol {
                prop_assert_eq!(x, v.clone());
            }
        }
    }

    #[test]
    fn placing_preserves_contraction(entries in proptest::collection::vec((0u32..3, 0u32..2, -4i64..5), 1..6), far in 0usize..3) {
        let f = Field::Rational;
        let mut x = SparseTensor::zero(vec![3, 2]);
        let mut g = SparseTensor::zero(vec![3, 2]);
        for (k, &(i, j, c)) in entries.iter().enumerate() {
            x.add_term(vec![i, j], &f.int(c));
            g.add_term(vec![(i + k as u32) % 3, j], &f.int(c - 1));
        }
        // a third slot of dimension 2 at position `far`, carrying e_0 on both sides
        let slots: Vec<usize> = (0..3).filter(|&s| s != far).collect();
        let mut ambient = vec![0; 3];
        ambient[slots[0]] = 3;
        ambient[slots[1]] = 2;
        ambient[far] = 2;
        let mut units = vec![None; 3];
        units[far] = Some(Vector::basis(0, f));
        let (px, pg) = (x.place(&slots, &ambient, &units).unwrap(), g.place(&slots, &ambient, &units).unwrap());
        prop_assert_eq!(SparseTensor::contract(&pg, &px, f).unwrap(), SparseTensor::contract(&g, &x, f).unwrap());
    }
}
