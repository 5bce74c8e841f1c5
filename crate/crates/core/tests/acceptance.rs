//! The acceptance gate: ten end-to-end criteria with pinned tolerances.
//! Each test prints a single PASS line on success (visible with
//! `--nocapture`); a failure pinpoints the criterion by test name.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use staeckel::assoc::{devadoss_read, enumerate_trees, face_counts_bruteforce, Tree};
use staeckel::coords::{
    elliptic_point, elliptic_roots, orthogonality_check, orthogonality_check_with,
    polyspherical_point, random_labeled_tree, sckt_eigen_oracle, tree_coords_forward,
    tree_coords_inverse, LabeledTree,
};
use staeckel::killing::{
    kij_matrix, kij_phase, verify_independence, verify_kd_relations, Bracket, KillingIndex,
};
use staeckel::poly::{matrix_commutator, poisson_bracket, Poly, PolyMatrix};
use staeckel::rat::{rat, ratio, Rat};
use staeckel::spans::{
    compose_spans, elliptic_span, gaudin_span, jm_span, staeckel_from_tree, verify_span,
    Partition, StaeckelSpan,
};

const TABLE_BY_PARAMS: [&[u64]; 9] = [
    &[1, 1],
    &[2, 3, 1],
    &[3, 8, 5, 1],
    &[6, 20, 22, 8, 1],
    &[11, 49, 73, 46, 11, 1],
    &[23, 119, 233, 206, 87, 15, 1],
    &[46, 288, 689, 807, 485, 147, 19, 1],
    &[98, 696, 1988, 2891, 2320, 1021, 236, 24, 1],
    &[207, 1681, 5561, 9737, 9800, 5795, 1960, 356, 29, 1],
];

fn random_unit<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let len: f64 = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if len > 0.3 && v.iter().all(|c| c.abs() / len > 5e-2) {
            return v.iter().map(|c| c / len).collect();
        }
    }
}

/// Evenly spaced normalized parameters for every internal node of a shape.
fn label_evenly(t: &Tree) -> LabeledTree {
    match t {
        Tree::Leaf => LabeledTree::Leaf,
        Tree::Node(children) => {
            let k = children.len();
            let params: Vec<Rat> = (0..k).map(|j| ratio(j as i64, k as i64 - 1)).collect();
            LabeledTree::node(children.iter().map(label_evenly).collect(), params).unwrap()
        }
    }
}

#[test]
fn criterion_01_face_count_table() {
    let table = devadoss_read(11).unwrap();
    let totals = [2u64, 6, 17, 57, 191, 684, 2482, 9275, 35127];
    for (d, want) in (2..=10).zip(TABLE_BY_PARAMS) {
        assert_eq!(table.sphere_row(d), want, "sphere dimension {d}");
        assert_eq!(table.row_total(d + 1), totals[d - 2], "total for S^{d}");
    }
    println!("[ 1] face-count table S^2..S^10 exact: PASS");
}

#[test]
fn criterion_02_bruteforce_agreement() {
    let table = devadoss_read(9).unwrap();
    for n in 2..=9 {
        let (_, dyslexic) = face_counts_bruteforce(n).unwrap();
        assert_eq!(dyslexic, table.row_by_codim(n), "n = {n} leaves");
    }
    println!("[ 2] brute-force face counts match the series up to 9 leaves: PASS");
}

#[test]
fn criterion_03_first_column_wedderburn_etherington() {
    let table = devadoss_read(11).unwrap();
    let we = [1u64, 2, 3, 6, 11, 23, 46, 98, 207];
    for (d, want) in (2..=10).zip(we) {
        assert_eq!(table.sphere_row(d)[0], want, "sphere dimension {d}");
    }
    println!("[ 3] zero-parameter column equals Wedderburn-Etherington counts: PASS");
}

#[test]
fn criterion_04_kohno_drinfeld_relations() {
    for n in 3..=6 {
        for b in [Bracket::Poisson, Bracket::Commutator] {
            let report = verify_kd_relations(n, b).unwrap();
            assert!(report.all_ok(), "N = {n}, bracket {b:?}: {report:?}");
        }
    }

    // explicit formulas for (i,j,k) = (1,2,3), term for term
    let n = 3;
    let idx = |i, j| KillingIndex::new(i, j, n).unwrap();
    let cross = |i: usize, j: usize| {
        &(&Poly::var_x(n, i) * &Poly::var_p(n, j)) - &(&Poly::var_x(n, j) * &Poly::var_p(n, i))
    };
    let br = poisson_bracket(&kij_phase(idx(1, 2)), &kij_phase(idx(2, 3))).unwrap();
    let expect = (&(&cross(1, 2) * &cross(2, 3)) * &cross(3, 1)).scaled(&rat(4));
    assert_eq!(br, expect);

    let comm = matrix_commutator(&kij_matrix(idx(1, 2)), &kij_matrix(idx(2, 3))).unwrap();
    let x = |i| Poly::var_x(n, i);
    let xyz = &(&x(1) * &x(2)) * &x(3);
    let mut want = PolyMatrix::zero(n);
    want.set_entry(0, 1, (&xyz * &x(3)).scaled(&rat(-1)));
    want.set_entry(0, 2, &xyz * &x(2));
    want.set_entry(1, 0, &xyz * &x(3));
    want.set_entry(1, 2, (&xyz * &x(1)).scaled(&rat(-1)));
    want.set_entry(2, 0, (&xyz * &x(2)).scaled(&rat(-1)));
    want.set_entry(2, 1, &xyz * &x(1));
    assert_eq!(comm, want);
    println!("[ 4] Kohno-Drinfeld relations exact for N <= 6, explicit formulas verbatim: PASS");
}

#[test]
fn criterion_05_independence_ranks() {
    for n in 2..=6 {
        for b in [Bracket::Poisson, Bracket::Commutator] {
            let report = verify_independence(n, b).unwrap();
            assert!(report.ok(), "N = {n}, bracket {b:?}: {report:?}");
            assert_eq!(report.generator_rank, n * (n - 1) / 2);
            assert_eq!(report.bracket_rank, n * (n - 1) * (n - 2) / 6);
        }
    }
    println!("[ 5] generator and triple-bracket ranks exact for N <= 6: PASS");
}

#[test]
fn criterion_06_staeckel_verification() {
    for n in 2..=6usize {
        let z: Vec<Rat> = (0..n).map(|k| rat((k * k + 1) as i64)).collect();
        assert!(verify_span(&gaudin_span(&z).unwrap()).unwrap().ok(), "gaudin N = {n}");
        assert!(verify_span(&jm_span(n).unwrap()).unwrap().ok(), "jm N = {n}");
        let lam: Vec<Rat> = (0..n).map(|k| ratio(k as i64, 1)).collect();
        assert!(
            verify_span(&elliptic_span(&lam).unwrap()).unwrap().ok(),
            "elliptic N = {n}"
        );
    }
    for leaves in 2..=5 {
        for shape in enumerate_trees(leaves, None) {
            let t = label_evenly(&shape);
            let span = staeckel_from_tree(&t).unwrap();
            let report = verify_span(&span).unwrap();
            assert!(report.ok(), "tree {t}: {report:?}");
        }
    }
    println!("[ 6] verify_span passes for all constructions and all trees with <= 5 leaves: PASS");
}

#[test]
fn criterion_07_elliptic_equals_gaudin() {
    for n in 2..=6usize {
        let lam: Vec<Rat> = (0..n).map(|k| ratio(2 * k as i64 + 1, 3)).collect();
        let e = elliptic_span(&lam).unwrap();
        let g = gaudin_span(&lam).unwrap();
        assert!(e.same_subspace(&g).unwrap(), "N = {n}");
    }
    println!("[ 7] elliptic span equals Gaudin span as subspaces for N <= 6: PASS");
}

#[test]
fn criterion_08_elliptic_solver() {
    // worked quadratic case to 1e-12
    let s = 1.0 / 3f64.sqrt();
    let roots = elliptic_roots(&[0.0, 1.0, 2.0], &[s, s, s]).unwrap();
    assert!((roots[0] - (1.0 - s)).abs() <= 1e-12);
    assert!((roots[1] - (1.0 + s)).abs() <= 1e-12);

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in 2..=6 {
        let lambda: Vec<f64> = (0..n).map(|k| k as f64).collect();
        for _ in 0..1000 {
            let x = random_unit(&mut rng, n);
            let roots = elliptic_roots(&lambda, &x).unwrap();
            for k in 0..n - 1 {
                assert!(
                    lambda[k] < roots[k] && roots[k] < lambda[k + 1],
                    "interlacing broken at N = {n}"
                );
            }
            let signs: Vec<i8> = x.iter().map(|&v| if v < 0.0 { -1 } else { 1 }).collect();
            let back = elliptic_point(&lambda, &roots, &signs).unwrap();
            for (a, b) in back.iter().zip(&x) {
                assert!((a - b).abs() <= 1e-9, "round trip at N = {n}");
            }
            let eigs = sckt_eigen_oracle(&lambda, &x).unwrap();
            for (e, r) in eigs.iter().zip(&roots) {
                assert!((e - r).abs() <= 1e-9, "eigen oracle at N = {n}");
            }
        }
    }
    println!("[ 8] elliptic solver: interlacing, round trip and eigen oracle within 1e-9: PASS");
}

#[test]
fn criterion_09_orthogonality() {
    let mut rng = ChaCha8Rng::seed_from_u64(4096);
    for i in 0..20 {
        let leaves = 2 + (i % 5); // 2..=6
        let t = random_labeled_tree(&mut rng, leaves);
        for _ in 0..10 {
            let x = random_unit(&mut rng, leaves);
            let worst = orthogonality_check(&t, &x).unwrap();
            assert!(worst <= 1e-6, "tree {t}, point {x:?}: {worst}");
        }
    }

    // negative control: perturb the middle parameter of an arity-3 node
    let good = LabeledTree::parse("corolla{0,2/5,1}").unwrap();
    let bad = LabeledTree::parse("corolla{0,1/2,1}").unwrap();
    let x = random_unit(&mut rng, 3);
    let control = orthogonality_check_with(&good, &bad, &x).unwrap();
    assert!(control > 1e-3, "negative control too small: {control}");
    println!("[ 9] orthogonality <= 1e-6 on 200 samples, negative control > 1e-3: PASS");
}

#[test]
fn criterion_10_spherical_jm_correspondence() {
    // iterated composition with a singleton second block gives the
    // Jucys-Murphy basis verbatim
    for n in 3..=6usize {
        let mut acc = StaeckelSpan::empty();
        for m in 2..=n {
            let part = Partition::consecutive(&[m - 1, 1]).unwrap();
            acc = compose_spans(&part, &jm_span(2).unwrap(), &[acc, StaeckelSpan::empty()])
                .unwrap();
        }
        assert_eq!(acc.basis(), jm_span(n).unwrap().basis(), "N = {n}");
    }

    // the comb tree (every right child a leaf) carries standard spherical
    // coordinates: each node value is cos^2 of the node's polyspherical
    // angle, and the inverse map reproduces the polyspherical point
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for leaves in 2..=6usize {
        let mut shape = "(L,L)".to_string();
        for _ in 2..leaves - 1 + 1 {
            shape = format!("({shape},L)");
        }
        let shape = Tree::parse(&shape).unwrap();
        let t = label_evenly(&shape);
        let k = leaves - 1;
        for _ in 0..10 {
            let angles: Vec<f64> = (0..k).map(|_| rng.gen_range(0.2..1.3)).collect();
            let x = polyspherical_point(&shape, &angles).unwrap();
            let coords = tree_coords_forward(&t, &x).unwrap();
            let flat = coords.flatten();
            // forward lists nodes root-first, the recursion assigns angles
            // innermost-first
            for j in 0..k {
                let want = angles[k - 1 - j].cos().powi(2);
                assert!(
                    (flat[j] - want).abs() <= 1e-9,
                    "level sets disagree at node {j} for {leaves} leaves"
                );
            }
            let signs = vec![1i8; leaves];
            let back = tree_coords_inverse(&t, &coords, &signs).unwrap();
            for (a, b) in back.iter().zip(&x) {
                assert!((a - b).abs() <= 1e-9);
            }
        }
    }
    println!("[10] singleton compositions give the Jucys-Murphy chain, comb tree gives spherical coordinates: PASS");
}
