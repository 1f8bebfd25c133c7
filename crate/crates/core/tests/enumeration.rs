use skewbrace::construct::{enumerate_braces_bounded, is_isomorphic};

// numbers of skew braces of order n up to isomorphism
const KNOWN: [(usize, usize); 12] = [
    (1, 1),
    (2, 1),
    (3, 1),
    (4, 4),
    (5, 1),
    (6, 6),
    (7, 1),
    (8, 47),
    (9, 4),
    (10, 6),
    (11, 1),
    (12, 38),
];

#[test]
fn counts_up_to_isomorphism() {
    for (n, c) in KNOWN {
        let t = std::time::Instant::now();
        let v = enumerate_braces_bounded(n, true, 16).unwrap();
        eprintln!("order {n}: {} braces in {:?}", v.len(), t.elapsed());
        assert_eq!(v.len(), c, "order {n}");
    }
}

#[test]
fn order_four_representatives_pairwise_non_isomorphic() {
    let v = enumerate_braces_bounded(4, true, 16).unwrap();
    for i in 0..v.len() {
        for j in 0..v.len() {
            assert_eq!(is_isomorphic(&v[i], &v[j]).isomorphic, i == j);
        }
    }
}
