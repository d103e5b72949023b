//! Numbers produced by `tools/oracle/brute_force.py`, an independent
//! fraction-based implementation, frozen here and compared against the
//! library.

use derived_identities::io::parse_expr;
use derived_identities::linalg::{frac, int, Rational};
use derived_identities::oracle::derived_identity_space;
use derived_identities::presentation::{builtin, consequence_space, ComponentCache};
use derived_identities::products::{derived_identities, white_relations};

const COMPONENT_DIMS: &[(&str, usize, usize)] = &[
    ("mag", 1, 1),
    ("mag", 2, 2),
    ("mag", 3, 12),
    ("com", 1, 1),
    ("com", 2, 1),
    ("com", 3, 1),
    ("com", 4, 1),
    ("lie", 1, 1),
    ("lie", 2, 1),
    ("lie", 3, 2),
    ("lie", 4, 6),
    ("as", 1, 1),
    ("as", 2, 2),
    ("as", 3, 6),
    ("as", 4, 24),
    ("nov", 1, 1),
    ("nov", 2, 2),
    ("nov", 3, 6),
    ("nov", 4, 20),
];

/// `(P, n, dim ker Φ, image)` for `P ∘ Nov`.
const WHITE_WITH_NOV: &[(&str, usize, usize, usize)] = &[
    ("mag", 2, 0, 4),
    ("mag", 3, 0, 48),
    ("com", 2, 2, 2),
    ("com", 3, 42, 6),
    ("lie", 2, 2, 2),
    ("lie", 3, 36, 12),
    ("as", 2, 0, 4),
    ("as", 3, 12, 36),
    ("nov", 2, 0, 4),
    ("nov", 3, 12, 36),
];

#[test]
fn component_dimensions() {
    let cache = ComponentCache::new();
    for &(name, n, dim) in COMPONENT_DIMS {
        let c = cache.component(&builtin(name).unwrap(), n).unwrap();
        assert_eq!(c.dim(), dim, "dim {name}({n})");
    }
}

#[test]
fn novikov_relation_dimension() {
    let cache = ComponentCache::new();
    assert_eq!(cache.component(&builtin("nov").unwrap(), 3).unwrap().relations().dim(), 6);
}

#[test]
fn white_products_with_novikov() {
    let cache = ComponentCache::new();
    for &(name, n, kernel, image) in WHITE_WITH_NOV {
        let r = derived_identities(&cache, &builtin(name).unwrap(), n).unwrap();
        assert_eq!((r.relations().dim(), r.image_dim()), (kernel, image), "{name} n={n}");
    }
}

#[test]
fn oracle_kernel_equals_white_kernel_for_all_weights() {
    let cache = ComponentCache::new();
    let lambdas: Vec<Rational> = vec![int(0), int(1), int(-2), frac(7, 3)];
    for &(name, n, _, _) in WHITE_WITH_NOV {
        let p = builtin(name).unwrap();
        let white = derived_identities(&cache, &p, n).unwrap();
        for l in &lambdas {
            assert_eq!(&derived_identity_space(&cache, &p, n, l).unwrap(), white.relations(), "{name} n={n} λ={l}");
        }
    }
}

#[test]
fn magmatic_square_and_associative_arity_four() {
    let cache = ComponentCache::new();
    let mag = builtin("mag").unwrap();
    assert_eq!(white_relations(&cache, &mag, &mag, 3).unwrap().relations().dim(), 0);
    let r = derived_identities(&cache, &builtin("as").unwrap(), 4).unwrap();
    assert_eq!((r.basis().len(), r.relations().dim()), (960, 480));
}

#[test]
fn closures_of_the_associative_derived_laws() {
    let ops = vec!["prec".to_string(), "succ".to_string()];
    let middle_assoc = parse_expr("prec(succ(x1,x2),x3) - succ(x1,prec(x2,x3))", &ops, None).unwrap();
    let total_assoc = parse_expr(
        "prec(prec(x1,x2),x3) - prec(x1,succ(x2,x3)) + succ(prec(x1,x2),x3) - succ(x1,succ(x2,x3))",
        &ops,
        None,
    )
    .unwrap();
    assert_eq!(consequence_space(2, std::slice::from_ref(&middle_assoc), 3).unwrap().dim(), 6);
    assert_eq!(consequence_space(2, &[middle_assoc, total_assoc], 3).unwrap().dim(), 12);
}

/// After `x ≻ y = y ≺ x`, the commutative arity-3 space has 12 words in `≺`
/// alone and a 6-dim image, leaving 12 − 6 relations.
#[test]
fn commutative_essential_relations_are_prec_only() {
    let r = derived_identities(&ComponentCache::new(), &builtin("com").unwrap(), 3).unwrap();
    assert_eq!(r.essential().dim(), 12 - 6);
    for f in r.essential_polys().unwrap() {
        assert!(f.terms().all(|(m, _)| m.ops().iter().all(|&op| op == 0)));
    }
}
