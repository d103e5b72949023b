use super::{mono, OperadPresentation};
use crate::error::{Error, Result};
use crate::freeop::{Poly, Tree};

pub const BUILTIN_NAMES: [&str; 5] = ["mag", "com", "as", "lie", "nov"];

fn x(i: u8) -> Tree {
    Tree::Leaf(i - 1)
}

fn m(a: Tree, b: Tree) -> Tree {
    Tree::node(0, a, b)
}

fn combo(terms: &[(i64, Tree)]) -> Poly {
    let mut p = Poly::zero(terms[0].1.leaf_count(), 1);
    for (c, t) in terms {
        p = p
            .add(&mono(t.clone(), 1).scale(&crate::linalg::int(*c)))
            .expect("same arity");
    }
    p
}

/// The compiled-in presentations, each with a single operation `m`:
///
/// * `mag`: no relations;
/// * `com`: commutative and associative;
/// * `as`: associative;
/// * `lie`: anticommutative with the Jacobi identity;
/// * `nov`: Novikov, left-symmetric and right-commutative.
pub fn builtin(name: &str) -> Result<OperadPresentation> {
    let ops = vec!["m".to_string()];
    let associator = || combo(&[(1, m(m(x(1), x(2)), x(3))), (-1, m(x(1), m(x(2), x(3))))]);
    let (rel2, rel3) = match name {
        "mag" => (vec![], vec![]),
        "com" => (vec![combo(&[(1, m(x(1), x(2))), (-1, m(x(2), x(1)))])], vec![associator()]),
        "as" => (vec![], vec![associator()]),
        "lie" => (
            vec![combo(&[(1, m(x(1), x(2))), (1, m(x(2), x(1)))])],
            vec![combo(&[
                (1, m(m(x(1), x(2)), x(3))),
                (-1, m(x(1), m(x(2), x(3)))),
                (1, m(x(2), m(x(1), x(3)))),
            ])],
        ),
        "nov" => (
            vec![],
            vec![
                // (x1x2)x3 - x1(x2x3) = (x2x1)x3 - x2(x1x3)
                combo(&[
                    (1, m(m(x(1), x(2)), x(3))),
                    (-1, m(x(1), m(x(2), x(3)))),
                    (-1, m(m(x(2), x(1)), x(3))),
                    (1, m(x(2), m(x(1), x(3)))),
                ]),
                // (x1x2)x3 = (x1x3)x2
                combo(&[(1, m(m(x(1), x(2)), x(3))), (-1, m(m(x(1), x(3)), x(2)))]),
            ],
        ),
        other => return Err(Error::UnknownPresentation(other.to_string())),
    };
    OperadPresentation::new(name, ops, rel2, rel3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn novikov_contains_right_commutativity() {
        let nov = builtin("nov").unwrap();
        let rc = combo(&[(1, m(m(x(1), x(2)), x(3))), (-1, m(m(x(1), x(3)), x(2)))]);
        assert!(nov.rel3().contains(&rc));
    }

    #[test]
    fn associative_is_the_associator() {
        let a = builtin("as").unwrap();
        assert!(a.rel2().is_empty());
        assert_eq!(a.rel3(), &[combo(&[(1, m(m(x(1), x(2)), x(3))), (-1, m(x(1), m(x(2), x(3))))])]);
    }

    #[test]
    fn magmatic_is_free() {
        let mag = builtin("mag").unwrap();
        assert!(mag.rel2().is_empty() && mag.rel3().is_empty());
    }

    #[test]
    fn unknown_name() {
        assert_eq!(builtin("jordan").unwrap_err(), Error::UnknownPresentation("jordan".into()));
    }
}
