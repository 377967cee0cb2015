//! Lie closure by a generator worklist.

use super::space::OperatorSpace;
use crate::algebra::operator::SparseOperator;
use crate::error::{Error, Result};
use crate::scalar::Field;
use std::collections::VecDeque;

pub const DEFAULT_CAP: usize = 6000;

/// Smallest commutator-closed real span containing `gens`.
///
/// Every new element is bracketed with the (linearly independent)
/// generators only; this spans all nested brackets and therefore the whole
/// generated algebra.
pub fn lie_closure<F: Field>(gens: &[SparseOperator<F>], cap: Option<usize>) -> Result<OperatorSpace<F>> {
    let cap = cap.unwrap_or(DEFAULT_CAP);
    let Some(first) = gens.first() else {
        return Err(Error::Input("lie_closure needs at least one generator".into()));
    };
    let amb = first.ambient;
    let mut space = OperatorSpace::new(amb);
    let mut basic = Vec::new();
    let mut queue = VecDeque::new();
    for g in gens {
        if let Some(r) = space.insert(g)? {
            basic.push(g.clone());
            queue.push_back(r);
        }
    }
    while let Some(x) = queue.pop_front() {
        for g in &basic {
            let c = g.commutator_unchecked(&x);
            if c.is_zero() {
                continue;
            }
            if let Some(r) = space.insert(&c)? {
                if space.dim() > cap {
                    return Err(Error::CapExceeded { cap, partial: space.dim() });
                }
                queue.push_back(r);
            }
        }
    }
    space.mark_closed(basic);
    Ok(space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::families::build_named_family;
    use crate::scalar::Q;

    fn dim(name: &str, d: usize) -> usize {
        let g = build_named_family::<Q>(name, d).unwrap();
        lie_closure(&g, None).unwrap().dim()
    }

    #[test]
    fn quadratic_closures() {
        assert_eq!(dim("w123", 3), 15);
        assert_eq!(dim("w12", 4), 16);
        assert_eq!(dim("w1234", 3), 30);
    }

    #[test]
    fn cap_is_reported() {
        let g = build_named_family::<Q>("w1234", 3).unwrap();
        match lie_closure(&g, Some(10)) {
            Err(Error::CapExceeded { cap: 10, partial }) => assert!(partial > 10),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn closure_is_idempotent_and_closed() {
        let g = build_named_family::<Q>("w123", 3).unwrap();
        let s = lie_closure(&g, None).unwrap();
        assert!(s.verify_closed());
        let t = lie_closure(&s.basis(), None).unwrap();
        assert!(s.same_span(&t));
    }

    #[test]
    fn float_closure_matches_exact() {
        let g = build_named_family::<f64>("w12", 5).unwrap();
        assert_eq!(lie_closure(&g, None).unwrap().dim(), 25);
    }
}
