//! Centralizers inside an operator space.

use super::linalg::Echelon;
use super::space::OperatorSpace;
use crate::algebra::monomial::Key;
use crate::algebra::operator::SparseOperator;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// All elements of `ambient` commuting with every element of `s`.
pub fn centralizer_in<F: Field>(ambient: &OperatorSpace<F>, s: &[SparseOperator<F>]) -> Result<OperatorSpace<F>> {
    if s.iter().any(|x| x.ambient != ambient.ambient) {
        return Err(Error::AmbientMismatch);
    }
    let basis = ambient.basis();
    let mut ech: Echelon<(u32, Key), F> = Echelon::tracked();
    let mut null = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        let mut col: Vec<((u32, Key), F)> = Vec::new();
        for (j, x) in s.iter().enumerate() {
            let c = x.commutator_unchecked(b);
            col.extend(c.into_terms().into_iter().map(|(k, v)| ((j as u32, k), v)));
        }
        if let Err(combo) = ech.insert_tracked(&col, Some(i)) {
            let coeffs: Vec<F> = {
                let mut v = vec![F::zero(); basis.len()];
                for (k, c) in combo {
                    v[k] = c;
                }
                v
            };
            null.push(ambient.combine(&coeffs));
        }
    }
    OperatorSpace::span_reduce(ambient.ambient, &null)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::families::build_named_family;
    use crate::algebra::jw::parity_skew;
    use crate::algebra::monomial::Ambient;
    use crate::lie::closure::lie_closure;
    use crate::scalar::Q;

    #[test]
    fn centralizer_of_even_algebra_is_parity() {
        let d = 3;
        let g = build_named_family::<Q>("w1234", d).unwrap();
        let alg = lie_closure(&g, None).unwrap();
        let su = OperatorSpace::full(Ambient::majorana(d), false).unwrap();
        let c = centralizer_in(&su, &alg.basis()).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&parity_skew(d)));
        // generators and closure have the same centralizer
        let cg = centralizer_in(&su, &g).unwrap();
        assert!(cg.same_span(&c));
        // double centralizer is one dimension larger
        let cc = centralizer_in(&su, &c.basis()).unwrap();
        assert_eq!(cc.dim(), alg.dim() + 1);
    }

    #[test]
    fn centralizer_of_nothing_is_everything() {
        let su = OperatorSpace::<Q>::full(Ambient::majorana(2), false).unwrap();
        assert_eq!(centralizer_in(&su, &[]).unwrap().dim(), 15);
    }
}
