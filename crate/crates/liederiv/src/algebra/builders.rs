//! Constructors for the concrete algebras used by the built-in corpus and
//! the tests: pointwise products, matrix algebras via matrix units,
//! upper-triangular algebras, dual numbers, and direct sums.

use crate::exact::Scalar;

use super::structure::StructureAlgebra;

/// Q^n with pointwise multiplication; e_i e_j = delta_ij e_i.
pub fn pointwise(n: usize) -> StructureAlgebra {
    let labels = (0..n).map(|i| format!("e{i}")).collect();
    let unit = vec![Scalar::one(); n];
    StructureAlgebra::from_table(labels, unit, |i, j| {
        let mut v = vec![Scalar::zero(); n];
        if i == j {
            v[i] = Scalar::one();
        }
        v
    })
}

/// Full matrix algebra M_k(Q) on the basis of matrix units E_{rc},
/// ordered row-major; E_{ab} E_{cd} = delta_{bc} E_{ad}.
pub fn matrix_units(k: usize) -> StructureAlgebra {
    let n = k * k;
    let labels = (0..k)
        .flat_map(|r| (0..k).map(move |c| format!("e{}{}", r + 1, c + 1)))
        .collect();
    let mut unit = vec![Scalar::zero(); n];
    for d in 0..k {
        unit[d * k + d] = Scalar::one();
    }
    StructureAlgebra::from_table(labels, unit, |i, j| {
        let (a, b) = (i / k, i % k);
        let (c, d) = (j / k, j % k);
        let mut v = vec![Scalar::zero(); n];
        if b == c {
            v[a * k + d] = Scalar::one();
        }
        v
    })
}

/// Upper-triangular 2x2 matrices on the basis (E_11, E_12, E_22).
pub fn upper_triangular_2() -> StructureAlgebra {
    let labels = vec!["e11".into(), "e12".into(), "e22".into()];
    let unit = vec![Scalar::one(), Scalar::zero(), Scalar::one()];
    // Products: e11*e11=e11, e11*e12=e12, e12*e22=e12, e22*e22=e22, rest 0.
    StructureAlgebra::from_table(labels, unit, |i, j| {
        let mut v = vec![Scalar::zero(); 3];
        match (i, j) {
            (0, 0) => v[0] = Scalar::one(),
            (0, 1) => v[1] = Scalar::one(),
            (1, 2) => v[1] = Scalar::one(),
            (2, 2) => v[2] = Scalar::one(),
            _ => {}
        }
        v
    })
}

/// Dual numbers Q[t]/(t^2) on the basis (1, t).
pub fn dual_numbers() -> StructureAlgebra {
    let labels = vec!["one".into(), "t".into()];
    let unit = vec![Scalar::one(), Scalar::zero()];
    StructureAlgebra::from_table(labels, unit, |i, j| {
        let mut v = vec![Scalar::zero(); 2];
        match (i, j) {
            (0, 0) => v[0] = Scalar::one(),
            (0, 1) | (1, 0) => v[1] = Scalar::one(),
            _ => {} // t * t = 0
        }
        v
    })
}

/// Scalars plus the strictly upper-triangular 3x3 matrices, on the basis
/// (1, E_12, E_23, E_13). The only nonzero nilpotent product is
/// E_12 E_23 = E_13. This algebra has Lie derivations that do not split
/// into a derivation plus a central map, which makes it the seed for the
/// non-proper instances in the corpus.
pub fn scalar_plus_nil3() -> StructureAlgebra {
    let labels = vec!["one".into(), "e12".into(), "e23".into(), "e13".into()];
    let unit = vec![
        Scalar::one(),
        Scalar::zero(),
        Scalar::zero(),
        Scalar::zero(),
    ];
    StructureAlgebra::from_table(labels, unit, |i, j| {
        let mut v = vec![Scalar::zero(); 4];
        match (i, j) {
            (0, k) | (k, 0) => v[k] = Scalar::one(),
            (1, 2) => v[3] = Scalar::one(),
            _ => {}
        }
        v
    })
}

/// The five-dimensional subalgebra of M_4(Q) spanned by
/// a = E_11, b = E_22, u = E_23, c = E_33, d = E_44
/// (block-diagonal matrices diag(a, [[b, u], [0, c]], d)).
pub fn m4_block5() -> StructureAlgebra {
    let labels = vec![
        "a".into(),
        "b".into(),
        "u".into(),
        "c".into(),
        "d".into(),
    ];
    let unit = vec![
        Scalar::one(),
        Scalar::one(),
        Scalar::zero(),
        Scalar::one(),
        Scalar::one(),
    ];
    // Nonzero products: a^2=a, b^2=b, b*u=u, u*c=u, c^2=c, d^2=d.
    StructureAlgebra::from_table(labels, unit, |i, j| {
        let mut v = vec![Scalar::zero(); 5];
        match (i, j) {
            (0, 0) => v[0] = Scalar::one(),
            (1, 1) => v[1] = Scalar::one(),
            (1, 2) => v[2] = Scalar::one(),
            (2, 3) => v[2] = Scalar::one(),
            (3, 3) => v[3] = Scalar::one(),
            (4, 4) => v[4] = Scalar::one(),
            _ => {}
        }
        v
    })
}

/// Direct sum with block-diagonal products. Labels from the left summand
/// keep their names; colliding labels from the right get a prime suffix.
pub fn direct_sum(a: &StructureAlgebra, b: &StructureAlgebra) -> StructureAlgebra {
    let (n, m) = (a.dim(), b.dim());
    let mut labels: Vec<String> = a.labels().to_vec();
    for lbl in b.labels() {
        let mut candidate = lbl.clone();
        while labels.contains(&candidate) {
            candidate.push('\'');
        }
        labels.push(candidate);
    }
    let mut unit = a.unit().to_vec();
    unit.extend_from_slice(b.unit());
    StructureAlgebra::from_table(labels, unit, |i, j| {
        let mut v = vec![Scalar::zero(); n + m];
        if i < n && j < n {
            v[..n].clone_from_slice(&a.basis_product(i, j));
        } else if i >= n && j >= n {
            v[n..].clone_from_slice(&b.basis_product(i - n, j - n));
        }
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_produce_valid_algebras() {
        for a in [
            pointwise(3),
            matrix_units(2),
            matrix_units(3),
            upper_triangular_2(),
            dual_numbers(),
            scalar_plus_nil3(),
            m4_block5(),
            direct_sum(&matrix_units(2), &pointwise(1)),
        ] {
            assert!(a.validate().is_valid(), "invalid: {:?}", a.labels());
        }
    }

    #[test]
    fn m4_block5_products_match_matrix_multiplication() {
        // Check b*u = u and u*c = u against the M_4 embedding.
        let a = m4_block5();
        assert_eq!(a.basis_product(1, 2), a.basis_vector(2));
        assert_eq!(a.basis_product(2, 3), a.basis_vector(2));
        assert_eq!(a.basis_product(2, 1), vec![Scalar::zero(); 5]);
        assert_eq!(a.basis_product(3, 2), vec![Scalar::zero(); 5]);
    }

    #[test]
    fn direct_sum_blocks_do_not_interact() {
        let s = direct_sum(&pointwise(1), &pointwise(2));
        assert_eq!(s.dim(), 3);
        assert_eq!(s.basis_product(0, 1), vec![Scalar::zero(); 3]);
        assert_eq!(s.center().dim(), 3);
    }
}
