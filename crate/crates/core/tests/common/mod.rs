//! Coordinate helpers shared by the integration tests.
#![allow(dead_code)]

use jdisc_core::geometry::VectorField;
use jdisc_core::series::scalar::rat;
use jdisc_core::series::{CScalar, MultiSeries};

pub const X1: usize = 0;
pub const Y1: usize = 1;
pub const X2: usize = 2;
pub const Y2: usize = 3;
pub const X3: usize = 4;
pub const Y3: usize = 5;
pub const X4: usize = 6;
pub const Y4: usize = 7;

pub type Term = (i64, i64, &'static [(usize, u32)]);

/// Field from (coordinate, [(num, den, [(var, power)])]) entries.
pub fn field(dim: usize, entries: &[(usize, &[Term])]) -> VectorField {
    let mut comps = vec![MultiSeries::zero(dim, 10); dim];
    for (i, terms) in entries {
        comps[*i] = MultiSeries::from_exponent_terms(
            dim,
            10,
            terms.iter().map(|(n, d, pows)| {
                let mut e = vec![0u32; dim];
                for (v, p) in pows.iter() {
                    e[*v] += p;
                }
                (e, CScalar::real(rat(*n, *d)))
            }),
        );
    }
    VectorField::new(comps)
}

/// The six brackets among L3..L6 shared by all three built-in examples.
pub fn core_table(dim: usize) -> Vec<(usize, usize, VectorField)> {
    vec![
        (3, 4, field(dim, &[(X1, &[(1, 1, &[])])])),
        (3, 5, VectorField::zero(dim, 10)),
        (4, 5, field(dim, &[(X1, &[(1, 1, &[(Y3, 1)])])])),
        (3, 6, field(dim, &[(X1, &[(1, 1, &[(Y3, 1)])])])),
        (4, 6, VectorField::zero(dim, 10)),
        (
            5,
            6,
            field(dim, &[(X2, &[(1, 1, &[])]), (X1, &[(-1, 2, &[(Y3, 2)])])]),
        ),
    ]
}

/// Brackets involving L7, L8 in the first eight-dimensional example.
pub fn ex1_table() -> Vec<(usize, usize, VectorField)> {
    let mut out = Vec::new();
    for i in 3..=6 {
        out.push((i, 7, VectorField::zero(8, 10)));
        out.push((i, 8, VectorField::zero(8, 10)));
    }
    out.push((7, 8, field(8, &[(Y4, &[(-1, 1, &[])])])));
    out
}

/// Brackets involving L7, L8 in the second eight-dimensional example, where
/// L7 = ∂x4 + y4 ∂y4 + y1 y4 L5 and L8 = ∂y4 + y1 y4 L6.
pub fn ex2_table() -> Vec<(usize, usize, VectorField)> {
    let zero = || VectorField::zero(8, 10);
    let y1y3y4_dx1 = || field(8, &[(X1, &[(1, 1, &[(Y1, 1), (Y3, 1), (Y4, 1)])])]);
    // y1 y4 L3 = y1 y4 ∂x2 − ½ y1 y3² y4 ∂x1
    let y1y4_l3 = field(
        8,
        &[
            (X2, &[(1, 1, &[(Y1, 1), (Y4, 1)])]),
            (X1, &[(-1, 2, &[(Y1, 1), (Y3, 2), (Y4, 1)])]),
        ],
    );
    // −∂y4 + y1 y4 L6 − y1 L5 + y1² y4² L3
    let l78 = field(
        8,
        &[
            (
                X1,
                &[
                    (-1, 2, &[(Y1, 1), (Y4, 1), (X3, 1), (Y3, 2)]),
                    (-1, 1, &[(Y1, 1), (Y4, 1), (X3, 1), (Y2, 1)]),
                    (1, 1, &[(Y1, 1), (Y2, 1), (Y3, 1)]),
                    (-1, 2, &[(Y1, 2), (Y4, 2), (Y3, 2)]),
                ],
            ),
            (
                X2,
                &[
                    (1, 1, &[(Y1, 1), (Y4, 1), (X3, 1)]),
                    (1, 1, &[(Y1, 2), (Y4, 2)]),
                ],
            ),
            (X3, &[(-1, 1, &[(Y1, 1)])]),
            (Y3, &[(1, 1, &[(Y1, 1), (Y4, 1)])]),
            (Y4, &[(-1, 1, &[])]),
        ],
    );
    // ∂y1 only sees the y1 factors: [L2, L7] = y4 L5, [L2, L8] = y4 L6
    let y4_l5 = field(
        8,
        &[
            (X3, &[(1, 1, &[(Y4, 1)])]),
            (X1, &[(-1, 1, &[(Y2, 1), (Y3, 1), (Y4, 1)])]),
        ],
    );
    let y4_l6 = field(
        8,
        &[
            (Y3, &[(1, 1, &[(Y4, 1)])]),
            (X2, &[(1, 1, &[(X3, 1), (Y4, 1)])]),
            (
                X1,
                &[
                    (-1, 2, &[(X3, 1), (Y3, 2), (Y4, 1)]),
                    (-1, 1, &[(X3, 1), (Y2, 1), (Y4, 1)]),
                ],
            ),
        ],
    );
    vec![
        (3, 7, zero()),
        (4, 7, y1y3y4_dx1()),
        (5, 7, zero()),
        (6, 7, y1y4_l3.neg()),
        (3, 8, y1y3y4_dx1()),
        (4, 8, zero()),
        (5, 8, y1y4_l3),
        (6, 8, zero()),
        (7, 8, l78),
        (2, 7, y4_l5),
        (2, 8, y4_l6),
    ]
}
