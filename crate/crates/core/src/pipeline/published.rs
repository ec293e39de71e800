//! Published reference values the pipeline validates against.

use crate::exactla::{AbelianGroup, PoincareSeries};

/// `H^d(Σ3; M)` for the five catalog modules, as displayed for `d ≤ 12`.
pub fn sigma3_cohomology(module: &str, d: usize) -> Option<AbelianGroup> {
    let z3 = AbelianGroup::cyclic(3);
    let zero = AbelianGroup::zero();
    Some(match module {
        "trivial" => match (d, d % 4) {
            (0, _) => AbelianGroup::free(1),
            (_, 2) => AbelianGroup::cyclic(2),
            (_, 0) => AbelianGroup::cyclic(6),
            _ => zero,
        },
        "sign" => match d % 4 {
            1 | 3 => AbelianGroup::cyclic(2),
            2 => z3,
            _ => zero,
        },
        "standard" => {
            if d % 4 == 3 {
                z3
            } else {
                zero
            }
        }
        "standard⊗standard" => match (d, d % 4) {
            (0, _) => AbelianGroup::free(1),
            (_, 2) => z3,
            _ => zero,
        },
        "standard⊗sign" => {
            if d % 4 == 1 {
                z3
            } else {
                zero
            }
        }
        _ => return None,
    })
}

fn table(p: u64, top: usize, entries: &[(usize, usize, usize)]) -> Vec<AbelianGroup> {
    let mut out = vec![AbelianGroup::zero(); top + 1];
    for &(d, free, tors) in entries {
        out[d] = AbelianGroup::elementary(free, p, tors);
    }
    out
}

/// p-local `H^*` tables of the two Borel constructions, `(free rank, p-rank)` per degree.
pub fn fibration_table(fibration: &str, p: u64) -> Option<Vec<AbelianGroup>> {
    Some(match (fibration, p) {
        ("flbar3", 3) => table(3, 6, &[(0, 1, 0), (4, 0, 1), (5, 0, 1)]),
        ("flbar3", 2) => table(2, 6, &[(0, 1, 0), (2, 0, 1), (4, 0, 1), (6, 0, 1)]),
        ("fl3xfl3", 3) => table(
            3,
            12,
            &[(0, 1, 0), (4, 1, 1), (5, 0, 2), (6, 2, 1), (7, 0, 1), (8, 1, 2), (9, 0, 1), (12, 1, 0)],
        ),
        ("fl3xfl3", 2) => table(
            2,
            12,
            &[
                (0, 1, 0),
                (2, 0, 1),
                (4, 1, 1),
                (6, 2, 1),
                (7, 0, 1),
                (8, 1, 0),
                (9, 0, 1),
                (11, 0, 1),
                (12, 1, 0),
            ],
        ),
        _ => return None,
    })
}

/// Printed mod-p Poincaré series of the Borel constructions.
pub fn fibration_series(fibration: &str, p: u64) -> Option<PoincareSeries> {
    let s = |t: &[(usize, u64)]| PoincareSeries::from_terms(t);
    Some(match (fibration, p) {
        ("flbar3", 3) => s(&[(0, 1), (3, 1), (4, 2), (5, 1)]),
        ("flbar3", 2) => s(&(0..=6).map(|d| (d, 1)).collect::<Vec<_>>()),
        ("fl3xfl3", 2) => s(&[
            (0, 1),
            (1, 1),
            (2, 1),
            (3, 1),
            (4, 2),
            (5, 1),
            (6, 4),
            (7, 1),
            (8, 2),
            (9, 1),
            (10, 1),
            (11, 1),
            (12, 1),
        ]),
        _ => return None,
    })
}

/// The mod-3 corollary for `Fl3 ×_Σ3 Fl3` as printed, with `4t^4` appearing twice.
pub const FL3XFL3_MOD3_PRINTED: &str = "1+t^3+4t^4+3t^5+4t^6+3t^7+4t^4+t^9+t^12";

/// The mod-3 series obtained from the integral table by universal coefficients.
pub fn fl3xfl3_mod3_from_table() -> PoincareSeries {
    PoincareSeries::from_terms(&[(0, 1), (3, 1), (4, 4), (5, 3), (6, 4), (7, 3), (8, 4), (9, 1), (12, 1)])
}

/// Printed presentation and series of `H^*(U(3)/T(2); F_p)`.
pub fn u3t2(p: u64) -> Option<(&'static str, PoincareSeries)> {
    let s = |t: &[(usize, u64)]| PoincareSeries::from_terms(t);
    match p {
        2 => Some(("F2[z5, β]/(z5^2, β^2)", s(&[(0, 1), (2, 1), (5, 1), (7, 1)]))),
        3 => Some(("F3[z3, β]/(z3^2, β^3)", s(&[(0, 1), (2, 1), (3, 1), (4, 1), (5, 1), (7, 1)]))),
        _ => None,
    }
}

/// Transgressions as printed: `(generator, value on its page)`.
pub fn u3t2_transgressions(p: u64) -> Vec<(&'static str, &'static str)> {
    match p {
        2 => vec![("z1", "β2"), ("z3", "β1^2"), ("z5", "0")],
        3 => vec![("z3", "0"), ("z5", "β1^3")],
        _ => Vec::new(),
    }
}

/// The displayed `F_p`-cohomology of `E_com U(3)`: degree → dimension.
pub fn ecom_u3_dims(p: u64) -> Option<Vec<(usize, usize)>> {
    match p {
        2 => Some(vec![(0, 1), (4, 2), (5, 1), (6, 3), (8, 2), (9, 1), (12, 1), (13, 1), (14, 1)]),
        3 => Some(vec![(0, 1), (4, 2), (5, 1), (6, 3), (7, 1), (8, 3), (9, 2), (10, 3), (11, 3), (12, 2), (13, 1)]),
        _ => None,
    }
}

/// The E2 columns `lim⁰ H^k` and `lim¹ H^k` as listed: `(k, dim)`.
pub fn ecom_u3_e2_lists(p: u64) -> Option<(Vec<(usize, usize)>, Vec<(usize, usize)>)> {
    match p {
        2 => Some((
            vec![(0, 1), (4, 1), (5, 1), (6, 2)],
            vec![(3, 1), (5, 1), (7, 2), (8, 1), (11, 1), (12, 1), (13, 1)],
        )),
        3 => Some((
            vec![(0, 1), (4, 1), (5, 1), (6, 1)],
            vec![(3, 1), (5, 2), (6, 1), (7, 3), (8, 2), (9, 3), (10, 3), (11, 2), (12, 1)],
        )),
        _ => None,
    }
}

/// Cochain complex shapes and limits worked out for the mod-2 diagram in degrees 0, 3 and 4.
pub fn worked_blocks() -> Vec<(usize, (usize, usize, usize), (usize, usize))> {
    vec![(0, (7, 12, 6), (1, 0)), (3, (9, 22, 12), (0, 1)), (4, (11, 22, 12), (1, 0))]
}

/// Rational Poincaré series of `E_com U(3)`.
pub fn rational_series() -> PoincareSeries {
    PoincareSeries::from_terms(&[(0, 1), (4, 1), (6, 2), (8, 1), (12, 1)])
}

/// Degrees of the invariant basis.
pub const INVARIANT_BASIS_DEGREES: [u32; 6] = [0, 4, 6, 6, 8, 12];
