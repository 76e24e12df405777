//! Embedded reference tables for the free energies, used by the
//! verification suite for bit-exact comparison.
//!
//! Entries are stored against the normalized-monomial basis of each model:
//! the plain half-power basis for 1D and the fat tower (where the stored
//! number is also the raw `(v, I)` coefficient), the factorial half-power
//! basis for the matrix model at genus 3 and 4 (with the genus-2 table in
//! raw form), and the third-power basis for 2D. Coefficients are lists of
//! `(numerator, denominator, N-power)`.

use std::collections::BTreeMap;

use crate::algebra::rational::rat;
use crate::algebra::{Monomial, Poly, VarId};
use crate::engines::extract::{Partition, TildeConvention};

/// Exponent pattern `(index, multiplicity)` of one table row.
pub type PatternRow = &'static [(u32, u32)];
/// Coefficient as a sum of `(numerator, denominator, N-power)` terms.
pub type CoeffRow = &'static [(i64, i64, u32)];

pub struct ReferenceTable {
    pub model: &'static str,
    pub genus: u32,
    pub convention: TildeConvention,
    pub entries: &'static [(PatternRow, CoeffRow)],
}

impl ReferenceTable {
    /// Materialize as a pattern -> coefficient-polynomial map.
    pub fn to_map(&self) -> BTreeMap<Partition, Poly> {
        let mut out = BTreeMap::new();
        for &(pattern, coeffs) in self.entries {
            let mut poly = Poly::zero();
            for &(num, den, npow) in coeffs {
                poly.add_term(
                    Monomial::var_pow(VarId::big_n(), npow as i64),
                    rat(num, den),
                );
            }
            out.insert(Partition(pattern.to_vec()), poly);
        }
        out
    }
}

const fn c(num: i64, den: i64) -> (i64, i64, u32) {
    (num, den, 0)
}

pub const ONE_DIM_F2: ReferenceTable = ReferenceTable {
    model: "1d",
    genus: 2,
    convention: TildeConvention::HalfPower,
    entries: &[
        (&[(2, 2)], &[c(5, 24)]),
        (&[(3, 1)], &[c(1, 8)]),
    ],
};

pub const ONE_DIM_F3: ReferenceTable = ReferenceTable {
    model: "1d",
    genus: 3,
    convention: TildeConvention::HalfPower,
    entries: &[
        (&[(2, 4)], &[c(15, 48)]),
        (&[(2, 2), (3, 1)], &[c(25, 48)]),
        (&[(3, 2)], &[c(1, 12)]),
        (&[(2, 1), (4, 1)], &[c(7, 48)]),
        (&[(5, 1)], &[c(1, 48)]),
    ],
};

pub const ONE_DIM_F4: ReferenceTable = ReferenceTable {
    model: "1d",
    genus: 4,
    convention: TildeConvention::HalfPower,
    entries: &[
        (&[(2, 6)], &[c(1105, 1152)]),
        (&[(2, 4), (3, 1)], &[c(985, 384)]),
        (&[(2, 2), (3, 2)], &[c(445, 288)]),
        (&[(3, 3)], &[c(11, 96)]),
        (&[(2, 3), (4, 1)], &[c(161, 192)]),
        (&[(2, 1), (3, 1), (4, 1)], &[c(7, 12)]),
        (&[(4, 2)], &[c(21, 640)]),
        (&[(2, 2), (5, 1)], &[c(113, 576)]),
        (&[(3, 1), (5, 1)], &[c(5, 96)]),
        (&[(2, 1), (6, 1)], &[c(1, 32)]),
        (&[(7, 1)], &[c(1, 384)]),
    ],
};

pub const HMM_F2: ReferenceTable = ReferenceTable {
    model: "hmm",
    genus: 2,
    convention: TildeConvention::HalfPower,
    entries: &[
        (&[(2, 2)], &[(1, 24, 1), (4, 24, 3)]),
        (&[(3, 1)], &[(1, 24, 1), (2, 24, 3)]),
    ],
};

pub const HMM_F3: ReferenceTable = ReferenceTable {
    model: "hmm",
    genus: 3,
    convention: TildeConvention::HalfPowerFactorial,
    entries: &[
        (&[(2, 4)], &[(216, 1, 4), (189, 1, 2)]),
        (&[(2, 2), (3, 1)], &[(216, 1, 4), (234, 1, 2)]),
        (&[(3, 2)], &[(18, 1, 4), (30, 1, 2)]),
        (&[(2, 1), (4, 1)], &[(45, 1, 4), (60, 1, 2)]),
        (&[(5, 1)], &[(5, 1, 4), (10, 1, 2)]),
    ],
};

pub const HMM_F4: ReferenceTable = ReferenceTable {
    model: "hmm",
    genus: 4,
    convention: TildeConvention::HalfPowerFactorial,
    entries: &[
        (&[(2, 6)], &[(13608, 1, 5), (26892, 1, 3), (8505, 2, 1)]),
        (&[(2, 4), (3, 1)], &[(22032, 1, 5), (49248, 1, 3), (8505, 1, 1)]),
        (&[(2, 2), (3, 2)], &[(7776, 1, 5), (20304, 1, 3), (3960, 1, 1)]),
        (&[(3, 3)], &[(288, 1, 5), (1056, 1, 3), (240, 1, 1)]),
        (&[(2, 3), (4, 1)], &[(5400, 1, 5), (13770, 1, 3), (2565, 1, 1)]),
        (&[(2, 1), (3, 1), (4, 1)], &[(2160, 1, 5), (6480, 1, 3), (1440, 1, 1)]),
        (&[(4, 2)], &[(90, 1, 5), (300, 1, 3), (165, 2, 1)]),
        (&[(2, 2), (5, 1)], &[(1080, 1, 5), (3330, 1, 3), (675, 1, 1)]),
        (&[(3, 1), (5, 1)], &[(144, 1, 5), (600, 1, 3), (156, 1, 1)]),
        (&[(2, 1), (6, 1)], &[(168, 1, 5), (630, 1, 3), (147, 1, 1)]),
        (&[(7, 1)], &[(14, 1, 5), (70, 1, 3), (21, 1, 1)]),
    ],
};

pub const FAT_F02: ReferenceTable = ReferenceTable {
    model: "hmm-fat",
    genus: 2,
    convention: TildeConvention::HalfPower,
    entries: &[
        (&[(2, 2)], &[c(1, 6)]),
        (&[(3, 1)], &[c(1, 12)]),
    ],
};

pub const FAT_F03: ReferenceTable = ReferenceTable {
    model: "hmm-fat",
    genus: 3,
    convention: TildeConvention::HalfPower,
    entries: &[
        (&[(2, 4)], &[c(1, 6)]),
        (&[(2, 2), (3, 1)], &[c(1, 4)]),
        (&[(3, 2)], &[c(1, 32)]),
        (&[(2, 1), (4, 1)], &[c(1, 16)]),
        (&[(5, 1)], &[c(1, 144)]),
    ],
};

pub const FAT_F04: ReferenceTable = ReferenceTable {
    model: "hmm-fat",
    genus: 4,
    convention: TildeConvention::HalfPower,
    entries: &[
        (&[(2, 6)], &[c(7, 24)]),
        (&[(2, 4), (3, 1)], &[c(17, 24)]),
        (&[(2, 2), (3, 2)], &[c(3, 8)]),
        (&[(3, 3)], &[c(1, 48)]),
        (&[(2, 3), (4, 1)], &[c(5, 24)]),
        (&[(2, 1), (3, 1), (4, 1)], &[c(1, 8)]),
        (&[(4, 2)], &[c(1, 160)]),
        (&[(2, 2), (5, 1)], &[c(1, 24)]),
        (&[(3, 1), (5, 1)], &[c(1, 120)]),
        (&[(2, 1), (6, 1)], &[c(1, 180)]),
        (&[(7, 1)], &[c(1, 2880)]),
    ],
};

pub const TWO_DIM_F2: ReferenceTable = ReferenceTable {
    model: "2d",
    genus: 2,
    convention: TildeConvention::ThirdPower,
    entries: &[
        (&[(2, 3)], &[c(7, 1440)]),
        (&[(2, 1), (3, 1)], &[c(29, 5760)]),
        (&[(4, 1)], &[c(1, 1152)]),
    ],
};

pub const TWO_DIM_F3: ReferenceTable = ReferenceTable {
    model: "2d",
    genus: 3,
    convention: TildeConvention::ThirdPower,
    entries: &[
        (&[(2, 6)], &[c(245, 20736)]),
        (&[(2, 4), (3, 1)], &[c(193, 6912)]),
        (&[(2, 2), (3, 2)], &[c(205, 13824)]),
        (&[(3, 3)], &[c(583, 580608)]),
        (&[(2, 3), (4, 1)], &[c(53, 6912)]),
        (&[(2, 1), (3, 1), (4, 1)], &[c(1121, 241920)]),
        (&[(4, 2)], &[c(607, 2903040)]),
        (&[(2, 2), (5, 1)], &[c(17, 11520)]),
        (&[(3, 1), (5, 1)], &[c(503, 1451520)]),
        (&[(2, 1), (6, 1)], &[c(77, 414720)]),
        (&[(7, 1)], &[c(1, 82944)]),
    ],
};

pub const TWO_DIM_F4: ReferenceTable = ReferenceTable {
    model: "2d",
    genus: 4,
    convention: TildeConvention::ThirdPower,
    entries: &[
        (&[(2, 9)], &[c(259553, 2488320)]),
        (&[(2, 7), (3, 1)], &[c(475181, 1244160)]),
        (&[(2, 5), (3, 2)], &[c(145693, 331776)]),
        (&[(2, 3), (3, 3)], &[c(43201, 248832)]),
        (&[(2, 1), (3, 4)], &[c(134233, 7962624)]),
        (&[(2, 6), (4, 1)], &[c(14147, 124416)]),
        (&[(2, 4), (3, 1), (4, 1)], &[c(83851, 414720)]),
        (&[(2, 2), (3, 2), (4, 1)], &[c(26017, 331776)]),
        (&[(3, 3), (4, 1)], &[c(185251, 49766400)]),
        (&[(2, 3), (4, 2)], &[c(5609, 276480)]),
        (&[(2, 1), (3, 1), (4, 2)], &[c(177, 20480)]),
        (&[(4, 3)], &[c(175, 995328)]),
        (&[(2, 5), (5, 1)], &[c(21329, 829440)]),
        (&[(2, 3), (3, 1), (5, 1)], &[c(13783, 414720)]),
        (&[(2, 1), (3, 2), (5, 1)], &[c(1837, 259200)]),
        (&[(2, 2), (4, 1), (5, 1)], &[c(7597, 1382400)]),
        (&[(3, 1), (4, 1), (5, 1)], &[c(719, 829440)]),
        (&[(2, 1), (5, 2)], &[c(533, 1935360)]),
        (&[(2, 4), (6, 1)], &[c(2471, 552960)]),
        (&[(2, 2), (3, 1), (6, 1)], &[c(7897, 2073600)]),
        (&[(3, 2), (6, 1)], &[c(1997, 6635520)]),
        (&[(2, 1), (4, 1), (6, 1)], &[c(1081, 2322432)]),
        (&[(5, 1), (6, 1)], &[c(487, 18579456)]),
        (&[(2, 3), (7, 1)], &[c(4907, 8294400)]),
        (&[(2, 1), (3, 1), (7, 1)], &[c(16243, 58060800)]),
        (&[(4, 1), (7, 1)], &[c(1781, 92897280)]),
        (&[(2, 2), (8, 1)], &[c(53, 921600)]),
        (&[(3, 1), (8, 1)], &[c(947, 92897280)]),
        (&[(2, 1), (9, 1)], &[c(149, 39813120)]),
        (&[(10, 1)], &[c(1, 7962624)]),
    ],
};

/// The raw `(w, J)` form of the genus-2 2D free energy.
pub fn two_dim_f2_wj() -> Poly {
    Poly::from_terms(vec![
        (
            Monomial::from_raw(vec![(VarId::j(2), 3), (VarId::w(), 5)]),
            rat(2100, 128),
        ),
        (
            Monomial::from_raw(vec![(VarId::j(2), 1), (VarId::j(3), 1), (VarId::w(), 4)]),
            rat(1015, 128),
        ),
        (
            Monomial::from_raw(vec![(VarId::j(4), 1), (VarId::w(), 3)]),
            rat(105, 128),
        ),
    ])
}

pub const ALL_TABLES: &[&ReferenceTable] = &[
    &ONE_DIM_F2,
    &ONE_DIM_F3,
    &ONE_DIM_F4,
    &HMM_F2,
    &HMM_F3,
    &HMM_F4,
    &FAT_F02,
    &FAT_F03,
    &FAT_F04,
    &TWO_DIM_F2,
    &TWO_DIM_F3,
    &TWO_DIM_F4,
];
