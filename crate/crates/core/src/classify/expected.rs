//! Reference values the pipeline is checked against.

/// Identities of rank 16, as coefficient lists `a1..a10`.
pub const RANK16: [&str; 6] = [
    "1,0,0,0,0,0,0,0,0,0",
    "1,0,0,0,0,0,0,0,0,-1",
    "1,0,0,-1,0,0,0,0,0,0",
    "1,0,0,-1,0,0,0,0,0,-1",
    "0,0,0,1,0,0,0,0,0,0",
    "0,0,0,0,0,0,0,0,0,1",
];

/// Identities of rank 19.
pub const RANK19: [&str; 8] = [
    "1,0,0,0,1,0,0,1,0,1",
    "1,0,0,0,-1,0,0,1,0,-1",
    "1,0,0,0,I,0,0,-1,0,-I",
    "1,0,0,0,-I,0,0,-1,0,I",
    "1,1,1,1,0,0,0,0,0,0",
    "1,-1,1,-1,0,0,0,0,0,0",
    "1,I,-1,-I,0,0,0,0,0,0",
    "1,-I,-1,I,0,0,0,0,0,0",
];

/// Reduced basis of the first determinantal ideal in case 1.
pub const CASE1_FIRST_IDEAL: [&str; 9] = ["a2", "a3", "a5", "a6", "a7", "a8", "a9", "a4^2 + a4", "a10^2 + a10"];

/// Reduced basis of the first determinantal ideal in case 4.
pub const CASE4_FIRST_IDEAL: [&str; 6] = ["a5", "a6", "a7", "a8", "a9", "a10"];

/// Radical of the fourth determinantal ideal in case 1, whose zero set is
/// the twelve case-1 points of rank 16 or 19.
pub const CASE1_FOURTH_RADICAL: [&str; 19] = [
    "a6",
    "a7",
    "a9",
    "a2^2 - a3",
    "a2*a5",
    "a8*a2",
    "a10*a2",
    "-a2*a4 + a3^2",
    "a3*a4 - a2",
    "a3*a5",
    "a8*a3",
    "a10*a3",
    "-a2*a3 + a4^2 - a3 + a4",
    "a4*a5",
    "a8*a4",
    "a5^2 - a8",
    "-a10*a5 + a8^2",
    "a10*a8 - a5",
    "a10^2 - a5*a8 + a10 - a8",
];

/// Cases whose substituted matrix has rank 20 for every parameter value.
pub const FULL_RANK_CASES: [usize; 7] = [2, 3, 5, 6, 7, 8, 9];

/// Size of the identity block of the partial Smith form, by case.
pub const IDENTITY_BLOCK: [usize; 10] = [16, 20, 20, 16, 20, 20, 20, 20, 20, 16];

/// Per rank `r = 1..4` of the residual block: minor totals, nonzero minors,
/// distinct monic minors, degree range and Gröbner basis size.
#[derive(Clone, Copy, Debug)]
pub struct IdealRow {
    pub r: usize,
    pub total: u64,
    pub nonzero: u64,
    pub monic: u64,
    pub degrees: (u32, u32),
    pub gbasis: usize,
}

const fn row(r: usize, total: u64, nonzero: u64, monic: u64, lo: u32, hi: u32, gbasis: usize) -> IdealRow {
    IdealRow { r, total, nonzero, monic, degrees: (lo, hi), gbasis }
}

pub const CASE1_IDEALS: [IdealRow; 4] = [
    row(1, 340, 102, 93, 1, 4, 9),
    row(2, 21_420, 3_263, 2_518, 2, 6, 45),
    row(3, 395_080, 52_925, 38_305, 3, 8, 165),
    row(4, 2_024_785, 380_377, 271_515, 4, 10, 548),
];

pub const CASE4_IDEALS: [IdealRow; 4] = [
    row(1, 216, 38, 30, 1, 3, 6),
    row(2, 8_586, 496, 306, 2, 5, 21),
    row(3, 99_216, 3_053, 1_828, 3, 7, 56),
    row(4, 316_251, 12_791, 7_799, 4, 8, 126),
];

/// Zero rows removed from the residual block in cases 1 and 4.
pub const RESIDUAL_ZERO_ROWS: [(usize, usize); 2] = [(1, 4), (4, 35)];

pub fn ideal_rows(case: usize) -> Option<&'static [IdealRow; 4]> {
    match case {
        1 => Some(&CASE1_IDEALS),
        4 => Some(&CASE4_IDEALS),
        _ => None,
    }
}
