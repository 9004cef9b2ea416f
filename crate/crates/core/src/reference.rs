//! Known values used by the CLI tables, the conjecture
//! reports and the acceptance suite.

/// `H_n(Final(m))` as `(free, #k/(1-t), #k/(1-t^2))`, indexed `[n-1][m-1]`
/// for `1 <= n <= 4`, `1 <= m <= 5`.
pub const TABLE1: [[[usize; 3]; 5]; 4] = [
    [[1, 0, 0], [1, 0, 0], [0, 0, 0], [0, 0, 0], [0, 0, 0]],
    [[1, 0, 0], [1, 1, 1], [1, 1, 0], [0, 0, 0], [0, 0, 0]],
    [[1, 0, 0], [1, 2, 2], [1, 8, 2], [1, 5, 0], [0, 0, 0]],
    [[1, 0, 0], [1, 6, 4], [1, 33, 6], [1, 51, 3], [1, 23, 0]],
];

pub fn table1(n: usize, m: usize) -> [usize; 3] {
    TABLE1[n - 1][m - 1]
}

/// `H_5(Final(j))` over ℤ at `t = 4` as `(free, #ℤ_3, #ℤ_15)`, `j = 1..=6`.
pub const H5_AT_4: [[usize; 3]; 6] = [[1, 0, 0], [1, 13, 7], [1, 124, 16], [1, 323, 12], [1, 332, 4], [1, 119, 0]];

/// `S̃(n, m, m-1)` indexed `[m-1][n-1]`, `n, m <= 7`.
pub const RANKS: [[u64; 7]; 7] = [
    [1, 1, 1, 1, 1, 1, 1],
    [1, 3, 7, 15, 31, 63, 127],
    [0, 2, 12, 50, 180, 602, 1932],
    [0, 0, 6, 60, 390, 2100, 10206],
    [0, 0, 0, 24, 360, 3360, 25200],
    [0, 0, 0, 0, 120, 2520, 31920],
    [0, 0, 0, 0, 0, 720, 20160],
];

/// One row of the filtration data at `t = 4`: degree `n`, alphabet `m`,
/// cap `l`, then `H_n` of the capped subcomplex, of `Final(m)` and of the
/// quotient as `(free, #ℤ_3, #ℤ_15, #ℤ_315)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitRow {
    pub n: usize,
    pub m: usize,
    pub cap: usize,
    pub sub: [usize; 4],
    pub full: [usize; 4],
    pub quotient: [usize; 4],
}

const fn row(n: usize, m: usize, cap: usize, sub: [usize; 4], full: [usize; 4], quotient: [usize; 4]) -> SplitRow {
    SplitRow { n, m, cap, sub, full, quotient }
}

/// Rows in listed order. `(5,3,1)` and `(5,3,2)` are listed twice, and
/// the two `(5,3,2)` rows disagree on the subcomplex.
pub const SPLIT_ROWS: [SplitRow; 21] = [
    row(4, 2, 1, [1, 2, 0, 0], [1, 6, 4, 0], [0, 4, 4, 0]),
    row(4, 2, 2, [1, 4, 2, 0], [1, 6, 4, 0], [0, 2, 2, 0]),
    row(4, 3, 1, [1, 18, 2, 0], [1, 33, 6, 0], [0, 15, 4, 0]),
    row(4, 3, 2, [1, 30, 5, 0], [1, 33, 6, 0], [0, 3, 1, 0]),
    row(5, 2, 1, [1, 2, 0, 0], [1, 13, 7, 0], [0, 11, 7, 0]),
    row(5, 2, 2, [1, 6, 2, 0], [1, 13, 7, 0], [0, 7, 5, 0]),
    row(5, 2, 3, [1, 11, 4, 0], [1, 13, 7, 0], [0, 2, 3, 0]),
    row(5, 3, 1, [1, 50, 4, 0], [1, 124, 16, 0], [0, 74, 12, 0]),
    row(5, 3, 2, [1, 97, 12, 0], [1, 124, 16, 0], [0, 27, 4, 0]),
    row(5, 3, 3, [1, 120, 15, 0], [1, 124, 16, 0], [0, 4, 1, 0]),
    row(5, 3, 1, [1, 50, 4, 0], [1, 124, 16, 0], [0, 74, 12, 0]),
    row(5, 3, 2, [1, 97, 4, 0], [1, 124, 16, 0], [0, 27, 4, 0]),
    row(5, 4, 1, [1, 201, 6, 0], [1, 323, 12, 0], [0, 122, 6, 0]),
    row(5, 4, 2, [1, 304, 11, 0], [1, 323, 12, 0], [0, 19, 1, 0]),
    row(5, 4, 3, [1, 323, 12, 0], [1, 323, 12, 0], [0, 0, 0, 0]),
    row(6, 2, 1, [1, 3, 0, 0], [1, 30, 12, 0], [0, 27, 12, 0]),
    row(6, 2, 2, [1, 9, 3, 0], [1, 30, 12, 0], [0, 21, 9, 0]),
    row(6, 2, 3, [1, 20, 5, 0], [1, 30, 12, 0], [0, 10, 7, 0]),
    row(6, 2, 4, [1, 27, 9, 0], [1, 30, 12, 0], [0, 3, 3, 0]),
    row(6, 3, 1, [1, 124, 7, 0], [1, 423, 36, 2], [0, 299, 29, 2]),
    row(6, 3, 2, [1, 277, 24, 0], [1, 423, 36, 2], [0, 146, 12, 2]),
];

/// All listed rows for `(n, m, cap)`.
pub fn split_rows(n: usize, m: usize, cap: usize) -> Vec<SplitRow> {
    SPLIT_ROWS.iter().copied().filter(|r| (r.n, r.m, r.cap) == (n, m, cap)).collect()
}
