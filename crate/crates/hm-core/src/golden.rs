//! Embedded reference table: the nineteen columns of the
//! trace-comparison tables, used as golden data by `report --golden` and the
//! acceptance suite.
//!
//! Two cells of the reference table are internally inconsistent and are
//! handled explicitly here:
//!
//! * p = 131: the printed #G = 24219190 contradicts the printed #X̃ and the
//!   node corrections, which force 2421910 (a dropped-digit typo).
//!   `table_count_g` keeps the printed value; `count_g` carries the value
//!   the arithmetic implies, which is what a recount must reproduce.
//! * p = 137: the printed p³+1-#X̃ = -457966 disagrees with p³+1-#X̃
//!   computed from the printed #X̃ (= -457996, which is also the value that
//!   reproduces the printed trace -4252). Since that row is derived rather
//!   than independent data, this fixture stores no copy of it; the report
//!   recomputes it from p and #X̃.

use crate::report::{PrimeReport, Status};

#[derive(Debug, Clone, Copy)]
pub struct GoldenRow {
    pub p: u64,
    /// #G as printed.
    pub table_count_g: u64,
    /// #G implied by the rest of the column (differs only at p = 131).
    pub count_g: u64,
    pub sigma_defined: u32,
    pub tau_defined: u32,
    pub regular_defined: u32,
    pub count_e: u64,
    pub has_i: bool,
    pub has_sqrt5: bool,
    pub has_eps: bool,
    pub count_x_tilde: u64,
    pub h: i64,
    pub trace_h3: i64,
    pub a_p: i64,
    pub diff: i64,
    pub diff_over_p: i64,
}

#[rustfmt::skip]
pub const GOLDEN: [GoldenRow; 19] = [
    GoldenRow { p: 59,  table_count_g: 225_766,    count_g: 225_766,   sigma_defined: 5, tau_defined: 1, regular_defined: 0,  count_e: 0,   has_i: false, has_sqrt5: true,  has_eps: false, count_x_tilde: 247_360,   h: 12, trace_h3: 500,   a_p: 500,   diff: 0,     diff_over_p: 0 },
    GoldenRow { p: 67,  table_count_g: 327_706,    count_g: 327_706,   sigma_defined: 5, tau_defined: 1, regular_defined: 0,  count_e: 0,   has_i: false, has_sqrt5: false, has_eps: false, count_x_tilde: 355_310,   h: 12, trace_h3: 126,   a_p: 126,   diff: 0,     diff_over_p: 0 },
    GoldenRow { p: 71,  table_count_g: 407_910,    count_g: 407_910,   sigma_defined: 5, tau_defined: 5, regular_defined: 0,  count_e: 0,   has_i: false, has_sqrt5: true,  has_eps: true,  count_x_tilde: 459_740,   h: 20, trace_h3: 412,   a_p: 412,   diff: 0,     diff_over_p: 0 },
    GoldenRow { p: 79,  table_count_g: 529_886,    count_g: 529_886,   sigma_defined: 5, tau_defined: 1, regular_defined: 0,  count_e: 0,   has_i: false, has_sqrt5: true,  has_eps: false, count_x_tilde: 568_280,   h: 12, trace_h3: 600,   a_p: 600,   diff: 0,     diff_over_p: 0 },
    GoldenRow { p: 83,  table_count_g: 613_006,    count_g: 613_006,   sigma_defined: 5, tau_defined: 1, regular_defined: 0,  count_e: 0,   has_i: false, has_sqrt5: false, has_eps: false, count_x_tilde: 655_170,   h: 12, trace_h3: 282,   a_p: 282,   diff: 0,     diff_over_p: 0 },
    GoldenRow { p: 89,  table_count_g: 751_756,    count_g: 751_756,   sigma_defined: 5, tau_defined: 1, regular_defined: 10, count_e: 180, has_i: true,  has_sqrt5: true,  has_eps: false, count_x_tilde: 897_360,   h: 24, trace_h3: -150,  a_p: -150,  diff: 0,     diff_over_p: 0 },
    GoldenRow { p: 97,  table_count_g: 967_966,    count_g: 967_966,   sigma_defined: 5, tau_defined: 1, regular_defined: 10, count_e: 170, has_i: true,  has_sqrt5: false, has_eps: false, count_x_tilde: 1_137_910, h: 24, trace_h3: 2908,  a_p: 386,   diff: 2522,  diff_over_p: 26 },
    GoldenRow { p: 101, table_count_g: 1_126_560,  count_g: 1_126_560, sigma_defined: 5, tau_defined: 5, regular_defined: 50, count_e: 200, has_i: true,  has_sqrt5: true,  has_eps: true,  count_x_tilde: 1_770_940, h: 72, trace_h3: 1106,  a_p: 702,   diff: 404,   diff_over_p: 4 },
    GoldenRow { p: 103, table_count_g: 1_157_186,  count_g: 1_157_186, sigma_defined: 5, tau_defined: 1, regular_defined: 0,  count_e: 0,   has_i: false, has_sqrt5: false, has_eps: false, count_x_tilde: 1_221_870, h: 12, trace_h3: -598,  a_p: -598,  diff: 0,     diff_over_p: 0 },
    GoldenRow { p: 107, table_count_g: 1_295_146,  count_g: 1_295_146, sigma_defined: 5, tau_defined: 1, regular_defined: 0,  count_e: 0,   has_i: false, has_sqrt5: false, has_eps: false, count_x_tilde: 1_364_910, h: 12, trace_h3: -1194, a_p: -1194, diff: 0,     diff_over_p: 0 },
    GoldenRow { p: 109, table_count_g: 1_365_776,  count_g: 1_365_776, sigma_defined: 5, tau_defined: 1, regular_defined: 10, count_e: 220, has_i: true,  has_sqrt5: true,  has_eps: false, count_x_tilde: 1_583_340, h: 24, trace_h3: -550,  a_p: -550,  diff: 0,     diff_over_p: 0 },
    GoldenRow { p: 113, table_count_g: 1_517_046,  count_g: 1_517_046, sigma_defined: 5, tau_defined: 1, regular_defined: 10, count_e: 230, has_i: true,  has_sqrt5: false, has_eps: false, count_x_tilde: 1_750_730, h: 24, trace_h3: 1336,  a_p: 1562,  diff: -226,  diff_over_p: -2 },
    GoldenRow { p: 127, table_count_g: 2_143_566,  count_g: 2_143_566, sigma_defined: 5, tau_defined: 1, regular_defined: 0,  count_e: 0,   has_i: false, has_sqrt5: false, has_eps: false, count_x_tilde: 2_241_610, h: 12, trace_h3: 1846,  a_p: 1846,  diff: 0,     diff_over_p: 0 },
    GoldenRow { p: 131, table_count_g: 24_219_190, count_g: 2_421_910, sigma_defined: 5, tau_defined: 5, regular_defined: 0,  count_e: 0,   has_i: false, has_sqrt5: true,  has_eps: true,  count_x_tilde: 2_596_140, h: 20, trace_h3: -2208, a_p: -2208, diff: 0,     diff_over_p: 0 },
    GoldenRow { p: 137, table_count_g: 2_685_206,  count_g: 2_685_206, sigma_defined: 5, tau_defined: 1, regular_defined: 10, count_e: 290, has_i: true,  has_sqrt5: false, has_eps: false, count_x_tilde: 3_029_350, h: 24, trace_h3: -4252, a_p: -2334, diff: -1918, diff_over_p: -14 },
    GoldenRow { p: 139, table_count_g: 2_802_246,  count_g: 2_802_246, sigma_defined: 5, tau_defined: 1, regular_defined: 0,  count_e: 0,   has_i: false, has_sqrt5: true,  has_eps: false, count_x_tilde: 2_919_840, h: 12, trace_h3: -700,  a_p: -700,  diff: 0,     diff_over_p: 0 },
    GoldenRow { p: 149, table_count_g: 3_437_616,  count_g: 3_437_616, sigma_defined: 5, tau_defined: 1, regular_defined: 10, count_e: 300, has_i: true,  has_sqrt5: true,  has_eps: false, count_x_tilde: 3_842_300, h: 24, trace_h3: 2050,  a_p: 2050,  diff: 0,     diff_over_p: 0 },
    GoldenRow { p: 151, table_count_g: 3_669_110,  count_g: 3_669_110, sigma_defined: 5, tau_defined: 5, regular_defined: 0,  count_e: 0,   has_i: false, has_sqrt5: true,  has_eps: true,  count_x_tilde: 3_900_140, h: 20, trace_h3: 1852,  a_p: 1852,  diff: 0,     diff_over_p: 0 },
    GoldenRow { p: 157, table_count_g: 4_019_026,  count_g: 4_019_026, sigma_defined: 5, tau_defined: 1, regular_defined: 10, count_e: 350, has_i: true,  has_sqrt5: false, has_eps: false, count_x_tilde: 4_473_070, h: 24, trace_h3: -7832, a_p: -2494, diff: -5338, diff_over_p: -34 },
];

pub fn golden_row(p: u64) -> Option<&'static GoldenRow> {
    GOLDEN.iter().find(|row| row.p == p)
}

/// Outcome of comparing one computed report against the fixture.
#[derive(Debug, Clone, Default)]
pub struct GoldenComparison {
    pub mismatches: Vec<String>,
    pub notes: Vec<String>,
}

impl GoldenComparison {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Field-by-field comparison with the fixture column, if one exists for
/// this prime.
pub fn compare_with_golden(report: &PrimeReport) -> Option<GoldenComparison> {
    let row = golden_row(report.p)?;
    let mut cmp = GoldenComparison::default();
    let mut check = |label: &str, got: String, want: String| {
        if got != want {
            cmp.mismatches
                .push(format!("{label}: computed {got}, table {want}"));
        }
    };
    if row.table_count_g != row.count_g {
        cmp.notes.push(format!(
            "p={}: printed #G = {} is a known typo; the column's arithmetic implies {}",
            row.p, row.table_count_g, row.count_g
        ));
    }
    check("#G", report.count_g.to_string(), row.count_g.to_string());
    check(
        "sigma nodes",
        report.sigma_defined.to_string(),
        row.sigma_defined.to_string(),
    );
    check(
        "tau nodes",
        report.tau_defined.to_string(),
        row.tau_defined.to_string(),
    );
    check(
        "other nodes",
        report.regular_defined.to_string(),
        row.regular_defined.to_string(),
    );
    check("#E", report.count_e.to_string(), row.count_e.to_string());
    check("i present", report.has_i.to_string(), row.has_i.to_string());
    check(
        "sqrt5 present",
        report.has_sqrt5.to_string(),
        row.has_sqrt5.to_string(),
    );
    check(
        "eps present",
        report.has_eps.to_string(),
        row.has_eps.to_string(),
    );
    check(
        "#X~",
        report.count_x_tilde.to_string(),
        row.count_x_tilde.to_string(),
    );
    check(
        "h",
        report
            .h
            .map(|h| h.to_string())
            .unwrap_or_else(|| format!("{:?}", report.h_candidates)),
        row.h.to_string(),
    );
    check(
        "trace",
        report.trace_h3.map(|t| t.to_string()).unwrap_or_default(),
        row.trace_h3.to_string(),
    );
    check("a_p", report.a_p.to_string(), row.a_p.to_string());
    check(
        "trace - a_p",
        report.diff.map(|d| d.to_string()).unwrap_or_default(),
        row.diff.to_string(),
    );
    check(
        "(trace - a_p)/p",
        report
            .diff_over_p
            .map(|d| d.to_string())
            .unwrap_or_default(),
        row.diff_over_p.to_string(),
    );
    if report.status != Status::Match {
        cmp.mismatches.push(format!("status: {:?}", report.status));
    }
    Some(cmp)
}
