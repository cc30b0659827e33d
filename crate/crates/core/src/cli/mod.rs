//! Verification pipelines behind the `troplink` binary: input parsing,
//! report assembly and built-in fixtures.

mod commands;
mod fixtures;
pub mod parse;
mod report;

pub use commands::{
    bergman_report, cmd_bergman, cmd_hatlink, cmd_hypersurface, cmd_initial, cmd_link_homology, cmd_skeleton,
    cmd_trees, cmd_weightrow, grid, CheckRow, membership_mismatches, parse_weight, poset_betti, weightrow_report, LinkMethod,
    LinkOptions, ORDER_COMPLEX_CHAIN_LIMIT,
};
pub use fixtures::{fan_fixtures, fixtures, matroid_fixtures, FIXTURE_POLYNOMIALS};
pub use parse::{parse_polynomial, ParseError};
pub use report::{sha256_hex, OracleRow, VerificationReport};
