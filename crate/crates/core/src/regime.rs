//! Closed-form values of `wdim_k(K_n x K_n)` per `(n, k)` cell.
//!
//! Every cell `1 <= k <= κ(n)` is claimed by exactly one [`Rule`]. Rules
//! follow the hypotheses under which each value is actually established,
//! which for the band families is narrower than the headline statement.

use serde::Serialize;

use crate::delta::product_kappa;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "EXACT")]
    Exact,
    #[serde(rename = "UPPER-BOUND")]
    UpperBound,
    #[serde(rename = "UNKNOWN")]
    Unknown,
    #[serde(rename = "OUT-OF-RANGE")]
    OutOfRange,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Exact => "EXACT",
            Status::UpperBound => "UPPER-BOUND",
            Status::Unknown => "UNKNOWN",
            Status::OutOfRange => "OUT-OF-RANGE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Regime {
    pub n: usize,
    pub k: usize,
    pub status: Status,
    pub value: Option<usize>,
    pub source: &'static str,
    pub t: Option<usize>,
}

impl Regime {
    /// Exact value or upper bound, whichever is present.
    pub fn bound(&self) -> Option<usize> {
        self.value
    }
}

/// One dispatch branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    SmallTable,
    MetricDimension,
    Blocks,
    Diagonals,
    FourBound,
    FourOpen,
    OddBand,
    OddBandUnproved,
    EvenBand,
    NearDiagonal,
    SpecialFourSeven,
    MinusDiagonal,
    MinusOne,
    Full,
}

pub const RULES: [Rule; 14] = [
    Rule::SmallTable,
    Rule::MetricDimension,
    Rule::Blocks,
    Rule::Diagonals,
    Rule::FourBound,
    Rule::FourOpen,
    Rule::OddBand,
    Rule::OddBandUnproved,
    Rule::EvenBand,
    Rule::NearDiagonal,
    Rule::SpecialFourSeven,
    Rule::MinusDiagonal,
    Rule::MinusOne,
    Rule::Full,
];

/// `t` with `k = 2n − 2t − 1`, if `k` has that form with `t >= 1`.
fn odd_t(n: usize, k: usize) -> Option<usize> {
    (k % 2 == 1 && k + 3 <= 2 * n).then(|| (2 * n - 1 - k) / 2)
}

/// `t` with `k = 2n − 2t`, if `k` has that form with `t >= 1`.
fn even_t(n: usize, k: usize) -> Option<usize> {
    (k.is_multiple_of(2) && k + 2 <= 2 * n).then(|| (2 * n - k) / 2)
}

impl Rule {
    /// The regime this rule assigns to `(n, k)`, if it claims the cell.
    /// Assumes `1 <= k <= κ(n)`.
    pub fn apply(self, n: usize, k: usize) -> Option<Regime> {
        let exact = |value, source, t| Regime { n, k, status: Status::Exact, value: Some(value), source, t };
        let unknown = |source, t| Regime { n, k, status: Status::Unknown, value: None, source, t };
        let sq = n * n;
        if n == 3 {
            return match (self, k) {
                (Rule::MetricDimension, 1) => Some(unknown(METRIC_DIMENSION, None)),
                (Rule::SmallTable, 2..=6) => {
                    let value = [4, 6, 6, 8, 9][k - 2];
                    Some(exact(value, "n=3 exhaustive search table", None))
                }
                _ => None,
            };
        }
        match self {
            Rule::SmallTable => None,
            Rule::MetricDimension => (k == 1).then(|| unknown(METRIC_DIMENSION, None)),
            Rule::Blocks => (k == 2).then(|| exact(n + n.div_ceil(3), "k=2: n+ceil(n/3)", None)),
            Rule::Diagonals => (k == 3).then(|| exact(2 * n, "k=3: 2n", None)),
            Rule::FourBound => (k == 4 && n >= 9).then(|| Regime {
                n,
                k,
                status: Status::UpperBound,
                value: Some(2 * n + 1 + n / 4),
                source: "k=4: upper bound 2n+1+floor(n/4) (n>=9); exact value open",
                t: None,
            }),
            Rule::FourOpen => (k == 4 && n <= 8).then(|| unknown("k=4 with n<=8: no formula or bound", None)),
            Rule::OddBand => odd_t(n, k).filter(|&t| n >= 6 && t <= n - 3).map(|t| {
                exact(
                    sq - t * n - n / (t + 1),
                    "k=2n-2t-1: n^2-tn-floor(n/(t+1)) (proved for n>=6, 1<=t<=n-3; headline range 1<=t<=n-2)",
                    Some(t),
                )
            }),
            Rule::OddBandUnproved => odd_t(n, k).filter(|&t| n < 6 && t <= n - 3).map(|t| {
                unknown("k=2n-2t-1 with n<6: band formula only proved for n>=6", Some(t))
            }),
            Rule::EvenBand => even_t(n, k).filter(|&t| (2..=n - 3).contains(&t)).map(|t| {
                exact(
                    sq - t * n,
                    "k=2n-2t: n^2-tn (proved for 2<=t<=n-3; headline range 1<=t<=n-2)",
                    Some(t),
                )
            }),
            Rule::NearDiagonal => (k == 2 * n - 2).then(|| exact(sq - n - 1, "k=2n-2: n^2-n-1", Some(1))),
            Rule::SpecialFourSeven => (n == 4 && k == 7).then(|| exact(13, "(n,k)=(4,7): 13", None)),
            Rule::MinusDiagonal => (k == 2 * n - 1 && n >= 5).then(|| exact(sq - n, "k=2n-1: n^2-n (n>=5)", None)),
            Rule::MinusOne => (k == 2 * n).then(|| exact(sq - 1, "k=2n: n^2-1", None)),
            Rule::Full => (k == 2 * n + 1 || k == 2 * n + 2).then(|| exact(sq, "k in {2n+1,2n+2}: n^2", None)),
        }
    }
}

const METRIC_DIMENSION: &str = "k=1: classical metric dimension, not covered here";

/// All rules that claim `(n, k)`; exactly one for every in-range cell.
pub fn matching_rules(n: usize, k: usize) -> Vec<Rule> {
    RULES.iter().copied().filter(|r| r.apply(n, k).is_some()).collect()
}

pub fn classify(n: usize, k: usize) -> Result<Regime> {
    if n < 3 {
        return Err(Error::InvalidOrder(n));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let kappa = product_kappa(n);
    if k > kappa {
        return Ok(Regime {
            n,
            k,
            status: Status::OutOfRange,
            value: None,
            source: "k exceeds kappa(K_n x K_n)",
            t: None,
        });
    }
    let hits = matching_rules(n, k);
    debug_assert_eq!(hits.len(), 1, "(n={n}, k={k}) claimed by {hits:?}");
    Ok(hits[0].apply(n, k).expect("rule matched"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(n: usize, k: usize) -> (Status, Option<usize>, Option<usize>) {
        let r = classify(n, k).unwrap();
        (r.status, r.value, r.t)
    }

    #[test]
    fn documented_cells() {
        assert_eq!(cell(10, 2), (Status::Exact, Some(14), None));
        assert_eq!(cell(4, 7), (Status::Exact, Some(13), None));
        assert_eq!(cell(14, 18), (Status::Exact, Some(126), Some(5)));
        assert_eq!(cell(14, 17), (Status::Exact, Some(124), Some(5)));
        assert_eq!(cell(9, 4), (Status::UpperBound, Some(21), None));
        assert_eq!(cell(5, 5).0, Status::Unknown);
        assert_eq!(cell(4, 11), (Status::OutOfRange, None, None));
        assert_eq!(cell(3, 5), (Status::Exact, Some(8), None));
        assert_eq!(cell(3, 7).0, Status::OutOfRange);
        assert_eq!(cell(7, 1).0, Status::Unknown);
        assert_eq!(cell(8, 4).0, Status::Unknown);
    }

    #[test]
    fn small_n_rows() {
        let n4: Vec<_> = (1..=10).map(|k| classify(4, k).unwrap().value).collect();
        assert_eq!(
            n4,
            [None, Some(6), Some(8), None, None, Some(11), Some(13), Some(15), Some(16), Some(16)]
        );
        let n5: Vec<_> = (1..=12).map(|k| classify(5, k).unwrap().value).collect();
        assert_eq!(
            n5,
            [None, Some(7), Some(10), None, None, Some(15), None, Some(19), Some(20), Some(24), Some(25), Some(25)]
        );
    }

    #[test]
    fn bad_arguments() {
        assert!(matches!(classify(2, 2), Err(Error::InvalidOrder(2))));
        assert!(classify(5, 0).is_err());
    }

    #[test]
    fn every_cell_has_exactly_one_rule() {
        for n in 3..=30 {
            for k in 1..=product_kappa(n) {
                let hits = matching_rules(n, k);
                assert_eq!(hits.len(), 1, "n={n} k={k}: {hits:?}");
            }
        }
    }

    #[test]
    fn value_presence_matches_status() {
        for n in 3..=30 {
            for k in 1..=product_kappa(n) + 2 {
                let r = classify(n, k).unwrap();
                match r.status {
                    Status::Exact | Status::UpperBound => assert!(r.value.is_some()),
                    Status::Unknown | Status::OutOfRange => assert!(r.value.is_none()),
                }
                assert_eq!(r.status == Status::OutOfRange, k > product_kappa(n));
            }
        }
    }

    #[test]
    fn exact_values_nondecreasing_in_k() {
        for n in 3..=30 {
            let exact: Vec<usize> = (1..=product_kappa(n))
                .filter_map(|k| classify(n, k).ok().filter(|r| r.status == Status::Exact).and_then(|r| r.value))
                .collect();
            assert!(exact.windows(2).all(|w| w[0] <= w[1]), "n={n}: {exact:?}");
        }
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_value(classify(4, 7).unwrap()).unwrap();
        assert_eq!(json["status"], "EXACT");
        assert_eq!(json["value"], 13);
        assert!(json["t"].is_null());
        for key in ["n", "k", "status", "value", "source", "t"] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }
}
