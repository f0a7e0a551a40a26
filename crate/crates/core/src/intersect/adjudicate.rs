//! Side-by-side records of every available value for one case, with a
//! verdict on whether they agree and, if not, which ν′ variant the oracle
//! supports.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::ledger::{bezout_ledger, Case, LedgerError, MultiplicitySource};
use super::oracle::{affine_intersections, OracleError, OracleOptions};
use crate::counts::{chart_count_iv, eta_ii_mj, Variant};
use crate::exactcore::{ExactInt, NumberError};
use crate::polyengine::Budget;
use crate::tables;

pub const DEFAULT_PRODUCT_BUDGET: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    AllAgree,
    VariantResolved,
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerVariant {
    #[serde(with = "crate::exactcore::decimal")]
    pub paper_variant: ExactInt,
    #[serde(with = "crate::exactcore::decimal")]
    pub markov_variant: ExactInt,
}

impl PerVariant {
    pub fn get(&self, v: Variant) -> &ExactInt {
        match v {
            Variant::PaperDisplay => &self.paper_variant,
            Variant::MarkovRecurrence => &self.markov_variant,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerResiduals {
    #[serde(with = "crate::exactcore::decimal")]
    pub closed_form_paper: ExactInt,
    #[serde(with = "crate::exactcore::decimal")]
    pub closed_form_markov: ExactInt,
    #[serde(with = "crate::exactcore::decimal::option")]
    pub exact_local: Option<ExactInt>,
}

impl LedgerResiduals {
    pub fn closed_form(&self, v: Variant) -> &ExactInt {
        match v {
            Variant::PaperDisplay => &self.closed_form_paper,
            Variant::MarkovRecurrence => &self.closed_form_markov,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjudicationRecord {
    pub case: Case,
    /// Tabulated value; type IV counts inside the chart are not tabulated.
    #[serde(with = "crate::exactcore::decimal::option")]
    pub paper: Option<ExactInt>,
    pub closed_form: PerVariant,
    pub ledger: LedgerResiduals,
    #[serde(with = "crate::exactcore::decimal::option")]
    pub oracle: Option<ExactInt>,
    pub verdict: Verdict,
}

impl AdjudicationRecord {
    /// The variant the oracle singles out, if exactly one matches.
    pub fn resolved_variant(&self) -> Option<Variant> {
        let oracle = self.oracle.as_ref()?;
        let hits: Vec<Variant> = Variant::ALL.into_iter().filter(|&v| self.closed_form.get(v) == oracle).collect();
        (hits.len() == 1).then(|| hits[0])
    }

    /// Whether the tabulated value, if any, equals the oracle count.
    pub fn paper_matches_oracle(&self) -> Option<bool> {
        Some(self.paper.as_ref()? == self.oracle.as_ref()?)
    }

    fn decide(&mut self) {
        self.verdict = match &self.oracle {
            None => Verdict::Unresolved,
            Some(o) => {
                let mut all = vec![
                    &self.closed_form.paper_variant,
                    &self.closed_form.markov_variant,
                    &self.ledger.closed_form_paper,
                    &self.ledger.closed_form_markov,
                ];
                all.extend(self.paper.iter());
                all.extend(self.ledger.exact_local.iter());
                if all.iter().all(|v| *v == o) {
                    Verdict::AllAgree
                } else {
                    match self.resolved_variant() {
                        Some(v)
                            if self.ledger.closed_form(v) == o
                                && self.ledger.exact_local.as_ref().map_or(true, |e| e == o) =>
                        {
                            Verdict::VariantResolved
                        }
                        _ => Verdict::Unresolved,
                    }
                }
            }
        };
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdjudicateOptions {
    pub oracle: OracleOptions,
    /// Largest Bezout product the oracle is run on.
    pub product_budget: u64,
}

impl Default for AdjudicateOptions {
    fn default() -> Self {
        AdjudicateOptions { oracle: OracleOptions::default(), product_budget: DEFAULT_PRODUCT_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AdjudicationError {
    #[error("{case}: Bezout product {product} exceeds the oracle budget {budget}")]
    OverBudget { case: Case, product: ExactInt, budget: u64 },
    #[error(transparent)]
    Ledger(#[from] LedgerError),
    #[error(transparent)]
    Number(#[from] NumberError),
    #[error("{}: oracle failed: {source}", partial.case)]
    Oracle { partial: Box<AdjudicationRecord>, source: OracleError },
}

fn closed_forms(case: Case) -> Result<PerVariant, NumberError> {
    let f = |v| match case {
        Case::IV { n, m } => chart_count_iv(n, m),
        Case::II { m, j } => eta_ii_mj(m, j, v),
    };
    Ok(PerVariant { paper_variant: f(Variant::PaperDisplay)?, markov_variant: f(Variant::MarkovRecurrence)? })
}

fn ledgers(case: Case) -> Result<LedgerResiduals, LedgerError> {
    let cf = |v| bezout_ledger(case, v, MultiplicitySource::ClosedForm).map(|l| l.residual);
    let exact_local = match bezout_ledger(case, Variant::MarkovRecurrence, MultiplicitySource::ExactLocal) {
        Ok(l) => Some(l.residual),
        Err(LedgerError::Unsupported { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(LedgerResiduals {
        closed_form_paper: cf(Variant::PaperDisplay)?,
        closed_form_markov: cf(Variant::MarkovRecurrence)?,
        exact_local,
    })
}

/// Every exact field of the record, with no oracle count.
pub fn exact_record(case: Case) -> Result<AdjudicationRecord, AdjudicationError> {
    case.validate()?;
    let paper = match case {
        Case::II { m, j } => tables::eta_ii_mj(m, j).map(|p| p.value),
        Case::IV { .. } => None,
    };
    let mut record = AdjudicationRecord {
        case,
        paper,
        closed_form: closed_forms(case)?,
        ledger: ledgers(case)?,
        oracle: None,
        verdict: Verdict::Unresolved,
    };
    record.decide();
    Ok(record)
}

/// Fills in every field, running the oracle on the case's curve pair.
pub fn adjudicate(case: Case, opts: &AdjudicateOptions) -> Result<AdjudicationRecord, AdjudicationError> {
    let product = case.bezout_product();
    if product > BigInt::from(opts.product_budget) {
        return Err(AdjudicationError::OverBudget { case, product, budget: opts.product_budget });
    }
    let mut record = exact_record(case)?;
    let (f, g) = case.curves(&Budget::default())?;
    match affine_intersections(&f, &g, &opts.oracle) {
        Ok(r) => {
            record.oracle = Some(r.count.into());
            record.decide();
            Ok(record)
        }
        Err(source) => Err(AdjudicationError::Oracle { partial: Box::new(record), source }),
    }
}

/// The tabulated type II cells and the type IV cases, limited to those whose
/// Bezout product fits the budget.
pub fn table_cases(product_budget: u64) -> Vec<Case> {
    let budget = BigInt::from(product_budget);
    let mut out: Vec<Case> = tables::eta_ii_cells().map(|(m, j)| Case::II { m, j }).collect();
    for n in 3..=8u64 {
        for m in n..=16u64 {
            out.push(Case::IV { n, m });
        }
    }
    out.retain(|c| c.bezout_product() <= budget);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_from_exact_fields() {
        let mut r = exact_record(Case::II { m: 6, j: 3 }).unwrap();
        assert_eq!(r.paper, Some(11.into()));
        assert_eq!(r.closed_form, PerVariant { paper_variant: 11.into(), markov_variant: 10.into() });
        assert_eq!(r.ledger.exact_local, Some(10.into()));
        assert_eq!(r.verdict, Verdict::Unresolved);
        r.oracle = Some(10.into());
        r.decide();
        assert_eq!(r.verdict, Verdict::VariantResolved);
        assert_eq!(r.resolved_variant(), Some(Variant::MarkovRecurrence));
        assert_eq!(r.paper_matches_oracle(), Some(false));
        r.oracle = Some(12.into());
        r.decide();
        assert_eq!(r.verdict, Verdict::Unresolved);
        assert_eq!(r.resolved_variant(), None);
    }

    #[test]
    fn json_field_set_is_fixed() {
        let r = adjudicate(Case::II { m: 5, j: 2 }, &AdjudicateOptions::default()).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(
            text,
            r#"{"case":"II(5,2)","paper":5,"closed_form":{"paper_variant":5,"markov_variant":5},"ledger":{"closed_form_paper":5,"closed_form_markov":5,"exact_local":5},"oracle":5,"verdict":"AllAgree"}"#
        );
        let back: AdjudicationRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn iv_three_three_agrees() {
        let r = adjudicate(Case::IV { n: 3, m: 3 }, &AdjudicateOptions::default()).unwrap();
        assert_eq!(r.oracle, Some(9.into()));
        assert_eq!(r.paper, None);
        assert_eq!(r.verdict, Verdict::AllAgree);
    }

    #[test]
    fn budget_is_enforced() {
        let opts = AdjudicateOptions { product_budget: 50, ..Default::default() };
        assert!(matches!(
            adjudicate(Case::IV { n: 3, m: 6 }, &opts),
            Err(AdjudicationError::OverBudget { .. })
        ));
        assert!(table_cases(200).contains(&Case::IV { n: 5, m: 5 }));
        assert!(!table_cases(200).contains(&Case::IV { n: 5, m: 6 }));
    }
}
