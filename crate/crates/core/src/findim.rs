//! Finite-dimensional simple modules `L(lambda)` through their standard
//! Gelfand-Tsetlin tableaux.

use crate::error::{Error, Result};
use crate::module::RelationModule;
use crate::presets::finite_dimensional_graph;
use crate::tableau::{Entry, Tableau};

/// The standard basis of `L(lambda)`.
#[derive(Clone, Debug)]
pub struct FiniteDimensional {
    pub lambda: Vec<i64>,
    /// Top row `l_{nj} = lambda_j - j + 1`.
    pub top: Vec<i64>,
    pub basis: Vec<Tableau>,
}

impl FiniteDimensional {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Top row of the standard tableaux of `L(lambda)`; `lambda` must be
/// non-increasing with at least two parts.
pub fn top_row(lambda: &[i64]) -> Result<Vec<i64>> {
    if lambda.len() < 2 {
        return Err(Error::InvalidRank(lambda.len()));
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NonDominant(lambda.to_vec()));
    }
    Ok(lambda.iter().enumerate().map(|(j, l)| l - j as i64).collect())
}

fn to_tableau(rows: &[Vec<i64>]) -> Tableau {
    Tableau::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| Entry::int(x)).collect())
            .collect(),
    )
    .expect("interlacing rows have triangular shape")
}

/// Every standard tableau with top row [`top_row`]: integers with
/// `l_{ki} >= l_{k-1,i} > l_{k,i+1}`.
pub fn build_finite_dimensional(lambda: &[i64]) -> Result<FiniteDimensional> {
    let top = top_row(lambda)?;
    let mut basis = Vec::new();
    let mut rows = vec![top.clone()];
    fill(&mut rows, &mut basis);
    Ok(FiniteDimensional {
        lambda: lambda.to_vec(),
        top,
        basis,
    })
}

fn fill(rows: &mut Vec<Vec<i64>>, out: &mut Vec<Tableau>) {
    let above = rows.last().expect("the top row is present").clone();
    if above.len() == 1 {
        out.push(to_tableau(rows));
        return;
    }
    let mut row = vec![0; above.len() - 1];
    choose(&above, 0, &mut row, rows, out);
}

fn choose(above: &[i64], i: usize, row: &mut Vec<i64>, rows: &mut Vec<Vec<i64>>, out: &mut Vec<Tableau>) {
    if i == row.len() {
        rows.push(row.clone());
        fill(rows, out);
        rows.pop();
        return;
    }
    for x in above[i + 1] + 1..=above[i] {
        row[i] = x;
        choose(above, i + 1, row, rows, out);
    }
}

/// The standard tableau of highest weight: row `k` is the first `k` entries
/// of the top row.
pub fn highest_weight_tableau(lambda: &[i64]) -> Result<Tableau> {
    let top = top_row(lambda)?;
    let rows: Vec<Vec<i64>> = (1..=top.len()).rev().map(|k| top[..k].to_vec()).collect();
    Ok(to_tableau(&rows))
}

/// `L(lambda)` as the relation module of the finite-dimensional graph.
pub fn finite_dimensional_module(lambda: &[i64]) -> Result<RelationModule> {
    RelationModule::new(finite_dimensional_graph(lambda.len()), highest_weight_tableau(lambda)?)
}
