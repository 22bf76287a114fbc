use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::CSelector;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::spectrum::{uniformity_with, PowerMap};
use crate::theory::cyclotomic_leader;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SearchHit {
    pub uniformity: u32,
    pub d: u64,
    pub c: u32,
}

/// Every `(d, c)` with `1 <= d <= q - 2` whose power map has uniformity at
/// most `u_max`, sorted by `(uniformity, d, c)`. With `dedupe`, only the
/// smallest member of each cyclotomic class is tried; the others follow
/// from `uniformity(x^(p d), c) = uniformity(x^d, c^(p^(n-1)))`.
/// Fails when `q` exceeds `budget`.
pub fn search(
    field: &Field,
    u_max: u32,
    c: &CSelector,
    dedupe: bool,
    budget: u64,
) -> Result<Vec<SearchHit>> {
    let (p, n, q) = (field.characteristic(), field.degree(), field.order());
    if q > budget {
        return Err(Error::BudgetExceeded { q, limit: budget });
    }
    let cs = c.resolve(field)?;
    let ds: Vec<u64> = (1..q.saturating_sub(1))
        .filter(|&d| !dedupe || cyclotomic_leader(d, p, n) == d)
        .collect();
    let per_d = ds
        .par_iter()
        .map(|&d| {
            let map = PowerMap::new(d)?;
            let mut hits = Vec::new();
            for &c in &cs {
                let u = uniformity_with(field, &map, c, 0)?.uniformity;
                if u <= u_max {
                    hits.push(SearchHit { uniformity: u, d, c: c.index() });
                }
            }
            Ok(hits)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut hits: Vec<SearchHit> = per_d.into_iter().flatten().collect();
    hits.sort_unstable();
    Ok(hits)
}
