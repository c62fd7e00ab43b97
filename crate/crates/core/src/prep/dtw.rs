use crate::error::{Error, Result};

/// Euclidean distance between two equally long vectors.
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Dynamic time warping distance with the symmetric step pattern
/// {(1,0), (0,1), (1,1)} and no window constraint: the minimum, over all
/// monotone warping paths from (0,0) to (n−1,m−1), of the summed local cost.
pub fn dtw_distance<T, F>(a: &[T], b: &[T], cost: F) -> Result<f64>
where
    F: Fn(&T, &T) -> f64,
{
    if a.is_empty() || b.is_empty() {
        return Err(Error::invalid("dtw needs two non-empty sequences"));
    }
    let costs = dtw_prefix_costs(a, b, cost);
    Ok(costs[b.len() - 1])
}

/// Aligns all of `reference` against every prefix of `candidate` in one pass:
/// entry `k` of the result is `dtw_distance(reference, &candidate[..=k])`.
pub fn dtw_prefix_costs<T, F>(reference: &[T], candidate: &[T], cost: F) -> Vec<f64>
where
    F: Fn(&T, &T) -> f64,
{
    let m = candidate.len();
    let mut prev = vec![f64::INFINITY; m];
    let mut row = vec![f64::INFINITY; m];
    for (i, r) in reference.iter().enumerate() {
        for (j, c) in candidate.iter().enumerate() {
            let best = match (i, j) {
                (0, 0) => 0.0,
                (0, _) => row[j - 1],
                (_, 0) => prev[0],
                _ => prev[j].min(row[j - 1]).min(prev[j - 1]),
            };
            row[j] = best + cost(r, c);
        }
        std::mem::swap(&mut prev, &mut row);
    }
    prev
}
