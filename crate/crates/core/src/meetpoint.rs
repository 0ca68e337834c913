//! Choosing the meeting vertex from a partial distance matrix.
//!
//! Two per-vertex costs are computed from the users' distance rows: the total
//! distance everybody travels, and a disparity penalty summing the absolute
//! difference between every pair of users' distances. Each is divided by its
//! sum over the candidate vertices, the two are blended with weights
//! `alpha + beta = 1`, and the lowest-scoring vertex wins.
//!
//! Dividing by the sum is the same ranking as the `(1 - x / sum) / 2`
//! normalisation read as "higher is better" (see [`normalize`]), because that
//! map is affine and strictly decreasing in `x / sum`.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::{Extended, Scalar};
use crate::sssp::{build_partial_matrix_with, AdjacentMatrix, DistanceRow};

/// Highest priority score a user can give an objective.
pub const MAX_PRIORITY: u8 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreKind {
    Total,
    Similarity,
    Combined,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector<T = f64> {
    pub kind: ScoreKind,
    pub values: Vec<Extended<T>>,
}

impl<T: Scalar> ScoreVector<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Finite entries, or `None` if any entry is unreachable.
    pub fn all_finite(&self) -> Option<Vec<T>> {
        self.values.iter().map(|v| v.finite()).collect()
    }
}

/// Per-user priority scores (0..=5) for each objective channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceProfile {
    objectives: Vec<String>,
    scores: Vec<Vec<u8>>,
}

impl PreferenceProfile {
    /// `scores[user][objective]`.
    pub fn new(objectives: Vec<String>, scores: Vec<Vec<u8>>) -> Result<Self> {
        for (user, row) in scores.iter().enumerate() {
            if row.len() != objectives.len() {
                return Err(Error::ScoreCountMismatch {
                    user,
                    got: row.len(),
                    expected: objectives.len(),
                });
            }
            if let Some(&score) = row.iter().find(|&&s| s > MAX_PRIORITY) {
                return Err(Error::ScoreOutOfRange { user, score });
            }
        }
        if scores.iter().flatten().all(|&s| s == 0) {
            return Err(Error::AllZeroScores);
        }
        Ok(Self { objectives, scores })
    }

    /// Every user gives every objective the same score.
    pub fn uniform(users: usize, objectives: &[&str]) -> Self {
        Self {
            objectives: objectives.iter().map(|s| s.to_string()).collect(),
            scores: vec![vec![1; objectives.len()]; users],
        }
    }

    pub fn objectives(&self) -> &[String] {
        &self.objectives
    }

    pub fn scores(&self) -> &[Vec<u8>] {
        &self.scores
    }

    pub fn user_count(&self) -> usize {
        self.scores.len()
    }

    /// The same profile with users reordered; `order[i]` is the old index of
    /// new user `i`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        Self {
            objectives: self.objectives.clone(),
            scores: order.iter().map(|&i| self.scores[i].clone()).collect(),
        }
    }
}

/// Convex weights of the two cost terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveWeights<T = f64> {
    pub alpha: T,
    pub beta: T,
}

impl<T: Scalar> ObjectiveWeights<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        let unit = |x: T| x.is_finite_value() && x >= T::zero() && x <= T::one();
        if !unit(alpha) || !unit(beta) || (alpha + beta - T::one()).abs() > T::weight_tolerance() {
            return Err(Error::InvalidObjectiveWeights);
        }
        Ok(Self { alpha, beta })
    }

    /// `beta = 1 - alpha`.
    pub fn from_alpha(alpha: T) -> Result<Self> {
        Self::new(alpha, T::one() - alpha)
    }
}

impl<T: Scalar> Default for ObjectiveWeights<T> {
    fn default() -> Self {
        Self {
            alpha: T::half(),
            beta: T::half(),
        }
    }
}

/// Per-user masks of vertices each user can reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilitySet {
    masks: Vec<Vec<bool>>,
}

impl ReachabilitySet {
    pub fn from_matrix<T: Scalar>(matrix: &AdjacentMatrix<T>) -> Self {
        Self {
            masks: matrix.rows.iter().map(DistanceRow::reachable).collect(),
        }
    }

    pub fn user_mask(&self, user: usize) -> &[bool] {
        &self.masks[user]
    }

    /// Reachable by every user.
    pub fn is_mutual(&self, v: usize) -> bool {
        self.masks.iter().all(|m| m[v])
    }

    pub fn mutual(&self) -> Vec<usize> {
        let n = self.masks.first().map_or(0, Vec::len);
        (0..n).filter(|&v| self.is_mutual(v)).collect()
    }
}

fn check_rows<T: Scalar>(matrix: &AdjacentMatrix<T>) -> Result<()> {
    if matrix.rows.is_empty() {
        Err(Error::EmptyMatrix)
    } else {
        Ok(())
    }
}

/// Column sums: the total distance all users travel to each vertex.
pub fn total_distance<T: Scalar>(matrix: &AdjacentMatrix<T>) -> Result<ScoreVector<T>> {
    check_rows(matrix)?;
    let values = (0..matrix.vertex_count)
        .map(|v| {
            matrix
                .rows
                .iter()
                .fold(Extended::Finite(T::zero()), |acc, row| {
                    acc + row.distances[v]
                })
        })
        .collect();
    Ok(ScoreVector {
        kind: ScoreKind::Total,
        values,
    })
}

/// Sum of `|d_a(v) - d_b(v)|` over unordered user pairs, per vertex.
///
/// Counting ordered pairs would exactly double every entry.
pub fn similarity_penalty<T: Scalar>(matrix: &AdjacentMatrix<T>) -> Result<ScoreVector<T>> {
    check_rows(matrix)?;
    let users = matrix.rows.len();
    let mut column = Vec::with_capacity(users);
    let values = (0..matrix.vertex_count)
        .map(|v| {
            column.clear();
            for row in &matrix.rows {
                match row.distances[v] {
                    Extended::Finite(d) => column.push(d),
                    Extended::Unreachable => return Extended::Unreachable,
                }
            }
            let mut sum = T::zero();
            for a in 0..users {
                for b in a + 1..users {
                    sum = sum + (column[a] - column[b]).abs();
                }
            }
            Extended::Finite(sum)
        })
        .collect();
    Ok(ScoreVector {
        kind: ScoreKind::Similarity,
        values,
    })
}

/// `(1 - x_i / sum) / 2` for every entry.
///
/// Results lie in `[0, 1/2]` and shrink as the raw cost grows.
pub fn normalize<T: Scalar>(values: &[T]) -> Result<Vec<T>> {
    if let Some(i) = values
        .iter()
        .position(|x| !x.is_finite_value() || x.is_negative())
    {
        return Err(Error::NonFiniteEntry(i));
    }
    let sum: T = values.iter().copied().sum();
    if sum.is_zero() {
        return Err(Error::ZeroSum);
    }
    Ok(values
        .iter()
        .map(|&x| (T::one() - x / sum) * T::half())
        .collect())
}

/// Share of all priority points given to each objective, in objective order.
pub fn priority_weights<T: Scalar>(profile: &PreferenceProfile) -> Result<Vec<T>> {
    let per_objective: Vec<u64> = (0..profile.objectives.len())
        .map(|k| profile.scores.iter().map(|row| u64::from(row[k])).sum())
        .collect();
    let total: u64 = per_objective.iter().sum();
    if total == 0 {
        return Err(Error::AllZeroScores);
    }
    let total = T::from_u64(total).expect("score total fits the scalar");
    Ok(per_objective
        .into_iter()
        .map(|s| T::from_u64(s).expect("score fits the scalar") / total)
        .collect())
}

/// Entry-wise weighted sum of per-objective matrices.
pub fn blend_objectives<T: Scalar>(
    matrices: &[AdjacentMatrix<T>],
    weights: &[T],
) -> Result<AdjacentMatrix<T>> {
    let first = matrices.first().ok_or(Error::EmptyMatrix)?;
    if weights.len() != matrices.len() {
        return Err(Error::ShapeMismatch);
    }
    let sum: T = weights.iter().copied().sum();
    if (sum - T::one()).abs() > T::weight_tolerance() {
        return Err(Error::ShapeMismatch);
    }
    for m in matrices {
        let same_users = m.rows.len() == first.rows.len()
            && m.rows
                .iter()
                .zip(&first.rows)
                .all(|(a, b)| a.source == b.source);
        if m.vertex_count != first.vertex_count || !same_users {
            return Err(Error::ShapeMismatch);
        }
    }
    if matrices.len() == 1 {
        return Ok(first.clone());
    }

    let rows = (0..first.rows.len())
        .map(|u| {
            let distances = (0..first.vertex_count)
                .map(|v| {
                    let mut acc = Extended::Finite(T::zero());
                    for (m, &w) in matrices.iter().zip(weights) {
                        acc = acc
                            + (match m.rows[u].distances[v] {
                                Extended::Finite(d) => Extended::Finite(w * d),
                                Extended::Unreachable => Extended::Unreachable,
                            });
                    }
                    acc
                })
                .collect();
            DistanceRow {
                source: first.rows[u].source,
                distances,
            }
        })
        .collect();
    let channel = matrices
        .iter()
        .map(|m| m.channel.as_str())
        .collect::<Vec<_>>()
        .join("+");
    Ok(AdjacentMatrix {
        channel,
        vertex_count: first.vertex_count,
        rows,
    })
}

/// `alpha * total / sum(total) + beta * sim / sum(sim)` per vertex.
///
/// Sums run over vertices where both inputs are finite; other vertices stay
/// unreachable. A zero sum switches its term off.
pub fn combine<T: Scalar>(
    total: &ScoreVector<T>,
    similarity: &ScoreVector<T>,
    weights: ObjectiveWeights<T>,
) -> Result<ScoreVector<T>> {
    if total.len() != similarity.len() {
        return Err(Error::LengthMismatch(total.len(), similarity.len()));
    }
    let pairs: Vec<Option<(T, T)>> = total
        .values
        .iter()
        .zip(&similarity.values)
        .map(|(t, s)| Some((t.finite()?, s.finite()?)))
        .collect();

    let mut total_sum = T::zero();
    let mut sim_sum = T::zero();
    let mut any = false;
    for (t, s) in pairs.iter().flatten() {
        total_sum = total_sum + *t;
        sim_sum = sim_sum + *s;
        any = true;
    }
    if !any {
        return Err(Error::NoMutuallyReachableVertex);
    }

    let share = |x: T, sum: T| if sum.is_zero() { T::zero() } else { x / sum };
    let values = pairs
        .into_iter()
        .map(|p| match p {
            Some((t, s)) => Extended::Finite(
                weights.alpha * share(t, total_sum) + weights.beta * share(s, sim_sum),
            ),
            None => Extended::Unreachable,
        })
        .collect();
    Ok(ScoreVector {
        kind: ScoreKind::Combined,
        values,
    })
}

/// Lowest-id vertex with the minimum combined score among vertices every
/// user can reach.
pub fn select_destination<T: Scalar>(
    combined: &ScoreVector<T>,
    reachability: &ReachabilitySet,
) -> Result<usize> {
    let mut best: Option<(usize, T)> = None;
    for (v, value) in combined.values.iter().enumerate() {
        let Extended::Finite(x) = *value else {
            continue;
        };
        if !reachability.is_mutual(v) {
            continue;
        }
        if best.is_none_or(|(_, b)| x < b) {
            best = Some((v, x));
        }
    }
    best.map(|(v, _)| v).ok_or(Error::NoCandidate)
}

/// Everything computed while choosing a destination.
#[derive(Debug, Clone, PartialEq)]
pub struct Plan<T = f64> {
    /// One matrix per objective channel, in profile order.
    pub objective_matrices: Vec<AdjacentMatrix<T>>,
    pub objective_weights: Vec<T>,
    pub matrix: AdjacentMatrix<T>,
    pub total: ScoreVector<T>,
    pub similarity: ScoreVector<T>,
    pub combined: ScoreVector<T>,
    pub reachability: ReachabilitySet,
    pub destination: usize,
}

/// Full pipeline: per-objective matrices, preference blend, scoring and
/// argmin.
pub fn plan<T: Scalar>(
    graph: &Graph<T>,
    users: &[usize],
    profile: &PreferenceProfile,
    weights: ObjectiveWeights<T>,
    parallelism: usize,
) -> Result<Plan<T>> {
    if profile.user_count() != users.len() {
        return Err(Error::ShapeMismatch);
    }
    let objective_weights = priority_weights::<T>(profile)?;
    let objective_matrices = profile
        .objectives
        .iter()
        .map(|name| {
            let channel = graph.channel(name)?;
            build_partial_matrix_with(graph, users, channel, parallelism).map(|(m, _)| m)
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = blend_objectives(&objective_matrices, &objective_weights)?;
    let reachability = ReachabilitySet::from_matrix(&matrix);
    if reachability.mutual().is_empty() {
        return Err(Error::NoCandidate);
    }
    let total = total_distance(&matrix)?;
    let similarity = similarity_penalty(&matrix)?;
    let combined = combine(&total, &similarity, weights)?;
    let destination = select_destination(&combined, &reachability)?;
    Ok(Plan {
        objective_matrices,
        objective_weights,
        matrix,
        total,
        similarity,
        combined,
        reachability,
        destination,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Extended::{Finite, Unreachable};
    use crate::scalar::Rational;

    fn matrix<T: Scalar>(rows: &[&[T]]) -> AdjacentMatrix<T> {
        AdjacentMatrix {
            channel: "distance".into(),
            vertex_count: rows[0].len(),
            rows: rows
                .iter()
                .enumerate()
                .map(|(i, r)| DistanceRow {
                    source: i,
                    distances: r.iter().map(|&d| Finite(d)).collect(),
                })
                .collect(),
        }
    }

    fn finite<T: Scalar>(v: &ScoreVector<T>) -> Vec<T> {
        v.all_finite().unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn two_person_total_and_similarity() {
        let m = matrix::<f64>(&[&[0.0, 2.0, 4.0, 1.0], &[2.0, 0.0, 6.0, 3.0]]);
        assert_eq!(
            finite(&total_distance(&m).unwrap()),
            vec![2.0, 2.0, 10.0, 4.0]
        );
        assert_eq!(
            finite(&similarity_penalty(&m).unwrap()),
            vec![2.0, 2.0, 2.0, 2.0]
        );
    }

    #[test]
    fn single_user_scores() {
        let m = matrix::<f64>(&[&[0.0, 3.0, 5.0]]);
        assert_eq!(finite(&total_distance(&m).unwrap()), vec![0.0, 3.0, 5.0]);
        assert_eq!(finite(&similarity_penalty(&m).unwrap()), vec![0.0; 3]);
    }

    #[test]
    fn similarity_counts_unordered_pairs() {
        let m = matrix::<f64>(&[&[0.0, 3.0], &[1.0, 2.0], &[2.0, 1.0]]);
        assert_eq!(finite(&similarity_penalty(&m).unwrap()), vec![4.0, 4.0]);
        let same = matrix::<f64>(&[&[1.0, 7.0], &[1.0, 7.0]]);
        assert_eq!(finite(&similarity_penalty(&same).unwrap()), vec![0.0, 0.0]);
    }

    #[test]
    fn unreachable_columns_stay_unreachable() {
        let mut m = matrix::<f64>(&[&[0.0, 1.0], &[1.0, 0.0]]);
        m.rows[1].distances[0] = Unreachable;
        assert_eq!(
            total_distance(&m).unwrap().values,
            vec![Unreachable, Finite(1.0)]
        );
        assert_eq!(
            similarity_penalty(&m).unwrap().values,
            vec![Unreachable, Finite(1.0)]
        );
    }

    #[test]
    fn empty_matrix_is_rejected() {
        let m = AdjacentMatrix::<f64> {
            channel: "distance".into(),
            vertex_count: 3,
            rows: vec![],
        };
        assert_eq!(total_distance(&m), Err(Error::EmptyMatrix));
        assert_eq!(similarity_penalty(&m), Err(Error::EmptyMatrix));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&[1.0, 1.0]).unwrap(), vec![0.25, 0.25]);
        assert_eq!(normalize(&[0.0, 4.0]).unwrap(), vec![0.5, 0.0]);
        let n = normalize(&[r(2, 1), r(2, 1), r(10, 1), r(4, 1)]).unwrap();
        assert_eq!(n, vec![r(4, 9), r(4, 9), r(2, 9), r(7, 18)]);
        let f: Vec<f64> = normalize(&[2.0, 2.0, 10.0, 4.0]).unwrap();
        for (a, b) in f.iter().zip([0.4444, 0.4444, 0.2222, 0.3889]) {
            assert!((a - b).abs() < 1e-4f64);
        }
        assert_eq!(normalize(&[0.0, 0.0]), Err(Error::ZeroSum));
        assert_eq!(normalize(&[1.0, f64::NAN]), Err(Error::NonFiniteEntry(1)));
    }

    #[test]
    fn preference_weights() {
        let p = PreferenceProfile::new(
            vec!["distance".into(), "time".into()],
            vec![vec![4, 3], vec![5, 4]],
        )
        .unwrap();
        assert_eq!(
            priority_weights::<Rational>(&p).unwrap(),
            vec![r(9, 16), r(7, 16)]
        );
        assert_eq!(priority_weights::<f64>(&p).unwrap(), vec![0.5625, 0.4375]);

        let single =
            PreferenceProfile::new(vec!["distance".into()], vec![vec![3], vec![1]]).unwrap();
        assert_eq!(priority_weights::<f64>(&single).unwrap(), vec![1.0]);

        let even = PreferenceProfile::new(vec!["distance".into(), "time".into()], vec![vec![2, 2]])
            .unwrap();
        assert_eq!(priority_weights::<f64>(&even).unwrap(), vec![0.5, 0.5]);
    }

    #[test]
    fn profile_validation() {
        let objectives = vec!["distance".to_string()];
        assert_eq!(
            PreferenceProfile::new(objectives.clone(), vec![vec![6]]),
            Err(Error::ScoreOutOfRange { user: 0, score: 6 })
        );
        assert_eq!(
            PreferenceProfile::new(objectives.clone(), vec![vec![0], vec![0]]),
            Err(Error::AllZeroScores)
        );
        assert!(matches!(
            PreferenceProfile::new(objectives, vec![vec![1, 2]]),
            Err(Error::ScoreCountMismatch { .. })
        ));
    }

    #[test]
    fn objective_weight_validation() {
        assert!(ObjectiveWeights::new(0.9, 0.1).is_ok());
        assert!(ObjectiveWeights::new(0.9, 0.2).is_err());
        assert!(ObjectiveWeights::new(1.5, -0.5).is_err());
        assert_eq!(
            ObjectiveWeights::<f64>::default(),
            ObjectiveWeights {
                alpha: 0.5,
                beta: 0.5
            }
        );
        assert_eq!(
            ObjectiveWeights::from_alpha(r(9, 10)).unwrap().beta,
            r(1, 10)
        );
    }

    #[test]
    fn blending() {
        let a = matrix::<f64>(&[&[0.0, 2.0]]);
        let b = matrix::<f64>(&[&[0.0, 4.0]]);
        assert_eq!(
            blend_objectives(std::slice::from_ref(&a), &[1.0]).unwrap(),
            a
        );
        let mid = blend_objectives(&[a.clone(), b], &[0.5, 0.5]).unwrap();
        assert_eq!(finite_row(&mid), vec![0.0, 3.0]);

        let d = matrix::<Rational>(&[&[r(0, 1), r(2, 1), r(7, 1)], &[r(3, 1), r(1, 1), r(5, 1)]]);
        let same = blend_objectives(&[d.clone(), d.clone()], &[r(56, 100), r(44, 100)]).unwrap();
        assert_eq!(same.rows, d.rows);

        let short = matrix::<f64>(&[&[0.0]]);
        assert_eq!(
            blend_objectives(&[a, short], &[0.5, 0.5]),
            Err(Error::ShapeMismatch)
        );
    }

    fn finite_row(m: &AdjacentMatrix<f64>) -> Vec<f64> {
        m.rows[0]
            .distances
            .iter()
            .map(|d| d.finite().unwrap())
            .collect()
    }

    fn vector<T: Scalar>(kind: ScoreKind, v: &[T]) -> ScoreVector<T> {
        ScoreVector {
            kind,
            values: v.iter().map(|&x| Finite(x)).collect(),
        }
    }

    #[test]
    fn combine_worked_example() {
        let t = vector(ScoreKind::Total, &[r(2, 1), r(2, 1), r(10, 1), r(4, 1)]);
        let s = vector(ScoreKind::Similarity, &[r(2, 1), r(2, 1), r(2, 1), r(2, 1)]);
        let w = ObjectiveWeights::new(r(9, 10), r(1, 10)).unwrap();
        let c = combine(&t, &s, w).unwrap();
        assert_eq!(finite(&c), vec![r(1, 8), r(1, 8), r(21, 40), r(9, 40)]);

        let only_total = combine(&t, &s, ObjectiveWeights::new(r(1, 1), r(0, 1)).unwrap()).unwrap();
        assert_eq!(
            finite(&only_total),
            vec![r(1, 9), r(1, 9), r(5, 9), r(2, 9)]
        );

        let tf = vector(ScoreKind::Total, &[2.0, 2.0, 10.0, 4.0]);
        let sf = vector(ScoreKind::Similarity, &[2.0; 4]);
        let cf: Vec<f64> =
            finite(&combine(&tf, &sf, ObjectiveWeights::new(0.9, 0.1).unwrap()).unwrap());
        for (a, b) in cf.iter().zip([0.125, 0.125, 0.525, 0.225]) {
            assert!((a - b).abs() < 1e-12f64);
        }
    }

    #[test]
    fn combine_with_colocated_users_is_zero_there() {
        let m = matrix::<f64>(&[&[1.0, 0.0, 1.0], &[1.0, 0.0, 1.0]]);
        let c = combine(
            &total_distance(&m).unwrap(),
            &similarity_penalty(&m).unwrap(),
            ObjectiveWeights::default(),
        )
        .unwrap();
        assert_eq!(c.values[1], Finite(0.0));
        let reach = ReachabilitySet::from_matrix(&m);
        assert_eq!(select_destination(&c, &reach).unwrap(), 1);
    }

    #[test]
    fn combine_errors() {
        let t = vector(ScoreKind::Total, &[1.0, 2.0]);
        let s = vector(ScoreKind::Similarity, &[1.0]);
        assert_eq!(
            combine(&t, &s, ObjectiveWeights::default()),
            Err(Error::LengthMismatch(2, 1))
        );
        let u = ScoreVector {
            kind: ScoreKind::Total,
            values: vec![Unreachable::<f64>],
        };
        assert_eq!(
            combine(&u, &u, ObjectiveWeights::default()),
            Err(Error::NoMutuallyReachableVertex)
        );
    }

    #[test]
    fn selection_breaks_ties_by_lowest_id() {
        let m = matrix::<f64>(&[&[0.0; 4], &[0.0; 4]]);
        let reach = ReachabilitySet::from_matrix(&m);
        let c = vector(ScoreKind::Combined, &[0.125, 0.125, 0.525, 0.225]);
        assert_eq!(select_destination(&c, &reach).unwrap(), 0);

        let mut one = vector(ScoreKind::Combined, &[0.3, 0.1, 0.2, 0.4]);
        one.values = vec![Unreachable, Unreachable, Finite(0.9), Unreachable];
        assert_eq!(select_destination(&one, &reach).unwrap(), 2);

        let none = ScoreVector::<f64> {
            kind: ScoreKind::Combined,
            values: vec![Unreachable; 4],
        };
        assert_eq!(select_destination(&none, &reach), Err(Error::NoCandidate));
    }

    #[test]
    fn reachability_masks() {
        let mut m = matrix::<f64>(&[&[0.0, 1.0, 2.0], &[2.0, 1.0, 0.0]]);
        m.rows[0].distances[2] = Unreachable;
        let reach = ReachabilitySet::from_matrix(&m);
        assert_eq!(reach.user_mask(0), &[true, true, false]);
        assert_eq!(reach.mutual(), vec![0, 1]);
    }
}
