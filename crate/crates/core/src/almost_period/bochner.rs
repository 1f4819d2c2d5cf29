use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{check_inside, grid_axes, spherical_distance, ExtendedComplex, GridSpec, MeromorphicAP, Strip};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslateCluster {
    pub representative: usize,
    pub members: Vec<usize>,
    /// Largest pairwise sup-spherical distance among the members.
    pub diameter: f64,
}

/// Pairwise matrix `D[i][j] = sup_z ρ(f(z + tᵢ), f(z + tⱼ))` on the sampled substrip.
pub fn translate_distance_matrix(
    f: &MeromorphicAP,
    translates: &[f64],
    strip: &Strip,
    grid: &GridSpec,
) -> Result<Vec<Vec<f64>>> {
    check_inside(strip, grid, &f.domain())?;
    let (xs, ys) = grid_axes(strip, grid)?;
    let points: Vec<Complex64> = ys.iter().flat_map(|&y| xs.iter().map(move |&x| Complex64::new(x, y))).collect();
    let values: Vec<Vec<Option<ExtendedComplex>>> = translates
        .par_iter()
        .map(|&t| {
            let g = f.shift(t);
            points.iter().map(|&z| g.eval_unchecked(z).ok()).collect()
        })
        .collect();
    let n = translates.len();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    values[i]
                        .iter()
                        .zip(&values[j])
                        .filter_map(|(a, b)| Some(spherical_distance((*a)?, (*b)?)))
                        .fold(0.0, f64::max)
                })
                .collect()
        })
        .collect();
    Ok(rows)
}

/// Greedy first-fit clustering of the translates `f(· + tᵢ)`: each index joins
/// the first cluster all of whose members lie within `2ε`, else opens a new one.
pub fn bochner_probe(
    f: &MeromorphicAP,
    translates: &[f64],
    strip: &Strip,
    epsilon: f64,
    grid: &GridSpec,
) -> Result<Vec<TranslateCluster>> {
    if translates.is_empty() {
        return Err(Error::InvalidArgument("translates must be nonempty".into()));
    }
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let d = translate_distance_matrix(f, translates, strip, grid)?;
    Ok(greedy_clusters(&d, 2.0 * epsilon))
}

pub(crate) fn greedy_clusters(d: &[Vec<f64>], radius: f64) -> Vec<TranslateCluster> {
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for (i, row) in d.iter().enumerate() {
        match clusters.iter_mut().find(|c| c.iter().all(|&m| row[m] < radius)) {
            Some(c) => c.push(i),
            None => clusters.push(vec![i]),
        }
    }
    clusters
        .into_iter()
        .map(|members| {
            let mut diameter = 0.0f64;
            for (a, &i) in members.iter().enumerate() {
                for &j in &members[a + 1..] {
                    diameter = diameter.max(d[i][j]);
                }
            }
            TranslateCluster { representative: members[0], members, diameter }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_function;

    fn setup() -> (Strip, GridSpec) {
        (Strip::symmetric(1.0).unwrap(), GridSpec::new(0.05, 0.25, 0.0, (0.0, 4.0)).unwrap())
    }

    #[test]
    fn equal_translates_form_one_cluster() {
        let f = parse_function("1/sin(pi*z)", Strip::plane()).unwrap();
        let (s, g) = setup();
        let c = bochner_probe(&f, &[1.3; 5], &s, 0.01, &g).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].members, vec![0, 1, 2, 3, 4]);
        assert_eq!(c[0].diameter, 0.0);
    }

    #[test]
    fn period_multiples_form_one_cluster() {
        let f = parse_function("1/sin(pi*z)", Strip::plane()).unwrap();
        let (s, g) = setup();
        let translates: Vec<f64> = (0..=10).map(|k| 2.0 * k as f64).collect();
        let c = bochner_probe(&f, &translates, &s, 0.01, &g).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].members.len(), 11);
    }

    #[test]
    fn clusters_cover_indices_disjointly() {
        let f = parse_function("sin(pi*z)", Strip::plane()).unwrap();
        let (s, g) = setup();
        let translates = [0.0, 0.5, 1.0, 2.0, 2.5, 0.25];
        let c = bochner_probe(&f, &translates, &s, 0.05, &g).unwrap();
        let mut all: Vec<usize> = c.iter().flat_map(|c| c.members.clone()).collect();
        all.sort();
        assert_eq!(all, (0..translates.len()).collect::<Vec<_>>());
        for cl in &c {
            assert!(cl.diameter < 0.1);
        }
    }

    #[test]
    fn empty_translates_rejected() {
        let f = parse_function("sin(pi*z)", Strip::plane()).unwrap();
        let (s, g) = setup();
        assert!(bochner_probe(&f, &[], &s, 0.1, &g).is_err());
    }
}
