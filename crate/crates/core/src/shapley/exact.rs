use super::BimGame;
use crate::error::{Error, Result};
use crate::exec::Execution;

pub const DEFAULT_EXACT_LIMIT: usize = 10;

/// Utility of every coalition, indexed by membership bitmask.
fn coalition_utilities(game: &BimGame<'_>) -> Vec<f64> {
    let n = game.players();
    let cache = game.cache();
    Execution::default().map_init(
        1usize << n,
        || vec![false; n],
        |mask, bits| {
            for (i, m) in mask.iter_mut().enumerate() {
                *m = bits & (1 << i) != 0;
            }
            cache.sigma_mask_with(mask, Execution::Sequential)
        },
    )
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit || n >= usize::BITS as usize - 1 {
        Err(Error::TooManyPlayers { n, limit })
    } else {
        Ok(())
    }
}

/// Exact Shapley values from the coalition-weighted formula
/// `sum_{T not containing i} |T|! (n-|T|-1)! / n! * (nu(T+i) - nu(T))`.
pub fn exact_shapley(game: &BimGame<'_>, limit: usize) -> Result<Vec<f64>> {
    let n = game.players();
    check_limit(n, limit)?;
    let nu = coalition_utilities(game);
    let factorial: Vec<f64> = (0..=n).scan(1.0, |f, k| {
        if k > 0 {
            *f *= k as f64;
        }
        Some(*f)
    }).collect();
    let weight: Vec<f64> = (0..n).map(|k| factorial[k] * factorial[n - k - 1] / factorial[n]).collect();

    Ok((0..n)
        .map(|i| {
            let bit = 1usize << i;
            (0..nu.len())
                .filter(|t| t & bit == 0)
                .map(|t| weight[t.count_ones() as usize] * (nu[t | bit] - nu[t]))
                .sum()
        })
        .collect())
}

/// Largest spread, over players, between the biggest and smallest marginal
/// contribution that player can make to any coalition.
pub fn exact_marginal_range(game: &BimGame<'_>, limit: usize) -> Result<f64> {
    let n = game.players();
    check_limit(n, limit)?;
    let nu = coalition_utilities(game);
    Ok((0..n)
        .map(|i| {
            let bit = 1usize << i;
            let (lo, hi) = (0..nu.len())
                .filter(|t| t & bit == 0)
                .map(|t| nu[t | bit] - nu[t])
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), d| (lo.min(d), hi.max(d)));
            hi - lo
        })
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::mia::MiiaCache;

    fn game_of(g: &Graph, theta: f64) -> (MiiaCache, &Graph) {
        (MiiaCache::build(g, theta).unwrap(), g)
    }

    #[test]
    fn edgeless_all_ones() {
        let g = Graph::from_arcs(5, false, &[]).unwrap();
        let (cache, g) = game_of(&g, 0.01);
        let game = BimGame::new(g, &cache).unwrap();
        assert_eq!(exact_shapley(&game, 10).unwrap(), vec![1.0; 5]);
        assert_eq!(exact_marginal_range(&game, 10).unwrap(), 0.0);
    }

    #[test]
    fn two_players() {
        let g = Graph::from_arcs(2, true, &[(0, 1, 1.0)]).unwrap();
        let (cache, g) = game_of(&g, 1.0);
        let game = BimGame::new(g, &cache).unwrap();
        assert_eq!(game.utility(&[0]), 2.0);
        assert_eq!(game.utility(&[1]), 1.0);
        assert_eq!(game.utility(&[0, 1]), 2.0);
        let phi = exact_shapley(&game, 10).unwrap();
        assert_eq!(phi, vec![1.5, 0.5]);
        // a contributes 2 or 1, b contributes 1 or 0
        assert_eq!(exact_marginal_range(&game, 10).unwrap(), 1.0);
    }

    #[test]
    fn limit_enforced() {
        let g = Graph::from_arcs(11, false, &[]).unwrap();
        let (cache, g) = game_of(&g, 0.01);
        let game = BimGame::new(g, &cache).unwrap();
        assert!(matches!(exact_shapley(&game, 10), Err(Error::TooManyPlayers { n: 11, limit: 10 })));
        assert!(exact_shapley(&game, 11).is_ok());
    }
}
