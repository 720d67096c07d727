//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) batch work runs on the rayon
//! thread pool; without it, or with [`Strategy::Sequential`], everything runs
//! on the calling thread. Both paths return results in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

pub fn map<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Index of the first item (in input order) satisfying `pred`.
pub fn position_first<T, F>(strategy: Strategy, items: &[T], pred: F) -> Option<usize>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => items.par_iter().position_first(pred),
        _ => items.iter().position(pred),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let xs: Vec<u32> = (0..1000).collect();
        for s in [Strategy::Sequential, Strategy::Parallel] {
            assert_eq!(map(s, &xs, |x| x * 2)[999], 1998);
            assert_eq!(position_first(s, &xs, |&x| x > 500 && x % 7 == 0), Some(504));
            assert_eq!(position_first(s, &xs, |&x| x > 5000), None);
        }
    }
}
