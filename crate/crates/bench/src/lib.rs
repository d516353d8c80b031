//! Shared inputs for the criterion benches.

use tbframe::space::{builtin_space, SpaceDefinition, SpacePoint};

/// One fixed point per benchmarked space.
pub fn fixtures() -> Vec<(SpaceDefinition, SpacePoint<f64>)> {
    ["generic2", "cartan2", "berwald2", "cb2"]
        .into_iter()
        .map(|name| {
            let s = builtin_space(name).expect("catalog space");
            let p = s.sample(1, 7).remove(0);
            (s, p)
        })
        .collect()
}
