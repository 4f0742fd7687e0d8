//! Seeded random job files, handy as regression fixtures.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::cli::Task;

/// A sorted list `0 = x0 < … < xk = 1` of dyadic points.
fn real_partition(rng: &mut StdRng, max_inner: usize) -> Vec<f64> {
    let mut pts = vec![0.0, 1.0];
    for _ in 0..rng.gen_range(0..=max_inner) {
        pts.push(f64::from(rng.gen_range(1..64u32)) / 64.0);
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

fn polynomial(rng: &mut StdRng, var: char) -> String {
    let terms: Vec<String> = (0..=rng.gen_range(1..=3))
        .map(|k| {
            let c = rng.gen_range(-4..=4);
            match k {
                0 => format!("{c}"),
                1 => format!("{c}*{var}"),
                _ => format!("{c}*{var}^{k}"),
            }
        })
        .collect();
    terms.join(" + ")
}

fn unit_interval() -> Value {
    json!({ "lo": { "e1": 0.0, "e2": 0.0 }, "hi": { "e1": 1.0, "e2": 1.0 } })
}

pub(super) fn sample_job(task: Task, seed: u64) -> Value {
    let mut rng = StdRng::seed_from_u64(seed);
    let f = json!({ "f1": polynomial(&mut rng, 'x'), "f2": polynomial(&mut rng, 'y') });
    let payload = match task {
        Task::ValidateStrong | Task::Merge | Task::Render => {
            let p = real_partition(&mut rng, 10);
            let q = real_partition(&mut rng, 10);
            let merged = crate::intervals::merge_real_partitions(&p, &q, Default::default())
                .expect("sorted dyadic lists merge");
            match task {
                Task::Merge => json!({ "p": p, "q": q }),
                _ => json!({ "interval": unit_interval(), "points": merged.points() }),
            }
        }
        Task::ValidateWeak | Task::ValidateRegular => {
            let cuts = real_partition(&mut rng, 4);
            let cells: Vec<Value> = cuts
                .windows(2)
                .map(
                    |w| json!({ "lo": { "e1": w[0], "e2": 0.0 }, "hi": { "e1": w[1], "e2": 1.0 } }),
                )
                .collect();
            let key = if task == Task::ValidateWeak {
                "subintervals"
            } else {
                "cells"
            };
            json!({ "interval": unit_interval(), key: cells })
        }
        Task::Variation => json!({ "F": f, "interval": unit_interval() }),
        Task::VariationSet => json!({
            "F": f,
            "interval": unit_interval(),
            "grid": [rng.gen_range(2..=4), rng.gen_range(2..=4)],
        }),
        Task::Integrate | Task::CheckSubstitution => json!({
            "F": f,
            "G": { "f1": "x^2", "f2": "y^3 + y" },
            "interval": unit_interval(),
            "tol": 1e-6,
            "mode": "signed",
        }),
        Task::Riemann => json!({ "F": f, "interval": unit_interval(), "tol": 1e-6 }),
    };
    json!({ "task": task_name(task), "payload": payload })
}

fn task_name(task: Task) -> &'static str {
    match task {
        Task::ValidateStrong => "validate-strong",
        Task::ValidateWeak => "validate-weak",
        Task::ValidateRegular => "validate-regular",
        Task::Merge => "merge",
        Task::Variation => "variation",
        Task::VariationSet => "variation-set",
        Task::Integrate => "integrate",
        Task::Riemann => "riemann",
        Task::CheckSubstitution => "check-substitution",
        Task::Render => "render",
    }
}
