// Scratch probe: exact oracle λ₂ for candidate shape templates at the two
// arena scales used by the seven-shape experiments. Used to pin the free
// proportions of the star/arrow/stop templates.
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use swarmlap::geometry::{make_arena, polygon_arena, sample_uniform, Arena, Point, ShapeKind};
use swarmlap::spectral::{build_graph, connected_components, spectrum};

fn star(ratio: f64) -> Vec<Point> {
    (0..10)
        .map(|k| {
            let r = if k % 2 == 0 { 1.0 } else { ratio };
            let a = std::f64::consts::FRAC_PI_2 + k as f64 * std::f64::consts::PI / 5.0;
            Point::new(r * a.cos(), r * a.sin())
        })
        .collect()
}

fn arrow(shaft_len: f64, head_w: f64, head_len: f64) -> Vec<Point> {
    let hw = 0.5;
    let hh = head_w / 2.0;
    vec![
        Point::new(0.0, -hw),
        Point::new(shaft_len, -hw),
        Point::new(shaft_len, -hh),
        Point::new(shaft_len + head_len, 0.0),
        Point::new(shaft_len, hh),
        Point::new(shaft_len, hw),
        Point::new(0.0, hw),
    ]
}

fn stop(post_w: f64, post_len: f64) -> Vec<Point> {
    let mut v: Vec<Point> = (0..8)
        .map(|k| {
            let a = std::f64::consts::FRAC_PI_8 + k as f64 * std::f64::consts::FRAC_PI_4;
            Point::new(a.cos(), a.sin())
        })
        .collect();
    let yb = v[5].y;
    let w = post_w / 2.0;
    let post = [
        Point::new(-w, yb),
        Point::new(-w, yb - post_len),
        Point::new(w, yb - post_len),
        Point::new(w, yb),
    ];
    v.splice(6..6, post);
    v
}

// Uniform sampling with a hard-disc exclusion radius, to mimic the
// non-overlapping agent bodies the simulator enforces. Per-point retry cap
// so saturation cannot stall the probe.
fn sample_hard_disc(
    arena: &Arena,
    n: usize,
    min_dist: f64,
    rng: &mut ChaCha8Rng,
) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    let d2 = min_dist * min_dist;
    while pts.len() < n {
        let mut placed = false;
        for _ in 0..200 {
            let cand = sample_uniform(arena, 1, rng)[0];
            if pts.iter().all(|p| p.distance_sq(&cand) >= d2) {
                pts.push(cand);
                placed = true;
                break;
            }
        }
        if !placed {
            pts.push(sample_uniform(arena, 1, rng)[0]);
        }
    }
    pts
}

fn measure(arena: &Arena, n: usize, sigma: f64, runs: u64) -> (f64, f64, f64) {
    let vals: Vec<(f64, f64)> = (0..runs)
        .into_par_iter()
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed * 7919 + arena.kind as u64);
            let pts = sample_hard_disc(arena, n, 33.0, &mut rng);
            let g = build_graph(&pts, sigma);
            (
                spectrum(&g).unwrap().fiedler_value,
                connected_components(&g).0 as f64,
            )
        })
        .collect();
    let mean = vals.iter().map(|v| v.0).sum::<f64>() / runs as f64;
    let sd = (vals.iter().map(|v| (v.0 - mean).powi(2)).sum::<f64>() / runs as f64).sqrt();
    let comps = vals.iter().map(|v| v.1).sum::<f64>() / runs as f64;
    (mean, sd, comps)
}

fn main() {
    let runs: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(48);
    let alpha = 300.0 * std::f64::consts::PI * 85.0 * 85.0 / 500_000.0;
    let sigma_ci = (alpha * 125_000.0 / (150.0 * std::f64::consts::PI)).sqrt();
    let scales: [(&str, usize, f64, f64); 2] = [
        ("large", 300, 85.0, 500_000.0),
        ("ci", 150, sigma_ci, 125_000.0),
    ];

    for (label, n, sigma, surface) in scales {
        println!("== scale {label}: N={n} sigma={sigma:.1} S={surface}");
        for kind in [
            ShapeKind::Disk,
            ShapeKind::Square,
            ShapeKind::Triangle,
            ShapeKind::Annulus,
        ] {
            let arena = make_arena(kind, surface).unwrap();
            let (m, sd, c) = measure(&arena, n, sigma, runs);
            println!("  pinned {kind:9} {m:.5} +- {sd:.5} comps {c:.2}");
        }
        for ratio in [0.54, 0.56, 0.58] {
            let arena = polygon_arena(ShapeKind::Star, star(ratio), surface).unwrap();
            let (m, sd, c) = measure(&arena, n, sigma, runs);
            println!("  star ratio={ratio:.2}  {m:.5} +- {sd:.5} comps {c:.2}");
        }
        for (sl, hw, hl) in [
            (0.6, 1.6, 0.8),
            (0.55, 1.6, 0.75),
            (0.65, 1.7, 0.85),
            (1.0, 1.4, 0.7),
            (0.8, 1.5, 0.7),
        ] {
            let arena = polygon_arena(ShapeKind::Arrow, arrow(sl, hw, hl), surface).unwrap();
            let (m, sd, c) = measure(&arena, n, sigma, runs);
            println!("  arrow shaft={sl:.2} headw={hw:.1} headl={hl:.2}  {m:.5} +- {sd:.5} comps {c:.2}");
        }
        {
            let oct: Vec<Point> = (0..8)
                .map(|k| {
                    let a = std::f64::consts::FRAC_PI_8 + k as f64 * std::f64::consts::FRAC_PI_4;
                    Point::new(a.cos(), a.sin())
                })
                .collect();
            let arena = polygon_arena(ShapeKind::Stop, oct, surface).unwrap();
            let (m, sd, c) = measure(&arena, n, sigma, runs);
            println!("  plain-octagon  {m:.5} +- {sd:.5} comps {c:.2}");
        }
        for (pw, pl) in [(0.6, 1.6), (0.62, 1.5)] {
            let arena = polygon_arena(ShapeKind::Stop, stop(pw, pl), surface).unwrap();
            let (m, sd, c) = measure(&arena, n, sigma, runs);
            println!("  stop postw={pw:.2} postl={pl:.1}  {m:.5} +- {sd:.5} comps {c:.2}");
        }
    }
}
