//! Classify a few seven-point configurations in P^3 over F_31 and over Q.

use ciql::exactmath::{rat, PrimeField, RationalField};
use ciql::projgeom::{classify_seven_points, Configuration, ProjPoint};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = PrimeField::new(31)?;
    let cases: [(&str, Vec<Vec<i64>>); 3] = [
        ("general", vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 1, 1, 1], vec![1, 2, 3, 4], vec![1, 5, 7, 11]]),
        ("four on a line", vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![1, 1, 0, 0], vec![1, 2, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 3, 5, 7]]),
        ("all in x3 = 0", vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![1, 1, 1, 0], vec![1, 2, 3, 0], vec![1, 4, 9, 0], vec![1, 7, 2, 0]]),
    ];
    for (label, pts) in cases {
        let cfg = Configuration::from_i64(f, 3, &pts)?;
        let class = classify_seven_points(&cfg)?;
        println!("{label:>15}: {}", serde_json::to_string(&class)?);
    }

    let q = RationalField;
    let pts = [
        [rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)],
        [rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1)],
        [rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1)],
        [rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)],
        [rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1)],
        [rat(1, 2), rat(1, 3), rat(1, 5), rat(1, 7)],
        [rat(1, 1), rat(-1, 1), rat(2, 1), rat(3, 4)],
    ]
    .into_iter()
    .map(|c| ProjPoint::new(&q, c.to_vec()))
    .collect::<Result<Vec<_>, _>>()?;
    let cfg = Configuration::new(q, 3, pts)?;
    println!("{:>15}: {}", "over Q", serde_json::to_string(&classify_seven_points(&cfg)?)?);
    Ok(())
}
