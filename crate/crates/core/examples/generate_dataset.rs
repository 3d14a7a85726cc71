//! Generates one set per synthetic family, writes it to a point file and reads it back.

use ndplus::datasets::{generate, read_points, write_points, DatasetSpec, Family};

fn main() -> ndplus::Result<()> {
    let dir = std::env::temp_dir().join("ndplus-example");
    std::fs::create_dir_all(&dir)?;
    for family in Family::PARETO {
        let ds = generate(&DatasetSpec::new(family, 4, 500, 42))?;
        let path = dir.join(format!("{family}.pts"));
        write_points(&ds.points, &path)?;
        let back = read_points(&path)?;
        assert_eq!(back.points(), ds.points.points());
        println!(
            "{family:<6} {} points, plateau dims {:?}, correlated {:?}, {} round(s) -> {}",
            back.len(),
            ds.plateau_dims,
            ds.correlated,
            ds.rounds,
            path.display()
        );
    }
    Ok(())
}
