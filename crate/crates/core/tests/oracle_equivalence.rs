use ideal_coxeter::combinatorics::catalog;
use ideal_coxeter::growth::growth_series;
use ideal_coxeter::oracle::{bfs_growth, coxeter_matrix};

#[test]
fn bfs_matches_series_to_depth_six() {
    for name in ["P1", "P2", "P3", "OCT"] {
        let p = catalog(name).unwrap();
        let bfs = bfs_growth(&coxeter_matrix(&p), 6).unwrap();
        let series = growth_series(&p, 6).unwrap();
        let series: Vec<u64> = series.iter().map(|c| c.to_string().parse().unwrap()).collect();
        assert_eq!(bfs.counts, series, "{name}");
    }
}
