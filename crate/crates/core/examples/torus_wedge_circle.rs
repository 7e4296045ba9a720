//! A torus with a circle attached on top, filtered by height. Each class of
//! the rounded Reeb quotient carries the H1 barcode seen from it: classes on
//! the torus see two strong loops, classes on the circle see one.

use reebdeco::pipeline::{run_pipeline, PipelineConfig};
use reebdeco::Decoration;

fn main() -> reebdeco::Result<()> {
    let cfg: PipelineConfig = serde_json::from_value(serde_json::json!({
        "input": {"kind": "generate", "shape": "torus_wedge_circle", "n": 3000, "noise": 0.02},
        "seed": 7,
        "graph": {"kind": "knn", "k": 10},
        "field": {"kind": "height", "axis": 2},
        "round": 0.5,
        "lambda": 5.0,
        "r_max": 2.0,
        "landmarks": 250,
        "render": false,
    }))?;
    let out = run_pipeline(&cfg)?;
    let pos = out
        .graph
        .positions()
        .expect("generated clouds have positions");
    println!(
        "{} classes; strong bars have persistence above half the class maximum",
        out.drg.class_count
    );
    println!("class  height  size  strong  longest bars");
    let mut order: Vec<usize> = (0..out.drg.class_count).collect();
    order.sort_by(|&a, &b| {
        pos[out.drg.representative[a]][2].total_cmp(&pos[out.drg.representative[b]][2])
    });
    for c in order {
        let Some(b) = out.drg.decorations[c]
            .as_ref()
            .and_then(Decoration::as_barcode)
        else {
            println!("{c:5}  undecorated");
            continue;
        };
        let mut pers: Vec<f64> = b.intervals().iter().map(|i| i.persistence()).collect();
        pers.sort_by(|a, b| b.total_cmp(a));
        pers.truncate(3);
        println!(
            "{c:5}  {:6.2}  {:4}  {:6}  {pers:.2?}",
            pos[out.drg.representative[c]][2],
            out.drg.members(c).len(),
            b.count_above(0.5 * b.max_persistence()),
        );
    }
    Ok(())
}
