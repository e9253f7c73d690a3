use gt_core::combin::{Point, Shift};
use gt_core::graph::{orient, split};

fn main() {
    let seed = Point::zero(3);
    let z0 = Shift::zero(3);
    let y2 = Shift::from_rows(3, vec![vec![-1], vec![0, -1]]).unwrap();
    let a = split(&orient(&seed, &z0)).0;
    let b = split(&orient(&seed, &y2)).0;
    println!("plus(z0): {:?}", a.edges);
    println!("plus(y2): {:?}", b.edges);
    println!("inclusion: {}", a.subgraph_of(&b));
}
