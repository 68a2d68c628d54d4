use curvecert::curve::seed_loop;
use curvecert::extract::{extract_arc, pushed_off_copy};
use curvecert::isect::curve_arc_intersection;
use curvecert::model::model;
use curvecert::pl::HalfTwistMap;

fn main() {
    let n = 6usize;
    let m = model(n);
    // image of c0 under sigma_1 = loop around {0,2}, computed previously:
    let img_coords: Vec<u64> = vec![1, 1, 1, 0, 0, 1, 2, 1, 1, 0, 1, 1];
    let img = curvecert::curve::CurveCode::canonicalize(n, &img_coords).unwrap();
    // apply sigma_1^{-1}: table = forward ccw map
    let map = HalfTwistMap::new(&m, 1, false);
    let mut out = vec![0u64; m.edge_count()];
    for (eid, e) in m.edges.iter().enumerate() {
        let copy = pushed_off_copy(&e.line);
        let img_line = map.map_polyline(&copy);
        let arc = extract_arc(&m, &img_line);
        let cnt = curve_arc_intersection(&m, &img.diagram(), &arc);
        out[eid] = cnt;
        println!(
            "edge {eid} ({}->{}): arc {}->{} steps {:?} count {}",
            e.tail, e.head, arc.start_vert, arc.end_vert, arc.steps, cnt
        );
    }
    println!("result coords {:?}", out);
    println!("c0 coords      {:?}", seed_loop(n, 0, 2).coords);
    match curvecert::diagram::trace(&m, &out) {
        Ok(c) => println!("traces into {} comps", c.len()),
        Err(e) => println!("trace error: {e:?}"),
    }
}
