use curvecert::curve::seed_loop;
use curvecert::extract::{extract_arc, pushed_off_copy};
use curvecert::isect::curve_arc_intersection;
use curvecert::model::model;
use curvecert::pl::HalfTwistMap;

fn main() {
    let n = 6usize;
    let m = model(n);
    let c0 = seed_loop(n, 0, 2); // around {0,1}
    println!("c0 coords {:?}", c0.coords);
    let map = HalfTwistMap::new(&m, 1, true);
    let mut img_coords = vec![0u64; m.edge_count()];
    for (eid, e) in m.edges.iter().enumerate() {
        let copy = pushed_off_copy(&e.line);
        let img_line = map.map_polyline(&copy);
        let img = extract_arc(&m, &img_line);
        let cnt = curve_arc_intersection(&m, &c0.diagram(), &img);
        img_coords[eid] = cnt;
        println!(
            "edge {eid} ({}->{}): img {}->{} steps {:?} count {}",
            e.tail, e.head, img.start_vert, img.end_vert, img.steps, cnt
        );
    }
    println!("image coords {:?}", img_coords);
    // what SHOULD the image be: sigma_1(c0) = loop around {0,2}:
    // build a loop around {0,2} by twisting? just print the trace attempt:
    match curvecert::diagram::trace(&m, &img_coords) {
        Ok(c) => println!("traces into {} comps", c.len()),
        Err(e) => println!("trace error: {e:?}"),
    }
}
