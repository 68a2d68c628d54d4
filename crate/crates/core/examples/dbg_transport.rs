use curvecert::curve::seed_loop;
use curvecert::extract::{extract_arc, pushed_off_copy};
use curvecert::isect::{curve_arc_intersection, Arrangement, Track};
use curvecert::model::model;
use curvecert::pl::HalfTwistMap;

fn main() {
    let n = 6usize;
    let m = model(n);
    let c1 = seed_loop(n, 1, 2);
    println!("c1 coords {:?}", c1.coords);
    let index = 1usize;
    let map = HalfTwistMap::new(&m, index, true); // inverse map for forward action
    for (eid, e) in m.edges.iter().enumerate() {
        let copy = pushed_off_copy(&e.line);
        let base = extract_arc(&m, &copy);
        let img_line = map.map_polyline(&copy);
        let img = extract_arc(&m, &img_line);
        println!(
            "edge {eid} ({}->{}) base steps {} | img {}->{} steps {:?}",
            e.tail, e.head, base.steps.len(), img.start_vert, img.end_vert,
            img.steps
        );
        let cnt = curve_arc_intersection(&m, &c1.diagram(), &img);
        println!("   i(c1, sigma^-1 e{eid}) = {cnt}  (c1 coord at e: {})", c1.coords[eid]);
        let _ = Arrangement::new(&m, vec![Track::closed(&c1.diagram()), Track::arc(&img)]);
    }
}
