use curvecert::diagram::ArcDiagram;
use curvecert::isect::{Arrangement, Track};
use curvecert::model::model;

fn main() {
    let n = 6usize;
    let m = model(n);
    let l_coords: Vec<u64> = vec![1, 1, 1, 0, 0, 1, 2, 1, 1, 0, 1, 1];
    let l = curvecert::curve::CurveCode::canonicalize(n, &l_coords).unwrap();
    let dl = l.diagram();
    println!("L steps: {:?}", dl.steps);
    // the transported arc: p0 (outer 0,2,3) --e2,R2L--> --e6,L2R--> p1 in (0,1,2)
    // faces: find ids
    for (fid, f) in m.faces.iter().enumerate() {
        println!("face {fid}: sides {:?} corners {:?}", f.sides, f.corners);
    }
    let outer023 = m.faces.iter().position(|f| {
        let mut c = f.corners.to_vec();
        c.sort();
        c == vec![0, 2, 3] && f.sides.iter().any(|s| s.edge == 9)
    }).unwrap();
    let inner012 = m.faces.iter().position(|f| {
        let mut c = f.corners.to_vec();
        c.sort();
        c == vec![0, 1, 2] && f.sides.iter().any(|s| s.edge == 6)
    }).unwrap();
    let arc = ArcDiagram {
        start_vert: 0,
        start_face: outer023,
        steps: vec![
            curvecert::diagram::Step { edge: 2, to_right: false },
            curvecert::diagram::Step { edge: 6, to_right: true },
        ],
        end_vert: 1,
        end_face: inner012,
    };
    arc.assert_valid(&m);
    let arr = Arrangement::new(&m, vec![Track::closed(&dl), Track::arc(&arc)]);
    for e in [1usize, 2, 6, 0] {
        println!("edge {e} visits: {:?}", arr.edge_visits[e]);
    }
    let crossings = arr.crossings_between(0, 1);
    println!("crossings: {:?}", crossings);
}
