use roxmltree::Document;
use sightline::{export_frames, export_svg};
use sightline_core::motion::{Orbit, Plan, SingleVertexMove, Transformation};
use sightline_core::planner::{single_vertex_convexify, FixedOracle};
use sightline_core::scalar::int;
use sightline_core::{Point, Polygon};

fn class_count(node: roxmltree::Node, class: &str) -> usize {
    node.descendants().filter(|n| n.attribute("class") == Some(class)).count()
}

fn frames<'a, 'i>(doc: &'a Document<'i>) -> Vec<roxmltree::Node<'a, 'i>> {
    doc.descendants().filter(|n| n.attribute("class") == Some("frame")).collect()
}

#[test]
fn empty_plan_is_static() {
    let sq = Polygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
    let text = export_svg(&Plan::empty(sq), 10);
    let doc = Document::parse(&text).unwrap();
    let outline = doc.descendants().find(|n| n.attribute("class") == Some("outline")).unwrap();
    assert_eq!(outline.attribute("points").unwrap().split(' ').count(), 4);
    assert_eq!(class_count(doc.root(), "sight"), 2);
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("animate")).count(), 0);
}

#[test]
fn one_move_animates_one_vertex() {
    let sq = Polygon::from_ints(&[(0, 0), (4, 0), (4, 4), (0, 4)]).unwrap();
    let path = Orbit::linear(int(0), Point::from_ints(0, 0), int(1), Point::from_ints(1, 1)).unwrap();
    let plan = Plan::new(sq, vec![SingleVertexMove::new(0, path)]).unwrap();
    let text = export_svg(&plan, 8);
    let doc = Document::parse(&text).unwrap();
    assert_eq!(class_count(doc.root(), "mover"), 1);
    let anim = doc.descendants().find(|n| n.has_tag_name("animate") && n.attribute("attributeName") == Some("points")).unwrap();
    // At least fps samples per unit of time.
    assert!(anim.attribute("values").unwrap().split(';').count() >= 9);
    let key_times: Vec<f64> = anim.attribute("keyTimes").unwrap().split(';').map(|k| k.parse().unwrap()).collect();
    assert_eq!(key_times.first(), Some(&0.0));
    assert_eq!(key_times.last(), Some(&1.0));
    assert!(key_times.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn dart_plan_ends_with_two_sight_lines() {
    let dart = Polygon::from_ints(&[(0, 0), (2, 0), (1, 3), (1, 1)]).unwrap();
    let mut orbits: Vec<Orbit> = dart.vertices().iter().cloned().map(Orbit::constant).collect();
    orbits[3] = Orbit::linear(int(0), Point::from_ints(1, 1), int(1), Point::from_ints(0, 2)).unwrap();
    let t = Transformation::aligned_with(&dart, int(0), int(1), orbits).unwrap();
    let (plan, _) = single_vertex_convexify(&dart, &FixedOracle::new(t).unwrap()).unwrap();
    let text = export_svg(&plan, 10);
    let doc = Document::parse(&text).unwrap();
    let all = frames(&doc);
    assert_eq!(class_count(all[0], "sight"), 1);
    assert_eq!(class_count(*all.last().unwrap(), "sight"), 2);

    let statics = export_frames(&plan, 2);
    assert!(statics.len() >= 2);
    for f in &statics {
        Document::parse(f).unwrap();
    }
    let last = Document::parse(statics.last().unwrap()).unwrap();
    assert_eq!(class_count(last.root(), "sight"), 2);
}
