//! Each crate example, run and checked.

#[allow(dead_code)]
mod quiver {
    include!("../examples/quiver.rs");
}
#[allow(dead_code)]
mod strings {
    include!("../examples/strings.rs");
}
#[allow(dead_code)]
mod extensions {
    include!("../examples/extensions.rs");
}
#[allow(dead_code)]
mod annihilator {
    include!("../examples/annihilator.rs");
}
#[allow(dead_code)]
mod classify {
    include!("../examples/classify.rs");
}
#[allow(dead_code)]
mod completion {
    include!("../examples/completion.rs");
}
#[allow(dead_code)]
mod standard_maps {
    include!("../examples/standard_maps.rs");
}
#[allow(dead_code)]
mod render {
    include!("../examples/render.rs");
}

#[test]
fn quiver_of_the_running_example() {
    let s = quiver::run_example();
    assert_eq!((s.vertices, s.arrows, s.relations), (5, 7, 6));
    assert!(s.gentle);
    // Brute-force count of nonzero paths: trivial paths, arrows, then
    // composable pairs avoiding the six relations, and so on.
    assert_eq!(s.basis, 19);
    assert_eq!(s.dot.matches("style=dashed").count(), 6);
}

#[test]
fn arc_strings() {
    let rows = strings::run_example();
    let get = |arc: &str| rows.iter().find(|r| r.0 == arc).map(|r| r.1.clone()).unwrap();
    assert_eq!(get("P(1',3')"), "e⁻¹f⁻¹g⁻¹d⁻¹");
    assert_eq!(get("A(1',cw)"), "(c⁻¹gf)*e (Contracting)");
    assert_eq!(get("A(2,cw)"), "(gfc⁻¹)* (Expanding)");
    assert_eq!(get("P(0,2)"), "@in-triangulation");
    assert_eq!(get("beta"), "(c⁻¹gf)^Z");
}

#[test]
fn witnesses_span_ext() {
    let rows = extensions::run_example();
    assert_eq!(rows.len(), 36);
    for r in &rows {
        assert_eq!(r.witnesses.len(), r.ext1, "Ext¹({}, {})", r.quotient, r.sub);
    }
    // Two arrows from 1 to 2: Ext¹(S₁, S₂) = 2.
    assert_eq!(rows.iter().find(|r| r.quotient == "e_1" && r.sub == "e_2").unwrap().ext1, 2);
}

#[test]
fn annihilator_agrees_with_linear_algebra() {
    let s = annihilator::run_example();
    assert!(s.agrees);
    assert!(s.quotient_gentle);
}

#[test]
fn kronecker_classification() {
    let c = classify::run_example();
    assert!(c.non_strict.iter().all(|e| e.verified));
    assert!(c.strict.iter().all(|e| e.rigid));
    // One spiral choice per boundary.
    assert_eq!(c.strict.len(), 4);
    assert!(!c.non_strict.is_empty());
}

#[test]
fn completion_preserves_annihilator() {
    let s = completion::run_example();
    assert!(s.same_ann && s.cosilting);
    assert!(s.given.iter().all(|a| s.completed.contains(a)));
}

#[test]
fn standard_maps_count_ext() {
    let (pictures, rows) = standard_maps::run_example();
    assert_eq!(pictures.len(), 6);
    for r in &rows {
        assert_eq!(r.kinds.len(), r.ext1, "P_{} -> P_{}[1]", r.m, r.n);
    }
}

#[test]
fn cover_svg_parses() {
    let svg = render::run_example();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let paths = doc.descendants().filter(|n| n.has_tag_name("path")).count();
    assert!(paths >= 4);
}
