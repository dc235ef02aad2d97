//! Browser bindings. Every export takes and returns JSON text so the same
//! functions run natively in tests; failures come back as `{"error": ...}`.

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use quarter::admissibility::{find_admissible_subgraph, Host};
use quarter::geometry::{self, CurveArrangement, RandomCurves};
use quarter::graph6;
use quarter::rational::{fmt_rational, to_f64};
use quarter::turan::simplex::check_certificate;
use quarter::turan::{k5_family, minimize_phi};

/// Largest graph the page will analyse; the admissibility search over all
/// subsets grows quickly past this.
pub const MAX_ANALYSE: usize = 10;

fn respond<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).expect("response serialises"),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// Exact minimum of phi for a graph6 string, with the first admissible
/// subgraph for the partial subdivisions of K5 if there is one.
#[wasm_bindgen]
pub fn analyse_graph(g6: &str) -> String {
    respond((|| {
        let g = graph6::decode(g6.trim()).map_err(|e| e.to_string())?;
        if g.n() > MAX_ANALYSE {
            return Err(format!("at most {MAX_ANALYSE} vertices, got {}", g.n()));
        }
        let min = minimize_phi(&g).map_err(|e| e.to_string())?;
        let family = k5_family();
        let found = find_admissible_subgraph(&Host::Graph(&g), &family).map_err(|e| e.to_string())?;
        Ok(json!({
            "n": g.n(),
            "edges": g.edges(),
            "min_phi": fmt_rational(&min.value),
            "phi": min.phi.iter().map(fmt_rational).collect::<Vec<_>>(),
            "certified": check_certificate(&g, &min),
            "at_least_quarter": min.value >= quarter::rational::rat(1, 4),
            "admissible": found.as_ref().map(|f| json!({
                "subset": f.subset,
                "pattern": graph6::encode(&family[f.member]),
            })),
        }))
    })())
}

/// Seeded random polylines with integer coordinates in `[0, bbox]`.
#[wasm_bindgen]
pub fn random_arrangement(n: u32, segments: u32, bbox: u32, seed: u32) -> String {
    respond((|| {
        let params = RandomCurves {
            n: n as usize,
            segments: segments as usize,
            bbox: bbox as i64,
            step: Some((bbox as i64 / 3).max(1)),
        };
        let a = geometry::random_curves(&params, seed as u64).map_err(|e| e.to_string())?;
        Ok(serde_json::from_str::<serde_json::Value>(&a.to_json()).expect("valid json"))
    })())
}

/// Crossings, intersection graph and separator pair of a curve file.
#[wasm_bindgen]
pub fn separate(curves_json: &str) -> String {
    respond((|| {
        let a = CurveArrangement::from_json(curves_json).map_err(|e| e.to_string())?;
        let g = geometry::intersection_graph(&a);
        let s = geometry::separator_biclique(&a);
        let points: Vec<[f64; 2]> = a
            .crossings()
            .iter()
            .map(|c| [to_f64(&c.point.x), to_f64(&c.point.y)])
            .collect();
        Ok(json!({
            "curves": a.len(),
            "crossings": points,
            "edges": g.edges(),
            "separator_curves": s.separator_curves,
            "pair": s.pair,
            "verified": s.verified,
            "separator_ratio": s.separator_ratio,
        }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn k5_is_admissible_with_phi_three_fifths() {
        let v = parse(&analyse_graph("D~{"));
        assert_eq!(v["min_phi"], "3/5");
        assert_eq!(v["certified"], true);
        assert_eq!(v["admissible"]["subset"], json!([0, 1, 2, 3, 4]));
    }

    #[test]
    fn below_a_quarter_means_admissible() {
        let v = parse(&analyse_graph("D??"));
        assert_eq!(v["min_phi"], "1/5");
        assert_eq!(v["at_least_quarter"], false);
        assert!(v["admissible"].is_object());

        let v = parse(&analyse_graph("D@S"));
        assert_eq!(v["min_phi"], "5/17");
        assert!(v["admissible"].is_null());
    }

    #[test]
    fn errors_come_back_as_json() {
        assert!(parse(&analyse_graph("not graph6!")).get("error").is_some());
        assert!(parse(&analyse_graph("J????????????")).get("error").is_some());
        assert!(parse(&separate("[[[0,0]]")).get("error").is_some());
    }

    #[test]
    fn random_arrangement_feeds_separate() {
        let curves = random_arrangement(30, 3, 1000, 7);
        let v = parse(&separate(&curves));
        assert_eq!(v["curves"], 30);
        assert_eq!(v["verified"], true);
        let a = v["pair"]["A"].as_array().unwrap().len();
        assert_eq!(a, v["pair"]["B"].as_array().unwrap().len());
        assert_eq!(random_arrangement(30, 3, 1000, 7), curves);
    }

    #[test]
    fn x_has_one_crossing_at_the_centre() {
        let v = parse(&separate("[[[0,0],[2,2]],[[0,2],[2,0]]]"));
        assert_eq!(v["crossings"], json!([[1.0, 1.0]]));
        assert_eq!(v["edges"], json!([[0, 1]]));
    }
}
