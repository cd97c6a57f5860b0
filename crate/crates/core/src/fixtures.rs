//! Small named graphs used throughout the examples and tests.

use crate::graph::Graph;

fn named(names: &[&str], edges: &[(&str, &str)]) -> Graph {
    let idx = |x: &str| names.iter().position(|y| *y == x).expect("fixture name");
    let edges: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (idx(u), idx(v))).collect();
    Graph::from_edges(names.len(), &edges)
        .and_then(|g| g.with_names(names.iter().map(|s| s.to_string()).collect()))
        .expect("fixture graph is valid")
}

fn clique_edges(vs: &[String]) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            out.push((vs[i].clone(), vs[j].clone()));
        }
    }
    out
}

fn named_owned(names: &[String], edges: &[(String, String)]) -> Graph {
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let edges: Vec<(&str, &str)> = edges.iter().map(|(u, v)| (u.as_str(), v.as_str())).collect();
    named(&names, &edges)
}

/// Path a-b-c.
pub fn p3() -> Graph {
    named(&["a", "b", "c"], &[("a", "b"), ("b", "c")])
}

/// Complete graph on w, x, y, z.
pub fn k4() -> Graph {
    named(
        &["w", "x", "y", "z"],
        &[("w", "x"), ("w", "y"), ("w", "z"), ("x", "y"), ("x", "z"), ("y", "z")],
    )
}

/// Cycle w-x-y-z-w.
pub fn c4() -> Graph {
    named(&["w", "x", "y", "z"], &[("w", "x"), ("x", "y"), ("y", "z"), ("z", "w")])
}

/// Three K5 blobs threaded on a path:
/// X1 = {a1..a4, x1}, X2 = {x2, b1, b2, b3, y2}, X3 = {x3, c1..c4},
/// joined by x1-p-x2 and y2-q-x3.
pub fn three_blobs() -> Graph {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let x1 = s(&["a1", "a2", "a3", "a4", "x1"]);
    let x2 = s(&["x2", "b1", "b2", "b3", "y2"]);
    let x3 = s(&["x3", "c1", "c2", "c3", "c4"]);
    let mut names = Vec::new();
    names.extend(x1.iter().cloned());
    names.push("p".into());
    names.extend(x2.iter().cloned());
    names.push("q".into());
    names.extend(x3.iter().cloned());
    let mut edges = Vec::new();
    for blob in [&x1, &x2, &x3] {
        edges.extend(clique_edges(blob));
    }
    for (u, v) in [("x1", "p"), ("p", "x2"), ("y2", "q"), ("q", "x3")] {
        edges.push((u.into(), v.into()));
    }
    named_owned(&names, &edges)
}

/// `blobs` copies of K6 pairwise sharing one triangle {t1, t2, t3}; blob i
/// adds the vertices yi1, yi2, yi3.
pub fn triangle_glued_k6s(blobs: usize) -> Graph {
    let triangle: Vec<String> = (1..=3).map(|i| format!("t{i}")).collect();
    let mut names = triangle.clone();
    let mut edges = clique_edges(&triangle);
    for b in 1..=blobs {
        let own: Vec<String> = (1..=3).map(|i| format!("y{b}{i}")).collect();
        names.extend(own.iter().cloned());
        let mut blob = triangle.clone();
        blob.extend(own);
        edges.extend(
            clique_edges(&blob)
                .into_iter()
                .filter(|(u, v)| !(u.starts_with('t') && v.starts_with('t'))),
        );
    }
    named_owned(&names, &edges)
}

/// Three K6s sharing a triangle.
pub fn tg3() -> Graph {
    triangle_glued_k6s(3)
}

/// Four K6s sharing a triangle.
pub fn tg4() -> Graph {
    triangle_glued_k6s(4)
}

/// Two disjoint triangles {a1,a2,a3} and {b1,b2,b3}.
pub fn two_triangles() -> Graph {
    named(
        &["a1", "a2", "a3", "b1", "b2", "b3"],
        &[
            ("a1", "a2"),
            ("a2", "a3"),
            ("a1", "a3"),
            ("b1", "b2"),
            ("b2", "b3"),
            ("b1", "b3"),
        ],
    )
}

/// `rows x cols` grid; vertex `r*cols + c` is named `r,c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    let names = (0..rows * cols).map(|v| format!("{},{}", v / cols, v % cols)).collect();
    Graph::from_edges(rows * cols, &edges)
        .and_then(|g| g.with_names(names))
        .expect("grid is valid")
}

/// A two-vertex set Z = {z1, z2} whose removal leaves four single-vertex
/// components c1..c4, each joined to both z's.
pub fn star_of_four() -> Graph {
    let names = ["z1", "z2", "c1", "c2", "c3", "c4"];
    let edges: Vec<(&str, &str)> = ["c1", "c2", "c3", "c4"]
        .iter()
        .flat_map(|c| [("z1", *c), ("z2", *c)])
        .collect();
    named(&names, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(three_blobs().n(), 17);
        assert_eq!(three_blobs().edge_count(), 3 * 10 + 4);
        assert_eq!(tg3().n(), 12);
        assert_eq!(tg3().edge_count(), 3 + 3 * 12);
        assert_eq!(tg4().n(), 15);
        assert_eq!(grid(5, 5).edge_count(), 40);
        assert_eq!(star_of_four().edge_count(), 8);
    }
}
