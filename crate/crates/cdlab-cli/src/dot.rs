//! Hasse diagram export: one node per member labeled with its order and
//! abelian flag, one edge per cover, bottom-up rank direction.

use cdlab::shape::LatticeView;

pub fn export_dot(view: &LatticeView) -> String {
    let mut out = String::from("digraph cd_lattice {\n  rankdir=BT;\n");
    for (i, order) in view.orders.iter().enumerate() {
        let ab = if view.abelian[i] { "abelian" } else { "nonabelian" };
        out.push_str(&format!("  n{i} [label=\"order {order}\\n{ab}\"];\n"));
    }
    let mut covers = view.covers.clone();
    covers.sort_unstable();
    for (l, u) in covers {
        out.push_str(&format!("  n{l} -> n{u};\n"));
    }
    out.push_str("}\n");
    out
}
