//! Fundamental alcove, marks and minimal level for every simple type up to rank 8.
//!
//! ```text
//! cargo run --example alcove [-- E6]
//! ```

use gerbes::rootsys::{alcove, minimal_level_k0, rational_string, CartanType, RootSystem};

fn main() -> gerbes::Result<()> {
    if let Some(arg) = std::env::args().nth(1) {
        let rs = RootSystem::from_type(arg.parse()?)?;
        for (i, v) in alcove(&rs).vertices.iter().enumerate() {
            let coords: Vec<String> = v.iter().map(rational_string).collect();
            println!("mu_{i} = ({})", coords.join(", "));
        }
        return Ok(());
    }
    println!("{:<5} {:>6} {:>5}  marks", "type", "roots", "k0");
    for t in CartanType::all_up_to_rank(8) {
        let rs = RootSystem::from_type(t)?;
        println!("{:<5} {:>6} {:>5}  {:?}", t.to_string(), rs.roots.len(), minimal_level_k0(&rs), rs.marks);
    }
    Ok(())
}
