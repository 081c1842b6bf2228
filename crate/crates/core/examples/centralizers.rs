//! Centralizer root subsystems of the open faces of the E8 alcove.
//!
//! Every face is labelled by the alcove vertices it spans; its centralizer
//! consists of the roots taking integer values on the face.

use std::collections::BTreeSet;

use gerbes::rootsys::{alcove, CartanType, RootSystem};

fn main() -> gerbes::Result<()> {
    let t: CartanType = "E8".parse()?;
    let rs = RootSystem::from_type(t)?;
    let alc = alcove(&rs);
    let n = alc.vertices.len();
    for i in 0..n {
        let face = BTreeSet::from([i]);
        println!("vertex {i}: {} roots", alc.face_centralizer(&face)?.len());
    }
    let edge = BTreeSet::from([0, n - 1]);
    println!("edge {edge:?}: {} roots", alc.face_centralizer(&edge)?.len());
    let all: BTreeSet<usize> = (0..n).collect();
    println!("interior: {} roots", alc.face_centralizer(&all)?.len());
    Ok(())
}
