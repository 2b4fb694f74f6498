//! Enumerate the branch signatures of finite rotation groups and print the
//! exceptional ones.

use kerek::classify::{enumerate_riemann_hurwitz, SignatureFamily};

fn main() {
    let sigs = enumerate_riemann_hurwitz(120);
    println!("{} signatures with order <= 120", sigs.len());
    for s in &sigs {
        if matches!(
            s.family(),
            Some(SignatureFamily::Tetrahedral | SignatureFamily::Octahedral | SignatureFamily::Icosahedral)
        ) {
            println!("{s}  {:?}", s.family().unwrap());
        }
    }
}
