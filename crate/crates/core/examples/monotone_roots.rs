//! Monotone subroots, the swap move, and the decomposition into the Y basis.

use hfi::graded_roots::SymmetricRootProfile;
use hfi::monotone::{MonotoneRoot, WeaklyMonotoneRoot};

fn main() {
    let root = SymmetricRootProfile::from_ints(&[-6, -2, 0, 0, -2, -6], &[-8, -4, -4, -4, -8]).unwrap();
    let m = MonotoneRoot::extract(&root);
    println!("{root}\n  monotone subroot {m}\n  class {}", m.decompose());

    let m = MonotoneRoot::parse("M(12,0; 10,2)").unwrap();
    println!("{m}: profile {}, class {}", m.to_profile(), m.decompose());

    let w = WeaklyMonotoneRoot::parse("M(2,0; 2,0; 0,0)").unwrap();
    println!("{w} simplifies to {}", w.simplify());

    let x = WeaklyMonotoneRoot::parse("M(6,0; 4,2)").unwrap();
    let y = WeaklyMonotoneRoot::parse("M(4,0)").unwrap();
    match WeaklyMonotoneRoot::swap(&x, &y, 1, 1).unwrap() {
        Some((x2, y2)) => {
            println!("swap({x}, {y}) = ({x2}, {y2})");
            println!("  classes before {}  after {}", x.decompose() + y.decompose(), x2.decompose() + y2.decompose());
        }
        None => println!("swap({x}, {y}) is not valid"),
    }
}
