//! Entanglement measures on a few reference states.
//!
//!     cargo run --example metrics_tour

use detune::metrics::{concurrence_wootters, concurrence_xform, negativity, purity};
use detune::postselect::postselect;
use detune::DickeState;
use num_complex::Complex64 as C64;

fn main() -> detune::Result<()> {
    let states = [
        ("|s>", DickeState::symmetric()),
        ("|a>", DickeState::antisymmetric()),
        ("(|11><11| + |00><00|)/2", DickeState::diagonal(0.5, 0.0, 0.0, 0.5)),
        ("0.4 |s><s| + 0.6 |00><00|", DickeState::diagonal(0.0, 0.4, 0.0, 0.6)),
        ("mixed s/a with coherence", DickeState::new(0.0, 0.6, 0.2, 0.2, C64::new(0.0, 0.3))?),
    ];
    for (name, d) in states {
        let r = d.to_computational()?;
        let (wc, wr) = concurrence_wootters(&r)?;
        let (xc, xr) = concurrence_xform(&d);
        let post = postselect(&r)?;
        println!("{name}");
        println!("  wootters ({wc:.4}, {wr:.4})  x-form ({xc:.4}, {xr:.4})");
        println!("  negativity {:.4}  purity {:.4}", negativity(&r), purity(&r));
        println!("  postselected: success {:.3}, C {:.4}", post.success_prob, post.concurrence.0);
    }
    Ok(())
}
