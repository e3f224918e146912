//! Build a zero-error linear code from a lifted network and check it on
//! every message.
//!
//!     cargo run --example zero_error_code

use netdof::galois::lift_network;
use netdof::model::{parse_network, sample_coefficients};
use netdof::relay::{extract_zero_error_code, random_relays_fp, unfold_fp, verify_zero_error};

fn main() {
    let net = sample_coefficients(&parse_network(include_str!("../networks/mimo2x2.json")).unwrap(), 5);
    let (dn, _) = lift_network(&net, 5, 20).unwrap();
    let relays = random_relays_fp(dn.network(), dn.field(), 5);
    let g = unfold_fp(&dn, "S", "D", &relays, 1).unwrap().matrix;
    println!("end-to-end matrix over F_{}:\n{g}", dn.p());

    let code = extract_zero_error_code(&g).unwrap();
    println!(
        "dimension {}, columns {:?}, rows {:?}",
        code.dimension, code.column_selection, code.row_selection
    );
    let msg = vec![1, 2];
    let y = g.mul_vec(&code.encode(&msg));
    println!("message {msg:?} -> received {y:?} -> decoded {:?}", code.decode(&y));

    let check = verify_zero_error(&code, &g, 0);
    println!(
        "{} messages checked ({}), errors: {}",
        check.messages_checked,
        if check.exhaustive { "all of them" } else { "sampled" },
        if check.ok { "none" } else { "some" }
    );
}
