#![no_main]

use abcover::{graph6, Graph};
use libfuzzer_sys::fuzz_target;

// The first byte picks the order, the rest are adjacency bits.
fuzz_target!(|data: &[u8]| {
    let Some((&n, bits)) = data.split_first() else {
        return;
    };
    let n = n as usize % 80;
    let mut g = Graph::empty(n);
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bits.get(k / 8).is_some_and(|b| b >> (k % 8) & 1 == 1) {
                g.add_edge(u, v);
            }
            k += 1;
        }
    }
    let text = graph6::encode(&g);
    assert_eq!(graph6::parse(&text).unwrap(), g);
});
