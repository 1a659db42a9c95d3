//! Every string over small alphabets, each prefix checked once by forking the
//! harness at every branch of the enumeration.

use nrt_core::conformance::{Checks, Harness};

fn explore(h: &Harness, alphabet: &[u8], max_len: usize, checked: &mut usize) {
    if let Err(m) = h.check_prefix() {
        panic!("{:?}: {m}", String::from_utf8_lossy(h.text()));
    }
    *checked += 1;
    if h.text().len() == max_len {
        return;
    }
    for &c in alphabet {
        let mut next = h.clone();
        if let Err(m) = next.push(c) {
            panic!("{:?}: {m}", String::from_utf8_lossy(next.text()));
        }
        explore(&next, alphabet, max_len, checked);
    }
}

#[test]
fn binary_up_to_fourteen() {
    let mut checked = 0;
    explore(&Harness::new(Checks::default()), b"ab", 14, &mut checked);
    assert_eq!(checked, (1 << 15) - 1);
}

#[test]
fn ternary_up_to_ten() {
    let mut checked = 0;
    explore(&Harness::new(Checks::default()), b"abc", 10, &mut checked);
    assert_eq!(checked, (3usize.pow(11) - 1) / 2);
}
