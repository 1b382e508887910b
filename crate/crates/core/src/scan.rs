//! Enumeration of ordered pairs of disjoint vertex sets.
//!
//! Every vertex takes a digit: 0 = in neither set, 1 = in `S`, 2 = in `T`.
//! Pairs come out in increasing order of the numeral `d_0 d_1 ... d_{n-1}`
//! with vertex 0 as the most significant digit, so the first violating pair a
//! scan meets is the lexicographically first one.

pub(crate) struct PairScan {
    digits: Vec<u8>,
    s: u64,
    t: u64,
    started: bool,
    done: bool,
}

impl PairScan {
    pub(crate) fn new(n: usize) -> PairScan {
        debug_assert!(n <= 64);
        PairScan {
            digits: vec![0; n],
            s: 0,
            t: 0,
            started: false,
            done: false,
        }
    }
}

impl Iterator for PairScan {
    type Item = (u64, u64);

    #[inline]
    fn next(&mut self) -> Option<(u64, u64)> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some((0, 0));
        }
        let mut v = self.digits.len();
        loop {
            if v == 0 {
                self.done = true;
                return None;
            }
            v -= 1;
            let bit = 1u64 << v;
            match self.digits[v] {
                0 => {
                    self.digits[v] = 1;
                    self.s |= bit;
                    return Some((self.s, self.t));
                }
                1 => {
                    self.digits[v] = 2;
                    self.s &= !bit;
                    self.t |= bit;
                    return Some((self.s, self.t));
                }
                _ => {
                    self.digits[v] = 0;
                    self.t &= !bit;
                }
            }
        }
    }
}
