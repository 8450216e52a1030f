//! Shared fixtures for the criterion benches.

use girthlab::apfree::greedy_3ap_free;
use girthlab::regular::build_h_reg;
use girthlab::semiregular::build_h_s;
use girthlab::ParityCheckMatrix;

pub fn regular(wc: usize, wr: usize) -> ParityCheckMatrix {
    build_h_reg(wc, wr).expect("valid parameters").matrix
}

pub fn semiregular(t: usize) -> ParityCheckMatrix {
    build_h_s(t, greedy_3ap_free(t).terms()).expect("greedy sequences are 3-AP-free")
}
