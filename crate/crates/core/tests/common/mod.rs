#![allow(dead_code)]

use asymcode::Channel;

/// Desk-scale instances of every family, small enough for the oracle.
pub fn desk_channels() -> Vec<Channel> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push(Channel::subset(n).unwrap());
    }
    for n in 1..=3 {
        for hi in 0..=4 {
            for lo in 0..=hi {
                out.push(Channel::multiset(n, lo, hi).unwrap());
            }
        }
    }
    for a in 2..=3 {
        for n in 1..=3 {
            out.push(Channel::zchannel(a, n).unwrap());
        }
    }
    for n in 1..=3 {
        out.push(Channel::subspace(2, n).unwrap());
        out.push(Channel::subspace(3, n).unwrap());
    }
    out.push(Channel::subspace(2, 4).unwrap());
    for (a, top) in [(2, 4), (3, 3)] {
        for hi in 0..=top {
            for lo in 0..=hi {
                out.push(Channel::deletion(a, lo, hi).unwrap());
            }
        }
    }
    for n in 1..=6 {
        for w in 0..=n {
            out.push(Channel::shift(n, w).unwrap());
        }
    }
    out
}
