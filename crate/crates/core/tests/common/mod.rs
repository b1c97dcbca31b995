#![allow(dead_code)]

use pentanetz_core::pitch::{AffineOperator, OperatorDescriptor as D};

pub fn op(d: D, n: usize) -> AffineOperator {
    d.to_operator(n, 12).expect("valid descriptor")
}

pub fn p(i: usize, j: usize, n: usize) -> AffineOperator {
    op(D::p(i, j), n)
}

/// Four index draws in `1..=n`, used to instantiate the operator identities.
#[derive(Debug, Clone, Copy)]
pub struct Draw {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub h: usize,
    pub k: usize,
    pub u: usize,
    pub v: usize,
    pub shift: i64,
}

/// Evaluates every operator identity on one draw; returns `(name, holds)` pairs.
/// Identities whose index hypotheses fail on the draw are skipped.
pub fn identities(d: &Draw) -> Vec<(&'static str, bool)> {
    let n = d.n;
    let mut out = Vec::new();
    let id = AffineOperator::identity(n, 12);
    let (i, j, h, k) = (d.i, d.j, d.h, d.k);
    let t = |i, j, h, k| op(D::ContextualTranslation { i, j, h, k }, n);
    let sigma = |e: i64| op(D::Rotation { k: e }, n);
    let tau = |a, b| op(D::Transposition { i: a, j: b }, n);
    let tm = op(D::Translation { k: d.shift }, n);
    let inv = op(D::Inversion { k: 0 }, n);
    if i != j && h != k {
        out.push((
            "p_ij p_hk = T^hk_ij",
            p(i, j, n).compose(&p(h, k, n)) == t(i, j, h, k),
        ));
        out.push((
            "(p_ij p_hk)^12 = Id",
            p(i, j, n).compose(&p(h, k, n)).pow(12) == id,
        ));
    }
    if i != j {
        out.push(("p_ij p_ij = Id", p(i, j, n).compose(&p(i, j, n)) == id));
        out.push((
            "p_ij T_m = T_m p_ij",
            p(i, j, n).compose(&tm) == tm.compose(&p(i, j, n)),
        ));
        out.push((
            "p_ij I = I p_ij",
            p(i, j, n).compose(&inv) == inv.compose(&p(i, j, n)),
        ));
    }
    let ctr = t(i, j, h, k);
    out.push((
        "T^hk_ij T_m = T_m T^hk_ij",
        ctr.compose(&tm) == tm.compose(&ctr),
    ));
    out.push((
        "T^hk_ij I = I T^hk_ij",
        ctr.compose(&inv) == inv.compose(&ctr),
    ));
    if d.u != d.v {
        let puv = p(d.u, d.v, n);
        out.push((
            "p_uv T^hk_ij p_uv = (T^hk_ij)^-1",
            puv.compose(&ctr).compose(&puv) == t(h, k, i, j),
        ));
        out.push((
            "T^hk_ij (T^hk_ij)^-1 = Id",
            ctr.compose(&t(h, k, i, j)) == id,
        ));
    }
    // σ^{a−1} p_{a,a+1} = p_12 σ^{a−1}, with p_{n,1} at a = n.
    let a = i.max(2);
    let next = if a == n { 1 } else { a + 1 };
    out.push((
        "s^(i-1) p_i,i+1 = p_12 s^(i-1)",
        sigma(a as i64 - 1).compose(&p(a, next, n)) == p(1, 2, n).compose(&sigma(a as i64 - 1)),
    ));
    let mut sorted = [i, j, h];
    sorted.sort();
    let [hh, ii, jj] = sorted;
    if hh < ii && ii < jj {
        out.push((
            "tau_ij p_hj = p_hi tau_ij",
            tau(ii, jj).compose(&p(hh, jj, n)) == p(hh, ii, n).compose(&tau(ii, jj)),
        ));
    }
    if k >= 3 {
        out.push((
            "tau_2i p_1i = p_12 tau_2i",
            tau(2, k).compose(&p(1, k, n)) == p(1, 2, n).compose(&tau(2, k)),
        ));
    }
    out
}
