//! Fixed inputs shared by the benchmarks.

use multstrata::{gen_corpus, Frame, HomogeneousForm};

/// Deterministic corpus form of degree `d` in `r + 1` variables with
/// multiplicity `m` at the origin.
pub fn corpus_form(r: usize, d: u32, m: u32) -> HomogeneousForm {
    gen_corpus(r, d, m, 1, 0x5eed).expect("valid corpus parameters").remove(0)
}

/// Dense form: every monomial of degree `d`, coefficients 1..
pub fn dense_form(r: usize, d: u32) -> HomogeneousForm {
    let mut terms = Vec::new();
    let mut e = vec![0u32; r + 1];
    monomials(&mut e, 0, d, &mut terms);
    let terms: Vec<(i64, &[u32])> = terms.iter().enumerate().map(|(i, e)| (i as i64 + 1, e.as_slice())).collect();
    HomogeneousForm::from_int_terms(r, d, &terms).expect("nonzero form")
}

fn monomials(e: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Vec<u32>>) {
    if i + 1 == e.len() {
        e[i] = left;
        out.push(e.clone());
        return;
    }
    for k in 0..=left {
        e[i] = k;
        monomials(e, i + 1, left - k, out);
    }
}

/// Unimodular frame with small off-diagonal entries.
pub fn shear(r: usize) -> Frame {
    let rows: Vec<Vec<i64>> = (0..=r)
        .map(|i| (0..=r).map(|j| if i == j { 1 } else if j < i { (i + j) as i64 % 3 - 1 } else { 0 }).collect())
        .collect();
    Frame::from_int_rows(&rows).expect("unimodular")
}
