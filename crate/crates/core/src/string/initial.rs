use crate::error::Result;
use crate::linalg::AffineSubspace;

use super::chain::start_degree;
use super::{GradedFpModule, StringChain, StringIndex};

/// The minimal index among pure string injections sending `x_0` to `m0`,
/// together with a chain realizing it.
///
/// Every chain with a given word has its tips in an affine subspace that
/// avoids zero. At each step the smallest continuation is taken: a `t`-step
/// from the tips killed by `s` and hit by `t`; failing that, a stop at a tip
/// killed by `s` (pure, since no such tip is hit by `t`); otherwise an
/// `s`-step, which is then forced for every tip.
pub fn initial_index(m: &GradedFpModule, m0: &[u32]) -> Result<(StringIndex, StringChain)> {
    let start = start_degree(m, m0)?;
    let p = m.prime();
    let mut tips = vec![AffineSubspace::singleton(p, m0.to_vec())];
    let mut letters: Vec<bool> = Vec::new();
    let mut deg = start;
    let (last, censored) = loop {
        let cur = tips.last().expect("nonempty");
        if deg == m.top() {
            if m.extends() {
                break (cur.point().to_vec(), true);
            }
            // Nothing above the window: s vanishes and t hits nothing.
            break (cur.point().to_vec(), false);
        }
        let s = m.s(deg);
        let t = m.t(deg);
        let hit = t.column_space();
        match cur.intersect_kernel(s)? {
            Some(killed) => match killed.intersect(&hit)? {
                Some(liftable) => {
                    letters.push(false);
                    tips.push(
                        liftable
                            .preimage(t)?
                            .expect("tips inside the image of t have preimages"),
                    );
                }
                None => break (killed.point().to_vec(), false),
            },
            None => {
                letters.push(true);
                let next = cur.image(s)?;
                tips.push(next);
            }
        }
        deg += 1;
    };

    // Walk back down, choosing each earlier tip compatible with the later one.
    let n = letters.len();
    let mut elements = vec![Vec::new(); n + 1];
    elements[n] = last;
    for j in (0..n).rev() {
        let d = start + j;
        let next = &elements[j + 1];
        elements[j] = if letters[j] {
            tips[j]
                .solve_in(m.s(d), next)?
                .expect("the s-image of the tips contains the next tip")
        } else {
            m.t(d).apply(next)
        };
    }
    let index = StringIndex::from_letters(&letters, censored);
    Ok((index.clone(), StringChain { start, index, elements }))
}
