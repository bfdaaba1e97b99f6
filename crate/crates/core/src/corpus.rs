//! The built-in knots, families and small chains used by the checks.

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::diagram::{braid_closure_to_long, UprightDiagram};
use crate::error::Result;
use crate::markov::TangleChain;
use crate::ring::{LaurentPoly, RatFun, RatMatrix};
use crate::twisting::TwistedFamily;

/// A knot given as a braid closure cut open at one strand, or directly as
/// an upright diagram.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Presentation {
    Braid { braid: BraidWord, cut: usize },
    Diagram(UprightDiagram),
}

impl Presentation {
    pub fn braid(n: usize, word: &[i32], cut: usize) -> Self {
        let braid = BraidWord::new(n, word.to_vec()).expect("corpus braids are valid");
        Self::Braid { braid, cut }
    }

    pub fn diagram(&self) -> Result<UprightDiagram> {
        match self {
            Self::Braid { braid, cut } => braid_closure_to_long(braid, *cut),
            Self::Diagram(d) => Ok(d.clone()),
        }
    }

    pub fn crossing_count(&self) -> usize {
        match self {
            Self::Braid { braid, .. } => braid.len(),
            Self::Diagram(d) => d.crossings.len(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CorpusKnot {
    pub name: String,
    pub presentation: Presentation,
    /// The presentation has only positive crossings.
    pub positive: bool,
}

fn knot(name: &str, n: usize, word: &[i32]) -> CorpusKnot {
    CorpusKnot {
        name: name.to_string(),
        presentation: Presentation::braid(n, word, 1),
        positive: !word.is_empty() && word.iter().all(|&k| k > 0),
    }
}

fn torus_word(p: usize, q: usize) -> Vec<i32> {
    let turn: Vec<i32> = (1..p as i32).collect();
    turn.repeat(q)
}

/// Unknots, `T(2,q)` for odd `q ≤ 9`, `T(3,4)`, `T(3,5)`, the figure-eight
/// knot, and the mirror of every chiral entry.
pub fn knots() -> Vec<CorpusKnot> {
    let mut out = vec![
        CorpusKnot {
            name: "unknot".into(),
            presentation: Presentation::Diagram(UprightDiagram::trivial()),
            positive: false,
        },
        knot("unknot-kink", 2, &[1]),
        knot("unknot-braid3", 3, &[1, 2]),
    ];
    let mut chiral = Vec::new();
    for q in [3, 5, 7, 9] {
        chiral.push(knot(&format!("T(2,{q})"), 2, &torus_word(2, q)));
    }
    chiral.push(knot("T(3,4)", 3, &torus_word(3, 4)));
    chiral.push(knot("T(3,5)", 3, &torus_word(3, 5)));
    for k in &chiral {
        let Presentation::Braid { braid, .. } = &k.presentation else { unreachable!() };
        out.push(knot(&format!("{}*", k.name), braid.strands(), braid.mirror().letters()));
    }
    out.extend(chiral);
    out.push(knot("4_1", 3, &[1, -2, 1, -2]));
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

pub fn find(name: &str) -> Option<CorpusKnot> {
    knots().into_iter().find(|k| k.name == name)
}

/// Presentations of the right-handed trefoil on two and three strands,
/// cut at every strand.
pub fn trefoil_presentations() -> Vec<Presentation> {
    let mut out = Vec::new();
    for (n, word) in [(2, vec![1, 1, 1]), (3, vec![1, 2, 1, 2]), (3, vec![2, 1, 2, 1]), (3, vec![1, 1, 1, 2])] {
        for cut in 1..=n {
            out.push(Presentation::braid(n, &word, cut));
        }
    }
    out
}

/// `T(2, 2t + 1)`.
pub fn torus_2_family() -> TwistedFamily {
    TwistedFamily::new(2, vec![1], vec![], (1, 2), 1).expect("valid family")
}

/// `T(3, 3t + 1)`.
pub fn torus_3_family() -> TwistedFamily {
    TwistedFamily::new(3, vec![1, 2], vec![], (1, 3), 1).expect("valid family")
}

/// `T(3, 3t + 2)`.
pub fn torus_3_2_family() -> TwistedFamily {
    TwistedFamily::new(3, vec![1, 2, 1, 2], vec![], (1, 3), 1).expect("valid family")
}

pub fn families() -> Vec<(&'static str, TwistedFamily)> {
    vec![("T(2,2t+1)", torus_2_family()), ("T(3,3t+1)", torus_3_family()), ("T(3,3t+2)", torus_3_2_family())]
}

fn mono(c: i64, e: i64) -> RatFun {
    RatFun::from_poly(LaurentPoly::monomial(c, e))
}

fn chain_from_edges(n: usize, edges: &[(usize, usize, RatFun)]) -> TangleChain {
    let mut a = RatMatrix::zeros(n, n);
    for (s, t, w) in edges {
        a.set(s - 1, t - 1, w.clone());
    }
    TangleChain::new((1..=n).collect(), a, None, None).expect("well-formed chain")
}

/// Small chains with an acyclic region that outside cycles pass through
/// more than once, as `(chain, region labels)`.
pub fn bad_multicycle_chains() -> Vec<(TangleChain, Vec<usize>)> {
    // 1, 2 outside; 3 inside; both outside states loop through 3.
    let star = chain_from_edges(3, &[(1, 3, mono(1, 1)), (3, 1, mono(2, 0)), (2, 3, mono(-1, 2)), (3, 2, mono(1, -1))]);
    // Three outside states around one region state, plus an outside edge.
    let star3 = chain_from_edges(
        4,
        &[
            (1, 4, mono(1, 1)),
            (4, 1, mono(1, 0)),
            (2, 4, mono(3, 0)),
            (4, 2, mono(1, 2)),
            (3, 4, mono(-1, 1)),
            (4, 3, mono(1, 0)),
            (1, 2, mono(1, 3)),
        ],
    );
    // A two-state path 3 → 4 inside, entered from and left to 1 and 2.
    let path = chain_from_edges(
        4,
        &[
            (1, 3, mono(1, 1)),
            (2, 3, mono(1, 0)),
            (3, 4, mono(2, 0)),
            (2, 4, mono(-1, 1)),
            (4, 1, mono(1, -1)),
            (4, 2, mono(1, 2)),
            (1, 1, mono(1, 4)),
        ],
    );
    vec![(star, vec![3]), (star3, vec![4]), (path, vec![3, 4])]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_sane() {
        let ks = knots();
        assert!(ks.len() >= 16);
        for k in &ks {
            assert!(k.presentation.diagram().is_ok(), "{}", k.name);
        }
        assert!(find("T(2,3)").unwrap().positive);
        assert!(!find("T(2,3)*").unwrap().positive);
        assert!(!find("4_1").unwrap().positive);
    }

    #[test]
    fn families_hit_torus_knots() {
        assert_eq!(torus_3_family().word_at(1).unwrap().letters(), torus_word(3, 4).as_slice());
        assert_eq!(torus_3_2_family().word_at(1).unwrap().letters(), torus_word(3, 5).as_slice());
    }

    #[test]
    fn bad_chains_cancel() {
        for (chain, region) in bad_multicycle_chains() {
            assert!(chain.bad_multicycle_sum(&region).unwrap().is_zero());
        }
    }
}
