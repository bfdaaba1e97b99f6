//! Upright long-knot diagrams and the compiler from braid closures.
//!
//! Strands are the arcs between crossings, labelled `1..=strands`. A
//! crossing records the incoming and outgoing labels of its over and under
//! arcs. Each strand also carries a rotation number `φ_k`, its net number of
//! counterclockwise turns.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::ring::{LaurentPoly, PolyMatrix};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Crossing {
    pub sign: i8,
    /// Incoming over strand.
    pub i: usize,
    /// Incoming under strand.
    pub j: usize,
    /// Outgoing over strand.
    pub ip: usize,
    /// Outgoing under strand.
    pub jp: usize,
}

impl Crossing {
    pub fn labels(&self) -> [usize; 4] {
        [self.i, self.j, self.ip, self.jp]
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct UprightDiagram {
    pub strands: usize,
    pub entry: usize,
    pub exit: usize,
    pub crossings: Vec<Crossing>,
    /// Nonzero rotation numbers by strand label.
    #[serde(default)]
    pub rotations: BTreeMap<usize, i64>,
}

impl UprightDiagram {
    /// The crossingless long unknot.
    pub fn trivial() -> Self {
        Self { strands: 1, entry: 1, exit: 1, crossings: Vec::new(), rotations: BTreeMap::new() }
    }

    /// Checks labels and that the crossings trace one arc from entry to exit
    /// through every strand.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDiagram(msg));
        let n = self.strands;
        if n == 0 {
            return bad("no strands".into());
        }
        let in_range = |l: usize| (1..=n).contains(&l);
        if !in_range(self.entry) || !in_range(self.exit) {
            return bad(format!("entry {} or exit {} outside 1..={n}", self.entry, self.exit));
        }
        if let Some(k) = self.rotations.keys().find(|&&k| !in_range(k)) {
            return bad(format!("rotation given for unknown strand {k}"));
        }
        // next[l] is the strand a walker following the knot reaches after l.
        let mut next: Vec<Option<usize>> = vec![None; n + 1];
        let mut produced = vec![false; n + 1];
        for (idx, c) in self.crossings.iter().enumerate() {
            if c.sign != 1 && c.sign != -1 {
                return bad(format!("crossing {idx} has sign {}", c.sign));
            }
            let ls = c.labels();
            if let Some(l) = ls.iter().find(|&&l| !in_range(l)) {
                return bad(format!("crossing {idx} references label {l} outside 1..={n}"));
            }
            // An outgoing arc may come straight back as an incoming one (a
            // kink), so only the two inputs and the two outputs must differ.
            if c.i == c.j || c.ip == c.jp || c.i == c.ip || c.j == c.jp {
                return bad(format!("crossing {idx} repeats a label"));
            }
            for (from, to) in [(c.i, c.ip), (c.j, c.jp)] {
                if next[from].is_some() {
                    return bad(format!("strand {from} enters two crossings"));
                }
                if produced[to] {
                    return bad(format!("strand {to} leaves two crossings"));
                }
                next[from] = Some(to);
                produced[to] = true;
            }
        }
        if produced[self.entry] {
            return bad(format!("entry strand {} leaves a crossing", self.entry));
        }
        if next[self.exit].is_some() {
            return bad(format!("exit strand {} enters a crossing", self.exit));
        }
        let mut seen = 1;
        let mut l = self.entry;
        while let Some(m) = next[l] {
            seen += 1;
            if seen > n {
                return bad("traversal does not terminate".into());
            }
            l = m;
        }
        if l != self.exit || seen != n {
            return bad(format!("traversal from the entry covers {seen} of {n} strands"));
        }
        Ok(())
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| i64::from(c.sign)).sum()
    }

    pub fn rotation_total(&self) -> i64 {
        self.rotations.values().sum()
    }

    pub fn rotation(&self, label: usize) -> i64 {
        self.rotations.get(&label).copied().unwrap_or(0)
    }

    /// The transition matrix `A`, indexed by `label - 1`.
    pub fn transition_matrix(&self) -> Result<PolyMatrix> {
        self.validate()?;
        let mut a = PolyMatrix::zeros(self.strands, self.strands);
        for c in &self.crossings {
            add_crossing_weights(&mut a, c, |l| l - 1);
        }
        Ok(a)
    }

    /// Reflection through the page: signs and rotations negate.
    pub fn mirror(&self) -> Self {
        let mut m = self.clone();
        for c in &mut m.crossings {
            c.sign = -c.sign;
        }
        for v in m.rotations.values_mut() {
            *v = -*v;
        }
        m
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let d: Self = serde_json::from_str(text)?;
        d.validate()?;
        Ok(d)
    }
}

/// Adds `A_c` for one crossing: `a_{i,i⁺} = T^σ`, `a_{i,j⁺} = 1 − T^σ`,
/// `a_{j,j⁺} = 1`.
pub(crate) fn add_crossing_weights(a: &mut PolyMatrix, c: &Crossing, idx: impl Fn(usize) -> usize) {
    let ts = LaurentPoly::t_pow(i64::from(c.sign));
    let (i, ip, j, jp) = (idx(c.i), idx(c.ip), idx(c.j), idx(c.jp));
    let cur = a.get(i, ip).clone();
    a.set(i, ip, cur + &ts);
    let cur = a.get(i, jp).clone();
    a.set(i, jp, cur + &(LaurentPoly::one() - &ts));
    let cur = a.get(j, jp).clone();
    a.set(j, jp, cur + &LaurentPoly::one());
}

/// One horizontal slice of a braid-like tangle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Layer {
    /// A braid generator, as in [`BraidWord`].
    Letter(i32),
    /// A junction on positions `lo..lo + width` (1-based) that keeps each
    /// walker's position but may redistribute it among the outputs.
    Vertex { lo: usize, width: usize },
}

/// Strand labels entering and leaving a vertex layer, by position offset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TracedVertex {
    pub layer: usize,
    pub lo: usize,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
}

/// A layered long tangle with every arc labelled.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Traced {
    pub strands: usize,
    pub entry: usize,
    pub exit: usize,
    /// Crossings in layer order, bottom to top.
    pub crossings: Vec<Crossing>,
    pub crossing_layers: Vec<usize>,
    pub vertices: Vec<TracedVertex>,
    pub rotations: BTreeMap<usize, i64>,
    /// For each label, the layer whose event created it (`None` for the
    /// entry) and the layer whose event consumes it (`None` for the exit).
    pub born: Vec<Option<usize>>,
    pub dies: Vec<Option<usize>>,
    /// Strand position of each label, indexed by label.
    pub position: Vec<usize>,
}

impl Traced {
    /// The diagram, when there are no vertex layers.
    pub fn to_diagram(&self) -> Option<UprightDiagram> {
        self.vertices.is_empty().then(|| UprightDiagram {
            strands: self.strands,
            entry: self.entry,
            exit: self.exit,
            crossings: self.crossings.clone(),
            rotations: self.rotations.clone(),
        })
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| i64::from(c.sign)).sum()
    }

    pub fn rotation_total(&self) -> i64 {
        self.rotations.values().sum()
    }

    /// Labels meeting the layers `from..to`, split into inputs, interior
    /// and outputs (each sorted).
    pub fn region(&self, from: usize, to: usize) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let inside = |l: Option<usize>| l.is_some_and(|x| (from..to).contains(&x));
        let (mut inputs, mut interior, mut outputs) = (Vec::new(), Vec::new(), Vec::new());
        for label in 1..=self.strands {
            match (inside(self.born[label]), inside(self.dies[label])) {
                (true, true) => interior.push(label),
                (false, true) => inputs.push(label),
                (true, false) => outputs.push(label),
                (false, false) => {}
            }
        }
        (inputs, interior, outputs)
    }
}

/// Follows the long knot through `layers` on `n` positions.
///
/// The walk starts at the bottom of position `cut` and each crossing or
/// vertex it meets starts a new label, so labels increase along the knot.
/// Reaching the top at any other position, the walker returns to the
/// bottom along a closure arc: positions left of the cut close around the
/// left side of the braid (one counterclockwise turn), positions right of
/// it around the right side (one clockwise turn). The cut strand's own ends
/// run straight down and up.
pub fn trace(n: usize, layers: &[Layer], cut: usize) -> Result<Traced> {
    if cut == 0 || cut > n {
        return Err(Error::InvalidBraid(format!("cut {cut} outside 1..={n}")));
    }
    let mut letters = Vec::new();
    for layer in layers {
        match *layer {
            Layer::Letter(k) => letters.push(k),
            Layer::Vertex { lo, width } => {
                if lo == 0 || width < 2 || lo + width - 1 > n {
                    return Err(Error::InvalidBraid(format!("vertex {lo}+{width} does not fit {n} strands")));
                }
            }
        }
    }
    let word = BraidWord::new(n, letters)?;
    let components = word.closure_components();
    if components != 1 {
        return Err(Error::NotAKnot(components));
    }

    #[derive(Default, Clone, Copy)]
    struct Half {
        over: Option<(usize, usize)>,
        under: Option<(usize, usize)>,
    }
    let mut halves = vec![Half::default(); layers.len()];
    let mut vertex_io: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    let mut rotations = BTreeMap::new();
    let mut born = vec![None, None];
    let mut position = vec![0, cut];
    let mut dies = vec![None];
    let mut label = 1;
    let mut pos = cut;
    loop {
        for (li, layer) in layers.iter().enumerate() {
            let moved = match *layer {
                Layer::Letter(k) => {
                    let a = k.unsigned_abs() as usize;
                    if pos != a && pos != a + 1 {
                        continue;
                    }
                    let over = (k > 0) == (pos == a);
                    let to = if pos == a { a + 1 } else { a };
                    let next = label + 1;
                    let slot = if over { &mut halves[li].over } else { &mut halves[li].under };
                    *slot = Some((label, next));
                    to
                }
                Layer::Vertex { lo, width } => {
                    if pos < lo || pos >= lo + width {
                        continue;
                    }
                    let io = vertex_io.entry(li).or_insert_with(|| (vec![0; width], vec![0; width]));
                    io.0[pos - lo] = label;
                    io.1[pos - lo] = label + 1;
                    pos
                }
            };
            dies.push(Some(li));
            born.push(Some(li));
            position.push(moved);
            label += 1;
            pos = moved;
        }
        if pos == cut {
            break;
        }
        *rotations.entry(label).or_insert(0) += if pos < cut { 1 } else { -1 };
    }
    dies.push(None);
    rotations.retain(|_, v| *v != 0);

    let mut crossings = Vec::new();
    let mut crossing_layers = Vec::new();
    for (li, (layer, h)) in layers.iter().zip(&halves).enumerate() {
        if let Layer::Letter(k) = *layer {
            let (i, ip) = h.over.expect("knot closure visits every crossing");
            let (j, jp) = h.under.expect("knot closure visits every crossing");
            crossings.push(Crossing { sign: k.signum() as i8, i, j, ip, jp });
            crossing_layers.push(li);
        }
    }
    let vertices = vertex_io
        .into_iter()
        .map(|(li, (inputs, outputs))| {
            let Layer::Vertex { lo, .. } = layers[li] else { unreachable!() };
            TracedVertex { layer: li, lo, inputs, outputs }
        })
        .collect();
    Ok(Traced {
        strands: label,
        entry: 1,
        exit: label,
        crossings,
        crossing_layers,
        vertices,
        rotations,
        born,
        dies,
        position,
    })
}

/// The long-knot diagram of the closure of `w`, opened at bottom position
/// `cut` (1-based). See [`trace`] for the layout.
pub fn braid_closure_to_long(w: &BraidWord, cut: usize) -> Result<UprightDiagram> {
    let layers: Vec<Layer> = w.letters().iter().map(|&k| Layer::Letter(k)).collect();
    let traced = trace(w.strands(), &layers, cut)?;
    Ok(traced.to_diagram().expect("no vertex layers"))
}
