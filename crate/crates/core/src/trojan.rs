//! Trojans modelled as contiguous Toffoli blocks inserted at one gate slot.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bits::BitPattern;
use crate::circuit::{check_exhaustive, exhaustive_limit, Circuit, ToffoliGate};
use crate::error::{Error, Result};

/// On-disk Trojan descriptor: `{"position": .., "gates": [{"controls": [..], "target": ..}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrojanDescriptor {
    pub position: usize,
    pub gates: Vec<ToffoliGate>,
}

/// A Trojan payload together with the host slot it is inserted at.
#[derive(Clone, PartialEq, Eq)]
pub struct TrojanSpec {
    payload: Circuit,
    position: usize,
}

impl TrojanSpec {
    pub fn new(width: usize, gates: Vec<ToffoliGate>, position: usize) -> Result<Self> {
        if gates.is_empty() {
            return Err(Error::Construction(
                "a Trojan needs at least one gate".into(),
            ));
        }
        Ok(Self {
            payload: Circuit::new(width, gates)?,
            position,
        })
    }

    pub fn from_descriptor(width: usize, d: TrojanDescriptor) -> Result<Self> {
        Self::new(width, d.gates, d.position)
    }

    pub fn descriptor(&self) -> TrojanDescriptor {
        TrojanDescriptor {
            position: self.position,
            gates: self.gates().to_vec(),
        }
    }

    pub fn width(&self) -> usize {
        self.payload.lines()
    }

    pub fn gates(&self) -> &[ToffoliGate] {
        self.payload.gates()
    }

    pub fn position(&self) -> usize {
        self.position
    }

    pub fn at(&self, position: usize) -> Self {
        Self {
            payload: self.payload.clone(),
            position,
        }
    }

    /// The payload as a stand-alone circuit.
    pub fn payload(&self) -> &Circuit {
        &self.payload
    }

    /// Composite function of the payload on a packed value.
    pub(crate) fn eval(&self, value: u64) -> u64 {
        self.payload.eval(value)
    }
}

impl fmt::Debug for TrojanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TrojanSpec")
            .field("width", &self.width())
            .field("position", &self.position)
            .field("gates", &self.gates())
            .finish()
    }
}

/// Splices the Trojan into the host at its slot.
pub fn insert(host: &Circuit, t: &TrojanSpec) -> Result<Circuit> {
    if t.width() != host.lines() {
        return Err(Error::Insertion(format!(
            "{}-line Trojan in a {}-line host",
            t.width(),
            host.lines()
        )));
    }
    if t.position() > host.gate_count() {
        return Err(Error::Insertion(format!(
            "slot {} beyond the {} slots of the host",
            t.position(),
            host.gate_count() + 1
        )));
    }
    let pos = t.position();
    let mut gates = Vec::with_capacity(host.gate_count() + t.gates().len());
    gates.extend_from_slice(&host.gates()[..pos]);
    gates.extend_from_slice(t.gates());
    gates.extend_from_slice(&host.gates()[pos..]);
    host.with_gates(gates)
}

/// Patterns `a` at the Trojan input with `T(a) != a`, in increasing order.
pub fn triggering_patterns(t: &TrojanSpec) -> Result<Vec<BitPattern>> {
    check_exhaustive(t.width(), exhaustive_limit())?;
    let w = t.width();
    Ok((0..1u64 << w)
        .filter(|&a| t.eval(a) != a)
        .map(|a| BitPattern::from_raw(w, a))
        .collect())
}

pub(crate) fn triggering_count(t: &TrojanSpec) -> u64 {
    (0..1u64 << t.width()).filter(|&a| t.eval(a) != a).count() as u64
}

/// Fraction of input patterns the Trojan passes unchanged.
pub fn difficulty(t: &TrojanSpec) -> Result<Ratio<u64>> {
    check_exhaustive(t.width(), exhaustive_limit())?;
    let total = 1u64 << t.width();
    Ok(Ratio::new(total - triggering_count(t), total))
}

/// Structural shape of a Trojan payload.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TrojanTag {
    Single,
    TwoDistinctTargets,
    TwoSharedTarget,
    TwoDummy,
    /// All three gates share a target.
    Three1,
    /// First two gates share a target.
    Three2,
    /// Last two gates share a target.
    Three3,
    /// First and last gates share a target.
    Three4,
    /// Three distinct targets.
    Three5,
    /// `t T t^-1` with `|t| >= 2` and `t`'s targets among `T`'s controls.
    SymmetricTTinv,
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrojanClass {
    pub tag: TrojanTag,
    /// The composite function is the identity.
    pub functionally_null: bool,
}

fn is_symmetric(gates: &[ToffoliGate]) -> bool {
    if gates.len() < 5 || gates.len().is_multiple_of(2) {
        return false;
    }
    let k = gates.len() / 2;
    let (left, rest) = gates.split_at(k);
    let (middle, right) = rest.split_first().expect("odd length");
    left.iter().eq(right.iter().rev())
        && left.iter().all(|g| middle.controls().contains(&g.target()))
}

/// Cancels adjacent identical gates until none remain.
fn cancels_structurally(gates: &[ToffoliGate]) -> bool {
    let mut stack: Vec<&ToffoliGate> = Vec::new();
    for g in gates {
        if stack.last() == Some(&g) {
            stack.pop();
        } else {
            stack.push(g);
        }
    }
    stack.is_empty()
}

/// Classifies the payload. Nullity is decided exhaustively when the width
/// is within the exhaustive limit and by adjacent-pair cancellation above it.
pub fn classify(t: &TrojanSpec) -> TrojanClass {
    let g = t.gates();
    let tag = match g.len() {
        1 => TrojanTag::Single,
        2 if g[0] == g[1] => TrojanTag::TwoDummy,
        2 if g[0].target() == g[1].target() => TrojanTag::TwoSharedTarget,
        2 => TrojanTag::TwoDistinctTargets,
        3 => {
            let (a, b, c) = (g[0].target(), g[1].target(), g[2].target());
            match (a == b, b == c, a == c) {
                (true, true, _) => TrojanTag::Three1,
                (true, false, _) => TrojanTag::Three2,
                (false, true, _) => TrojanTag::Three3,
                (false, false, true) => TrojanTag::Three4,
                (false, false, false) => TrojanTag::Three5,
            }
        }
        _ if is_symmetric(g) => TrojanTag::SymmetricTTinv,
        _ => TrojanTag::General,
    };
    let functionally_null = if t.width() <= exhaustive_limit() {
        triggering_count(t) == 0
    } else {
        cancels_structurally(g)
    };
    TrojanClass {
        tag,
        functionally_null,
    }
}

/// Builds the symmetric Trojan `t · middle · t^-1`.
///
/// `outer` must have at least two gates sharing one control set, with
/// distinct targets that all feed `middle` as controls.
pub fn make_symmetric(
    width: usize,
    outer: &[ToffoliGate],
    middle: ToffoliGate,
    position: usize,
) -> Result<TrojanSpec> {
    let fail = |what: &str| Err(Error::Construction(what.to_string()));
    if outer.len() < 2 {
        return fail("outer part needs at least two gates");
    }
    let shared = outer[0].controls();
    if outer.iter().any(|g| g.controls() != shared) {
        return fail("outer gates must share one control set");
    }
    let mut targets: Vec<usize> = outer.iter().map(|g| g.target()).collect();
    targets.sort_unstable();
    targets.dedup();
    if targets.len() != outer.len() {
        return fail("outer gates must have distinct targets");
    }
    if targets.iter().any(|t| !middle.controls().contains(t)) {
        return fail("every outer target must be a control of the middle gate");
    }
    let mut gates = outer.to_vec();
    gates.push(middle);
    gates.extend(outer.iter().rev().cloned());
    TrojanSpec::new(width, gates, position)
}

/// A five-line symmetric Trojan: the outer gates flip lines 0 and 1 when
/// lines 2 and 3 are high, and the middle gate targets line 4 under
/// controls 0..=3.
pub fn five_line_symmetric(position: usize) -> TrojanSpec {
    let outer = [
        ToffoliGate::new([2, 3], 0).expect("valid"),
        ToffoliGate::new([2, 3], 1).expect("valid"),
    ];
    let middle = ToffoliGate::new([0, 1, 2, 3], 4).expect("valid");
    make_symmetric(5, &outer, middle, position).expect("valid construction")
}
