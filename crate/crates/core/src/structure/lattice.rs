use std::fmt::Write as _;

use serde::Serialize;

use super::subgroup::Subgroup;
use crate::error::{Error, Result};
use crate::pc::PcGroup;

/// Groups up to this order get a full normal-subgroup enumeration; larger
/// thin groups use the sandwich property and enumerate layer by layer.
pub const BRUTE_FORCE_LATTICE_LIMIT: u128 = 15_625;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LayerShape {
    Chain,
    Diamond,
    Other,
}

impl LayerShape {
    pub fn as_str(&self) -> &'static str {
        match self {
            LayerShape::Chain => "chain",
            LayerShape::Diamond => "diamond",
            LayerShape::Other => "other",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerProfile {
    /// 1-based: the layer between `gamma_layer` and `gamma_{layer+1}`.
    pub layer: usize,
    pub width: usize,
    /// Normal subgroups `N` with `gamma_{layer+1} <= N <= gamma_layer`.
    pub count: usize,
    pub shape: LayerShape,
}

#[derive(Clone, Debug)]
pub struct LatticeProfile {
    pub layers: Vec<LayerProfile>,
    pub ends_with_chain: bool,
    /// All normal subgroups with their layer (largest `i` with `N <= gamma_i`).
    pub normal_subgroups: Vec<(Subgroup, usize)>,
    pub exhaustive: bool,
}

impl LatticeProfile {
    pub fn shapes(&self) -> Vec<LayerShape> {
        self.layers.iter().map(|l| l.shape).collect()
    }

    /// Compact shape string, e.g. `"DCDC"`.
    pub fn shape_word(&self) -> String {
        self.layers
            .iter()
            .map(|l| match l.shape {
                LayerShape::Chain => 'C',
                LayerShape::Diamond => 'D',
                LayerShape::Other => '?',
            })
            .collect()
    }

    /// A diamond on top, a chain of length 1, at most `p-2` diamonds, and
    /// possibly one more chain of length 1.
    pub fn matches_thin_grammar(&self, p: u32) -> bool {
        let w = self.shape_word();
        let Some(rest) = w.strip_prefix("DC") else {
            return false;
        };
        let rest = rest.strip_suffix('C').unwrap_or(rest);
        rest.chars().all(|c| c == 'D') && rest.len() <= p as usize - 2
    }

    /// DOT rendering: one node per normal subgroup labelled
    /// `N<order>@layer<i>`, one edge per covering relation.
    pub fn to_dot(&self, g: &PcGroup) -> String {
        let p = g.prime();
        let subs = &self.normal_subgroups;
        let mut out = String::from("digraph normal_subgroups {\n  rankdir=BT;\n");
        for (i, (s, layer)) in subs.iter().enumerate() {
            let _ = writeln!(out, "  n{} [label=\"N{}@layer{}\"];", i, s.order(p), layer);
        }
        for (i, (a, _)) in subs.iter().enumerate() {
            for (j, (b, _)) in subs.iter().enumerate() {
                if b.log_order() <= a.log_order() || !a.is_subgroup_of(g, b) {
                    continue;
                }
                let between = subs.iter().any(|(c, _)| {
                    c.log_order() > a.log_order()
                        && c.log_order() < b.log_order()
                        && a.is_subgroup_of(g, c)
                        && c.is_subgroup_of(g, b)
                });
                if !between {
                    let _ = writeln!(out, "  n{} -> n{};", i, j);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

impl PcGroup {
    /// Normal-subgroup lattice profile of a thin group.
    pub fn lattice_profile(&self) -> Result<LatticeProfile> {
        if !self.is_thin() {
            return Err(Error::precondition("lattice_profile requires a thin group"));
        }
        let lcs = self.lower_central_series();
        let c = lcs.widths.len();
        let layer_of = |n: &Subgroup| -> usize {
            (1..=c + 1)
                .rev()
                .find(|&i| n.is_subgroup_of(self, &self.gamma(i)))
                .unwrap_or(1)
        };
        let exhaustive = self.order() <= BRUTE_FORCE_LATTICE_LIMIT;
        let normals: Vec<Subgroup> = if exhaustive {
            self.normal_subgroups()?
        } else {
            let mut all = vec![Subgroup::trivial(self.rank())];
            for i in 1..=c {
                let top = &lcs.terms[i - 1];
                let bottom = &lcs.terms[i];
                all.push(top.clone());
                if lcs.widths[i - 1] == 2 {
                    let free: Vec<_> = top
                        .basis()
                        .iter()
                        .filter(|b| !bottom.has_lead(b.depth()))
                        .copied()
                        .collect();
                    let (a, b) = (free[0], free[1]);
                    let mut gens = vec![b];
                    for t in 0..self.prime() {
                        gens.push(self.multiply(&a, &self.power(&b, t as i64)));
                    }
                    for x in gens {
                        let mut seed = bottom.basis().to_vec();
                        seed.push(x);
                        all.push(self.generated_subgroup(&seed));
                    }
                }
            }
            all.sort();
            all
        };
        let layers: Vec<LayerProfile> = (1..=c)
            .map(|i| {
                let top = &lcs.terms[i - 1];
                let bottom = &lcs.terms[i];
                let count = normals
                    .iter()
                    .filter(|n| bottom.is_subgroup_of(self, n) && n.is_subgroup_of(self, top))
                    .count();
                let width = lcs.widths[i - 1];
                let shape = match (width, count) {
                    (1, 2) => LayerShape::Chain,
                    (2, k) if k == self.prime() as usize + 3 => LayerShape::Diamond,
                    _ => LayerShape::Other,
                };
                LayerProfile {
                    layer: i,
                    width,
                    count,
                    shape,
                }
            })
            .collect();
        let ends_with_chain = layers.last().is_some_and(|l| l.shape == LayerShape::Chain);
        let normal_subgroups = normals
            .into_iter()
            .map(|n| {
                let l = layer_of(&n);
                (n, l)
            })
            .collect();
        Ok(LatticeProfile {
            layers,
            ends_with_chain,
            normal_subgroups,
            exhaustive,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_abelian_is_one_diamond() {
        let g = PcGroup::parse("p 5\nn 2\n").unwrap();
        let lp = g.lattice_profile().unwrap();
        assert_eq!(lp.shape_word(), "D");
        assert_eq!(lp.layers[0].count, 8);
        assert_eq!(lp.normal_subgroups.len(), 8);
        let dot = lp.to_dot(&g);
        assert!(dot.contains("N25@layer1"));
        assert!(dot.contains("N1@layer2"));
        assert_eq!(dot.matches("->").count(), 12);
    }

    #[test]
    fn heisenberg_profile() {
        let g = PcGroup::parse("p 3\nn 3\ncomm 2 1 = g3\n").unwrap();
        let lp = g.lattice_profile().unwrap();
        assert_eq!(lp.shape_word(), "DC");
        assert!(lp.ends_with_chain);
        assert!(lp.matches_thin_grammar(3));
    }

    #[test]
    fn non_thin_rejected() {
        let g = PcGroup::parse("p 3\nn 3\n").unwrap();
        assert!(g.lattice_profile().is_err());
    }
}
