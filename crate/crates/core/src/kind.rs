//! Graph kind descriptors and the kind-spec grammar.
//!
//! A kind-spec is a list of property flags separated by `,` or `+`, e.g.
//! `directed,attributed,dynamic`. Flags not mentioned take their default:
//! directed, no hyperedges, no multiplicities, homogeneous, unattributed,
//! static. The vocabulary is fixed; unknown tokens are errors.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Attribution {
    #[default]
    None,
    /// Every attribute is an integer.
    IntegerOnly,
    Full,
}

impl Attribution {
    pub fn is_attributed(self) -> bool {
        self != Attribution::None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphKind {
    pub directed: bool,
    pub hyper: bool,
    pub multi_node: bool,
    pub multi_edge: bool,
    pub hetero_node: bool,
    pub hetero_edge: bool,
    pub attributed: Attribution,
    pub dynamic: bool,
}

impl Default for GraphKind {
    fn default() -> Self {
        GraphKind {
            directed: true,
            hyper: false,
            multi_node: false,
            multi_edge: false,
            hetero_node: false,
            hetero_edge: false,
            attributed: Attribution::None,
            dynamic: false,
        }
    }
}

impl GraphKind {
    pub fn is_multi(&self) -> bool {
        self.multi_node || self.multi_edge
    }

    pub fn is_hetero(&self) -> bool {
        self.hetero_node || self.hetero_edge
    }

    pub fn is_attributed(&self) -> bool {
        self.attributed.is_attributed()
    }

    /// Every kind the flag vocabulary can express, in a fixed order.
    pub fn all() -> Vec<GraphKind> {
        let mut out = Vec::with_capacity(384);
        for bits in 0u32..128 {
            for attributed in [Attribution::None, Attribution::IntegerOnly, Attribution::Full] {
                let bit = |i: u32| bits & (1 << i) != 0;
                out.push(GraphKind {
                    directed: bit(0),
                    hyper: bit(1),
                    multi_node: bit(2),
                    multi_edge: bit(3),
                    hetero_node: bit(4),
                    hetero_edge: bit(5),
                    attributed,
                    dynamic: bit(6),
                });
            }
        }
        out
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tokens = vec![if self.directed { "directed" } else { "undirected" }];
        let flags = [
            (self.hyper, "hyper"),
            (self.multi_node, "multi-node"),
            (self.multi_edge, "multi-edge"),
            (self.hetero_node, "hetero-node"),
            (self.hetero_edge, "hetero-edge"),
            (self.attributed == Attribution::IntegerOnly, "int-attributed"),
            (self.attributed == Attribution::Full, "attributed"),
            (self.dynamic, "dynamic"),
        ];
        tokens.extend(flags.iter().filter(|(on, _)| *on).map(|(_, t)| *t));
        f.write_str(&tokens.join(","))
    }
}

impl FromStr for GraphKind {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        #[derive(Default)]
        struct Seen {
            directed: Option<bool>,
            hyper: Option<bool>,
            multi_node: Option<bool>,
            multi_edge: Option<bool>,
            hetero_node: Option<bool>,
            hetero_edge: Option<bool>,
            attributed: Option<Attribution>,
            dynamic: Option<bool>,
        }

        fn set<T: PartialEq + Copy>(slot: &mut Option<T>, v: T, token: &str) -> Result<(), Error> {
            match slot {
                Some(old) if *old != v => Err(Error::KindSpec(format!(
                    "'{token}' conflicts with an earlier flag"
                ))),
                _ => {
                    *slot = Some(v);
                    Ok(())
                }
            }
        }

        let mut seen = Seen::default();
        let mut any = false;
        for token in spec.split([',', '+']).map(str::trim) {
            if token.is_empty() {
                return Err(Error::KindSpec(format!("empty flag in '{spec}'")));
            }
            any = true;
            match token {
                "directed" => set(&mut seen.directed, true, token)?,
                "undirected" => set(&mut seen.directed, false, token)?,
                "hyper" => set(&mut seen.hyper, true, token)?,
                "nonhyper" => set(&mut seen.hyper, false, token)?,
                "multi" => {
                    set(&mut seen.multi_node, true, token)?;
                    set(&mut seen.multi_edge, true, token)?;
                }
                "multi-node" => set(&mut seen.multi_node, true, token)?,
                "multi-edge" => set(&mut seen.multi_edge, true, token)?,
                "simple" => {
                    set(&mut seen.multi_node, false, token)?;
                    set(&mut seen.multi_edge, false, token)?;
                }
                "heterogeneous" | "hetero" => {
                    set(&mut seen.hetero_node, true, token)?;
                    set(&mut seen.hetero_edge, true, token)?;
                }
                "hetero-node" => set(&mut seen.hetero_node, true, token)?,
                "hetero-edge" => set(&mut seen.hetero_edge, true, token)?,
                "homogeneous" => {
                    set(&mut seen.hetero_node, false, token)?;
                    set(&mut seen.hetero_edge, false, token)?;
                }
                "attributed" => set(&mut seen.attributed, Attribution::Full, token)?,
                "int-attributed" | "integer-attributed" => {
                    set(&mut seen.attributed, Attribution::IntegerOnly, token)?
                }
                "unattributed" => set(&mut seen.attributed, Attribution::None, token)?,
                "dynamic" => set(&mut seen.dynamic, true, token)?,
                "static" => set(&mut seen.dynamic, false, token)?,
                other => return Err(Error::KindSpec(format!("unknown flag '{other}'"))),
            }
        }
        if !any {
            return Err(Error::KindSpec("empty kind spec".into()));
        }
        let d = GraphKind::default();
        Ok(GraphKind {
            directed: seen.directed.unwrap_or(d.directed),
            hyper: seen.hyper.unwrap_or(d.hyper),
            multi_node: seen.multi_node.unwrap_or(d.multi_node),
            multi_edge: seen.multi_edge.unwrap_or(d.multi_edge),
            hetero_node: seen.hetero_node.unwrap_or(d.hetero_node),
            hetero_edge: seen.hetero_edge.unwrap_or(d.hetero_edge),
            attributed: seen.attributed.unwrap_or(d.attributed),
            dynamic: seen.dynamic.unwrap_or(d.dynamic),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_round_trips_for_every_kind() {
        let all = GraphKind::all();
        assert_eq!(all.len(), 384);
        for k in all {
            assert_eq!(k.to_string().parse::<GraphKind>().unwrap(), k);
        }
    }

    #[test]
    fn plus_and_comma_are_both_separators() {
        let a: GraphKind = "attributed+directed".parse().unwrap();
        let b: GraphKind = "directed, attributed".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.attributed, Attribution::Full);
    }

    #[test]
    fn unknown_and_conflicting_flags_are_errors() {
        assert!("directed,weighted".parse::<GraphKind>().is_err());
        assert!("directed,undirected".parse::<GraphKind>().is_err());
        assert!("attributed,unattributed".parse::<GraphKind>().is_err());
        assert!("".parse::<GraphKind>().is_err());
        assert!("multi,simple".parse::<GraphKind>().is_err());
    }

    #[test]
    fn defaults_fill_unmentioned_flags() {
        let k: GraphKind = "unattributed".parse().unwrap();
        assert_eq!(k, GraphKind::default());
        let k: GraphKind = "heterogeneous".parse().unwrap();
        assert!(k.hetero_node && k.hetero_edge && k.directed);
    }
}
