//! The line-oriented text format for graphs, chains and reports.
//!
//! ```text
//! kindred-graph 1
//! kind undirected,attributed
//! alphabet a
//! node 1 = a
//! node 2 = σ
//! edge 1 -> 2 = (a, 1)
//! edge 2 -> 1 = (a, 1)
//! ```
//!
//! After the header and the `kind` line come optional alphabet
//! declarations (`alphabet`, `node-types`, `edge-types`, each a list of
//! symbols), then records. A record is one of
//!
//! ```text
//! node <key> [#<occurrence>] [= <attr>]
//! edge <key> -> <key> [:<type>] [#<occurrence>] [= <attr>]
//! hyperedge {<key>:<level>, ...} [:<type>] [#<occurrence>] [= <attr>]
//! ```
//!
//! where a key is an id with an optional `/<type>`. Dynamic graphs group
//! records under `snapshot <t>` lines. Symbols matching
//! `[A-Za-z_][A-Za-z0-9_]*` are written bare, all others in double quotes
//! with `\"`, `\\`, `\n`, `\r` and `\t` escapes; `σ` is the blank attribute.
//! Lines starting with `%` are comments. Undirected graphs list both
//! orientations of every edge. When alphabets are declared, every symbol
//! used in the matching position must be declared.
//!
//! [`serialize`] writes records in canonical order and declares exactly the
//! symbols used, so equal graphs serialize to identical bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::attr::{AttrValue, Symbol};
use crate::embed::{find, Direction, Property};
use crate::error::{Error, Result};
use crate::graph::{EdgeRecord, Endpoints, GraphValue, NodeKey, NodeRecord, Snapshot};
use crate::kind::GraphKind;
use crate::lattice::WitnessChain;
use crate::oracle::{Counterexample, Mode, VerificationReport};
use crate::text::{write_symbol, Cursor};

pub const GRAPH_HEADER: &str = "kindred-graph 1";
pub const CHAIN_HEADER: &str = "kindred-chain 1";
pub const REPORT_HEADER: &str = "kindred-report 1";

fn symbol_text(s: &Symbol) -> String {
    let mut out = String::new();
    write_symbol(&mut out, s.as_str()).unwrap();
    out
}

#[derive(Default)]
struct Alphabets {
    attrs: Option<BTreeSet<Symbol>>,
    node_types: Option<BTreeSet<Symbol>>,
    edge_types: Option<BTreeSet<Symbol>>,
}

/// Meaningful lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('%')
        })
}

fn end_of_line(cur: &mut Cursor<'_>) -> Result<()> {
    cur.skip_ws();
    if cur.at_end() {
        Ok(())
    } else {
        Err(cur.error("unexpected trailing input"))
    }
}

fn node_key(cur: &mut Cursor<'_>) -> Result<NodeKey> {
    cur.skip_ws();
    let id = cur.natural()?;
    let ty = if cur.peek() == Some('/') {
        cur.bump();
        Some(cur.symbol()?)
    } else {
        None
    };
    Ok(NodeKey { id, ty })
}

fn symbol_list(cur: &mut Cursor<'_>) -> Result<BTreeSet<Symbol>> {
    let mut out = BTreeSet::new();
    loop {
        cur.skip_ws();
        if cur.at_end() {
            return Ok(out);
        }
        out.insert(cur.symbol()?);
    }
}

/// Optional `:type`, `#occurrence` and `= attr` suffix of a record.
fn suffix(cur: &mut Cursor<'_>, typed: bool) -> Result<(Option<Symbol>, u32, Option<AttrValue>)> {
    let ty = if typed && cur.eat(':') {
        Some(cur.symbol()?)
    } else {
        None
    };
    let mult = if cur.eat('#') {
        u32::try_from(cur.natural()?)
            .ok()
            .filter(|m| *m >= 1)
            .ok_or_else(|| cur.error("occurrence index must be at least 1"))?
    } else {
        1
    };
    let attr = if cur.eat('=') { Some(cur.attr()?) } else { None };
    end_of_line(cur)?;
    Ok((ty, mult, attr))
}

fn check_alphabet(
    declared: &Option<BTreeSet<Symbol>>,
    used: &Symbol,
    what: &str,
    line: usize,
) -> Result<()> {
    match declared {
        Some(set) if !set.contains(used) => Err(Error::Syntax {
            line,
            column: 1,
            message: format!("{what} {} is not declared", symbol_text(used)),
        }),
        _ => Ok(()),
    }
}

/// Parses and canonicalizes a graph document.
pub fn parse(text: &str) -> Result<GraphValue> {
    let mut it = lines(text);
    match it.next() {
        Some((_, l)) if l.trim() == GRAPH_HEADER => {}
        Some((n, _)) => {
            return Err(Error::Syntax {
                line: n,
                column: 1,
                message: format!("expected '{GRAPH_HEADER}'"),
            })
        }
        None => {
            return Err(Error::Syntax {
                line: 1,
                column: 1,
                message: "empty document".into(),
            })
        }
    }

    let mut kind: Option<GraphKind> = None;
    let mut alphabets = Alphabets::default();
    let mut snapshots: Vec<Snapshot> = Vec::new();
    let mut seen_records = false;

    for (n, line) in it {
        let mut cur = Cursor::new(line, n);
        let kw = cur.word();
        if kw == "kind" {
            if kind.is_some() {
                return Err(cur.error("kind declared twice"));
            }
            let spec = cur.rest().trim();
            kind = Some(spec.parse().map_err(|e: Error| cur.error(e.to_string()))?);
            if !kind.unwrap().dynamic {
                snapshots.push(Snapshot::new(0));
            }
            continue;
        }
        let Some(k) = kind else {
            return Err(cur.error("expected 'kind' before anything else"));
        };
        match kw {
            "alphabet" | "node-types" | "edge-types" => {
                if seen_records {
                    return Err(cur.error("alphabets must precede records"));
                }
                let slot = match kw {
                    "alphabet" => &mut alphabets.attrs,
                    "node-types" => &mut alphabets.node_types,
                    _ => &mut alphabets.edge_types,
                };
                slot.get_or_insert_with(BTreeSet::new)
                    .extend(symbol_list(&mut cur)?);
            }
            "snapshot" => {
                if !k.dynamic {
                    return Err(cur.error("snapshots only appear in dynamic graphs"));
                }
                let t = cur.int()?;
                end_of_line(&mut cur)?;
                snapshots.push(Snapshot::new(t));
                seen_records = true;
            }
            "node" | "edge" | "hyperedge" => {
                seen_records = true;
                let Some(snap) = snapshots.last_mut() else {
                    return Err(cur.error("records of a dynamic graph need a 'snapshot' line"));
                };
                let mut keys = Vec::new();
                match kw {
                    "node" => {
                        let key = node_key(&mut cur)?;
                        keys.push(key.clone());
                        let (_, multiplicity, attr) = suffix(&mut cur, false)?;
                        check_attr(&alphabets, &attr, n)?;
                        snap.nodes.push(NodeRecord {
                            key,
                            multiplicity,
                            attr,
                        });
                    }
                    _ => {
                        let ends = if kw == "edge" {
                            let u = node_key(&mut cur)?;
                            cur.expect_str("->")?;
                            let v = node_key(&mut cur)?;
                            Endpoints::Simple(u, v)
                        } else {
                            Endpoints::Hyper(numbering(&mut cur)?)
                        };
                        keys.extend(ends.nodes().into_iter().cloned());
                        let (edge_type, multiplicity, attr) = suffix(&mut cur, true)?;
                        check_attr(&alphabets, &attr, n)?;
                        if let Some(t) = &edge_type {
                            check_alphabet(&alphabets.edge_types, t, "edge type", n)?;
                        }
                        snap.edges.push(EdgeRecord {
                            ends,
                            edge_type,
                            multiplicity,
                            attr,
                        });
                    }
                }
                for key in keys {
                    if let Some(t) = &key.ty {
                        check_alphabet(&alphabets.node_types, t, "node type", n)?;
                    }
                }
            }
            other => return Err(Cursor::new(line, n).error(format!("unknown directive '{other}'"))),
        }
    }

    let kind = kind.ok_or_else(|| Error::Syntax {
        line: text.lines().count().max(1),
        column: 1,
        message: "missing 'kind' line".into(),
    })?;
    GraphValue { kind, snapshots }.canonicalize()
}

fn check_attr(alphabets: &Alphabets, attr: &Option<AttrValue>, line: usize) -> Result<()> {
    let (Some(declared), Some(a)) = (&alphabets.attrs, attr) else {
        return Ok(());
    };
    let mut result = Ok(());
    a.visit_symbols(&mut |s| {
        if result.is_ok() {
            result = check_alphabet(&Some(declared.clone()), s, "symbol", line);
        }
    });
    result
}

fn numbering(cur: &mut Cursor<'_>) -> Result<BTreeMap<NodeKey, u32>> {
    cur.expect('{')?;
    let mut out = BTreeMap::new();
    if cur.eat('}') {
        return Ok(out);
    }
    loop {
        let key = node_key(cur)?;
        cur.expect(':')?;
        let level = u32::try_from(cur.natural()?).map_err(|_| cur.error("level out of range"))?;
        if out.insert(key, level).is_some() {
            return Err(cur.error("node listed twice in a hyperedge"));
        }
        if cur.eat('}') {
            return Ok(out);
        }
        cur.expect(',')?;
    }
}

fn write_suffix(out: &mut String, ty: &Option<Symbol>, mult: u32, attr: &Option<AttrValue>) {
    if let Some(t) = ty {
        let _ = write!(out, " :{}", symbol_text(t));
    }
    if mult != 1 {
        let _ = write!(out, " #{mult}");
    }
    if let Some(a) = attr {
        let _ = write!(out, " = {a}");
    }
}

fn write_symbols(out: &mut String, directive: &str, set: &BTreeSet<Symbol>) {
    if set.is_empty() {
        return;
    }
    out.push_str(directive);
    for s in set {
        out.push(' ');
        out.push_str(&symbol_text(s));
    }
    out.push('\n');
}

/// Canonical text of `g`.
pub fn serialize(g: &GraphValue) -> String {
    let g = g.sorted();
    let mut attrs = BTreeSet::new();
    let mut node_types = BTreeSet::new();
    let mut edge_types = BTreeSet::new();
    for s in &g.snapshots {
        for n in &s.nodes {
            node_types.extend(n.key.ty.clone());
            if let Some(a) = &n.attr {
                a.visit_symbols(&mut |s| {
                    attrs.insert(s.clone());
                });
            }
        }
        for e in &s.edges {
            edge_types.extend(e.edge_type.clone());
            if let Some(a) = &e.attr {
                a.visit_symbols(&mut |s| {
                    attrs.insert(s.clone());
                });
            }
        }
    }

    let mut out = format!("{GRAPH_HEADER}\nkind {}\n", g.kind);
    write_symbols(&mut out, "alphabet", &attrs);
    write_symbols(&mut out, "node-types", &node_types);
    write_symbols(&mut out, "edge-types", &edge_types);
    for s in &g.snapshots {
        if g.kind.dynamic {
            let _ = writeln!(out, "snapshot {}", s.time);
        }
        for n in &s.nodes {
            let _ = write!(out, "node {}", n.key);
            write_suffix(&mut out, &None, n.multiplicity, &n.attr);
            out.push('\n');
        }
        for e in &s.edges {
            let word = if e.ends.is_hyper() { "hyperedge" } else { "edge" };
            let _ = write!(out, "{word} {}", e.ends);
            write_suffix(&mut out, &e.edge_type, e.multiplicity, &e.attr);
            out.push('\n');
        }
    }
    out
}

pub fn serialize_chain(c: &WitnessChain) -> String {
    let mut out = format!("{CHAIN_HEADER}\nsource {}\ntarget {}\n", c.source, c.target);
    for s in &c.steps {
        let _ = writeln!(out, "step {} {} {}", s.property, s.direction, s.embedding);
    }
    out
}

/// Parses a chain and re-checks every step against the catalog.
pub fn parse_chain(text: &str) -> Result<WitnessChain> {
    let mut it = lines(text);
    match it.next() {
        Some((_, l)) if l.trim() == CHAIN_HEADER => {}
        other => {
            return Err(Error::Syntax {
                line: other.map_or(1, |(n, _)| n),
                column: 1,
                message: format!("expected '{CHAIN_HEADER}'"),
            })
        }
    }
    let mut source = None;
    let mut target = None;
    let mut names = Vec::new();
    let mut declared = Vec::new();
    for (n, line) in it {
        let mut cur = Cursor::new(line, n);
        let kind_of_rest = |cur: &Cursor<'_>| -> Result<GraphKind> {
            cur.rest().trim().parse().map_err(|e: Error| cur.error(e.to_string()))
        };
        match cur.word() {
            "source" => source = Some(kind_of_rest(&cur)?),
            "target" => target = Some(kind_of_rest(&cur)?),
            "step" => {
                let p = cur.word();
                let property = Property::from_name(p)
                    .ok_or_else(|| cur.error(format!("unknown property '{p}'")))?;
                let d = cur.word();
                let direction = Direction::from_name(d)
                    .ok_or_else(|| cur.error(format!("unknown direction '{d}'")))?;
                let name = cur.word().to_string();
                end_of_line(&mut cur)?;
                let e = find(&name)?;
                if e.property() != property || e.direction() != direction {
                    return Err(cur.error(format!(
                        "{name} {} {}s, not {property} {direction}",
                        e.direction(),
                        e.property()
                    )));
                }
                names.push(name);
                declared.push(n);
            }
            other => return Err(cur.error(format!("unknown directive '{other}'"))),
        }
    }
    let missing = |what: &str| Error::Syntax {
        line: 1,
        column: 1,
        message: format!("missing '{what}' line"),
    };
    let source = source.ok_or_else(|| missing("source"))?;
    let target = target.ok_or_else(|| missing("target"))?;
    let chain = WitnessChain::from_names(source, &names)?;
    if chain.target != target {
        return Err(Error::KindMismatch {
            step: chain.len(),
            expected: target,
            found: chain.target,
        });
    }
    Ok(chain)
}

fn indent(out: &mut String, doc: &str) {
    for line in doc.lines() {
        let _ = writeln!(out, "  {line}");
    }
}

fn write_counterexamples(out: &mut String, label: &str, list: &[Counterexample]) {
    for c in list {
        let _ = writeln!(out, "counterexample {label}");
        let mut detail = String::new();
        write_symbol(&mut detail, &c.detail).unwrap();
        let _ = writeln!(out, "detail {detail}");
        out.push_str("input\n");
        indent(out, &serialize(&c.input));
        out.push_str("end\n");
        if let Some(o) = &c.other {
            out.push_str("other\n");
            indent(out, &serialize(o));
            out.push_str("end\n");
        }
    }
}

/// Text of a verification report. Elapsed time is left out so that equal
/// findings give identical bytes.
pub fn serialize_report(r: &VerificationReport) -> String {
    let mut out = format!(
        "{REPORT_HEADER}\nembedding {}\nsource-kind {}\n",
        r.embedding, r.source_kind
    );
    match r.mode {
        Mode::Exhaustive => out.push_str("mode exhaustive\n"),
        Mode::Fuzz { seed, count } => {
            let _ = writeln!(out, "mode fuzz seed {seed} count {count}");
        }
    }
    let _ = writeln!(out, "universe-size {}", r.universe_size);
    let _ = writeln!(out, "roundtrip-failures {}", r.roundtrip_failures.len());
    let _ = writeln!(out, "injectivity-collisions {}", r.injectivity_collisions.len());
    let _ = writeln!(out, "typing-failures {}", r.typing_failures.len());
    let _ = writeln!(
        out,
        "verdict {}",
        if r.verified() { "verified" } else { "failed" }
    );
    write_counterexamples(&mut out, "roundtrip", &r.roundtrip_failures);
    write_counterexamples(&mut out, "injectivity", &r.injectivity_collisions);
    write_counterexamples(&mut out, "typing", &r.typing_failures);
    out
}
