//! CSV ingestion and serialization of event layers and node attributes.
//!
//! Formats:
//! - opposition: `source,target,date`
//! - collaboration: `node_a,node_b,date`
//! - attributes: `node,patent_count`
//!
//! Dates are ISO-8601 `YYYY-MM-DD`.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::model::{Event, LayerKind, NodeId, TemporalLayer, Timestamp};

pub const OPPOSITION_HEADER: [&str; 3] = ["source", "target", "date"];
pub const COLLABORATION_HEADER: [&str; 3] = ["node_a", "node_b", "date"];
pub const ATTRIBUTE_HEADER: [&str; 2] = ["node", "patent_count"];

fn header_for(kind: LayerKind) -> [&'static str; 3] {
    match kind {
        LayerKind::Opposition => OPPOSITION_HEADER,
        LayerKind::Collaboration => COLLABORATION_HEADER,
    }
}

fn column_positions<const N: usize>(headers: &csv::StringRecord, wanted: [&str; N]) -> Result<[usize; N]> {
    let mut pos = [0; N];
    for (slot, name) in pos.iter_mut().zip(wanted) {
        *slot = headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| Error::Parse {
                line: 1,
                msg: format!("missing column '{name}'"),
            })?;
    }
    Ok(pos)
}

fn reader<R: Read>(stream: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(stream)
}

/// Parses an event CSV into a sorted, indexed layer. Directed streams carry
/// `source,target,date`; undirected ones `node_a,node_b,date`.
pub fn parse_event_file<R: Read>(stream: R, directed: bool) -> Result<TemporalLayer> {
    let kind = if directed {
        LayerKind::Opposition
    } else {
        LayerKind::Collaboration
    };
    let mut rdr = reader(stream);
    let cols = column_positions(rdr.headers()?, header_for(kind))?;
    let mut events = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let field = |i: usize, name: &str| {
            rec.get(cols[i]).filter(|v| !v.is_empty()).ok_or_else(|| Error::Parse {
                line,
                msg: format!("missing value for '{name}'"),
            })
        };
        let header = header_for(kind);
        let a = field(0, header[0])?;
        let b = field(1, header[1])?;
        let date = field(2, header[2])?;
        let t = Timestamp::parse_iso(date).ok_or_else(|| Error::Parse {
            line,
            msg: format!("malformed date '{date}'"),
        })?;
        let ev = Event::new(NodeId::new(a)?, NodeId::new(b)?, t, kind).map_err(|e| match e {
            Error::SelfLoop(n) => Error::Parse {
                line,
                msg: format!("self-loop on node '{n}'"),
            },
            other => other,
        })?;
        events.push(ev);
    }
    TemporalLayer::new(kind, events)
}

/// Parses a `node,patent_count` CSV.
pub fn parse_attribute_file<R: Read>(stream: R) -> Result<BTreeMap<NodeId, u64>> {
    let mut rdr = reader(stream);
    let cols = column_positions(rdr.headers()?, ATTRIBUTE_HEADER)?;
    let mut attrs = BTreeMap::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let node = rec.get(cols[0]).filter(|v| !v.is_empty()).ok_or(Error::Parse {
            line,
            msg: "missing node".into(),
        })?;
        let raw = rec.get(cols[1]).unwrap_or("");
        let count: u64 = raw.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("patent_count '{raw}' is not a non-negative integer"),
        })?;
        attrs.insert(NodeId::new(node)?, count);
    }
    Ok(attrs)
}

/// Writes a layer in its input CSV format (events in layer order).
pub fn write_event_file<W: Write>(layer: &TemporalLayer, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header_for(layer.kind()))?;
    for e in layer.events() {
        w.write_record([e.source.as_str(), e.target.as_str(), &e.t.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_attribute_file<W: Write>(attrs: &BTreeMap<NodeId, u64>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(ATTRIBUTE_HEADER)?;
    for (node, count) in attrs {
        w.write_record([node.as_str(), &count.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str, directed: bool) -> Result<TemporalLayer> {
        parse_event_file(s.as_bytes(), directed)
    }

    #[test]
    fn directed_row() {
        let l = parse("source,target,date\nA,B,1981-02-25\n", true).unwrap();
        assert_eq!(l.len(), 1);
        let e = &l.events()[0];
        assert_eq!((e.source.as_str(), e.target.as_str(), e.t), ("A", "B", Timestamp(4073)));
    }

    #[test]
    fn undirected_row_normalized() {
        let l = parse("node_a,node_b,date\nB,A,2018-01-10\n", false).unwrap();
        let e = &l.events()[0];
        assert_eq!((e.source.as_str(), e.target.as_str()), ("A", "B"));
        assert_eq!(e.t, Timestamp::parse_iso("2018-01-10").unwrap());
    }

    #[test]
    fn self_loop_names_line() {
        let err = parse("source,target,date\nA,B,2000-01-01\nA,A,2000-01-01\n", true).unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 3);
                assert!(msg.contains("self-loop"));
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn malformed_date_names_line() {
        let err = parse("source,target,date\nA,B,2000/01/01\n", true).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn missing_column() {
        let err = parse("source,date\nA,2000-01-01\n", true).unwrap_err();
        assert!(err.to_string().contains("target"));
        // undirected header on a directed read
        assert!(parse("node_a,node_b,date\nA,B,2000-01-01\n", true).is_err());
    }

    #[test]
    fn missing_value() {
        let err = parse("source,target,date\nA,,2000-01-01\n", true).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn duplicates_kept() {
        let l = parse("source,target,date\nA,B,2000-01-01\nA,B,2000-01-01\n", true).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.edge_index().len(), 1);
    }

    #[test]
    fn roundtrip_preserves_multiset() {
        let src = "source,target,date\nC,A,1990-05-05\nA,B,1981-02-25\nA,B,1981-02-25\n";
        let l = parse(src, true).unwrap();
        let mut buf = Vec::new();
        write_event_file(&l, &mut buf).unwrap();
        let back = parse(std::str::from_utf8(&buf).unwrap(), true).unwrap();
        assert_eq!(l, back);
    }

    #[test]
    fn attributes() {
        let a = parse_attribute_file("node,patent_count\nA,0\nB,25\n".as_bytes()).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a[&NodeId::new("B").unwrap()], 25);
        assert!(parse_attribute_file("node,patent_count\nA,-3\n".as_bytes()).is_err());
    }
}
