//! srcML archive loading: splits an archive document into per-file units and
//! re-serializes each unit so extraction can work on standalone documents.

pub mod extract;

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

/// srcML source markup namespace.
pub const SRC_NS: &str = "http://www.srcML.org/srcML/src";
/// srcML position annotation namespace.
pub const POS_NS: &str = "http://www.srcML.org/srcML/position";

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: String, message: String },
}

fn format_error(path: &str, message: impl Into<String>) -> IngestError {
    IngestError::Format { path: path.to_string(), message: message.into() }
}

/// One unit of an archive, re-serialized as a standalone XML document.
#[derive(Debug, Clone)]
pub struct RawUnit {
    /// The unit's `language` attribute, verbatim.
    pub language: Option<String>,
    /// The unit's `filename` attribute, verbatim.
    pub filename: Option<String>,
    pub xml: String,
}

/// A parsed srcML file: either an archive of units or a single unit.
#[derive(Debug, Clone)]
pub struct SrcmlArchive {
    pub path: String,
    pub units: Vec<RawUnit>,
}

/// Reads a srcML file and splits it into units.
///
/// Accepts three shapes: an archive root `unit` containing nested units, a
/// single-file document whose root `unit` holds markup directly, and an empty
/// archive (a childless root `unit` with no `language`), which yields zero
/// units. Anything that is not well-formed XML with a srcML `unit` root is a
/// format error.
pub fn load_archive(path: &Path) -> Result<SrcmlArchive, IngestError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|source| IngestError::Io { path: display.clone(), source })?;
    let units = split_units(&text).map_err(|m| format_error(&display, m))?;
    Ok(SrcmlArchive { path: display, units })
}

/// Splits srcML document text into standalone units. See [`load_archive`].
pub fn split_units(text: &str) -> Result<Vec<RawUnit>, String> {
    let doc = roxmltree::Document::parse(text).map_err(|e| format!("not srcML: {e}"))?;
    let root = doc.root_element();
    if !is_unit(root) {
        return Err(format!(
            "not srcML: root element is <{}>, expected a srcML <unit>",
            root.tag_name().name()
        ));
    }

    let nested: Vec<roxmltree::Node> = root
        .descendants()
        .filter(|n| n.id() != root.id() && is_unit(*n))
        .filter(|n| !n.descendants().skip(1).any(is_unit))
        .collect();

    let chosen: Vec<roxmltree::Node> = if !nested.is_empty() {
        nested
    } else if root.attribute("language").is_some() || root.children().any(|c| c.is_element()) {
        vec![root]
    } else {
        Vec::new() // empty archive
    };

    Ok(chosen
        .into_iter()
        .map(|unit| RawUnit {
            language: unit.attribute("language").map(str::to_string),
            filename: unit.attribute("filename").map(str::to_string),
            xml: serialize_subtree(unit),
        })
        .collect())
}

fn is_unit(node: roxmltree::Node) -> bool {
    node.is_element() && node.tag_name().name() == "unit" && in_src_ns(node)
}

/// srcML elements always live in [`SRC_NS`]; fixtures without an `xmlns` keep
/// working because a missing namespace is accepted too.
fn in_src_ns(node: roxmltree::Node) -> bool {
    matches!(node.tag_name().namespace(), None | Some(SRC_NS))
}

/// Serializes `node`'s subtree as a standalone document, redeclaring every
/// namespace in scope on the new root so prefixes stay resolvable. Text is
/// re-escaped; XML comments and processing instructions are dropped (source
/// comments are `<comment>` elements and survive). Newlines in text pass
/// through untouched, which extraction relies on for line numbers.
pub fn serialize_subtree(node: roxmltree::Node) -> String {
    let mut out = String::new();
    write_element(node, &mut out, true);
    out
}

fn write_element(node: roxmltree::Node, out: &mut String, is_root: bool) {
    out.push('<');
    let name = qualified_name(node);
    out.push_str(&name);
    if is_root {
        for ns in node.namespaces() {
            match ns.name() {
                Some(prefix) => {
                    let _ = write!(out, " xmlns:{}=\"{}\"", prefix, escape_attr(ns.uri()));
                }
                None => {
                    let _ = write!(out, " xmlns=\"{}\"", escape_attr(ns.uri()));
                }
            }
        }
    }
    for attr in node.attributes() {
        let attr_name = match attr.namespace() {
            Some(uri) => match prefix_for(node, uri) {
                Some(prefix) => format!("{prefix}:{}", attr.name()),
                None => attr.name().to_string(),
            },
            None => attr.name().to_string(),
        };
        let _ = write!(out, " {}=\"{}\"", attr_name, escape_attr(attr.value()));
    }
    out.push('>');
    for child in node.children() {
        if child.is_element() {
            write_element(child, out, false);
        } else if child.is_text() {
            out.push_str(&escape_text(child.text().unwrap_or("")));
        }
    }
    out.push_str("</");
    out.push_str(&name);
    out.push('>');
}

/// The element's name with the prefix its namespace resolves to in scope; the
/// default namespace yields no prefix.
fn qualified_name(node: roxmltree::Node) -> String {
    match node.tag_name().namespace() {
        Some(uri) => {
            let default_is_uri = node
                .namespaces()
                .any(|ns| ns.name().is_none() && ns.uri() == uri);
            if default_is_uri {
                node.tag_name().name().to_string()
            } else {
                match prefix_for(node, uri) {
                    Some(prefix) => format!("{prefix}:{}", node.tag_name().name()),
                    None => node.tag_name().name().to_string(),
                }
            }
        }
        None => node.tag_name().name().to_string(),
    }
}

fn prefix_for<'a>(node: roxmltree::Node<'a, 'a>, uri: &str) -> Option<&'a str> {
    node.namespaces().find(|ns| ns.uri() == uri && ns.name().is_some())?.name()
}

fn escape_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            _ => out.push(c),
        }
    }
    out
}

fn escape_attr(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    for c in value.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const ARCHIVE: &str = concat!(
        r#"<unit xmlns="http://www.srcML.org/srcML/src" revision="1.0.0">"#,
        "\n",
        r#"<unit revision="1.0.0" language="Java" filename="A.java"><class>class "#,
        r#"<name>A</name> <block>{ }</block></class>"#,
        "\n</unit>\n",
        r#"<unit revision="1.0.0" language="C#" filename="B.cs"><class>class "#,
        r#"<name>B</name> <block>{ }</block></class>"#,
        "\n</unit>\n",
        "</unit>\n",
    );

    #[test]
    fn archive_splits_into_leaf_units() {
        let units = split_units(ARCHIVE).unwrap();
        assert_eq!(units.len(), 2);
        assert_eq!(units[0].language.as_deref(), Some("Java"));
        assert_eq!(units[0].filename.as_deref(), Some("A.java"));
        assert_eq!(units[1].language.as_deref(), Some("C#"));
        // Each serialized unit parses standalone and keeps its namespace.
        for u in &units {
            let doc = roxmltree::Document::parse(&u.xml).unwrap();
            assert_eq!(doc.root_element().tag_name().namespace(), Some(SRC_NS));
        }
    }

    #[test]
    fn single_unit_document_is_one_unit() {
        let text = r#"<unit xmlns="http://www.srcML.org/srcML/src" language="Java" filename="A.java"><class>class <name>A</name> <block>{ }</block></class></unit>"#;
        let units = split_units(text).unwrap();
        assert_eq!(units.len(), 1);
        assert_eq!(units[0].filename.as_deref(), Some("A.java"));
    }

    #[test]
    fn empty_archive_yields_no_units() {
        let text = r#"<unit xmlns="http://www.srcML.org/srcML/src" revision="1.0.0"/>"#;
        assert!(split_units(text).unwrap().is_empty());
    }

    #[test]
    fn garbage_and_wrong_root_are_format_errors() {
        assert!(split_units("").is_err());
        assert!(split_units("just text, not xml").is_err());
        assert!(split_units("<project><unit/></project>").is_err());
    }

    #[test]
    fn serialization_preserves_text_newlines_and_escapes() {
        let text = concat!(
            r#"<unit xmlns="http://www.srcML.org/srcML/src" language="Java" filename="A.java">"#,
            r#"<comment type="line">// a &lt; b</comment>"#,
            "\nline two\n",
            "</unit>",
        );
        let units = split_units(text).unwrap();
        assert_eq!(units.len(), 1);
        assert!(units[0].xml.contains("&lt; b"), "{}", units[0].xml);
        assert_eq!(units[0].xml.matches('\n').count(), 2, "{}", units[0].xml);
        let reparsed = roxmltree::Document::parse(&units[0].xml).unwrap();
        let comment = reparsed
            .descendants()
            .find(|n| n.tag_name().name() == "comment")
            .unwrap();
        assert_eq!(comment.text(), Some("// a < b"));
    }

    #[test]
    fn position_attributes_survive_with_prefix() {
        let text = concat!(
            r#"<unit xmlns="http://www.srcML.org/srcML/src" "#,
            r#"xmlns:pos="http://www.srcML.org/srcML/position" language="Java">"#,
            r#"<name pos:start="3:5" pos:end="3:8">name</name></unit>"#,
        );
        let units = split_units(text).unwrap();
        let doc = roxmltree::Document::parse(&units[0].xml).unwrap();
        let name = doc.descendants().find(|n| n.tag_name().name() == "name").unwrap();
        assert_eq!(name.attribute((POS_NS, "start")), Some("3:5"));
    }

    #[test]
    fn load_archive_reports_io_and_format_errors_with_path() {
        let err = load_archive(Path::new("/nonexistent/x.xml")).unwrap_err();
        assert!(matches!(err, IngestError::Io { .. }), "{err}");
        let dir = tempfile::tempdir().unwrap();
        let bad = dir.path().join("empty.xml");
        std::fs::write(&bad, "").unwrap();
        let err = load_archive(&bad).unwrap_err();
        assert!(err.to_string().contains("empty.xml"), "{err}");
        assert!(matches!(err, IngestError::Format { .. }), "{err}");
    }
}
