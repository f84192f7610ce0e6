//! Entity extraction from one standalone srcML unit.
//!
//! Line numbers come from `pos:` attributes when the archive carries them and
//! otherwise from counting newlines in the unit's embedded source text, which
//! srcML preserves exactly. Columns default to 1 without position attributes.

use std::collections::{BTreeSet, HashMap};

use roxmltree::Node;

use crate::ingest::POS_NS;
use crate::lexicon::{split_identifier, Lexicons};
use crate::model::{
    Access, BodyFacts, ClassContext, CommentBlock, CommentKind, DataEntity, DataKind, Language,
    Location, MethodEntity, SourceUnit, TypeRef,
};

/// A unit's extracted entities plus non-fatal notes about skipped pieces.
#[derive(Debug)]
pub struct Extraction {
    pub unit: SourceUnit,
    pub warnings: Vec<String>,
}

const CLASS_TAGS: [&str; 4] = ["class", "struct", "interface", "enum"];
const FUNCTION_TAGS: [&str; 4] = ["function", "constructor", "function_decl", "constructor_decl"];

/// Extracts every class, method, attribute, and local from a srcML unit.
pub fn extract_unit(
    xml: &str,
    file_path: &str,
    language: Language,
    lex: &Lexicons,
) -> Result<Extraction, String> {
    let doc = roxmltree::Document::parse(xml).map_err(|e| format!("not srcML: {e}"))?;
    let root = doc.root_element();
    let lines = LineMap::build(root);
    let comments = collect_comments(root, &lines);
    let mut warnings = Vec::new();

    let cx = Cx { file: file_path, language, lex, lines: &lines, comments: &comments };

    // Named classes first, so methods and attributes can refer to them.
    let mut class_names: Vec<String> = Vec::new();
    let mut class_attrs: Vec<Vec<DataEntity>> = Vec::new();
    let mut class_index: HashMap<u32, usize> = HashMap::new();
    for node in root.descendants().filter(|n| has_tag(*n, &CLASS_TAGS)) {
        match declared_name_text(node) {
            Some(name) => {
                class_index.insert(node.id().get(), class_names.len());
                class_names.push(name);
                class_attrs.push(Vec::new());
            }
            None => warnings.push(format!(
                "{file_path}:{}: skipping unnamed {}",
                cx.start_line(node),
                tag(node)
            )),
        }
    }

    let enclosing_class_of = |node: Node| -> Option<usize> {
        node.ancestors()
            .skip(1)
            .find(|a| has_tag(*a, &CLASS_TAGS))
            .and_then(|a| class_index.get(&a.id().get()))
            .copied()
    };

    let mut methods: Vec<MethodEntity> = Vec::new();
    for node in root.descendants().filter(|n| has_tag(*n, &FUNCTION_TAGS)) {
        let enclosing = enclosing_class_of(node).map(|i| class_names[i].clone());
        if let Some(m) = extract_method(node, enclosing, &cx, &mut warnings) {
            methods.push(m);
        }
    }

    let mut free_variables: Vec<DataEntity> = Vec::new();
    for node in root.descendants().filter(|n| is_src(*n, "decl_stmt")) {
        let container = node.ancestors().skip(1).find(|a| {
            has_tag(*a, &FUNCTION_TAGS) || has_tag(*a, &CLASS_TAGS) || is_src(*a, "unit")
        });
        match container {
            Some(c) if has_tag(c, &FUNCTION_TAGS) => {
                let encl_class = enclosing_class_of(c).map(|i| class_names[i].clone());
                let encl_method = declared_name_text(c);
                free_variables.extend(extract_decls(
                    node,
                    DataKind::Local,
                    &encl_class,
                    &encl_method,
                    &cx,
                    &mut warnings,
                ));
            }
            Some(c) if has_tag(c, &CLASS_TAGS) => match class_index.get(&c.id().get()) {
                Some(&i) => {
                    let encl_class = Some(class_names[i].clone());
                    let decls = extract_decls(
                        node,
                        DataKind::Attribute,
                        &encl_class,
                        &None,
                        &cx,
                        &mut warnings,
                    );
                    class_attrs[i].extend(decls);
                }
                None => warnings.push(format!(
                    "{file_path}:{}: skipping declaration inside unnamed {}",
                    cx.start_line(node),
                    tag(c)
                )),
            },
            _ => {
                free_variables.extend(extract_decls(
                    node,
                    DataKind::Local,
                    &None,
                    &None,
                    &cx,
                    &mut warnings,
                ));
            }
        }
    }

    let classes: Vec<ClassContext> = class_names
        .into_iter()
        .zip(class_attrs)
        .map(|(name, attributes)| {
            let is_test_class = methods
                .iter()
                .any(|m| m.is_test && m.enclosing_class.as_deref() == Some(name.as_str()));
            ClassContext { name, attributes, is_test_class }
        })
        .collect();

    Ok(Extraction {
        unit: SourceUnit {
            file_path: file_path.to_string(),
            language,
            classes,
            methods,
            free_variables,
        },
        warnings,
    })
}

/// Shared extraction context.
struct Cx<'a> {
    file: &'a str,
    language: Language,
    lex: &'a Lexicons,
    lines: &'a LineMap,
    comments: &'a [CommentRec],
}

impl Cx<'_> {
    fn start_line(&self, node: Node) -> u32 {
        pos_line_col(node).0.unwrap_or_else(|| self.lines.start(node))
    }

    fn location(&self, node: Node) -> Location {
        let (pl, pc) = pos_line_col(node);
        Location {
            file: self.file.to_string(),
            line: pl.unwrap_or_else(|| self.lines.start(node)),
            column: pc.unwrap_or(1),
        }
    }
}

fn tag<'a>(node: Node<'a, '_>) -> &'a str {
    if node.is_element() && matches!(node.tag_name().namespace(), None | Some(crate::ingest::SRC_NS))
    {
        node.tag_name().name()
    } else {
        ""
    }
}

fn is_src(node: Node, name: &str) -> bool {
    tag(node) == name
}

fn has_tag(node: Node, names: &[&str]) -> bool {
    names.contains(&tag(node))
}

fn direct_child<'a, 'i>(node: Node<'a, 'i>, name: &str) -> Option<Node<'a, 'i>> {
    node.children().find(|c| is_src(*c, name))
}

/// Concatenated text of a whole subtree (qualified names keep their dots,
/// which live in `operator` elements).
fn subtree_text(node: Node) -> String {
    node.descendants()
        .filter(|n| n.is_text())
        .map(|n| n.text().unwrap_or(""))
        .collect()
}

fn own_text(node: Node) -> String {
    node.children()
        .filter(|c| c.is_text())
        .map(|c| c.text().unwrap_or(""))
        .collect::<String>()
        .trim()
        .to_string()
}

/// `pos:start="L:C"` (srcML 1.0) or `pos:line`/`pos:column` attributes.
fn pos_line_col(node: Node) -> (Option<u32>, Option<u32>) {
    if !node.is_element() {
        return (None, None);
    }
    if let Some(start) = node.attribute((POS_NS, "start")) {
        if let Some((l, c)) = start.split_once(':') {
            return (l.parse().ok(), c.parse().ok());
        }
    }
    (
        node.attribute((POS_NS, "line")).and_then(|v| v.parse().ok()),
        node.attribute((POS_NS, "column")).and_then(|v| v.parse().ok()),
    )
}

/// Start and end lines per node, counted from the unit's text content.
struct LineMap {
    start: HashMap<u32, u32>,
    end: HashMap<u32, u32>,
}

impl LineMap {
    fn build(root: Node) -> LineMap {
        fn walk(node: Node, line: &mut u32, map: &mut LineMap) {
            map.start.insert(node.id().get(), *line);
            for child in node.children() {
                if child.is_text() {
                    map.start.insert(child.id().get(), *line);
                    *line += child.text().unwrap_or("").matches('\n').count() as u32;
                    map.end.insert(child.id().get(), *line);
                } else if child.is_element() {
                    walk(child, line, map);
                }
            }
            map.end.insert(node.id().get(), *line);
        }
        let mut map = LineMap { start: HashMap::new(), end: HashMap::new() };
        let mut line = 1u32;
        walk(root, &mut line, &mut map);
        map
    }

    fn start(&self, node: Node) -> u32 {
        self.start.get(&node.id().get()).copied().unwrap_or(1)
    }

    fn end(&self, node: Node) -> u32 {
        self.end.get(&node.id().get()).copied().unwrap_or(1)
    }
}

/// The declared identifier inside a `name` element, which may nest for
/// qualified names (`a.b.C` keeps `C`), generics (`Box<T>` keeps `Box`), and
/// array suffixes (`a[]` keeps `a`).
struct NameInfo<'a, 'i> {
    text: String,
    loc_node: Node<'a, 'i>,
    argument_lists: Vec<Node<'a, 'i>>,
    dims: u8,
}

fn name_info<'a, 'i>(name_el: Node<'a, 'i>) -> NameInfo<'a, 'i> {
    let name_children: Vec<Node> = name_el.children().filter(|c| is_src(*c, "name")).collect();
    let mut argument_lists: Vec<Node> =
        name_el.children().filter(|c| is_src(*c, "argument_list")).collect();
    let dims = name_el.children().filter(|c| is_src(*c, "index")).count() as u8;
    match name_children.last() {
        Some(last) => {
            let mut inner = name_info(*last);
            inner.dims += dims;
            inner.argument_lists.append(&mut argument_lists);
            inner
        }
        None => NameInfo { text: own_text(name_el), loc_node: name_el, argument_lists, dims },
    }
}

/// Declared name of a class or function element (direct `name` child).
fn declared_name_text(node: Node) -> Option<String> {
    let name_el = direct_child(node, "name")?;
    let info = name_info(name_el);
    if info.text.is_empty() {
        None
    } else {
        Some(info.text)
    }
}

/// Builds a [`TypeRef`] from a `type` element. `specifier` and annotation
/// subtrees are excluded from the raw spelling.
fn extract_typeref(type_el: Node, lex: &Lexicons) -> TypeRef {
    let raw_text = collapse_ws(&type_text_without_specifiers(type_el));
    let name_children: Vec<Node> = type_el.children().filter(|c| is_src(*c, "name")).collect();
    match name_children.last() {
        Some(n) => typeref_from_name(*n, Some(raw_text), lex),
        None => TypeRef {
            raw_text,
            base_name: String::new(),
            type_arguments: Vec::new(),
            array_dimensions: 0,
            classification: lex.types.classify("", 0),
        },
    }
}

fn typeref_from_name(name_el: Node, raw_override: Option<String>, lex: &Lexicons) -> TypeRef {
    let info = name_info(name_el);
    let type_arguments: Vec<TypeRef> = info
        .argument_lists
        .iter()
        .flat_map(|al| al.children().filter(|c| is_src(*c, "argument")))
        .filter_map(|arg| {
            direct_child(arg, "name")
                .map(|n| typeref_from_name(n, None, lex))
                .or_else(|| direct_child(arg, "type").map(|t| extract_typeref(t, lex)))
        })
        .collect();
    let raw_text = raw_override.unwrap_or_else(|| collapse_ws(&subtree_text(name_el)));
    TypeRef {
        raw_text,
        classification: lex.types.classify(&info.text, info.dims),
        base_name: info.text,
        type_arguments,
        array_dimensions: info.dims,
    }
}

fn type_text_without_specifiers(type_el: Node) -> String {
    fn walk(node: Node, out: &mut String) {
        for c in node.children() {
            if c.is_text() {
                out.push_str(c.text().unwrap_or(""));
            } else if c.is_element() && !matches!(tag(c), "specifier" | "annotation" | "attribute")
            {
                walk(c, out);
            }
        }
    }
    let mut out = String::new();
    walk(type_el, &mut out);
    out
}

fn collapse_ws(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn extract_method(
    fn_el: Node,
    enclosing_class: Option<String>,
    cx: &Cx,
    warnings: &mut Vec<String>,
) -> Option<MethodEntity> {
    let is_constructor = matches!(tag(fn_el), "constructor" | "constructor_decl");
    let Some(name_el) = direct_child(fn_el, "name") else {
        warnings.push(format!(
            "{}:{}: skipping {} without a name",
            cx.file,
            cx.start_line(fn_el),
            tag(fn_el)
        ));
        return None;
    };
    let info = name_info(name_el);
    let Ok(name) = split_identifier(&info.text) else {
        warnings.push(format!(
            "{}:{}: skipping {} with an empty name",
            cx.file,
            cx.start_line(fn_el),
            tag(fn_el)
        ));
        return None;
    };
    let location = cx.location(info.loc_node);

    let return_type = if is_constructor {
        TypeRef::unknown()
    } else {
        direct_child(fn_el, "type")
            .map(|t| extract_typeref(t, cx.lex))
            .unwrap_or_else(TypeRef::unknown)
    };

    // Access specifiers sit inside the `type` element for methods and as
    // direct children for constructors; scan both spots.
    let mut specifiers: Vec<String> = fn_el
        .children()
        .filter(|c| is_src(*c, "specifier"))
        .map(|c| subtree_text(c).trim().to_string())
        .collect();
    if let Some(type_el) = direct_child(fn_el, "type") {
        specifiers.extend(
            type_el
                .children()
                .filter(|c| is_src(*c, "specifier"))
                .map(|c| subtree_text(c).trim().to_string()),
        );
    }
    let access = specifiers
        .iter()
        .find_map(|s| match s.as_str() {
            "public" => Some(Access::Public),
            "protected" => Some(Access::Protected),
            "private" => Some(Access::Private),
            "internal" => Some(Access::Internal),
            _ => None,
        })
        .unwrap_or(match cx.language {
            Language::Java => Access::Internal,
            Language::CSharp => Access::Private,
        });

    let annotations: Vec<String> = fn_el
        .children()
        .filter(|c| matches!(tag(*c), "annotation" | "attribute"))
        .filter_map(|a| {
            a.descendants()
                .find(|n| is_src(*n, "name"))
                .map(|n| collapse_ws(&subtree_text(n)))
        })
        .collect();

    let mut parameters = Vec::new();
    if let Some(list) = direct_child(fn_el, "parameter_list") {
        for param in list.children().filter(|c| is_src(*c, "parameter")) {
            let holder = direct_child(param, "decl").unwrap_or(param);
            parameters.extend(decl_entities(
                std::iter::once(holder),
                DataKind::Parameter,
                &enclosing_class,
                &Some(info.text.clone()),
                cx,
                warnings,
            ));
        }
    }

    let mut body = BodyFacts::default();
    if let Some(block) = direct_child(fn_el, "block") {
        let mut referenced = BTreeSet::new();
        for n in block.descendants() {
            match tag(n) {
                "if_stmt" | "if" | "switch" | "ternary" => body.has_conditional = true,
                "throw" => body.has_throw = true,
                "return" => {
                    if direct_child(n, "expr").is_some() {
                        body.returns_value = true;
                    }
                }
                "name" => {
                    if !n.children().any(|c| c.is_element()) {
                        let text = own_text(n);
                        if !text.is_empty() {
                            referenced.insert(text);
                        }
                    }
                }
                _ => {}
            }
        }
        body.referenced_names = referenced;
    }
    body.declares_throws = fn_el.children().any(|c| is_src(c, "throws"));

    let is_test = cx.lex.test.is_test_method(&info.text, &annotations);
    let comment = associate_comment(fn_el, cx);

    Some(MethodEntity {
        name,
        location,
        return_type,
        access,
        parameters,
        annotations,
        comment,
        body,
        is_constructor,
        is_test,
        enclosing_class,
    })
}

/// Extracts the `decl` children of a `decl_stmt`. A second declarator in
/// `int a, b;` arrives as `<type ref="prev"/>` or with no type at all; both
/// reuse the previous declarator's type.
fn extract_decls(
    stmt: Node,
    kind: DataKind,
    enclosing_class: &Option<String>,
    enclosing_method: &Option<String>,
    cx: &Cx,
    warnings: &mut Vec<String>,
) -> Vec<DataEntity> {
    decl_entities(
        stmt.children().filter(|c| is_src(*c, "decl")),
        kind,
        enclosing_class,
        enclosing_method,
        cx,
        warnings,
    )
}

fn decl_entities<'a, 'i: 'a>(
    decls: impl Iterator<Item = Node<'a, 'i>>,
    kind: DataKind,
    enclosing_class: &Option<String>,
    enclosing_method: &Option<String>,
    cx: &Cx,
    warnings: &mut Vec<String>,
) -> Vec<DataEntity> {
    let mut out = Vec::new();
    let mut prev_type: Option<TypeRef> = None;
    for decl in decls {
        let declared_type = match direct_child(decl, "type") {
            Some(t) if t.attribute("ref") == Some("prev") => {
                prev_type.clone().unwrap_or_else(TypeRef::unknown)
            }
            Some(t) => extract_typeref(t, cx.lex),
            None => prev_type.clone().unwrap_or_else(TypeRef::unknown),
        };
        prev_type = Some(declared_type.clone());

        let Some(name_el) = direct_child(decl, "name") else {
            continue; // e.g. an unnamed parameter
        };
        let info = name_info(name_el);
        let Ok(name) = split_identifier(&info.text) else {
            warnings.push(format!(
                "{}:{}: skipping {} with an empty name",
                cx.file,
                cx.start_line(decl),
                kind.as_str()
            ));
            continue;
        };

        // C-style array suffix on the declarator (`int a[];`) adds dims.
        let mut data_type = declared_type;
        if info.dims > 0 {
            data_type.array_dimensions += info.dims;
            data_type.classification =
                cx.lex.types.classify(&data_type.base_name, data_type.array_dimensions);
        }

        let comment = match kind {
            DataKind::Parameter => None,
            _ => {
                let stmt = decl
                    .ancestors()
                    .skip(1)
                    .find(|a| is_src(*a, "decl_stmt"))
                    .unwrap_or(decl);
                associate_comment(stmt, cx)
            }
        };

        out.push(DataEntity {
            kind,
            name,
            location: cx.location(info.loc_node),
            data_type,
            comment,
            enclosing_class: enclosing_class.clone(),
            enclosing_method: enclosing_method.clone(),
        });
    }
    out
}

/// One source comment (or merged run of single-line comments).
struct CommentRec {
    start: u32,
    end: u32,
    kind: CommentKind,
    text: String,
    scope: u32,
    order: u32,
}

/// Nearest enclosing braces level: the closest `block` or `unit` ancestor.
fn scope_of(node: Node) -> u32 {
    node.ancestors()
        .skip(1)
        .find(|a| matches!(tag(*a), "block" | "unit"))
        .map(|a| a.id().get())
        .unwrap_or(0)
}

fn collect_comments(root: Node, lines: &LineMap) -> Vec<CommentRec> {
    let mut recs: Vec<CommentRec> = Vec::new();
    for node in root.descendants().filter(|n| is_src(*n, "comment")) {
        let raw = own_text(node);
        let is_line = node.attribute("type") == Some("line");
        let kind = if node.attribute("format").is_some() {
            CommentKind::Doc
        } else if is_line {
            CommentKind::Line
        } else {
            CommentKind::Block
        };
        let start = pos_line_col(node).0.unwrap_or_else(|| lines.start(node));
        let end = start + subtree_text(node).matches('\n').count() as u32;
        let rec = CommentRec {
            start,
            end,
            kind,
            text: strip_comment_text(&raw),
            scope: scope_of(node),
            order: node.id().get(),
        };
        // Merge a single-line comment onto an adjacent previous run of the
        // same kind in the same scope, so `// a` over `// b` reads as one.
        if let Some(prev) = recs.last_mut() {
            if is_line
                && prev.kind == rec.kind
                && prev.scope == rec.scope
                && rec.start == prev.end + 1
                && rec.start == rec.end
            {
                prev.end = rec.end;
                prev.text.push('\n');
                prev.text.push_str(&rec.text);
                prev.order = rec.order;
                continue;
            }
        }
        recs.push(rec);
    }
    recs
}

/// Strips comment delimiters and per-line `*` decoration.
fn strip_comment_text(raw: &str) -> String {
    let t = raw.trim();
    if let Some(rest) = t.strip_prefix("//") {
        return rest.trim_start_matches('/').trim().to_string();
    }
    let t = t.strip_prefix("/*").unwrap_or(t);
    let t = t.strip_suffix("*/").unwrap_or(t);
    let t = t.trim_start_matches('*');
    t.lines()
        .map(|l| l.trim().trim_start_matches('*').trim())
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join("\n")
}

/// The comment documenting `decl_el`: the comment (or merged line run) in the
/// same scope ending on the line directly above, preferring doc over block
/// over line comments, else a trailing comment starting on the declaration's
/// last line after it in document order.
fn associate_comment(decl_el: Node, cx: &Cx) -> Option<CommentBlock> {
    let decl_start = cx.start_line(decl_el);
    let decl_end = cx.lines.end(decl_el);
    let scope = scope_of(decl_el);

    let rank = |k: CommentKind| match k {
        CommentKind::Doc => 0u8,
        CommentKind::Block => 1,
        CommentKind::Line => 2,
    };
    let leading = cx
        .comments
        .iter()
        .filter(|c| c.scope == scope && c.end + 1 == decl_start)
        .min_by_key(|c| rank(c.kind));
    let chosen = leading.or_else(|| {
        cx.comments
            .iter()
            .find(|c| c.scope == scope && c.start == decl_end && c.order > decl_el.id().get())
    })?;
    Some(CommentBlock { text: chosen.text.clone(), kind: chosen.kind, line: chosen.start })
}
