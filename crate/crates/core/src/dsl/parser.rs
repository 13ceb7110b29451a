//! Recursive-descent parser for `.pfm`.
//!
//! Grammar (one statement per line, `#` comments):
//!
//! ```text
//! file        -> stmt*
//! stmt        -> 'pfm-version' INT
//!              | 'model' STR
//!              | 'facility' ID STR?
//!              | 'diagram' ID STR '{' item* '}'
//!              | 'correlation' ID ID ('high' | 'low')
//!              | 'hint' 'merge' ID ID ('accepted' | 'rejected') STR?
//!              | 'similarity' ID ID INT
//!              | 'similarity-all' INT
//! item        -> 'machine' ID STR? ('facilities' ids)?
//!              | 'domain' ID STR 'kind' ('B' | 'C' | 'X') ('facilities' ids)?
//!              | 'requirement' ID STR ('constrains' ids)? ('refers' ids)?
//!              | 'interface' ID '--' ID 'phenomena' strs
//! ids         -> '[' (ID (',' ID)* ','?)? ']'
//! strs        -> '[' (STR (',' STR)* ','?)? ']'
//! ```
//!
//! Syntax and duplicate-definition errors are raised here. Everything else
//! (references, requirement/interface invariants, hint and override rules) is
//! left to [`crate::model::validate`], whose findings are mapped back onto the
//! span of the statement that introduced the offending element.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use super::lexer::{tokenize, Token, TokenKind};
use super::{ParseDiagnostic, SourceSpan, FORMAT_VERSION};
use crate::model::{
    validate, CorrelationLevel, DiagramId, DiagramPair, DomainId, DomainKind, DomainNode,
    FacilityId, Interface, MergeHint, Model, ProblemDiagram, Requirement, Severity,
    SimilarityOverride, Subject,
};

const STATEMENT_KEYWORDS: &[&str] = &[
    "pfm-version",
    "model",
    "facility",
    "diagram",
    "correlation",
    "hint",
    "similarity",
    "similarity-all",
];
const ITEM_KEYWORDS: &[&str] = &["machine", "domain", "requirement", "interface"];

/// Everything the parser learned about a source text.
#[derive(Clone, Debug)]
pub struct ParseOutput {
    /// Present iff no diagnostic is an error.
    pub model: Option<Model>,
    /// Errors and warnings ordered by position.
    pub diagnostics: Vec<ParseDiagnostic>,
}

/// Parses `.pfm` text into a validated [`Model`].
///
/// On failure the error list holds every diagnostic (warnings included).
pub fn parse(source: &str) -> Result<Model, Vec<ParseDiagnostic>> {
    let out = parse_with_diagnostics(source);
    match out.model {
        Some(model) => Ok(model),
        None => Err(out.diagnostics),
    }
}

/// Like [`parse`], but keeps warnings on success.
pub fn parse_with_diagnostics(source: &str) -> ParseOutput {
    let (tokens, lex_diags) = tokenize(source);
    let mut p = Parser {
        tokens,
        pos: 0,
        diags: lex_diags,
        spans: HashMap::new(),
        model: Model::default(),
        seen_statement: false,
        seen_model: false,
        similarity_pairs: BTreeMap::new(),
        similarity_first: None,
        similarity_all: None,
    };
    p.file();
    p.finish()
}

type PResult<T> = Result<T, ()>;

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    diags: Vec<ParseDiagnostic>,
    spans: HashMap<Subject, SourceSpan>,
    model: Model,
    seen_statement: bool,
    seen_model: bool,
    similarity_pairs: BTreeMap<DiagramPair, u32>,
    similarity_first: Option<SourceSpan>,
    similarity_all: Option<(u32, SourceSpan)>,
}

fn is_ident(word: &str) -> bool {
    !word.contains('-')
}

fn keyword_list(words: &[&str]) -> String {
    let quoted: Vec<String> = words.iter().map(|w| format!("`{w}`")).collect();
    format!("one of {}", quoted.join(", "))
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if !matches!(tok.kind, TokenKind::Eof) {
            self.pos += 1;
        }
        tok
    }

    fn prev_span(&self) -> SourceSpan {
        self.tokens[self.pos.saturating_sub(1)].span
    }

    fn peek_word(&self) -> Option<&str> {
        match &self.peek().kind {
            TokenKind::Word(w) => Some(w),
            _ => None,
        }
    }

    fn at_word(&self, kw: &str) -> bool {
        self.peek_word() == Some(kw)
    }

    fn skip_newlines(&mut self) {
        while matches!(self.peek().kind, TokenKind::Newline) {
            self.bump();
        }
    }

    fn unexpected(&mut self, expected: impl Into<String>) {
        let tok = self.peek().clone();
        let expected = expected.into();
        self.diags.push(ParseDiagnostic::expected(
            tok.span,
            format!("unexpected {}", tok.kind.describe()),
            expected,
        ));
    }

    fn error(&mut self, span: SourceSpan, message: impl Into<String>) {
        self.diags.push(ParseDiagnostic::error(span, message));
    }

    /// Skips to the start of the next line. Inside a block a `}` is left in place.
    fn recover(&mut self, in_block: bool) {
        loop {
            match self.peek().kind {
                TokenKind::Eof => return,
                TokenKind::Newline => {
                    self.bump();
                    return;
                }
                TokenKind::RBrace if in_block => return,
                _ => {
                    self.bump();
                }
            }
        }
    }

    fn end_statement(&mut self) -> PResult<()> {
        match self.peek().kind {
            TokenKind::Newline => {
                self.bump();
                Ok(())
            }
            TokenKind::Eof | TokenKind::RBrace => Ok(()),
            _ => {
                self.unexpected("end of line");
                Err(())
            }
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<SourceSpan> {
        if self.at_word(kw) {
            Ok(self.bump().span)
        } else {
            self.unexpected(format!("`{kw}`"));
            Err(())
        }
    }

    fn expect_ident(&mut self, what: &str) -> PResult<(String, SourceSpan)> {
        if let TokenKind::Word(w) = &self.peek().kind {
            if is_ident(w) {
                let w = w.clone();
                return Ok((w, self.bump().span));
            }
        }
        self.unexpected(format!("{what} identifier"));
        Err(())
    }

    fn expect_str(&mut self, what: &str) -> PResult<String> {
        if let TokenKind::Str(s) = &self.peek().kind {
            let s = s.clone();
            self.bump();
            return Ok(s);
        }
        self.unexpected(format!("{what} string"));
        Err(())
    }

    fn optional_str(&mut self) -> Option<String> {
        if let TokenKind::Str(s) = &self.peek().kind {
            let s = s.clone();
            self.bump();
            Some(s)
        } else {
            None
        }
    }

    fn expect_int(&mut self, what: &str) -> PResult<u32> {
        if let TokenKind::Int(digits) = &self.peek().kind {
            let digits = digits.clone();
            let span = self.bump().span;
            return digits.parse::<u32>().map_err(|_| {
                self.error(span, format!("{what} `{digits}` is out of range"));
            });
        }
        self.unexpected(format!("{what} (non-negative integer)"));
        Err(())
    }

    fn expect_choice(&mut self, what: &str, choices: &[&str]) -> PResult<String> {
        if let Some(w) = self.peek_word() {
            if choices.contains(&w) {
                let w = w.to_owned();
                self.bump();
                return Ok(w);
            }
            let tok = self.peek().clone();
            let w = w.to_owned();
            self.diags.push(ParseDiagnostic::expected(
                tok.span,
                format!("invalid {what} `{w}`"),
                keyword_list(choices),
            ));
            return Err(());
        }
        self.unexpected(keyword_list(choices));
        Err(())
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        if !matches!(self.peek().kind, TokenKind::LBracket) {
            self.unexpected("`[`");
            return Err(());
        }
        self.bump();
        let mut out = Vec::new();
        loop {
            if matches!(self.peek().kind, TokenKind::RBracket) {
                self.bump();
                return Ok(out);
            }
            out.push(item(self)?);
            match self.peek().kind {
                TokenKind::Comma => {
                    self.bump();
                }
                TokenKind::RBracket => {}
                _ => {
                    self.unexpected("`,` or `]`");
                    return Err(());
                }
            }
        }
    }

    fn id_list(&mut self, what: &str) -> PResult<Vec<(String, SourceSpan)>> {
        self.list(|p| p.expect_ident(what))
    }

    fn facilities_clause(&mut self) -> PResult<BTreeSet<FacilityId>> {
        if self.at_word("facilities") {
            self.bump();
            let ids = self.id_list("facility")?;
            Ok(ids.into_iter().map(|(id, _)| FacilityId(id)).collect())
        } else {
            Ok(BTreeSet::new())
        }
    }

    fn file(&mut self) {
        loop {
            self.skip_newlines();
            let tok = self.peek().clone();
            let ok = match &tok.kind {
                TokenKind::Eof => break,
                TokenKind::Word(w) => match w.as_str() {
                    "pfm-version" => self.version_stmt(),
                    "model" => self.model_stmt(),
                    "facility" => self.facility_stmt(),
                    "diagram" => self.diagram_stmt(),
                    "correlation" => self.correlation_stmt(),
                    "hint" => self.hint_stmt(),
                    "similarity" => self.similarity_stmt(),
                    "similarity-all" => self.similarity_all_stmt(),
                    _ => {
                        self.unexpected(keyword_list(STATEMENT_KEYWORDS));
                        Err(())
                    }
                },
                TokenKind::RBrace => {
                    self.error(tok.span, "unmatched `}`");
                    self.bump();
                    Err(())
                }
                _ => {
                    self.unexpected(keyword_list(STATEMENT_KEYWORDS));
                    Err(())
                }
            };
            self.seen_statement = true;
            if ok.is_err() {
                self.recover(false);
            }
        }
    }

    fn version_stmt(&mut self) -> PResult<()> {
        let start = self.bump().span;
        if self.seen_statement {
            self.error(start, "`pfm-version` must be the first statement");
        }
        let version = self.expect_int("format version")?;
        if version != FORMAT_VERSION {
            let span = start.to(self.prev_span());
            self.error(
                span,
                format!(
                    "unsupported pfm-version {version} (this reader understands {FORMAT_VERSION})"
                ),
            );
        }
        self.end_statement()
    }

    fn model_stmt(&mut self) -> PResult<()> {
        let start = self.bump().span;
        let name = self.expect_str("model name")?;
        let span = start.to(self.prev_span());
        if self.seen_model {
            self.error(span, "duplicate `model` statement");
        } else {
            self.seen_model = true;
            self.model.name = name;
            self.spans.insert(Subject::Model, span);
        }
        self.end_statement()
    }

    fn facility_stmt(&mut self) -> PResult<()> {
        let start = self.bump().span;
        let (id, id_span) = self.expect_ident("facility")?;
        let label = self.optional_str();
        let span = start.to(self.prev_span());
        let id = FacilityId(id);
        if self.model.facilities.contains_key(&id) {
            self.error(id_span, format!("duplicate facility `{id}`"));
        } else {
            self.spans.insert(Subject::Facility(id.clone()), span);
            self.model.facilities.insert(id, label);
        }
        self.end_statement()
    }

    fn diagram_stmt(&mut self) -> PResult<()> {
        let start = self.bump().span;
        let (id, id_span) = self.expect_ident("diagram")?;
        let title = self.expect_str("diagram title")?;
        let header = start.to(self.prev_span());
        if !matches!(self.peek().kind, TokenKind::LBrace) {
            self.unexpected("`{`");
            return Err(());
        }
        self.bump();
        if !matches!(self.peek().kind, TokenKind::RBrace) && self.end_statement().is_err() {
            self.recover(true);
        }

        let id = DiagramId(id);
        let mut body = DiagramBody::default();
        let mut closed = false;
        loop {
            self.skip_newlines();
            let tok = self.peek().clone();
            let res = match &tok.kind {
                TokenKind::RBrace => {
                    self.bump();
                    closed = true;
                    break;
                }
                TokenKind::Eof => break,
                TokenKind::Word(w) if STATEMENT_KEYWORDS.contains(&w.as_str()) => break,
                TokenKind::Word(w) => match w.as_str() {
                    "machine" => self.machine_item(&id, &mut body),
                    "domain" => self.domain_item(&id, &mut body),
                    "requirement" => self.requirement_item(&id, &mut body),
                    "interface" => self.interface_item(&id, &mut body),
                    _ => {
                        self.unexpected(keyword_list(ITEM_KEYWORDS));
                        Err(())
                    }
                },
                _ => {
                    self.unexpected(format!("{} or `}}`", keyword_list(ITEM_KEYWORDS)));
                    Err(())
                }
            };
            if res.is_err() {
                self.recover(true);
            }
        }

        if !closed {
            self.error(header, format!("diagram {id} is missing its closing `}}`"));
        }
        let machine = match body.machine {
            Some(m) => m,
            None => {
                if !body.machine_line {
                    self.error(header, format!("diagram {id} declares no machine"));
                }
                DomainNode::new("", "", DomainKind::Machine)
            }
        };
        if self.model.diagram(&id).is_some() {
            self.error(id_span, format!("duplicate diagram id `{id}`"));
        } else {
            self.spans.insert(Subject::Diagram(id.clone()), header);
            self.spans.extend(body.spans);
            self.model.diagrams.push(ProblemDiagram {
                id,
                title,
                machine,
                domains: body.domains,
                requirements: body.requirements,
                interfaces: body.interfaces,
            });
        }
        if closed {
            self.end_statement()
        } else {
            Ok(())
        }
    }

    fn claim_domain_id(
        &mut self,
        diagram: &DiagramId,
        body: &mut DiagramBody,
        id: &str,
        span: SourceSpan,
    ) -> bool {
        if body.domain_ids.insert(id.to_owned()) {
            true
        } else {
            self.error(
                span,
                format!("duplicate domain id `{id}` in diagram {diagram}"),
            );
            false
        }
    }

    fn machine_item(&mut self, diagram: &DiagramId, body: &mut DiagramBody) -> PResult<()> {
        let start = self.bump().span;
        body.machine_line = true;
        let (id, id_span) = self.expect_ident("machine")?;
        let name = self.optional_str().unwrap_or_else(|| id.clone());
        let facilities = self.facilities_clause()?;
        let span = start.to(self.prev_span());
        if body.machine.is_some() {
            self.error(
                start,
                format!("diagram {diagram} declares more than one machine"),
            );
        } else if self.claim_domain_id(diagram, body, &id, id_span) {
            body.spans
                .insert(Subject::Domain(diagram.clone(), DomainId(id.clone())), span);
            body.machine = Some(DomainNode {
                id: DomainId(id),
                name,
                kind: DomainKind::Machine,
                facilities,
            });
        }
        self.end_statement()
    }

    fn domain_item(&mut self, diagram: &DiagramId, body: &mut DiagramBody) -> PResult<()> {
        let start = self.bump().span;
        let (id, id_span) = self.expect_ident("domain")?;
        let name = self.expect_str("domain name")?;
        self.expect_keyword("kind")?;
        let kind = self.expect_choice("domain kind", &["B", "C", "X"])?;
        let kind = DomainKind::from_letter(&kind).expect("choice restricted to kind letters");
        let facilities = self.facilities_clause()?;
        let span = start.to(self.prev_span());
        if self.claim_domain_id(diagram, body, &id, id_span) {
            body.spans
                .insert(Subject::Domain(diagram.clone(), DomainId(id.clone())), span);
            body.domains.push(DomainNode {
                id: DomainId(id),
                name,
                kind,
                facilities,
            });
        }
        self.end_statement()
    }

    fn requirement_item(&mut self, diagram: &DiagramId, body: &mut DiagramBody) -> PResult<()> {
        let start = self.bump().span;
        let (id, id_span) = self.expect_ident("requirement")?;
        let text = self.expect_str("requirement text")?;
        let mut constrains = BTreeSet::new();
        let mut refers = BTreeSet::new();
        if self.at_word("constrains") {
            self.bump();
            constrains = self
                .id_list("domain")?
                .into_iter()
                .map(|(d, _)| DomainId(d))
                .collect();
        }
        if self.at_word("refers") {
            self.bump();
            refers = self
                .id_list("domain")?
                .into_iter()
                .map(|(d, _)| DomainId(d))
                .collect();
        }
        let span = start.to(self.prev_span());
        let rid = crate::model::RequirementId(id);
        if body.requirements.iter().any(|r| r.id == rid) {
            self.error(
                id_span,
                format!("duplicate requirement id `{rid}` in diagram {diagram}"),
            );
        } else {
            body.spans
                .insert(Subject::Requirement(diagram.clone(), rid.clone()), span);
            body.requirements.push(Requirement {
                id: rid,
                text,
                constrains,
                refers,
            });
        }
        self.end_statement()
    }

    fn interface_item(&mut self, diagram: &DiagramId, body: &mut DiagramBody) -> PResult<()> {
        let start = self.bump().span;
        let (a, _) = self.expect_ident("domain")?;
        if !matches!(self.peek().kind, TokenKind::DashDash) {
            self.unexpected("`--`");
            return Err(());
        }
        self.bump();
        let (b, _) = self.expect_ident("domain")?;
        self.expect_keyword("phenomena")?;
        let phenomena = self.list(|p| p.expect_str("phenomenon"))?;
        let span = start.to(self.prev_span());
        body.spans.insert(
            Subject::Interface(diagram.clone(), body.interfaces.len()),
            span,
        );
        body.interfaces.push(Interface {
            a: DomainId(a),
            b: DomainId(b),
            phenomena,
        });
        self.end_statement()
    }

    fn pair(&mut self) -> PResult<DiagramPair> {
        let (a, _) = self.expect_ident("diagram")?;
        let (b, _) = self.expect_ident("diagram")?;
        Ok(DiagramPair::new(a, b))
    }

    fn correlation_stmt(&mut self) -> PResult<()> {
        let start = self.bump().span;
        let pair = self.pair()?;
        let level = match self
            .expect_choice("correlation level", &["high", "low"])?
            .as_str()
        {
            "high" => CorrelationLevel::High,
            _ => CorrelationLevel::Low,
        };
        let span = start.to(self.prev_span());
        if self.model.correlations.contains(&pair) {
            self.error(span, format!("duplicate correlation for {pair}"));
        } else {
            self.spans.insert(Subject::Correlation(pair.clone()), span);
            self.model.correlations.set(pair, level);
        }
        self.end_statement()
    }

    fn hint_stmt(&mut self) -> PResult<()> {
        let start = self.bump().span;
        self.expect_keyword("merge")?;
        let pair = self.pair()?;
        let accepted =
            self.expect_choice("hint decision", &["accepted", "rejected"])? == "accepted";
        let note = self.optional_str();
        let span = start.to(self.prev_span());
        if self.model.hint(&pair).is_some() {
            self.error(span, format!("duplicate merge hint for {pair}"));
        } else {
            self.spans.insert(Subject::Hint(pair.clone()), span);
            self.model.hints.push(MergeHint {
                pair,
                accepted,
                note,
            });
        }
        self.end_statement()
    }

    fn similarity_stmt(&mut self) -> PResult<()> {
        let start = self.bump().span;
        let pair = self.pair()?;
        let count = self.expect_int("shared facility count")?;
        let span = start.to(self.prev_span());
        self.similarity_first.get_or_insert(span);
        if self.similarity_pairs.contains_key(&pair) {
            self.error(span, format!("duplicate similarity entry for {pair}"));
        } else {
            self.spans
                .insert(Subject::SimilarityPair(pair.clone()), span);
            self.similarity_pairs.insert(pair, count);
        }
        self.end_statement()
    }

    fn similarity_all_stmt(&mut self) -> PResult<()> {
        let start = self.bump().span;
        let count = self.expect_int("global shared facility count")?;
        let span = start.to(self.prev_span());
        if self.similarity_all.is_some() {
            self.error(span, "duplicate `similarity-all` statement");
        } else {
            self.similarity_all = Some((count, span));
        }
        self.end_statement()
    }

    fn finish(mut self) -> ParseOutput {
        match (self.similarity_all, self.similarity_first) {
            (Some((global, span)), _) => {
                self.spans.insert(Subject::SimilarityGlobal, span);
                self.model.similarity_override = Some(SimilarityOverride {
                    pairwise: std::mem::take(&mut self.similarity_pairs),
                    global,
                });
            }
            (None, Some(first)) => self.error(
                first,
                "partial similarity override: `similarity` lines require a `similarity-all` statement",
            ),
            (None, None) => {}
        }

        let fallback = SourceSpan::new(1, 1, 0);
        for diag in validate(&self.model) {
            let span = self.spans.get(&diag.subject).copied().unwrap_or(fallback);
            self.diags.push(ParseDiagnostic {
                span,
                severity: diag.severity,
                message: diag.message,
                expected: None,
            });
        }

        let mut seen = HashSet::new();
        let mut diagnostics: Vec<ParseDiagnostic> = self
            .diags
            .into_iter()
            .filter(|d| seen.insert((d.span, d.message.clone())))
            .collect();
        diagnostics.sort_by_key(|d| (d.span.line, d.span.column));
        let failed = diagnostics.iter().any(|d| d.severity == Severity::Error);
        ParseOutput {
            model: (!failed).then_some(self.model),
            diagnostics,
        }
    }
}

#[derive(Default)]
struct DiagramBody {
    machine: Option<DomainNode>,
    /// A `machine` line was seen, even if it failed to parse.
    machine_line: bool,
    domains: Vec<DomainNode>,
    requirements: Vec<Requirement>,
    interfaces: Vec<Interface>,
    domain_ids: HashSet<String>,
    spans: HashMap<Subject, SourceSpan>,
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"
pfm-version 1
model "tiny"
facility cam "camera"
facility srv
diagram P1 "Watch" {
  machine S "System" facilities [srv]
  domain Cam "Camera" kind C facilities [cam, srv]
  domain Guard "Guard" kind B
  requirement R1 "Watch the gate" constrains [Cam] refers [Guard]
  interface S -- Cam phenomena ["frame", "tilt"]
}
diagram P2 "Log" {
  machine S
  domain Log "Log" kind X facilities [srv]
  requirement R2 "Keep log" constrains [Log]
  interface S -- Log phenomena ["append"]
}
correlation P1 P2 low
hint merge P2 P1 rejected "separate"
"#;

    fn errors(src: &str) -> Vec<ParseDiagnostic> {
        parse(src).expect_err("expected a failure")
    }

    #[test]
    fn parses_small_model() {
        let m = parse(SMALL).unwrap();
        assert_eq!(m.name, "tiny");
        assert_eq!(m.diagrams.len(), 2);
        assert_eq!(m.facilities.len(), 2);
        let p1 = &m.diagrams[0];
        assert_eq!(p1.machine.name, "System");
        assert_eq!(p1.domains[0].kind, DomainKind::Causal);
        assert_eq!(p1.interfaces[0].phenomena, vec!["frame", "tilt"]);
        assert_eq!(m.diagrams[1].machine.name, "S");
        assert_eq!(
            m.correlations.get(&DiagramPair::new("P2", "P1")),
            CorrelationLevel::Low
        );
        assert!(!m.hints[0].accepted);
        assert_eq!(m.hints[0].note.as_deref(), Some("separate"));
    }

    #[test]
    fn empty_source_is_empty_model() {
        let m = parse("").unwrap();
        assert!(m.diagrams.is_empty());
        assert!(m.facilities.is_empty());
        assert_eq!(parse("# only a comment\n\n").unwrap(), Model::default());
    }

    #[test]
    fn invalid_kind_lists_expected_letters() {
        let src = "diagram P1 \"t\" {\n  machine S\n  domain Cam \"Camera\" kind Q\n  requirement R \"r\" refers [S]\n}\n";
        let diags = errors(src);
        assert_eq!(diags.len(), 1, "{diags:#?}");
        let d = &diags[0];
        assert_eq!(d.span, SourceSpan::new(3, 28, 1));
        assert_eq!(d.expected.as_deref(), Some("one of `B`, `C`, `X`"));
    }

    #[test]
    fn duplicate_diagram_is_reported_at_second_id() {
        let src = "diagram P1 \"a\" {\n machine S\n}\ndiagram P1 \"b\" {\n machine S\n}\n";
        let diags = errors(src);
        let dup: Vec<_> = diags.iter().filter(|d| d.is_error()).collect();
        assert_eq!(dup.len(), 1);
        assert_eq!(dup[0].span, SourceSpan::new(4, 9, 2));
        assert!(dup[0].message.contains("P1"));
    }

    #[test]
    fn unknown_references_point_at_their_line() {
        let src = "diagram P1 \"a\" {\n machine S\n requirement R \"r\" constrains [Ghost]\n}\ncorrelation P1 P9 high\n";
        let diags = errors(src);
        assert_eq!(diags.len(), 2, "{diags:#?}");
        assert_eq!(diags[0].span.line, 3);
        assert!(diags[0].message.contains("Ghost"));
        assert_eq!(diags[1].span.line, 5);
        assert!(diags[1].message.contains("P9"));
    }

    #[test]
    fn unknown_facility_is_reference_error() {
        let src = "diagram P1 \"a\" {\n machine S\n domain D \"d\" kind C facilities [nope]\n requirement R \"r\" constrains [D]\n}\n";
        let diags = errors(src);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].span.line, 3);
    }

    #[test]
    fn partial_similarity_override_is_rejected() {
        let src = "diagram P1 \"a\" {\n machine S\n}\ndiagram P2 \"b\" {\n machine S\n}\nsimilarity P1 P2 1\n";
        let diags = errors(src);
        assert!(diags
            .iter()
            .any(|d| d.message.contains("similarity-all") && d.span.line == 7));

        let src = "diagram P1 \"a\" {\n machine S\n}\ndiagram P2 \"b\" {\n machine S\n}\ndiagram P3 \"c\" {\n machine S\n}\nsimilarity P1 P2 1\nsimilarity-all 0\n";
        let diags = errors(src);
        assert!(diags
            .iter()
            .any(|d| d.is_error() && d.message.contains("missing pair")));
    }

    #[test]
    fn recovers_and_reports_several_errors() {
        let src =
            "model 12\nfacility\nbogus line here\ndiagram P1 \"a\" {\n machine S\n wibble\n}\n";
        let diags = errors(src);
        let lines: Vec<usize> = diags
            .iter()
            .filter(|d| d.is_error())
            .map(|d| d.span.line)
            .collect();
        assert_eq!(lines, vec![1, 2, 3, 6]);
    }

    #[test]
    fn missing_closing_brace_is_reported() {
        let src = "diagram P1 \"a\" {\n machine S\n requirement R \"r\" refers [S]\ncorrelation P1 P2 low\n";
        let diags = errors(src);
        assert!(diags.iter().any(|d| d.message.contains("closing")));
    }

    #[test]
    fn version_header() {
        assert!(parse("pfm-version 1\nmodel \"x\"\n").is_ok());
        let diags = errors("pfm-version 2\n");
        assert!(diags[0].message.contains("unsupported"));
        let diags = errors("model \"x\"\npfm-version 1\n");
        assert!(diags[0].message.contains("first"));
    }

    #[test]
    fn hint_on_high_correlation_fails_parse() {
        let src = SMALL.replace("correlation P1 P2 low", "correlation P1 P2 high");
        let diags = errors(&src);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].span.line, 20);
    }

    #[test]
    fn warnings_do_not_block() {
        let out = parse_with_diagnostics("facility unused\n");
        assert!(out.model.is_some());
        assert_eq!(out.diagnostics.len(), 1);
        assert_eq!(out.diagnostics[0].severity, Severity::Warning);
    }
}
