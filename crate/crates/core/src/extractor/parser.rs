//! Declaration-level recognition over the stripped token stream.
//!
//! This is deliberately not a grammar: it walks tokens at member level,
//! recognizes the handful of declaration shapes that carry identity
//! (types, aspects, methods, pointcuts, advice), and skips everything else
//! while staying balanced on braces. Unknown constructs never abort a scan.

use crate::differ::{self, AdviceKind};
use crate::extractor::lexer::{fingerprint, Token, TokenKind};
use crate::extractor::{RawDiag, ScanConfig};
use crate::model::{Entity, EntityKind, SourceLocation};

const MODIFIERS: &[&str] = &[
    "public",
    "private",
    "protected",
    "static",
    "final",
    "abstract",
    "native",
    "synchronized",
    "transient",
    "volatile",
    "strictfp",
    "default",
    "privileged",
];

const CONTROL_WORDS: &[&str] = &[
    "if", "else", "for", "while", "do", "switch", "case", "catch", "try", "finally", "return",
    "throw", "new", "assert", "super", "this", "synchronized", "break", "continue",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TypeTag {
    Class,
    Interface,
    Enum,
    Aspect,
    Annotation,
}

struct TypeFrame {
    tag: TypeTag,
    name: String,
    /// Dot-joined nesting path of simple names, package excluded.
    path: String,
    /// Identity key of this type, used as the owner key for members.
    key: String,
    /// Whether this type and its direct members produce entities.
    counted: bool,
}

pub struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token<'a>>,
    pos: usize,
    cfg: &'a ScanConfig,
    package: String,
    stack: Vec<TypeFrame>,
    pub entities: Vec<Entity>,
    pub diagnostics: Vec<RawDiag>,
    file: &'a str,
    unbalanced_eof: bool,
}

impl<'a> Parser<'a> {
    pub fn new(src: &'a str, toks: Vec<Token<'a>>, file: &'a str, cfg: &'a ScanConfig) -> Self {
        Parser {
            src,
            toks,
            pos: 0,
            cfg,
            package: String::new(),
            stack: Vec::new(),
            entities: Vec::new(),
            diagnostics: Vec::new(),
            file,
            unbalanced_eof: false,
        }
    }

    // ── token helpers ──

    fn peek(&self) -> Option<&Token<'a>> {
        self.toks.get(self.pos)
    }

    fn at(&self, idx: usize) -> Option<&Token<'a>> {
        self.toks.get(idx)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn is_word_at(&self, idx: usize, word: &str) -> bool {
        self.at(idx).is_some_and(|t| t.is_word(word))
    }

    fn is_symbol_at(&self, idx: usize, sym: char) -> bool {
        self.at(idx).is_some_and(|t| t.is_symbol(sym))
    }

    fn diag(&mut self, line: u32, message: impl Into<String>) {
        self.diagnostics.push(RawDiag {
            line,
            message: message.into(),
        });
    }

    fn last_line(&self) -> u32 {
        self.toks.last().map_or(1, |t| t.line)
    }

    /// Byte range [start of token `from`, end of token `to`] as source text.
    fn region(&self, from: usize, to: usize) -> &'a str {
        let start = self.toks[from].start;
        let end = self.toks[to].end;
        &self.src[start..end]
    }

    // ── entry point ──

    pub fn parse(&mut self) {
        while let Some(tok) = self.peek() {
            if tok.is_word("package") && self.package.is_empty() && self.stack.is_empty() {
                self.parse_package();
            } else if tok.is_word("import") {
                self.skip_to_semicolon();
            } else if tok.is_symbol('}') || tok.is_symbol(';') {
                self.bump();
            } else if tok.is_symbol('{') {
                self.bump();
                self.parse_other_block();
            } else {
                self.parse_member(None);
            }
        }
        if self.unbalanced_eof {
            let line = self.last_line();
            self.diag(line, "unbalanced braces: remainder of file skipped");
        }
    }

    fn parse_package(&mut self) {
        self.bump();
        let mut parts = Vec::new();
        while let Some(tok) = self.peek() {
            match tok.kind {
                TokenKind::Word => parts.push(tok.text.to_string()),
                TokenKind::Symbol if tok.is_symbol(';') => {
                    self.bump();
                    break;
                }
                TokenKind::Symbol if tok.is_symbol('.') => {}
                _ => break,
            }
            self.bump();
        }
        self.package = parts.join(".");
    }

    fn skip_to_semicolon(&mut self) {
        while let Some(tok) = self.peek() {
            if tok.is_symbol(';') {
                self.bump();
                return;
            }
            if tok.is_symbol('}') {
                return;
            }
            self.bump();
        }
    }

    // ── block soup: find nested type declarations, stay balanced ──

    fn parse_other_block(&mut self) {
        loop {
            let Some(tok) = self.peek() else {
                self.unbalanced_eof = true;
                return;
            };
            if tok.is_symbol('}') {
                self.bump();
                return;
            }
            if tok.is_symbol('{') {
                self.bump();
                self.parse_other_block();
                continue;
            }
            if tok.kind == TokenKind::Word && self.type_keyword_here() {
                self.parse_type_decl(self.pos);
                continue;
            }
            self.bump();
        }
    }

    /// True when the current token begins a named type declaration.
    fn type_keyword_here(&self) -> bool {
        let Some(tok) = self.peek() else {
            return false;
        };
        let prev_is_dot = self.pos > 0 && self.is_symbol_at(self.pos - 1, '.');
        if prev_is_dot {
            return false;
        }
        let named = self
            .at(self.pos + 1)
            .is_some_and(|t| t.kind == TokenKind::Word);
        match tok.text {
            "class" | "enum" | "interface" => named,
            "aspect" => named && self.aspect_lookahead(self.pos),
            _ => false,
        }
    }

    /// Checks that `aspect Name ... {` is ahead, so a variable or type named
    /// `aspect` is not mistaken for a declaration.
    fn aspect_lookahead(&self, kw: usize) -> bool {
        if self.at(kw + 1).map(|t| t.kind) != Some(TokenKind::Word) {
            return false;
        }
        let mut idx = kw + 2;
        let mut parens = 0u32;
        while let Some(tok) = self.at(idx) {
            if parens == 0 {
                if tok.is_symbol('{') {
                    return true;
                }
                if tok.is_symbol(';') || tok.is_symbol('=') || tok.is_symbol('}') {
                    return false;
                }
            }
            if tok.is_symbol('(') {
                parens += 1;
            } else if tok.is_symbol(')') {
                parens = parens.saturating_sub(1);
            }
            idx += 1;
        }
        false
    }

    // ── member level ──

    fn parse_member(&mut self, frame: Option<usize>) {
        // Leading annotations are not part of a declaration's identity or
        // fingerprint; `@interface` starts an annotation type instead.
        loop {
            let Some(tok) = self.peek() else {
                return;
            };
            if tok.is_symbol('@') {
                if self.is_word_at(self.pos + 1, "interface") {
                    self.bump();
                    self.parse_type_decl(self.pos);
                    return;
                }
                self.skip_annotation();
            } else {
                break;
            }
        }

        let hdr_start = self.pos;
        loop {
            let Some(tok) = self.peek() else {
                return;
            };
            if tok.kind == TokenKind::Word && MODIFIERS.contains(&tok.text) {
                // `default` can also start an annotation member's value;
                // only treat it as a modifier when a declaration follows.
                self.bump();
            } else if tok.is_symbol('@') && !self.is_word_at(self.pos + 1, "interface") {
                self.skip_annotation();
            } else {
                break;
            }
        }

        let Some(tok) = self.peek() else {
            return;
        };
        if tok.kind == TokenKind::Word {
            match tok.text {
                "class" | "enum" | "interface" => {
                    self.parse_type_decl(hdr_start);
                    return;
                }
                "aspect" if self.aspect_lookahead(self.pos) => {
                    self.parse_type_decl(hdr_start);
                    return;
                }
                "pointcut"
                    if self.at(self.pos + 1).map(|t| t.kind) == Some(TokenKind::Word)
                        && self.is_symbol_at(self.pos + 2, '(') =>
                {
                    self.parse_pointcut(frame, hdr_start);
                    return;
                }
                "before" | "after"
                    if self.in_aspect(frame) && self.advice_lookahead(self.pos) =>
                {
                    self.parse_advice(frame, hdr_start, self.pos);
                    return;
                }
                _ => {}
            }
        }
        self.parse_generic_member(frame, hdr_start);
    }

    fn in_aspect(&self, frame: Option<usize>) -> bool {
        frame.is_some_and(|i| self.stack[i].tag == TypeTag::Aspect)
    }

    fn skip_annotation(&mut self) {
        self.bump(); // '@'
        if self.peek().map(|t| t.kind) == Some(TokenKind::Word) {
            self.bump();
            while self.is_symbol_at(self.pos, '.')
                && self.at(self.pos + 1).map(|t| t.kind) == Some(TokenKind::Word)
            {
                self.bump();
                self.bump();
            }
        }
        if self.is_symbol_at(self.pos, '(') {
            self.consume_balanced_parens();
        }
    }

    fn consume_balanced_parens(&mut self) {
        let mut parens = 0u32;
        while let Some(tok) = self.peek() {
            if tok.is_symbol('(') {
                parens += 1;
            } else if tok.is_symbol(')') {
                parens = parens.saturating_sub(1);
                if parens == 0 {
                    self.bump();
                    return;
                }
            }
            self.bump();
        }
        self.unbalanced_eof = true;
    }

    // ── type declarations ──

    fn parse_type_decl(&mut self, hdr_start: usize) {
        let kw = self.peek().expect("type keyword").text;
        let kw_line = self.peek().expect("type keyword").line;
        let tag = match kw {
            "class" => TypeTag::Class,
            "enum" => TypeTag::Enum,
            "interface" => {
                if self.pos > 0 && self.is_symbol_at(self.pos - 1, '@') {
                    TypeTag::Annotation
                } else {
                    TypeTag::Interface
                }
            }
            "aspect" => TypeTag::Aspect,
            _ => TypeTag::Class,
        };
        // The '@' of '@interface' sits right before the keyword after
        // parse_member routed us here; hdr_start may equal the keyword.
        self.bump();
        let Some(name_tok) = self.peek() else {
            self.diag(kw_line, format!("missing name after `{kw}`"));
            return;
        };
        if name_tok.kind != TokenKind::Word {
            self.diag(kw_line, format!("missing name after `{kw}`"));
            return;
        }
        let name = name_tok.text.to_string();
        self.bump();

        // Header extends to the body brace: extends/implements clauses,
        // type parameters, and aspect per-clauses all included.
        let mut parens = 0u32;
        let hdr_end;
        loop {
            let Some(tok) = self.peek() else {
                self.diag(kw_line, format!("type `{name}` has no body"));
                return;
            };
            if parens == 0 {
                if tok.is_symbol('{') {
                    hdr_end = self.pos - 1;
                    break;
                }
                if tok.is_symbol(';') {
                    self.diag(kw_line, format!("type `{name}` has no body"));
                    self.bump();
                    return;
                }
                if tok.is_symbol('}') {
                    self.diag(kw_line, format!("type `{name}` has no body"));
                    return;
                }
            }
            if tok.is_symbol('(') {
                parens += 1;
            } else if tok.is_symbol(')') {
                parens = parens.saturating_sub(1);
            }
            self.bump();
        }

        let path = match self.stack.last() {
            Some(parent) => format!("{}.{name}", parent.path),
            None => name.clone(),
        };
        let counted = match tag {
            TypeTag::Class | TypeTag::Enum | TypeTag::Aspect => true,
            TypeTag::Interface => self.cfg.count_interfaces,
            TypeTag::Annotation => false,
        };
        let key = match tag {
            TypeTag::Aspect => differ::aspect_key(&self.package, &path),
            _ => differ::class_key(&self.package, &path),
        };
        let display = if self.package.is_empty() {
            path.clone()
        } else {
            format!("{}.{path}", self.package)
        };
        if counted {
            let kind = if tag == TypeTag::Aspect {
                EntityKind::Aspect
            } else {
                EntityKind::Class
            };
            self.emit(
                kind,
                key.clone(),
                display,
                self.toks[hdr_start].line,
                self.region(hdr_start, hdr_end),
            );
        }

        self.bump(); // '{'
        self.stack.push(TypeFrame {
            tag,
            name,
            path,
            key,
            counted,
        });
        if tag == TypeTag::Enum {
            self.parse_enum_body();
        } else {
            self.parse_type_body();
        }
        self.stack.pop();
    }

    fn parse_type_body(&mut self) {
        let frame = Some(self.stack.len() - 1);
        loop {
            let Some(tok) = self.peek() else {
                self.unbalanced_eof = true;
                return;
            };
            if tok.is_symbol('}') {
                self.bump();
                return;
            }
            if tok.is_symbol(';') {
                self.bump();
                continue;
            }
            if tok.is_symbol('{') {
                // Instance initializer block.
                self.bump();
                self.parse_other_block();
                continue;
            }
            self.parse_member(frame);
        }
    }

    /// Enum bodies start with a constant list; constants may carry argument
    /// lists and anonymous bodies, neither of which declares members.
    fn parse_enum_body(&mut self) {
        loop {
            let Some(tok) = self.peek() else {
                self.unbalanced_eof = true;
                return;
            };
            if tok.is_symbol('}') {
                self.bump();
                return;
            }
            if tok.is_symbol(';') {
                self.bump();
                self.parse_type_body();
                return;
            }
            if tok.is_symbol('@') {
                self.skip_annotation();
                continue;
            }
            if tok.is_symbol('(') {
                self.consume_balanced_parens();
                continue;
            }
            if tok.is_symbol('{') {
                self.bump();
                self.parse_other_block();
                continue;
            }
            self.bump();
        }
    }

    // ── pointcuts ──

    fn parse_pointcut(&mut self, frame: Option<usize>, hdr_start: usize) {
        let kw_line = self.toks[hdr_start].line;
        self.bump(); // 'pointcut'
        let name = self.peek().expect("pointcut name").text.to_string();
        self.bump();
        let arity = self.param_arity();
        self.consume_balanced_parens();

        let end;
        if self.is_symbol_at(self.pos, ':') {
            self.bump();
            let mut parens = 0u32;
            loop {
                let Some(tok) = self.peek() else {
                    self.unbalanced_eof = true;
                    return;
                };
                if parens == 0 && tok.is_symbol(';') {
                    end = self.pos;
                    self.bump();
                    break;
                }
                if parens == 0 && (tok.is_symbol('{') || tok.is_symbol('}')) {
                    self.diag(kw_line, format!("malformed pointcut `{name}`"));
                    return;
                }
                if tok.is_symbol('(') {
                    parens += 1;
                } else if tok.is_symbol(')') {
                    parens = parens.saturating_sub(1);
                }
                self.bump();
            }
        } else if self.is_symbol_at(self.pos, ';') {
            end = self.pos;
            self.bump();
        } else {
            self.diag(kw_line, format!("malformed pointcut `{name}`"));
            self.skip_to_semicolon();
            return;
        }

        if let Some(frame) = frame {
            let owner = &self.stack[frame];
            if owner.counted {
                let key = differ::pointcut_key(&owner.key, &name, arity);
                let display = format!("{}.{name}/{arity}", self.owner_display(frame));
                self.emit(
                    EntityKind::Pointcut,
                    key,
                    display,
                    self.toks[hdr_start].line,
                    self.region(hdr_start, end),
                );
            }
        }
    }

    fn owner_display(&self, frame: usize) -> String {
        let owner = &self.stack[frame];
        if self.package.is_empty() {
            owner.path.clone()
        } else {
            format!("{}.{}", self.package, owner.path)
        }
    }

    // ── advice ──

    /// From a `before`/`after` word, verifies `name ( ... ) [returning|
    /// throwing [( ... )]] :` lies ahead.
    fn advice_lookahead(&self, start: usize) -> bool {
        let mut idx = start + 1;
        let Some(after_params) = self.skip_balanced_parens_index(idx) else {
            return false;
        };
        idx = after_params;
        if self.is_word_at(idx, "returning") || self.is_word_at(idx, "throwing") {
            idx += 1;
            if self.is_symbol_at(idx, '(') {
                match self.skip_balanced_parens_index(idx) {
                    Some(next) => idx = next,
                    None => return false,
                }
            }
        }
        self.is_symbol_at(idx, ':')
    }

    /// Index just past a balanced paren group starting at `idx`, if present.
    fn skip_balanced_parens_index(&self, idx: usize) -> Option<usize> {
        if !self.is_symbol_at(idx, '(') {
            return None;
        }
        let mut parens = 0u32;
        let mut i = idx;
        while let Some(tok) = self.at(i) {
            if tok.is_symbol('(') {
                parens += 1;
            } else if tok.is_symbol(')') {
                parens -= 1;
                if parens == 0 {
                    return Some(i + 1);
                }
            }
            i += 1;
        }
        None
    }

    fn parse_advice(&mut self, frame: Option<usize>, hdr_start: usize, kw_pos: usize) {
        let kw_line = self.toks[kw_pos].line;
        // Around advice: skip the return type tokens before `around`.
        while self.pos < kw_pos {
            self.bump();
        }
        let first = self.peek().expect("advice keyword").text;
        let mut kind = match first {
            "before" => AdviceKind::Before,
            "after" => AdviceKind::After,
            _ => AdviceKind::Around,
        };
        self.bump();
        self.consume_balanced_parens();
        if kind == AdviceKind::After {
            if self.peek().is_some_and(|t| t.is_word("returning")) {
                kind = AdviceKind::AfterReturning;
                self.bump();
                if self.is_symbol_at(self.pos, '(') {
                    self.consume_balanced_parens();
                }
            } else if self.peek().is_some_and(|t| t.is_word("throwing")) {
                kind = AdviceKind::AfterThrowing;
                self.bump();
                if self.is_symbol_at(self.pos, '(') {
                    self.consume_balanced_parens();
                }
            }
        }
        if !self.is_symbol_at(self.pos, ':') {
            self.diag(kw_line, "malformed advice header");
            self.skip_to_semicolon();
            return;
        }
        self.bump();

        // Pointcut expression up to the body brace, rebuilt without spaces.
        let mut expr = String::new();
        let mut parens = 0u32;
        loop {
            let Some(tok) = self.peek().copied() else {
                self.unbalanced_eof = true;
                return;
            };
            if parens == 0 && tok.is_symbol('{') {
                break;
            }
            if parens == 0 && (tok.is_symbol(';') || tok.is_symbol('}')) {
                self.diag(kw_line, "malformed advice header");
                if tok.is_symbol(';') {
                    self.bump();
                }
                return;
            }
            if tok.is_symbol('(') {
                parens += 1;
            } else if tok.is_symbol(')') {
                parens = parens.saturating_sub(1);
            }
            expr.push_str(tok.text);
            self.bump();
        }
        self.bump(); // '{'
        self.parse_other_block();
        let end = self.pos - 1;

        if let Some(frame) = frame {
            let owner_counted = self.stack[frame].counted;
            let owner_key = self.stack[frame].key.clone();
            if self.stack[frame].tag == TypeTag::Aspect && owner_counted {
                let key = differ::advice_key(&owner_key, kind, &expr);
                let display =
                    format!("{}.{}: {expr}", self.owner_display(frame), kind.tag());
                self.emit(
                    EntityKind::Advice,
                    key,
                    display,
                    self.toks[hdr_start].line,
                    self.region(hdr_start, end),
                );
            }
        }
    }

    // ── methods, fields, and everything else at member level ──

    fn parse_generic_member(&mut self, frame: Option<usize>, hdr_start: usize) {
        let scan_from = self.pos;
        let mut parens = 0u32;
        let mut first_paren: Option<usize> = None;
        let mut saw_eq_before_paren = false;
        let mut saw_colon_before_paren = false;
        let mut saw_colon_after_params = false;
        let mut terminator: Option<(usize, char)> = None;

        let mut idx = scan_from;
        while let Some(tok) = self.at(idx) {
            if tok.is_symbol('(') {
                if parens == 0 && first_paren.is_none() {
                    first_paren = Some(idx);
                }
                parens += 1;
            } else if tok.is_symbol(')') {
                parens = parens.saturating_sub(1);
            } else if parens == 0 {
                if tok.is_symbol('{') {
                    terminator = Some((idx, '{'));
                    break;
                }
                if tok.is_symbol(';') {
                    terminator = Some((idx, ';'));
                    break;
                }
                if tok.is_symbol('}') {
                    terminator = Some((idx, '}'));
                    break;
                }
                if tok.is_symbol('=') && first_paren.is_none() {
                    saw_eq_before_paren = true;
                }
                if tok.is_symbol(':') {
                    if first_paren.is_none() {
                        saw_colon_before_paren = true;
                    } else {
                        saw_colon_after_params = true;
                    }
                }
            }
            idx += 1;
        }
        let Some((term_idx, term)) = terminator else {
            self.pos = self.toks.len();
            self.unbalanced_eof = true;
            return;
        };

        // `Type around(...) : expr { ... }` inside an aspect.
        if saw_colon_after_params && !saw_eq_before_paren && !saw_colon_before_paren {
            if let Some(p) = first_paren {
                if p > scan_from
                    && self.is_word_at(p - 1, "around")
                    && self.in_aspect(frame)
                {
                    self.parse_advice(frame, hdr_start, p - 1);
                    return;
                }
            }
        }

        let method_like = !saw_eq_before_paren
            && !saw_colon_before_paren
            && !saw_colon_after_params
            && first_paren.is_some_and(|p| {
                p > scan_from && self.at(p - 1).map(|t| t.kind) == Some(TokenKind::Word)
            });

        if method_like {
            let paren = first_paren.unwrap();
            let name_tok = self.toks[paren - 1];
            let name = name_tok.text.to_string();
            let dotted = paren >= 2 && self.is_symbol_at(paren - 2, '.');
            if dotted {
                self.diag(
                    self.toks[hdr_start].line,
                    "intertype member declaration skipped",
                );
                self.consume_through(term_idx, term);
                return;
            }
            if CONTROL_WORDS.contains(&name.as_str()) {
                self.consume_through(term_idx, term);
                return;
            }

            let is_ctor = frame
                .map(|i| self.stack[i].name == name)
                .unwrap_or(false)
                && self.ctor_name_position(scan_from, paren - 1);
            if is_ctor && !self.cfg.count_constructors {
                self.consume_through(term_idx, term);
                return;
            }

            let arity = self.arity_at(paren);
            let end = self.consume_through(term_idx, term);
            if let (Some(frame_idx), Some(end)) = (frame, end) {
                let owner = &self.stack[frame_idx];
                if owner.counted {
                    let key = differ::method_key(&owner.key, &name, arity);
                    let display =
                        format!("{}.{name}/{arity}", self.owner_display(frame_idx));
                    self.emit(
                        EntityKind::Method,
                        key,
                        display,
                        self.toks[hdr_start].line,
                        self.region(hdr_start, end),
                    );
                }
            }
            return;
        }

        // Field, initializer block, `declare` statement, or soup. Flag
        // intertype field headers (`int Foo.x = ...;`) before skipping.
        let check = if saw_eq_before_paren {
            (scan_from..term_idx).find(|&i| self.is_symbol_at(i, '='))
        } else if term == ';' && !saw_colon_before_paren && !saw_colon_after_params {
            // A colon marks a `declare ...: ...;` statement, not a field.
            Some(term_idx)
        } else {
            None
        };
        if let Some(check) = check {
            if check >= 2
                && self.at(check - 1).map(|t| t.kind) == Some(TokenKind::Word)
                && self.is_symbol_at(check - 2, '.')
            {
                self.diag(
                    self.toks[hdr_start].line,
                    "intertype member declaration skipped",
                );
            }
        }
        if term == '{' && !saw_eq_before_paren && first_paren.is_none() {
            // Initializer block: consume just the block.
            while self.pos < term_idx {
                self.bump();
            }
            self.bump();
            self.parse_other_block();
            return;
        }
        self.consume_through(term_idx, term);
    }

    /// True when the name token directly follows the modifiers, optionally
    /// after a `<...>` type-parameter group (generic constructors).
    fn ctor_name_position(&self, scan_from: usize, name_idx: usize) -> bool {
        if name_idx == scan_from {
            return true;
        }
        if !self.is_symbol_at(scan_from, '<') {
            return false;
        }
        let mut angles = 0i32;
        let mut i = scan_from;
        while let Some(tok) = self.at(i) {
            if tok.is_symbol('<') {
                angles += 1;
            } else if tok.is_symbol('>') {
                angles -= 1;
                if angles == 0 {
                    return i + 1 == name_idx;
                }
            }
            i += 1;
        }
        false
    }

    /// Parameter count of the paren group starting at `paren`: top-level
    /// commas plus one, angle-bracket nesting respected, empty list is zero.
    fn arity_at(&self, paren: usize) -> usize {
        let mut parens = 0u32;
        let mut angles = 0i32;
        let mut commas = 0usize;
        let mut any = false;
        let mut i = paren;
        while let Some(tok) = self.at(i) {
            if tok.is_symbol('(') {
                parens += 1;
                if parens > 1 {
                    any = true;
                }
            } else if tok.is_symbol(')') {
                parens -= 1;
                if parens == 0 {
                    break;
                }
                any = true;
            } else {
                any = true;
                if tok.is_symbol('<') {
                    angles += 1;
                } else if tok.is_symbol('>') {
                    angles -= 1;
                } else if tok.is_symbol(',') && parens == 1 && angles == 0 {
                    commas += 1;
                }
            }
            i += 1;
        }
        if i > paren + 1 && any {
            commas + 1
        } else {
            0
        }
    }

    /// Consumes tokens up to and including the member terminator. For a
    /// body brace this walks the balanced block (finding nested types);
    /// for `=`-initializers it continues to the closing semicolon.
    /// Returns the index of the last consumed token, or None when the
    /// terminator was an enclosing close brace left for the caller.
    fn consume_through(&mut self, term_idx: usize, term: char) -> Option<usize> {
        while self.pos < term_idx {
            self.bump();
        }
        match term {
            ';' => {
                self.bump();
                Some(self.pos - 1)
            }
            '}' => None,
            _ => {
                // '{'
                self.bump();
                self.parse_other_block();
                let block_end = self.pos - 1;
                // An initializer may continue (`int[] a = {1}, b = {2};`).
                loop {
                    let Some(tok) = self.peek() else {
                        return Some(block_end);
                    };
                    if tok.is_symbol(';') {
                        self.bump();
                        return Some(self.pos - 1);
                    }
                    if tok.is_symbol(',') || tok.is_symbol('=') {
                        self.bump();
                        continue;
                    }
                    if tok.is_symbol('{') {
                        self.bump();
                        self.parse_other_block();
                        continue;
                    }
                    if tok.kind == TokenKind::Word && !self.type_keyword_here() {
                        // Array initializer declarator list continues.
                        if self.is_symbol_at(self.pos + 1, '=')
                            || self.is_symbol_at(self.pos + 1, ',')
                            || self.is_symbol_at(self.pos + 1, ';')
                            || self.is_symbol_at(self.pos + 1, '[')
                        {
                            self.bump();
                            continue;
                        }
                    }
                    return Some(block_end);
                }
            }
        }
    }

    fn param_arity(&self) -> usize {
        if self.is_symbol_at(self.pos, '(') {
            self.arity_at(self.pos)
        } else {
            0
        }
    }

    fn emit(&mut self, kind: EntityKind, key: String, display: String, line: u32, region: &str) {
        self.entities.push(Entity {
            kind,
            identity_key: key,
            display_name: display,
            location: SourceLocation {
                file: self.file.to_string(),
                line,
            },
            fingerprint: fingerprint(region),
        });
    }
}
