//! Tolerant lexical scan over Java/AspectJ source text.
//!
//! Comments disappear, string and char literals become opaque tokens, and
//! brace depth is tracked, so later stages can reason about declaration
//! structure without a full grammar. Line numbers and byte offsets are
//! preserved for diagnostics and for slicing declaration text back out.

/// Token categories after noise removal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    /// Identifier, keyword, or number.
    Word,
    /// Single punctuation character.
    Symbol,
    /// Complete string literal, quotes included, contents opaque.
    StrLit,
    /// Complete char literal, quotes included, contents opaque.
    CharLit,
}

/// One surviving token with its position and brace depth.
///
/// An opening brace carries the depth outside it; the matching closing brace
/// carries that same depth, and everything between sits one level deeper.
#[derive(Debug, Clone, Copy)]
pub struct Token<'a> {
    pub kind: TokenKind,
    pub text: &'a str,
    pub line: u32,
    pub depth: u32,
    pub start: usize,
    pub end: usize,
}

impl<'a> Token<'a> {
    pub fn is_word(&self, word: &str) -> bool {
        self.kind == TokenKind::Word && self.text == word
    }

    pub fn is_symbol(&self, symbol: char) -> bool {
        self.kind == TokenKind::Symbol && self.text.starts_with(symbol)
    }
}

/// A recoverable lexical problem at a source line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDiagnostic {
    pub line: u32,
    pub message: String,
}

/// Tokens plus any recovery notes from the scan.
#[derive(Debug, Default)]
pub struct LexOutput<'a> {
    pub tokens: Vec<Token<'a>>,
    pub diagnostics: Vec<RawDiagnostic>,
}

fn is_word_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_' || b == b'$' || b >= 0x80
}

/// Strips comments, collapses literals to opaque tokens, and tracks brace
/// depth. Unterminated comments or literals are treated as extending to the
/// end of the file and reported as diagnostics; a closing brace below depth
/// zero is clamped and reported.
pub fn strip_noise(text: &str) -> LexOutput<'_> {
    let bytes = text.as_bytes();
    let mut out = LexOutput::default();
    let mut i = 0usize;
    let mut line = 1u32;
    let mut depth = 0u32;

    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b'\n' => {
                line += 1;
                i += 1;
            }
            _ if b.is_ascii_whitespace() => i += 1,
            b'/' if bytes.get(i + 1) == Some(&b'/') => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'/' if bytes.get(i + 1) == Some(&b'*') => {
                let open_line = line;
                let mut j = i + 2;
                let mut closed = false;
                while j < bytes.len() {
                    if bytes[j] == b'\n' {
                        line += 1;
                    } else if bytes[j] == b'*' && bytes.get(j + 1) == Some(&b'/') {
                        j += 2;
                        closed = true;
                        break;
                    }
                    j += 1;
                }
                if !closed {
                    out.diagnostics.push(RawDiagnostic {
                        line: open_line,
                        message: "unterminated block comment".to_string(),
                    });
                }
                i = j;
            }
            b'"' | b'\'' => {
                let quote = b;
                let open_line = line;
                let start = i;
                let mut j = i + 1;
                let mut closed = false;
                while j < bytes.len() {
                    match bytes[j] {
                        b'\\' => j += 2,
                        b'\n' => {
                            line += 1;
                            j += 1;
                        }
                        c if c == quote => {
                            j += 1;
                            closed = true;
                            break;
                        }
                        _ => j += 1,
                    }
                }
                if !closed {
                    j = bytes.len();
                    out.diagnostics.push(RawDiagnostic {
                        line: open_line,
                        message: if quote == b'"' {
                            "unterminated string literal".to_string()
                        } else {
                            "unterminated char literal".to_string()
                        },
                    });
                }
                out.tokens.push(Token {
                    kind: if quote == b'"' {
                        TokenKind::StrLit
                    } else {
                        TokenKind::CharLit
                    },
                    text: &text[start..j.min(text.len())],
                    line: open_line,
                    depth,
                    start,
                    end: j.min(text.len()),
                });
                i = j;
            }
            _ if is_word_byte(b) => {
                let start = i;
                while i < bytes.len() && is_word_byte(bytes[i]) {
                    i += 1;
                }
                out.tokens.push(Token {
                    kind: TokenKind::Word,
                    text: &text[start..i],
                    line,
                    depth,
                    start,
                    end: i,
                });
            }
            _ => {
                let token_depth = match b {
                    b'{' => {
                        let d = depth;
                        depth += 1;
                        d
                    }
                    b'}' => {
                        if depth == 0 {
                            out.diagnostics.push(RawDiagnostic {
                                line,
                                message: "unmatched closing brace".to_string(),
                            });
                            0
                        } else {
                            depth -= 1;
                            depth
                        }
                    }
                    _ => depth,
                };
                out.tokens.push(Token {
                    kind: TokenKind::Symbol,
                    text: &text[i..i + 1],
                    line,
                    depth: token_depth,
                    start: i,
                    end: i + 1,
                });
                i += 1;
            }
        }
    }
    out
}

/// Canonical form of a declaration's text: comments count as whitespace,
/// every whitespace run collapses to one space, and the ends are trimmed.
/// Literal contents are preserved byte for byte.
pub fn normalize_source(text: &str) -> String {
    let bytes = text.as_bytes();
    let mut out = String::with_capacity(text.len());
    let mut pending_space = false;
    let mut i = 0usize;

    let push = |out: &mut String, pending: &mut bool, s: &str| {
        if *pending && !out.is_empty() {
            out.push(' ');
        }
        *pending = false;
        out.push_str(s);
    };

    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            pending_space = true;
            i += 1;
        } else if b == b'/' && bytes.get(i + 1) == Some(&b'/') {
            pending_space = true;
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
        } else if b == b'/' && bytes.get(i + 1) == Some(&b'*') {
            pending_space = true;
            let mut j = i + 2;
            while j < bytes.len() {
                if bytes[j] == b'*' && bytes.get(j + 1) == Some(&b'/') {
                    j += 2;
                    break;
                }
                j += 1;
            }
            i = j;
        } else if b == b'"' || b == b'\'' {
            let start = i;
            let mut j = i + 1;
            while j < bytes.len() {
                match bytes[j] {
                    b'\\' => j += 2,
                    c if c == b => {
                        j += 1;
                        break;
                    }
                    _ => j += 1,
                }
            }
            let j = j.min(text.len());
            push(&mut out, &mut pending_space, &text[start..j]);
            i = j;
        } else {
            let start = i;
            while i < bytes.len()
                && !bytes[i].is_ascii_whitespace()
                && bytes[i] != b'"'
                && bytes[i] != b'\''
                && !(bytes[i] == b'/'
                    && matches!(bytes.get(i + 1), Some(&b'/') | Some(&b'*')))
            {
                i += 1;
            }
            push(&mut out, &mut pending_space, &text[start..i]);
        }
    }
    out
}

const FNV_OFFSET_BASIS: u64 = 0xcbf29ce484222325;
const FNV_PRIME: u64 = 0x100000001b3;

/// FNV-1a over raw bytes.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = FNV_OFFSET_BASIS;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(FNV_PRIME);
    }
    hash
}

/// Digest of a declaration's normalized text.
pub fn fingerprint(region: &str) -> u64 {
    fnv1a64(normalize_source(region).as_bytes())
}
