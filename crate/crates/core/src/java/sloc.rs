//! Comment-aware source line counting.
//!
//! A single pass over the text classifies each physical line as code or
//! not. A line is code when it holds at least one character outside
//! comments; string, char and text-block contents are code, so comment
//! markers inside literals do not start comments.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Code,
    LineComment,
    BlockComment,
    StringLiteral,
    CharLiteral,
    TextBlock,
}

/// Per-line classification of a source text.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LineFlags {
    code: Vec<bool>,
    /// 1-based line where a block comment opened and never closed.
    pub unterminated_comment: Option<usize>,
}

impl LineFlags {
    pub fn scan(text: &str) -> Self {
        let bytes = text.as_bytes();
        let mut code = Vec::new();
        let mut mode = Mode::Code;
        let mut line_has_code = false;
        let mut comment_start = 0usize;
        let mut i = 0;

        while i < bytes.len() {
            let b = bytes[i];
            let next = bytes.get(i + 1).copied();
            if b == b'\n' {
                code.push(line_has_code);
                line_has_code = false;
                match mode {
                    Mode::LineComment | Mode::StringLiteral | Mode::CharLiteral => mode = Mode::Code,
                    Mode::TextBlock => line_has_code = true,
                    _ => {}
                }
                i += 1;
                continue;
            }
            match mode {
                Mode::Code => match b {
                    b'/' if next == Some(b'/') => {
                        mode = Mode::LineComment;
                        i += 1;
                    }
                    b'/' if next == Some(b'*') => {
                        mode = Mode::BlockComment;
                        comment_start = code.len() + 1;
                        i += 1;
                    }
                    b'"' => {
                        line_has_code = true;
                        if next == Some(b'"') && bytes.get(i + 2) == Some(&b'"') {
                            mode = Mode::TextBlock;
                            i += 2;
                        } else {
                            mode = Mode::StringLiteral;
                        }
                    }
                    b'\'' => {
                        line_has_code = true;
                        mode = Mode::CharLiteral;
                    }
                    b' ' | b'\t' | b'\r' | 0x0c => {}
                    _ => line_has_code = true,
                },
                Mode::LineComment => {}
                Mode::BlockComment => {
                    if b == b'*' && next == Some(b'/') {
                        mode = Mode::Code;
                        i += 1;
                    }
                }
                Mode::StringLiteral | Mode::CharLiteral => {
                    let close = if mode == Mode::StringLiteral { b'"' } else { b'\'' };
                    if b == b'\\' {
                        // never skip past a newline; it ends the line
                        if next.is_some() && next != Some(b'\n') {
                            i += 1;
                        }
                    } else if b == close {
                        mode = Mode::Code;
                    }
                }
                Mode::TextBlock => {
                    line_has_code = true;
                    if b == b'\\' {
                        if next.is_some() && next != Some(b'\n') {
                            i += 1;
                        }
                    } else if b == b'"' && next == Some(b'"') && bytes.get(i + 2) == Some(&b'"') {
                        mode = Mode::Code;
                        i += 2;
                    }
                }
            }
            i += 1;
        }
        if !bytes.is_empty() && bytes[bytes.len() - 1] != b'\n' {
            code.push(line_has_code);
        }
        Self {
            code,
            unterminated_comment: (mode == Mode::BlockComment).then_some(comment_start),
        }
    }

    /// Number of physical lines.
    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.code.is_empty()
    }

    pub fn total(&self) -> usize {
        self.code.iter().filter(|c| **c).count()
    }

    /// Code lines within the inclusive 1-based line range.
    pub fn count_span(&self, first: usize, last: usize) -> usize {
        if first == 0 || first > last {
            return 0;
        }
        let end = last.min(self.code.len());
        if first > end {
            return 0;
        }
        self.code[first - 1..end].iter().filter(|c| **c).count()
    }

    pub fn is_code(&self, line: usize) -> bool {
        line >= 1 && self.code.get(line - 1).copied().unwrap_or(false)
    }
}

/// Number of lines that contain code outside comments.
pub fn count_sloc(source_text: &str) -> usize {
    LineFlags::scan(source_text).total()
}
