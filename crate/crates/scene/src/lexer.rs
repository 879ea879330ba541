use crate::ast::Pos;
use crate::error::SceneError;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Ident(String),
    /// Digits only.
    Int(String),
    /// Digits with a fraction or exponent.
    Decimal(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Eq,
    Slash,
    Minus,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Int(s) | Tok::Decimal(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, SceneError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) {
            let mut decimal = false;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                decimal = true;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    decimal = true;
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let s: String = chars[start..i].iter().collect();
            if decimal {
                Tok::Decimal(s)
            } else {
                Tok::Int(s)
            }
        } else {
            i += 1;
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '=' => Tok::Eq,
                '/' => Tok::Slash,
                '-' => Tok::Minus,
                other => {
                    return Err(SceneError::Syntax {
                        pos,
                        found: format!("`{other}`"),
                        expected: vec!["a token".into()],
                    })
                }
            }
        };
        col += i - start;
        out.push(Token { tok, pos });
    }
    out.push(Token { tok: Tok::Eof, pos: Pos { line, col } });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_one_based() {
        let t = tokenize("point A = (1, -2/3)\n  # note\n line").unwrap();
        assert_eq!(t[0].pos, Pos { line: 1, col: 1 });
        assert_eq!(t[1].tok, Tok::Ident("A".into()));
        assert_eq!(t[1].pos, Pos { line: 1, col: 7 });
        assert_eq!(t[6].tok, Tok::Minus);
        let last = &t[t.len() - 2];
        assert_eq!(last.pos, Pos { line: 3, col: 2 });
    }

    #[test]
    fn numbers() {
        let t = tokenize("12 0.5 1e-3 3e 7/2").unwrap();
        let kinds: Vec<_> = t.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(kinds[0], Tok::Int("12".into()));
        assert_eq!(kinds[1], Tok::Decimal("0.5".into()));
        assert_eq!(kinds[2], Tok::Decimal("1e-3".into()));
        assert_eq!(kinds[3], Tok::Int("3".into()));
        assert_eq!(kinds[4], Tok::Ident("e".into()));
    }

    #[test]
    fn stray_character() {
        let e = tokenize("point A = @").unwrap_err();
        assert_eq!(e.pos(), Pos { line: 1, col: 11 });
    }
}
