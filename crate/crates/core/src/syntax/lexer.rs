use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBrack,
    RBrack,
    Comma,
    Semi,
    Colon,
    Plus,
    Star,
    Slash,
    Minus,
    Tilde,
    TildeBrace,
    Bang,
    Arrow,
    Wedge,
    Vee,
    DArrow,
    QImp,
    QAnd,
    QOr,
    QIff,
    Le,
    Lt,
    Eq,
    DSlash,
    EPow,
    Ident(String),
    Number(String),
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Number(s) => format!("`{s}`"),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Colon => ":",
            Tok::Plus => "+",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Minus => "-",
            Tok::Tilde => "~",
            Tok::TildeBrace => "~{",
            Tok::Bang => "!",
            Tok::Arrow => "->",
            Tok::Wedge => "/\\",
            Tok::Vee => "\\/",
            Tok::DArrow => "<->",
            Tok::QImp => "==>",
            Tok::QAnd => "&&",
            Tok::QOr => "||",
            Tok::QIff => "<=>",
            Tok::Le => "<=",
            Tok::Lt => "<",
            Tok::Eq => "=",
            Tok::DSlash => "//",
            Tok::EPow => "e^{",
            Tok::Ident(_) | Tok::Number(_) => "",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Pos {
    pub line: usize,
    pub col: usize,
}

// Longest match first.
const SYMBOLS: &[(&str, Tok)] = &[
    ("<=>", Tok::QIff),
    ("<->", Tok::DArrow),
    ("==>", Tok::QImp),
    ("e^{", Tok::EPow),
    ("->", Tok::Arrow),
    ("/\\", Tok::Wedge),
    ("\\/", Tok::Vee),
    ("&&", Tok::QAnd),
    ("||", Tok::QOr),
    ("<=", Tok::Le),
    ("//", Tok::DSlash),
    ("~{", Tok::TildeBrace),
    ("(", Tok::LParen),
    (")", Tok::RParen),
    ("{", Tok::LBrace),
    ("}", Tok::RBrace),
    ("[", Tok::LBrack),
    ("]", Tok::RBrack),
    (",", Tok::Comma),
    (";", Tok::Semi),
    (":", Tok::Colon),
    ("+", Tok::Plus),
    ("*", Tok::Star),
    ("/", Tok::Slash),
    ("-", Tok::Minus),
    ("~", Tok::Tilde),
    ("!", Tok::Bang),
    ("<", Tok::Lt),
    ("=", Tok::Eq),
];

pub(crate) fn tokenize(text: &str, first_line: usize) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let (mut line, mut col) = (first_line, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
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
        let pos = Pos { line, col };
        if c.is_ascii_alphabetic() || c == '_' {
            // `e^{` must win over the identifier `e`.
            if c == 'e' && chars.get(i + 1) == Some(&'^') && chars.get(i + 2) == Some(&'{') {
                out.push((Tok::EPow, pos));
                i += 3;
                col += 3;
                continue;
            }
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            col += i - start;
            out.push((Tok::Number(chars[start..i].iter().collect()), pos));
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        match SYMBOLS.iter().find(|(s, _)| rest.starts_with(s)) {
            Some((s, t)) => {
                out.push((t.clone(), pos));
                i += s.len();
                col += s.len();
            }
            None => return Err(ParseError::Syntax { line, col, message: format!("unexpected character `{c}`") }),
        }
    }
    Ok(out)
}
