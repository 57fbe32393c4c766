use super::expr::KnotExpression;
use super::KnotError;

/// Parses `unknot | atom(NAME) | mirror(E) | reverse(E) | sum(E,E,...) |
/// cable(E,p,q) | torus(p,q)`. Atoms come back symbolic; see
/// [`KnotExpression::resolve`].
pub fn parse_expression(input: &str) -> Result<KnotExpression, KnotError> {
    let mut p = Parser { src: input.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> KnotError {
        KnotError::Parse { pos: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), KnotError> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Result<String, KnotError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || matches!(c, b'_' | b'.' | b'-'))
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a name"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn int(&mut self) -> Result<i64, KnotError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| KnotError::Parse { pos: start, message: "expected an integer".into() })
    }

    fn expr(&mut self) -> Result<KnotExpression, KnotError> {
        let start = self.pos;
        let head = self.word()?;
        if head == "unknot" {
            return Ok(KnotExpression::Unknot);
        }
        self.expect(b'(')?;
        let e = match head.as_str() {
            "atom" => KnotExpression::symbol(self.word()?),
            "mirror" => self.expr()?.mirror(),
            "reverse" => self.expr()?.reverse(),
            "sum" => {
                let mut acc = self.expr()?;
                self.expect(b',')?;
                acc = acc.sum(self.expr()?);
                while self.eat(b',') {
                    acc = acc.sum(self.expr()?);
                }
                acc
            }
            "cable" => {
                let companion = self.expr()?;
                self.expect(b',')?;
                let p = self.int()?;
                self.expect(b',')?;
                let q = self.int()?;
                companion.cable(p, q)?
            }
            "torus" => {
                let p = self.int()?;
                self.expect(b',')?;
                let q = self.int()?;
                KnotExpression::torus(p, q)?
            }
            _ => {
                return Err(KnotError::Parse { pos: start, message: format!("unknown constructor '{head}'") })
            }
        };
        self.expect(b')')?;
        Ok(e)
    }
}
