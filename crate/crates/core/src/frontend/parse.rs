use std::collections::HashMap;

use super::defs::{is_name, Registry};
use super::ParseError;
use crate::dummy::Metric;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Index {
    pub name: String,
    pub up: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedFactor {
    pub symbol: String,
    pub indices: Vec<Index>,
}

/// A monomial: a sign and a product of indexed factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expression {
    pub sign: i8,
    pub factors: Vec<IndexedFactor>,
}

impl Expression {
    /// Index names with their occurrence counts, in first-appearance order.
    pub fn index_counts(&self) -> Vec<(String, usize)> {
        let mut order: Vec<String> = Vec::new();
        let mut counts: HashMap<&str, usize> = HashMap::new();
        for idx in self.factors.iter().flat_map(|f| &f.indices) {
            let c = counts.entry(&idx.name).or_insert(0);
            if *c == 0 {
                order.push(idx.name.clone());
            }
            *c += 1;
        }
        order.into_iter().map(|n| { let c = counts[n.as_str()]; (n, c) }).collect()
    }
}

impl std::fmt::Display for Expression {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.sign < 0 {
            f.write_str("-")?;
        }
        for (k, factor) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{}(", factor.symbol)?;
            for (j, idx) in factor.indices.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                if !idx.up {
                    f.write_str("-")?;
                }
                f.write_str(&idx.name)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn token_here(&self) -> String {
        let rest = &self.text[self.pos..];
        let end = rest
            .char_indices()
            .find(|&(i, c)| i > 0 && (c.is_whitespace() || "(),*".contains(c)) || (i == 0 && c.is_whitespace()))
            .map_or(rest.len(), |(i, _)| i.max(1));
        if rest.is_empty() {
            "<end of input>".to_string()
        } else {
            rest[..end.min(rest.len())].to_string()
        }
    }

    fn error<T>(&mut self, msg: &str) -> Result<T, ParseError> {
        self.skip_ws();
        Err(ParseError::Syntax {
            pos: self.pos,
            token: self.token_here(),
            msg: msg.to_string(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn name(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .char_indices()
            .find(|&(_, c)| !c.is_ascii_alphanumeric())
            .map_or(rest.len(), |(i, _)| i);
        let name = &rest[..len];
        if !is_name(name) {
            return self.error("expected a name");
        }
        self.pos += len;
        Ok(name.to_string())
    }
}

/// Parses `sign? NAME(idx,...) (* NAME(idx,...))*` and checks it against the
/// registry: known symbols, matching ranks, and every index name used at most
/// twice.
pub fn parse_expression(text: &str, registry: &Registry) -> Result<Expression, ParseError> {
    parse_with_metric(text, registry, registry.metric)
}

pub(crate) fn parse_with_metric(text: &str, registry: &Registry, metric: Metric) -> Result<Expression, ParseError> {
    let mut lx = Lexer { text, pos: 0 };
    let sign = if lx.eat('-') {
        -1
    } else {
        lx.eat('+');
        1
    };
    let mut factors = Vec::new();
    loop {
        let symbol = lx.name()?;
        let Some(def) = registry.get(&symbol) else {
            return Err(ParseError::UnknownSymbol(symbol));
        };
        if !lx.eat('(') {
            return lx.error("expected '('");
        }
        let mut indices = Vec::new();
        if !lx.eat(')') {
            loop {
                let up = !lx.eat('-');
                let name = lx.name()?;
                indices.push(Index { name, up });
                if lx.eat(',') {
                    continue;
                }
                if lx.eat(')') {
                    break;
                }
                return lx.error("expected ',' or ')'");
            }
        }
        if indices.len() != def.rank {
            return Err(ParseError::Arity {
                name: symbol,
                expected: def.rank,
                got: indices.len(),
            });
        }
        factors.push(IndexedFactor { symbol, indices });
        if lx.peek().is_none() {
            break;
        }
        if !lx.eat('*') {
            return lx.error("expected '*' or end of input");
        }
    }
    let expr = Expression { sign, factors };
    for (name, count) in expr.index_counts() {
        if count > 2 {
            return Err(ParseError::Repeated { name, count });
        }
        if count == 2 && metric == Metric::None {
            let mut vars = expr.factors.iter().flat_map(|f| &f.indices).filter(|i| i.name == name).map(|i| i.up);
            if vars.next() == vars.next() {
                return Err(ParseError::SameVariance(name));
            }
        }
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_definitions;

    fn registry() -> Registry {
        parse_definitions("tensor R rank 4\ngen -(1,2)\ngen -(3,4)\ngen (1,3)(2,4)\ntensor T rank 2\ntensor S rank 0").unwrap()
    }

    #[test]
    fn worked_example_monomial() {
        let e = parse_expression("R(-d2,-d3,d1,d4) * R(-d5,b,a,d2) * R(-d4,d3,-d1,d5)", &registry()).unwrap();
        assert_eq!(e.sign, 1);
        assert_eq!(e.factors.len(), 3);
        let counts = e.index_counts();
        let mut free: Vec<&str> = counts.iter().filter(|c| c.1 == 1).map(|c| c.0.as_str()).collect();
        let mut dummy: Vec<&str> = counts.iter().filter(|c| c.1 == 2).map(|c| c.0.as_str()).collect();
        free.sort();
        dummy.sort();
        assert_eq!(free, ["a", "b"]);
        assert_eq!(dummy, ["d1", "d2", "d3", "d4", "d5"]);
        assert_eq!(e.to_string(), "R(-d2,-d3,d1,d4) * R(-d5,b,a,d2) * R(-d4,d3,-d1,d5)");
    }

    #[test]
    fn simple_forms() {
        let reg = registry();
        let e = parse_expression("T(a,b)", &reg).unwrap();
        assert_eq!(e.factors[0].indices.len(), 2);
        let e = parse_expression(" - T( a , -b )*S()", &reg).unwrap();
        assert_eq!(e.sign, -1);
        assert!(!e.factors[0].indices[1].up);
        assert_eq!(e.to_string(), "-T(a,-b) * S()");
        assert!(parse_expression("+T(a,b)", &reg).is_ok());
        assert!(parse_expression("R(a,a,b,b)", &reg).is_ok());
    }

    #[test]
    fn validation_errors() {
        let reg = registry();
        assert_eq!(parse_expression("Q(a)", &reg), Err(ParseError::UnknownSymbol("Q".into())));
        assert_eq!(
            parse_expression("T(a)", &reg),
            Err(ParseError::Arity { name: "T".into(), expected: 2, got: 1 })
        );
        assert_eq!(
            parse_expression("T(a,a) * T(a,b)", &reg),
            Err(ParseError::Repeated { name: "a".into(), count: 3 })
        );
        assert_eq!(
            parse_with_metric("T(a,a)", &reg, Metric::None),
            Err(ParseError::SameVariance("a".into()))
        );
        assert!(parse_with_metric("T(a,-a)", &reg, Metric::None).is_ok());
    }

    #[test]
    fn syntax_errors_name_the_token() {
        let reg = registry();
        for (text, token) in [
            ("T(a,b", "<end of input>"),
            ("T(a b)", "b"),
            ("T(a,b) T(c,d)", "T"),
            ("T(a,b) * ", "<end of input>"),
            ("T(a,$)", "$"),
            ("T[a,b]", "["),
        ] {
            match parse_expression(text, &reg) {
                Err(ParseError::Syntax { token: t, .. }) => assert!(t.starts_with(token), "{text:?}: {t:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
