//! Text syntax for groups, elements and subsets.
//!
//! ```text
//! group := term ("x" term)*
//! term  := "Z" | "Z^" int | "Zmod(" int ")" | "Sym(" int ")" | "Dih(" int ")"
//!        | "Free(" int ")" | "(" group ")"
//! set   := inter ("|" inter)*
//! inter := prod ("&" prod)*
//! prod  := unary ("*" unary)*
//! unary := "!" unary | atom
//! atom  := "{" elems "}" | "residues(" m ";" list ")" | "prefix(" letters ")"
//!        | "inv(" set ")" | "shift(" elem "," set ")" | "conj(" set "," elem ")"
//!        | "wr(" set "," set ")" | "(" set ")"
//! ```
//!
//! Elements: integers in cyclic groups and `Z`, tuples `(1,-2)` in products
//! and `Z^d`, one-line permutations `[1,0,2]` in `Sym(n)`, `r3` / `sr3` in
//! `Dih(n)`, and reduced words `abA` (uppercase = inverse, `1` = identity) in
//! free groups. Binary operators associate to the right.

use thiserror::Error;

use crate::error::Result;
use crate::grp::{letter, rank_perm, unrank_perm, Element, Group, GroupSpec, Letter, Subset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: expected {expected}, found {found}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl Parser {
    fn new(text: &str) -> Self {
        Parser { chars: text.chars().collect(), pos: 0 }
    }

    fn ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.chars.get(self.pos).copied()
    }

    fn looking_at(&mut self, lit: &str) -> bool {
        self.ws();
        let n = lit.chars().count();
        self.pos + n <= self.chars.len() && self.chars[self.pos..self.pos + n].iter().copied().eq(lit.chars())
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.looking_at(lit) {
            self.pos += lit.chars().count();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> PResult<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.error(&format!("'{lit}'")))
        }
    }

    fn error_at(&self, pos: usize, expected: &str) -> ParseError {
        let (mut line, mut column) = (1, 1);
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        let rest = &self.chars[pos.min(self.chars.len())..];
        let found = match rest.first() {
            None => "end of input".to_string(),
            Some(c) if c.is_alphanumeric() => {
                format!("'{}'", rest.iter().take_while(|c| c.is_alphanumeric()).collect::<String>())
            }
            Some(c) => format!("'{c}'"),
        };
        ParseError { line, column, expected: expected.to_string(), found }
    }

    fn error(&mut self, expected: &str) -> ParseError {
        self.ws();
        self.error_at(self.pos, expected)
    }

    fn int(&mut self) -> PResult<i64> {
        self.ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.error_at(start, "an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error_at(start, "an integer that fits in 64 bits"))
    }

    fn uint(&mut self) -> PResult<usize> {
        self.ws();
        let start = self.pos;
        let v = self.int()?;
        usize::try_from(v).map_err(|_| self.error_at(start, "a non-negative integer"))
    }

    fn finish(&mut self) -> PResult<()> {
        if self.peek().is_some() {
            Err(self.error("end of input"))
        } else {
            Ok(())
        }
    }

    fn group(&mut self) -> PResult<GroupSpec> {
        let mut parts = vec![self.group_term()?];
        while self.eat("x") {
            parts.push(self.group_term()?);
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one part") } else { GroupSpec::DirectProduct(parts) })
    }

    fn group_term(&mut self) -> PResult<GroupSpec> {
        let call = |p: &mut Parser, f: fn(usize) -> GroupSpec| -> PResult<GroupSpec> {
            let n = p.uint()?;
            p.expect(")")?;
            Ok(f(n))
        };
        if self.eat("Zmod(") {
            call(self, GroupSpec::Cyclic)
        } else if self.eat("Z^") {
            Ok(GroupSpec::FreeAbelian(self.uint()?))
        } else if self.eat("Z") {
            Ok(GroupSpec::FreeAbelian(1))
        } else if self.eat("Sym(") {
            call(self, GroupSpec::Symmetric)
        } else if self.eat("Dih(") {
            call(self, GroupSpec::Dihedral)
        } else if self.eat("Free(") {
            call(self, GroupSpec::Free)
        } else if self.eat("(") {
            let g = self.group()?;
            self.expect(")")?;
            Ok(g)
        } else {
            Err(self.error("a group (Z, Z^d, Zmod(n), Sym(n), Dih(n), Free(k))"))
        }
    }

    fn set(&mut self, g: &Group) -> PResult<Subset> {
        self.binary(g, 0)
    }

    fn binary(&mut self, g: &Group, level: usize) -> PResult<Subset> {
        const OPS: [&str; 3] = ["|", "&", "*"];
        if level == OPS.len() {
            return self.unary(g);
        }
        let mut items = vec![self.binary(g, level + 1)?];
        while self.eat(OPS[level]) {
            items.push(self.binary(g, level + 1)?);
        }
        let mut acc = items.pop().expect("one operand");
        while let Some(left) = items.pop() {
            acc = match level {
                0 => Subset::union(left, acc),
                1 => Subset::intersection(left, acc),
                _ => Subset::product(left, acc),
            };
        }
        Ok(acc)
    }

    fn unary(&mut self, g: &Group) -> PResult<Subset> {
        if self.eat("!") {
            return Ok(Subset::complement(self.unary(g)?));
        }
        self.atom(g)
    }

    fn atom(&mut self, g: &Group) -> PResult<Subset> {
        self.ws();
        let start = self.pos;
        if self.eat("{") {
            let mut elems = Vec::new();
            if !self.eat("}") {
                loop {
                    elems.push(self.element(g)?);
                    if self.eat("}") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            Ok(Subset::explicit(elems))
        } else if self.eat("residues(") {
            let d = g.free_abelian_rank().ok_or_else(|| self.error_at(start, "a set valid in Z^d (residues)"))?;
            let modulus = self.int_tuple(d)?;
            if modulus.iter().any(|&m| m < 1) {
                return Err(self.error_at(start, "positive moduli"));
            }
            self.expect(";")?;
            let mut classes = Vec::new();
            if !self.eat(")") {
                loop {
                    classes.push(self.int_tuple(d)?);
                    if self.eat(")") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            Ok(Subset::residues(modulus, classes).expect("checked shape"))
        } else if self.eat("prefix(") {
            let k = g.free_rank().ok_or_else(|| self.error_at(start, "a set valid in a free group (prefix)"))?;
            let mut letters = Vec::new();
            if !self.eat(")") {
                loop {
                    self.ws();
                    let at = self.pos;
                    let word = self.letters(k)?;
                    if word.len() != 1 {
                        return Err(self.error_at(at, "a single letter"));
                    }
                    letters.push(word[0]);
                    if self.eat(")") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            Ok(Subset::prefix(letters))
        } else if self.eat("inv(") {
            let s = self.set(g)?;
            self.expect(")")?;
            Ok(Subset::inverse(s))
        } else if self.eat("shift(") {
            let e = self.element(g)?;
            self.expect(",")?;
            let s = self.set(g)?;
            self.expect(")")?;
            Ok(Subset::translate(e, s))
        } else if self.eat("conj(") {
            let s = self.set(g)?;
            self.expect(",")?;
            let e = self.element(g)?;
            self.expect(")")?;
            Ok(Subset::conjugate(s, e))
        } else if self.eat("wr(") {
            let s = self.set(g)?;
            self.expect(",")?;
            let e = self.set(g)?;
            self.expect(")")?;
            Ok(Subset::wreath(s, e))
        } else if self.eat("(") {
            let s = self.set(g)?;
            self.expect(")")?;
            Ok(s)
        } else {
            Err(self.error("a set ('{', residues, prefix, inv, shift, conj, wr, '!' or '(')"))
        }
    }

    fn int_tuple(&mut self, d: usize) -> PResult<Vec<i64>> {
        if d == 1 {
            return Ok(vec![self.int()?]);
        }
        self.ws();
        let start = self.pos;
        self.expect("(")?;
        let mut v = vec![self.int()?];
        while self.eat(",") {
            v.push(self.int()?);
        }
        self.expect(")")?;
        if v.len() != d {
            return Err(self.error_at(start, &format!("a tuple of {d} integers")));
        }
        Ok(v)
    }

    fn letters(&mut self, k: usize) -> PResult<Vec<Letter>> {
        self.ws();
        let start = self.pos;
        let mut word = Vec::new();
        while let Some(&c) = self.chars.get(self.pos) {
            if !c.is_ascii_alphabetic() {
                break;
            }
            let i = (c.to_ascii_lowercase() as u8 - b'a') as usize;
            if i >= k {
                return Err(self.error_at(self.pos, &format!("a letter among the first {k} generators")));
            }
            word.push(letter(i, c.is_ascii_uppercase()));
            self.pos += 1;
        }
        if word.is_empty() {
            return Err(self.error_at(start, "a free-group letter"));
        }
        Ok(word)
    }

    fn element(&mut self, g: &Group) -> PResult<Element> {
        self.ws();
        let start = self.pos;
        let e = self.element_in(g.spec(), g)?;
        g.validate(&e).map_err(|_| self.error_at(start, &format!("an element of {}", print_group(g.spec()))))?;
        Ok(e)
    }

    fn element_in(&mut self, spec: &GroupSpec, g: &Group) -> PResult<Element> {
        if let Some(d) = g.free_abelian_rank() {
            return Ok(Element::Vector(self.int_tuple(d)?));
        }
        if let Some(k) = g.free_rank() {
            if self.eat("1") {
                return Ok(g.identity());
            }
            let mut w = Element::Word(Vec::new());
            for l in self.letters(k)? {
                w = g.multiply(&w, &Element::Word(vec![l])).expect("valid letter");
            }
            return Ok(w);
        }
        Ok(Element::Index(self.finite_index(spec)?))
    }

    fn finite_index(&mut self, spec: &GroupSpec) -> PResult<usize> {
        self.ws();
        let start = self.pos;
        let out_of_range = |p: &Parser| p.error_at(start, &format!("an element of {}", print_group(spec)));
        match spec {
            GroupSpec::Cyclic(n) => {
                let v = self.uint()?;
                if v >= *n {
                    return Err(out_of_range(self));
                }
                Ok(v)
            }
            GroupSpec::Dihedral(n) => {
                let flip = if self.eat("sr") {
                    true
                } else if self.eat("r") {
                    false
                } else {
                    return Err(self.error("a dihedral element (r<i> or sr<i>)"));
                };
                let i = self.uint()?;
                if i >= *n {
                    return Err(out_of_range(self));
                }
                Ok(if flip { n + i } else { i })
            }
            GroupSpec::Symmetric(n) => {
                self.expect("[")?;
                let mut p = Vec::new();
                if !self.eat("]") {
                    loop {
                        p.push(self.uint()?);
                        if self.eat("]") {
                            break;
                        }
                        self.expect(",")?;
                    }
                }
                let mut seen = vec![false; *n];
                if p.len() != *n || p.iter().any(|&x| x >= *n || std::mem::replace(&mut seen[x], true)) {
                    return Err(out_of_range(self));
                }
                Ok(rank_perm(&p.iter().map(|&x| x as u8).collect::<Vec<_>>()))
            }
            GroupSpec::DirectProduct(parts) => {
                self.expect("(")?;
                let mut idx = 0;
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        self.expect(",")?;
                    }
                    idx = idx * finite_order(part) + self.finite_index(part)?;
                }
                self.expect(")")?;
                Ok(idx)
            }
            GroupSpec::FreeAbelian(_) | GroupSpec::Free(_) => Err(out_of_range(self)),
        }
    }
}

fn finite_order(spec: &GroupSpec) -> usize {
    match spec {
        GroupSpec::Cyclic(n) => *n,
        GroupSpec::Dihedral(n) => 2 * n,
        GroupSpec::Symmetric(n) => crate::grp::factorial(*n),
        GroupSpec::DirectProduct(parts) => parts.iter().map(finite_order).product(),
        GroupSpec::FreeAbelian(_) | GroupSpec::Free(_) => 0,
    }
}

/// Parses a group description; the group must also be constructible.
pub fn parse_group(text: &str) -> Result<GroupSpec> {
    let mut p = Parser::new(text);
    let spec = p.group()?;
    p.finish()?;
    Group::new(spec.clone())?;
    Ok(spec)
}

/// Parses a subset expression whose leaves are checked against `g`.
pub fn parse_set(text: &str, g: &Group) -> Result<Subset> {
    let mut p = Parser::new(text);
    let s = p.set(g)?;
    p.finish()?;
    Ok(s)
}

pub fn parse_element(text: &str, g: &Group) -> Result<Element> {
    let mut p = Parser::new(text);
    let e = p.element(g)?;
    p.finish()?;
    Ok(e)
}

pub fn print_group(spec: &GroupSpec) -> String {
    match spec {
        GroupSpec::Cyclic(n) => format!("Zmod({n})"),
        GroupSpec::FreeAbelian(1) => "Z".to_string(),
        GroupSpec::FreeAbelian(d) => format!("Z^{d}"),
        GroupSpec::Symmetric(n) => format!("Sym({n})"),
        GroupSpec::Dihedral(n) => format!("Dih({n})"),
        GroupSpec::Free(k) => format!("Free({k})"),
        GroupSpec::DirectProduct(parts) => parts
            .iter()
            .map(|p| match p {
                GroupSpec::DirectProduct(_) => format!("({})", print_group(p)),
                _ => print_group(p),
            })
            .collect::<Vec<_>>()
            .join(" x "),
    }
}

fn letter_char(l: Letter) -> char {
    let c = (b'a' + l / 2) as char;
    if l % 2 == 1 {
        c.to_ascii_uppercase()
    } else {
        c
    }
}

fn print_tuple(v: &[i64]) -> String {
    if v.len() == 1 {
        v[0].to_string()
    } else {
        format!("({})", v.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
    }
}

fn print_index(spec: &GroupSpec, i: usize) -> String {
    match spec {
        GroupSpec::Cyclic(_) => i.to_string(),
        GroupSpec::Dihedral(n) if i >= *n => format!("sr{}", i - n),
        GroupSpec::Dihedral(_) => format!("r{i}"),
        GroupSpec::Symmetric(n) => format!(
            "[{}]",
            unrank_perm(i, *n).iter().map(u8::to_string).collect::<Vec<_>>().join(",")
        ),
        GroupSpec::DirectProduct(parts) => {
            let mut rest = i;
            let mut comps = Vec::with_capacity(parts.len());
            for p in parts.iter().rev() {
                let o = finite_order(p);
                comps.push(print_index(p, rest % o));
                rest /= o;
            }
            comps.reverse();
            format!("({})", comps.join(","))
        }
        GroupSpec::FreeAbelian(_) | GroupSpec::Free(_) => i.to_string(),
    }
}

pub fn print_element(g: &Group, e: &Element) -> String {
    match e {
        Element::Index(i) => print_index(g.spec(), *i),
        Element::Vector(v) => print_tuple(v),
        Element::Word(w) if w.is_empty() => "1".to_string(),
        Element::Word(w) => w.iter().map(|&l| letter_char(l)).collect(),
    }
}

fn precedence(s: &Subset) -> u8 {
    match s {
        Subset::Union(..) => 1,
        Subset::Intersection(..) => 2,
        Subset::Product(..) => 3,
        Subset::Complement(_) => 4,
        _ => 5,
    }
}

fn print_operand(g: &Group, s: &Subset, min: u8) -> String {
    let text = canonical_print(g, s);
    if precedence(s) < min {
        format!("({text})")
    } else {
        text
    }
}

/// Deterministic text for a subset; parsing it back gives the same tree.
pub fn canonical_print(g: &Group, s: &Subset) -> String {
    let binary = |a: &Subset, b: &Subset, op: &str, p: u8| {
        format!("{} {op} {}", print_operand(g, a, p + 1), print_operand(g, b, p))
    };
    match s {
        Subset::Explicit(v) => {
            format!("{{{}}}", v.iter().map(|e| print_element(g, e)).collect::<Vec<_>>().join(","))
        }
        Subset::Residues { modulus, classes } => format!(
            "residues({};{})",
            print_tuple(modulus),
            classes.iter().map(|c| print_tuple(c)).collect::<Vec<_>>().join(",")
        ),
        Subset::Prefix(ls) => format!(
            "prefix({})",
            ls.iter().map(|&l| letter_char(l).to_string()).collect::<Vec<_>>().join(",")
        ),
        Subset::Union(a, b) => binary(a, b, "|", 1),
        Subset::Intersection(a, b) => binary(a, b, "&", 2),
        Subset::Product(a, b) => binary(a, b, "*", 3),
        Subset::Complement(a) => format!("!{}", print_operand(g, a, 4)),
        Subset::Inverse(a) => format!("inv({})", canonical_print(g, a)),
        Subset::Translate(x, a) => format!("shift({},{})", print_element(g, x), canonical_print(g, a)),
        Subset::Conjugate(a, x) => format!("conj({},{})", canonical_print(g, a), print_element(g, x)),
        Subset::Wreath(a, e) => format!("wr({},{})", canonical_print(g, a), canonical_print(g, e)),
    }
}
