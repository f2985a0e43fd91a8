//! The job file language: variety, function and generator declarations
//! followed by tasks. Every name must be declared before it is used.

use std::sync::Arc;

use super::expr::Cursor;
use super::lexer::{tokenize, Tok, Token};
use crate::error::{Error, Result};
use crate::function::CAlgFunction;
use crate::groebner::{Ideal, Limits};
use crate::poly::{Poly, Ring};
use crate::variety::VarietyModel;

/// Knobs applied to every declared variety.
#[derive(Debug, Clone, Copy)]
pub struct JobOptions {
    pub limits: Limits,
    pub residual_tol: f64,
}

impl Default for JobOptions {
    fn default() -> Self {
        JobOptions {
            limits: Limits::default(),
            residual_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratorList {
    pub name: String,
    pub variety: String,
    pub functions: Vec<CAlgFunction>,
}

/// Growth task settings; unset fields fall back to the run defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GrowthSpec {
    pub rmin: Option<f64>,
    pub rmax: Option<f64>,
    pub decades: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub enum Task {
    Denominator {
        variety: String,
        seed: Option<u64>,
    },
    Represent {
        function: String,
        variety: String,
    },
    Normalize {
        variety: String,
        generators: String,
    },
    Nullsatz {
        variety: String,
        generators: String,
        g: CAlgFunction,
        members: Vec<CAlgFunction>,
    },
    Growth {
        function: String,
        spec: GrowthSpec,
    },
    CheckProp52 {
        function: String,
        generators: String,
    },
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::Denominator { .. } => "denominator",
            Task::Represent { .. } => "represent",
            Task::Normalize { .. } => "normalize",
            Task::Nullsatz { .. } => "nullsatz",
            Task::Growth { .. } => "growth",
            Task::CheckProp52 { .. } => "check",
        }
    }

    /// The declared names this task refers to.
    pub fn subjects(&self) -> Vec<&str> {
        match self {
            Task::Denominator { variety, .. } => vec![variety],
            Task::Represent { function, variety } => vec![function, variety],
            Task::Normalize { variety, generators } => vec![variety, generators],
            Task::Nullsatz { variety, generators, .. } => vec![variety, generators],
            Task::Growth { function, .. } => vec![function],
            Task::CheckProp52 { function, generators } => vec![function, generators],
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct JobFile {
    pub varieties: Vec<Arc<VarietyModel>>,
    pub functions: Vec<CAlgFunction>,
    pub generator_lists: Vec<GeneratorList>,
    pub tasks: Vec<Task>,
}

impl JobFile {
    pub fn variety(&self, name: &str) -> Option<&Arc<VarietyModel>> {
        self.varieties.iter().find(|v| v.name() == name)
    }

    pub fn function(&self, name: &str) -> Option<&CAlgFunction> {
        self.functions.iter().find(|f| f.name == name)
    }

    pub fn generators(&self, name: &str) -> Option<&GeneratorList> {
        self.generator_lists.iter().find(|g| g.name == name)
    }

    fn declared(&self, name: &str) -> bool {
        self.variety(name).is_some() || self.function(name).is_some() || self.generators(name).is_some()
    }
}

pub fn parse_job(text: &str) -> Result<JobFile> {
    parse_job_with(text, &JobOptions::default())
}

pub fn parse_job_with(text: &str, options: &JobOptions) -> Result<JobFile> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        c: Cursor::new(&tokens),
        job: JobFile::default(),
        options: *options,
    };
    while let Some(t) = p.c.next() {
        match &t.tok {
            Tok::Ident(k) if k == "variety" => p.variety()?,
            Tok::Ident(k) if k == "function" => p.function()?,
            Tok::Ident(k) if k == "generators" => p.generators()?,
            Tok::Ident(k) if k == "task" => p.task()?,
            Tok::Sym(';') => {}
            _ => {
                return Err(p.c.error_at(
                    t,
                    format!(
                        "expected `variety`, `function`, `generators` or `task`, found {}",
                        t.describe()
                    ),
                ))
            }
        }
    }
    Ok(p.job)
}

struct Parser<'a> {
    c: Cursor<'a>,
    job: JobFile,
    options: JobOptions,
}

impl<'a> Parser<'a> {
    fn ident(&mut self, what: &str) -> Result<&'a Token> {
        match self.c.next() {
            Some(t @ Token { tok: Tok::Ident(_), .. }) => Ok(t),
            Some(t) => Err(self.c.error_at(t, format!("expected {what}, found {}", t.describe()))),
            None => Err(self.c.error_here(format!("expected {what}, found end of input"))),
        }
    }

    fn name(t: &Token) -> &str {
        match &t.tok {
            Tok::Ident(s) => s,
            _ => unreachable!("identifier token"),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        let t = self.ident(&format!("`{word}`"))?;
        if Self::name(t) != word {
            return Err(self.c.error_at(t, format!("expected `{word}`, found {}", t.describe())));
        }
        Ok(())
    }

    fn peek_keyword(&self, word: &str) -> bool {
        matches!(self.c.peek(), Some(Token { tok: Tok::Ident(s), .. }) if s == word)
    }

    fn fresh(&mut self, what: &str) -> Result<(&'a Token, String)> {
        let t = self.ident(what)?;
        let name = Self::name(t).to_string();
        if self.job.declared(&name) {
            return Err(self.c.error_at(t, format!("duplicate name `{name}`")));
        }
        Ok((t, name))
    }

    fn variety_ref(&mut self) -> Result<Arc<VarietyModel>> {
        let t = self.ident("a variety name")?;
        let name = Self::name(t);
        self.job
            .variety(name)
            .cloned()
            .ok_or_else(|| self.c.error_at(t, format!("undeclared variety `{name}`")))
    }

    fn function_ref(&mut self) -> Result<CAlgFunction> {
        let t = self.ident("a function name")?;
        let name = Self::name(t);
        self.job
            .function(name)
            .cloned()
            .ok_or_else(|| self.c.error_at(t, format!("undeclared function `{name}`")))
    }

    fn generators_ref(&mut self) -> Result<String> {
        let t = self.ident("a generator list name")?;
        let name = Self::name(t);
        if self.job.generators(name).is_none() {
            return Err(self.c.error_at(t, format!("undeclared generator list `{name}`")));
        }
        Ok(name.to_string())
    }

    fn uint(&mut self, what: &str) -> Result<u64> {
        match self.c.next() {
            Some(t @ Token { tok: Tok::Int(s), .. }) => s
                .parse()
                .map_err(|_| self.c.error_at(t, format!("{what} `{s}` is out of range"))),
            Some(t) => Err(self.c.error_at(t, format!("expected {what}, found {}", t.describe()))),
            None => Err(self.c.error_here(format!("expected {what}, found end of input"))),
        }
    }

    fn float(&mut self, what: &str) -> Result<f64> {
        match self.c.next() {
            Some(Token { tok: Tok::Float(v), .. }) => Ok(*v),
            Some(t @ Token { tok: Tok::Int(s), .. }) => s
                .parse()
                .map_err(|_| self.c.error_at(t, format!("malformed {what} `{s}`"))),
            Some(t) => Err(self.c.error_at(t, format!("expected {what}, found {}", t.describe()))),
            None => Err(self.c.error_here(format!("expected {what}, found end of input"))),
        }
    }

    /// Wraps semantic errors raised while building a declaration with the
    /// position of its name.
    fn at(&self, t: &Token, e: Error) -> Error {
        match e {
            Error::Input(msg) | Error::Verification(msg) => self.c.error_at(t, msg),
            other => other,
        }
    }

    // variety <name> { vars: x, y; ideal: <poly>, ...; dim: <int>; }
    fn variety(&mut self) -> Result<()> {
        let (name_tok, name) = self.fresh("a variety name")?;
        self.c.expect_sym('{')?;
        let mut ring: Option<Arc<Ring>> = None;
        let mut gens: Vec<Poly> = Vec::new();
        let mut dim: Option<usize> = None;
        while !self.c.eat_sym('}') {
            let field = self.ident("`vars`, `ideal` or `dim`")?;
            self.c.expect_sym(':')?;
            match Self::name(field) {
                "vars" => {
                    let mut vars = Vec::new();
                    loop {
                        vars.push(Self::name(self.ident("a variable name")?).to_string());
                        if !self.c.eat_sym(',') {
                            break;
                        }
                    }
                    ring = Some(Ring::new(vars).map_err(|e| self.at(field, e))?);
                }
                "ideal" => {
                    let Some(r) = ring.clone() else {
                        return Err(self.c.error_at(field, "`vars` must come before `ideal`".into()));
                    };
                    if !self.c.peek_sym(';') {
                        loop {
                            gens.push(self.c.expr(&r)?);
                            if !self.c.eat_sym(',') {
                                break;
                            }
                        }
                    }
                }
                "dim" => dim = Some(self.uint("a dimension")? as usize),
                other => {
                    return Err(self.c.error_at(field, format!("unknown variety field `{other}`")))
                }
            }
            self.c.expect_sym(';')?;
        }
        let Some(ring) = ring else {
            return Err(self.c.error_at(name_tok, format!("variety `{name}`: `vars` field missing")));
        };
        let Some(dim) = dim else {
            return Err(self.c.error_at(name_tok, format!("variety `{name}`: dimension field missing")));
        };
        let ideal = Ideal::new(&ring, gens)?.with_limits(self.options.limits);
        let model = VarietyModel::new(name, ideal, dim)
            .map_err(|e| self.at(name_tok, e))?
            .with_residual_tol(self.options.residual_tol);
        self.job.varieties.push(Arc::new(model));
        Ok(())
    }

    /// `<poly>` or `<poly> / <poly>`.
    fn rational(&mut self, variety: &VarietyModel, name: Option<String>) -> Result<CAlgFunction> {
        let start = self.c.peek();
        let num = self.c.expr(variety.ring())?;
        let den = if self.c.eat_sym('/') {
            self.c.expr(variety.ring())?
        } else {
            Poly::one(variety.ring())
        };
        let name = name.unwrap_or_else(|| {
            if den.is_one() {
                num.to_string()
            } else {
                format!("({num}) / ({den})")
            }
        });
        CAlgFunction::new(variety, name, num, den).map_err(|e| match start {
            Some(t) => self.at(t, e),
            None => e,
        })
    }

    /// A declared function name on `variety`, or an inline rational function.
    fn function_or_poly(&mut self, variety: &VarietyModel) -> Result<CAlgFunction> {
        if let Some(t @ Token { tok: Tok::Ident(name), .. }) = self.c.peek() {
            let operator_follows = matches!(
                self.c.peek_at(1),
                Some(Token { tok: Tok::Sym('+' | '-' | '*' | '^' | '/'), .. })
            );
            if !operator_follows {
                if let Some(f) = self.job.function(name) {
                    if f.variety != variety.name() {
                        return Err(self.c.error_at(
                            t,
                            format!("function `{name}` lives on `{}`, not `{}`", f.variety, variety.name()),
                        ));
                    }
                    let f = f.clone();
                    self.c.next();
                    return Ok(f);
                }
                if variety.ring().index_of(name).is_none() {
                    return Err(self.c.error_at(t, format!("undeclared function `{name}`")));
                }
            }
        }
        self.rational(variety, None)
    }

    // function <name> on <variety> = (<poly>) / (<poly>)
    fn function(&mut self) -> Result<()> {
        let (_, name) = self.fresh("a function name")?;
        self.keyword("on")?;
        let variety = self.variety_ref()?;
        self.c.expect_sym('=')?;
        let f = self.rational(&variety, Some(name))?;
        self.job.functions.push(f);
        Ok(())
    }

    // generators <name> on <variety> = [ <function-or-poly>, ... ]
    fn generators(&mut self) -> Result<()> {
        let (_, name) = self.fresh("a generator list name")?;
        self.keyword("on")?;
        let variety = self.variety_ref()?;
        self.c.expect_sym('=')?;
        let functions = self.list(&variety)?;
        self.job.generator_lists.push(GeneratorList {
            name,
            variety: variety.name().to_string(),
            functions,
        });
        Ok(())
    }

    fn list(&mut self, variety: &VarietyModel) -> Result<Vec<CAlgFunction>> {
        self.c.expect_sym('[')?;
        let mut items = Vec::new();
        if self.c.eat_sym(']') {
            return Ok(items);
        }
        loop {
            items.push(self.function_or_poly(variety)?);
            if self.c.eat_sym(']') {
                return Ok(items);
            }
            self.c.expect_sym(',')?;
        }
    }

    fn check_generators_on(&self, t: Option<&Token>, list: &str, variety: &str) -> Result<()> {
        let g = self.job.generators(list).expect("resolved");
        if g.variety != variety {
            let msg = format!("generator list `{list}` lives on `{}`, not `{variety}`", g.variety);
            return Err(match t {
                Some(t) => self.c.error_at(t, msg),
                None => Error::input(msg),
            });
        }
        Ok(())
    }

    fn task(&mut self) -> Result<()> {
        let kind_tok = self.ident("a task kind")?;
        let task = match Self::name(kind_tok) {
            "denominator" => {
                let variety = self.variety_ref()?.name().to_string();
                let bracketed = self.c.eat_sym('[');
                let mut seed = None;
                if self.peek_keyword("seed") {
                    self.c.next();
                    self.c.expect_sym('=')?;
                    seed = Some(self.uint("a seed")?);
                }
                if bracketed {
                    self.c.expect_sym(']')?;
                }
                Task::Denominator { variety, seed }
            }
            "represent" => {
                let t = self.c.peek();
                let f = self.function_ref()?;
                self.keyword("using")?;
                let variety = self.variety_ref()?.name().to_string();
                if f.variety != variety {
                    return Err(self.c.error_at(
                        t.expect("function token"),
                        format!("function `{}` lives on `{}`, not `{variety}`", f.name, f.variety),
                    ));
                }
                Task::Represent {
                    function: f.name,
                    variety,
                }
            }
            "normalize" => {
                let variety = self.variety_ref()?.name().to_string();
                self.keyword("with")?;
                let t = self.c.peek();
                let generators = self.generators_ref()?;
                self.check_generators_on(t, &generators, &variety)?;
                Task::Normalize { variety, generators }
            }
            "nullsatz" => {
                self.keyword("on")?;
                let model = self.variety_ref()?;
                let variety = model.name().to_string();
                self.keyword("with")?;
                let t = self.c.peek();
                let generators = self.generators_ref()?;
                self.check_generators_on(t, &generators, &variety)?;
                self.c.expect_sym(':')?;
                self.keyword("g")?;
                self.c.expect_sym('=')?;
                let g = self.function_or_poly(&model)?;
                self.c.expect_sym(';')?;
                self.keyword("members")?;
                self.c.expect_sym('=')?;
                let members = self.list(&model)?;
                Task::Nullsatz {
                    variety,
                    generators,
                    g,
                    members,
                }
            }
            "growth" => {
                let function = self.function_ref()?.name;
                let mut spec = GrowthSpec::default();
                if self.c.eat_sym('{') {
                    while !self.c.eat_sym('}') {
                        let key = self.ident("a growth setting")?;
                        self.c.expect_sym('=')?;
                        match Self::name(key) {
                            "rmin" => spec.rmin = Some(self.float("a radius")?),
                            "rmax" => spec.rmax = Some(self.float("a radius")?),
                            "decades" => spec.decades = Some(self.uint("a count")? as usize),
                            "samples" => spec.samples = Some(self.uint("a count")? as usize),
                            "seed" => spec.seed = Some(self.uint("a seed")?),
                            other => {
                                return Err(self.c.error_at(key, format!("unknown growth setting `{other}`")))
                            }
                        }
                        self.c.expect_sym(';')?;
                    }
                }
                Task::Growth { function, spec }
            }
            "check" => {
                let what = self.ident("`prop52`")?;
                if Self::name(what) != "prop52" {
                    return Err(self.c.error_at(what, format!("unknown check `{}`", Self::name(what))));
                }
                let f = self.function_ref()?;
                self.keyword("with")?;
                let t = self.c.peek();
                let generators = self.generators_ref()?;
                self.check_generators_on(t, &generators, &f.variety)?;
                Task::CheckProp52 {
                    function: f.name,
                    generators,
                }
            }
            other => {
                return Err(self.c.error_at(
                    kind_tok,
                    format!(
                        "unknown task `{other}` (expected denominator, represent, normalize, nullsatz, growth or check)"
                    ),
                ))
            }
        };
        self.job.tasks.push(task);
        Ok(())
    }
}
