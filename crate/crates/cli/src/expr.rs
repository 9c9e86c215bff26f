//! Real-valued expressions in `x` and `t` read from configuration values.

use std::fmt;
use std::sync::Arc;

use evalexpr::{
    build_operator_tree, Context, DefaultNumericTypes, EvalexprError, EvalexprResult, Node,
    Operator, Value,
};

const FUNCTIONS: [(&str, fn(f64) -> f64); 14] = [
    ("sin", f64::sin),
    ("cos", f64::cos),
    ("tan", f64::tan),
    ("asin", f64::asin),
    ("acos", f64::acos),
    ("atan", f64::atan),
    ("sinh", f64::sinh),
    ("cosh", f64::cosh),
    ("tanh", f64::tanh),
    ("exp", f64::exp),
    ("ln", f64::ln),
    ("sqrt", f64::sqrt),
    ("abs", f64::abs),
    ("floor", f64::floor),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub source: String,
    pub reason: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid expression `{}`: {}", self.source, self.reason)
    }
}

impl std::error::Error for ExprError {}

/// A parsed expression. Integer literals are read as floats, so `1/2` is
/// one half. Available names are the variables `x`, `t`, the constants `pi`
/// and `e`, and the functions in [`Expr::FUNCTION_NAMES`].
#[derive(Clone)]
pub struct Expr {
    source: String,
    node: Arc<Node<DefaultNumericTypes>>,
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({:?})", self.source)
    }
}

impl Expr {
    pub const FUNCTION_NAMES: [&'static str; 14] = {
        let mut names = [""; 14];
        let mut i = 0;
        while i < 14 {
            names[i] = FUNCTIONS[i].0;
            i += 1;
        }
        names
    };

    /// Parses `source`, accepting only the variables listed in `variables`.
    pub fn parse(source: &str, variables: &[&str]) -> Result<Self, ExprError> {
        let fail = |reason: String| ExprError {
            source: source.to_string(),
            reason,
        };
        let mut node = build_operator_tree::<DefaultNumericTypes>(source).map_err(|e| fail(e.to_string()))?;
        for op in node.iter_operators_mut() {
            if let Operator::Const { value: Value::Int(i) } = op {
                *op = Operator::Const {
                    value: Value::Float(*i as f64),
                };
            }
        }
        for op in node.iter_operators_mut() {
            match op {
                Operator::Const { value: Value::Float(_) } => {}
                Operator::Const { value } => return Err(fail(format!("non-numeric literal {value}"))),
                Operator::Assign
                | Operator::AddAssign
                | Operator::SubAssign
                | Operator::MulAssign
                | Operator::DivAssign
                | Operator::ModAssign
                | Operator::ExpAssign
                | Operator::AndAssign
                | Operator::OrAssign
                | Operator::Chain
                | Operator::VariableIdentifierWrite { .. } => {
                    return Err(fail("assignments and statement chains are not allowed".into()))
                }
                _ => {}
            }
        }
        let allowed = |name: &str| variables.contains(&name) || name == "pi" || name == "e";
        if let Some(name) = node.iter_read_variable_identifiers().find(|n| !allowed(n)) {
            return Err(fail(format!(
                "unknown variable `{name}` (allowed: {}, pi, e)",
                variables.join(", ")
            )));
        }
        if let Some(name) = node
            .iter_function_identifiers()
            .find(|n| !Self::FUNCTION_NAMES.contains(n))
        {
            return Err(fail(format!(
                "unknown function `{name}` (allowed: {})",
                Self::FUNCTION_NAMES.join(", ")
            )));
        }
        let expr = Self {
            source: source.to_string(),
            node: Arc::new(node),
        };
        // catches type errors such as a tuple result before any solve starts
        expr.try_eval(0.5, 0.5).map_err(|e| fail(e.to_string()))?;
        Ok(expr)
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn try_eval(&self, x: f64, t: f64) -> EvalexprResult<f64, DefaultNumericTypes> {
        self.node.eval_number_with_context(&Point::new(x, t))
    }

    /// Evaluates at `(x, t)`; an evaluation failure yields NaN, which the
    /// solver rejects downstream.
    pub fn eval(&self, x: f64, t: f64) -> f64 {
        self.try_eval(x, t).unwrap_or(f64::NAN)
    }
}

struct Point {
    x: Value<DefaultNumericTypes>,
    t: Value<DefaultNumericTypes>,
    pi: Value<DefaultNumericTypes>,
    e: Value<DefaultNumericTypes>,
}

impl Point {
    fn new(x: f64, t: f64) -> Self {
        Self {
            x: Value::Float(x),
            t: Value::Float(t),
            pi: Value::Float(std::f64::consts::PI),
            e: Value::Float(std::f64::consts::E),
        }
    }
}

impl Context for Point {
    type NumericTypes = DefaultNumericTypes;

    fn get_value(&self, identifier: &str) -> Option<&Value<DefaultNumericTypes>> {
        match identifier {
            "x" => Some(&self.x),
            "t" => Some(&self.t),
            "pi" => Some(&self.pi),
            "e" => Some(&self.e),
            _ => None,
        }
    }

    fn call_function(
        &self,
        identifier: &str,
        argument: &Value<DefaultNumericTypes>,
    ) -> EvalexprResult<Value<DefaultNumericTypes>, DefaultNumericTypes> {
        let f = FUNCTIONS
            .iter()
            .find(|(name, _)| *name == identifier)
            .ok_or_else(|| EvalexprError::FunctionIdentifierNotFound(identifier.to_string()))?;
        Ok(Value::Float((f.1)(argument.as_number()?)))
    }

    fn are_builtin_functions_disabled(&self) -> bool {
        true
    }

    fn set_builtin_functions_disabled(&mut self, _disabled: bool) -> EvalexprResult<(), DefaultNumericTypes> {
        Err(EvalexprError::ContextNotMutable)
    }
}
