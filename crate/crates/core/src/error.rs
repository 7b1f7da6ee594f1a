use alloc::string::String;
use core::fmt;

use crate::translations::Law;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong, split into malformed input and genuine law
/// failures. Callers that need to tell the two apart use
/// [`Error::is_violation`].
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("table has {found} entries, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("entry {value} at position {position} is outside the carrier 0..{bound}")]
    EntryOutOfRange { position: usize, value: usize, bound: usize },
    #[error("index {index} is outside the carrier 0..{bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("map is not a bijection: {0}")]
    NotBijective(String),
    #[error("a pointed structure needs a non-empty carrier")]
    EmptyPointed,
    #[error("invalid group table: {0}")]
    InvalidGroup(GroupAxiom),
    #[error("invalid group action: {0}")]
    InvalidGroupAction(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("search budget exhausted after {explored} steps")]
    BudgetExceeded { explored: u64 },
    #[error("singular matrix (condition estimate {condition:e})")]
    Singular { condition: f64 },
    #[error("vector is not tangent at the base point (residual {residual:e})")]
    NotTangent { residual: f64 },
    #[error("point is not on the chart (residual {residual:e})")]
    NotMember { residual: f64 },
    #[error("{0}")]
    Violation(Violation),
}

impl Error {
    /// True for a law or axiom failure, false for malformed input.
    pub fn is_violation(&self) -> bool {
        matches!(self, Error::Violation(_))
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Error::Violation(v) => Some(v),
            _ => None,
        }
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Violation(v)
    }
}

/// A group axiom that failed, with its witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupAxiom {
    Identity { x: usize },
    Inverse { x: usize },
    Associativity { a: usize, b: usize, c: usize },
}

impl fmt::Display for GroupAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupAxiom::Identity { x } => write!(f, "axiom=identity x={x}"),
            GroupAxiom::Inverse { x } => write!(f, "axiom=inverse x={x}"),
            GroupAxiom::Associativity { a, b, c } => {
                write!(f, "axiom=associativity a={a} b={b} c={c}")
            }
        }
    }
}

/// A failed law together with the lexicographically first witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Values are `[[x1,x2,x3],x4,x5]`, `[x1,[x4,x3,x2],x5]`, `[x1,x2,[x3,x4,x5]]`.
    ParaAssociativity { quintuple: [usize; 5], values: [usize; 3] },
    /// `[y,x,x] = y = [x,x,y]` fails; `values` holds `[y,x,x]` and `[x,x,y]`.
    Biunitarity { x: usize, y: usize, values: [usize; 2] },
    Homomorphism { triple: [usize; 3], image_of_product: usize, product_of_images: usize },
    GroupHomomorphism { pair: [usize; 2] },
    Group(GroupAxiom),
    Translation { law: Law, params: [usize; 4], point: usize, lhs: usize, rhs: usize },
    TranslationAssociativity { law: Law, params: [usize; 6] },
    Biunital { x: usize },
    LeftUnit { params: [usize; 2] },
    Reachability { x: usize },
    ActionCompatibility { point: usize, params: [usize; 4], lhs: usize, rhs: usize },
    Equivariance { point: usize, params: [usize; 2], lhs: usize, rhs: usize },
    Bundle(BundleAxiom),
    Principal(PrincipalAxiom),
    BundleHom(BundleHomAxiom),
    Flow { point: usize, steps: [usize; 2] },
}

/// Bundle axioms in the order they are checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BundleAxiom {
    Action(alloc::boxed::Box<Violation>),
    Surjectivity { base_point: usize },
    FiberPreservation { point: usize, params: [usize; 2], image: usize },
    Cover { base_point: usize },
    ChartDomain { chart: usize, point: usize },
    ChartBijectivity { chart: usize, base_point: usize, fiber_element: usize },
    Triangle { chart: usize, point: usize },
    ChartEquivariance { chart: usize, point: usize, params: [usize; 2] },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrincipalAxiom {
    Surjectivity { base_point: usize },
    FiberPreservation { point: usize, element: usize },
    Freeness { point: usize, element: usize },
    Transitivity { from: usize, to: usize },
    Cover { base_point: usize },
    ChartDomain { chart: usize, point: usize },
    ChartBijectivity { chart: usize, base_point: usize, element: usize },
    Triangle { chart: usize, point: usize },
    ChartEquivariance { chart: usize, point: usize, element: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BundleHomAxiom {
    Structure(alloc::boxed::Box<Violation>),
    Projection { point: usize },
    Equivariance { point: usize, params: [usize; 2] },
    GroupEquivariance { point: usize, element: usize },
}

fn join(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ParaAssociativity { quintuple, values } => {
                f.write_str("law=para-associative quintuple=")?;
                join(f, quintuple)?;
                f.write_str(" values=")?;
                join(f, values)
            }
            Violation::Biunitarity { x, y, values } => {
                write!(f, "law=biunitary x={x} y={y} values=")?;
                join(f, values)
            }
            Violation::Homomorphism { triple, image_of_product, product_of_images } => {
                f.write_str("law=homomorphism triple=")?;
                join(f, triple)?;
                write!(f, " lhs={image_of_product} rhs={product_of_images}")
            }
            Violation::GroupHomomorphism { pair } => {
                f.write_str("law=group-homomorphism pair=")?;
                join(f, pair)
            }
            Violation::Group(axiom) => write!(f, "law=group {axiom}"),
            Violation::Translation { law, params, point, lhs, rhs } => {
                write!(f, "law={} params=", law.name())?;
                join(f, params)?;
                write!(f, " point={point} lhs={lhs} rhs={rhs}")
            }
            Violation::TranslationAssociativity { law, params } => {
                write!(f, "law={}-associativity params=", law.name())?;
                join(f, params)
            }
            Violation::Biunital { x } => write!(f, "law=biunital x={x}"),
            Violation::LeftUnit { params } => {
                f.write_str("law=left-unit params=")?;
                join(f, params)
            }
            Violation::Reachability { x } => write!(f, "law=reachability x={x}"),
            Violation::ActionCompatibility { point, params, lhs, rhs } => {
                write!(f, "law=action point={point} params=")?;
                join(f, params)?;
                write!(f, " lhs={lhs} rhs={rhs}")
            }
            Violation::Equivariance { point, params, lhs, rhs } => {
                write!(f, "law=equivariance point={point} params=")?;
                join(f, params)?;
                write!(f, " lhs={lhs} rhs={rhs}")
            }
            Violation::Bundle(axiom) => write!(f, "law=bundle {axiom}"),
            Violation::Principal(axiom) => write!(f, "law=principal {axiom:?}"),
            Violation::BundleHom(axiom) => write!(f, "law=bundle-hom {axiom:?}"),
            Violation::Flow { point, steps } => {
                write!(f, "law=flow point={point} steps=")?;
                join(f, steps)
            }
        }
    }
}

impl fmt::Display for BundleAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleAxiom::Action(v) => write!(f, "axiom=action ({v})"),
            BundleAxiom::Surjectivity { base_point } => {
                write!(f, "axiom=surjectivity base_point={base_point}")
            }
            BundleAxiom::FiberPreservation { point, params, image } => write!(
                f,
                "axiom=fiber-preservation point={point} params={},{} image={image}",
                params[0], params[1]
            ),
            BundleAxiom::Cover { base_point } => write!(f, "axiom=cover base_point={base_point}"),
            BundleAxiom::ChartDomain { chart, point } => {
                write!(f, "axiom=chart-domain chart={chart} point={point}")
            }
            BundleAxiom::ChartBijectivity { chart, base_point, fiber_element } => write!(
                f,
                "axiom=chart-bijectivity chart={chart} base_point={base_point} fiber_element={fiber_element}"
            ),
            BundleAxiom::Triangle { chart, point } => {
                write!(f, "axiom=triangle chart={chart} point={point}")
            }
            BundleAxiom::ChartEquivariance { chart, point, params } => write!(
                f,
                "axiom=chart-equivariance chart={chart} point={point} params={},{}",
                params[0], params[1]
            ),
        }
    }
}
