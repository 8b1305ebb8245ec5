pub mod analysis;
pub mod barycenter;
pub mod bounds;
pub mod error;
pub mod exact;
pub mod parasect;
pub mod polygon;
pub mod verify;

pub use analysis::{CoefficientRow, OrderEstimate, OrderSample};
pub use barycenter::{BalanceReport, EquationReport, NamedVerdict, SegmentGeometry};
pub use bounds::{BoundsRow, MethodTag, Side};
pub use error::Error;
pub use exact::{ArithKind, Enclosure, Precision, Rational, Rounding, TrigFn, Verdict};
pub use parasect::{AreaDifferenceReport, ParabolaCircleConfig};
pub use polygon::{PolygonLadder, PolygonRung};
pub use verify::{CheckResult, VerifyConfig, VerifyReport};
