//! Quality assessment and maturity levels for ML systems.
//!
//! The crate scores a system's gaps against a 25-row requirement matrix,
//! derives its maturity level and remediation priorities, renders a
//! self-contained HTML report, stores versioned snapshots, and aggregates
//! stored assessments into fleet views.

pub mod assessment;
pub mod canonical;
pub mod fleet;
pub mod model;
pub mod questionnaire;
pub mod registry;
pub mod report;
pub mod scoring;
pub mod stats;
pub mod store;

pub use assessment::{parse_assessment, serialize_gaps_csv, Assessment, AssessmentHeader, GapEntry};
pub use model::{
    load_quality_model, validate_model, Characteristic, Demand, GapLevel, QualityModel,
    SubCharacteristicId,
};
pub use report::render_report;
pub use store::{history, load_assessment, persist_assessment};
pub use scoring::{evaluate, AssessmentResult, BusinessCriticality, CriticalityLevel, GapColor};
