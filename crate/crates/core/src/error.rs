use thiserror::Error;

use crate::symbol::HarmonicityReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("symbol is not harmonic on the boundary disks ({} failing famil{})",
        .0.witnesses.len(), if .0.witnesses.len() == 1 { "y" } else { "ies" })]
    NotAdmissible(Box<HarmonicityReport>),
    #[error("invalid disk slice: {0}")]
    InvalidSlice(String),
    #[error("point {0} is not an interior point of the domain")]
    OutsideDomain(String),
    #[error("kernel center must satisfy |p| < 1, got |p| = {0}")]
    KernelCenter(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot parse number `{0}`")]
    Parse(String),
    #[error("coordinate swap needs equal radii, got r1 = {0}, r2 = {1}")]
    SwapRadii(f64, f64),
    #[error("this bound is defined on the unit bidisk only")]
    NotUnitBidisk,
    #[error("test function does not vanish on the circle |xi| = {0}")]
    NotVanishing(f64),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
