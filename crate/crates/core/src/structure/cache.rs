use std::sync::OnceLock;

use super::census::Census;
use super::frattini::{FrattiniData, MaximalSubgroup};
use super::series::CentralSeries;
use super::thin::ThinReport;

#[derive(Default)]
pub(crate) struct StructureCache {
    pub lower: OnceLock<CentralSeries>,
    pub upper: OnceLock<CentralSeries>,
    pub frattini: OnceLock<FrattiniData>,
    pub maximal: OnceLock<Vec<MaximalSubgroup>>,
    pub census: OnceLock<Census>,
    pub thin: OnceLock<ThinReport>,
}
