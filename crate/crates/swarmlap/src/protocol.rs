//! placeholder
pub struct CentroidTable;
pub struct LedColor;
pub struct ProtocolParams;
