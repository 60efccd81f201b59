pub mod bounded;
pub mod charge;
pub mod config;
pub mod formats;
pub mod graph;
pub mod instances;
pub mod oracle;
pub mod planar;
pub mod plane;
pub mod recolor;
