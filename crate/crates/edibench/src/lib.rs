//! Benchmarking toolkit for edge-directed image interpolation.
//!
//! The crate bundles three things:
//!
//! * six 2x upscalers built on the same lattice fill (bilinear, bicubic,
//!   NEDI, EGII, ICBI, DCCI),
//! * full-reference quality metrics (SNR, PSNR, SSIM, FSIM, mutual
//!   information) plus Canny-based edge-preservation ratios,
//! * a benchmark harness that downsamples reference images dyadically,
//!   upscales them back with every method, scores the results and renders
//!   CSV / Markdown / SVG / montage reports.
//!
//! The `edibench` binary is the command line front end; see the crate
//! README for usage.

pub mod bench;
pub mod edge;
pub mod error;
pub mod interp;
pub mod io;
pub mod linalg;
pub mod metrics;
pub mod raster;

pub use error::{Error, Result};
pub use interp::{InterpConfig, MethodId, UpscaleResult};
pub use raster::{PixelRect, RasterImage};
